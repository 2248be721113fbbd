#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "matmeans/errors.hpp"
#include "matmeans/majorization.hpp"
#include "matmeans/operator_means.hpp"
#include "matmeans/positive_maps.hpp"

using namespace matmeans;
using namespace testing_support;

namespace {

HermitianMatrix diag(std::vector<double> v) { return HermitianMatrix::diagonal(v); }

const RepresentingFunction* find(const std::vector<RepresentingFunction>& cat, const std::string& name) {
  for (const auto& h : cat) {
    if (h.name == name) return &h;
  }
  return nullptr;
}

AbsMonotonicityOptions contour_options() {
  AbsMonotonicityOptions o;
  o.method = DerivativeMethod::contour;
  o.max_order = 20;
  return o;
}

}  // namespace

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
  for (int q : {1, 2, 5, 33, 65}) {
    const auto rule = gauss_legendre(q);
    double mass = 0.0;
    for (double w : rule.weights) mass += w;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
    for (int k = 0; k <= 2 * q - 1; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], k);
      CAPTURE(q);
      CAPTURE(k);
      CHECK(std::abs(s - 1.0 / (k + 1)) < 1e-13);
    }
    CHECK(std::is_sorted(rule.nodes.begin(), rule.nodes.end()));
  }
  // Independent check against a non-polynomial integral: int_0^1 e^{3x} dx.
  const auto rule = gauss_legendre(33);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::exp(3.0 * rule.nodes[i]);
  CHECK(std::abs(s - std::expm1(3.0) / 3.0) < 1e-13);
}

TEST_CASE("measures validate mass and support") {
  CHECK_NOTHROW(GeodesicMeasure::uniform().validate());
  CHECK_NOTHROW(GeodesicMeasure::delta(0.3).validate());
  CHECK_THROWS_AS(GeodesicMeasure::from_atoms({{0.5, 0.6}}).validate(), ConfigError);
  CHECK_THROWS_AS(GeodesicMeasure::from_atoms({{1.5, 1.0}}).validate(), ConfigError);
  CHECK_THROWS_AS(GeodesicMeasure::from_atoms({{0.5, 1.5}, {0.2, -0.5}}).validate(), ConfigError);
}

TEST_CASE("Kubo-Ando basics") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = psd(seed, 4, 50.0);
    const auto b = psd(seed + 1000, 4, 50.0);
    CHECK(rel_diff(kubo_ando(rf_arithmetic(), a, b), (a + b) * 0.5) < 1e-12);
    const auto harmonic_direct = inverse(inverse(a) + inverse(b)) * 2.0;
    CHECK(rel_diff(kubo_ando(rf_harmonic(), a, b), harmonic_direct) < 1e-9);
  }
  const auto g = kubo_ando(rf_geometric(), diag({1, 4}), diag({4, 1}));
  CHECK(max_abs_diff(g, diag({2, 2})) < 1e-12);
}

TEST_CASE("Kubo-Ando regularization") {
  const auto a = psd(1, 3, 10.0, 1);
  const auto b = psd(2, 3, 10.0);
  CHECK_THROWS_AS(kubo_ando(rf_geometric(), a, b, 0.0), SingularInput);
  const auto r = kubo_ando_detailed(rf_geometric(), a, b);
  CHECK(r.eps_used == doctest::Approx(default_mean_eps(a, b)));
  CHECK(kubo_ando_detailed(rf_geometric(), b, b).eps_used == 0.0);
  CHECK_THROWS_AS(kubo_ando(rf_geometric(), a, psd(3, 4)), DimensionMismatch);
}

TEST_CASE("regularized means decrease to a limit for singular operands") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = psd(10 + seed, 4, 20.0, 1);
    const auto b = psd(20 + seed, 4, 20.0, 2);
    for (const auto& h : {rf_geometric(), rf_harmonic(), rf_logarithmic(), rf_power(0.5)}) {
      const auto m4 = kubo_ando(h, a, b, 1e-4);
      const auto m6 = kubo_ando(h, a, b, 1e-6);
      const auto m8 = kubo_ando(h, a, b, 1e-8);
      CAPTURE(h.name);
      CHECK(loewner_geq(m4, m6, 1e-8));
      CHECK(loewner_geq(m6, m8, 1e-8));
      // Monotone and bounded below by 0, hence convergent (slowly, like 1/log(1/eps), for
      // the logarithmic mean).
      CHECK(eigenvalues(m8).min() >= -1e-10);
    }
  }
}

TEST_CASE("weighted geometric mean") {
  const auto a = psd(3, 4, 30.0);
  const auto b = psd(4, 4, 30.0);
  CHECK(weighted_geometric(a, b, 0.0).matrix() == a.matrix());
  CHECK(weighted_geometric(a, b, 1.0).matrix() == b.matrix());
  for (double alpha : {0.1, 0.5, 0.9}) {
    CHECK(rel_diff(weighted_geometric(a, a, alpha), a) < 1e-12);
    const double lhs = determinant(weighted_geometric(a, b, alpha));
    const double rhs = std::pow(determinant(a), 1 - alpha) * std::pow(determinant(b), alpha);
    CHECK(std::abs(lhs - rhs) / rhs < 1e-9);
  }
  // Riccati characterization of the midpoint: X A^{-1} X = B.
  const auto x = weighted_geometric(a, b, 0.5);
  const CMatrix ric = x.matrix() * inverse(a).matrix() * x.matrix();
  CHECK((ric - b.matrix()).norm() / b.frobenius_norm() < 1e-10);
  CHECK_THROWS_AS(weighted_geometric(a, psd(5, 4, 10.0, 1), 0.5), SingularInput);
  CHECK_THROWS_AS(weighted_geometric(a, b, 1.5), DomainViolation);
}

TEST_CASE("power means") {
  const auto a = psd(6, 3, 20.0);
  const auto b = psd(7, 3, 20.0);
  CHECK(rel_diff(power_mean(a, b, 1.0), (a + b) * 0.5) < 1e-15);
  for (double p : {0.0, 0.25, 0.5, 1.0}) CHECK(rel_diff(power_mean(a, a, p), a) < 1e-12);
  const auto z = power_mean(diag({1, 8}), diag({8, 1}), 0.0);
  CHECK(max_abs_diff(z, diag({std::sqrt(8.0), std::sqrt(8.0)})) < 1e-12);
  CHECK_THROWS_AS(power_mean(a, psd(8, 3, 10.0, 1), 0.0), SingularInput);
  // Small p approaches the p = 0 mean.
  CHECK(rel_diff(power_mean(a, b, 1e-4), power_mean(a, b, 0.0)) < 1e-3);
}

TEST_CASE("geodesic means") {
  const auto a = psd(8, 3, 20.0);
  const auto b = psd(9, 3, 20.0);
  CHECK(rel_diff(geodesic_mean(GeodesicMeasure::delta(0.5), a, b), weighted_geometric(a, b, 0.5)) < 1e-12);
  const auto i3 = HermitianMatrix::identity(3);
  CHECK(rel_diff(geodesic_mean(GeodesicMeasure::uniform(), i3, i3), i3) < 1e-13);
  const double e = std::numbers::e;
  const auto lm = geodesic_mean(GeodesicMeasure::uniform(), diag({1, 2, 5}), diag({e, 2, 1}));
  CHECK(std::abs(lm(0, 0).real() - (e - 1.0)) < 1e-12);
  CHECK(std::abs(lm(1, 1).real() - 2.0) < 1e-12);
  CHECK(std::abs(lm(2, 2).real() - 4.0 / std::log(5.0)) < 1e-12);
}

TEST_CASE("33-node quadrature agrees with 65 nodes") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = psd(30 + seed, 4, 1e3);
    const auto b = psd(40 + seed, 4, 1e3);
    auto fine = GeodesicMeasure::uniform();
    fine.quadrature_nodes = 65;
    CHECK(rel_diff(geodesic_mean(GeodesicMeasure::uniform(), a, b), geodesic_mean(fine, a, b)) < 1e-12);
  }
}

TEST_CASE("representing function catalog") {
  const auto cat = rf_catalog();
  for (const auto& h : cat) {
    CAPTURE(h.name);
    CHECK(screen_representing_function(h).empty());
    CHECK(std::abs(h(1.0) - 1.0) < 1e-12);
    if (h.measure) CHECK_NOTHROW(h.measure->validate());
  }
  const auto b_half = rf_power(0.5);
  REQUIRE(b_half.measure);
  REQUIRE(b_half.measure->atoms.size() == 3);
  CHECK(b_half.measure->atoms[0] == std::pair<double, double>{0.0, 0.25});
  CHECK(b_half.measure->atoms[1] == std::pair<double, double>{0.5, 0.5});
  CHECK(b_half.measure->atoms[2] == std::pair<double, double>{1.0, 0.25});
  CHECK(rf_falpha(1.0).label == "logarithmic");
  CHECK(rf_falpha(2.0)(3.0) == doctest::Approx(2.0));
  CHECK(rf_falpha(1.0)(std::numbers::e) == doctest::Approx(std::numbers::e - 1.0));
  CHECK(rf_falpha(0.0)(4.0) == doctest::Approx(4.0 * std::log(4.0) / 3.0));
  CHECK(rf_falpha(-1.0)(4.0) == doctest::Approx(2.0 * (1.0 / 4.0 - 1.0) / (1.0 / 16.0 - 1.0)));
  CHECK(rf_power(-1.0)(3.0) == doctest::Approx(rf_harmonic()(3.0)));
  CHECK(rf_power(1.0)(3.0) == doctest::Approx(2.0));
  REQUIRE(find(cat, "bp:p=0.5"));
  CHECK_THROWS_AS(rf_power(1.5), ConfigError);
  CHECK_THROWS_AS(rf_falpha(2.5), ConfigError);
  CHECK(!screen_representing_function(
             RepresentingFunction{"bad", [](double t) { return 1.0 / (1.0 + t) * 2.0; }, {}, GeomClass::unknown,
                                  std::nullopt, ""})
             .empty());
}

TEST_CASE("f_alpha measures from the closed-form families") {
  const auto f32 = rf_falpha(1.5);  // m = 3: atoms 0, 1/2, 1
  REQUIRE(f32.measure);
  CHECK(f32.measure->atoms.size() == 3);
  const auto f23 = rf_falpha(2.0 / 3.0);  // m = 2: atoms 1/3, 2/3
  REQUIRE(f23.measure);
  CHECK(f23.measure->atoms.size() == 2);
  CHECK(f23.measure->atoms[0].first == doctest::Approx(1.0 / 3.0));
  CHECK(!rf_falpha(0.25).measure);
  CHECK(!rf_power(2.0 / 3.0).measure);
}

TEST_CASE("measure-backed means: representing function equals the measure integral") {
  for (const auto& h : rf_catalog()) {
    if (!h.measure) continue;
    const auto points = h.measure->discretize();
    for (double t : {0.0, 1e-3, 0.2, 1.0, 3.5, 40.0}) {
      double s = 0.0;
      for (const auto& [alpha, w] : points) s += w * (alpha == 0.0 ? 1.0 : std::pow(t, alpha));
      CAPTURE(h.name);
      CAPTURE(t);
      CHECK(std::abs(h(t) - s) < 1e-12 * (1.0 + s));
    }
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto a = psd(50 + seed, 4, 100.0);
      const auto b = psd(60 + seed, 4, 100.0);
      CHECK(rel_diff(kubo_ando(h, a, b), geodesic_mean(*h.measure, a, b)) < 1e-10);
    }
  }
}

TEST_CASE("representing function transforms") {
  const auto g = rf_transforms(rf_geometric());
  for (double t : {0.0, 0.3, 2.0, 50.0}) {
    CHECK(g.transpose(t) == doctest::Approx(std::sqrt(t)));
    CHECK(g.adjoint(t) == doctest::Approx(std::sqrt(t)));
    CHECK(g.dual(t) == doctest::Approx(std::sqrt(t)));
  }
  const auto ar = rf_transforms(rf_arithmetic());
  for (double t : {0.0, 0.3, 2.0, 50.0}) CHECK(ar.adjoint(t) == doctest::Approx(rf_harmonic()(t)));
  const auto w = rf_transforms(rf_weighted_geometric(0.3));
  for (double t : {0.3, 2.0, 50.0}) CHECK(w.transpose(t) == doctest::Approx(std::pow(t, 0.7)));
  for (const auto& h : rf_catalog()) {
    const auto tr = rf_transforms(h);
    CAPTURE(h.name);
    CHECK(tr.transpose(1.0) == doctest::Approx(1.0));
    CHECK(tr.adjoint(1.0) == doctest::Approx(1.0));
    CHECK(tr.dual(1.0) == doctest::Approx(1.0));
    // B sigma~ A = A sigma B for the transpose.
    const auto a = psd(70, 3, 20.0);
    const auto b = psd(71, 3, 20.0);
    CHECK(rel_diff(kubo_ando(tr.transpose, b, a), kubo_ando(h, a, b)) < 1e-9);
    // Adjoint mean: (A^{-1} sigma B^{-1})^{-1}.
    CHECK(rel_diff(kubo_ando(tr.adjoint, a, b), inverse(kubo_ando(h, inverse(a), inverse(b)))) < 1e-9);
    // Complex evaluators of the transforms agree with the real ones on the real axis.
    for (double s : {-2.0, 0.0, 1.5}) CHECK(std::abs(tr.dual.log_eval(s).real() - tr.dual(std::exp(s))) < 1e-12);
  }
}

TEST_CASE("complex evaluators match the real ones") {
  for (const auto& h : rf_catalog()) {
    for (double s : {-4.0, -1.0, -1e-4, 0.0, 1e-3, 0.7, 3.0}) {
      CAPTURE(h.name);
      CAPTURE(s);
      const Complex z = h.log_eval(Complex(s, 0.0));
      CHECK(std::abs(z.real() - h(std::exp(s))) < 1e-12 * (1.0 + h(std::exp(s))));
      CHECK(std::abs(z.imag()) < 1e-12 * (1.0 + std::abs(z)));
    }
  }
}

TEST_CASE("scalar means") {
  CHECK(scalar_mean(rf_geometric(), 4.0, 9.0) == doctest::Approx(6.0));
  CHECK(scalar_mean(rf_arithmetic(), 0.0, 3.0) == doctest::Approx(1.5));
  CHECK(scalar_mean(rf_harmonic(), 0.0, 3.0) == doctest::Approx(0.0));
  CHECK(scalar_mean(rf_logarithmic(), 1.0, std::numbers::e) == doctest::Approx(std::numbers::e - 1.0));
  CHECK(scalar_mean(rf_power(0.5), 0.0, 4.0) == doctest::Approx(1.0));
  CHECK(scalar_mean(rf_geometric(), 0.0, 0.0) == 0.0);
}

TEST_CASE("geometric class certification matches the claimed classes") {
  for (const auto& h : rf_catalog()) {
    const auto r = certify_geom_class(h);
    CAPTURE(h.name);
    CHECK(r.verdict == h.geom_class);
  }
  CHECK(certify_geom_class(rf_arithmetic()).verdict == GeomClass::geom_convex);
  CHECK(certify_geom_class(rf_harmonic()).verdict == GeomClass::geom_concave);
  CHECK(certify_geom_class(rf_falpha(0.25)).verdict == GeomClass::geom_concave);
}

TEST_CASE("absolute monotonicity by finite differences") {
  CHECK(check_absolute_monotonicity(rf_geometric()).passed);
  CHECK(check_absolute_monotonicity(rf_power(0.5)).passed);
  CHECK(check_absolute_monotonicity(rf_power(1.0 / 3.0)).passed);
  CHECK(check_absolute_monotonicity(rf_falpha(1.5)).passed);
  CHECK(check_absolute_monotonicity(rf_falpha(2.0 / 3.0)).passed);
  CHECK_FALSE(check_absolute_monotonicity(rf_harmonic()).passed);
  // The order-8 screen cannot see the defect of b_{2/3}: its first negative derivative has order 15.
  CHECK(check_absolute_monotonicity(rf_power(2.0 / 3.0)).passed);
}

TEST_CASE("contour derivatives agree with known values") {
  // g(t) = e^{t/2}: every derivative is e^{t/2} / 2^n.
  for (int n : {1, 5, 12}) {
    CHECK(std::abs(contour_derivative(rf_geometric(), 0.4, n) - std::exp(0.2) / std::pow(2.0, n)) < 1e-10);
  }
  // Reference value computed with 40-digit arithmetic.
  CHECK(std::abs(contour_derivative(rf_power(2.0 / 3.0), -1.75, 15) - (-0.03869586872)) < 1e-8);
  CHECK(std::abs(contour_derivative(rf_power(2.0 / 3.0), -1.75, 2) - 0.09403291016) < 1e-10);
}

TEST_CASE("absolute monotonicity by contour integrals") {
  for (const auto& h : {rf_power(0.5), rf_power(1.0 / 3.0), rf_falpha(1.5), rf_falpha(2.0 / 3.0), rf_geometric(),
                        rf_arithmetic(), rf_logarithmic()}) {
    CAPTURE(h.name);
    CHECK(check_absolute_monotonicity(h, contour_options()).passed);
  }
  const auto r = check_absolute_monotonicity(rf_power(2.0 / 3.0), contour_options());
  CHECK_FALSE(r.passed);
  CHECK(r.first_failing_order == 15);
  CHECK(r.failing_value < 0.0);
  CHECK_FALSE(check_absolute_monotonicity(rf_harmonic(), contour_options()).passed);
}

TEST_CASE("congruence invariance of catalog means") {
  Rng rng(77);
  for (const auto& h : rf_catalog()) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto a = psd(80 + trial, 3, 20.0);
      const auto b = psd(90 + trial, 3, 20.0);
      CMatrix x = sample_complex_gaussian(rng, 3, 3);
      x += 2.0 * CMatrix::Identity(3, 3);
      const auto lhs = kubo_ando(h, congruence(x, a), congruence(x, b));
      const auto rhs = congruence(x, kubo_ando(h, a, b));
      CAPTURE(h.name);
      CHECK(rel_diff(lhs, rhs) < 1e-8);
    }
  }
}

// The harmonic/arithmetic sandwich holds for symmetric means (h equal to its transpose);
// weighted means such as #_{1/4} are excluded.
TEST_CASE("harmonic <= sigma <= arithmetic and the transformer inequality") {
  Rng rng(78);
  for (const auto& h : rf_catalog()) {
    const auto tr = rf_transforms(h).transpose;
    bool symmetric = true;
    for (double t : {0.1, 2.0, 30.0}) symmetric = symmetric && std::abs(tr(t) - h(t)) < 1e-12 * (1.0 + h(t));
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = psd(100 + trial, 4, 50.0);
      const auto b = psd(200 + trial, 4, 50.0);
      const auto m = kubo_ando(h, a, b);
      CAPTURE(h.name);
      if (symmetric) {
        CHECK(loewner_geq(m, kubo_ando(rf_harmonic(), a, b), 1e-9));
        CHECK(loewner_geq(kubo_ando(rf_arithmetic(), a, b), m, 1e-9));
      }
      const auto e = PositiveMap::schur(sample_correlation(rng, 4) * 0.8);
      CHECK(loewner_geq(kubo_ando(h, e.apply(a), e.apply(b)), e.apply(m), 1e-8));
    }
  }
}

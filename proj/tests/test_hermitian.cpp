#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "matmeans/errors.hpp"
#include "matmeans/matrix_io.hpp"

using namespace matmeans;
using namespace testing_support;

namespace {

// Closed-form eigenvalues of a 3x3 Hermitian matrix (trigonometric cubic solution).
std::vector<double> cubic_eigenvalues(const CMatrix& a) {
  const double p1 = std::norm(a(0, 1)) + std::norm(a(0, 2)) + std::norm(a(1, 2));
  const double q = (a(0, 0).real() + a(1, 1).real() + a(2, 2).real()) / 3.0;
  const double p2 = std::pow(a(0, 0).real() - q, 2) + std::pow(a(1, 1).real() - q, 2) +
                    std::pow(a(2, 2).real() - q, 2) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  if (p == 0.0) return {q, q, q};
  const CMatrix b = (a - q * CMatrix::Identity(3, 3)) / p;
  const Complex det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                      b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                      b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
  const double r = std::clamp(det.real() / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  return sorted_desc({e1, 3.0 * q - e1 - e3, e3});
}

std::vector<double> quadratic_eigenvalues(const CMatrix& a) {
  const double m = (a(0, 0).real() + a(1, 1).real()) / 2.0;
  const double d = (a(0, 0).real() - a(1, 1).real()) / 2.0;
  const double r = std::sqrt(d * d + std::norm(a(0, 1)));
  return {m + r, m - r};
}

}  // namespace

TEST_CASE("construction symmetrizes and rejects non-square input") {
  CMatrix m(2, 2);
  m << Complex(1, 0.5), Complex(2, 1), Complex(0, 0), Complex(3, 0);
  const HermitianMatrix h(m);
  CHECK(h(0, 0).imag() == 0.0);
  CHECK(h(0, 1) == std::conj(h(1, 0)));
  CHECK_THROWS_AS(HermitianMatrix(CMatrix(2, 3)), DimensionMismatch);
}

TEST_CASE("eigh on diagonal input returns sorted values and permuted basis") {
  const std::vector<double> d{1, 2, 3};
  const auto e = eigh(HermitianMatrix::diagonal(d));
  CHECK(e.spectrum.values == std::vector<double>{3, 2, 1});
  CHECK(std::abs(e.basis(2, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(e.basis(1, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(e.basis(0, 2)) == doctest::Approx(1.0));
}

TEST_CASE("eigh on the swap matrix") {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, 1, 0;
  const auto e = eigh(HermitianMatrix::from_real(m));
  CHECK(e.spectrum[0] == doctest::Approx(1.0));
  CHECK(e.spectrum[1] == doctest::Approx(-1.0));
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(e.basis(0, 0)) == doctest::Approx(s));
  CHECK(std::abs(e.basis(1, 0)) == doctest::Approx(s));
  CHECK(std::abs(e.basis(0, 0) - e.basis(1, 0)) < 1e-12);
  CHECK(std::abs(e.basis(0, 1) + e.basis(1, 1)) < 1e-12);
}

TEST_CASE("eigh reconstructs random Hermitian matrices") {
  Rng rng(42);
  const auto a = sample_hermitian(rng, 6);
  const auto e = eigh(a);
  CHECK((e.reconstruct().matrix() - a.matrix()).norm() / a.frobenius_norm() < 1e-10);
  const CMatrix gram = e.basis.adjoint() * e.basis;
  CHECK((gram - CMatrix::Identity(6, 6)).norm() < 1e-10);
  for (int n : {1, 2, 5, 12, 24}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto b = sample_hermitian(rng, n);
      const auto eb = eigh(b);
      CHECK(std::is_sorted(eb.spectrum.values.rbegin(), eb.spectrum.values.rend()));
      CHECK((eb.reconstruct().matrix() - b.matrix()).norm() / b.frobenius_norm() < 1e-10);
    }
  }
}

TEST_CASE("eigh agrees with closed-form roots for n <= 3") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a2 = sample_hermitian(rng, 2);
    const auto ref2 = quadratic_eigenvalues(a2.matrix());
    const auto got2 = eigenvalues(a2).values;
    for (int i = 0; i < 2; ++i) CHECK(std::abs(got2[i] - ref2[i]) < 1e-9);

    const auto a3 = sample_hermitian(rng, 3);
    const auto ref3 = cubic_eigenvalues(a3.matrix());
    const auto got3 = eigenvalues(a3).values;
    for (int i = 0; i < 3; ++i) CHECK(std::abs(got3[i] - ref3[i]) < 1e-9);
  }
}

TEST_CASE("eigh handles repeated eigenvalues and zero matrix") {
  Rng rng(3);
  const CMatrix u = sample_unitary(rng, 5);
  const std::vector<double> vals{2, 2, 2, -1, -1};
  const auto e = eigh(with_spectrum(u, vals));
  for (int i = 0; i < 5; ++i) CHECK(e.spectrum[i] == doctest::Approx(vals[i]).epsilon(1e-12));
  const auto z = eigh(HermitianMatrix::zero(4));
  for (double v : z.spectrum.values) CHECK(v == 0.0);
}

TEST_CASE("spectrum is unitarily invariant") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = sample_hermitian(rng, 5);
    const CMatrix u = sample_unitary(rng, 5);
    const auto s1 = eigenvalues(a).values;
    const auto s2 = eigenvalues(congruence(u.adjoint(), a)).values;
    for (int i = 0; i < 5; ++i) CHECK(std::abs(s1[i] - s2[i]) < 1e-10);
  }
}

TEST_CASE("matrix_function basics") {
  const std::vector<double> d{4, 9};
  const auto r = matrix_function(HermitianMatrix::diagonal(d), [](double t) { return std::sqrt(t); },
                                 Interval::nonnegative());
  CHECK(r(0, 0).real() == doctest::Approx(2.0));
  CHECK(r(1, 1).real() == doctest::Approx(3.0));

  Rng rng(5);
  const auto a = sample_hermitian(rng, 4);
  CHECK(max_abs_diff(matrix_function(a, [](double t) { return t; }), a) < 1e-12);

  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  const auto b = HermitianMatrix::from_real(m);
  const auto lb = logm(b);
  const auto ls = eigenvalues(lb).values;
  CHECK(ls[0] == doctest::Approx(std::log(3.0)));
  CHECK(std::abs(ls[1]) < 1e-14);
  CHECK(max_abs_diff(expm(lb), b) < 1e-10);
}

TEST_CASE("matrix_function clamps round-off and rejects real violations") {
  const std::vector<double> tiny_negative{1.0, -1e-13};
  const auto r = matrix_function(HermitianMatrix::diagonal(tiny_negative), [](double t) { return std::sqrt(t); },
                                 Interval::nonnegative());
  CHECK(r(1, 1).real() == 0.0);
  const std::vector<double> negative{1.0, -0.5};
  CHECK_THROWS_AS(matrix_function(HermitianMatrix::diagonal(negative), [](double t) { return std::sqrt(t); },
                                  Interval::nonnegative()),
                  DomainViolation);
  CHECK_THROWS_AS(logm(HermitianMatrix::diagonal(tiny_negative)), DomainViolation);
}

TEST_CASE("functional calculus composes") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto a = psd(seed, 4, 50.0);
    const auto left = matrix_function(sqrtm(a), [](double t) { return std::log(t); }, Interval::positive());
    const auto right = 0.5 * logm(a);
    CHECK(rel_diff(left, right) < 1e-9);
    CHECK(rel_diff(powm(powm(a, 0.5), 2.0), a) < 1e-9);
    CHECK(rel_diff(inverse(inverse(a)), a) < 1e-9);
  }
}

TEST_CASE("congruence") {
  const auto a = psd(9, 3);
  CHECK(max_abs_diff(congruence(CMatrix::Identity(3, 3), a), a) < 1e-15);
  CHECK(max_abs_diff(congruence(2.0 * CMatrix::Identity(3, 3), a), 4.0 * a) < 1e-14);
  CHECK_THROWS_AS(congruence(CMatrix::Identity(2, 2), a), DimensionMismatch);
  Rng rng(4);
  const CMatrix u = sample_unitary(rng, 3);
  const auto s1 = eigenvalues(a).values;
  const auto s2 = eigenvalues(congruence(u, a)).values;
  for (int i = 0; i < 3; ++i) CHECK(std::abs(s1[i] - s2[i]) < 1e-12);
}

TEST_CASE("Loewner order") {
  const auto i2 = HermitianMatrix::identity(2);
  CHECK(loewner_geq(2.0 * i2, i2, 1e-10));
  CHECK_FALSE(loewner_geq(i2, 2.0 * i2, 1e-10));
  const std::vector<double> d1{2, 1}, d2{1, 2};
  CHECK_FALSE(loewner_geq(HermitianMatrix::diagonal(d1), HermitianMatrix::diagonal(d2), 1e-10));
  CHECK_FALSE(loewner_geq(HermitianMatrix::diagonal(d2), HermitianMatrix::diagonal(d1), 1e-10));
  CHECK(loewner_margin(2.0 * i2, i2) > 0.0);
}

TEST_CASE("sorted diagonal") {
  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  const auto down = sorted_diagonal(HermitianMatrix::from_real(m), Order::descending);
  CHECK(down(0, 0).real() == doctest::Approx(3.0));
  CHECK(down(1, 1).real() == doctest::Approx(1.0));
  CHECK(std::abs(down(0, 1)) == 0.0);
  const auto a = psd(12, 4);
  const auto up = sorted_diagonal(a, Order::ascending);
  CHECK(up.trace() == doctest::Approx(a.trace()));
  CHECK(determinant(up) == doctest::Approx(determinant(a)));
  CHECK(up(0, 0).real() <= up(3, 3).real());
}

TEST_CASE("determinant and det_root") {
  const std::vector<double> d{2, 8};
  CHECK(determinant(HermitianMatrix::diagonal(d)) == doctest::Approx(16.0));
  CHECK(det_root(HermitianMatrix::diagonal(d)) == doctest::Approx(4.0));
  const auto singular = psd(3, 4, 10.0, 1);
  CHECK(det_root(singular) == 0.0);
  CHECK_THROWS_AS(inverse(singular), SingularInput);
}

TEST_CASE("sampler determinism, rank deficit and conditioning") {
  PsdSamplerConfig cfg;
  cfg.dim = 3;
  cfg.seed = 1;
  const auto a = sample_psd(cfg);
  const auto b = sample_psd(cfg);
  CHECK(a.matrix() == b.matrix());

  cfg.dim = 5;
  cfg.invertible = false;
  cfg.rank_deficit = 1;
  const auto s = eigenvalues(sample_psd(cfg)).values;
  CHECK(std::abs(s.back()) < 1e-14);
  CHECK(s[3] > 1e-3);

  cfg.invertible = true;
  cfg.rank_deficit = 0;
  cfg.condition_target = 100.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    cfg.seed = seed;
    const auto sp = eigenvalues(sample_psd(cfg)).values;
    const double ratio = sp.front() / sp.back();
    CHECK(ratio >= 90.0);
    CHECK(ratio <= 110.0);
  }

  PsdSamplerConfig bad;
  bad.rank_deficit = 1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("Haar unitary is unitary and correlation matrices have unit diagonal") {
  Rng rng(8);
  const CMatrix u = sample_unitary(rng, 6);
  CHECK((u.adjoint() * u - CMatrix::Identity(6, 6)).norm() < 1e-12);
  const auto c = sample_correlation(rng, 4);
  for (int i = 0; i < 4; ++i) CHECK(c(i, i).real() == doctest::Approx(1.0));
  CHECK(eigenvalues(c).min() > 0.0);
}

TEST_CASE("seed mixing is stable") {
  CHECK(stable_hash("abc") == stable_hash("abc"));
  CHECK(stable_hash("abc") != stable_hash("abd"));
  CHECK(mix_seed(1, 2) == mix_seed(1, 2));
  CHECK(mix_seed(1, 2) != mix_seed(1, 3));
}

TEST_CASE("matrix JSON round-trip is bit exact") {
  Rng rng(21);
  const auto a = sample_hermitian(rng, 4);
  const auto text = to_json(a).dump();
  const auto back = hermitian_from_json(nlohmann::json::parse(text));
  CHECK(back.matrix() == a.matrix());

  const auto real_only = nlohmann::json::parse(R"({"dim":2,"re":[[1,2],[2,5]]})");
  const auto r = hermitian_from_json(real_only);
  CHECK(r(0, 1) == Complex(2, 0));
  CHECK_FALSE(to_json(r).contains("im"));

  CHECK_THROWS_AS(hermitian_from_json(nlohmann::json::parse(R"({"dim":3,"re":[[1,2],[2,5]]})")), ConfigError);
  CHECK_THROWS_AS(hermitian_from_json(nlohmann::json::parse(R"({"re":[[1,2,3],[2,5,6]]})")), ConfigError);
  const auto rect = cmatrix_from_json(nlohmann::json::parse(R"({"re":[[1,2,3],[2,5,6]]})"));
  CHECK(rect.rows() == 2);
  CHECK(rect.cols() == 3);
}

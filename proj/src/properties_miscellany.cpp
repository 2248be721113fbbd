// Schur multipliers, positive maps, arithmetic-geometric and Hoelder type inequalities.

#include <cmath>
#include <numeric>

#include "matmeans/errors.hpp"
#include "matmeans/matrix_io.hpp"
#include "matmeans/spec_parse.hpp"
#include "properties_internal.hpp"

namespace matmeans::detail {

namespace {

constexpr int kMaxAttempts = 200;

// D^{1/2} C D^{1/2} with C a correlation matrix and D in [1, 3]: PSD, diagonal >= 1.
HermitianMatrix draw_multiplier_at_least_one(TrialContext& ctx, int n) {
  const HermitianMatrix c = sample_correlation(ctx.rng, n);
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = std::sqrt(uniform(ctx.rng, 1.0, 3.0));
  return congruence(d.cast<Complex>().asDiagonal().toDenseMatrix(), c);
}

// Unital trace-preserving maps: diagonal pinching, random block pinching, random unitary
// mixtures and unit-diagonal Schur multipliers.
json draw_doubly_stochastic_map(TrialContext& ctx, int n) {
  const int kind = ctx.pick(std::vector<int>{0, 1, 2, 3});
  if (kind == 0) return {{"kind", "pinch"}, {"blocks", std::vector<int>(static_cast<std::size_t>(n), 1)}};
  if (kind == 1) {
    std::vector<int> blocks;
    int left = n;
    while (left > 0) left -= blocks.emplace_back(uniform_int(ctx.rng, 1, left));
    return {{"kind", "pinch"}, {"blocks", blocks}};
  }
  if (kind == 2) {
    const int count = uniform_int(ctx.rng, 2, 4);
    json us = json::array();
    std::vector<double> w(static_cast<std::size_t>(count));
    double s = 0.0;
    for (auto& x : w) {
      us.push_back(to_json(CMatrix(sample_unitary(ctx.rng, n))));
      s += (x = uniform(ctx.rng, 0.1, 1.0));
    }
    for (auto& x : w) x /= s;
    return {{"kind", "mixture"}, {"unitaries", us}, {"weights", w}};
  }
  return {{"kind", "schur"}, {"multiplier", mat(sample_correlation(ctx.rng, n))}};
}

PositiveMap doubly_stochastic_map(const json& j) {
  const std::string kind = j.at("kind");
  if (kind == "pinch") return PositiveMap::pinching(j.at("blocks").get<std::vector<int>>());
  if (kind == "schur") return PositiveMap::schur(mat(j, "multiplier"));
  std::vector<CMatrix> us;
  for (const auto& u : j.at("unitaries")) us.push_back(cmatrix_from_json(u));
  std::vector<double> w = j.at("weights").get<std::vector<double>>();
  w.back() = 1.0 - std::accumulate(w.begin(), w.end() - 1, 0.0);
  return PositiveMap::unitary_mixture(us, w);
}

// sinh(x)/x, exact at 0.
double sinhc(double x) { return x == 0.0 ? 1.0 : std::sinh(x) / x; }

// (1/2a) int_0^a (A^{t-1/2} Z A^{1/2-t} + A^{1/2-t} Z A^{t-1/2}) dt, computed in the eigenbasis of
// A as a Schur multiplier. a = 0 is the limit (A^{1/2} Z A^{-1/2} + A^{-1/2} Z A^{1/2})/2.
HermitianMatrix integral_average(const HermitianMatrix& a, const HermitianMatrix& z, double alpha) {
  const EigDecomposition e = eigh(a);
  const CMatrix& u = e.basis;
  CMatrix zz = u.adjoint() * z.matrix() * u;
  const int n = a.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double r = std::log(e.spectrum[static_cast<std::size_t>(i)] / e.spectrum[static_cast<std::size_t>(j)]);
      const double k = alpha == 0.0 ? std::cosh(r / 2.0)
                                    : ((alpha - 0.5) * sinhc((alpha - 0.5) * r) + 0.5 * sinhc(r / 2.0)) / alpha;
      zz(i, j) *= k;
    }
  }
  return HermitianMatrix(u * zz * u.adjoint());
}

// Z = C + t P with C commuting with A, so that preconditions of the form "a derived matrix is
// PSD" hold with reasonable probability.
HermitianMatrix draw_near_commuting(TrialContext& ctx, const HermitianMatrix& a) {
  const int n = a.dim();
  const EigDecomposition e = eigh(a);
  std::vector<double> d(static_cast<std::size_t>(n));
  for (auto& x : d) x = log_uniform(ctx.rng, 0.1, 10.0);
  const HermitianMatrix c = with_spectrum(e.basis, d);
  const double t = log_uniform(ctx.rng, 1e-3, 3.0);
  return c + ctx.pd(n) * t;
}

HermitianMatrix anticommutator(const HermitianMatrix& a, const HermitianMatrix& z) {
  return HermitianMatrix(a.matrix() * z.matrix() + z.matrix() * a.matrix());
}

// Singular values of XY for PSD X, Y: square roots of the eigenvalues of Y X^2 Y.
std::vector<double> product_singular_values(const HermitianMatrix& x, const HermitianMatrix& y) {
  std::vector<double> s = spectrum(congruence(y.matrix(), powm(x, 2.0)));
  for (double& v : s) v = std::sqrt(std::max(v, 0.0));
  return s;
}

std::vector<double> powers(std::vector<double> v, double p) {
  for (double& x : v) x = std::pow(x, p);
  return v;
}

}  // namespace

void add_miscellany_properties(std::vector<PropertyDef>& out) {
  out.push_back({{"cor-6.4", "|E(Z)|_! >= |Z|_! for unital trace-preserving positive maps", Expectation::holds},
                 [](TrialContext& ctx) {
                   return json{{"map", draw_doubly_stochastic_map(ctx, ctx.dim)},
                               {"antinorm", knob_or(ctx, ctx.knobs.antinorm, antinorm_grid(ctx.dim))},
                               {"Z", mat(ctx.psd(ctx.dim))}};
                 },
                 [](const json& j) {
                   const AntiNormSpec an = parse_antinorm(j.at("antinorm"));
                   const HermitianMatrix z = mat(j, "Z");
                   const PositiveMap e = doubly_stochastic_map(j.at("map"));
                   return CheckResult{rel_gap(evaluate_antinorm(an, e.apply(z)), evaluate_antinorm(an, z))};
                 }});

  out.push_back({{"thm-6.5", "|A o Z|_! >= |Z|_! when A is PSD with diagonal entries >= 1", Expectation::holds},
                 [](TrialContext& ctx) {
                   return json{{"antinorm", knob_or(ctx, ctx.knobs.antinorm, antinorm_grid(ctx.dim))},
                               {"A", mat(draw_multiplier_at_least_one(ctx, ctx.dim))},
                               {"Z", mat(ctx.psd(ctx.dim))}};
                 },
                 [](const json& j) {
                   const AntiNormSpec an = parse_antinorm(j.at("antinorm"));
                   const HermitianMatrix a = mat(j, "A"), z = mat(j, "Z");
                   return CheckResult{rel_gap(evaluate_antinorm(an, hadamard(a, z)), evaluate_antinorm(an, z))};
                 }});

  out.push_back({{"cor-6.6", "Tr f(A o Z) >= Tr f(Z) for increasing concave f, diag A >= 1", Expectation::holds},
                 [](TrialContext& ctx) {
                   return json{{"f", knob_or(ctx, ctx.knobs.function,
                                             {"pow:0.5", "pow:0.25", "ratio", "ratio_sqrt", "one_minus_exp", "log1p"})},
                               {"A", mat(draw_multiplier_at_least_one(ctx, ctx.dim))},
                               {"Z", mat(ctx.psd(ctx.dim))}};
                 },
                 [](const json& j) {
                   const IntervalFunction f = function_by_name(j.at("f"));
                   const HermitianMatrix a = mat(j, "A"), z = mat(j, "Z");
                   return CheckResult{rel_gap(apply_function(f, hadamard(a, z)).trace(), apply_function(f, z).trace())};
                 }});

  out.push_back(
      {{"cor-6.7",
        "|Z|_! >= (1/2a) |int_0^a (A^{t-1/2} Z A^{1/2-t} + A^{1/2-t} Z A^{t-1/2}) dt|_! when the integral is PSD, "
        "a in (0, 1/2], with the limit a -> 0",
        Expectation::holds},
       [](TrialContext& ctx) {
         const double alpha = knob_or(ctx, ctx.knobs.alpha, {0.0, 0.1, 0.25, 0.5});
         if (alpha < 0.0 || alpha > 0.5) throw ConfigError("cor-6.7 needs alpha in [0, 1/2]");
         const std::string an = knob_or(ctx, ctx.knobs.antinorm, antinorm_grid(ctx.dim));
         const HermitianMatrix a = ctx.pd(ctx.dim);
         HermitianMatrix z;
         for (ctx.attempts = 1; ctx.attempts <= kMaxAttempts; ++ctx.attempts) {
           z = draw_near_commuting(ctx, a);
           if (spectrum(integral_average(a, z, alpha)).back() >= 0.0) break;
         }
         ctx.attempts = std::min(ctx.attempts, kMaxAttempts);
         return json{{"alpha", alpha}, {"antinorm", an}, {"A", mat(a)}, {"Z", mat(z)}};
       },
       [](const json& j) {
         const AntiNormSpec an = parse_antinorm(j.at("antinorm"));
         const HermitianMatrix a = mat(j, "A"), z = mat(j, "Z");
         const HermitianMatrix m = integral_average(a, z, j.at("alpha").get<double>());
         if (spectrum(m).back() < 0.0) return CheckResult{kInf, false};
         return CheckResult{rel_gap(evaluate_antinorm(an, z), evaluate_antinorm(an, m))};
       }});

  out.push_back({{"cor-agm", "|A^{1/2} Z A^{1/2}|_! >= |AZ + ZA|_!/2 when AZ + ZA >= 0", Expectation::holds},
                 [](TrialContext& ctx) {
                   const std::string an = knob_or(ctx, ctx.knobs.antinorm, antinorm_grid(ctx.dim));
                   const HermitianMatrix a = ctx.psd(ctx.dim);
                   HermitianMatrix z;
                   for (ctx.attempts = 1; ctx.attempts <= kMaxAttempts; ++ctx.attempts) {
                     z = draw_near_commuting(ctx, a);
                     if (spectrum(anticommutator(a, z)).back() >= 0.0) break;
                   }
                   ctx.attempts = std::min(ctx.attempts, kMaxAttempts);
                   return json{{"antinorm", an}, {"A", mat(a)}, {"Z", mat(z)}};
                 },
                 [](const json& j) {
                   const AntiNormSpec an = parse_antinorm(j.at("antinorm"));
                   const HermitianMatrix a = mat(j, "A"), z = mat(j, "Z");
                   const HermitianMatrix s = anticommutator(a, z);
                   if (spectrum(s).back() < 0.0) return CheckResult{kInf, false};
                   const HermitianMatrix root = sqrtm(a);
                   return CheckResult{
                       rel_gap(evaluate_antinorm(an, congruence(root.matrix(), z)), 0.5 * evaluate_antinorm(an, s))};
                 }});

  out.push_back(
      {{"sec6-det-counterexample",
        "det A det Z >= det((AZ + ZA)/2) for A = diag(1,0) (+) diag(1,0), Z = J (+) J (fails: 0 < 1/16)",
        Expectation::fails},
       [](TrialContext&) {
         Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4), z = Eigen::MatrixXd::Zero(4, 4);
         a(0, 0) = a(2, 2) = 1.0;
         z.block(0, 0, 2, 2).setOnes();
         z.block(2, 2, 2, 2).setOnes();
         return json{{"A", mat(HermitianMatrix::from_real(a))}, {"Z", mat(HermitianMatrix::from_real(z))}};
       },
       [](const json& j) {
         const HermitianMatrix a = mat(j, "A"), z = mat(j, "Z");
         return CheckResult{rel_gap(determinant(a) * determinant(z), determinant(anticommutator(a, z) * 0.5))};
       }});

  out.push_back({{"prop-revholder", "|AB| >= |A^p|^{1/p} |B^q|^{1/q} for p in (0,1), 1/p + 1/q = 1, symmetric norms",
                  Expectation::holds},
                 [](TrialContext& ctx) {
                   const double p = knob_or(ctx, ctx.knobs.p, {0.25, 0.5, 0.75});
                   if (!(p > 0.0 && p < 1.0)) throw ConfigError("prop-revholder needs p in (0,1)");
                   return json{{"p", p},
                               {"norm", knob_or(ctx, ctx.knobs.norm, norm_grid(ctx.dim))},
                               {"A", mat(ctx.pd(ctx.dim))},
                               {"B", mat(ctx.pd(ctx.dim))}};
                 },
                 [](const json& j) {
                   const double p = j.at("p");
                   const double q = p / (p - 1.0);
                   const NormSpec nm = parse_norm(j.at("norm"));
                   const HermitianMatrix a = mat(j, "A"), b = mat(j, "B");
                   const double lhs = evaluate_norm(nm, product_singular_values(a, b));
                   const double rhs = std::pow(evaluate_norm(nm, powers(spectrum(a), p)), 1.0 / p) *
                                      std::pow(evaluate_norm(nm, powers(spectrum(b), q)), 1.0 / q);
                   return CheckResult{rel_gap(lhs, rhs)};
                 }});

  out.push_back({{"chain-6.14",
                  "| |A^{1/r} B^{1/r}|^r | >= |AB| >= | |A^r B^r|^{1/r} | >= |A_down B_up| for symmetric norms",
                  Expectation::holds},
                 [](TrialContext& ctx) {
                   return json{{"r", knob_or(ctx, ctx.knobs.p, {0.5, 0.25})},
                               {"norm", knob_or(ctx, ctx.knobs.norm, norm_grid(ctx.dim))},
                               {"A", mat(ctx.pd(ctx.dim))},
                               {"B", mat(ctx.pd(ctx.dim))}};
                 },
                 [](const json& j) {
                   const double r = j.at("r");
                   const NormSpec nm = parse_norm(j.at("norm"));
                   const HermitianMatrix a = mat(j, "A"), b = mat(j, "B");
                   const double n1 =
                       evaluate_norm(nm, powers(product_singular_values(powm(a, 1.0 / r), powm(b, 1.0 / r)), r));
                   const double n2 = evaluate_norm(nm, product_singular_values(a, b));
                   const double n3 = evaluate_norm(nm, powers(product_singular_values(powm(a, r), powm(b, r)), 1.0 / r));
                   const std::vector<double> sa = spectrum(a), sb = spectrum(b);
                   std::vector<double> s4(sa.size());
                   for (std::size_t i = 0; i < sa.size(); ++i) s4[i] = sa[i] * sb[sa.size() - 1 - i];
                   const double n4 = evaluate_norm(nm, s4);
                   return CheckResult{std::min({rel_gap(n1, n2), rel_gap(n2, n3), rel_gap(n3, n4)})};
                 }});

  out.push_back(
      {{"cor-6.9",
        "(1/k) sum_{j<=k} mu_j(A b_0 B) >= (prod_{j<=k} mu_j(A))^{1/2k} (prod_{j<=k} mu_{n+1-j}(B))^{1/2k}",
        Expectation::holds},
       [](TrialContext& ctx) { return json{{"A", mat(ctx.pd(ctx.dim))}, {"B", mat(ctx.pd(ctx.dim))}}; },
       [](const json& j) {
         const HermitianMatrix a = mat(j, "A"), b = mat(j, "B");
         const std::vector<double> sm = spectrum(power_mean(a, b, 0.0)), sa = spectrum(a), sb = spectrum(b);
         double worst = kInf, partial = 0.0;
         for (int k = 1; k <= a.dim(); ++k) {
           partial += sm[static_cast<std::size_t>(k - 1)];
           worst = std::min(worst, rel_gap(partial / k, std::sqrt(top_root(sa, k) * bottom_root(sb, k))));
         }
         return CheckResult{worst};
       }});
}

}  // namespace matmeans::detail

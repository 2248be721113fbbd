// Anti-norm and norm inequalities for two-variable means.

#include <cmath>

#include "matmeans/spec_parse.hpp"
#include "properties_internal.hpp"

namespace matmeans::detail {

namespace {

const std::vector<std::string> kGeodesicMeans{"mean:geo:alpha=0.5", "mean:falpha:a=1", "mean:bp:p=0.5"};

std::vector<std::string> functions_of_class(ClassClaim c) {
  std::vector<std::string> out;
  for (const auto& f : catalog()) {
    if (f.class_claim == c && f.name != "pow:0") out.push_back(f.name);
  }
  return out;
}

const std::vector<std::string>& concave_functions() {
  static const std::vector<std::string> fs = functions_of_class(ClassClaim::doubly_concave);
  return fs;
}

const std::vector<std::string>& convex_functions() {
  static const std::vector<std::string> fs = functions_of_class(ClassClaim::doubly_convex);
  return fs;
}

// f, mean, A, B with A, B in the domain of f.
json draw_function_pair(TrialContext& ctx, const std::vector<std::string>& fgrid, const std::vector<std::string>& means) {
  const std::string fname = knob_or(ctx, ctx.knobs.function, fgrid);
  const std::string mean = knob_or(ctx, ctx.knobs.mean, means);
  const IntervalFunction f = function_by_name(fname);
  return {{"f", fname},
          {"mean", mean},
          {"A", mat(ctx.in_domain(ctx.dim, f.domain))},
          {"B", mat(ctx.in_domain(ctx.dim, f.domain))}};
}

double scalar_power_mean(double a, double b, double p) {
  if (p == 0.0) return std::sqrt(a * b);
  return std::pow((std::pow(a, p) + std::pow(b, p)) / 2.0, 1.0 / p);
}

}  // namespace

void add_anti_norm_properties(std::vector<PropertyDef>& out) {
  out.push_back({{"thm-4.7", "|f(A sigma B)|_! >= |f(A)|_! sigma |f(B)|_! for derived anti-norms and geodesic means",
                  Expectation::holds},
                 [](TrialContext& ctx) {
                   json j = draw_function_pair(ctx, concave_functions(), kGeodesicMeans);
                   j["antinorm"] = knob_or(ctx, ctx.knobs.antinorm, derived_antinorm_grid(ctx.dim));
                   return j;
                 },
                 [](const json& j) {
                   const IntervalFunction f = function_by_name(j.at("f"));
                   const BinaryMean sigma = parse_mean(j.at("mean"));
                   const AntiNormSpec an = parse_antinorm(j.at("antinorm"));
                   const HermitianMatrix a = mat(j, "A"), b = mat(j, "B");
                   const double lhs = evaluate_antinorm(an, apply_function(f, sigma.apply(a, b)));
                   const double rhs = sigma.scalar(evaluate_antinorm(an, apply_function(f, a)),
                                                   evaluate_antinorm(an, apply_function(f, b)));
                   return CheckResult{rel_gap(lhs, rhs)};
                 }});

  out.push_back({{"cor-4.8", "Delta_k(f(A sigma B)) >= Delta_k(f(A)) sigma Delta_k(f(B)) for every k", Expectation::holds},
                 [](TrialContext& ctx) { return draw_function_pair(ctx, concave_functions(), kGeodesicMeans); },
                 [](const json& j) {
                   const IntervalFunction f = function_by_name(j.at("f"));
                   const BinaryMean sigma = parse_mean(j.at("mean"));
                   const HermitianMatrix a = mat(j, "A"), b = mat(j, "B");
                   const std::vector<double> sm = spectrum(apply_function(f, sigma.apply(a, b)));
                   const std::vector<double> sa = spectrum(apply_function(f, a)), sb = spectrum(apply_function(f, b));
                   double worst = kInf;
                   for (int k = 1; k <= a.dim(); ++k) {
                     const AntiNormSpec d = AntiNormSpec::delta(k);
                     worst = std::min(worst, rel_gap(evaluate_antinorm(d, sm),
                                                     sigma.scalar(evaluate_antinorm(d, sa), evaluate_antinorm(d, sb))));
                   }
                   return CheckResult{worst};
                 }});

  out.push_back(
      {{"rem-4.9-negative",
        "|A sigma B|_! >= |A|_! sigma |B|_! for a regular anti-norm and the logarithmic mean, A and B with "
        "orthogonal supports (fails: the left side is 0)",
        Expectation::fails},
       [](TrialContext& ctx) {
         const int n = ctx.dim;
         const int r = uniform_int(ctx.rng, 1, n - 1);
         std::vector<double> va(static_cast<std::size_t>(n), 0.0), vb(static_cast<std::size_t>(n), 0.0);
         for (int i = 0; i < r; ++i) va[static_cast<std::size_t>(i)] = log_uniform(ctx.rng, 0.1, 10.0);
         for (int i = r; i < n; ++i) vb[static_cast<std::size_t>(i)] = log_uniform(ctx.rng, 0.1, 10.0);
         const CMatrix u = sample_unitary(ctx.rng, n);
         const std::string an = knob_or(ctx, ctx.knobs.antinorm,
                                        {AntiNormSpec::schatten(0.5).str(), AntiNormSpec::schatten(1.0).str(),
                                         AntiNormSpec::schatten(0.25).str()});
         return json{{"antinorm", an},
                     {"mean", "mean:falpha:a=1"},
                     {"A", mat(congruence(u.adjoint(), HermitianMatrix::diagonal(va)))},
                     {"B", mat(congruence(u.adjoint(), HermitianMatrix::diagonal(vb)))}};
       },
       [](const json& j) {
         const BinaryMean sigma = parse_mean(j.at("mean"));
         const AntiNormSpec an = parse_antinorm(j.at("antinorm"));
         const HermitianMatrix a = mat(j, "A"), b = mat(j, "B");
         const double lhs = evaluate_antinorm(an, sigma.apply(a, b));
         const double rhs = sigma.scalar(evaluate_antinorm(an, a), evaluate_antinorm(an, b));
         return CheckResult{rel_gap(lhs, rhs)};
       }});

  out.push_back({{"prop-4.12",
                  "|f(A b_p B)|_! >= |f(A)|_! b_p |f(B)|_! and |(X^p + Y^p)^{1/p}|_!^p >= |X|_!^p + |Y|_!^p for "
                  "derived anti-norms",
                  Expectation::holds},
                 [](TrialContext& ctx) {
                   const std::string fname = knob_or(ctx, ctx.knobs.function, concave_functions());
                   const double p = knob_or(ctx, ctx.knobs.p, {0.0, 0.25, 0.5, 1.0});
                   const IntervalFunction f = function_by_name(fname);
                   const bool pd = p == 0.0 && f.domain.lo == 0.0 && f.domain.hi == kInf;
                   return json{{"f", fname},
                               {"p", p},
                               {"antinorm", knob_or(ctx, ctx.knobs.antinorm, derived_antinorm_grid(ctx.dim))},
                               {"A", mat(pd ? ctx.pd(ctx.dim) : ctx.in_domain(ctx.dim, f.domain))},
                               {"B", mat(pd ? ctx.pd(ctx.dim) : ctx.in_domain(ctx.dim, f.domain))}};
                 },
                 [](const json& j) {
                   const IntervalFunction f = function_by_name(j.at("f"));
                   const double p = j.at("p");
                   const AntiNormSpec an = parse_antinorm(j.at("antinorm"));
                   const HermitianMatrix a = mat(j, "A"), b = mat(j, "B");
                   const HermitianMatrix x = apply_function(f, a), y = apply_function(f, b);
                   const double nx = evaluate_antinorm(an, x), ny = evaluate_antinorm(an, y);
                   double worst = rel_gap(evaluate_antinorm(an, apply_function(f, power_mean(a, b, p))),
                                          scalar_power_mean(nx, ny, p));
                   if (p > 0.0) {
                     const HermitianMatrix s = powm(powm(x, p) + powm(y, p), 1.0 / p);
                     worst = std::min(worst, rel_gap(std::pow(evaluate_antinorm(an, s), p),
                                                     std::pow(nx, p) + std::pow(ny, p)));
                   }
                   return CheckResult{worst};
                 }});

  out.push_back({{"prop-4.13", "|g(A sigma B)| <= |g(A)| sigma |g(B)| for doubly convex g, symmetric norms, geodesic means",
                  Expectation::holds},
                 [](TrialContext& ctx) {
                   json j = draw_function_pair(ctx, convex_functions(), kGeodesicMeans);
                   j["norm"] = knob_or(ctx, ctx.knobs.norm, norm_grid(ctx.dim));
                   return j;
                 },
                 [](const json& j) {
                   const IntervalFunction g = function_by_name(j.at("f"));
                   const BinaryMean sigma = parse_mean(j.at("mean"));
                   const NormSpec nm = parse_norm(j.at("norm"));
                   const HermitianMatrix a = mat(j, "A"), b = mat(j, "B");
                   const double lhs = evaluate_norm(nm, apply_function(g, sigma.apply(a, b)));
                   const double rhs =
                       sigma.scalar(evaluate_norm(nm, apply_function(g, a)), evaluate_norm(nm, apply_function(g, b)));
                   return CheckResult{rel_gap(rhs, lhs)};
                 }});
}

}  // namespace matmeans::detail

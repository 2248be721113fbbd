// Inequalities for m-variable geodesic means.

#include <cmath>

#include "matmeans/majorization.hpp"
#include "matmeans/multi_geodesic.hpp"
#include "matmeans/spec_parse.hpp"
#include "properties_internal.hpp"

namespace matmeans::detail {

namespace {

constexpr int kUniformSamples = 24;

json draw_weights(TrialContext& ctx, std::size_t m) {
  return sample_simplex(ctx.rng(), m);
}

// Either one to three random atoms or the Monte Carlo uniform measure.
json draw_measure(TrialContext& ctx, std::size_t m) {
  if (ctx.pick(std::vector<int>{0, 1}) == 1) {
    return {{"uniform", kUniformSamples}, {"seed", ctx.rng() >> 11}};
  }
  const int count = uniform_int(ctx.rng, 1, 3);
  json atoms = json::array();
  std::vector<double> mass(static_cast<std::size_t>(count));
  double s = 0.0;
  for (auto& x : mass) s += (x = uniform(ctx.rng, 0.1, 1.0));
  for (const double x : mass) atoms.push_back({draw_weights(ctx, m), x / s});
  return {{"atoms", atoms}};
}

SimplexMeasure measure_from(const json& j) {
  if (j.contains("uniform")) return SimplexMeasure::uniform(j.at("uniform").get<int>(), j.at("seed").get<std::uint64_t>());
  SimplexMeasure nu;
  double total = 0.0;
  for (const auto& a : j.at("atoms")) {
    WeightVector w = a.at(0).get<WeightVector>();
    double s = 0.0;
    for (double x : w) s += x;
    for (double& x : w) x /= s;
    nu.atoms.emplace_back(std::move(w), a.at(1).get<double>());
    total += nu.atoms.back().second;
  }
  nu.atoms.back().second += 1.0 - total;
  return nu;
}

// sigma_m on positive scalars: sum over atoms of mass * prod x_i^{w_i}.
double scalar_multi_mean(const std::vector<std::pair<WeightVector, double>>& points, const std::vector<double>& x) {
  double out = 0.0;
  for (const auto& [w, mass] : points) {
    double log_g = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (w[i] > 0.0) log_g += w[i] * std::log(x[i]);
    }
    out += mass * std::exp(log_g);
  }
  return out;
}

std::size_t draw_m(TrialContext& ctx) { return static_cast<std::size_t>(ctx.pick(std::vector<int>{2, 3, 4})); }

json draw_operands(TrialContext& ctx, std::size_t m, const Interval& domain = Interval::positive()) {
  std::vector<HermitianMatrix> as;
  for (std::size_t i = 0; i < m; ++i) as.push_back(ctx.in_domain(ctx.dim, domain));
  return mats(as);
}

std::vector<std::string> positive_domain_concave() {
  std::vector<std::string> out;
  for (const auto& f : catalog()) {
    if (f.class_claim == ClassClaim::doubly_concave && f.name != "pow:0" && f.domain.hi == kInf) out.push_back(f.name);
  }
  return out;
}

std::vector<std::string> convex_functions() {
  std::vector<std::string> out;
  for (const auto& f : catalog()) {
    if (f.class_claim == ClassClaim::doubly_convex) out.push_back(f.name);
  }
  return out;
}

}  // namespace

void add_multi_geodesic_properties(std::vector<PropertyDef>& out) {
  out.push_back({{"prop-5.2", "(sum wbar_i A_i^{-1})^{-1} <= sigma_m(A) <= sum wbar_i A_i, wbar the mean weight of the measure",
                  Expectation::holds},
                 [](TrialContext& ctx) {
                   const std::size_t m = draw_m(ctx);
                   return json{{"measure", draw_measure(ctx, m)}, {"As", draw_operands(ctx, m)}};
                 },
                 [](const json& j) {
                   const std::vector<HermitianMatrix> as = mats(j, "As");
                   const MultiMeanResult r = geodesic_mean_m_detailed(measure_from(j.at("measure")), as);
                   HermitianMatrix arith = HermitianMatrix::zero(as.front().dim());
                   HermitianMatrix harm_inv = arith;
                   for (std::size_t i = 0; i < as.size(); ++i) {
                     arith += as[i] * r.average_weights[i];
                     harm_inv += inverse(as[i]) * r.average_weights[i];
                   }
                   return CheckResult{
                       std::min(loewner_margin(arith, r.mean), loewner_margin(r.mean, inverse(harm_inv)))};
                 }});

  out.push_back({{"prop-5.3", "G_m(w; A) is log-majorized by G_m(w; A_down)", Expectation::holds},
                 [](TrialContext& ctx) {
                   const std::size_t m = draw_m(ctx);
                   return json{{"w", draw_weights(ctx, m)}, {"As", draw_operands(ctx, m)}};
                 },
                 [](const json& j) {
                   const std::vector<HermitianMatrix> as = mats(j, "As");
                   WeightVector w = j.at("w").get<WeightVector>();
                   std::vector<HermitianMatrix> sorted;
                   for (const auto& a : as) sorted.push_back(sorted_diagonal(a, Order::descending));
                   return CheckResult{log_majorizes(karcher_mean(w, as), karcher_mean(w, sorted), 0.0).worst_margin};
                 }});

  out.push_back({{"prop-5.4", "G_k(bottom, sigma_m(A)) >= sigma_m(G_k(bottom A_1), ..., G_k(bottom A_m))",
                  Expectation::holds},
                 [](TrialContext& ctx) {
                   const std::size_t m = draw_m(ctx);
                   return json{{"measure", draw_measure(ctx, m)}, {"As", draw_operands(ctx, m)}};
                 },
                 [](const json& j) {
                   const std::vector<HermitianMatrix> as = mats(j, "As");
                   const SimplexMeasure nu = measure_from(j.at("measure"));
                   const auto points = nu.discretize(as.size());
                   const std::vector<double> sm = spectrum(geodesic_mean_m(nu, as));
                   std::vector<std::vector<double>> sa;
                   for (const auto& a : as) sa.push_back(spectrum(a));
                   double worst = kInf;
                   for (int k = 1; k <= static_cast<int>(sm.size()); ++k) {
                     std::vector<double> x;
                     for (const auto& s : sa) x.push_back(bottom_root(s, k));
                     worst = std::min(worst, rel_gap(bottom_root(sm, k), scalar_multi_mean(points, x)));
                   }
                   return CheckResult{worst};
                 }});

  out.push_back(
      {{"thm-5.5",
        "|f(sigma_m(A))|_! >= sigma_m(|f(A_i)|_!) for doubly concave f and derived anti-norms; "
        "|g(sigma_m(A))| <= sigma_m(|g(A_i)|) for doubly convex g and symmetric norms",
        Expectation::holds},
       [](TrialContext& ctx) {
         const std::size_t m = draw_m(ctx);
         const bool concave_part = ctx.pick(std::vector<int>{0, 1}) == 0;
         static const std::vector<std::string> fs = positive_domain_concave();
         static const std::vector<std::string> gs = convex_functions();
         const std::string fname = knob_or(ctx, ctx.knobs.function, concave_part ? fs : gs);
         Interval domain = function_by_name(fname).domain;
         domain.lo_open = true;
         json j{{"f", fname}, {"measure", draw_measure(ctx, m)}, {"As", draw_operands(ctx, m, domain)}};
         if (concave_part) {
           j["antinorm"] = knob_or(ctx, ctx.knobs.antinorm, derived_antinorm_grid(ctx.dim));
         } else {
           j["norm"] = knob_or(ctx, ctx.knobs.norm, norm_grid(ctx.dim));
         }
         return j;
       },
       [](const json& j) {
         const IntervalFunction f = function_by_name(j.at("f"));
         const std::vector<HermitianMatrix> as = mats(j, "As");
         const SimplexMeasure nu = measure_from(j.at("measure"));
         const auto points = nu.discretize(as.size());
         const HermitianMatrix fm = apply_function(f, geodesic_mean_m(nu, as));
         std::vector<double> values;
         if (j.contains("antinorm")) {
           const AntiNormSpec an = parse_antinorm(j.at("antinorm"));
           for (const auto& a : as) values.push_back(evaluate_antinorm(an, apply_function(f, a)));
           return CheckResult{rel_gap(evaluate_antinorm(an, fm), scalar_multi_mean(points, values))};
         }
         const NormSpec nm = parse_norm(j.at("norm"));
         for (const auto& a : as) values.push_back(evaluate_norm(nm, apply_function(f, a)));
         return CheckResult{rel_gap(scalar_multi_mean(points, values), evaluate_norm(nm, fm))};
       }});

  out.push_back({{"bk-norm", "|G_m(w; A)| <= prod |A_i|^{w_i} for symmetric norms", Expectation::holds},
                 [](TrialContext& ctx) {
                   const std::size_t m = draw_m(ctx);
                   return json{{"w", draw_weights(ctx, m)},
                               {"norm", knob_or(ctx, ctx.knobs.norm, norm_grid(ctx.dim))},
                               {"As", draw_operands(ctx, m)}};
                 },
                 [](const json& j) {
                   const std::vector<HermitianMatrix> as = mats(j, "As");
                   const WeightVector w = j.at("w").get<WeightVector>();
                   const NormSpec nm = parse_norm(j.at("norm"));
                   double log_rhs = 0.0;
                   for (std::size_t i = 0; i < as.size(); ++i) log_rhs += w[i] * std::log(evaluate_norm(nm, as[i]));
                   return CheckResult{rel_gap(std::exp(log_rhs), evaluate_norm(nm, karcher_mean(w, as)))};
                 }});

  out.push_back({{"bk-antinorm", "|G_m(w; A)|_! >= prod |A_i|_!^{w_i} for derived anti-norms", Expectation::holds},
                 [](TrialContext& ctx) {
                   const std::size_t m = draw_m(ctx);
                   return json{{"w", draw_weights(ctx, m)},
                               {"antinorm", knob_or(ctx, ctx.knobs.antinorm, derived_antinorm_grid(ctx.dim))},
                               {"As", draw_operands(ctx, m)}};
                 },
                 [](const json& j) {
                   const std::vector<HermitianMatrix> as = mats(j, "As");
                   const WeightVector w = j.at("w").get<WeightVector>();
                   const AntiNormSpec an = parse_antinorm(j.at("antinorm"));
                   double log_rhs = 0.0;
                   for (std::size_t i = 0; i < as.size(); ++i) log_rhs += w[i] * std::log(evaluate_antinorm(an, as[i]));
                   return CheckResult{rel_gap(evaluate_antinorm(an, karcher_mean(w, as)), std::exp(log_rhs))};
                 }});
}

}  // namespace matmeans::detail

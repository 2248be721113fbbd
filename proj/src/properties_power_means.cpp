// Jensen-type inequalities for power means of positive maps.

#include <cmath>

#include "matmeans/majorization.hpp"
#include "properties_internal.hpp"

namespace matmeans::detail {

namespace {

const std::vector<std::string> kConcave{"pow:0.5", "ratio", "one_minus_exp"};
const std::vector<double> kPowers{0.25, 0.5, 1.0};
const std::vector<std::string> kUnitalMaps{"pinch-diag", "two-block", "schur"};
const std::vector<std::string> kSubUnitalMaps{"pinch-diag", "two-block", "schur", "schur-sub"};

std::vector<std::string> concave_catalog() {
  std::vector<std::string> out;
  for (const auto& f : catalog()) {
    if (f.class_claim == ClassClaim::doubly_concave && f.name != "pow:0") out.push_back(f.name);
  }
  return out;
}

double scalar_power_mean(double a, double b, double p) {
  if (p == 0.0) return std::sqrt(a * b);
  return std::pow((std::pow(a, p) + std::pow(b, p)) / 2.0, 1.0 / p);
}

// Z, the map and (f, p); Z is drawn in the domain of f, invertible when `invertible`.
json draw_map_case(TrialContext& ctx, const std::vector<std::string>& fgrid, const std::vector<double>& pgrid,
                   const std::vector<std::string>& maps, bool invertible, double cond_cap = kInf) {
  const std::string fname = knob_or(ctx, ctx.knobs.function, fgrid);
  const double p = knob_or(ctx, ctx.knobs.p, pgrid);
  const MapDraw md = draw_map(ctx, knob_or(ctx, ctx.knobs.map, maps), ctx.dim);
  const IntervalFunction f = function_by_name(fname);
  HermitianMatrix z;
  if (invertible) {
    const double c = std::min(ctx.condition(), cond_cap);
    z = sample_psd(ctx.rng, md.in_dim, c > 1.0 ? log_uniform(ctx.rng, 1.0, c) : 1.0, 0);
    if (f.domain.lo > 0.0) z = z * f.domain.lo + HermitianMatrix::identity(md.in_dim) * f.domain.lo;
  } else {
    z = ctx.in_domain(md.in_dim, f.domain);
  }
  json j{{"f", fname}, {"p", p}, {"map", md.name}, {"out_dim", ctx.dim}, {"Z", mat(z)}};
  if (!md.extra.is_null()) j["multiplier"] = md.extra;
  return j;
}

struct MapSides {
  HermitianMatrix lhs;  // f(E_p(Z))
  HermitianMatrix rhs;  // E_p(f(Z))
};

MapSides map_sides(const json& j) {
  const IntervalFunction f = function_by_name(j.at("f"));
  const double p = j.at("p");
  const PositiveMap e = map_from(j);
  const HermitianMatrix z = mat(j, "Z");
  const HermitianMatrix fz = apply_function(f, z);
  if (p == 0.0) return {apply_function(f, zero_power_map(e, z)), zero_power_map(e, fz)};
  return {apply_function(f, power_map(e, z, p)), power_map(e, fz, p)};
}

json draw_pair(TrialContext& ctx, const std::string& fname, double p, bool invertible) {
  const IntervalFunction f = function_by_name(fname);
  HermitianMatrix a, b;
  if (invertible && f.domain.lo == 0.0 && f.domain.hi == kInf) {
    a = ctx.pd(ctx.dim);
    b = ctx.pd(ctx.dim);
  } else {
    a = ctx.in_domain(ctx.dim, f.domain);
    b = ctx.in_domain(ctx.dim, f.domain);
  }
  return {{"f", fname}, {"p", p}, {"A", mat(a)}, {"B", mat(b)}};
}

// ((A^q + B^q)/2)^{1/q} for any q > 0, through the two-block average.
HermitianMatrix beta(const HermitianMatrix& a, const HermitianMatrix& b, double q) {
  if (q <= 1.0) return power_mean(a, b, q);
  return power_map(PositiveMap::two_block_average(a.dim()), direct_sum(a, b), q);
}

}  // namespace

void add_power_mean_properties(std::vector<PropertyDef>& out) {
  out.push_back({{"thm-2.7-logsup", "f(E_p(Z)) is log-supermajorized by E_p(f(Z)) for doubly concave f, p in (0,1]",
                  Expectation::holds},
                 [](TrialContext& ctx) { return draw_map_case(ctx, kConcave, kPowers, kSubUnitalMaps, false); },
                 [](const json& j) {
                   const MapSides s = map_sides(j);
                   return CheckResult{log_supermajorizes(s.lhs, s.rhs, 0.0).worst_margin};
                 }});

  out.push_back({{"thm-2.7-dominance", "f(E_p(Z)) >= V E_p(f(Z)) V* for monotone doubly concave f", Expectation::holds},
                 [](TrialContext& ctx) { return draw_map_case(ctx, kConcave, kPowers, kSubUnitalMaps, false); },
                 [](const json& j) {
                   const MapSides s = map_sides(j);
                   return CheckResult{eigenvalue_dominates(s.lhs, s.rhs, 0.0).worst_margin};
                 }});

  out.push_back({{"thm-2.7-p0", "both Jensen relations at p = 0 for unital maps and invertible Z", Expectation::holds},
                 [](TrialContext& ctx) {
                   json j = draw_map_case(ctx, kConcave, {0.0}, kUnitalMaps, true, 1e6);
                   j["p"] = 0.0;
                   return j;
                 },
                 [](const json& j) {
                   const MapSides s = map_sides(j);
                   return CheckResult{std::min(log_supermajorizes(s.lhs, s.rhs, 0.0).worst_margin,
                                               eigenvalue_dominates(s.lhs, s.rhs, 0.0).worst_margin)};
                 }});

  out.push_back({{"cor-2.8", "f(A b_p B) >= V {f(A) b_p f(B)} V* for doubly concave f", Expectation::holds},
                 [](TrialContext& ctx) {
                   const std::string f = knob_or(ctx, ctx.knobs.function, kConcave);
                   const double p = knob_or(ctx, ctx.knobs.p, {0.0, 0.25, 0.5, 1.0});
                   return draw_pair(ctx, f, p, p == 0.0);
                 },
                 [](const json& j) {
                   const IntervalFunction f = function_by_name(j.at("f"));
                   const double p = j.at("p");
                   const HermitianMatrix a = mat(j, "A"), b = mat(j, "B");
                   const HermitianMatrix lhs = apply_function(f, power_mean(a, b, p));
                   const HermitianMatrix rhs = power_mean(apply_function(f, a), apply_function(f, b), p);
                   return CheckResult{eigenvalue_dominates(lhs, rhs, 0.0).worst_margin};
                 }});

  out.push_back({{"cor-2.9", "f({A o Z^p}^{1/p}) >= V {A o f(Z)^p}^{1/p} V* when diag A <= 1", Expectation::holds},
                 [](TrialContext& ctx) {
                   return draw_map_case(ctx, kConcave, kPowers, {"schur", "schur-sub"}, false);
                 },
                 [](const json& j) {
                   const MapSides s = map_sides(j);
                   return CheckResult{eigenvalue_dominates(s.lhs, s.rhs, 0.0).worst_margin};
                 }});

  out.push_back({{"cor-2.11", "det^{1/n} f(A b_p B) >= det^{1/n} f(A) b_p det^{1/n} f(B)", Expectation::holds},
                 [](TrialContext& ctx) {
                   static const std::vector<std::string> fs = concave_catalog();
                   const std::string f = knob_or(ctx, ctx.knobs.function, fs);
                   const double p = knob_or(ctx, ctx.knobs.p, {0.0, 0.25, 0.5, 1.0});
                   return draw_pair(ctx, f, p, p == 0.0);
                 },
                 [](const json& j) {
                   const IntervalFunction f = function_by_name(j.at("f"));
                   const double p = j.at("p");
                   const HermitianMatrix a = mat(j, "A"), b = mat(j, "B");
                   const double lhs = det_root(apply_function(f, power_mean(a, b, p)));
                   const double rhs =
                       scalar_power_mean(det_root(apply_function(f, a)), det_root(apply_function(f, b)), p);
                   return CheckResult{rel_gap(lhs, rhs)};
                 }});

  out.push_back({{"prop-2.13",
                  "g(E_q(Z)) <= V E_q(g(Z)) V* for convex g >= 0 with g(0) = 0 and q >= 1, or decreasing "
                  "convex g with unital E",
                  Expectation::holds},
                 [](TrialContext& ctx) {
                   const std::string g = knob_or(ctx, ctx.knobs.function,
                                                 {"pow:2", "pow:1.5", "expm1", "inv", "pow:-0.5", "exp_neg"});
                   const bool decreasing = function_by_name(g).monotone == Monotone::decreasing;
                   const double q = knob_or(ctx, ctx.knobs.p, {1.0, 1.5, 2.0, 3.0});
                   const std::string mname = knob_or(ctx, ctx.knobs.map, decreasing ? kUnitalMaps : kSubUnitalMaps);
                   const MapDraw md = draw_map(ctx, mname, ctx.dim);
                   const HermitianMatrix z = decreasing ? ctx.pd(md.in_dim) : ctx.psd(md.in_dim);
                   json j{{"f", g}, {"p", q}, {"map", md.name}, {"out_dim", ctx.dim}, {"Z", mat(z)}};
                   if (!md.extra.is_null()) j["multiplier"] = md.extra;
                   return j;
                 },
                 [](const json& j) {
                   const MapSides s = map_sides(j);
                   return CheckResult{eigenvalue_dominates(s.rhs, s.lhs, 0.0).worst_margin};
                 }});

  out.push_back({{"cor-2.14", "g(A b_q B) <= V {g(A) b_q g(B)} V* for convex g >= 0 with g(0) = 0, q >= 1",
                  Expectation::holds},
                 [](TrialContext& ctx) {
                   const std::string g = knob_or(ctx, ctx.knobs.function, {"pow:2", "pow:1.5", "expm1"});
                   const double q = knob_or(ctx, ctx.knobs.p, {1.0, 1.5, 2.0, 3.0});
                   return draw_pair(ctx, g, q, false);
                 },
                 [](const json& j) {
                   const IntervalFunction g = function_by_name(j.at("f"));
                   const double q = j.at("p");
                   const HermitianMatrix a = mat(j, "A"), b = mat(j, "B");
                   const HermitianMatrix lhs = apply_function(g, beta(a, b, q));
                   const HermitianMatrix rhs = beta(apply_function(g, a), apply_function(g, b), q);
                   return CheckResult{eigenvalue_dominates(rhs, lhs, 0.0).worst_margin};
                 }});
}

}  // namespace matmeans::detail

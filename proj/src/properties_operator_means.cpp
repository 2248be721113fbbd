// Eigenvalue product inequalities for two-variable operator means.

#include <cmath>

#include "matmeans/majorization.hpp"
#include "properties_internal.hpp"

namespace matmeans::detail {

namespace {

const std::vector<double> kAlphas{0.25, 0.5, 0.75};

std::vector<std::size_t> means_of_class(bool convex) {
  std::vector<std::size_t> out;
  for (const auto& m : certified_means()) {
    if (m.certified == GeomClass::both || m.certified == (convex ? GeomClass::geom_convex : GeomClass::geom_concave)) {
      out.push_back(m.index);
    }
  }
  return out;
}

std::vector<std::size_t> measure_backed_means() {
  std::vector<std::size_t> out;
  const auto cat = rf_catalog();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    if (cat[i].measure) out.push_back(i);
  }
  return out;
}

// Catalog index from the grid, or -1 for a random atomic measure on [0,1].
json draw_mean(TrialContext& ctx, std::vector<std::size_t> indices, bool with_atoms) {
  std::vector<long> grid(indices.begin(), indices.end());
  if (with_atoms) grid.push_back(-1);
  const long pick = ctx.pick(grid);
  if (pick >= 0) return {{"mean_index", pick}, {"mean", catalog_mean(static_cast<std::size_t>(pick)).name}};
  const int count = uniform_int(ctx.rng, 1, 3);
  json atoms = json::array();
  std::vector<double> w(static_cast<std::size_t>(count));
  double s = 0.0;
  for (auto& x : w) s += (x = uniform(ctx.rng, 0.1, 1.0));
  for (int i = 0; i < count; ++i) atoms.push_back({uniform(ctx.rng, 0.0, 1.0), w[static_cast<std::size_t>(i)] / s});
  return {{"atoms", atoms}, {"mean", "geodesic atoms"}};
}

RepresentingFunction mean_from(const json& j) {
  if (j.contains("mean_index")) return catalog_mean(j.at("mean_index").get<std::size_t>());
  std::vector<std::pair<double, double>> atoms;
  double mass = 0.0;
  for (const auto& a : j.at("atoms")) {
    atoms.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
    mass += atoms.back().second;
  }
  atoms.back().second += 1.0 - mass;  // absorb rounding so the mass is exactly 1
  return rf_from_measure(GeodesicMeasure::from_atoms(std::move(atoms)), "geodesic atoms");
}

json with_pair(TrialContext& ctx, json j) {
  j["A"] = mat(ctx.pd(ctx.dim));
  j["B"] = mat(ctx.pd(ctx.dim));
  return j;
}

struct MeanSpectra {
  RepresentingFunction h;
  std::vector<double> a, b, m;  // descending spectra of A, B and A sigma B
};

MeanSpectra mean_spectra(const json& j) {
  MeanSpectra s{mean_from(j), {}, {}, {}};
  const HermitianMatrix a = mat(j, "A"), b = mat(j, "B");
  s.a = spectrum(a);
  s.b = spectrum(b);
  s.m = spectrum(kubo_ando(s.h, a, b));
  return s;
}

double geo(double a, double b, double alpha) { return std::pow(a, 1.0 - alpha) * std::pow(b, alpha); }

// Two-sided relation of conjecture form: A_down sigma B_up <= A sigma B <= A_down sigma B_down in
// the log-supermajorization order.
double conjecture_margin(const json& j) {
  const RepresentingFunction h = mean_from(j);
  const HermitianMatrix a = mat(j, "A"), b = mat(j, "B");
  const std::vector<double> sa = spectrum(a), sb = spectrum(b);
  const std::size_t n = sa.size();
  std::vector<double> down_up(n), down_down(n);
  for (std::size_t i = 0; i < n; ++i) {
    down_up[i] = scalar_mean(h, sa[i], sb[n - 1 - i]);
    down_down[i] = scalar_mean(h, sa[i], sb[i]);
  }
  const HermitianMatrix m = kubo_ando(h, a, b);
  return std::min(log_supermajorizes(HermitianMatrix::diagonal(down_up), m, 0.0).worst_margin,
                  log_supermajorizes(m, HermitianMatrix::diagonal(down_down), 0.0).worst_margin);
}

}  // namespace

double conjecture_1_7_margin(const json& j) { return conjecture_margin(j); }
json draw_conjecture_1_7(TrialContext& ctx) { return with_pair(ctx, draw_mean(ctx, means_of_class(true), true)); }

void add_operator_mean_properties(std::vector<PropertyDef>& out) {
  out.push_back(
      {{"thm-3.1-i",
        "for geometrically convex h: G_k(top, A sigma B) >= G_k(top A) sigma G_k(bottom B) and "
        ">= G_k(bottom A) sigma G_k(top B), G_k the geometric mean of k eigenvalues",
        Expectation::holds},
       [](TrialContext& ctx) { return with_pair(ctx, draw_mean(ctx, means_of_class(true), false)); },
       [](const json& j) {
         const MeanSpectra s = mean_spectra(j);
         double worst = kInf;
         for (int k = 1; k <= static_cast<int>(s.m.size()); ++k) {
           const double lhs = top_root(s.m, k);
           worst = std::min(worst, rel_gap(lhs, scalar_mean(s.h, top_root(s.a, k), bottom_root(s.b, k))));
           worst = std::min(worst, rel_gap(lhs, scalar_mean(s.h, bottom_root(s.a, k), top_root(s.b, k))));
         }
         return CheckResult{worst};
       }});

  out.push_back(
      {{"thm-3.1-ii",
        "for geometrically concave h: G_k(bottom, A sigma B) <= G_k(bottom A) sigma G_k(top B) and "
        "<= G_k(top A) sigma G_k(bottom B)",
        Expectation::holds},
       [](TrialContext& ctx) { return with_pair(ctx, draw_mean(ctx, means_of_class(false), false)); },
       [](const json& j) {
         const MeanSpectra s = mean_spectra(j);
         double worst = kInf;
         for (int k = 1; k <= static_cast<int>(s.m.size()); ++k) {
           const double lhs = bottom_root(s.m, k);
           worst = std::min(worst, rel_gap(scalar_mean(s.h, bottom_root(s.a, k), top_root(s.b, k)), lhs));
           worst = std::min(worst, rel_gap(scalar_mean(s.h, top_root(s.a, k), bottom_root(s.b, k)), lhs));
         }
         return CheckResult{worst};
       }});

  out.push_back({{"cor-3.2",
                  "det^{1/n}(A sigma B) >= det^{1/n} A sigma det^{1/n} B for geometrically convex h, reversed "
                  "for geometrically concave h",
                  Expectation::holds},
                 [](TrialContext& ctx) {
                   std::vector<std::size_t> all;
                   for (const auto& m : certified_means()) all.push_back(m.index);
                   return with_pair(ctx, draw_mean(ctx, all, false));
                 },
                 [](const json& j) {
                   const RepresentingFunction h = mean_from(j);
                   const HermitianMatrix a = mat(j, "A"), b = mat(j, "B");
                   const double lhs = det_root(kubo_ando(h, a, b));
                   const double rhs = scalar_mean(h, det_root(a), det_root(b));
                   const GeomClass c = certify_geom_class(h).verdict;
                   double worst = kInf;
                   if (c == GeomClass::geom_convex || c == GeomClass::both) worst = std::min(worst, rel_gap(lhs, rhs));
                   if (c == GeomClass::geom_concave || c == GeomClass::both) worst = std::min(worst, rel_gap(rhs, lhs));
                   return CheckResult{worst};
                 }});

  out.push_back(
      {{"prop-3.5",
        "G_k(top A) #_a G_k(bottom B) <= G_k(top, A #_a B) <= G_k(top A) #_a G_k(top B) and "
        "G_k(bottom A) #_a G_k(top B) >= G_k(bottom, A #_a B) >= G_k(bottom A) #_a G_k(bottom B)",
        Expectation::holds},
       [](TrialContext& ctx) {
         const double alpha = knob_or(ctx, ctx.knobs.alpha, kAlphas);
         return with_pair(ctx, {{"alpha", alpha}});
       },
       [](const json& j) {
         const double alpha = j.at("alpha");
         const HermitianMatrix a = mat(j, "A"), b = mat(j, "B");
         const std::vector<double> sa = spectrum(a), sb = spectrum(b), sm = spectrum(weighted_geometric(a, b, alpha));
         double worst = kInf;
         for (int k = 1; k <= static_cast<int>(sm.size()); ++k) {
           const double top = top_root(sm, k), bottom = bottom_root(sm, k);
           worst = std::min(worst, rel_gap(top, geo(top_root(sa, k), bottom_root(sb, k), alpha)));
           worst = std::min(worst, rel_gap(geo(top_root(sa, k), top_root(sb, k), alpha), top));
           worst = std::min(worst, rel_gap(geo(bottom_root(sa, k), top_root(sb, k), alpha), bottom));
           worst = std::min(worst, rel_gap(bottom, geo(bottom_root(sa, k), bottom_root(sb, k), alpha)));
         }
         return CheckResult{worst};
       }});

  out.push_back({{"cor-3.6", "A #_a B is log-majorized by A_down #_a B_down", Expectation::holds},
                 [](TrialContext& ctx) {
                   const double alpha = knob_or(ctx, ctx.knobs.alpha, kAlphas);
                   return with_pair(ctx, {{"alpha", alpha}});
                 },
                 [](const json& j) {
                   const double alpha = j.at("alpha");
                   const HermitianMatrix a = mat(j, "A"), b = mat(j, "B");
                   const HermitianMatrix sorted = weighted_geometric(sorted_diagonal(a, Order::descending),
                                                                     sorted_diagonal(b, Order::descending), alpha);
                   return CheckResult{log_majorizes(weighted_geometric(a, b, alpha), sorted, 0.0).worst_margin};
                 }});

  out.push_back({{"prop-3.7",
                  "G_k(bottom, A sigma B) >= G_k(bottom A) sigma G_k(bottom B) for means averaged from #_a",
                  Expectation::holds},
                 [](TrialContext& ctx) { return with_pair(ctx, draw_mean(ctx, measure_backed_means(), true)); },
                 [](const json& j) {
                   const MeanSpectra s = mean_spectra(j);
                   double worst = kInf;
                   for (int k = 1; k <= static_cast<int>(s.m.size()); ++k) {
                     worst = std::min(worst, rel_gap(bottom_root(s.m, k),
                                                     scalar_mean(s.h, bottom_root(s.a, k), bottom_root(s.b, k))));
                   }
                   return CheckResult{worst};
                 }});

  out.push_back({{"conj-1.7-search",
                  "A_down sigma B_up <= A sigma B <= A_down sigma B_down in log-supermajorization, for "
                  "geometrically convex means (conjectured)",
                  Expectation::open},
                 draw_conjecture_1_7, [](const json& j) { return CheckResult{conjecture_margin(j)}; }});

  out.push_back({{"rem-3.3-false",
                  "lambda_1(A sigma B) >= lambda_1(A) sigma lambda_1(B) for the arithmetic mean (false in general)",
                  Expectation::fails},
                 [](TrialContext& ctx) { return with_pair(ctx, json::object()); },
                 [](const json& j) {
                   const HermitianMatrix a = mat(j, "A"), b = mat(j, "B");
                   const double lhs = spectrum((a + b) * 0.5).front();
                   const double rhs = (spectrum(a).front() + spectrum(b).front()) / 2.0;
                   return CheckResult{rel_gap(lhs, rhs)};
                 }});
}

}  // namespace matmeans::detail

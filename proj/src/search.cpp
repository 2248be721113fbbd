#include "matmeans/search.hpp"

#include <chrono>
#include <cmath>

#include "matmeans/errors.hpp"
#include "matmeans/multi_geodesic.hpp"
#include "matmeans/spec_parse.hpp"
#include "properties_internal.hpp"

namespace matmeans {

namespace detail {

constexpr double kRandomShare = 0.7;

namespace {

constexpr int kLmSamples = 24;

// G_m(A) <= L_m(A): loewner margin of L_m - G_m, widened by three estimated standard errors of
// the Monte Carlo estimate of L_m (the cyclic-shift groups are i.i.d.).
double gm_le_lm_margin(const json& j) {
  const std::vector<HermitianMatrix> as = mats(j, "As");
  const std::size_t m = as.size();
  const auto points = SimplexMeasure::uniform(j.at("S").get<int>(), j.at("seed").get<std::uint64_t>()).discretize(m);
  const std::size_t groups = points.size() / m;
  std::vector<HermitianMatrix> group_means;
  HermitianMatrix l = HermitianMatrix::zero(as.front().dim());
  for (std::size_t g = 0; g < groups; ++g) {
    HermitianMatrix s = HermitianMatrix::zero(as.front().dim());
    for (std::size_t i = 0; i < m; ++i) s += karcher_mean(points[g * m + i].first, as) * (1.0 / static_cast<double>(m));
    group_means.push_back(s);
    l += s * (1.0 / static_cast<double>(groups));
  }
  double var = 0.0;
  for (const auto& s : group_means) var += std::pow((s - l).frobenius_norm(), 2);
  const double se = groups > 1 ? std::sqrt(var / static_cast<double>(groups * (groups - 1))) : kInf;
  const HermitianMatrix g = karcher_mean(as);
  return loewner_margin(l, g) + 3.0 * se / (1.0 + l.frobenius_norm() + g.frobenius_norm());
}

std::vector<std::string> concave_functions() {
  std::vector<std::string> out;
  for (const auto& f : catalog()) {
    if (f.class_claim == ClassClaim::doubly_concave && f.name != "pow:0") out.push_back(f.name);
  }
  return out;
}

double sigma_p_margin(const json& j) {
  const IntervalFunction f = function_by_name(j.at("f"));
  const RepresentingFunction h = rf_power(j.at("p").get<double>());
  const AntiNormSpec an = parse_antinorm(j.at("antinorm"));
  const HermitianMatrix a = mat(j, "A"), b = mat(j, "B");
  const double lhs = evaluate_antinorm(an, apply_function(f, kubo_ando(h, a, b)));
  const double rhs =
      scalar_mean(h, evaluate_antinorm(an, apply_function(f, a)), evaluate_antinorm(an, apply_function(f, b)));
  return rel_gap(lhs, rhs);
}

HermitianMatrix draw_operand(TrialContext& ctx, bool commuting, const Interval& domain = Interval::positive()) {
  if (!commuting) return ctx.in_domain(ctx.dim, domain);
  const HermitianMatrix x = ctx.in_domain(ctx.dim, domain);
  return HermitianMatrix::diagonal(spectrum(x));
}

// Catalog position of a mean given as "geo:alpha=0.5" or "mean:geo:alpha=0.5".
std::size_t catalog_index(std::string name) {
  if (name.rfind("mean:", 0) == 0) name = name.substr(5);
  const auto cat = rf_catalog();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    if (cat[i].name == name) return i;
  }
  throw ConfigError("mean '" + name + "' is not in the representing-function catalog");
}

struct Hypothesis {
  std::string id;
  std::function<json(TrialContext&, bool commuting)> sample;
  std::function<double(const json&)> margin;
};

const std::vector<Hypothesis>& hypotheses() {
  static const std::vector<Hypothesis> hs{
      {"conj-1.7",
       [](TrialContext& ctx, bool commuting) {
         json j = draw_conjecture_1_7(ctx);
         if (ctx.knobs.mean) {
           j.erase("atoms");
           j["mean_index"] = catalog_index(*ctx.knobs.mean);
           j["mean"] = catalog_mean(j["mean_index"].get<std::size_t>()).name;
         }
         if (commuting) {
           j["A"] = mat(HermitianMatrix::diagonal(spectrum(mat(j, "A"))));
           j["B"] = mat(HermitianMatrix::diagonal(spectrum(mat(j, "B"))));
         }
         return j;
       },
       conjecture_1_7_margin},
      {"gm-le-lm",
       [](TrialContext& ctx, bool commuting) {
         const std::size_t m = static_cast<std::size_t>(ctx.pick(std::vector<int>{3, 4}));
         std::vector<HermitianMatrix> as;
         for (std::size_t i = 0; i < m; ++i) as.push_back(draw_operand(ctx, commuting));
         return json{{"As", mats(as)}, {"S", kLmSamples}, {"seed", ctx.rng() >> 11}};
       },
       gm_le_lm_margin},
      {"thm-4.7-sigma-p",
       [](TrialContext& ctx, bool commuting) {
         static const std::vector<std::string> fs = concave_functions();
         const std::string fname = knob_or(ctx, ctx.knobs.function, fs);
         const Interval domain = function_by_name(fname).domain;
         const double p = ctx.knobs.p ? *ctx.knobs.p : uniform(ctx.rng, 0.02, 1.0);
         return json{{"f", fname},
                     {"p", p},
                     {"antinorm", knob_or(ctx, ctx.knobs.antinorm, derived_antinorm_grid(ctx.dim))},
                     {"A", mat(draw_operand(ctx, commuting, domain))},
                     {"B", mat(draw_operand(ctx, commuting, domain))}};
       },
       sigma_p_margin},
  };
  return hs;
}

const Hypothesis& hypothesis(const std::string& id) {
  for (const auto& h : hypotheses()) {
    if (h.id == id) return h;
  }
  throw ConfigError("unknown hypothesis '" + id + "' (conj-1.7, gm-le-lm, thm-4.7-sigma-p)");
}

// Moves every stored matrix by a Hermitian step of relative size `scale`, keeping it positive
// definite (and diagonal when it was). Returns false when a step leaves the cone.
bool perturb(json& j, Rng& rng, double scale) {
  auto move = [&](json& m) {
    const HermitianMatrix a = mat(json{{"m", m}}, "m");
    const int n = a.dim();
    const bool diagonal = a.matrix().isDiagonal(0.0);
    HermitianMatrix step = sample_hermitian(rng, n);
    if (diagonal) step = HermitianMatrix::diagonal(spectrum(step));
    const HermitianMatrix b = a + step * (scale * a.frobenius_norm() / (1.0 + step.frobenius_norm()));
    if (!(spectrum(b).back() > 0.0)) return false;
    m = mat(b);
    return true;
  };
  for (const char* key : {"A", "B"}) {
    if (j.contains(key) && !move(j[key])) return false;
  }
  if (j.contains("As")) {
    for (auto& m : j["As"]) {
      if (!move(m)) return false;
    }
  }
  return true;
}

}  // namespace

}  // namespace detail

const std::vector<std::string>& search_hypotheses() {
  static const std::vector<std::string> ids{"conj-1.7", "gm-le-lm", "thm-4.7-sigma-p"};
  return ids;
}

double replay_search_witness(const std::string& id, const nlohmann::json& witness) {
  return detail::hypothesis(id).margin(witness);
}

SearchResult search_counterexample(const SearchConfig& cfg) {
  const detail::Hypothesis& h = detail::hypothesis(cfg.hypothesis);
  if (cfg.budget < 0) throw ConfigError("budget must be non-negative");
  if (cfg.dim < 0 || cfg.dim > 8) throw ConfigError("dimension must lie in 1..8 (0 cycles 2,3,4)");
  const auto start = std::chrono::steady_clock::now();

  SearchResult r;
  r.hypothesis = cfg.hypothesis;
  PropertyCase pc;
  pc.id = cfg.hypothesis;
  pc.sampler.seed = cfg.seed;
  pc.sampler.dim = cfg.dim;
  pc.knobs = cfg.knobs;
  pc.knobs.tol = cfg.tol;

  std::optional<detail::json> best;
  auto consider = [&](const detail::json& inputs) {
    ++r.evaluated;
    try {
      const double m = h.margin(inputs);
      if (std::isnan(m)) {
        ++r.errors;
        return false;
      }
      if (m < r.best_margin) {
        r.best_margin = m;
        best = inputs;
        return true;
      }
    } catch (const std::exception&) {
      ++r.errors;
    }
    return false;
  };

  const long random_budget = static_cast<long>(std::ceil(detail::kRandomShare * static_cast<double>(cfg.budget)));
  constexpr int kDims[] = {2, 3, 4};
  for (long t = 0; t < random_budget && r.evaluated < cfg.budget; ++t) {
    detail::TrialContext ctx(pc, static_cast<int>(t));
    if (cfg.dim == 0) ctx.dim = kDims[t % 3];
    detail::json inputs;
    try {
      inputs = h.sample(ctx, cfg.commuting);
    } catch (const std::exception&) {
      ++r.evaluated;
      ++r.errors;
      continue;
    }
    consider(inputs);
  }

  Rng rng(mix_seed(cfg.seed, 0xC0FFEE));
  double scale = 0.1;
  int stale = 0;
  while (r.evaluated < cfg.budget && best) {
    detail::json candidate = *best;
    if (!detail::perturb(candidate, rng, scale)) {
      ++r.evaluated;
      continue;
    }
    if (consider(candidate)) {
      stale = 0;
    } else if (++stale >= 20) {
      scale = std::max(scale / 2.0, 1e-6);
      stale = 0;
    }
  }

  if (best && r.best_margin < -10.0 * cfg.tol) {
    const double again = h.margin(*best);
    if (std::abs(again - r.best_margin) <= 1e-12) r.witness = best;
  }
  r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

nlohmann::json to_json(const SearchResult& r) {
  return {{"hypothesis", r.hypothesis},
          {"evaluated", r.evaluated},
          {"errors", r.errors},
          {"best_margin", std::isfinite(r.best_margin) ? nlohmann::json(r.best_margin) : nlohmann::json()},
          {"witness", r.witness ? *r.witness : nlohmann::json()},
          {"found", r.witness.has_value()}};
}

}  // namespace matmeans

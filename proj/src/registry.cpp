#include <chrono>
#include <map>

#include "matmeans/errors.hpp"
#include "properties_internal.hpp"

namespace matmeans {

namespace detail {

namespace {

const std::vector<PropertyDef>& all_defs() {
  static const std::vector<PropertyDef> defs = [] {
    std::vector<PropertyDef> out;
    add_power_mean_properties(out);
    add_operator_mean_properties(out);
    add_anti_norm_properties(out);
    add_multi_geodesic_properties(out);
    add_miscellany_properties(out);
    return out;
  }();
  return defs;
}

}  // namespace

const PropertyDef& property_def(const std::string& id) {
  for (const auto& d : all_defs()) {
    if (d.info.id == id) return d;
  }
  throw ConfigError("unknown property id '" + id + "'");
}

}  // namespace detail

std::string to_string(Expectation e) {
  switch (e) {
    case Expectation::holds: return "holds";
    case Expectation::fails: return "fails";
    case Expectation::open: return "open";
  }
  return "?";
}

const std::vector<PropertyInfo>& property_registry() {
  static const std::vector<PropertyInfo> infos = [] {
    std::vector<PropertyInfo> out;
    for (const auto& d : detail::all_defs()) out.push_back(d.info);
    return out;
  }();
  return infos;
}

const PropertyInfo& property_info(const std::string& id) { return detail::property_def(id).info; }

namespace {

void validate_case(const PropertyCase& c) {
  if (c.trials < 0) throw ConfigError("trial count must be non-negative");
  if (c.sampler.dim < 0 || c.sampler.dim > 8) throw ConfigError("dimension must lie in 1..8 (0 cycles 2,3,4,6)");
  if (!(c.sampler.condition_target >= 1.0)) throw ConfigError("condition target must be >= 1");
  if (!(c.knobs.tol >= 0.0)) throw ConfigError("tolerance must be non-negative");
  if (c.knobs.p && !std::isfinite(*c.knobs.p)) throw ConfigError("p must be finite");
  if (c.knobs.alpha && !(*c.knobs.alpha > 0.0 && *c.knobs.alpha <= 1.0)) throw ConfigError("alpha must lie in (0,1]");
  if (c.knobs.k && *c.knobs.k < 1) throw ConfigError("k must be positive");
}

}  // namespace

PropertyVerdict run_property(const PropertyCase& c) {
  const detail::PropertyDef& def = detail::property_def(c.id);
  validate_case(c);
  const auto start = std::chrono::steady_clock::now();

  PropertyVerdict v;
  v.id = c.id;
  v.seed = c.sampler.seed;
  long attempts = 0;
  int worst_failing_trial = -1;
  for (int t = 0; t < c.trials; ++t) {
    detail::TrialContext ctx(c, t);
    detail::json inputs;
    double margin = kInf;
    try {
      inputs = def.sample(ctx);
      attempts += ctx.attempts;
      const detail::CheckResult r = def.check(inputs);
      if (!r.applicable) {
        ++v.skipped;
        continue;
      }
      margin = r.margin;
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      if (inputs.is_null()) inputs = detail::json::object();
      inputs["error"] = e.what();
      margin = -1.0;
    }
    ++v.trials;
    if (std::isnan(margin)) margin = -1.0;
    const bool failed = margin < -c.knobs.tol;
    if (failed) ++v.failures;
    if (margin < v.worst_margin) {
      v.worst_margin = margin;
      if (failed || c.knobs.keep_worst) {
        worst_failing_trial = t;
        v.witness = inputs;
      }
    }
  }
  if (v.witness) (*v.witness)["trial"] = worst_failing_trial;
  if (attempts > c.trials) v.acceptance_rate = static_cast<double>(c.trials) / static_cast<double>(attempts);
  v.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return v;
}

double replay_witness(const std::string& id, const nlohmann::json& witness, const PropertyKnobs&) {
  const detail::CheckResult r = detail::property_def(id).check(witness);
  if (!r.applicable) throw ConfigError("witness does not meet the precondition of " + id);
  return r.margin;
}

bool meets_expectation(const PropertyVerdict& v) {
  switch (property_info(v.id).expectation) {
    case Expectation::holds: return v.failures == 0;
    case Expectation::fails: return v.failures > 0;
    case Expectation::open: return true;
  }
  return false;
}

nlohmann::json to_json(const PropertyVerdict& v) {
  nlohmann::json j{{"id", v.id},
                   {"expectation", to_string(property_info(v.id).expectation)},
                   {"trials", v.trials},
                   {"failures", v.failures},
                   {"skipped", v.skipped},
                   {"worst_margin", std::isfinite(v.worst_margin) ? nlohmann::json(v.worst_margin) : nlohmann::json()},
                   {"seed", v.seed},
                   {"witness", v.witness ? *v.witness : nlohmann::json()}};
  if (v.acceptance_rate) j["acceptance_rate"] = *v.acceptance_rate;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

}  // namespace matmeans

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "matmeans/sampling.hpp"

namespace matmeans {

// Optional overrides. Unset knobs make a property cycle through its default parameter grid.
struct PropertyKnobs {
  std::optional<std::string> function;  // catalog name, e.g. "pow:0.5"
  std::optional<std::string> mean;      // "mean:..." spec
  std::optional<std::string> antinorm;  // "anorm:..." spec
  std::optional<std::string> norm;      // "norm:..." spec
  std::optional<std::string> map;       // "pinch-diag", "two-block" or "schur"
  std::optional<double> p;
  std::optional<double> alpha;
  std::optional<int> k;
  std::optional<double> eps;
  double tol = 1e-8;
  bool keep_worst = false;  // store the worst trial as witness even when nothing failed
};

struct PropertyCase {
  std::string id;
  // dim = 0 cycles the trial dimension through {2, 3, 4, 6}. condition_target caps the
  // condition number of sampled operands; invertible = false allows singular draws where the
  // statement permits them.
  PsdSamplerConfig sampler{0, 100.0, true, 0, 0};
  int trials = 500;
  PropertyKnobs knobs;
};

enum class Expectation { holds, fails, open };
std::string to_string(Expectation e);

struct PropertyInfo {
  std::string id;
  std::string statement;
  Expectation expectation = Expectation::holds;
};

struct PropertyVerdict {
  std::string id;
  int trials = 0;
  int failures = 0;
  int skipped = 0;  // draws rejected by a precondition filter
  double worst_margin = kInf;
  std::optional<nlohmann::json> witness;  // inputs of the worst failing trial (worst trial with keep_worst)
  std::uint64_t seed = 0;
  double elapsed = 0.0;  // seconds
  std::optional<double> acceptance_rate;
  std::string note;

  bool passed(double tol) const { return worst_margin >= -tol; }
};

const std::vector<PropertyInfo>& property_registry();
const PropertyInfo& property_info(const std::string& id);  // ConfigError on unknown ids

// Runs sampler + checker for case.trials trials. Trial t draws from mix_seed(case.sampler.seed, t).
// Numerical exceptions count as failures with margin -1 and the message in the witness.
PropertyVerdict run_property(const PropertyCase& c);

// Re-evaluates the checker on stored inputs and returns the margin.
double replay_witness(const std::string& id, const nlohmann::json& witness, const PropertyKnobs& knobs = {});

// Does the verdict match the registry expectation (zero failures for theorems, at least one
// for negative controls, anything for open items)?
bool meets_expectation(const PropertyVerdict& v);

nlohmann::json to_json(const PropertyVerdict& v);

}  // namespace matmeans

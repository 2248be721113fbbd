#pragma once

// Shared plumbing for the property checkers. Each property is a sampler that draws inputs as
// JSON (exactly round-tripping matrices and parameters) and a checker that computes the margin
// from that JSON alone, so stored witnesses replay bit-for-bit.

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "matmeans/anti_norms.hpp"
#include "matmeans/hermitian.hpp"
#include "matmeans/operator_means.hpp"
#include "matmeans/positive_maps.hpp"
#include "matmeans/properties.hpp"
#include "matmeans/sampling.hpp"
#include "matmeans/scalar_functions.hpp"

namespace matmeans::detail {

using json = nlohmann::json;

struct CheckResult {
  double margin = kInf;
  bool applicable = true;  // false when the draw misses a precondition
};

class TrialContext {
 public:
  TrialContext(const PropertyCase& pc, int trial);

  const PropertyCase& pc;
  const PropertyKnobs& knobs;
  int trial;
  int dim;
  Rng rng;
  int attempts = 1;  // draws used by rejection sampling

  // Mixed-radix walk through a parameter grid: successive calls enumerate every combination
  // as the trial index grows.
  std::size_t choice(std::size_t n);
  template <class T>
  const T& pick(const std::vector<T>& options) {
    return options[choice(options.size())];
  }

  double condition() const { return pc.sampler.condition_target; }
  // Positive definite with condition number log-uniform in [1, condition()].
  HermitianMatrix pd(int n);
  // pd(n), or with probability 1/5 a rank-deficient PSD matrix when singular draws are allowed.
  HermitianMatrix psd(int n);
  // Spectrum placed inside the domain of f (and away from open endpoints).
  HermitianMatrix in_domain(int n, const Interval& domain);

 private:
  std::size_t radix_ = 1;
};

struct PropertyDef {
  PropertyInfo info;
  std::function<json(TrialContext&)> sample;
  std::function<CheckResult(const json&)> check;
};

// (lhs - rhs) / (1 + |lhs| + |rhs|): the margin of lhs >= rhs.
double rel_gap(double lhs, double rhs);

json mat(const HermitianMatrix& a);
HermitianMatrix mat(const json& j, const char* key);
std::vector<HermitianMatrix> mats(const json& j, const char* key);
json mats(const std::vector<HermitianMatrix>& as);

// Parameter resolution: knob when set, otherwise the next grid value.
std::string knob_or(TrialContext& ctx, const std::optional<std::string>& knob, const std::vector<std::string>& grid);
double knob_or(TrialContext& ctx, const std::optional<double>& knob, const std::vector<double>& grid);

// Map names used by the samplers: "pinch-diag", "two-block", "schur" (unit-diagonal correlation
// matrix, stored with the inputs), "schur-sub" (diagonal in [1/4, 1]).
struct MapDraw {
  std::string name;
  int in_dim = 0;
  json extra;  // the Schur multiplier, when any
};
MapDraw draw_map(TrialContext& ctx, const std::string& name, int n);
PositiveMap map_from(const json& j);

// f(A) with the domain clamp of the catalog function.
HermitianMatrix apply_function(const IntervalFunction& f, const HermitianMatrix& a);

// Ordered eigenvalue helpers.
std::vector<double> spectrum(const HermitianMatrix& a);
double top_root(const std::vector<double>& mu, int k);     // (prod_{j<=k} mu_j)^{1/k}
double bottom_root(const std::vector<double>& mu, int k);  // (prod of the k smallest)^{1/k}

// Anti-norm grids for dimension n.
std::vector<std::string> derived_antinorm_grid(int n);  // derived Ky Fan and negative Schatten
std::vector<std::string> antinorm_grid(int n);          // the whole catalog
std::vector<std::string> norm_grid(int n);

// Representing functions with a certified geometric class.
struct CatalogMean {
  std::size_t index;
  RepresentingFunction h;
  GeomClass certified;
};
const std::vector<CatalogMean>& certified_means();
RepresentingFunction catalog_mean(std::size_t index);

// Shared with the counterexample search.
double conjecture_1_7_margin(const json& j);
json draw_conjecture_1_7(TrialContext& ctx);

void add_power_mean_properties(std::vector<PropertyDef>& out);
void add_operator_mean_properties(std::vector<PropertyDef>& out);
void add_anti_norm_properties(std::vector<PropertyDef>& out);
void add_multi_geodesic_properties(std::vector<PropertyDef>& out);
void add_miscellany_properties(std::vector<PropertyDef>& out);

const PropertyDef& property_def(const std::string& id);

}  // namespace matmeans::detail

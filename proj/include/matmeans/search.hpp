#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "matmeans/properties.hpp"

namespace matmeans {

// Hypotheses without a proof: "conj-1.7" (both log-supermajorizations A_down sigma B_up <=
// A sigma B <= A_down sigma B_down for geometrically convex means), "gm-le-lm" (G_m(A) <= L_m(A)
// in the Loewner order, L_m the mean over the uniform simplex measure) and "thm-4.7-sigma-p"
// (|f(A b_p B)|_! >= |f(A)|_! b_p |f(B)|_! for the Kubo-Ando means b_p and derived anti-norms).
const std::vector<std::string>& search_hypotheses();

struct SearchConfig {
  std::string hypothesis;
  long budget = 10000;  // candidate evaluations
  std::uint64_t seed = 0;
  double tol = 1e-8;
  int dim = 0;              // 0 cycles {2, 3, 4}
  bool commuting = false;   // draw diagonal (commuting) operands only
  PropertyKnobs knobs;      // knobs.mean restricts conj-1.7 to one catalog mean
};

struct SearchResult {
  std::string hypothesis;
  long evaluated = 0;
  long errors = 0;  // candidates whose evaluation threw
  double best_margin = kInf;
  std::optional<nlohmann::json> witness;  // set only for verified witnesses
  double elapsed = 0.0;
};

// Random sampling for 70% of the budget, then coordinate perturbation of the best candidate.
// A witness is reported only when its margin is below -10 tol and re-evaluating it reproduces
// the margin within 1e-12. A missing witness proves nothing.
SearchResult search_counterexample(const SearchConfig& cfg);

double replay_search_witness(const std::string& hypothesis, const nlohmann::json& witness);

nlohmann::json to_json(const SearchResult& r);

}  // namespace matmeans

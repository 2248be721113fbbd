#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matmeans/hermitian.hpp"

namespace matmeans {

enum class NormKind { kyfan, schatten, operator_norm, trace };

struct NormSpec {
  NormKind kind = NormKind::trace;
  int k = 1;       // kyfan
  double p = 1.0;  // schatten, p >= 1

  static NormSpec kyfan(int k);
  static NormSpec schatten(double p);
  static NormSpec operator_norm();
  static NormSpec trace();

  std::string str() const;  // "norm:kyfan:k=2", ...
};

// Descent for the dual program inf { <x, y> : y >= 0, phi(y) >= 1 }. Stops early once the step
// underflows.
struct DualOptimizerConfig {
  int restarts = 8;
  int steps = 20000;
  double step = 1e-2;  // initial step; grows by 1.5 on descent, halves otherwise
  std::uint64_t seed = 0;
  bool use_closed_form = true;  // false forces the numeric program even when a closed form exists
};

enum class AntiNormKind { kyfan_anti, schatten, neg_schatten, schatten_kyfan, delta, minkowski, derived, dual_of };

struct AntiNormSpec {
  AntiNormKind kind = AntiNormKind::minkowski;
  int k = 1;
  double p = 1.0;
  NormSpec norm;                               // derived
  std::shared_ptr<const AntiNormSpec> base;    // dual_of
  DualOptimizerConfig optimizer;               // dual_of

  static AntiNormSpec kyfan_anti(int k);            // sum of the k smallest eigenvalues
  static AntiNormSpec schatten(double p);           // (sum mu^p)^{1/p}, p in (0,1]
  static AntiNormSpec neg_schatten(double p);       // (sum mu^{-p})^{-1/p}, p > 0
  static AntiNormSpec schatten_kyfan(double p, int k);  // neg_schatten over the k smallest
  static AntiNormSpec delta(int k);                 // geometric mean of the k smallest
  static AntiNormSpec minkowski();                  // det^{1/n}
  static AntiNormSpec derived(NormSpec norm, double p);  // |A^{-p}|^{-1/p}
  static AntiNormSpec dual_of(AntiNormSpec base, DualOptimizerConfig opt = {});

  std::string str() const;  // "anorm:kyfan:k=2", ...
};

// Values on a vector of eigenvalues (any order; negatives are treated as 0). Specs that vanish on
// singular matrices return exactly 0 when the smallest entry is 0.
double evaluate_norm(const NormSpec& spec, std::span<const double> spectrum);
double evaluate_antinorm(const AntiNormSpec& spec, std::span<const double> spectrum);

// Matrix versions. Eigenvalues below 64 n eps lambda_max count as 0.
double evaluate_norm(const NormSpec& spec, const HermitianMatrix& a);
double evaluate_antinorm(const AntiNormSpec& spec, const HermitianMatrix& a);

struct DualResult {
  double value = 0.0;
  double gap = 0.0;  // relative spread of the restart optima; 0 for closed forms
  bool closed_form = false;
};

// inf { Tr AB : B >= 0, |B|_! = 1 }, reduced to the vector program on the spectrum of A.
// Throws OptimizerFailure when the restarts disagree by more than 1e-4 relative.
DualResult dual_antinorm(const AntiNormSpec& spec, std::span<const double> spectrum,
                         const DualOptimizerConfig& opt = {});
DualResult dual_antinorm(const AntiNormSpec& spec, const HermitianMatrix& a, const DualOptimizerConfig& opt = {});

// Is the anti-norm zero only at 0? Decided from the spec.
bool is_regular(const AntiNormSpec& spec, int n);

struct ProjectionForm {
  double value = 0.0;             // min { Tr ZP : P rank-k projection }
  CMatrix projection;             // spans the k bottom eigenvectors
  double min_trial_excess = kInf; // min over random projections of Tr ZP - value
  int trials = 0;
};
ProjectionForm kyfan_anti_projection_form(const HermitianMatrix& z, int k, int trials = 0, std::uint64_t seed = 0);

struct DecompositionForm {
  double value = 0.0;  // k lambda_n(A) - Tr B
  HermitianMatrix a;   // Z with its spectrum raised to the k-th smallest eigenvalue
  HermitianMatrix b;   // A - Z
};
DecompositionForm kyfan_anti_decomposition_form(const HermitianMatrix& z, int k);

}  // namespace matmeans

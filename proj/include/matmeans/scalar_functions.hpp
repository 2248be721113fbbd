#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matmeans/hermitian.hpp"

namespace matmeans {

enum class Monotone { increasing, decreasing, none };
enum class ClassClaim { doubly_concave, doubly_convex, unclassified };

struct IntervalFunction {
  std::string name;
  Interval domain;
  ScalarFunction eval;
  Monotone monotone = Monotone::none;
  ClassClaim class_claim = ClassClaim::unclassified;

  double operator()(double t) const { return eval(t); }
};

// Outcome of a grid certification. For doubly concave checks `midpoint_ok` refers to
// ordinary concavity and `geometric_ok` to f(sqrt(xy)) >= sqrt(f(x) f(y)); for convex checks
// the inequalities are reversed. worst_violation is the smallest normalized slack seen
// (negative means violated), attained at (worst_x, worst_y).
struct ClassReport {
  bool midpoint_ok = true;
  bool geometric_ok = true;
  double worst_violation = kInf;
  double worst_x = 0.0;
  double worst_y = 0.0;

  bool ok() const { return midpoint_ok && geometric_ok; }
};

inline constexpr double kCertifyTol = 1e-9;
inline constexpr int kDefaultGrid = 64;

std::vector<IntervalFunction> catalog();

// Look up by name: "pow:0.5", "ratio", "ratio_sqrt", "one_minus_exp", "log", "log1p",
// "shifted_pow:p", "root_diff:q", "parabola", "neg_tlogt", "circle", "sin", "cos",
// "sincos:a:b", "tent:a", "expm1", "exp_neg", "inv", "posy:c@a,c@a,...".
// Throws ConfigError for unknown names or parameters outside the function's family.
IntervalFunction function_by_name(const std::string& name);

// Points used by the certifiers: log-spaced when the domain is positive, linear when it
// contains 0. Unbounded ends are cut at 1e3 (or 1e3 * lo when lo >= 1); an open 0 end at 1e-3.
// `window` narrows the range further. Throws DomainViolation if no interior is left.
std::vector<double> certification_grid(const Interval& domain, int grid_size,
                                       const std::optional<Interval>& window = std::nullopt);

// Slack is normalized by 1 + |f(x)| + |f(y)|; a pair fails when slack < -tol.
ClassReport certify_doubly_concave(const IntervalFunction& f, int grid_size = kDefaultGrid,
                                   double tol = kCertifyTol,
                                   const std::optional<Interval>& window = std::nullopt);
ClassReport certify_doubly_convex(const IntervalFunction& f, int grid_size = kDefaultGrid,
                                  double tol = kCertifyTol,
                                  const std::optional<Interval>& window = std::nullopt);
// Ordinary concavity/convexity only (geometric_ok is left true).
ClassReport certify_concave(const IntervalFunction& f, int grid_size = kDefaultGrid, double tol = kCertifyTol,
                            const std::optional<Interval>& window = std::nullopt);
ClassReport certify_convex(const IntervalFunction& f, int grid_size = kDefaultGrid, double tol = kCertifyTol,
                           const std::optional<Interval>& window = std::nullopt);

// t -> f(t^{1/p})^p on {t^p : t in domain}; concave when f is doubly concave. p in (0,1].
IntervalFunction concave_power_transform(const IntervalFunction& f, double p);
// t -> g(t^{1/q})^q; convex for the convex g used with power means. q >= 1.
IntervalFunction convex_power_transform(const IntervalFunction& g, double q);

// f^a g^{1-a} and min(f, g) on the common domain.
IntervalFunction geometric_combination(const IntervalFunction& f, const IntervalFunction& g, double a);
IntervalFunction pointwise_min(const IntervalFunction& f, const IntervalFunction& g);

// Continuous piecewise-linear interpolant through (xs[i], ys[i]); xs strictly increasing.
IntervalFunction piecewise_linear(std::vector<double> xs, std::vector<double> ys);

std::string to_string(ClassClaim c);

}  // namespace matmeans

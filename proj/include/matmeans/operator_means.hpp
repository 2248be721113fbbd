#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matmeans/hermitian.hpp"

namespace matmeans {

enum class GeomClass { geom_convex, geom_concave, both, unknown };
std::string to_string(GeomClass c);

inline constexpr int kDefaultQuadratureNodes = 33;

// Nodes and weights of the Q-point Gauss-Legendre rule mapped to [0,1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(int q);

// Probability measure on [0,1]: point masses plus an optional density.
struct GeodesicMeasure {
  std::vector<std::pair<double, double>> atoms;  // (alpha, weight)
  std::function<double(double)> density;         // may be empty
  int quadrature_nodes = kDefaultQuadratureNodes;

  static GeodesicMeasure delta(double alpha);
  static GeodesicMeasure uniform();
  static GeodesicMeasure from_atoms(std::vector<std::pair<double, double>> atoms);

  double total_mass() const;
  // Throws ConfigError unless alphas lie in [0,1], weights are positive and the mass is 1.
  void validate() const;
  // Atoms followed by the weighted quadrature nodes of the density part.
  std::vector<std::pair<double, double>> discretize() const;
  // Image under alpha -> 1 - alpha.
  GeodesicMeasure reflected() const;
};

// Representing function h of a Kubo-Ando mean, h(1) = 1.
struct RepresentingFunction {
  std::string name;
  std::function<double(double)> eval;            // h on [0, inf)
  std::function<Complex(Complex)> log_eval;      // z -> h(e^z), analytic near the real axis; may be empty
  GeomClass geom_class = GeomClass::unknown;     // claimed class; certify_geom_class checks it
  std::optional<GeodesicMeasure> measure;        // set when the mean is an average of #_alpha
  std::string label;                             // e.g. "logarithmic"

  double operator()(double t) const { return eval(t); }
};

RepresentingFunction rf_arithmetic();
RepresentingFunction rf_harmonic();
RepresentingFunction rf_weighted_geometric(double alpha);  // t^alpha
RepresentingFunction rf_geometric();                       // t^{1/2}
RepresentingFunction rf_heinz(double alpha);               // (t^a + t^{1-a})/2
RepresentingFunction rf_power(double p);                   // ((t^p + 1)/2)^{1/p}, p in [-1,1]
RepresentingFunction rf_falpha(double alpha);              // a in [-1,2]; a = 1 is the logarithmic mean
RepresentingFunction rf_logarithmic();
// Mean given directly by a measure; h(t) = int t^alpha dnu(alpha).
RepresentingFunction rf_from_measure(const GeodesicMeasure& nu, std::string name);

std::vector<RepresentingFunction> rf_catalog();

struct RfTransforms {
  RepresentingFunction transpose;  // t h(1/t)
  RepresentingFunction adjoint;    // 1 / h(1/t)
  RepresentingFunction dual;       // t / h(t)
};
// At t = 0 the transforms are evaluated at t = 1e-300 (their limits from the right).
RfTransforms rf_transforms(const RepresentingFunction& h);

// h(1) = 1, h >= 0 and non-decreasing on a log grid. Returns an empty string when the screen
// passes, otherwise a reason.
std::string screen_representing_function(const RepresentingFunction& h);

struct GeomClassReport {
  bool convex_ok = true;   // h(sqrt(xy)) <= sqrt(h(x) h(y)) on all grid pairs
  bool concave_ok = true;  // reverse inequality
  double worst_convex = kInf;
  double worst_concave = kInf;
  GeomClass verdict = GeomClass::unknown;
};
GeomClassReport certify_geom_class(const RepresentingFunction& h, int grid_size = 64, double tol = 1e-9,
                                   double lo = 1e-4, double hi = 1e4);

enum class DerivativeMethod { finite_difference, contour };

struct AbsMonotonicityOptions {
  DerivativeMethod method = DerivativeMethod::finite_difference;
  int max_order = 8;
  double t_lo = -3.0;
  double t_hi = 3.0;
  double step = 0.25;
  double contour_radius = 2.5;
  int contour_points = 256;
};

// Checks that the derivatives of g(t) = h(e^t) are non-negative up to max_order.
// finite_difference: forward differences at grid points, tolerance 1e-6 max|g| (a screen,
// reliable up to order 8). contour: Cauchy integrals on circles around the grid points with a
// round-off tolerance 64 eps n! r^-n max|g| per order; needs h.log_eval.
struct AbsMonotonicityReport {
  bool passed = true;
  std::vector<double> worst_by_order;  // entry n-1: smallest (normalized) value at order n
  int first_failing_order = 0;         // 0 if none
  double failing_point = 0.0;
  double failing_value = 0.0;
};
AbsMonotonicityReport check_absolute_monotonicity(const RepresentingFunction& h,
                                                  const AbsMonotonicityOptions& opts = {});

// n-th derivative of t -> h(e^t) at t by the trapezoid rule on a circle of the given radius.
double contour_derivative(const RepresentingFunction& h, double t, int order, double radius = 2.5, int points = 256);

// a sigma b = a h(b/a), with 0 sigma b = b * lim_{t->0} t h(1/t).
double scalar_mean(const RepresentingFunction& h, double a, double b);

struct MeanResult {
  HermitianMatrix value;
  double eps_used = 0.0;
};

// Default regularization when either operand is singular.
double default_mean_eps(const HermitianMatrix& a, const HermitianMatrix& b);

// A^{1/2} h(A^{-1/2} B A^{-1/2}) A^{1/2} with A, B shifted by eps I. eps = nullopt picks 0 for
// invertible operands and default_mean_eps otherwise; eps = 0 with singular A throws SingularInput.
MeanResult kubo_ando_detailed(const RepresentingFunction& h, const HermitianMatrix& a, const HermitianMatrix& b,
                              std::optional<double> eps = std::nullopt);
HermitianMatrix kubo_ando(const RepresentingFunction& h, const HermitianMatrix& a, const HermitianMatrix& b,
                          std::optional<double> eps = std::nullopt);

// A #_alpha B for invertible A, B and alpha in [0,1].
HermitianMatrix weighted_geometric(const HermitianMatrix& a, const HermitianMatrix& b, double alpha);
// ((A^p + B^p)/2)^{1/p} for p in (0,1]; exp((log A + log B)/2) for p = 0.
HermitianMatrix power_mean(const HermitianMatrix& a, const HermitianMatrix& b, double p);
// int A #_alpha B dnu(alpha) for invertible A, B.
HermitianMatrix geodesic_mean(const GeodesicMeasure& nu, const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace matmeans

#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace matmeans {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Interval of the real line with optional open endpoints; infinite endpoints are always open.
struct Interval {
  double lo = -kInf;
  double hi = kInf;
  bool lo_open = true;
  bool hi_open = true;

  static Interval real_line() { return {}; }
  static Interval nonnegative() { return {0.0, kInf, false, true}; }
  static Interval positive() { return {0.0, kInf, true, true}; }
  static Interval closed(double a, double b) { return {a, b, false, false}; }
  static Interval closed_open(double a, double b) { return {a, b, false, true}; }

  bool contains(double x) const;
  bool bounded() const { return lo > -kInf && hi < kInf; }
  bool has_interior() const { return hi > lo; }
  std::string str() const;
};

/// Complex n x n Hermitian matrix. Construction symmetrizes the input as (M + M*)/2,
/// so the stored entries are exactly conjugate-symmetric with a real diagonal.
class HermitianMatrix {
 public:
  HermitianMatrix();
  explicit HermitianMatrix(const CMatrix& m);

  static HermitianMatrix identity(int n);
  static HermitianMatrix zero(int n);
  static HermitianMatrix diagonal(std::span<const double> values);
  static HermitianMatrix from_real(const Eigen::MatrixXd& m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  double trace() const;
  double frobenius_norm() const { return m_.norm(); }

  HermitianMatrix operator+(const HermitianMatrix& other) const;
  HermitianMatrix operator-(const HermitianMatrix& other) const;
  HermitianMatrix operator*(double s) const;
  HermitianMatrix& operator+=(const HermitianMatrix& other);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a) { return a * s; }

 private:
  CMatrix m_;
};

// Eigenvalues in non-increasing order: values[0] = lambda_1 >= ... >= values[n-1] = lambda_n.
struct Spectrum {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double max() const { return values.front(); }
  double min() const { return values.back(); }
};

struct EigDecomposition {
  Spectrum spectrum;
  CMatrix basis;  // column i pairs with spectrum.values[i]

  HermitianMatrix reconstruct() const;
};

using ScalarFunction = std::function<double(double)>;

// Cyclic complex Jacobi. Throws NonConvergence after kMaxJacobiSweeps sweeps.
inline constexpr int kMaxJacobiSweeps = 100;
EigDecomposition eigh(const HermitianMatrix& a);
Spectrum eigenvalues(const HermitianMatrix& a);

// Eigenvalues within clamp_eps of a closed endpoint of the domain are clamped onto it.
double clamp_eps(const HermitianMatrix& a);

HermitianMatrix matrix_function(const HermitianMatrix& a, const ScalarFunction& f,
                                const Interval& domain = Interval::real_line());
HermitianMatrix matrix_function(const EigDecomposition& eig, const ScalarFunction& f,
                                const Interval& domain, double clamp);

// X* A X, re-symmetrized.
HermitianMatrix congruence(const CMatrix& x, const HermitianMatrix& a);

// True iff lambda_min(A - B) >= -tol * (1 + |A|_F + |B|_F).
bool loewner_geq(const HermitianMatrix& a, const HermitianMatrix& b, double tol);
// lambda_min(A - B) / (1 + |A|_F + |B|_F); non-negative iff A >= B.
double loewner_margin(const HermitianMatrix& a, const HermitianMatrix& b);

enum class Order { descending, ascending };
HermitianMatrix sorted_diagonal(const HermitianMatrix& a, Order order);

HermitianMatrix sqrtm(const HermitianMatrix& a);
HermitianMatrix powm(const HermitianMatrix& a, double p);
HermitianMatrix logm(const HermitianMatrix& a);
HermitianMatrix expm(const HermitianMatrix& a);
HermitianMatrix inverse(const HermitianMatrix& a);

double determinant(const HermitianMatrix& a);
// det^{1/n}; zero when some eigenvalue is <= 0.
double det_root(const HermitianMatrix& a);

// Smallest eigenvalue is strictly positive relative to the largest (cond < 1e14).
bool is_invertible_psd(const HermitianMatrix& a);

HermitianMatrix direct_sum(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix hadamard(const HermitianMatrix& a, const HermitianMatrix& b);
// Rescale to unit diagonal: D^{-1/2} A D^{-1/2} with D = diag(A).
HermitianMatrix unit_diagonal(const HermitianMatrix& a);

}  // namespace matmeans

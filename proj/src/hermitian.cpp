#include "matmeans/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "matmeans/errors.hpp"

namespace matmeans {

bool Interval::contains(double x) const {
  const bool above = lo_open ? x > lo : x >= lo;
  const bool below = hi_open ? x < hi : x <= hi;
  return above && below;
}

std::string Interval::str() const {
  std::ostringstream os;
  os << (lo_open ? "(" : "[") << lo << ", " << hi << (hi_open ? ")" : "]");
  return os.str();
}

HermitianMatrix::HermitianMatrix() : m_(CMatrix::Zero(1, 1)) {}

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionMismatch("HermitianMatrix requires a non-empty square matrix");
  }
  m_ = 0.5 * (m + m.adjoint());
  for (Eigen::Index i = 0; i < m_.rows(); ++i) m_(i, i) = Complex(m_(i, i).real(), 0.0);
}

HermitianMatrix HermitianMatrix::identity(int n) { return HermitianMatrix(CMatrix::Identity(n, n)); }

HermitianMatrix HermitianMatrix::zero(int n) { return HermitianMatrix(CMatrix::Zero(n, n)); }

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(values.size()),
                            static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::from_real(const Eigen::MatrixXd& m) {
  return HermitianMatrix(CMatrix(m.cast<Complex>()));
}

double HermitianMatrix::trace() const { return m_.trace().real(); }

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& other) const {
  if (dim() != other.dim()) throw DimensionMismatch("sum of matrices of different dimension");
  return HermitianMatrix(CMatrix(m_ + other.m_));
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& other) const {
  if (dim() != other.dim()) throw DimensionMismatch("difference of matrices of different dimension");
  return HermitianMatrix(CMatrix(m_ - other.m_));
}

HermitianMatrix HermitianMatrix::operator*(double s) const { return HermitianMatrix(CMatrix(m_ * s)); }

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& other) {
  *this = *this + other;
  return *this;
}

HermitianMatrix EigDecomposition::reconstruct() const {
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(spectrum.values.data(),
                                                        static_cast<Eigen::Index>(spectrum.size()));
  return HermitianMatrix(CMatrix(basis * d.cast<Complex>().asDiagonal() * basis.adjoint()));
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

// Zeroes a(p,q) with the unitary J = [[c, s e^{i phi}], [-s e^{-i phi}], c]] acting on (p, q).
void rotate(CMatrix& a, CMatrix& v, Eigen::Index p, Eigen::Index q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  const Complex phase = apq / r;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const Complex jpq = s * phase;
  const Complex jqp = -s * std::conj(phase);

  CVector col_p = a.col(p);
  CVector col_q = a.col(q);
  a.col(p) = c * col_p + jqp * col_q;
  a.col(q) = jpq * col_p + c * col_q;

  Eigen::RowVectorXcd row_p = a.row(p);
  Eigen::RowVectorXcd row_q = a.row(q);
  a.row(p) = c * row_p + std::conj(jqp) * row_q;
  a.row(q) = std::conj(jpq) * row_p + c * row_q;

  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * r;
  a(q, q) = aqq + t * r;

  CVector vp = v.col(p);
  CVector vq = v.col(q);
  v.col(p) = c * vp + jqp * vq;
  v.col(q) = jpq * vp + c * vq;
}

}  // namespace

EigDecomposition eigh(const HermitianMatrix& input) {
  const Eigen::Index n = input.dim();
  CMatrix a = input.matrix();
  CMatrix v = CMatrix::Identity(n, n);
  const double norm = a.norm();
  const double target = 1e-12 * norm;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    if (off_diagonal_norm(a) == 0.0) break;
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        // Relative-accuracy threshold: the entry is below rounding of the 2x2 diagonal block.
        const double diag = std::sqrt(std::abs(a(p, p).real()) * std::abs(a(q, q).real()));
        if (r <= 0.5 * eps * diag) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
        rotated = true;
      }
    }
    if (!rotated) break;
  }
  if (off_diagonal_norm(a) > target) {
    throw NonConvergence("Jacobi eigensolver did not converge within " +
                         std::to_string(kMaxJacobiSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  EigDecomposition out;
  out.spectrum.values.resize(static_cast<std::size_t>(n));
  out.basis.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = static_cast<Eigen::Index>(order[static_cast<std::size_t>(k)]);
    out.spectrum.values[static_cast<std::size_t>(k)] = a(src, src).real();
    out.basis.col(k) = v.col(src);
  }
  return out;
}

Spectrum eigenvalues(const HermitianMatrix& a) { return eigh(a).spectrum; }

double clamp_eps(const HermitianMatrix& a) { return 1e-10 * (1.0 + a.frobenius_norm()); }

HermitianMatrix matrix_function(const EigDecomposition& eig, const ScalarFunction& f,
                                const Interval& domain, double clamp) {
  const auto n = static_cast<Eigen::Index>(eig.spectrum.size());
  Eigen::VectorXcd fx(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double x = eig.spectrum.values[static_cast<std::size_t>(i)];
    if (!domain.contains(x)) {
      if (!domain.lo_open && x < domain.lo && domain.lo - x <= clamp) {
        x = domain.lo;
      } else if (!domain.hi_open && x > domain.hi && x - domain.hi <= clamp) {
        x = domain.hi;
      } else {
        std::ostringstream os;
        os << "eigenvalue " << x << " outside domain " << domain.str();
        throw DomainViolation(os.str(), x);
      }
    }
    fx(i) = f(x);
  }
  return HermitianMatrix(CMatrix(eig.basis * fx.asDiagonal() * eig.basis.adjoint()));
}

HermitianMatrix matrix_function(const HermitianMatrix& a, const ScalarFunction& f,
                                const Interval& domain) {
  return matrix_function(eigh(a), f, domain, clamp_eps(a));
}

HermitianMatrix congruence(const CMatrix& x, const HermitianMatrix& a) {
  if (x.rows() != a.dim()) throw DimensionMismatch("congruence: X rows must equal dim(A)");
  return HermitianMatrix(CMatrix(x.adjoint() * a.matrix() * x));
}

double loewner_margin(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("Loewner comparison of different dimensions");
  return eigenvalues(a - b).min() / (1.0 + a.frobenius_norm() + b.frobenius_norm());
}

bool loewner_geq(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  return loewner_margin(a, b) >= -tol;
}

HermitianMatrix sorted_diagonal(const HermitianMatrix& a, Order order) {
  std::vector<double> v = eigenvalues(a).values;
  if (order == Order::ascending) std::reverse(v.begin(), v.end());
  return HermitianMatrix::diagonal(v);
}

HermitianMatrix sqrtm(const HermitianMatrix& a) {
  return matrix_function(a, [](double x) { return std::sqrt(x); }, Interval::nonnegative());
}

HermitianMatrix powm(const HermitianMatrix& a, double p) {
  if (p == 0.0) return HermitianMatrix::identity(a.dim());
  if (p > 0.0) {
    return matrix_function(a, [p](double x) { return x == 0.0 ? 0.0 : std::pow(x, p); },
                           Interval::nonnegative());
  }
  return matrix_function(a, [p](double x) { return std::pow(x, p); }, Interval::positive());
}

HermitianMatrix logm(const HermitianMatrix& a) {
  return matrix_function(a, [](double x) { return std::log(x); }, Interval::positive());
}

HermitianMatrix expm(const HermitianMatrix& a) {
  return matrix_function(a, [](double x) { return std::exp(x); });
}

HermitianMatrix inverse(const HermitianMatrix& a) {
  const EigDecomposition eig = eigh(a);
  // Eigenvalues at round-off level relative to the largest one count as zero.
  const double scale = std::max(std::abs(eig.spectrum.max()), std::abs(eig.spectrum.min()));
  for (double x : eig.spectrum.values) {
    if (std::abs(x) <= 64.0 * std::numeric_limits<double>::epsilon() * scale || !std::isfinite(1.0 / x)) {
      throw SingularInput("inverse of a singular matrix");
    }
  }
  return matrix_function(eig, [](double x) { return 1.0 / x; }, Interval::real_line(), 0.0);
}

double determinant(const HermitianMatrix& a) {
  double d = 1.0;
  for (double x : eigenvalues(a).values) d *= x;
  return d;
}

double det_root(const HermitianMatrix& a) {
  const Spectrum s = eigenvalues(a);
  double log_sum = 0.0;
  for (double x : s.values) {
    if (x <= 0.0) return 0.0;
    log_sum += std::log(x);
  }
  return std::exp(log_sum / static_cast<double>(s.size()));
}

bool is_invertible_psd(const HermitianMatrix& a) {
  const Spectrum s = eigenvalues(a);
  return s.min() > 1e-14 * std::max(1.0, s.max()) && s.min() > 0.0;
}

HermitianMatrix direct_sum(const HermitianMatrix& a, const HermitianMatrix& b) {
  const int n = a.dim();
  const int m = b.dim();
  CMatrix out = CMatrix::Zero(n + m, n + m);
  out.topLeftCorner(n, n) = a.matrix();
  out.bottomRightCorner(m, m) = b.matrix();
  return HermitianMatrix(out);
}

HermitianMatrix hadamard(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("Schur product of different dimensions");
  return HermitianMatrix(CMatrix(a.matrix().cwiseProduct(b.matrix())));
}

HermitianMatrix unit_diagonal(const HermitianMatrix& a) {
  const int n = a.dim();
  CMatrix d = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double x = a(i, i).real();
    if (x <= 0.0) throw SingularInput("unit_diagonal requires a positive diagonal");
    d(i, i) = 1.0 / std::sqrt(x);
  }
  return congruence(d, a);
}

}  // namespace matmeans

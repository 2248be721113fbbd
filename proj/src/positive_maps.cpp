#include "matmeans/positive_maps.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "matmeans/errors.hpp"

namespace matmeans {

PositiveMap PositiveMap::kraus(std::vector<CMatrix> ops) {
  if (ops.empty()) throw DimensionMismatch("kraus map needs at least one operator");
  PositiveMap e;
  e.kind_ = MapKind::kraus;
  e.in_dim_ = static_cast<int>(ops.front().rows());
  e.out_dim_ = static_cast<int>(ops.front().cols());
  for (const auto& c : ops) {
    if (c.rows() != e.in_dim_ || c.cols() != e.out_dim_) {
      throw DimensionMismatch("kraus operators must share one shape");
    }
  }
  e.ops_ = std::move(ops);
  e.classify();
  return e;
}

PositiveMap PositiveMap::schur(const HermitianMatrix& s) {
  PositiveMap e;
  e.kind_ = MapKind::schur;
  e.in_dim_ = e.out_dim_ = s.dim();
  e.schur_ = s;
  e.classify();
  return e;
}

PositiveMap PositiveMap::pinching(std::vector<int> block_sizes) {
  int n = 0;
  for (int b : block_sizes) {
    if (b < 1) throw DimensionMismatch("pinching blocks must be non-empty");
    n += b;
  }
  if (n == 0) throw DimensionMismatch("pinching needs at least one block");
  PositiveMap e;
  e.kind_ = MapKind::pinching;
  e.in_dim_ = e.out_dim_ = n;
  e.blocks_ = std::move(block_sizes);
  e.classify();
  return e;
}

PositiveMap PositiveMap::pinch_diagonal(int n) { return pinching(std::vector<int>(static_cast<std::size_t>(n), 1)); }

PositiveMap PositiveMap::two_block_average(int n) {
  if (n < 1) throw DimensionMismatch("two-block average needs n >= 1");
  PositiveMap e;
  e.kind_ = MapKind::two_block_average;
  e.in_dim_ = 2 * n;
  e.out_dim_ = n;
  e.classify();
  return e;
}

PositiveMap PositiveMap::unitary_mixture(const std::vector<CMatrix>& unitaries, const std::vector<double>& weights) {
  if (unitaries.size() != weights.size() || unitaries.empty()) {
    throw DimensionMismatch("unitary mixture needs one weight per unitary");
  }
  std::vector<CMatrix> ops;
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    if (weights[i] < 0.0) throw DomainViolation("mixture weights must be non-negative", weights[i]);
    ops.push_back(std::sqrt(weights[i]) * unitaries[i]);
  }
  return kraus(std::move(ops));
}

void PositiveMap::classify() {
  const HermitianMatrix image = apply(HermitianMatrix::identity(in_dim_));
  const HermitianMatrix id = HermitianMatrix::identity(out_dim_);
  sub_unital_ = loewner_geq(id, image, kUnitalTol);
  unital_ = (image.matrix() - id.matrix()).norm() <= kUnitalTol * (1.0 + id.frobenius_norm());
  switch (kind_) {
    case MapKind::kraus: {
      // Trace preserving iff sum_i C_i C_i* = I on the input space.
      CMatrix s = CMatrix::Zero(in_dim_, in_dim_);
      for (const auto& c : ops_) s += c * c.adjoint();
      trace_preserving_ = (s - CMatrix::Identity(in_dim_, in_dim_)).norm() <= kUnitalTol * (1.0 + std::sqrt(in_dim_));
      break;
    }
    case MapKind::schur: {
      bool ok = true;
      for (int i = 0; i < in_dim_; ++i) ok = ok && std::abs(schur_(i, i) - 1.0) <= kUnitalTol;
      trace_preserving_ = ok;
      break;
    }
    case MapKind::pinching:
      trace_preserving_ = true;
      break;
    case MapKind::two_block_average:
      trace_preserving_ = false;
      break;
  }
}

HermitianMatrix PositiveMap::apply(const HermitianMatrix& z) const {
  if (z.dim() != in_dim_) throw DimensionMismatch("positive map applied to a matrix of the wrong size");
  switch (kind_) {
    case MapKind::kraus: {
      CMatrix out = CMatrix::Zero(out_dim_, out_dim_);
      for (const auto& c : ops_) out += c.adjoint() * z.matrix() * c;
      return HermitianMatrix(out);
    }
    case MapKind::schur:
      return hadamard(schur_, z);
    case MapKind::pinching: {
      CMatrix out = CMatrix::Zero(in_dim_, in_dim_);
      int at = 0;
      for (int b : blocks_) {
        out.block(at, at, b, b) = z.matrix().block(at, at, b, b);
        at += b;
      }
      return HermitianMatrix(out);
    }
    case MapKind::two_block_average: {
      const int n = out_dim_;
      const CMatrix avg = 0.5 * (z.matrix().topLeftCorner(n, n) + z.matrix().bottomRightCorner(n, n));
      return HermitianMatrix(avg);
    }
  }
  throw DimensionMismatch("unknown map kind");
}

std::string PositiveMap::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case MapKind::kraus:
      os << "kraus(" << ops_.size() << " ops)";
      break;
    case MapKind::schur:
      os << "schur";
      break;
    case MapKind::pinching:
      os << "pinching(" << blocks_.size() << " blocks)";
      break;
    case MapKind::two_block_average:
      os << "two-block";
      break;
  }
  os << " " << in_dim_ << "->" << out_dim_;
  return os.str();
}

HermitianMatrix power_map(const PositiveMap& e, const HermitianMatrix& z, double p) {
  if (!(p > 0.0)) throw DomainViolation("power_map needs p > 0", p);
  if (p == 1.0) return e.apply(z);
  const HermitianMatrix zp = matrix_function(z, [p](double t) { return std::pow(t, p); }, Interval::nonnegative());
  const HermitianMatrix inner = e.apply(zp);
  return matrix_function(inner, [p](double t) { return std::pow(t, 1.0 / p); }, Interval::nonnegative());
}

HermitianMatrix zero_power_map(const PositiveMap& e, const HermitianMatrix& z) {
  if (!e.unital()) throw NotUnital("zero_power_map requires a unital map");
  if (!is_invertible_psd(z)) throw SingularInput("zero_power_map requires an invertible positive matrix");
  return expm(e.apply(logm(z)));
}

}  // namespace matmeans

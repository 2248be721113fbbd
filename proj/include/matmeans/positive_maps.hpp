#pragma once

#include <string>
#include <vector>

#include "matmeans/hermitian.hpp"

namespace matmeans {

enum class MapKind { kraus, schur, pinching, two_block_average };

// Positive linear map from n x n to m x m matrices. Immutable once built.
class PositiveMap {
 public:
  // Z -> sum_i C_i* Z C_i with each C_i of shape in_dim x out_dim.
  static PositiveMap kraus(std::vector<CMatrix> ops);
  // Z -> S o Z (entrywise) for a PSD matrix S.
  static PositiveMap schur(const HermitianMatrix& s);
  // Keeps the diagonal blocks of the given sizes, zeroes the rest.
  static PositiveMap pinching(std::vector<int> block_sizes);
  static PositiveMap pinch_diagonal(int n);
  // A (+) B -> (A + B)/2, from 2n x 2n to n x n.
  static PositiveMap two_block_average(int n);
  // Z -> sum_i w_i U_i* Z U_i with unitaries U_i and probability weights w_i.
  static PositiveMap unitary_mixture(const std::vector<CMatrix>& unitaries, const std::vector<double>& weights);

  MapKind kind() const { return kind_; }
  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  // E(I) <= I and E(I) = I, both within 1e-10.
  bool sub_unital() const { return sub_unital_; }
  bool unital() const { return unital_; }
  // trace(E(Z)) = trace(Z) for all Z.
  bool trace_preserving() const { return trace_preserving_; }
  std::string describe() const;

  HermitianMatrix apply(const HermitianMatrix& z) const;

 private:
  PositiveMap() = default;
  void classify();

  MapKind kind_ = MapKind::pinching;
  int in_dim_ = 0;
  int out_dim_ = 0;
  std::vector<CMatrix> ops_;
  HermitianMatrix schur_;
  std::vector<int> blocks_;
  bool sub_unital_ = false;
  bool unital_ = false;
  bool trace_preserving_ = false;
};

inline constexpr double kUnitalTol = 1e-10;

// E(Z^p)^{1/p} for PSD Z and p > 0; singular Z is allowed through 0^p = 0.
HermitianMatrix power_map(const PositiveMap& e, const HermitianMatrix& z, double p);
// exp(E(log Z)); E must be unital (NotUnital) and Z invertible (SingularInput).
HermitianMatrix zero_power_map(const PositiveMap& e, const HermitianMatrix& z);

}  // namespace matmeans

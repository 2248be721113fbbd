#pragma once

#include <span>

#include "matmeans/hermitian.hpp"

namespace matmeans {

struct MajorizationVerdict {
  bool holds = true;
  double worst_margin = kInf;  // min signed slack over k = 1..n
  int worst_k = 0;             // 1-based index achieving worst_margin
};

inline constexpr double kLogFloor = 1e-300;

// A <=^w B: every bottom-k eigenvalue sum of A is >= the one of B.
// Margins are normalized by 1 + |A|_F + |B|_F.
MajorizationVerdict supermajorizes(const HermitianMatrix& a, const HermitianMatrix& b, double tol);
// Supermajorization plus trace equality.
MajorizationVerdict majorizes(const HermitianMatrix& a, const HermitianMatrix& b, double tol);
// Bottom-k eigenvalue products of A are >= those of B.
MajorizationVerdict log_supermajorizes(const HermitianMatrix& a, const HermitianMatrix& b, double tol);
// Top-k products of A are <= those of B, with determinant equality.
MajorizationVerdict log_majorizes(const HermitianMatrix& a, const HermitianMatrix& b, double tol);
// Top-k products of A are <= those of B.
MajorizationVerdict log_submajorizes(const HermitianMatrix& a, const HermitianMatrix& b, double tol);
// lambda_j(A) >= lambda_j(B) for every j.
MajorizationVerdict eigenvalue_dominates(const HermitianMatrix& a, const HermitianMatrix& b, double tol);

// Same relations on spectra given in non-increasing order. The Frobenius norm of a Hermitian
// matrix is the Euclidean norm of its spectrum, so both forms agree.
MajorizationVerdict supermajorizes(std::span<const double> a, std::span<const double> b, double tol);
MajorizationVerdict majorizes(std::span<const double> a, std::span<const double> b, double tol);
MajorizationVerdict log_supermajorizes(std::span<const double> a, std::span<const double> b, double tol);
MajorizationVerdict log_majorizes(std::span<const double> a, std::span<const double> b, double tol);
MajorizationVerdict log_submajorizes(std::span<const double> a, std::span<const double> b, double tol);
MajorizationVerdict eigenvalue_dominates(std::span<const double> a, std::span<const double> b, double tol);

// (prod of the given values)^{1/k}; direct product once a factor is below kLogFloor.
double geometric_mean_of(std::span<const double> values);

}  // namespace matmeans

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "matmeans/hermitian.hpp"

namespace matmeans {

using Rng = std::mt19937_64;

struct PsdSamplerConfig {
  int dim = 3;
  double condition_target = 10.0;  // lambda_1 / lambda_n over the non-zero eigenvalues
  bool invertible = true;
  int rank_deficit = 0;  // number of forced zero eigenvalues when !invertible
  std::uint64_t seed = 0;

  void validate() const;
};

// Deterministic in cfg.seed. Haar-distributed eigenbasis; the non-zero eigenvalues span
// exactly [1/sqrt(c), sqrt(c)] (extremes pinned, the rest log-uniform in between).
HermitianMatrix sample_psd(const PsdSamplerConfig& cfg);
HermitianMatrix sample_psd(Rng& rng, int dim, double condition_target, int rank_deficit = 0);

// Haar unitary from the QR factorization of a complex Ginibre matrix, phases fixed by diag(R).
CMatrix sample_unitary(Rng& rng, int n);
CMatrix sample_complex_gaussian(Rng& rng, int rows, int cols);
// (G + G*)/2 for a complex Gaussian G.
HermitianMatrix sample_hermitian(Rng& rng, int n);
// PSD with unit diagonal (a correlation matrix), full rank.
HermitianMatrix sample_correlation(Rng& rng, int n);

HermitianMatrix with_spectrum(const CMatrix& unitary, std::span<const double> values);

double uniform(Rng& rng, double lo, double hi);
double log_uniform(Rng& rng, double lo, double hi);
int uniform_int(Rng& rng, int lo, int hi);  // inclusive

// splitmix64 finalizer; used to derive independent streams from a master seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);
// FNV-1a over the bytes of an id; stable across platforms.
std::uint64_t stable_hash(std::string_view text);

}  // namespace matmeans

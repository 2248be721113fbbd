#include "matmeans/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "matmeans/errors.hpp"

namespace matmeans {

void PsdSamplerConfig::validate() const {
  if (dim < 1) throw ConfigError("sampler dim must be >= 1");
  if (!(condition_target >= 1.0)) throw ConfigError("sampler condition_target must be >= 1");
  if (rank_deficit < 0 || rank_deficit >= dim) throw ConfigError("rank_deficit must lie in [0, dim)");
  if (invertible && rank_deficit != 0) throw ConfigError("rank_deficit must be 0 for invertible samples");
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

CMatrix sample_complex_gaussian(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  return g;
}

CMatrix sample_unitary(Rng& rng, int n) {
  const CMatrix g = sample_complex_gaussian(rng, n, n);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

HermitianMatrix sample_hermitian(Rng& rng, int n) {
  return HermitianMatrix(sample_complex_gaussian(rng, n, n));
}

HermitianMatrix with_spectrum(const CMatrix& unitary, std::span<const double> values) {
  Eigen::VectorXcd d(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) d(static_cast<Eigen::Index>(i)) = values[i];
  return HermitianMatrix(CMatrix(unitary * d.asDiagonal() * unitary.adjoint()));
}

HermitianMatrix sample_psd(Rng& rng, int dim, double condition_target, int rank_deficit) {
  const CMatrix u = sample_unitary(rng, dim);
  const int live = dim - rank_deficit;
  const double top = std::sqrt(condition_target);
  const double bottom = 1.0 / top;
  std::vector<double> values(static_cast<std::size_t>(dim), 0.0);
  if (live == 1) {
    values[0] = log_uniform(rng, bottom, top);
  } else {
    values[0] = top;
    values[static_cast<std::size_t>(live - 1)] = bottom;
    for (int i = 1; i + 1 < live; ++i) values[static_cast<std::size_t>(i)] = log_uniform(rng, bottom, top);
  }
  return with_spectrum(u, values);
}

HermitianMatrix sample_psd(const PsdSamplerConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  return sample_psd(rng, cfg.dim, cfg.condition_target, cfg.invertible ? 0 : cfg.rank_deficit);
}

HermitianMatrix sample_correlation(Rng& rng, int n) {
  const HermitianMatrix g = sample_psd(rng, n, 20.0);
  return unit_diagonal(g);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t stable_hash(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace matmeans

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "matmeans/hermitian.hpp"
#include "matmeans/sampling.hpp"

namespace testing_support {

using namespace matmeans;

inline double max_abs_diff(const HermitianMatrix& a, const HermitianMatrix& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

inline double rel_diff(const HermitianMatrix& a, const HermitianMatrix& b) {
  return (a.matrix() - b.matrix()).norm() / (1.0 + a.frobenius_norm() + b.frobenius_norm());
}

inline std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

// Random PSD matrix with the given seed; invertible unless rank_deficit > 0.
inline HermitianMatrix psd(std::uint64_t seed, int n, double cond = 10.0, int rank_deficit = 0) {
  PsdSamplerConfig cfg;
  cfg.dim = n;
  cfg.condition_target = cond;
  cfg.invertible = rank_deficit == 0;
  cfg.rank_deficit = rank_deficit;
  cfg.seed = seed;
  return sample_psd(cfg);
}

}  // namespace testing_support

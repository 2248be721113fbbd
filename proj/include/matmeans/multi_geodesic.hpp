#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "matmeans/hermitian.hpp"

namespace matmeans {

using WeightVector = std::vector<double>;

// Non-negative entries summing to 1 within 1e-12, one per matrix; throws ConfigError.
void validate_weights(const WeightVector& w, std::size_t m);
WeightVector uniform_weights(std::size_t m);

struct KarcherConfig {
  double tol_grad = 0.0;  // 0 selects 1e-10 * m * (1 + max |log A_i|_F)
  int max_iter = 500;
  double step = 1.0;      // damping on the adaptive step, halved on residual increase down to 1/16
};

struct KarcherResult {
  HermitianMatrix mean;
  int iterations = 0;
  double residual = 0.0;  // |sum_i w_i log(X^{-1/2} A_i X^{-1/2})|_F at the returned X
};

// |log A^{-1/2} B A^{-1/2}|_F for positive definite A, B.
double riemannian_distance(const HermitianMatrix& a, const HermitianMatrix& b);

// |sum_i w_i log(X^{-1/2} A_i X^{-1/2})|_F, the first-order residual of the least-squares mean.
double karcher_residual(const WeightVector& w, const std::vector<HermitianMatrix>& as, const HermitianMatrix& x);

// Minimizer of sum_i w_i delta^2(X, A_i) by gradient iteration X <- X^{1/2} exp(s G) X^{1/2}
// started at the log-Euclidean mean. The step s comes from the condition numbers of the terms
// X^{-1/2} A_i X^{-1/2}. Throws NonConvergence after max_iter iterations.
KarcherResult karcher_mean_detailed(const WeightVector& w, const std::vector<HermitianMatrix>& as,
                                    const KarcherConfig& cfg = {});
HermitianMatrix karcher_mean(const WeightVector& w, const std::vector<HermitianMatrix>& as,
                             const KarcherConfig& cfg = {});
HermitianMatrix karcher_mean(const std::vector<HermitianMatrix>& as, const KarcherConfig& cfg = {});

// S_1 = A_1, S_k = S_{k-1} #_{1/k} A_k.
HermitianMatrix inductive_mean(const std::vector<HermitianMatrix>& as);

// Inductive mean of k matrices drawn i.i.d. from sum_i w_i delta_{A_i}.
HermitianMatrix sturm_approximation(const WeightVector& w, const std::vector<HermitianMatrix>& as, int steps,
                                    std::uint64_t seed);

// Probability measure on the weight simplex: explicit atoms, or the uniform measure estimated
// from random weight vectors. Uniform draws are symmetrized over cyclic shifts, so the averaged
// weight vector is exactly uniform.
struct SimplexMeasure {
  std::vector<std::pair<WeightVector, double>> atoms;
  bool mc_uniform = false;
  int samples = 2000;  // approximate number of weight vectors (rounded up to a multiple of m)
  std::uint64_t seed = 0;

  static SimplexMeasure point(WeightVector w);
  static SimplexMeasure uniform(int samples = 2000, std::uint64_t seed = 0);

  // Weighted points (w, mass) for m variables; masses sum to 1.
  std::vector<std::pair<WeightVector, double>> discretize(std::size_t m) const;
};

struct MultiMeanResult {
  HermitianMatrix mean;
  WeightVector average_weights;  // sum of mass * w over the discretized measure
  int evaluations = 0;           // number of Karcher means averaged
};

// sum_j mass_j G_m(w_j; A).
MultiMeanResult geodesic_mean_m_detailed(const SimplexMeasure& nu, const std::vector<HermitianMatrix>& as,
                                         const KarcherConfig& cfg = {});
HermitianMatrix geodesic_mean_m(const SimplexMeasure& nu, const std::vector<HermitianMatrix>& as,
                                const KarcherConfig& cfg = {});

// Uniform random point of the simplex (normalized exponential draws).
WeightVector sample_simplex(std::uint64_t seed, std::size_t m);

}  // namespace matmeans

#include "matmeans/multi_geodesic.hpp"

#include <algorithm>
#include <cmath>

#include "matmeans/errors.hpp"
#include "matmeans/operator_means.hpp"
#include "matmeans/sampling.hpp"

namespace matmeans {

namespace {

// Uniform double in (0, 1] from the top 53 bits.
double unit_open_closed(Rng& rng) { return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53; }

void check_inputs(const std::vector<HermitianMatrix>& as) {
  if (as.empty()) throw ConfigError("multi-variable mean needs at least one matrix");
  for (const auto& a : as) {
    if (a.dim() != as.front().dim()) throw DimensionMismatch("multi-variable mean operands differ in dimension");
    if (!is_invertible_psd(a)) throw SingularInput("multi-variable mean needs positive definite operands");
  }
}

struct RootPair {
  HermitianMatrix root;
  HermitianMatrix root_inv;
};

RootPair roots(const HermitianMatrix& x) {
  const EigDecomposition e = eigh(x);
  for (double v : e.spectrum.values) {
    if (!(v > 0.0)) throw SingularInput("iterate lost positive definiteness");
  }
  return {matrix_function(e, [](double t) { return std::sqrt(t); }, Interval::positive(), 0.0),
          matrix_function(e, [](double t) { return 1.0 / std::sqrt(t); }, Interval::positive(), 0.0)};
}

struct Gradient {
  HermitianMatrix g;
  double step = 1.0;  // 2 / sum_i w_i (c_i + 1)/(c_i - 1) log c_i, c_i the condition number of the i-th term
};

Gradient gradient(const WeightVector& w, const std::vector<HermitianMatrix>& as, const RootPair& r) {
  Gradient out{HermitianMatrix::zero(as.front().dim())};
  double curvature = 0.0;
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (w[i] == 0.0) continue;
    const EigDecomposition e = eigh(congruence(r.root_inv.matrix(), as[i]));
    if (!(e.spectrum.min() > 0.0)) throw SingularInput("iterate lost positive definiteness");
    out.g += matrix_function(e, [](double t) { return std::log(t); }, Interval::positive(), 0.0) * w[i];
    const double c = e.spectrum.max() / e.spectrum.min();
    curvature += w[i] * (c - 1.0 > 1e-8 ? (c + 1.0) / (c - 1.0) * std::log(c) : 2.0);
  }
  out.step = curvature > 0.0 ? 2.0 / curvature : 1.0;
  return out;
}

}  // namespace

void validate_weights(const WeightVector& w, std::size_t m) {
  if (w.size() != m) throw ConfigError("weight vector length differs from the number of matrices");
  double s = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) throw ConfigError("weights must be non-negative");
    s += x;
  }
  if (std::abs(s - 1.0) > 1e-12) throw ConfigError("weights must sum to 1");
}

WeightVector uniform_weights(std::size_t m) { return WeightVector(m, 1.0 / static_cast<double>(m)); }

double riemannian_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("distance operands differ in dimension");
  if (!is_invertible_psd(a) || !is_invertible_psd(b)) throw SingularInput("distance needs positive definite operands");
  const RootPair r = roots(a);
  double s = 0.0;
  for (double v : eigenvalues(congruence(r.root_inv.matrix(), b)).values) {
    if (!(v > 0.0)) throw SingularInput("distance needs positive definite operands");
    s += std::log(v) * std::log(v);
  }
  return std::sqrt(s);
}

double karcher_residual(const WeightVector& w, const std::vector<HermitianMatrix>& as, const HermitianMatrix& x) {
  return gradient(w, as, roots(x)).g.frobenius_norm();
}

KarcherResult karcher_mean_detailed(const WeightVector& w, const std::vector<HermitianMatrix>& as,
                                    const KarcherConfig& cfg) {
  check_inputs(as);
  validate_weights(w, as.size());
  if (cfg.max_iter < 1) throw ConfigError("max_iter must be at least 1");
  if (!(cfg.step > 0.0 && cfg.step <= 1.0)) throw ConfigError("step must lie in (0,1]");
  if (cfg.tol_grad < 0.0) throw ConfigError("tol_grad must be positive");

  // Zero weights contribute nothing to the objective.
  WeightVector wk;
  std::vector<HermitianMatrix> ak;
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (w[i] > 0.0) {
      wk.push_back(w[i]);
      ak.push_back(as[i]);
    }
  }
  if (ak.size() == 1) return {ak.front(), 0, 0.0};

  std::vector<HermitianMatrix> logs;
  double log_scale = 0.0;
  HermitianMatrix log_mean = HermitianMatrix::zero(ak.front().dim());
  for (std::size_t i = 0; i < ak.size(); ++i) {
    logs.push_back(logm(ak[i]));
    log_scale = std::max(log_scale, logs.back().frobenius_norm());
    log_mean += logs.back() * wk[i];
  }
  const double tol = cfg.tol_grad > 0.0 ? cfg.tol_grad
                                        : 1e-10 * static_cast<double>(as.size()) * (1.0 + log_scale);

  HermitianMatrix x = expm(log_mean);
  double damping = cfg.step;
  double prev = kInf;
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    const RootPair r = roots(x);
    const Gradient g = gradient(wk, ak, r);
    const double res = g.g.frobenius_norm();
    if (res <= tol) return {x, iter, res};
    if (res > prev) damping = std::max(damping / 2.0, 1.0 / 16.0);
    prev = res;
    x = congruence(r.root.matrix(), expm(g.g * (damping * g.step)));
  }
  const double res = karcher_residual(wk, ak, x);
  if (res <= tol) return {x, cfg.max_iter, res};
  throw NonConvergence("Karcher iteration did not reach the gradient tolerance");
}

HermitianMatrix karcher_mean(const WeightVector& w, const std::vector<HermitianMatrix>& as, const KarcherConfig& cfg) {
  return karcher_mean_detailed(w, as, cfg).mean;
}

HermitianMatrix karcher_mean(const std::vector<HermitianMatrix>& as, const KarcherConfig& cfg) {
  return karcher_mean(uniform_weights(as.size()), as, cfg);
}

HermitianMatrix inductive_mean(const std::vector<HermitianMatrix>& as) {
  check_inputs(as);
  HermitianMatrix s = as.front();
  for (std::size_t k = 2; k <= as.size(); ++k) s = weighted_geometric(s, as[k - 1], 1.0 / static_cast<double>(k));
  return s;
}

HermitianMatrix sturm_approximation(const WeightVector& w, const std::vector<HermitianMatrix>& as, int steps,
                                    std::uint64_t seed) {
  check_inputs(as);
  validate_weights(w, as.size());
  if (steps < 1) throw ConfigError("Sturm approximation needs at least one step");
  std::vector<double> cumulative(w.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) cumulative[i] = (acc += w[i]);
  Rng rng(seed);
  auto draw = [&]() {
    const double u = unit_open_closed(rng) * acc;
    const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t i = static_cast<std::size_t>(it - cumulative.begin());
    i = std::min(i, w.size() - 1);
    while (w[i] == 0.0 && i > 0) --i;  // never land on a zero-weight index
    return i;
  };
  HermitianMatrix s = as[draw()];
  for (int k = 2; k <= steps; ++k) {
    const std::size_t i = draw();
    s = weighted_geometric(s, as[i], 1.0 / static_cast<double>(k));
  }
  return s;
}

WeightVector sample_simplex(std::uint64_t seed, std::size_t m) {
  Rng rng(seed);
  WeightVector w(m);
  double s = 0.0;
  for (auto& x : w) s += (x = -std::log(unit_open_closed(rng)));
  for (auto& x : w) x /= s;
  return w;
}

SimplexMeasure SimplexMeasure::point(WeightVector w) {
  SimplexMeasure nu;
  nu.atoms.emplace_back(std::move(w), 1.0);
  return nu;
}

SimplexMeasure SimplexMeasure::uniform(int samples, std::uint64_t seed) {
  SimplexMeasure nu;
  nu.mc_uniform = true;
  nu.samples = samples;
  nu.seed = seed;
  return nu;
}

std::vector<std::pair<WeightVector, double>> SimplexMeasure::discretize(std::size_t m) const {
  if (!mc_uniform) {
    if (atoms.empty()) throw ConfigError("simplex measure is empty");
    double mass = 0.0;
    for (const auto& [w, p] : atoms) {
      validate_weights(w, m);
      if (!(p > 0.0)) throw ConfigError("simplex measure masses must be positive");
      mass += p;
    }
    if (std::abs(mass - 1.0) > 1e-12) throw ConfigError("simplex measure must have total mass 1");
    return atoms;
  }
  if (samples < 1) throw ConfigError("uniform simplex measure needs at least one sample");
  const std::size_t draws = (static_cast<std::size_t>(samples) + m - 1) / m;
  const double mass = 1.0 / static_cast<double>(draws * m);
  std::vector<std::pair<WeightVector, double>> out;
  out.reserve(draws * m);
  for (std::size_t d = 0; d < draws; ++d) {
    const WeightVector w = sample_simplex(mix_seed(seed, d), m);
    for (std::size_t shift = 0; shift < m; ++shift) {
      WeightVector r(m);
      for (std::size_t i = 0; i < m; ++i) r[(i + shift) % m] = w[i];
      out.emplace_back(std::move(r), mass);
    }
  }
  return out;
}

MultiMeanResult geodesic_mean_m_detailed(const SimplexMeasure& nu, const std::vector<HermitianMatrix>& as,
                                         const KarcherConfig& cfg) {
  check_inputs(as);
  const auto points = nu.discretize(as.size());
  MultiMeanResult out;
  out.mean = HermitianMatrix::zero(as.front().dim());
  out.average_weights.assign(as.size(), 0.0);
  for (const auto& [w, mass] : points) {
    out.mean += karcher_mean(w, as, cfg) * mass;
    for (std::size_t i = 0; i < w.size(); ++i) out.average_weights[i] += mass * w[i];
    ++out.evaluations;
  }
  return out;
}

HermitianMatrix geodesic_mean_m(const SimplexMeasure& nu, const std::vector<HermitianMatrix>& as,
                                const KarcherConfig& cfg) {
  return geodesic_mean_m_detailed(nu, as, cfg).mean;
}

}  // namespace matmeans

#include "matmeans/anti_norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "matmeans/errors.hpp"
#include "matmeans/sampling.hpp"

namespace matmeans {

namespace {

constexpr double kRestartAgreement = 1e-4;

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::vector<double> ascending(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x = std::max(x, 0.0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> matrix_spectrum(const HermitianMatrix& a) {
  std::vector<double> mu = eigenvalues(a).values;
  double top = 0.0;
  for (double x : mu) top = std::max(top, std::abs(x));
  const double cut = 64.0 * static_cast<double>(mu.size()) * std::numeric_limits<double>::epsilon() * top;
  for (double& x : mu) {
    if (x <= cut) x = 0.0;
  }
  return mu;
}

void check_k(int k, std::size_t n) {
  if (k < 1 || static_cast<std::size_t>(k) > n) throw ConfigError("k must lie in [1, n]");
}

// (sum (x_i / s)^q)^{1/q} * s, with s chosen so that no term overflows.
double power_sum_root(const std::vector<double>& x, double q, double s) {
  double acc = 0.0;
  for (double v : x) acc += std::pow(v / s, q);
  return s * std::pow(acc, 1.0 / q);
}

double norm_of(const NormSpec& spec, std::vector<double> v) {
  for (double& x : v) x = std::abs(x);
  std::sort(v.begin(), v.end(), std::greater<>());
  switch (spec.kind) {
    case NormKind::kyfan:
      check_k(spec.k, v.size());
      return std::accumulate(v.begin(), v.begin() + spec.k, 0.0);
    case NormKind::schatten:
      if (v.empty() || v.front() == 0.0) return 0.0;
      return power_sum_root(v, spec.p, v.front());
    case NormKind::operator_norm:
      return v.empty() ? 0.0 : v.front();
    case NormKind::trace:
      return std::accumulate(v.begin(), v.end(), 0.0);
  }
  return 0.0;
}

// |diag(mu)^{-p}|^{-1/p} for ascending mu with mu[0] > 0, scaled by mu[0].
double derived_value(const NormSpec& norm, const std::vector<double>& mu, double p) {
  const double m = mu.front();
  std::vector<double> scaled(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) scaled[i] = std::pow(mu[i] / m, -p);
  return m * std::pow(norm_of(norm, scaled), -1.0 / p);
}

double dot_desc_asc(const std::vector<double>& x_desc, const std::vector<double>& y_asc) {
  double s = 0.0;
  for (std::size_t i = 0; i < x_desc.size(); ++i) s += x_desc[i] * y_asc[i];
  return s;
}

struct DualProgram {
  const AntiNormSpec& spec;
  std::vector<double> x;  // descending

  double objective(const std::vector<double>& y) const {
    const double phi = evaluate_antinorm(spec, y);
    if (!(phi > 0.0)) return kInf;
    return dot_desc_asc(x, y) / phi;
  }
};

// Ascending y from non-negative increments: y_i = d_0 + ... + d_i.
std::vector<double> from_increments(const std::vector<double>& d) {
  std::vector<double> y(d.size());
  std::partial_sum(d.begin(), d.end(), y.begin());
  return y;
}

// Multiplicative descent d_j <- d_j exp(-eta d log F / d d_j) on the increments of y, normalized to
// mean(y) = 1. Working with increments keeps y sorted, so spectral anti-norms built from order
// statistics stay smooth, and tied entries of the optimum are increments tending to 0. The step
// grows after an accepted move and is halved after a rejected one, so F never increases.
double run_restart(const DualProgram& prog, const DualOptimizerConfig& opt, std::uint64_t seed) {
  const std::size_t n = prog.x.size();
  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> d(n);
  for (double& v : d) v = std::exp(gauss(rng));
  auto normalize = [n](std::vector<double>& inc) {
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) total += static_cast<double>(n - j) * inc[j];
    for (double& v : inc) v *= static_cast<double>(n) / total;
  };
  normalize(d);

  std::vector<double> y = from_increments(d);
  double f = prog.objective(y);
  double eta = opt.step;
  std::vector<double> grad(n), next(n);
  for (int t = 0; t < opt.steps && std::isfinite(f) && eta > 1e-14; ++t) {
    const double log_f = std::log(f);
    for (std::size_t j = 0; j < n; ++j) {
      const double h = 1e-6 * std::max(d[j], 1e-3);
      std::vector<double> up = y;
      for (std::size_t i = j; i < n; ++i) up[i] += h;
      const double f_up = std::log(prog.objective(up));
      if (d[j] > h) {
        std::vector<double> down = y;
        for (std::size_t i = j; i < n; ++i) down[i] -= h;
        grad[j] = (f_up - std::log(prog.objective(down))) / (2.0 * h);
      } else {
        grad[j] = (f_up - log_f) / h;
      }
    }
    for (std::size_t j = 0; j < n; ++j) next[j] = d[j] * std::exp(std::clamp(-eta * grad[j], -2.0, 2.0));
    normalize(next);
    const std::vector<double> y_next = from_increments(next);
    const double fn = prog.objective(y_next);
    if (fn < f) {
      f = fn;
      d.swap(next);
      y = y_next;
      eta = std::min(eta * 1.5, 4.0);
    } else {
      eta *= 0.5;
    }
  }
  // Drop increments that are still shrinking towards 0.
  for (double rel : {1e-3, 1e-5}) {
    std::vector<double> snapped = d;
    for (double& v : snapped) {
      if (v < rel) v = 0.0;
    }
    f = std::min(f, prog.objective(from_increments(snapped)));
  }
  return f;
}

DualResult numeric_dual(const AntiNormSpec& spec, std::vector<double> x, const DualOptimizerConfig& opt) {
  if (opt.restarts < 1 || opt.steps < 0 || !(opt.step > 0.0)) throw ConfigError("bad dual optimizer configuration");
  const std::size_t n = x.size();
  std::sort(x.begin(), x.end(), std::greater<>());
  DualProgram prog{spec, x};
  if (!(evaluate_antinorm(spec, std::vector<double>(n, 1.0)) > 0.0))
    throw ConfigError("dual of an anti-norm that vanishes at the identity");

  // Comonotone 0/1 vectors (ones on the j smallest entries of x) are always candidates.
  double candidates = kInf;
  for (std::size_t j = 1; j <= n; ++j) {
    std::vector<double> v(n, 0.0);
    std::fill(v.end() - static_cast<std::ptrdiff_t>(j), v.end(), 1.0);
    candidates = std::min(candidates, prog.objective(v));
  }
  std::vector<double> results;
  for (int r = 0; r < opt.restarts; ++r) {
    results.push_back(std::min(candidates, run_restart(prog, opt, mix_seed(opt.seed, static_cast<std::uint64_t>(r)))));
  }
  const auto [lo, hi] = std::minmax_element(results.begin(), results.end());
  const double gap = *hi > 0.0 ? (*hi - *lo) / *hi : 0.0;
  if (gap > kRestartAgreement) throw OptimizerFailure("dual anti-norm restarts disagree: relative gap " + fmt(gap));
  return {*lo, gap, false};
}

std::optional<double> closed_form_dual(const AntiNormSpec& spec, const std::vector<double>& mu_asc) {
  const std::size_t n = mu_asc.size();
  switch (spec.kind) {
    case AntiNormKind::kyfan_anti:
      if (static_cast<std::size_t>(spec.k) == n) return mu_asc.front();
      return std::nullopt;
    case AntiNormKind::schatten:
      if (spec.p == 1.0) return mu_asc.front();
      return evaluate_antinorm(AntiNormSpec::neg_schatten(spec.p / (1.0 - spec.p)), mu_asc);
    case AntiNormKind::neg_schatten:
      return evaluate_antinorm(AntiNormSpec::schatten(spec.p / (1.0 + spec.p)), mu_asc);
    case AntiNormKind::minkowski:
      return static_cast<double>(n) * evaluate_antinorm(spec, mu_asc);
    case AntiNormKind::delta:
      if (static_cast<std::size_t>(spec.k) == n)
        return static_cast<double>(n) * evaluate_antinorm(AntiNormSpec::minkowski(), mu_asc);
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

}  // namespace

NormSpec NormSpec::kyfan(int k) {
  if (k < 1) throw ConfigError("Ky Fan norm needs k >= 1");
  return {NormKind::kyfan, k, 1.0};
}

NormSpec NormSpec::schatten(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ConfigError("Schatten norm needs finite p >= 1");
  return {NormKind::schatten, 1, p};
}

NormSpec NormSpec::operator_norm() { return {NormKind::operator_norm, 1, 1.0}; }
NormSpec NormSpec::trace() { return {NormKind::trace, 1, 1.0}; }

std::string NormSpec::str() const {
  switch (kind) {
    case NormKind::kyfan: return "norm:kyfan:k=" + std::to_string(k);
    case NormKind::schatten: return "norm:schatten:p=" + fmt(p);
    case NormKind::operator_norm: return "norm:operator";
    case NormKind::trace: return "norm:trace";
  }
  return "norm:?";
}

AntiNormSpec AntiNormSpec::kyfan_anti(int k) {
  if (k < 1) throw ConfigError("Ky Fan anti-norm needs k >= 1");
  AntiNormSpec s;
  s.kind = AntiNormKind::kyfan_anti;
  s.k = k;
  return s;
}

AntiNormSpec AntiNormSpec::schatten(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ConfigError("Schatten anti-norm needs p in (0,1]");
  AntiNormSpec s;
  s.kind = AntiNormKind::schatten;
  s.p = p;
  return s;
}

AntiNormSpec AntiNormSpec::neg_schatten(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("negative Schatten anti-norm needs p > 0");
  AntiNormSpec s;
  s.kind = AntiNormKind::neg_schatten;
  s.p = p;
  return s;
}

AntiNormSpec AntiNormSpec::schatten_kyfan(double p, int k) {
  if (!(p > 0.0) || !std::isfinite(p) || k < 1) throw ConfigError("Schatten-Ky Fan anti-norm needs p > 0, k >= 1");
  AntiNormSpec s;
  s.kind = AntiNormKind::schatten_kyfan;
  s.p = p;
  s.k = k;
  return s;
}

AntiNormSpec AntiNormSpec::delta(int k) {
  if (k < 1) throw ConfigError("Delta_k needs k >= 1");
  AntiNormSpec s;
  s.kind = AntiNormKind::delta;
  s.k = k;
  return s;
}

AntiNormSpec AntiNormSpec::minkowski() { return AntiNormSpec{}; }

AntiNormSpec AntiNormSpec::derived(NormSpec norm, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("derived anti-norm needs p > 0");
  AntiNormSpec s;
  s.kind = AntiNormKind::derived;
  s.norm = norm;
  s.p = p;
  return s;
}

AntiNormSpec AntiNormSpec::dual_of(AntiNormSpec base, DualOptimizerConfig opt) {
  AntiNormSpec s;
  s.kind = AntiNormKind::dual_of;
  s.base = std::make_shared<const AntiNormSpec>(std::move(base));
  s.optimizer = opt;
  return s;
}

std::string AntiNormSpec::str() const {
  switch (kind) {
    case AntiNormKind::kyfan_anti: return "anorm:kyfan:k=" + std::to_string(k);
    case AntiNormKind::schatten: return "anorm:schatten:p=" + fmt(p);
    case AntiNormKind::neg_schatten: return "anorm:negschatten:p=" + fmt(p);
    case AntiNormKind::schatten_kyfan: return "anorm:schattenkyfan:p=" + fmt(p) + ",k=" + std::to_string(k);
    case AntiNormKind::delta: return "anorm:delta:k=" + std::to_string(k);
    case AntiNormKind::minkowski: return "anorm:minkowski";
    case AntiNormKind::derived: return "anorm:derived:norm=" + norm.str().substr(5) + ",p=" + fmt(p);
    case AntiNormKind::dual_of: return "anorm:dual:of=" + base->str();
  }
  return "anorm:?";
}

double evaluate_norm(const NormSpec& spec, std::span<const double> spectrum) {
  return norm_of(spec, std::vector<double>(spectrum.begin(), spectrum.end()));
}

double evaluate_norm(const NormSpec& spec, const HermitianMatrix& a) { return evaluate_norm(spec, eigenvalues(a).values); }

double evaluate_antinorm(const AntiNormSpec& spec, std::span<const double> spectrum) {
  const std::vector<double> mu = ascending(spectrum);
  const std::size_t n = mu.size();
  if (n == 0) throw ConfigError("anti-norm of an empty matrix");
  switch (spec.kind) {
    case AntiNormKind::kyfan_anti:
      check_k(spec.k, n);
      return std::accumulate(mu.begin(), mu.begin() + spec.k, 0.0);
    case AntiNormKind::schatten:
      if (mu.back() == 0.0) return 0.0;
      return power_sum_root(mu, spec.p, mu.back());
    case AntiNormKind::neg_schatten:
      if (mu.front() == 0.0) return 0.0;
      return power_sum_root(mu, -spec.p, mu.front());
    case AntiNormKind::schatten_kyfan:
      check_k(spec.k, n);
      if (mu.front() == 0.0) return 0.0;
      return power_sum_root(std::vector<double>(mu.begin(), mu.begin() + spec.k), -spec.p, mu.front());
    case AntiNormKind::delta:
    case AntiNormKind::minkowski: {
      const int k = spec.kind == AntiNormKind::delta ? spec.k : static_cast<int>(n);
      check_k(k, n);
      if (mu.front() == 0.0) return 0.0;
      double log_sum = 0.0;
      for (int j = 0; j < k; ++j) log_sum += std::log(mu[static_cast<std::size_t>(j)]);
      return std::exp(log_sum / k);
    }
    case AntiNormKind::derived:
      if (mu.front() == 0.0) return 0.0;
      return derived_value(spec.norm, mu, spec.p);
    case AntiNormKind::dual_of:
      return dual_antinorm(*spec.base, mu, spec.optimizer).value;
  }
  return 0.0;
}

double evaluate_antinorm(const AntiNormSpec& spec, const HermitianMatrix& a) {
  return evaluate_antinorm(spec, matrix_spectrum(a));
}

DualResult dual_antinorm(const AntiNormSpec& spec, std::span<const double> spectrum, const DualOptimizerConfig& opt) {
  const std::vector<double> mu = ascending(spectrum);
  if (mu.empty()) throw ConfigError("dual anti-norm of an empty matrix");
  if (opt.use_closed_form) {
    if (const auto v = closed_form_dual(spec, mu)) return {*v, 0.0, true};
  }
  return numeric_dual(spec, mu, opt);
}

DualResult dual_antinorm(const AntiNormSpec& spec, const HermitianMatrix& a, const DualOptimizerConfig& opt) {
  return dual_antinorm(spec, matrix_spectrum(a), opt);
}

bool is_regular(const AntiNormSpec& spec, int n) {
  switch (spec.kind) {
    case AntiNormKind::kyfan_anti: return spec.k == n;
    case AntiNormKind::schatten: return true;
    case AntiNormKind::dual_of: return false;
    default: return n == 1;  // vanish on every singular matrix
  }
}

ProjectionForm kyfan_anti_projection_form(const HermitianMatrix& z, int k, int trials, std::uint64_t seed) {
  const int n = z.dim();
  check_k(k, static_cast<std::size_t>(n));
  const EigDecomposition e = eigh(z);
  ProjectionForm out;
  for (int j = 0; j < k; ++j) out.value += e.spectrum.values[static_cast<std::size_t>(n - 1 - j)];
  const CMatrix v = e.basis.rightCols(k);
  out.projection = v * v.adjoint();
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const CMatrix u = sample_unitary(rng, n).leftCols(k);
    const double tr = (u.adjoint() * z.matrix() * u).trace().real();
    out.min_trial_excess = std::min(out.min_trial_excess, tr - out.value);
    ++out.trials;
  }
  return out;
}

DecompositionForm kyfan_anti_decomposition_form(const HermitianMatrix& z, int k) {
  const int n = z.dim();
  check_k(k, static_cast<std::size_t>(n));
  const EigDecomposition e = eigh(z);
  const double tau = e.spectrum.values[static_cast<std::size_t>(n - k)];
  DecompositionForm out;
  out.a = matrix_function(e, [tau](double t) { return std::max(t, tau); }, Interval::real_line(), 0.0);
  out.b = matrix_function(e, [tau](double t) { return std::max(tau - t, 0.0); }, Interval::real_line(), 0.0);
  double excess = 0.0;
  for (double mu : e.spectrum.values) excess += std::max(tau - mu, 0.0);
  out.value = static_cast<double>(k) * tau - excess;
  return out;
}

}  // namespace matmeans

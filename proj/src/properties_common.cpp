#include <algorithm>
#include <cmath>

#include "matmeans/errors.hpp"
#include "matmeans/majorization.hpp"
#include "matmeans/matrix_io.hpp"
#include "properties_internal.hpp"

namespace matmeans::detail {

namespace {
constexpr int kCycleDims[] = {2, 3, 4, 6};
}

TrialContext::TrialContext(const PropertyCase& c, int t)
    : pc(c),
      knobs(c.knobs),
      trial(t),
      dim(c.sampler.dim > 0 ? c.sampler.dim : kCycleDims[t % 4]),
      rng(mix_seed(c.sampler.seed, static_cast<std::uint64_t>(t))),
      radix_(c.sampler.dim > 0 ? 1 : 4) {}

std::size_t TrialContext::choice(std::size_t n) {
  if (n == 0) throw ConfigError("empty parameter grid");
  const std::size_t i = (static_cast<std::size_t>(trial) / radix_) % n;
  radix_ *= n;
  return i;
}

HermitianMatrix TrialContext::pd(int n) {
  const double c = condition() > 1.0 ? log_uniform(rng, 1.0, condition()) : 1.0;
  return sample_psd(rng, n, c, 0);
}

HermitianMatrix TrialContext::psd(int n) {
  if (!pc.sampler.invertible && n >= 2 && uniform(rng, 0.0, 1.0) < 0.2) {
    const double c = condition() > 1.0 ? log_uniform(rng, 1.0, condition()) : 1.0;
    return sample_psd(rng, n, c, uniform_int(rng, 1, n - 1));
  }
  return pd(n);
}

HermitianMatrix TrialContext::in_domain(int n, const Interval& d) {
  if (d.lo == 0.0 && d.hi == kInf) return d.lo_open ? pd(n) : psd(n);
  if (d.lo > 0.0 && d.hi == kInf) return pd(n) * d.lo + HermitianMatrix::identity(n) * d.lo;
  if (d.bounded()) {
    const double pad = 1e-3 * (d.hi - d.lo);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = uniform(rng, d.lo + (d.lo_open ? pad : 0.0), d.hi - (d.hi_open ? pad : 0.0));
    std::sort(v.begin(), v.end(), std::greater<>());
    return with_spectrum(sample_unitary(rng, n), v);
  }
  throw ConfigError("no sampler for domain " + d.str());
}

double rel_gap(double lhs, double rhs) { return (lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs)); }

json mat(const HermitianMatrix& a) { return to_json(a); }

HermitianMatrix mat(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("witness lacks '") + key + "'");
  return hermitian_from_json(j.at(key));
}

std::vector<HermitianMatrix> mats(const json& j, const char* key) {
  std::vector<HermitianMatrix> out;
  for (const auto& x : j.at(key)) out.push_back(hermitian_from_json(x));
  return out;
}

json mats(const std::vector<HermitianMatrix>& as) {
  json out = json::array();
  for (const auto& a : as) out.push_back(to_json(a));
  return out;
}

std::string knob_or(TrialContext& ctx, const std::optional<std::string>& knob, const std::vector<std::string>& grid) {
  return knob ? *knob : ctx.pick(grid);
}

double knob_or(TrialContext& ctx, const std::optional<double>& knob, const std::vector<double>& grid) {
  return knob ? *knob : ctx.pick(grid);
}

MapDraw draw_map(TrialContext& ctx, const std::string& name, int n) {
  if (name == "pinch-diag") return {name, n, {}};
  if (name == "two-block") return {name, 2 * n, {}};
  if (name == "schur") return {name, n, mat(sample_correlation(ctx.rng, n))};
  if (name == "schur-sub") {
    // D^{1/2} C D^{1/2} with D in [1/4, 1]: positive, diagonal at most 1.
    const HermitianMatrix c = sample_correlation(ctx.rng, n);
    std::vector<double> d(static_cast<std::size_t>(n));
    for (auto& x : d) x = std::sqrt(uniform(ctx.rng, 0.25, 1.0));
    const CMatrix dm = Eigen::VectorXd::Map(d.data(), n).cast<Complex>().asDiagonal();
    return {name, n, mat(congruence(dm, c))};
  }
  throw ConfigError("unknown map '" + name + "' (pinch-diag, two-block, schur, schur-sub)");
}

PositiveMap map_from(const json& j) {
  const std::string name = j.at("map");
  const int n = j.at("out_dim");
  if (name == "pinch-diag") return PositiveMap::pinch_diagonal(n);
  if (name == "two-block") return PositiveMap::two_block_average(n);
  if (name == "schur" || name == "schur-sub") return PositiveMap::schur(mat(j, "multiplier"));
  throw ConfigError("unknown map '" + name + "'");
}

HermitianMatrix apply_function(const IntervalFunction& f, const HermitianMatrix& a) {
  return matrix_function(a, f.eval, f.domain);
}

std::vector<double> spectrum(const HermitianMatrix& a) { return eigenvalues(a).values; }

double top_root(const std::vector<double>& mu, int k) {
  return geometric_mean_of(std::span<const double>(mu.data(), static_cast<std::size_t>(k)));
}

double bottom_root(const std::vector<double>& mu, int k) {
  return geometric_mean_of(std::span<const double>(mu.data() + mu.size() - static_cast<std::size_t>(k),
                                                   static_cast<std::size_t>(k)));
}

std::vector<std::string> derived_antinorm_grid(int n) {
  std::vector<std::string> out;
  std::vector<int> ks{1, n};
  if (n > 2) ks.insert(ks.begin() + 1, (n + 1) / 2);
  for (int k : ks) {
    for (double p : {0.5, 1.0, 2.0}) out.push_back(AntiNormSpec::derived(NormSpec::kyfan(k), p).str());
  }
  for (double p : {0.5, 1.0}) out.push_back(AntiNormSpec::neg_schatten(p).str());
  return out;
}

std::vector<std::string> antinorm_grid(int n) {
  std::vector<std::string> out = derived_antinorm_grid(n);
  for (int k : {1, n}) {
    out.push_back(AntiNormSpec::kyfan_anti(k).str());
    out.push_back(AntiNormSpec::delta(k).str());
  }
  for (double p : {0.25, 0.5, 1.0}) out.push_back(AntiNormSpec::schatten(p).str());
  out.push_back(AntiNormSpec::schatten_kyfan(1.0, std::max(1, n - 1)).str());
  out.push_back(AntiNormSpec::minkowski().str());
  out.push_back(AntiNormSpec::derived(NormSpec::schatten(2.0), 1.0).str());
  out.push_back(AntiNormSpec::derived(NormSpec::operator_norm(), 0.5).str());
  return out;
}

std::vector<std::string> norm_grid(int n) {
  std::vector<std::string> out{NormSpec::operator_norm().str(), NormSpec::trace().str()};
  if (n > 2) out.push_back(NormSpec::kyfan((n + 1) / 2).str());
  for (double p : {1.5, 2.0, 4.0}) out.push_back(NormSpec::schatten(p).str());
  return out;
}

const std::vector<CatalogMean>& certified_means() {
  static const std::vector<CatalogMean> means = [] {
    std::vector<CatalogMean> out;
    const auto cat = rf_catalog();
    for (std::size_t i = 0; i < cat.size(); ++i) {
      const GeomClass v = certify_geom_class(cat[i]).verdict;
      if (v != GeomClass::unknown) out.push_back({i, cat[i], v});
    }
    return out;
  }();
  return means;
}

RepresentingFunction catalog_mean(std::size_t index) {
  const auto cat = rf_catalog();
  if (index >= cat.size()) throw ConfigError("catalog mean index out of range");
  return cat[index];
}

}  // namespace matmeans::detail

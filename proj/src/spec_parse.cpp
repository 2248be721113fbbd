#include "matmeans/spec_parse.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "matmeans/errors.hpp"
#include "matmeans/matrix_io.hpp"
#include "matmeans/multi_geodesic.hpp"
#include "matmeans/operator_means.hpp"

namespace matmeans {

namespace {

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

double to_double(const std::string& s, const std::string& spec) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("bad number '" + s + "' in '" + spec + "'");
  }
  return v;
}

int to_int(const std::string& s, const std::string& spec) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError("bad integer '" + s + "' in '" + spec + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// "a=1,b=2" -> {a: 1, b: 2}; every key must be in `allowed`.
std::map<std::string, std::string> key_values(const std::string& s, const std::vector<std::string>& allowed,
                                              const std::string& spec) {
  std::map<std::string, std::string> out;
  if (s.empty()) return out;
  for (const auto& part : split(s, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value in '" + spec + "'");
    const std::string key = part.substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in '" + spec + "'");
    }
    out[key] = part.substr(eq + 1);
  }
  return out;
}

// Splits "family:rest" after stripping `prefix`.
std::pair<std::string, std::string> family(const std::string& spec, const std::string& prefix) {
  if (!starts_with(spec, prefix)) throw ConfigError("expected '" + prefix + "...' but got '" + spec + "'");
  const std::string body = spec.substr(prefix.size());
  const auto colon = body.find(':');
  if (colon == std::string::npos) return {body, ""};
  return {body.substr(0, colon), body.substr(colon + 1)};
}

BinaryMean kubo_ando_mean(const std::string& name, RepresentingFunction h) {
  return {name, [h](const HermitianMatrix& a, const HermitianMatrix& b) { return kubo_ando(h, a, b); },
          [h](double a, double b) { return scalar_mean(h, a, b); }};
}

}  // namespace

BinaryMean parse_mean(const std::string& spec) {
  const auto [fam, rest] = family(spec, "mean:");
  if (fam == "arith" && rest.empty()) return kubo_ando_mean(spec, rf_arithmetic());
  if (fam == "harm" && rest.empty()) return kubo_ando_mean(spec, rf_harmonic());
  if (fam == "geo") {
    const auto kv = key_values(rest, {"alpha"}, spec);
    const double alpha = kv.count("alpha") ? to_double(kv.at("alpha"), spec) : 0.5;
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0,1]: " + spec);
    return {spec, [alpha](const HermitianMatrix& a, const HermitianMatrix& b) { return weighted_geometric(a, b, alpha); },
            [alpha](double a, double b) { return std::pow(a, 1.0 - alpha) * std::pow(b, alpha); }};
  }
  if (fam == "power") {
    const auto kv = key_values(rest, {"p"}, spec);
    if (!kv.count("p")) throw ConfigError("missing p in " + spec);
    const double p = to_double(kv.at("p"), spec);
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("power mean needs p in [0,1]: " + spec);
    return {spec, [p](const HermitianMatrix& a, const HermitianMatrix& b) { return power_mean(a, b, p); },
            [p](double a, double b) {
              if (p == 0.0) return std::sqrt(a * b);
              return std::pow((std::pow(a, p) + std::pow(b, p)) / 2.0, 1.0 / p);
            }};
  }
  if (fam == "bp") {
    const auto kv = key_values(rest, {"p"}, spec);
    if (!kv.count("p")) throw ConfigError("missing p in " + spec);
    const double p = to_double(kv.at("p"), spec);
    if (!(p >= -1.0 && p <= 1.0)) throw ConfigError("b_p needs p in [-1,1]: " + spec);
    return kubo_ando_mean(spec, rf_power(p));
  }
  if (fam == "falpha") {
    const auto kv = key_values(rest, {"a"}, spec);
    if (!kv.count("a")) throw ConfigError("missing a in " + spec);
    const double a = to_double(kv.at("a"), spec);
    if (!(a >= -1.0 && a <= 2.0)) throw ConfigError("f_alpha needs alpha in [-1,2]: " + spec);
    return kubo_ando_mean(spec, rf_falpha(a));
  }
  if (fam == "heinz") {
    const auto kv = key_values(rest, {"alpha"}, spec);
    const double alpha = kv.count("alpha") ? to_double(kv.at("alpha"), spec) : 0.25;
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0,1]: " + spec);
    return kubo_ando_mean(spec, rf_heinz(alpha));
  }
  if (fam == "geodesic") {
    GeodesicMeasure nu;
    if (rest == "uniform") {
      nu = GeodesicMeasure::uniform();
    } else if (starts_with(rest, "atoms=")) {
      // (alpha,weight),(alpha,weight),...
      std::vector<std::pair<double, double>> atoms;
      std::string body = rest.substr(6);
      std::size_t pos = 0;
      while (pos < body.size()) {
        if (body[pos] == ',') {
          ++pos;
          continue;
        }
        if (body[pos] != '(') throw ConfigError("malformed atom list in " + spec);
        const auto close = body.find(')', pos);
        if (close == std::string::npos) throw ConfigError("malformed atom list in " + spec);
        const auto parts = split(body.substr(pos + 1, close - pos - 1), ',');
        if (parts.size() != 2) throw ConfigError("atoms are (alpha,weight) pairs: " + spec);
        atoms.emplace_back(to_double(parts[0], spec), to_double(parts[1], spec));
        pos = close + 1;
      }
      if (atoms.empty()) throw ConfigError("empty atom list in " + spec);
      nu = GeodesicMeasure::from_atoms(std::move(atoms));
    } else {
      throw ConfigError("geodesic mean needs 'uniform' or 'atoms=...': " + spec);
    }
    nu.validate();
    return kubo_ando_mean(spec, rf_from_measure(nu, spec));
  }
  throw ConfigError("unknown mean '" + spec + "'");
}

MultiMean parse_multi_mean(const std::string& spec) {
  const auto [fam, rest] = family(spec, "mmean:");
  if (fam == "karcher") {
    if (rest.empty()) {
      return {spec, [](const std::vector<HermitianMatrix>& as) { return karcher_mean(as); }};
    }
    // w=0.2,0.3,0.5 holds commas, so it is not a key=value list.
    if (!starts_with(rest, "w=")) throw ConfigError("Karcher mean takes w=...: " + spec);
    WeightVector w;
    for (const auto& part : split(rest.substr(2), ',')) w.push_back(to_double(part, spec));
    return {spec, [w](const std::vector<HermitianMatrix>& as) { return karcher_mean(w, as); }};
  }
  if (fam == "inductive" && rest.empty()) {
    return {spec, [](const std::vector<HermitianMatrix>& as) { return inductive_mean(as); }};
  }
  if (fam == "logarithmic") {
    const auto kv = key_values(rest, {"S", "seed"}, spec);
    const int s = kv.count("S") ? to_int(kv.at("S"), spec) : 2000;
    const std::uint64_t seed = kv.count("seed") ? static_cast<std::uint64_t>(to_int(kv.at("seed"), spec)) : 0;
    if (s < 1) throw ConfigError("S must be positive: " + spec);
    return {spec, [s, seed](const std::vector<HermitianMatrix>& as) {
              return geodesic_mean_m(SimplexMeasure::uniform(s, seed), as);
            }};
  }
  throw ConfigError("unknown multi-variable mean '" + spec + "'");
}

NormSpec parse_norm(const std::string& spec) {
  const auto [fam, rest] = family(spec, "norm:");
  if (fam == "kyfan") {
    const auto kv = key_values(rest, {"k"}, spec);
    if (!kv.count("k")) throw ConfigError("missing k in " + spec);
    return NormSpec::kyfan(to_int(kv.at("k"), spec));
  }
  if (fam == "schatten") {
    const auto kv = key_values(rest, {"p"}, spec);
    if (!kv.count("p")) throw ConfigError("missing p in " + spec);
    return NormSpec::schatten(to_double(kv.at("p"), spec));
  }
  if (fam == "operator" && rest.empty()) return NormSpec::operator_norm();
  if (fam == "trace" && rest.empty()) return NormSpec::trace();
  throw ConfigError("unknown norm '" + spec + "'");
}

AntiNormSpec parse_antinorm(const std::string& spec) {
  const auto [fam, rest] = family(spec, "anorm:");
  if (fam == "kyfan") {
    const auto kv = key_values(rest, {"k"}, spec);
    if (!kv.count("k")) throw ConfigError("missing k in " + spec);
    return AntiNormSpec::kyfan_anti(to_int(kv.at("k"), spec));
  }
  if (fam == "schatten" || fam == "negschatten") {
    const auto kv = key_values(rest, {"p"}, spec);
    if (!kv.count("p")) throw ConfigError("missing p in " + spec);
    const double p = to_double(kv.at("p"), spec);
    return fam == "schatten" ? AntiNormSpec::schatten(p) : AntiNormSpec::neg_schatten(p);
  }
  if (fam == "schattenkyfan") {
    const auto kv = key_values(rest, {"p", "k"}, spec);
    if (!kv.count("p") || !kv.count("k")) throw ConfigError("need p and k in " + spec);
    return AntiNormSpec::schatten_kyfan(to_double(kv.at("p"), spec), to_int(kv.at("k"), spec));
  }
  if (fam == "delta") {
    const auto kv = key_values(rest, {"k"}, spec);
    if (!kv.count("k")) throw ConfigError("missing k in " + spec);
    return AntiNormSpec::delta(to_int(kv.at("k"), spec));
  }
  if (fam == "minkowski" && rest.empty()) return AntiNormSpec::minkowski();
  if (fam == "derived") {
    // norm=<norm body>,p=<p>; the norm body may itself contain "p=".
    if (!starts_with(rest, "norm=")) throw ConfigError("derived anti-norm needs norm=...: " + spec);
    const auto cut = rest.rfind(",p=");
    if (cut == std::string::npos) throw ConfigError("derived anti-norm needs ,p=...: " + spec);
    const NormSpec n = parse_norm("norm:" + rest.substr(5, cut - 5));
    return AntiNormSpec::derived(n, to_double(rest.substr(cut + 3), spec));
  }
  if (fam == "dual") {
    if (!starts_with(rest, "of=")) throw ConfigError("dual anti-norm needs of=...: " + spec);
    std::string inner = rest.substr(3);
    if (!starts_with(inner, "anorm:")) inner = "anorm:" + inner;
    return AntiNormSpec::dual_of(parse_antinorm(inner));
  }
  throw ConfigError("unknown anti-norm '" + spec + "'");
}

PositiveMap parse_map(const std::string& spec, int n) {
  const auto [fam, rest] = family(spec, "map:");
  if (fam == "pinch-diag" && rest.empty()) return PositiveMap::pinch_diagonal(n);
  if (fam == "two-block" && rest.empty()) return PositiveMap::two_block_average(n);
  if (fam == "schur" && !rest.empty()) return PositiveMap::schur(read_matrix_file(rest));
  if (fam == "kraus" && !rest.empty()) {
    std::vector<CMatrix> ops;
    for (const auto& file : split(rest, ',')) ops.push_back(read_cmatrix_file(file));
    return PositiveMap::kraus(std::move(ops));
  }
  throw ConfigError("unknown map '" + spec + "'");
}

IntervalFunction parse_function(const std::string& spec) {
  return function_by_name(starts_with(spec, "f:") ? spec.substr(2) : spec);
}

}  // namespace matmeans

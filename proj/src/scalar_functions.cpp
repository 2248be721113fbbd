#include "matmeans/scalar_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "matmeans/errors.hpp"

namespace matmeans {

namespace {

double parse_number(const std::string& text, const std::string& name) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric parameter '" + text + "' in function name " + name);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

IntervalFunction make(std::string name, Interval dom, ScalarFunction f, Monotone m, ClassClaim c) {
  return IntervalFunction{std::move(name), dom, std::move(f), m, c};
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

IntervalFunction power_function(double q) {
  const std::string name = "pow:" + fmt(q);
  if (q < 0.0) {
    return make(name, Interval::positive(), [q](double t) { return std::pow(t, q); }, Monotone::decreasing,
                ClassClaim::doubly_convex);
  }
  const Monotone m = q == 0.0 ? Monotone::none : Monotone::increasing;
  const ClassClaim c = q <= 1.0 ? ClassClaim::doubly_concave : ClassClaim::doubly_convex;
  return make(name, Interval::nonnegative(), [q](double t) { return std::pow(t, q); }, m, c);
}

IntervalFunction posynomial(const std::string& name, const std::string& args) {
  std::vector<std::pair<double, double>> terms;  // (coefficient, exponent)
  bool has_negative = false;
  for (const auto& part : split(args, ',')) {
    const auto at = part.find('@');
    if (at == std::string::npos) throw ConfigError("posy terms are written c@a: " + name);
    const double c = parse_number(part.substr(0, at), name);
    const double a = parse_number(part.substr(at + 1), name);
    if (c <= 0.0) throw ConfigError("posy coefficients must be positive: " + name);
    if (a > 0.0 && a < 1.0) throw ConfigError("posy exponents must avoid (0,1): " + name);
    has_negative = has_negative || a < 0.0;
    terms.emplace_back(c, a);
  }
  if (terms.empty()) throw ConfigError("posy needs at least one term");
  auto f = [terms](double t) {
    double s = 0.0;
    for (const auto& [c, a] : terms) s += c * std::pow(t, a);
    return s;
  };
  return make(name, has_negative ? Interval::positive() : Interval::nonnegative(), f, Monotone::none,
              ClassClaim::doubly_convex);
}

Interval power_image(const Interval& d, double p) {
  auto img = [p](double x) { return std::isinf(x) ? x : std::pow(x, p); };
  return Interval{img(d.lo), img(d.hi), d.lo_open, d.hi_open};
}

Interval intersect(const Interval& a, const Interval& b) {
  Interval out;
  if (a.lo > b.lo || (a.lo == b.lo && a.lo_open)) {
    out.lo = a.lo;
    out.lo_open = a.lo_open;
  } else {
    out.lo = b.lo;
    out.lo_open = b.lo_open;
  }
  if (a.hi < b.hi || (a.hi == b.hi && a.hi_open)) {
    out.hi = a.hi;
    out.hi_open = a.hi_open;
  } else {
    out.hi = b.hi;
    out.hi_open = b.hi_open;
  }
  return out;
}

enum class Shape { concave, convex };

// Normalized slack of one pair; positive when the inequality holds.
double midpoint_slack(const IntervalFunction& f, double x, double y, Shape shape) {
  const double fx = f(x), fy = f(y);
  const double diff = f(0.5 * (x + y)) - 0.5 * (fx + fy);
  const double s = shape == Shape::concave ? diff : -diff;
  return s / (1.0 + std::abs(fx) + std::abs(fy));
}

double geometric_slack(const IntervalFunction& f, double x, double y, Shape shape) {
  const double fx = f(x), fy = f(y);
  const double diff = f(std::sqrt(x * y)) - std::sqrt(std::max(fx, 0.0) * std::max(fy, 0.0));
  const double s = shape == Shape::concave ? diff : -diff;
  return s / (1.0 + std::abs(fx) + std::abs(fy));
}

ClassReport certify(const IntervalFunction& f, int grid_size, double tol, const std::optional<Interval>& window,
                    Shape shape, bool geometric) {
  const auto grid = certification_grid(f.domain, grid_size, window);
  ClassReport r;
  double worst_mid = kInf, worst_geo = kInf;
  auto note = [&r](double s, double x, double y) {
    if (s < r.worst_violation) {
      r.worst_violation = s;
      r.worst_x = x;
      r.worst_y = y;
    }
  };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double x = grid[i], y = grid[j];
      const double m = midpoint_slack(f, x, y, shape);
      worst_mid = std::min(worst_mid, m);
      note(m, x, y);
      if (geometric) {
        const double g = geometric_slack(f, x, y, shape);
        worst_geo = std::min(worst_geo, g);
        note(g, x, y);
      }
    }
  }
  r.midpoint_ok = !(worst_mid < -tol);
  r.geometric_ok = !(worst_geo < -tol);
  return r;
}

IntervalFunction power_transform(const IntervalFunction& f, double p, const char* label) {
  IntervalFunction out;
  out.name = std::string(label) + "(" + f.name + "," + fmt(p) + ")";
  out.domain = power_image(f.domain, p);
  auto inner = f.eval;
  out.eval = [inner, p](double t) { return std::pow(inner(std::pow(t, 1.0 / p)), p); };
  out.monotone = f.monotone;
  out.class_claim = ClassClaim::unclassified;
  return out;
}

}  // namespace

std::string to_string(ClassClaim c) {
  switch (c) {
    case ClassClaim::doubly_concave:
      return "doubly_concave";
    case ClassClaim::doubly_convex:
      return "doubly_convex";
    default:
      return "unclassified";
  }
}

IntervalFunction function_by_name(const std::string& name) {
  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : name.substr(colon + 1);
  const auto inc = Monotone::increasing;
  const auto dec = Monotone::decreasing;
  const auto none = Monotone::none;
  const auto dcv = ClassClaim::doubly_concave;
  const auto dcx = ClassClaim::doubly_convex;
  const auto unc = ClassClaim::unclassified;
  const double pi = std::numbers::pi;

  auto need_args = [&](bool want) {
    if (want == args.empty()) throw ConfigError("wrong parameters for function " + name);
  };

  if (head == "pow") {
    need_args(true);
    return power_function(parse_number(args, name));
  }
  if (head == "ratio") {
    need_args(false);
    return make(name, Interval::nonnegative(), [](double t) { return t / (t + 1.0); }, inc, dcv);
  }
  if (head == "ratio_sqrt") {
    need_args(false);
    return make(name, Interval::nonnegative(), [](double t) { return t / std::sqrt(t + 1.0); }, inc, dcv);
  }
  if (head == "one_minus_exp") {
    need_args(false);
    return make(name, Interval::nonnegative(), [](double t) { return -std::expm1(-t); }, inc, dcv);
  }
  if (head == "log") {
    need_args(false);
    return make(name, Interval::closed_open(1.0, kInf), [](double t) { return std::log(t); }, inc, dcv);
  }
  if (head == "log1p") {
    need_args(false);
    return make(name, Interval::nonnegative(), [](double t) { return std::log1p(t); }, inc, unc);
  }
  if (head == "shifted_pow") {
    need_args(true);
    const double p = parse_number(args, name);
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("shifted_pow needs p in (0,1]");
    return make(name, Interval::closed_open(1.0, kInf),
                [p](double t) { return std::pow(std::max(t - 1.0, 0.0), p); }, inc, dcv);
  }
  if (head == "root_diff") {
    need_args(true);
    const double q = parse_number(args, name);
    if (!(q >= 1.0)) throw ConfigError("root_diff needs q >= 1");
    return make(name, Interval::closed_open(1.0, kInf),
                [q](double t) { return std::pow(std::max(std::pow(t, q) - 1.0, 0.0), 1.0 / q); }, inc, dcv);
  }
  if (head == "parabola") {
    need_args(false);
    return make(name, Interval::closed(0.0, 1.0), [](double t) { return t * (1.0 - t); }, none, dcv);
  }
  if (head == "neg_tlogt") {
    need_args(false);
    return make(name, Interval::closed(0.0, 1.0), [](double t) { return t > 0.0 ? -t * std::log(t) : 0.0; }, none,
                dcv);
  }
  if (head == "circle") {
    need_args(false);
    return make(name, Interval::closed(0.0, 1.0), [](double t) { return std::sqrt(std::max(1.0 - t * t, 0.0)); },
                dec, dcv);
  }
  if (head == "sin") {
    need_args(false);
    return make(name, Interval::closed(0.0, pi), [](double t) { return std::max(std::sin(t), 0.0); }, none, dcv);
  }
  if (head == "cos") {
    need_args(false);
    return make(name, Interval::closed(0.0, pi / 2), [](double t) { return std::max(std::cos(t), 0.0); }, dec,
                dcv);
  }
  if (head == "sincos") {
    const auto parts = split(args, ':');
    if (parts.size() != 2) throw ConfigError("sincos needs two exponents: sincos:a:b");
    const double a = parse_number(parts[0], name);
    const double b = parse_number(parts[1], name);
    if (a < 0.0 || b < 0.0 || a + b > 1.0) throw ConfigError("sincos needs a, b >= 0 with a + b <= 1");
    return make(name, Interval::closed(0.0, pi / 2),
                [a, b](double t) {
                  return std::pow(std::max(std::sin(t), 0.0), a) * std::pow(std::max(std::cos(t), 0.0), b);
                },
                none, dcv);
  }
  if (head == "tent") {
    need_args(true);
    const double a = parse_number(args, name);
    if (!(a > 0.0)) throw ConfigError("tent needs a > 0");
    return make(name, Interval::closed(0.0, 2.0 * a), [a](double t) { return a - std::abs(t - a); }, none, dcv);
  }
  if (head == "expm1") {
    need_args(false);
    return make(name, Interval::nonnegative(), [](double t) { return std::expm1(t); }, inc, dcx);
  }
  if (head == "exp_neg") {
    need_args(false);
    return make(name, Interval::nonnegative(), [](double t) { return std::exp(-t); }, dec, unc);
  }
  if (head == "inv") {
    need_args(false);
    return make(name, Interval::positive(), [](double t) { return 1.0 / t; }, dec, dcx);
  }
  if (head == "posy") {
    need_args(true);
    return posynomial(name, args);
  }
  throw ConfigError("unknown function name: " + name);
}

std::vector<IntervalFunction> catalog() {
  const char* names[] = {"pow:0", "pow:0.25", "pow:0.5", "pow:0.75", "pow:1",
                         "ratio", "ratio_sqrt", "one_minus_exp", "log", "log1p",
                         "shifted_pow:0.5", "shifted_pow:1", "root_diff:1", "root_diff:2", "root_diff:3",
                         "parabola", "neg_tlogt", "circle", "sin", "cos",
                         "sincos:0.5:0.5", "sincos:0.3:0.2", "sincos:1:0", "tent:1", "tent:2.5",
                         "pow:2", "pow:-1", "posy:1@2,1@-1", "posy:2@1,0.5@3,1@0", "inv",
                         "expm1", "exp_neg"};
  std::vector<IntervalFunction> out;
  for (const char* n : names) out.push_back(function_by_name(n));
  return out;
}

std::vector<double> certification_grid(const Interval& domain, int grid_size, const std::optional<Interval>& window) {
  if (grid_size < 16) throw ConfigError("grid_size must be at least 16");
  const Interval d = window ? intersect(domain, *window) : domain;
  double lo = d.lo, hi = d.hi;
  bool lo_open = d.lo_open, hi_open = d.hi_open;
  if (std::isinf(lo)) throw DomainViolation("certification needs a domain bounded below", lo);
  if (lo == 0.0 && lo_open) {
    lo = 1e-3;
    lo_open = false;
  }
  if (std::isinf(hi)) {
    hi = lo >= 1.0 ? 1e3 * lo : 1e3;
    hi_open = false;
  }
  if (!(hi > lo)) throw DomainViolation("certification grid has an empty interior", lo);
  const bool log_spaced = lo > 0.0;
  const double a = log_spaced ? std::log(lo) : lo;
  const double b = log_spaced ? std::log(hi) : hi;
  const double off_lo = lo_open ? 1.0 : 0.0;
  const double off_hi = hi_open ? 1.0 : 0.0;
  const double span = static_cast<double>(grid_size - 1) + off_lo + off_hi;
  std::vector<double> out(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    const double u = (static_cast<double>(i) + off_lo) / span;
    const double x = a + (b - a) * u;
    out[static_cast<std::size_t>(i)] = log_spaced ? std::exp(x) : x;
  }
  if (!lo_open) out.front() = lo;
  if (!hi_open) out.back() = hi;
  return out;
}

ClassReport certify_doubly_concave(const IntervalFunction& f, int grid_size, double tol,
                                   const std::optional<Interval>& window) {
  return certify(f, grid_size, tol, window, Shape::concave, true);
}

ClassReport certify_doubly_convex(const IntervalFunction& f, int grid_size, double tol,
                                  const std::optional<Interval>& window) {
  return certify(f, grid_size, tol, window, Shape::convex, true);
}

ClassReport certify_concave(const IntervalFunction& f, int grid_size, double tol,
                            const std::optional<Interval>& window) {
  return certify(f, grid_size, tol, window, Shape::concave, false);
}

ClassReport certify_convex(const IntervalFunction& f, int grid_size, double tol,
                           const std::optional<Interval>& window) {
  return certify(f, grid_size, tol, window, Shape::convex, false);
}

IntervalFunction concave_power_transform(const IntervalFunction& f, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainViolation("concave power transform needs p in (0,1]", p);
  return power_transform(f, p, "concave_power");
}

IntervalFunction convex_power_transform(const IntervalFunction& g, double q) {
  if (!(q >= 1.0)) throw DomainViolation("convex power transform needs q >= 1", q);
  return power_transform(g, q, "convex_power");
}

IntervalFunction geometric_combination(const IntervalFunction& f, const IntervalFunction& g, double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("geometric combination weight must lie in [0,1]");
  auto fe = f.eval, ge = g.eval;
  return make("geo(" + f.name + "," + g.name + "," + fmt(a) + ")", intersect(f.domain, g.domain),
              [fe, ge, a](double t) { return std::pow(fe(t), a) * std::pow(ge(t), 1.0 - a); }, Monotone::none,
              ClassClaim::unclassified);
}

IntervalFunction pointwise_min(const IntervalFunction& f, const IntervalFunction& g) {
  auto fe = f.eval, ge = g.eval;
  return make("min(" + f.name + "," + g.name + ")", intersect(f.domain, g.domain),
              [fe, ge](double t) { return std::min(fe(t), ge(t)); }, Monotone::none, ClassClaim::unclassified);
}

IntervalFunction piecewise_linear(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() < 2 || xs.size() != ys.size()) throw ConfigError("piecewise_linear needs matching knots");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw ConfigError("piecewise_linear knots must increase");
  }
  const Interval dom = Interval::closed(xs.front(), xs.back());
  auto f = [xs = std::move(xs), ys = std::move(ys)](double t) {
    if (t <= xs.front()) return ys.front();
    if (t >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - xs.begin());
    const double w = (t - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return ys[j - 1] + w * (ys[j] - ys[j - 1]);
  };
  return make("piecewise_linear", dom, f, Monotone::none, ClassClaim::unclassified);
}

}  // namespace matmeans

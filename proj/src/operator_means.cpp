#include "matmeans/operator_means.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "matmeans/errors.hpp"

namespace matmeans {

namespace {

constexpr double kTinyArg = 1e-300;

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// log |e^u - 1| without overflow or cancellation.
double log_abs_expm1(double u) {
  if (u > 1.0) return u + std::log1p(-std::exp(-u));
  if (u > 0.0) return std::log(std::expm1(u));
  return std::log(-std::expm1(u));
}

// log of S(u) = (e^u - 1)/u, which is positive for every real u.
double log_s(double u) {
  if (u == 0.0) return 0.0;
  if (std::abs(u) < 1e-8) return u / 2.0;
  return log_abs_expm1(u) - std::log(std::abs(u));
}

Complex s_complex(Complex u) {
  if (std::abs(u) < 1e-2) {
    return 1.0 + u * (1.0 / 2 + u * (1.0 / 6 + u * (1.0 / 24 + u * (1.0 / 120 + u / 720.0))));
  }
  return (std::exp(u) - 1.0) / u;
}

GeomClass flipped(GeomClass c) {
  switch (c) {
    case GeomClass::geom_convex:
      return GeomClass::geom_concave;
    case GeomClass::geom_concave:
      return GeomClass::geom_convex;
    default:
      return c;
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool near_integer(double x, int& out) {
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-9 && r >= 1.0 && r < 1e6) {
    out = static_cast<int>(r);
    return true;
  }
  return false;
}

void check_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("mean operands differ in dimension");
}

// Everything needed to evaluate A #_alpha B for many alpha: A^{1/2} and the eigensystem of
// C = A^{-1/2} B A^{-1/2}.
struct GeodesicFrame {
  CMatrix root;
  EigDecomposition c_eig;

  GeodesicFrame(const HermitianMatrix& a, const HermitianMatrix& b) {
    const EigDecomposition ea = eigh(a);
    const auto n = static_cast<Eigen::Index>(a.dim());
    Eigen::VectorXd r(n), rinv(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double lam = ea.spectrum.values[static_cast<std::size_t>(i)];
      if (!(lam > 0.0)) throw SingularInput("mean needs an invertible first operand");
      r(i) = std::sqrt(lam);
      rinv(i) = 1.0 / r(i);
    }
    root = ea.basis * r.cast<Complex>().asDiagonal() * ea.basis.adjoint();
    const CMatrix root_inv = ea.basis * rinv.cast<Complex>().asDiagonal() * ea.basis.adjoint();
    c_eig = eigh(HermitianMatrix(CMatrix(root_inv * b.matrix() * root_inv)));
  }

  HermitianMatrix apply(const std::function<double(double)>& f) const {
    const HermitianMatrix inner = matrix_function(c_eig, f, Interval::nonnegative(), 1e-10 * (1.0 + c_eig.spectrum.max()));
    return HermitianMatrix(CMatrix(root * inner.matrix() * root));
  }

  HermitianMatrix point(double alpha) const {
    return apply([alpha](double t) { return alpha == 0.0 ? 1.0 : std::pow(t, alpha); });
  }
};

RepresentingFunction make_rf(std::string name, std::function<double(double)> eval,
                             std::function<Complex(Complex)> log_eval, GeomClass cls,
                             std::optional<GeodesicMeasure> measure = std::nullopt) {
  RepresentingFunction h;
  h.name = std::move(name);
  h.eval = std::move(eval);
  h.log_eval = std::move(log_eval);
  h.geom_class = cls;
  h.measure = std::move(measure);
  return h;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
  }
  return g;
}

}  // namespace

std::string to_string(GeomClass c) {
  switch (c) {
    case GeomClass::geom_convex:
      return "geom_convex";
    case GeomClass::geom_concave:
      return "geom_concave";
    case GeomClass::both:
      return "both";
    default:
      return "unknown";
  }
}

QuadratureRule gauss_legendre(int q) {
  if (q < 1) throw ConfigError("quadrature needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(q));
  rule.weights.resize(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= q; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = q * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[static_cast<std::size_t>(i)] = (1.0 - x) / 2.0;
    rule.weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

GeodesicMeasure GeodesicMeasure::delta(double alpha) { return from_atoms({{alpha, 1.0}}); }

GeodesicMeasure GeodesicMeasure::uniform() {
  GeodesicMeasure nu;
  nu.density = [](double) { return 1.0; };
  return nu;
}

GeodesicMeasure GeodesicMeasure::from_atoms(std::vector<std::pair<double, double>> atoms) {
  GeodesicMeasure nu;
  nu.atoms = std::move(atoms);
  return nu;
}

std::vector<std::pair<double, double>> GeodesicMeasure::discretize() const {
  std::vector<std::pair<double, double>> out = atoms;
  if (density) {
    const QuadratureRule rule = gauss_legendre(quadrature_nodes);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      out.emplace_back(rule.nodes[i], rule.weights[i] * density(rule.nodes[i]));
    }
  }
  return out;
}

double GeodesicMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& [alpha, w] : discretize()) m += w;
  return m;
}

void GeodesicMeasure::validate() const {
  for (const auto& [alpha, w] : atoms) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("measure atoms must lie in [0,1]");
    if (!(w > 0.0)) throw ConfigError("measure atom weights must be positive");
  }
  if (atoms.empty() && !density) throw ConfigError("measure is empty");
  if (std::abs(total_mass() - 1.0) > 1e-12) throw ConfigError("measure must have total mass 1");
}

GeodesicMeasure GeodesicMeasure::reflected() const {
  GeodesicMeasure out;
  for (const auto& [alpha, w] : atoms) out.atoms.emplace_back(1.0 - alpha, w);
  if (density) {
    auto d = density;
    out.density = [d](double a) { return d(1.0 - a); };
  }
  out.quadrature_nodes = quadrature_nodes;
  return out;
}

RepresentingFunction rf_arithmetic() {
  return make_rf(
      "arith", [](double t) { return (1.0 + t) / 2.0; }, [](Complex z) { return (1.0 + std::exp(z)) / 2.0; },
      GeomClass::geom_convex, GeodesicMeasure::from_atoms({{0.0, 0.5}, {1.0, 0.5}}));
}

RepresentingFunction rf_harmonic() {
  return make_rf(
      "harm", [](double t) { return 2.0 * t / (1.0 + t); }, [](Complex z) { return 2.0 / (1.0 + std::exp(-z)); },
      GeomClass::geom_concave);
}

RepresentingFunction rf_weighted_geometric(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("weighted geometric mean needs alpha in [0,1]");
  return make_rf(
      "geo:alpha=" + fmt(alpha), [alpha](double t) { return alpha == 0.0 ? 1.0 : std::pow(t, alpha); },
      [alpha](Complex z) { return std::exp(alpha * z); }, GeomClass::both, GeodesicMeasure::delta(alpha));
}

RepresentingFunction rf_geometric() { return rf_weighted_geometric(0.5); }

RepresentingFunction rf_heinz(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("Heinz mean needs alpha in [0,1]");
  return make_rf(
      "heinz:alpha=" + fmt(alpha), [alpha](double t) { return (std::pow(t, alpha) + std::pow(t, 1.0 - alpha)) / 2.0; },
      [alpha](Complex z) { return (std::exp(alpha * z) + std::exp((1.0 - alpha) * z)) / 2.0; },
      GeomClass::geom_convex, GeodesicMeasure::from_atoms({{alpha, 0.5}, {1.0 - alpha, 0.5}}));
}

RepresentingFunction rf_power(double p) {
  if (!(p >= -1.0 && p <= 1.0)) throw ConfigError("operator power mean needs p in [-1,1]");
  if (p == 0.0) {
    auto h = rf_geometric();
    h.name = "bp:p=0";
    return h;
  }
  std::optional<GeodesicMeasure> measure;
  int m = 0;
  if (p > 0.0 && near_integer(1.0 / p, m)) {
    GeodesicMeasure nu;
    for (int k = 0; k <= m; ++k) nu.atoms.emplace_back(static_cast<double>(k) / m, binomial(m, k) / std::ldexp(1.0, m));
    measure = nu;
  }
  auto eval = [p](double t) {
    if (t == 0.0) return p > 0.0 ? std::pow(0.5, 1.0 / p) : 0.0;
    return std::pow((std::pow(t, p) + 1.0) / 2.0, 1.0 / p);
  };
  // (e^{pz} + 1)/2 = e^{pz/2} cosh(pz/2) and cosh stays in the right half-plane for |Im pz| < pi.
  auto log_eval = [p](Complex z) { return std::exp(z / 2.0 + std::log(std::cosh(p * z / 2.0)) / p); };
  return make_rf("bp:p=" + fmt(p), eval, log_eval, p > 0.0 ? GeomClass::geom_convex : GeomClass::geom_concave,
                 measure);
}

RepresentingFunction rf_falpha(double alpha) {
  if (!(alpha >= -1.0 && alpha <= 2.0)) throw ConfigError("f_alpha family needs alpha in [-1,2]");
  // With t = e^s: f_alpha(t) = S(alpha s) / S((alpha-1) s), S(u) = (e^u - 1)/u.
  auto eval = [alpha](double t) {
    if (t == 0.0) return alpha > 1.0 ? (alpha - 1.0) / alpha : 0.0;
    const double s = std::log(t);
    return std::exp(log_s(alpha * s) - log_s((alpha - 1.0) * s));
  };
  auto log_eval = [alpha](Complex z) { return s_complex(alpha * z) / s_complex((alpha - 1.0) * z); };
  GeomClass cls = GeomClass::both;
  if (alpha > 0.5) cls = GeomClass::geom_convex;
  if (alpha < 0.5) cls = GeomClass::geom_concave;
  std::optional<GeodesicMeasure> measure;
  int m = 0;
  if (alpha == 1.0) {
    measure = GeodesicMeasure::uniform();
  } else if (alpha > 1.0 && near_integer(alpha / (alpha - 1.0), m) && m >= 2) {
    GeodesicMeasure nu;
    for (int k = 0; k < m; ++k) nu.atoms.emplace_back(static_cast<double>(k) / (m - 1), 1.0 / m);
    measure = nu;
  } else if (alpha >= 0.5 && alpha < 1.0 && near_integer(alpha / (1.0 - alpha), m)) {
    GeodesicMeasure nu;
    for (int k = 1; k <= m; ++k) nu.atoms.emplace_back(static_cast<double>(k) / (m + 1), 1.0 / m);
    measure = nu;
  }
  auto h = make_rf("falpha:a=" + fmt(alpha), eval, log_eval, cls, measure);
  if (alpha == 1.0) h.label = "logarithmic";
  return h;
}

RepresentingFunction rf_logarithmic() { return rf_falpha(1.0); }

RepresentingFunction rf_from_measure(const GeodesicMeasure& nu, std::string name) {
  nu.validate();
  const auto points = nu.discretize();
  auto eval = [points](double t) {
    double s = 0.0;
    for (const auto& [alpha, w] : points) s += w * (alpha == 0.0 ? 1.0 : std::pow(t, alpha));
    return s;
  };
  auto log_eval = [points](Complex z) {
    Complex s = 0.0;
    for (const auto& [alpha, w] : points) s += w * std::exp(alpha * z);
    return s;
  };
  return make_rf(std::move(name), eval, log_eval, GeomClass::geom_convex, nu);
}

std::vector<RepresentingFunction> rf_catalog() {
  std::vector<RepresentingFunction> out{rf_arithmetic(), rf_harmonic(), rf_geometric()};
  for (double a : {0.25, 0.75}) out.push_back(rf_weighted_geometric(a));
  for (double a : {0.1, 0.25}) out.push_back(rf_heinz(a));
  for (double p : {-1.0, -0.5, 0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0}) out.push_back(rf_power(p));
  for (double a : {-1.0, 0.0, 0.25, 0.5, 2.0 / 3.0, 1.0, 1.5, 2.0}) out.push_back(rf_falpha(a));
  return out;
}

RfTransforms rf_transforms(const RepresentingFunction& h) {
  auto he = h.eval;
  auto hl = h.log_eval;
  auto arg = [](double t) { return t > 0.0 ? t : kTinyArg; };
  RfTransforms out;

  out.transpose.name = "transpose(" + h.name + ")";
  out.transpose.eval = [he, arg](double t) { return arg(t) * he(1.0 / arg(t)); };
  if (hl) out.transpose.log_eval = [hl](Complex z) { return std::exp(z) * hl(-z); };
  out.transpose.geom_class = h.geom_class;
  if (h.measure) out.transpose.measure = h.measure->reflected();

  out.adjoint.name = "adjoint(" + h.name + ")";
  out.adjoint.eval = [he, arg](double t) { return 1.0 / he(1.0 / arg(t)); };
  if (hl) out.adjoint.log_eval = [hl](Complex z) { return 1.0 / hl(-z); };
  out.adjoint.geom_class = flipped(h.geom_class);

  out.dual.name = "dual(" + h.name + ")";
  out.dual.eval = [he, arg](double t) { return arg(t) / he(arg(t)); };
  if (hl) out.dual.log_eval = [hl](Complex z) { return std::exp(z) / hl(z); };
  out.dual.geom_class = flipped(h.geom_class);
  return out;
}

std::string screen_representing_function(const RepresentingFunction& h) {
  if (!h.eval) return "no evaluator";
  if (std::abs(h(1.0) - 1.0) > 1e-12) return "h(1) != 1";
  double prev = h(0.0);
  if (!(prev >= 0.0)) return "h(0) is negative or undefined";
  for (double t : log_grid(1e-4, 1e4, 64)) {
    const double v = h(t);
    if (!std::isfinite(v) || v < 0.0) return "h is negative or not finite at t=" + fmt(t);
    if (v < prev - 1e-12 * (1.0 + std::abs(prev))) return "h decreases near t=" + fmt(t);
    prev = v;
  }
  return "";
}

GeomClassReport certify_geom_class(const RepresentingFunction& h, int grid_size, double tol, double lo, double hi) {
  if (grid_size < 16) throw ConfigError("geometric class certification needs at least 16 grid points");
  const auto grid = log_grid(lo, hi, grid_size);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = h(grid[i]);
  GeomClassReport r;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double mid = h(std::sqrt(grid[i] * grid[j]));
      const double gm = std::sqrt(values[i] * values[j]);
      const double scale = 1.0 + values[i] + values[j];
      r.worst_convex = std::min(r.worst_convex, (gm - mid) / scale);
      r.worst_concave = std::min(r.worst_concave, (mid - gm) / scale);
    }
  }
  r.convex_ok = r.worst_convex >= -tol;
  r.concave_ok = r.worst_concave >= -tol;
  if (r.convex_ok && r.concave_ok) {
    r.verdict = GeomClass::both;
  } else if (r.convex_ok) {
    r.verdict = GeomClass::geom_convex;
  } else if (r.concave_ok) {
    r.verdict = GeomClass::geom_concave;
  }
  return r;
}

AbsMonotonicityReport check_absolute_monotonicity(const RepresentingFunction& h, const AbsMonotonicityOptions& opts) {
  if (opts.max_order < 1) throw ConfigError("absolute monotonicity needs max_order >= 1");
  if (!(opts.step > 0.0) || !(opts.t_hi > opts.t_lo)) throw ConfigError("bad absolute monotonicity grid");
  const int k_max = static_cast<int>(std::floor((opts.t_hi - opts.t_lo) / opts.step + 1e-9));
  AbsMonotonicityReport rep;
  rep.worst_by_order.assign(static_cast<std::size_t>(opts.max_order), kInf);
  auto fail = [&rep](int order, double t, double v) {
    if (rep.first_failing_order == 0 || order < rep.first_failing_order) {
      rep.first_failing_order = order;
      rep.failing_point = t;
      rep.failing_value = v;
    }
    rep.passed = false;
  };

  if (opts.method == DerivativeMethod::finite_difference) {
    std::vector<double> g(static_cast<std::size_t>(k_max + 1));
    double gmax = 0.0;
    for (int k = 0; k <= k_max; ++k) {
      g[static_cast<std::size_t>(k)] = h(std::exp(opts.t_lo + k * opts.step));
      gmax = std::max(gmax, std::abs(g[static_cast<std::size_t>(k)]));
    }
    const double tol = 1e-6 * gmax;
    for (int n = 1; n <= opts.max_order; ++n) {
      for (int k = 0; k + n <= k_max; ++k) {
        double d = 0.0;
        for (int j = 0; j <= n; ++j) {
          d += ((n - j) % 2 == 0 ? 1.0 : -1.0) * binomial(n, j) * g[static_cast<std::size_t>(k + j)];
        }
        auto& worst = rep.worst_by_order[static_cast<std::size_t>(n - 1)];
        worst = std::min(worst, d);
        if (d < -tol) fail(n, opts.t_lo + k * opts.step, d);
      }
    }
    return rep;
  }

  if (!h.log_eval) throw ConfigError("contour method needs a complex evaluator for " + h.name);
  const int m = opts.contour_points;
  const double r = opts.contour_radius;
  std::vector<Complex> unit(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) unit[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * k / m);
  const double eps = std::numeric_limits<double>::epsilon();
  for (int c = 0; c <= k_max; ++c) {
    const double t0 = opts.t_lo + c * opts.step;
    std::vector<Complex> vals(static_cast<std::size_t>(m));
    double vmax = 0.0;
    for (int k = 0; k < m; ++k) {
      vals[static_cast<std::size_t>(k)] = h.log_eval(t0 + r * unit[static_cast<std::size_t>(k)]);
      vmax = std::max(vmax, std::abs(vals[static_cast<std::size_t>(k)]));
    }
    double scale = 1.0;  // n! / r^n
    for (int n = 1; n <= opts.max_order; ++n) {
      scale *= n / r;
      Complex acc = 0.0;
      for (int k = 0; k < m; ++k) {
        acc += vals[static_cast<std::size_t>(k)] * std::conj(unit[static_cast<std::size_t>((static_cast<long>(n) * k) % m)]);
      }
      const double d = scale * acc.real() / m;
      const double tol = 64.0 * eps * scale * vmax;
      auto& worst = rep.worst_by_order[static_cast<std::size_t>(n - 1)];
      worst = std::min(worst, d);
      if (d < -tol) fail(n, t0, d);
    }
  }
  return rep;
}

double contour_derivative(const RepresentingFunction& h, double t, int order, double radius, int points) {
  if (!h.log_eval) throw ConfigError("contour method needs a complex evaluator for " + h.name);
  if (order < 0 || points < 2 * order + 2) throw ConfigError("contour derivative needs more points than the order");
  Complex acc = 0.0;
  for (int k = 0; k < points; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / points;
    acc += h.log_eval(t + radius * std::polar(1.0, theta)) * std::polar(1.0, -order * theta);
  }
  double scale = 1.0;
  for (int n = 1; n <= order; ++n) scale *= n / radius;
  return scale * acc.real() / points;
}

double scalar_mean(const RepresentingFunction& h, double a, double b) {
  if (a < 0.0 || b < 0.0) throw DomainViolation("scalar mean needs non-negative arguments", std::min(a, b));
  if (a > 0.0) return a * h(b / a);
  if (b == 0.0) return 0.0;
  return b * kTinyArg * h(1.0 / kTinyArg);
}

double default_mean_eps(const HermitianMatrix& a, const HermitianMatrix& b) {
  return 1e-10 * (1.0 + a.frobenius_norm() + b.frobenius_norm());
}

MeanResult kubo_ando_detailed(const RepresentingFunction& h, const HermitianMatrix& a, const HermitianMatrix& b,
                              std::optional<double> eps) {
  check_same_dim(a, b);
  double e = 0.0;
  if (eps) {
    if (*eps < 0.0) throw DomainViolation("regularization eps must be non-negative", *eps);
    e = *eps;
    if (e == 0.0 && !is_invertible_psd(a)) throw SingularInput("kubo_ando with eps = 0 needs invertible A");
  } else if (!is_invertible_psd(a) || !is_invertible_psd(b)) {
    e = default_mean_eps(a, b);
  }
  const HermitianMatrix shift = HermitianMatrix::identity(a.dim()) * e;
  const GeodesicFrame frame(a + shift, b + shift);
  auto he = h.eval;
  return MeanResult{frame.apply([he](double t) { return he(t); }), e};
}

HermitianMatrix kubo_ando(const RepresentingFunction& h, const HermitianMatrix& a, const HermitianMatrix& b,
                          std::optional<double> eps) {
  return kubo_ando_detailed(h, a, b, eps).value;
}

HermitianMatrix weighted_geometric(const HermitianMatrix& a, const HermitianMatrix& b, double alpha) {
  check_same_dim(a, b);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainViolation("weighted geometric mean needs alpha in [0,1]", alpha);
  if (!is_invertible_psd(a) || !is_invertible_psd(b)) throw SingularInput("weighted geometric mean needs invertible operands");
  if (alpha == 0.0) return a;
  if (alpha == 1.0) return b;
  return GeodesicFrame(a, b).point(alpha);
}

HermitianMatrix power_mean(const HermitianMatrix& a, const HermitianMatrix& b, double p) {
  check_same_dim(a, b);
  if (!(p >= 0.0 && p <= 1.0)) throw DomainViolation("power mean needs p in [0,1]", p);
  if (p == 0.0) {
    if (!is_invertible_psd(a) || !is_invertible_psd(b)) throw SingularInput("power mean with p = 0 needs invertible operands");
    return expm((logm(a) + logm(b)) * 0.5);
  }
  if (p == 1.0) return (a + b) * 0.5;
  const auto pw = [p](double t) { return std::pow(t, p); };
  const HermitianMatrix avg = (matrix_function(a, pw, Interval::nonnegative()) +
                               matrix_function(b, pw, Interval::nonnegative())) * 0.5;
  return matrix_function(avg, [p](double t) { return std::pow(t, 1.0 / p); }, Interval::nonnegative());
}

HermitianMatrix geodesic_mean(const GeodesicMeasure& nu, const HermitianMatrix& a, const HermitianMatrix& b) {
  check_same_dim(a, b);
  nu.validate();
  if (!is_invertible_psd(a) || !is_invertible_psd(b)) throw SingularInput("geodesic mean needs invertible operands");
  const GeodesicFrame frame(a, b);
  const auto points = nu.discretize();
  // Sum of weighted powers of C in one pass, then a single congruence by A^{1/2}.
  return frame.apply([&points](double t) {
    double s = 0.0;
    for (const auto& [alpha, w] : points) s += w * (alpha == 0.0 ? 1.0 : std::pow(t, alpha));
    return s;
  });
}

}  // namespace matmeans

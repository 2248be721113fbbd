#include "matmeans/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "matmeans/errors.hpp"

namespace matmeans {

namespace {

std::vector<double> sorted_desc(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

void check_sizes(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) throw DimensionMismatch("majorization: spectra differ in size");
}

double euclid(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void record(MajorizationVerdict& v, double margin, int k) {
  if (margin < v.worst_margin) {
    v.worst_margin = margin;
    v.worst_k = k;
  }
}

void finish(MajorizationVerdict& v, double tol) { v.holds = v.worst_margin >= -tol; }

// k-th root products of the first k entries, for k = 1..n.
std::vector<double> running_geometric_means(const std::vector<double>& values) {
  std::vector<double> out(values.size());
  std::vector<double> prefix;
  for (std::size_t k = 0; k < values.size(); ++k) {
    prefix.push_back(std::max(values[k], 0.0));
    out[k] = geometric_mean_of(prefix);
  }
  return out;
}

double relative_gap(double ga, double gb) { return (ga - gb) / (1.0 + ga + gb); }

MajorizationVerdict top_products_leq(std::span<const double> a, std::span<const double> b, double tol,
                                     bool with_det_equality) {
  check_sizes(a, b);
  const auto ga = running_geometric_means(sorted_desc(a));
  const auto gb = running_geometric_means(sorted_desc(b));
  MajorizationVerdict v;
  const int n = static_cast<int>(ga.size());
  for (int k = 0; k < n; ++k) record(v, relative_gap(gb[k], ga[k]), k + 1);
  if (with_det_equality) record(v, -std::abs(relative_gap(ga[n - 1], gb[n - 1])), n);
  finish(v, tol);
  return v;
}

Spectrum spec_of(const HermitianMatrix& m) { return eigenvalues(m); }

void check_dims(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("majorization: matrices differ in dimension");
}

}  // namespace

double geometric_mean_of(std::span<const double> values) {
  if (values.empty()) return 1.0;
  bool tiny = false;
  for (double x : values) tiny = tiny || x < kLogFloor;
  if (tiny) {
    double p = 1.0;
    for (double x : values) p *= std::max(x, 0.0);
    return std::pow(p, 1.0 / static_cast<double>(values.size()));
  }
  double s = 0.0;
  for (double x : values) s += std::log(x);
  return std::exp(s / static_cast<double>(values.size()));
}

MajorizationVerdict supermajorizes(std::span<const double> a, std::span<const double> b, double tol) {
  check_sizes(a, b);
  const auto sa = sorted_desc(a);
  const auto sb = sorted_desc(b);
  const double scale = 1.0 + euclid(sa) + euclid(sb);
  MajorizationVerdict v;
  double suma = 0.0, sumb = 0.0;
  const int n = static_cast<int>(sa.size());
  for (int k = 1; k <= n; ++k) {
    suma += sa[n - k];
    sumb += sb[n - k];
    record(v, (suma - sumb) / scale, k);
  }
  finish(v, tol);
  return v;
}

MajorizationVerdict majorizes(std::span<const double> a, std::span<const double> b, double tol) {
  MajorizationVerdict v = supermajorizes(a, b, tol);
  const auto sa = sorted_desc(a);
  const auto sb = sorted_desc(b);
  double ta = 0.0, tb = 0.0;
  for (double x : sa) ta += x;
  for (double x : sb) tb += x;
  record(v, -std::abs(ta - tb) / (1.0 + euclid(sa) + euclid(sb)), static_cast<int>(sa.size()));
  finish(v, tol);
  return v;
}

MajorizationVerdict log_supermajorizes(std::span<const double> a, std::span<const double> b, double tol) {
  check_sizes(a, b);
  auto sa = sorted_desc(a);
  auto sb = sorted_desc(b);
  std::reverse(sa.begin(), sa.end());
  std::reverse(sb.begin(), sb.end());
  const auto ga = running_geometric_means(sa);
  const auto gb = running_geometric_means(sb);
  MajorizationVerdict v;
  for (std::size_t k = 0; k < ga.size(); ++k) record(v, relative_gap(ga[k], gb[k]), static_cast<int>(k) + 1);
  finish(v, tol);
  return v;
}

MajorizationVerdict log_majorizes(std::span<const double> a, std::span<const double> b, double tol) {
  return top_products_leq(a, b, tol, true);
}

MajorizationVerdict log_submajorizes(std::span<const double> a, std::span<const double> b, double tol) {
  return top_products_leq(a, b, tol, false);
}

MajorizationVerdict eigenvalue_dominates(std::span<const double> a, std::span<const double> b, double tol) {
  check_sizes(a, b);
  const auto sa = sorted_desc(a);
  const auto sb = sorted_desc(b);
  const double scale = 1.0 + euclid(sa) + euclid(sb);
  MajorizationVerdict v;
  for (std::size_t j = 0; j < sa.size(); ++j) record(v, (sa[j] - sb[j]) / scale, static_cast<int>(j) + 1);
  finish(v, tol);
  return v;
}

MajorizationVerdict supermajorizes(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  check_dims(a, b);
  return supermajorizes(spec_of(a).values, spec_of(b).values, tol);
}

MajorizationVerdict majorizes(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  check_dims(a, b);
  return majorizes(spec_of(a).values, spec_of(b).values, tol);
}

MajorizationVerdict log_supermajorizes(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  check_dims(a, b);
  return log_supermajorizes(spec_of(a).values, spec_of(b).values, tol);
}

MajorizationVerdict log_majorizes(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  check_dims(a, b);
  return log_majorizes(spec_of(a).values, spec_of(b).values, tol);
}

MajorizationVerdict log_submajorizes(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  check_dims(a, b);
  return log_submajorizes(spec_of(a).values, spec_of(b).values, tol);
}

MajorizationVerdict eigenvalue_dominates(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  check_dims(a, b);
  return eigenvalue_dominates(spec_of(a).values, spec_of(b).values, tol);
}

}  // namespace matmeans

#include <doctest.h>

#include "helpers.hpp"
#include "matmeans/errors.hpp"
#include "matmeans/majorization.hpp"

using namespace matmeans;
using namespace testing_support;

namespace {

HermitianMatrix diag(std::vector<double> v) { return HermitianMatrix::diagonal(v); }

// Average of random permutations of s (a doubly stochastic image), hence majorized by s.
std::vector<double> averaged_spectrum(Rng& rng, const std::vector<double>& s) {
  const int n = static_cast<int>(s.size());
  std::vector<double> out(s.size(), 0.0);
  const int terms = 3;
  for (int t = 0; t < terms; ++t) {
    std::vector<int> perm(s.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < n; ++i) out[i] += s[perm[i]] / terms;
  }
  return out;
}

}  // namespace

TEST_CASE("supermajorization hand checks") {
  const auto a = psd(1, 3);
  const auto v = supermajorizes(a, a, 1e-10);
  CHECK(v.holds);
  CHECK(v.worst_margin == doctest::Approx(0.0));
  CHECK(supermajorizes(diag({1, 1}), diag({2, 0}), 1e-10).holds);
  const auto f = supermajorizes(diag({2, 0}), diag({1, 1}), 1e-10);
  CHECK_FALSE(f.holds);
  CHECK(f.worst_k == 1);
  CHECK_THROWS_AS(supermajorizes(diag({1, 1}), diag({1, 1, 1}), 1e-10), DimensionMismatch);
}

TEST_CASE("majorization requires equal traces") {
  const auto a = psd(2, 3);
  CHECK(majorizes(a, a, 1e-10).holds);
  CHECK_FALSE(majorizes(diag({1, 1}), diag({3, 0}), 1e-10).holds);
  CHECK(majorizes(diag({1.5, 1.5}), diag({3, 0}), 1e-10).holds);
}

TEST_CASE("log-supermajorization hand checks") {
  const auto a = psd(3, 4);
  const auto v = log_supermajorizes(a, a, 1e-10);
  CHECK(v.holds);
  CHECK(v.worst_margin == doctest::Approx(0.0));
  CHECK_FALSE(log_supermajorizes(diag({4, 1}), diag({2, 2}), 1e-10).holds);
  CHECK(log_supermajorizes(diag({2, 2}), diag({4, 1}), 1e-10).holds);
}

TEST_CASE("log-supermajorization with zero eigenvalues uses direct products") {
  CHECK(log_supermajorizes(diag({3, 0}), diag({5, 0}), 1e-10).holds);
  const auto v = log_supermajorizes(diag({3, 0}), diag({1, 1}), 1e-10);
  CHECK_FALSE(v.holds);
  CHECK(v.worst_k == 1);
  CHECK(log_supermajorizes(diag({1e-200, 1e-200}), diag({1e-200, 1e-200}), 1e-10).holds);
}

TEST_CASE("log-majorization and log-submajorization hand checks") {
  const auto a = psd(4, 3);
  CHECK(log_majorizes(a, a, 1e-10).holds);
  CHECK(log_submajorizes(a, a, 1e-10).holds);
  CHECK(log_majorizes(diag({2, 2}), diag({4, 1}), 1e-10).holds);
  CHECK_FALSE(log_majorizes(diag({1, 1}), diag({4, 1}), 1e-10).holds);
  CHECK(log_submajorizes(diag({1, 1}), diag({4, 1}), 1e-10).holds);
  CHECK_FALSE(log_submajorizes(diag({4, 1}), diag({2, 2}), 1e-10).holds);
}

TEST_CASE("eigenvalue dominance hand checks") {
  CHECK(eigenvalue_dominates(2.0 * HermitianMatrix::identity(3), HermitianMatrix::identity(3), 1e-10).holds);
  const auto v = eigenvalue_dominates(diag({3, 1}), diag({2, 2}), 1e-10);
  CHECK_FALSE(v.holds);
  CHECK(v.worst_k == 2);
}

TEST_CASE("verdict is consistent with the tolerance") {
  const auto v = supermajorizes(diag({1, 1 - 1e-12}), diag({1, 1}), 1e-10);
  CHECK(v.worst_margin < 0.0);
  CHECK(v.holds);
  CHECK_FALSE(supermajorizes(diag({1, 1 - 1e-12}), diag({1, 1}), 0.0).holds);
}

TEST_CASE("averaging a spectrum yields a majorized spectrum") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = psd(100 + trial, 5, 30.0);
    const auto s = eigenvalues(a).values;
    const auto avg = averaged_spectrum(rng, s);
    CHECK(majorizes(avg, s, 1e-12).holds);
    CHECK(supermajorizes(avg, s, 1e-12).holds);
    CHECK(log_supermajorizes(avg, s, 1e-12).holds);
  }
}

TEST_CASE("supermajorization is transitive and implies log-supermajorization") {
  Rng rng(23);
  int chains = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = psd(500 + trial, 3, 20.0);
    const auto b = psd(900 + trial, 3, 20.0);
    const auto c = psd(1300 + trial, 3, 20.0);
    const double tol = 1e-10;
    const bool ab = supermajorizes(a, b, tol).holds;
    const bool bc = supermajorizes(b, c, tol).holds;
    if (ab && bc) {
      ++chains;
      CHECK(supermajorizes(a, c, 2 * tol).holds);
    }
    if (ab) CHECK(log_supermajorizes(a, b, tol).holds);
    // Averages are always supermajorized pairs, so the implication is also exercised directly.
    const auto s = eigenvalues(a).values;
    const auto avg = averaged_spectrum(rng, s);
    CHECK(log_supermajorizes(std::span<const double>(avg), std::span<const double>(s), tol).holds);
  }
  CHECK(chains > 0);
}

TEST_CASE("eigenvalue dominance implies the weaker relations") {
  for (int trial = 0; trial < 100; ++trial) {
    const auto b = psd(2000 + trial, 4, 10.0);
    const auto a = b + psd(3000 + trial, 4, 10.0) * 0.1;
    REQUIRE(eigenvalue_dominates(a, b, 1e-12).holds);
    CHECK(supermajorizes(a, b, 1e-12).holds);
    CHECK(log_supermajorizes(a, b, 1e-12).holds);
  }
}

TEST_CASE("verdicts are unitarily invariant") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = psd(4000 + trial, 4, 10.0);
    const auto b = psd(5000 + trial, 4, 10.0);
    const CMatrix u = sample_unitary(rng, 4);
    const auto ua = congruence(u, a);
    const auto ub = congruence(u, b);
    CHECK(std::abs(supermajorizes(a, b, 0).worst_margin - supermajorizes(ua, ub, 0).worst_margin) < 1e-10);
    CHECK(std::abs(log_majorizes(a, b, 0).worst_margin - log_majorizes(ua, ub, 0).worst_margin) < 1e-10);
    CHECK(std::abs(eigenvalue_dominates(a, b, 0).worst_margin - eigenvalue_dominates(ua, ub, 0).worst_margin) <
          1e-10);
  }
}

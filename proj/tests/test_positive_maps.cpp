#include <doctest.h>

#include "helpers.hpp"
#include "matmeans/errors.hpp"
#include "matmeans/majorization.hpp"
#include "matmeans/positive_maps.hpp"

using namespace matmeans;
using namespace testing_support;

namespace {

HermitianMatrix diag(std::vector<double> v) { return HermitianMatrix::diagonal(v); }

std::vector<PositiveMap> sample_maps(Rng& rng, int n) {
  std::vector<PositiveMap> maps;
  maps.push_back(PositiveMap::pinch_diagonal(n));
  maps.push_back(PositiveMap::pinching({1, n - 1}));
  maps.push_back(PositiveMap::schur(sample_correlation(rng, n)));
  maps.push_back(PositiveMap::schur(sample_correlation(rng, n) * 0.7));
  maps.push_back(PositiveMap::unitary_mixture({sample_unitary(rng, n), sample_unitary(rng, n)}, {0.3, 0.7}));
  // A strictly sub-unital compression: C = 0.8 * (isometry columns).
  const CMatrix u = sample_unitary(rng, n);
  maps.push_back(PositiveMap::kraus({CMatrix(0.8 * u.leftCols(n - 1))}));
  return maps;
}

}  // namespace

TEST_CASE("apply: identity kraus, all-ones Schur, pinching") {
  const auto z = psd(1, 3);
  CHECK(max_abs_diff(PositiveMap::kraus({CMatrix::Identity(3, 3)}).apply(z), z) < 1e-15);
  const HermitianMatrix ones(CMatrix::Ones(3, 3));
  CHECK(max_abs_diff(PositiveMap::schur(ones).apply(z), z) < 1e-15);
  const auto d = PositiveMap::pinch_diagonal(3).apply(z);
  for (int i = 0; i < 3; ++i) {
    CHECK(d(i, i) == z(i, i));
    for (int j = 0; j < 3; ++j) {
      if (i != j) CHECK(d(i, j) == Complex(0, 0));
    }
  }
  CHECK_THROWS_AS(PositiveMap::pinch_diagonal(2).apply(z), DimensionMismatch);
}

TEST_CASE("diagonal pinching is majorized by its input") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto z = psd(seed, 4, 50.0);
    CHECK(majorizes(PositiveMap::pinch_diagonal(4).apply(z), z, 1e-12).holds);
  }
}

TEST_CASE("two-block average") {
  const auto z = direct_sum(diag({1, 4}), diag({9, 16}));
  const auto e = PositiveMap::two_block_average(2);
  CHECK(e.in_dim() == 4);
  CHECK(e.out_dim() == 2);
  CHECK(e.unital());
  const auto half = power_map(e, z, 0.5);
  CHECK(half(0, 0).real() == doctest::Approx(4.0));
  CHECK(half(1, 1).real() == doctest::Approx(9.0));
  CHECK(std::abs(half(0, 1)) < 1e-14);
}

TEST_CASE("unitality and trace preservation flags") {
  CHECK(PositiveMap::pinch_diagonal(3).unital());
  CHECK(PositiveMap::pinch_diagonal(3).trace_preserving());
  Rng rng(2);
  const auto c = sample_correlation(rng, 3);
  CHECK(PositiveMap::schur(c).unital());
  CHECK(PositiveMap::schur(c).trace_preserving());
  const auto scaled = PositiveMap::schur(c * 0.5);
  CHECK(scaled.sub_unital());
  CHECK_FALSE(scaled.unital());
  CHECK_FALSE(PositiveMap::schur(c * 2.0).sub_unital());
  CHECK_FALSE(PositiveMap::two_block_average(2).trace_preserving());
  const auto mix = PositiveMap::unitary_mixture({sample_unitary(rng, 3), sample_unitary(rng, 3)}, {0.5, 0.5});
  CHECK(mix.unital());
  CHECK(mix.trace_preserving());
}

TEST_CASE("positivity, sub-unitality and trace preservation on samples") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    for (const auto& e : sample_maps(rng, 4)) {
      CAPTURE(e.describe());
      CHECK(e.sub_unital());
      const auto z = psd(100 + trial, e.in_dim(), 30.0, trial % 2);
      const auto out = e.apply(z);
      CHECK(eigenvalues(out).min() >= -1e-10);
      CHECK(loewner_geq(HermitianMatrix::identity(e.out_dim()), e.apply(HermitianMatrix::identity(e.in_dim())),
                        1e-10));
      if (e.unital() && e.trace_preserving()) CHECK(std::abs(out.trace() - z.trace()) < 1e-10);
    }
  }
}

TEST_CASE("power maps") {
  Rng rng(8);
  const auto z = psd(3, 3, 20.0);
  const auto e = PositiveMap::schur(sample_correlation(rng, 3));
  CHECK(max_abs_diff(power_map(e, z, 1.0), e.apply(z)) < 1e-15);
  const auto id = PositiveMap::kraus({CMatrix::Identity(3, 3)});
  for (double p : {0.25, 0.5, 0.9, 2.0}) CHECK(rel_diff(power_map(id, z, p), z) < 1e-12);
  CHECK(rel_diff(zero_power_map(id, z), z) < 1e-12);
  const auto cz = 3.0 * HermitianMatrix::identity(3);
  CHECK(rel_diff(zero_power_map(e, cz), cz) < 1e-12);
  CHECK_THROWS_AS(power_map(e, z, 0.0), DomainViolation);
  const auto singular = psd(4, 3, 10.0, 1);
  CHECK(eigenvalues(power_map(e, singular, 0.5)).min() >= -1e-12);
}

TEST_CASE("zero power map preconditions") {
  Rng rng(9);
  const auto sub = PositiveMap::schur(sample_correlation(rng, 3) * 0.5);
  CHECK_THROWS_AS(zero_power_map(sub, psd(1, 3)), NotUnital);
  CHECK_THROWS_AS(zero_power_map(PositiveMap::pinch_diagonal(3), psd(1, 3, 10.0, 1)), SingularInput);
}

TEST_CASE("power maps converge to the zero power map linearly in p") {
  Rng rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const auto z = psd(200 + trial, 4, 20.0);
    const auto e = PositiveMap::schur(sample_correlation(rng, 4));
    const auto limit = zero_power_map(e, z);
    double prev = kInf;
    std::vector<double> errs;
    for (double p : {1e-1, 1e-2, 1e-3}) {
      const double err = (power_map(e, z, p).matrix() - limit.matrix()).norm();
      CHECK(err < prev);
      prev = err;
      errs.push_back(err);
    }
    // O(p): each tenfold reduction of p shrinks the error about tenfold.
    CHECK(errs[0] / errs[1] > 5.0);
    CHECK(errs[0] / errs[1] < 20.0);
    CHECK(errs[1] / errs[2] > 5.0);
    CHECK(errs[1] / errs[2] < 20.0);
  }
}

#include <doctest.h>

#include "helpers.hpp"
#include "matmeans/errors.hpp"
#include "matmeans/multi_geodesic.hpp"
#include "matmeans/operator_means.hpp"
#include "matmeans/spec_parse.hpp"

using namespace matmeans;
using testing_support::psd;
using testing_support::rel_diff;

TEST_CASE("mean strings resolve to the named means") {
  const HermitianMatrix a = psd(11, 3), b = psd(12, 3);
  CHECK(rel_diff(parse_mean("mean:arith").apply(a, b), (a + b) * 0.5) < 1e-13);
  CHECK(rel_diff(parse_mean("mean:geo:alpha=0.25").apply(a, b), weighted_geometric(a, b, 0.25)) < 1e-12);
  CHECK(rel_diff(parse_mean("mean:power:p=0.5").apply(a, b), power_mean(a, b, 0.5)) < 1e-12);

  const HermitianMatrix atoms = parse_mean("mean:geodesic:atoms=(0,0.25),(0.5,0.5),(1,0.25)").apply(a, b);
  CHECK(rel_diff(atoms, a * 0.25 + weighted_geometric(a, b, 0.5) * 0.5 + b * 0.25) < 1e-11);

  // harmonic = inverse of the arithmetic mean of inverses, scalar form included
  const BinaryMean harm = parse_mean("mean:harm");
  CHECK(harm.scalar(1.0, 3.0) == doctest::Approx(1.5));
  CHECK(parse_mean("mean:falpha:a=1").scalar(1.0, std::exp(1.0)) == doctest::Approx(std::exp(1.0) - 1.0));
}

TEST_CASE("multi-variable mean strings") {
  const std::vector<HermitianMatrix> as{psd(21, 3), psd(22, 3), psd(23, 3)};
  const WeightVector w{0.2, 0.3, 0.5};
  CHECK(rel_diff(parse_multi_mean("mmean:karcher:w=0.2,0.3,0.5").apply(as), karcher_mean(w, as)) < 1e-12);
  CHECK(rel_diff(parse_multi_mean("mmean:karcher").apply(as), karcher_mean(as)) < 1e-12);
  CHECK(rel_diff(parse_multi_mean("mmean:inductive").apply(as), inductive_mean(as)) < 1e-13);
}

TEST_CASE("anti-norm and norm strings") {
  const HermitianMatrix a = psd(31, 4, 20.0);
  CHECK(evaluate_antinorm(parse_antinorm("anorm:kyfan:k=2"), a) ==
        doctest::Approx(evaluate_antinorm(AntiNormSpec::kyfan_anti(2), a)).epsilon(1e-14));
  CHECK(evaluate_antinorm(parse_antinorm("anorm:derived:norm=kyfan:k=2,p=1"), a) ==
        doctest::Approx(evaluate_antinorm(AntiNormSpec::derived(NormSpec::kyfan(2), 1.0), a)).epsilon(1e-14));
  CHECK(evaluate_antinorm(parse_antinorm("anorm:negschatten:p=1"), a) ==
        doctest::Approx(evaluate_antinorm(AntiNormSpec::neg_schatten(1.0), a)).epsilon(1e-14));
  CHECK(parse_antinorm("anorm:dual:of=anorm:minkowski").kind == AntiNormKind::dual_of);
  CHECK(evaluate_norm(parse_norm("norm:schatten:p=2"), a) == doctest::Approx(a.frobenius_norm()).epsilon(1e-13));
}

TEST_CASE("maps and functions") {
  const HermitianMatrix z = psd(41, 3);
  const HermitianMatrix d = parse_map("map:pinch-diag", 3).apply(z);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::abs(d.matrix()(i, j)) == (i == j ? std::abs(z.matrix()(i, i)) : 0.0));
  CHECK(parse_map("map:two-block", 3).in_dim() == 6);
  CHECK(parse_function("f:pow:0.5").name == "pow:0.5");
  CHECK(parse_function("log1p").name == "log1p");
}

TEST_CASE("malformed strings are configuration errors") {
  for (const char* s : {"mean:nope", "mean:geo:alpha=abc", "mean:geo:alpha=", "arith", "mean:power:p=2"})
    CHECK_THROWS_AS(parse_mean(s), ConfigError);
  for (const char* s : {"anorm:kyfan", "anorm:kyfan:k=x", "anorm:derived:norm=kyfan:k=2", "norm:kyfan:k=1"})
    CHECK_THROWS_AS(parse_antinorm(s), ConfigError);
  CHECK_THROWS_AS(parse_multi_mean("mmean:karcher:w=0.5,x"), ConfigError);
  CHECK_THROWS_AS(parse_map("map:unknown", 3), ConfigError);
  CHECK_THROWS_AS(parse_function("pow:abc"), ConfigError);
}

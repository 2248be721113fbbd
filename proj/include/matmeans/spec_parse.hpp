#pragma once

#include <functional>
#include <string>
#include <vector>

#include "matmeans/anti_norms.hpp"
#include "matmeans/hermitian.hpp"
#include "matmeans/positive_maps.hpp"
#include "matmeans/scalar_functions.hpp"

namespace matmeans {

// Binary mean named by a config string. `scalar` is the same mean on positive numbers.
struct BinaryMean {
  std::string name;
  std::function<HermitianMatrix(const HermitianMatrix&, const HermitianMatrix&)> apply;
  std::function<double(double, double)> scalar;
};

struct MultiMean {
  std::string name;
  std::function<HermitianMatrix(const std::vector<HermitianMatrix>&)> apply;
};

// "mean:arith", "mean:harm", "mean:geo:alpha=0.5", "mean:power:p=0.5" (((A^p+B^p)/2)^{1/p}),
// "mean:bp:p=0.5" (Kubo-Ando mean of ((t^p+1)/2)^{1/p}), "mean:falpha:a=1", "mean:heinz:alpha=0.25",
// "mean:geodesic:uniform", "mean:geodesic:atoms=(0,0.25),(0.5,0.5),(1,0.25)".
BinaryMean parse_mean(const std::string& spec);

// "mmean:karcher", "mmean:karcher:w=0.2,0.3,0.5", "mmean:inductive", "mmean:logarithmic:S=2000[,seed=1]".
MultiMean parse_multi_mean(const std::string& spec);

// "anorm:kyfan:k=2", "anorm:schatten:p=0.5", "anorm:negschatten:p=1", "anorm:schattenkyfan:p=1,k=2",
// "anorm:delta:k=3", "anorm:minkowski", "anorm:derived:norm=kyfan:k=2,p=1", "anorm:dual:of=<anorm spec>".
AntiNormSpec parse_antinorm(const std::string& spec);
// "norm:kyfan:k=1", "norm:schatten:p=2", "norm:operator", "norm:trace".
NormSpec parse_norm(const std::string& spec);

// "map:pinch-diag", "map:two-block" (2n -> n), "map:schur:<matrix file>", "map:kraus:<file>,<file>,...".
// n is the output dimension for the first two.
PositiveMap parse_map(const std::string& spec, int n);

// Catalog lookup; accepts an optional "f:" prefix.
IntervalFunction parse_function(const std::string& spec);

}  // namespace matmeans

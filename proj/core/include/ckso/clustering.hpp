// Pruning and component decomposition around a skeleton, plus the dynamic
// program that splits the budgets k and p across components so every
// component LP is feasible.

#ifndef CKSO_CLUSTERING_HPP
#define CKSO_CLUSTERING_HPP

#include <functional>
#include <optional>
#include <vector>

#include "ckso/instance.hpp"

namespace ckso {

struct Component {
  GraphInstance graph;
  std::vector<int> skeleton;          // indices into graph's facilities
  std::vector<int> client_origin;     // component client -> original client
  std::vector<int> facility_origin;   // component facility -> original facility
};

struct ComponentDecomposition {
  std::vector<Component> components;  // ordered by smallest contained vertex id
};

// Keeps exactly the vertices v with d(v, S) <= 5 and splits the induced
// subgraph into connected components; S_i = S intersected with each part.
ComponentDecomposition prune_and_split(const GraphInstance& g,
                                       const std::vector<int>& skeleton);

// feas(i, k_i, p_i) delegates to the LP on component i.
using FeasOracle = std::function<bool(int, std::int64_t, std::int64_t)>;

struct PartitionEntry {
  std::int64_t k_i = 0;
  std::int64_t p_i = 0;
};

// Per-component budgets with sum k / sum p and all LPs feasible, or nullopt.
// Search ranges: k_i in [|S_i|, min(k, |F_i|)] (no facility cap when
// soft_multiset), p_i in [0, min(p, |C_i|, sum of capacities)].
std::optional<std::vector<PartitionEntry>> partition_dp(
    const ComponentDecomposition& dec, std::int64_t k, std::int64_t p,
    const FeasOracle& feas, bool soft_multiset = false);

}  // namespace ckso

#endif  // CKSO_CLUSTERING_HPP

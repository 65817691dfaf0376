// Greedy construction of candidate skeletons: repeatedly add the highest
// capacity facility at hop distance >= 6 from the current set, emitting
// every prefix.  If a distance-1 solution exists, at least one emitted set
// is a skeleton of it, so the downstream pipeline tries each in order.

#ifndef CKSO_SKELETON_HPP
#define CKSO_SKELETON_HPP

#include <vector>

#include "ckso/instance.hpp"

namespace ckso {

struct SkeletonCandidate {
  std::vector<int> facilities;  // insertion order; pairwise hop distance >= 6
};

// L(u) := min(L(u), deg(u)); no influence on distance-1 solutions.
GraphInstance cap_truncate(const GraphInstance& g);

// Chain S_1 subset S_2 subset ... of at most k sets; capacities must
// already be truncated.  Ties in the capacity argmax break by smallest id.
std::vector<SkeletonCandidate> skeleton_candidates(const GraphInstance& g,
                                                   std::int64_t k);

}  // namespace ckso

#endif  // CKSO_SKELETON_HPP

#include "ckso/skeleton.hpp"

#include <algorithm>

#include "ckso/graph_algos.hpp"

namespace ckso {

GraphInstance cap_truncate(const GraphInstance& g) {
  GraphInstance out = g;
  for (int f = 0; f < out.num_facilities(); ++f)
    out.capacities[f] = std::min<std::int64_t>(
        out.capacities[f], static_cast<std::int64_t>(out.adj_facility[f].size()));
  return out;
}

std::vector<SkeletonCandidate> skeleton_candidates(const GraphInstance& g,
                                                   std::int64_t k) {
  std::vector<SkeletonCandidate> out;
  const int nf = g.num_facilities();
  if (k <= 0 || nf == 0) return out;

  std::vector<int> current;
  // d(u, S) per facility; everything is far from the empty set.
  std::vector<int> dist_to_s(nf, kUnreachable);
  while (static_cast<std::int64_t>(current.size()) <= k - 1) {
    int best = -1;
    for (int f = 0; f < nf; ++f) {
      bool far = current.empty() ||
                 (dist_to_s[f] == kUnreachable || dist_to_s[f] >= 6);
      if (!far) continue;
      if (best < 0 || g.capacities[f] > g.capacities[best]) best = f;
      // ties break by smallest id, i.e. smallest index
    }
    if (best < 0) break;
    current.push_back(best);
    out.push_back(SkeletonCandidate{current});
    DistanceMap dm = single_source_distances(g, facility_vertex(g, best));
    for (int f = 0; f < nf; ++f) {
      int h = dm.hops[facility_vertex(g, f)];
      if (h == kUnreachable) continue;
      if (dist_to_s[f] == kUnreachable || h < dist_to_s[f]) dist_to_s[f] = h;
    }
  }
  return out;
}

}  // namespace ckso

#include "ckso/graph_algos.hpp"

#include <queue>

namespace ckso {

DistanceMap multi_source_distances(const GraphInstance& g,
                                   const std::vector<int>& sources) {
  const int n = g.num_clients() + g.num_facilities();
  DistanceMap dm;
  dm.hops.assign(n, kUnreachable);
  std::queue<int> queue;
  for (int s : sources) {
    if (dm.hops[s] == 0) continue;
    dm.hops[s] = 0;
    queue.push(s);
  }
  const int nc = g.num_clients();
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    int dv = dm.hops[v];
    if (v < nc) {
      for (int f : g.adj_client[v]) {
        int w = nc + f;
        if (dm.hops[w] == kUnreachable) {
          dm.hops[w] = dv + 1;
          queue.push(w);
        }
      }
    } else {
      for (int c : g.adj_facility[v - nc]) {
        if (dm.hops[c] == kUnreachable) {
          dm.hops[c] = dv + 1;
          queue.push(c);
        }
      }
    }
  }
  return dm;
}

DistanceMap single_source_distances(const GraphInstance& g, int source) {
  return multi_source_distances(g, {source});
}

std::vector<int> facility_distance_matrix(const GraphInstance& g) {
  const int nf = g.num_facilities();
  std::vector<int> out(static_cast<std::size_t>(nf) * nf, kUnreachable);
  for (int f = 0; f < nf; ++f) {
    DistanceMap dm = single_source_distances(g, facility_vertex(g, f));
    for (int f2 = 0; f2 < nf; ++f2)
      out[static_cast<std::size_t>(f) * nf + f2] = dm.hops[facility_vertex(g, f2)];
  }
  return out;
}

std::vector<int> vertex_distance_matrix(const GraphInstance& g) {
  const int n = g.num_clients() + g.num_facilities();
  std::vector<int> out(static_cast<std::size_t>(n) * n, kUnreachable);
  for (int v = 0; v < n; ++v) {
    DistanceMap dm = single_source_distances(g, v);
    for (int w = 0; w < n; ++w) out[static_cast<std::size_t>(v) * n + w] = dm.hops[w];
  }
  return out;
}

}  // namespace ckso

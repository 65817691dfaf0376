// Breadth-first distance machinery over bipartite graph instances.
//
// Vertices of a GraphInstance are addressed in a single index space:
// clients occupy [0, nC) and facilities [nC, nC + nF).

#ifndef CKSO_GRAPH_ALGOS_HPP
#define CKSO_GRAPH_ALGOS_HPP

#include <vector>

#include "ckso/instance.hpp"

namespace ckso {

constexpr int kUnreachable = -1;

inline int client_vertex(int client) { return client; }
inline int facility_vertex(const GraphInstance& g, int facility) {
  return g.num_clients() + facility;
}
inline bool is_facility_vertex(const GraphInstance& g, int v) {
  return v >= g.num_clients();
}

struct DistanceMap {
  std::vector<int> hops;  // kUnreachable when no path exists
  int at(int vertex) const { return hops[vertex]; }
  bool reachable(int vertex) const { return hops[vertex] != kUnreachable; }
};

// Exact hop distances from a vertex set; empty sources leave everything
// unreachable.
DistanceMap multi_source_distances(const GraphInstance& g,
                                   const std::vector<int>& sources);

DistanceMap single_source_distances(const GraphInstance& g, int source);

// Hop distances between every facility pair, as a flat nF x nF matrix.
std::vector<int> facility_distance_matrix(const GraphInstance& g);

// Hop distance matrix over all vertices (clients then facilities).
std::vector<int> vertex_distance_matrix(const GraphInstance& g);

}  // namespace ckso

#endif  // CKSO_GRAPH_ALGOS_HPP

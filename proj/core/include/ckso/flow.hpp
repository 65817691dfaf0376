// Exact integral max-flow (Dinic) and transportation feasibility.
//
// Capacities are 64-bit integers with overflow checks; augmenting order is
// fixed by construction order, so flow decompositions are deterministic.

#ifndef CKSO_FLOW_HPP
#define CKSO_FLOW_HPP

#include <cstdint>
#include <vector>

#include "ckso/instance.hpp"

namespace ckso {

class FlowNetwork {
 public:
  explicit FlowNetwork(int num_nodes, int source, int sink);

  // Returns the arc id; capacities must be nonnegative.
  int add_arc(int from, int to, std::int64_t capacity);

  int num_nodes() const { return static_cast<int>(adj_.size()); }
  int source() const { return source_; }
  int sink() const { return sink_; }

  std::int64_t max_flow();

  // Flow pushed through a forward arc after max_flow().
  std::int64_t flow_on(int arc_id) const;
  std::int64_t capacity_of(int arc_id) const;
  std::pair<int, int> arc_endpoints(int arc_id) const;

 private:
  struct Edge {
    int to;
    std::int64_t cap;
    int rev;
  };
  bool bfs_levels();
  std::int64_t dfs_augment(int v, std::int64_t limit);

  std::vector<std::vector<Edge>> adj_;
  std::vector<std::pair<int, int>> arc_pos_;  // forward arc -> (node, slot)
  std::vector<int> level_;
  std::vector<int> iter_;
  int source_;
  int sink_;
};

// Feasibility of the transportation problem: supplies[i] units at supply
// node i, demands[j] units at demand node j, shipping allowed only along
// the given (supply, demand) arcs.  True iff some assignment covers every
// demand; by flow integrality the fractional and integral questions agree.
bool transportation_feasible(const std::vector<std::int64_t>& supplies,
                             const std::vector<std::int64_t>& demands,
                             const std::vector<std::pair<int, int>>& arcs);

}  // namespace ckso

#endif  // CKSO_FLOW_HPP

// Distance-transfer machinery.
//
// A distance-r transfer reassigns fractional opening mass so that the total
// is preserved and, for every node set U, the capacity mass that ends up
// within distance r of U is at least the capacity mass U held before.  The
// rounding pipeline composes three such steps: gathering one unit onto a
// duplicate of each skeleton vertex, an integral rounding on an auxiliary
// tree whose edges span at most 10 graph hops, and moving duplicate mass
// back onto the anchor facilities.  Transfer values are kept as integers
// over a common denominator so every verification is an exact flow check.

#ifndef CKSO_TRANSFER_HPP
#define CKSO_TRANSFER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ckso/graph_algos.hpp"
#include "ckso/instance.hpp"

namespace ckso {

// Hop distances within a host vertex set; kUnreachable marks no path.
struct HostMetric {
  int n = 0;
  std::vector<int> d;
  int dist(int a, int b) const { return d[static_cast<std::size_t>(a) * n + b]; }
  bool within(int a, int b, int r) const {
    int v = dist(a, b);
    return v != kUnreachable && v <= r;
  }
};

// Nonnegative values num[i]/den per node of a host vertex set.
struct TransferVector {
  std::vector<std::int64_t> num;
  std::int64_t den = 1;

  std::int64_t total_num() const;
  bool integral() const;  // every value a multiple of den
  double value(int i) const { return static_cast<double>(num[i]) / static_cast<double>(den); }
};

struct TransferCheck {
  bool ok = false;
  std::string reason;
};

// Def.-style check: condition 1 is exact sum preservation, condition 2 is
// decided by one transportation max-flow on scaled integer data (supply
// L(v) * y2_v, demand L(u) * y_u, arcs within distance r).
TransferCheck verify_transfer(const HostMetric& metric,
                              const std::vector<std::int64_t>& caps,
                              const TransferVector& y, const TransferVector& y2,
                              int r);

// Spanning tree on the skeleton with every edge spanning <= 10 graph hops;
// requires a connected graph with all vertices within 5 hops of S.
struct BackboneTree {
  std::vector<std::pair<int, int>> edges;  // positions into the skeleton list
};

BackboneTree build_backbone_tree(const GraphInstance& g,
                                 const std::vector<int>& skeleton);

enum class AnchorMode {
  MaxCapacityDuplicate,  // general path: duplicate s', anchor m_s by capacity
  SkeletonInPlace,       // uniform path: m_s = s, no duplicates
};

// Rounding universe: facility nodes [0, nF), then duplicate nodes
// [nF, nF + |S|) when duplicates are in play.  The tree T' excludes the
// anchors; every non-leaf of T' is a duplicate (resp. skeleton) node.
struct RoundingTree {
  AnchorMode anchor_mode = AnchorMode::MaxCapacityDuplicate;
  int num_facilities = 0;
  int num_nodes = 0;
  std::vector<int> skeleton;               // facility indices
  std::vector<int> anchor;                 // per skeleton position: m_s
  std::vector<std::vector<int>> balls;     // per skeleton position: N^2[s] facilities
  std::vector<char> in_tree;               // per node
  std::vector<std::vector<int>> tree_adj;  // per node
  std::vector<std::int64_t> caps;          // per node; duplicates carry L(m_s)
  HostMetric host;                         // hop distances among the nodes in G'

  int duplicate_node(int skeleton_pos) const { return num_facilities + skeleton_pos; }
  bool is_duplicate(int node) const { return node >= num_facilities; }
  bool is_tree_leaf(int node) const {
    return in_tree[node] && tree_adj[node].size() <= 1;
  }
  HostMetric tree_metric() const;  // hop distances within T'
};

RoundingTree build_rounding_tree(const GraphInstance& g,
                                 const std::vector<int>& skeleton,
                                 const BackboneTree& bt, AnchorMode mode);

enum class GatherMode {
  OneUnit,     // general & uniform-hard: exactly one unit onto s' (or s)
  Everything,  // uniform-soft: the whole ball mass onto s
};

// Distance-2 transfer: per skeleton vertex, draw from the anchor first and
// then from the remaining ball members in decreasing capacity (ties by
// smallest id); requires ball mass >= 1.
TransferVector gather_step(const RoundingTree& rt, const TransferVector& y,
                           GatherMode mode);

struct TreeTransferStats {
  long greedy = 0;
  long floor_ceil_fallback = 0;
  long subset_fallback = 0;
  long nonleaf_relaxed = 0;  // zero-capacity corner: an internal node closed
};

// Integral distance-2 transfer on T': keeps non-leaves open and opens a
// capacity-sorted prefix of each leaf group, sizes searched greedily over
// {floor, ceil} and validated by verify_transfer; exhaustive fallbacks run
// before giving up.  A transfer keeping every non-leaf open need not exist
// when internal capacities vanish, so the last stage may close internal
// nodes; the stats record any run that needed it.  Requires y values in
// [0,1], 1 on every non-leaf, and an integral total.
std::vector<int> tree_transfer(const RoundingTree& rt, const TransferVector& y,
                               TreeTransferStats* stats = nullptr);

// Replaces opened duplicates by their anchors (equal capacities, <= 2 hops).
std::vector<int> finalize_transfer(const std::vector<int>& opened,
                                   const RoundingTree& rt);

// Bookkeeping for a chain of transfer steps and its composed distance.
struct TransferStep {
  std::string name;
  std::string host;        // "G'" or "T'"
  int r_host = 0;          // declared distance in the host metric
  int host_factor = 1;     // hop bound of one host edge in the base metric
  int r_base = 0;          // r_host * host_factor
  double mass_moved = 0.0;
};

struct TransferChain {
  std::vector<TransferStep> steps;
  int total_base_distance() const;
};

// Snaps an LP opening vector to exact rationals and repairs the identities
// the transfer machinery relies on: each ball sums to >= 1 and the total is
// exactly k.  Small denominators are recovered per coordinate; otherwise
// values are rationalized on a 1e-9 grid.
TransferVector rationalize_openings(const std::vector<double>& y,
                                    const std::vector<std::vector<int>>& balls,
                                    std::int64_t k, bool bound_by_one);

}  // namespace ckso

#endif  // CKSO_TRANSFER_HPP

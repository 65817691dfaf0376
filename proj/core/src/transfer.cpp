#include "ckso/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>

#include "ckso/flow.hpp"

namespace ckso {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::int64_t>::max() / b)
    throw std::overflow_error("transfer value product overflow");
  return a * b;
}

}  // namespace

std::int64_t TransferVector::total_num() const {
  std::int64_t total = 0;
  for (std::int64_t v : num) total += v;
  return total;
}

bool TransferVector::integral() const {
  for (std::int64_t v : num)
    if (v % den != 0) return false;
  return true;
}

TransferCheck verify_transfer(const HostMetric& metric,
                              const std::vector<std::int64_t>& caps,
                              const TransferVector& y, const TransferVector& y2,
                              int r) {
  TransferCheck out;
  // Bring both vectors to a common denominator.
  std::int64_t g = std::gcd(y.den, y2.den);
  std::int64_t scale_y = y2.den / g;
  std::int64_t scale_y2 = y.den / g;

  std::int64_t sum_y = 0, sum_y2 = 0;
  for (std::int64_t v : y.num) sum_y += checked_mul(v, scale_y);
  for (std::int64_t v : y2.num) sum_y2 += checked_mul(v, scale_y2);
  if (sum_y != sum_y2) {
    out.reason = "condition 1 violated";
    return out;
  }

  const int n = metric.n;
  std::vector<std::int64_t> supplies(n, 0), demands(n, 0);
  for (int v = 0; v < n; ++v) {
    supplies[v] = checked_mul(caps[v], checked_mul(y2.num[v], scale_y2));
    demands[v] = checked_mul(caps[v], checked_mul(y.num[v], scale_y));
  }
  std::vector<std::pair<int, int>> arcs;
  for (int v = 0; v < n; ++v) {
    if (supplies[v] == 0) continue;
    for (int u = 0; u < n; ++u) {
      if (demands[u] == 0) continue;
      if (metric.within(v, u, r)) arcs.push_back({v, u});
    }
  }
  if (!transportation_feasible(supplies, demands, arcs)) {
    out.reason = "condition 2 violated at distance " + std::to_string(r);
    return out;
  }
  out.ok = true;
  return out;
}

BackboneTree build_backbone_tree(const GraphInstance& g,
                                 const std::vector<int>& skeleton) {
  BackboneTree bt;
  if (skeleton.size() <= 1) return bt;

  std::vector<char> in_tree(skeleton.size(), 0);
  in_tree[0] = 1;  // grow from the smallest-id skeleton vertex
  for (std::size_t round = 1; round < skeleton.size(); ++round) {
    // Shortest path from the current tree to the rest of the skeleton.
    std::vector<int> sources;
    for (std::size_t i = 0; i < skeleton.size(); ++i)
      if (in_tree[i]) sources.push_back(facility_vertex(g, skeleton[i]));
    DistanceMap from_tree = multi_source_distances(g, sources);

    int best = -1;
    for (std::size_t i = 0; i < skeleton.size(); ++i) {
      if (in_tree[i]) continue;
      int h = from_tree.hops[facility_vertex(g, skeleton[i])];
      if (h == kUnreachable) continue;
      if (best < 0 ||
          h < from_tree.hops[facility_vertex(g, skeleton[best])])
        best = static_cast<int>(i);
    }
    if (best < 0)
      throw PipelineError("backbone-tree", "skeleton not connected in component");
    int dist = from_tree.hops[facility_vertex(g, skeleton[best])];
    if (dist > 10)
      throw PipelineError("backbone-tree",
                          "connecting path of length " + std::to_string(dist) +
                              " exceeds 10; pruning precondition violated");

    // Attach to the closest tree endpoint (ties by smallest id).
    DistanceMap from_new =
        single_source_distances(g, facility_vertex(g, skeleton[best]));
    int attach = -1;
    for (std::size_t i = 0; i < skeleton.size(); ++i) {
      if (!in_tree[i]) continue;
      int h = from_new.hops[facility_vertex(g, skeleton[i])];
      if (h == kUnreachable) continue;
      if (attach < 0 ||
          h < from_new.hops[facility_vertex(g, skeleton[attach])])
        attach = static_cast<int>(i);
    }
    bt.edges.push_back({attach, best});
    in_tree[best] = 1;
  }
  return bt;
}

HostMetric RoundingTree::tree_metric() const {
  HostMetric m;
  m.n = num_nodes;
  m.d.assign(static_cast<std::size_t>(num_nodes) * num_nodes, kUnreachable);
  for (int start = 0; start < num_nodes; ++start) {
    if (!in_tree[start]) continue;
    std::queue<int> queue;
    m.d[static_cast<std::size_t>(start) * num_nodes + start] = 0;
    queue.push(start);
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop();
      int dv = m.d[static_cast<std::size_t>(start) * num_nodes + v];
      for (int w : tree_adj[v]) {
        auto& slot = m.d[static_cast<std::size_t>(start) * num_nodes + w];
        if (slot == kUnreachable) {
          slot = dv + 1;
          queue.push(w);
        }
      }
    }
  }
  return m;
}

RoundingTree build_rounding_tree(const GraphInstance& g,
                                 const std::vector<int>& skeleton,
                                 const BackboneTree& bt, AnchorMode mode) {
  RoundingTree rt;
  rt.anchor_mode = mode;
  rt.num_facilities = g.num_facilities();
  const int ns = static_cast<int>(skeleton.size());
  const bool dup = mode == AnchorMode::MaxCapacityDuplicate;
  rt.num_nodes = rt.num_facilities + (dup ? ns : 0);
  rt.skeleton = skeleton;

  // Hop distances among facility nodes; duplicates mirror their original.
  std::vector<int> fmat = facility_distance_matrix(g);
  const int nf = rt.num_facilities;
  auto fdist = [&](int a, int b) { return fmat[static_cast<std::size_t>(a) * nf + b]; };

  rt.host.n = rt.num_nodes;
  rt.host.d.assign(static_cast<std::size_t>(rt.num_nodes) * rt.num_nodes,
                   kUnreachable);
  auto set_d = [&](int a, int b, int v) {
    rt.host.d[static_cast<std::size_t>(a) * rt.num_nodes + b] = v;
    rt.host.d[static_cast<std::size_t>(b) * rt.num_nodes + a] = v;
  };
  for (int a = 0; a < nf; ++a)
    for (int b = a; b < nf; ++b)
      if (fdist(a, b) != kUnreachable) set_d(a, b, fdist(a, b));
  if (dup) {
    for (int i = 0; i < ns; ++i) {
      int si = skeleton[i];
      int di = rt.duplicate_node(i);
      set_d(di, di, 0);
      // The duplicate shares the adjacency of its original, so distances to
      // everything else coincide with the original's, while the pair itself
      // sits two hops apart through any common neighbor.
      for (int f = 0; f < nf; ++f) {
        if (f == si) continue;
        if (fdist(si, f) != kUnreachable) set_d(di, f, fdist(si, f));
      }
      if (!g.adj_facility[si].empty()) set_d(di, si, 2);
      for (int j = 0; j < i; ++j) {
        int sj = skeleton[j];
        if (fdist(si, sj) != kUnreachable)
          set_d(di, rt.duplicate_node(j), fdist(si, sj));
      }
    }
  }

  // Balls N^2[s] and anchors.
  rt.balls.resize(ns);
  rt.anchor.resize(ns);
  for (int i = 0; i < ns; ++i) {
    int si = skeleton[i];
    for (int f = 0; f < nf; ++f) {
      int h = fdist(si, f);
      if (h != kUnreachable && h <= 2) rt.balls[i].push_back(f);
    }
    if (dup) {
      int best = -1;
      for (int f : rt.balls[i])
        if (best < 0 || g.capacities[f] > g.capacities[best]) best = f;
      if (best < 0)
        throw PipelineError("rounding-tree", "empty ball around skeleton vertex " +
                                                 g.facility_ids[si]);
      rt.anchor[i] = best;
    } else {
      rt.anchor[i] = si;
    }
  }

  rt.caps = g.capacities;
  if (dup)
    for (int i = 0; i < ns; ++i) rt.caps.push_back(g.capacities[rt.anchor[i]]);

  // Tree membership: every node except the anchors in duplicate mode.
  rt.in_tree.assign(rt.num_nodes, 1);
  if (dup)
    for (int i = 0; i < ns; ++i) rt.in_tree[rt.anchor[i]] = 0;

  rt.tree_adj.assign(rt.num_nodes, {});
  auto add_tree_edge = [&](int a, int b) {
    rt.tree_adj[a].push_back(b);
    rt.tree_adj[b].push_back(a);
  };
  // Backbone edges between skeleton nodes (or their duplicates).
  for (const auto& [i, j] : bt.edges) {
    int a = dup ? rt.duplicate_node(i) : skeleton[i];
    int b = dup ? rt.duplicate_node(j) : skeleton[j];
    add_tree_edge(a, b);
  }
  // Attach the remaining facilities to the closest skeleton-side node.
  std::vector<char> is_excluded(rt.num_facilities, 0);
  if (dup) {
    for (int i = 0; i < ns; ++i) is_excluded[rt.anchor[i]] = 1;
  } else {
    for (int s : skeleton) is_excluded[s] = 1;
  }
  for (int f = 0; f < rt.num_facilities; ++f) {
    if (is_excluded[f]) continue;
    int best = -1, best_d = 0;
    for (int i = 0; i < ns; ++i) {
      int h = fdist(f, skeleton[i]);  // equals the distance to the duplicate
      if (h == kUnreachable) continue;
      if (best < 0 || h < best_d) {
        best = i;
        best_d = h;
      }
    }
    if (best < 0 || best_d > 4)
      throw PipelineError("rounding-tree",
                          "facility " + g.facility_ids[f] +
                              " farther than 4 hops from the skeleton");
    add_tree_edge(f, dup ? rt.duplicate_node(best) : skeleton[best]);
  }
  return rt;
}

TransferVector gather_step(const RoundingTree& rt, const TransferVector& y,
                           GatherMode mode) {
  if (static_cast<int>(y.num.size()) != rt.num_nodes)
    throw PipelineError("gather", "transfer vector size mismatch");

  // Separation makes the balls pairwise disjoint; the draw below relies on it.
  {
    std::vector<char> seen(rt.num_facilities, 0);
    for (const auto& ball : rt.balls)
      for (int f : ball) {
        if (seen[f])
          throw PipelineError("gather", "skeleton balls overlap; separation violated");
        seen[f] = 1;
      }
  }

  TransferVector out = y;
  const bool dup = rt.anchor_mode == AnchorMode::MaxCapacityDuplicate;
  for (std::size_t i = 0; i < rt.balls.size(); ++i) {
    const std::vector<int>& ball = rt.balls[i];
    const int anchor = rt.anchor[i];
    const int target = dup ? rt.duplicate_node(static_cast<int>(i))
                           : rt.skeleton[i];
    std::int64_t ball_mass = 0;
    for (int f : ball) ball_mass += out.num[f];

    if (mode == GatherMode::Everything) {
      for (int f : ball) out.num[f] = 0;
      out.num[target] = ball_mass;
      continue;
    }

    if (ball_mass < out.den)
      throw PipelineError("gather", "ball mass below one unit at skeleton vertex " +
                                        std::to_string(rt.skeleton[i]));
    // One unit onto the target: the anchor's whole value first, then the
    // rest in decreasing capacity (ties by smallest id).
    std::int64_t need = out.den;
    std::int64_t moved = std::min(out.num[anchor], need);
    out.num[anchor] -= moved;
    need -= moved;
    if (dup) {
      // The anchor leaves the tree, so its remaining mass must be zero;
      // it never exceeds one unit in the hard path.
      if (out.num[anchor] != 0)
        throw PipelineError("gather", "anchor retained mass above one unit");
    }
    std::vector<int> rest;
    for (int f : ball)
      if (f != anchor && f != target) rest.push_back(f);
    std::sort(rest.begin(), rest.end(), [&](int a, int b) {
      if (rt.caps[a] != rt.caps[b]) return rt.caps[a] > rt.caps[b];
      return a < b;
    });
    for (int f : rest) {
      if (need == 0) break;
      std::int64_t take = std::min(out.num[f], need);
      out.num[f] -= take;
      need -= take;
    }
    if (need > 0)
      throw PipelineError("gather", "insufficient ball mass despite precondition");
    out.num[target] += out.den;
  }
  return out;
}

namespace {

struct LeafGroup {
  int parent = -1;
  std::vector<int> leaves;     // capacity-descending, id-ascending
  std::int64_t mass = 0;       // in num units
  std::int64_t floor_count = 0;
  bool fractional = false;
  std::int64_t residual_demand = 0;  // uncovered capacity mass if floored
};

TransferCheck check_candidate(const RoundingTree& rt, const HostMetric& tm,
                              const TransferVector& y,
                              const std::vector<int>& opened) {
  TransferVector cand;
  cand.den = y.den;
  cand.num.assign(y.num.size(), 0);
  for (int v : opened) cand.num[v] = y.den;
  return verify_transfer(tm, rt.caps, y, cand, 2);
}

}  // namespace

std::vector<int> tree_transfer(const RoundingTree& rt, const TransferVector& y,
                               TreeTransferStats* stats) {
  const std::int64_t den = y.den;
  std::int64_t total = 0;
  for (int v = 0; v < rt.num_nodes; ++v) {
    if (!rt.in_tree[v]) {
      if (y.num[v] != 0)
        throw PipelineError("tree-transfer", "mass on a node outside the tree");
      continue;
    }
    if (y.num[v] < 0 || y.num[v] > den)
      throw PipelineError("tree-transfer", "value outside [0,1]");
    if (!rt.is_tree_leaf(v) && y.num[v] != den)
      throw PipelineError("tree-transfer", "non-leaf with fractional value");
    total += y.num[v];
  }
  if (total % den != 0)
    throw PipelineError("tree-transfer", "non-integral total mass");
  const std::int64_t target_open = total / den;

  HostMetric tm = rt.tree_metric();

  std::vector<int> non_leaves;
  std::vector<LeafGroup> groups;
  {
    std::map<int, LeafGroup> by_parent;
    for (int v = 0; v < rt.num_nodes; ++v) {
      if (!rt.in_tree[v]) continue;
      if (!rt.is_tree_leaf(v)) {
        non_leaves.push_back(v);
      } else if (!rt.tree_adj[v].empty()) {
        LeafGroup& lg = by_parent[rt.tree_adj[v][0]];
        lg.parent = rt.tree_adj[v][0];
        lg.leaves.push_back(v);
        lg.mass += y.num[v];
      }
    }
    for (auto& [parent, lg] : by_parent) groups.push_back(std::move(lg));
    // An isolated tree node (single-vertex tree) is integral by the checks
    // above; treat it as opened directly.
    for (int v = 0; v < rt.num_nodes; ++v)
      if (rt.in_tree[v] && rt.tree_adj[v].empty() && y.num[v] == den)
        non_leaves.push_back(v);
  }

  std::int64_t floor_sum = 0;
  for (LeafGroup& lg : groups) {
    std::sort(lg.leaves.begin(), lg.leaves.end(), [&](int a, int b) {
      if (rt.caps[a] != rt.caps[b]) return rt.caps[a] > rt.caps[b];
      return a < b;
    });
    lg.floor_count = lg.mass / den;
    lg.fractional = lg.mass % den != 0;
    std::int64_t covered = 0;
    for (std::int64_t i = 0; i < lg.floor_count && i < static_cast<std::int64_t>(lg.leaves.size()); ++i)
      covered += checked_mul(rt.caps[lg.leaves[i]], den);
    std::int64_t demand = 0;
    for (int v : lg.leaves) demand += checked_mul(rt.caps[v], y.num[v]);
    lg.residual_demand = std::max<std::int64_t>(0, demand - covered);
    floor_sum += lg.floor_count;
  }
  const std::int64_t extras = target_open - static_cast<std::int64_t>(non_leaves.size()) - floor_sum;
  if (extras < 0)
    throw PipelineError("tree-transfer", "leaf budget below the floor sum");

  auto assemble = [&](const std::vector<std::int64_t>& counts) {
    std::vector<int> opened = non_leaves;
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
      for (std::int64_t i = 0; i < counts[gi]; ++i)
        opened.push_back(groups[gi].leaves[i]);
    std::sort(opened.begin(), opened.end());
    return opened;
  };

  // Greedy: hand the extra openings to the groups with the largest demand
  // left uncovered by their floor prefix.
  {
    std::vector<std::size_t> frac;
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
      if (groups[gi].fractional) frac.push_back(gi);
    if (extras > static_cast<std::int64_t>(frac.size()))
      throw PipelineError("tree-transfer", "more extras than fractional groups");
    std::sort(frac.begin(), frac.end(), [&](std::size_t a, std::size_t b) {
      if (groups[a].residual_demand != groups[b].residual_demand)
        return groups[a].residual_demand > groups[b].residual_demand;
      return groups[a].parent < groups[b].parent;
    });
    std::vector<std::int64_t> counts(groups.size());
    for (std::size_t gi = 0; gi < groups.size(); ++gi) counts[gi] = groups[gi].floor_count;
    for (std::int64_t e = 0; e < extras; ++e) counts[frac[e]] += 1;
    std::vector<int> opened = assemble(counts);
    if (check_candidate(rt, tm, y, opened).ok) {
      if (stats) stats->greedy += 1;
      return opened;
    }
  }

  // Exhaustive floor/ceil: choose which fractional groups get the extra.
  {
    std::vector<std::size_t> frac;
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
      if (groups[gi].fractional) frac.push_back(gi);
    const std::size_t fn = frac.size();
    if (fn <= 20) {
      std::vector<std::int64_t> counts(groups.size());
      std::vector<int> pick(fn, 0);
      // Enumerate subsets of the fractional groups of size `extras`.
      std::vector<std::size_t> comb;
      std::function<std::optional<std::vector<int>>(std::size_t)> rec =
          [&](std::size_t start) -> std::optional<std::vector<int>> {
        if (static_cast<std::int64_t>(comb.size()) == extras) {
          for (std::size_t gi = 0; gi < groups.size(); ++gi)
            counts[gi] = groups[gi].floor_count;
          for (std::size_t ci : comb) counts[frac[ci]] += 1;
          std::vector<int> opened = assemble(counts);
          if (check_candidate(rt, tm, y, opened).ok) return opened;
          return std::nullopt;
        }
        for (std::size_t i = start; i < fn; ++i) {
          comb.push_back(i);
          auto r = rec(i + 1);
          if (r) return r;
          comb.pop_back();
        }
        return std::nullopt;
      };
      auto found = rec(0);
      if (found) {
        if (stats) stats->floor_ceil_fallback += 1;
        return *found;
      }
    }
  }

  // Exhaustive over the leaves, keeping every non-leaf open.
  auto subset_search = [&](const std::vector<int>& pool,
                           const std::vector<int>& forced,
                           std::int64_t want) -> std::optional<std::vector<int>> {
    if (want < 0 || want > static_cast<std::int64_t>(pool.size()))
      return std::nullopt;
    long candidates = 0;
    std::vector<int> comb;
    std::function<std::optional<std::vector<int>>(std::size_t)> rec =
        [&](std::size_t start) -> std::optional<std::vector<int>> {
      if (static_cast<std::int64_t>(comb.size()) == want) {
        if (++candidates > 200000) return std::nullopt;
        std::vector<int> opened = forced;
        opened.insert(opened.end(), comb.begin(), comb.end());
        std::sort(opened.begin(), opened.end());
        if (check_candidate(rt, tm, y, opened).ok) return opened;
        return std::nullopt;
      }
      for (std::size_t i = start; i < pool.size(); ++i) {
        if (candidates > 200000) return std::nullopt;
        comb.push_back(pool[i]);
        auto r = rec(i + 1);
        if (r) return r;
        comb.pop_back();
      }
      return std::nullopt;
    };
    return rec(0);
  };

  {
    std::vector<int> all_leaves;
    for (const LeafGroup& lg : groups)
      for (int v : lg.leaves) all_leaves.push_back(v);
    std::sort(all_leaves.begin(), all_leaves.end());
    auto found = subset_search(
        all_leaves, non_leaves,
        target_open - static_cast<std::int64_t>(non_leaves.size()));
    if (found) {
      if (stats) stats->subset_fallback += 1;
      return *found;
    }
  }

  // With zero-capacity internal nodes a transfer that keeps every non-leaf
  // open may not exist at all, while one that closes an internal node does;
  // search the full node set before giving up.
  {
    std::vector<int> pool;
    for (int v = 0; v < rt.num_nodes; ++v)
      if (rt.in_tree[v]) pool.push_back(v);
    auto found = subset_search(pool, {}, target_open);
    if (found) {
      if (stats) stats->nonleaf_relaxed += 1;
      return *found;
    }
  }

  throw PipelineError("tree-transfer",
                      "no verifier-approved integral transfer found");
}

std::vector<int> finalize_transfer(const std::vector<int>& opened,
                                   const RoundingTree& rt) {
  std::vector<int> out;
  for (int v : opened) {
    if (rt.is_duplicate(v))
      out.push_back(rt.anchor[v - rt.num_facilities]);
    else
      out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int TransferChain::total_base_distance() const {
  int total = 0;
  for (const TransferStep& s : steps) total += s.r_base;
  return total;
}

namespace {

// Best rational approximation with denominator at most max_den (continued
// fractions); nullopt when nothing lands within tol.
std::optional<std::pair<std::int64_t, std::int64_t>> approx_rational(
    double x, std::int64_t max_den, double tol) {
  if (x < 0) return std::nullopt;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int it = 0; it < 64; ++it) {
    std::int64_t a = static_cast<std::int64_t>(std::floor(frac));
    std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - static_cast<double>(a);
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return std::nullopt;
  double approx = static_cast<double>(p1) / static_cast<double>(q1);
  if (std::abs(approx - x) <= tol) return std::make_pair(p1, q1);
  return std::nullopt;
}

}  // namespace

TransferVector rationalize_openings(const std::vector<double>& y,
                                    const std::vector<std::vector<int>>& balls,
                                    std::int64_t k, bool bound_by_one) {
  constexpr std::int64_t kGridDen = 1000000000;  // 1e-9 resolution fallback
  constexpr std::int64_t kMaxCoordDen = 10000;
  constexpr std::int64_t kMaxCommonDen = 1000000;

  // Prefer the denominators the LP output actually uses.
  std::int64_t den = 1;
  bool small_ok = true;
  for (double v : y) {
    auto r = approx_rational(v, kMaxCoordDen, 1e-7);
    if (!r) {
      small_ok = false;
      break;
    }
    den = std::lcm(den, r->second);
    if (den > kMaxCommonDen) {
      small_ok = false;
      break;
    }
  }
  if (!small_ok) den = kGridDen;

  TransferVector out;
  out.den = den;
  out.num.resize(y.size());
  const std::int64_t coord_cap = bound_by_one ? den : checked_mul(k, den);
  for (std::size_t i = 0; i < y.size(); ++i) {
    std::int64_t v = static_cast<std::int64_t>(std::llround(y[i] * static_cast<double>(den)));
    out.num[i] = std::clamp<std::int64_t>(v, 0, coord_cap);
  }

  // Repair the identities the transfer steps consume exactly: every ball
  // holds at least one unit and the total is exactly k units.
  for (const auto& ball : balls) {
    std::int64_t sum = 0;
    for (int f : ball) sum += out.num[f];
    std::int64_t deficit = den - sum;
    if (deficit <= 0) continue;
    // Top up the largest members first.
    std::vector<int> order(ball.begin(), ball.end());
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (out.num[a] != out.num[b]) return out.num[a] > out.num[b];
      return a < b;
    });
    for (int f : order) {
      std::int64_t room = coord_cap - out.num[f];
      std::int64_t add = std::min(room, deficit);
      out.num[f] += add;
      deficit -= add;
      if (deficit == 0) break;
    }
    if (deficit > 0)
      throw PipelineError("rationalize", "cannot restore a ball to one unit");
  }

  std::vector<int> ball_of(y.size(), -1);
  for (std::size_t b = 0; b < balls.size(); ++b)
    for (int f : balls[b]) ball_of[f] = static_cast<int>(b);
  std::vector<std::int64_t> ball_sum(balls.size(), 0);
  for (std::size_t i = 0; i < y.size(); ++i)
    if (ball_of[i] >= 0) ball_sum[ball_of[i]] += out.num[i];

  std::int64_t delta = checked_mul(k, den) - out.total_num();
  if (delta > 0) {
    for (std::size_t i = 0; i < y.size() && delta > 0; ++i) {
      std::int64_t add = std::min(coord_cap - out.num[i], delta);
      out.num[i] += add;
      delta -= add;
    }
  } else if (delta < 0) {
    // Remove surplus without dropping any ball below one unit.
    for (std::size_t i = 0; i < y.size() && delta < 0; ++i) {
      std::int64_t removable = out.num[i];
      if (ball_of[i] >= 0)
        removable = std::min(removable, ball_sum[ball_of[i]] - den);
      if (removable <= 0) continue;
      std::int64_t take = std::min(removable, -delta);
      out.num[i] -= take;
      if (ball_of[i] >= 0) ball_sum[ball_of[i]] -= take;
      delta += take;
    }
  }
  if (delta != 0)
    throw PipelineError("rationalize", "cannot restore the total to k units");
  return out;
}

}  // namespace ckso

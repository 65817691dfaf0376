#include "ckso/clustering.hpp"

#include <algorithm>
#include <map>

#include "ckso/graph_algos.hpp"

namespace ckso {

ComponentDecomposition prune_and_split(const GraphInstance& g,
                                       const std::vector<int>& skeleton) {
  const int nc = g.num_clients();
  const int nf = g.num_facilities();
  const int n = nc + nf;

  std::vector<int> sources;
  for (int s : skeleton) sources.push_back(facility_vertex(g, s));
  DistanceMap dm = multi_source_distances(g, sources);

  std::vector<char> kept(n, 0);
  for (int v = 0; v < n; ++v)
    kept[v] = dm.hops[v] != kUnreachable && dm.hops[v] <= 5;

  // Connected components of the induced subgraph via DFS.
  std::vector<int> comp(n, -1);
  int num_comp = 0;
  std::vector<int> stack;
  for (int start = 0; start < n; ++start) {
    if (!kept[start] || comp[start] >= 0) continue;
    comp[start] = num_comp;
    stack.push_back(start);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      auto visit = [&](int w) {
        if (kept[w] && comp[w] < 0) {
          comp[w] = num_comp;
          stack.push_back(w);
        }
      };
      if (v < nc)
        for (int f : g.adj_client[v]) visit(nc + f);
      else
        for (int c : g.adj_facility[v - nc]) visit(c);
    }
    ++num_comp;
  }

  // Order components by their smallest contained vertex id.
  std::vector<std::string> min_id(num_comp);
  for (int v = 0; v < n; ++v) {
    if (!kept[v]) continue;
    const std::string& id = v < nc ? g.client_ids[v] : g.facility_ids[v - nc];
    std::string& slot = min_id[comp[v]];
    if (slot.empty() || id < slot) slot = id;
  }
  std::vector<int> order(num_comp);
  for (int i = 0; i < num_comp; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return min_id[a] < min_id[b]; });
  std::vector<int> rank(num_comp);
  for (int i = 0; i < num_comp; ++i) rank[order[i]] = i;

  ComponentDecomposition dec;
  dec.components.resize(num_comp);
  std::vector<std::vector<int>> comp_clients(num_comp), comp_facilities(num_comp);
  for (int c = 0; c < nc; ++c)
    if (kept[c]) comp_clients[rank[comp[c]]].push_back(c);
  for (int f = 0; f < nf; ++f)
    if (kept[nc + f]) comp_facilities[rank[comp[nc + f]]].push_back(f);

  for (int i = 0; i < num_comp; ++i) {
    Component& part = dec.components[i];
    part.client_origin = comp_clients[i];
    part.facility_origin = comp_facilities[i];
    GraphInstance& sub = part.graph;
    sub.capacity_mode = g.capacity_mode;
    std::map<int, int> cmap, fmap;
    for (int c : part.client_origin) {
      cmap[c] = static_cast<int>(sub.client_ids.size());
      sub.client_ids.push_back(g.client_ids[c]);
    }
    for (int f : part.facility_origin) {
      fmap[f] = static_cast<int>(sub.facility_ids.size());
      sub.facility_ids.push_back(g.facility_ids[f]);
      sub.capacities.push_back(g.capacities[f]);
    }
    sub.adj_client.assign(sub.client_ids.size(), {});
    sub.adj_facility.assign(sub.facility_ids.size(), {});
    for (int c : part.client_origin)
      for (int f : g.adj_client[c])
        if (kept[nc + f]) sub.add_edge(cmap[c], fmap[f]);
    sub.sort_adjacency();
    for (int s : skeleton) {
      auto it = fmap.find(s);
      if (it != fmap.end()) part.skeleton.push_back(it->second);
    }
    std::sort(part.skeleton.begin(), part.skeleton.end());
  }
  return dec;
}

std::optional<std::vector<PartitionEntry>> partition_dp(
    const ComponentDecomposition& dec, std::int64_t k, std::int64_t p,
    const FeasOracle& feas, bool soft_multiset) {
  const int ell = static_cast<int>(dec.components.size());
  if (ell == 0) {
    if (k == 0 && p == 0) return std::vector<PartitionEntry>{};
    return std::nullopt;
  }
  if (k < 0 || p < 0) return std::nullopt;

  struct Cell {
    bool reachable = false;
    std::int64_t k_i = -1, p_i = -1;  // witness of the last component added
  };
  auto idx = [&](std::int64_t kk, std::int64_t pp) {
    return static_cast<std::size_t>(kk) * (p + 1) + pp;
  };

  // Per-component budget ranges plus suffix sums: a partial sum only
  // matters if the remaining components can still absorb the leftover.
  std::vector<std::int64_t> k_lo(ell), k_hi(ell), p_hi(ell);
  for (int i = 0; i < ell; ++i) {
    const Component& comp = dec.components[i];
    std::int64_t cap_sum = 0;
    for (std::int64_t c : comp.graph.capacities) cap_sum += c;
    k_lo[i] = static_cast<std::int64_t>(comp.skeleton.size());
    k_hi[i] = soft_multiset
                  ? k
                  : std::min<std::int64_t>(k, comp.graph.num_facilities());
    p_hi[i] = std::min<std::int64_t>(
        {p, static_cast<std::int64_t>(comp.graph.num_clients()),
         soft_multiset ? p : cap_sum});
  }
  std::vector<std::int64_t> suf_k_lo(ell + 1, 0), suf_k_hi(ell + 1, 0),
      suf_p_hi(ell + 1, 0);
  for (int i = ell - 1; i >= 0; --i) {
    suf_k_lo[i] = suf_k_lo[i + 1] + k_lo[i];
    suf_k_hi[i] = std::min<std::int64_t>(k, suf_k_hi[i + 1] + k_hi[i]);
    suf_p_hi[i] = std::min<std::int64_t>(p, suf_p_hi[i + 1] + p_hi[i]);
  }

  std::vector<std::vector<Cell>> table(ell + 1);
  table[0].assign(static_cast<std::size_t>(k + 1) * (p + 1), {});
  table[0][idx(0, 0)].reachable = true;

  for (int i = 0; i < ell; ++i) {
    // Feasibility is monotone: more budget k_i keeps a component feasible
    // (there is room for extra y mass up to |F_i| in hard mode), fewer
    // clients p_i always does.  The memo exploits both directions.
    std::map<std::pair<std::int64_t, std::int64_t>, bool> memo;
    auto feasible = [&](std::int64_t ki, std::int64_t pi) {
      auto key = std::make_pair(ki, pi);
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
      for (const auto& [kp, ok] : memo) {
        if (ok && kp.first <= ki && kp.second >= pi) return memo[key] = true;
        if (!ok && kp.first >= ki && kp.second <= pi) return memo[key] = false;
      }
      return memo[key] = feas(i, ki, pi);
    };

    table[i + 1].assign(static_cast<std::size_t>(k + 1) * (p + 1), {});
    for (std::int64_t kk = 0; kk <= k; ++kk)
      for (std::int64_t pp = 0; pp <= p; ++pp) {
        if (!table[i][idx(kk, pp)].reachable) continue;
        // Descending order so one feasible probe implies the cheaper cells
        // and one infeasible probe at the top prunes a whole k column.
        for (std::int64_t ki = std::min(k_hi[i], k - kk); ki >= k_lo[i]; --ki) {
          std::int64_t k_rest = k - kk - ki;
          if (k_rest < suf_k_lo[i + 1] || k_rest > suf_k_hi[i + 1]) continue;
          for (std::int64_t pi = std::min(p_hi[i], p - pp); pi >= 0; --pi) {
            std::int64_t p_rest = p - pp - pi;
            if (p_rest > suf_p_hi[i + 1]) continue;
            Cell& cell = table[i + 1][idx(kk + ki, pp + pi)];
            if (cell.reachable) continue;
            if (!feasible(ki, pi)) continue;
            cell.reachable = true;
            cell.k_i = ki;
            cell.p_i = pi;
          }
        }
      }
  }

  if (!table[ell][idx(k, p)].reachable) return std::nullopt;
  std::vector<PartitionEntry> parts(ell);
  std::int64_t kk = k, pp = p;
  for (int i = ell; i >= 1; --i) {
    const Cell& cell = table[i][idx(kk, pp)];
    parts[i - 1] = {cell.k_i, cell.p_i};
    kk -= cell.k_i;
    pp -= cell.p_i;
  }
  return parts;
}

}  // namespace ckso

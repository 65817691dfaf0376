#include "ckso/variants.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "ckso/flow.hpp"
#include "ckso/graph_algos.hpp"

namespace ckso {

std::pair<MetricInstance, ReductionWitness> soft_to_hard(const MetricInstance& inst) {
  if (inst.capacity_mode != CapacityMode::Soft)
    throw PipelineError("soft-to-hard", "instance does not use soft capacities");

  // |C| co-located copies per facility suffice for any useful multiplicity;
  // k may exceed |C| in degenerate instances, so pad up to k copies.
  const std::int64_t copies =
      std::max<std::int64_t>(inst.num_clients(), std::max<std::int64_t>(inst.k, 1));

  ReductionWitness witness;
  witness.copies = copies;

  MetricInstance out;
  out.mode = inst.mode;
  out.capacity_mode = CapacityMode::Hard;
  out.k = inst.k;
  out.p = inst.p;
  out.client_ids = inst.client_ids;

  // Copy ids sort right after each other; indices stay deterministic.
  std::vector<std::pair<std::string, int>> copy_origin;  // id -> facility idx
  for (int f = 0; f < inst.num_facilities(); ++f)
    for (std::int64_t c = 0; c < copies; ++c) {
      std::string id = inst.facility_ids[f] + "@" + std::to_string(c);
      witness.origin[id] = inst.facility_ids[f];
      copy_origin.push_back({id, f});
    }
  std::sort(copy_origin.begin(), copy_origin.end());
  for (const auto& [id, f] : copy_origin) {
    out.facility_ids.push_back(id);
    out.capacities.push_back(inst.capacities[f]);
  }

  const int n = out.universe_size();
  const int nc = out.num_clients();
  out.dist.assign(static_cast<std::size_t>(n) * n, 0.0);
  auto orig_univ = [&](int u) {
    return u < nc ? u : inst.num_clients() + copy_origin[u - nc].second;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out.dist_univ_ref(a, b) = inst.dist_univ(orig_univ(a), orig_univ(b));
  return {std::move(out), std::move(witness)};
}

Solution pull_back_soft_solution(const Solution& sol, const ReductionWitness& witness) {
  Solution out;
  out.radius = sol.radius;
  std::map<std::string, int> mult;
  for (const auto& [id, m] : sol.open) {
    auto it = witness.origin.find(id);
    mult[it == witness.origin.end() ? id : it->second] += m;
  }
  for (const auto& [id, m] : mult) out.open.push_back({id, m});
  for (const auto& [cid, fid] : sol.assign) {
    auto it = witness.origin.find(fid);
    out.assign.push_back({cid, it == witness.origin.end() ? fid : it->second});
  }
  std::sort(out.assign.begin(), out.assign.end());
  return out;
}

std::pair<MetricInstance, ReductionWitness> supplier_to_center(const MetricInstance& inst) {
  if (inst.mode != Mode::Supplier)
    throw PipelineError("supplier-to-center", "instance is not in supplier mode");
  const std::int64_t n_copies = inst.num_facilities() + 1;

  ReductionWitness witness;
  witness.copies = n_copies;

  // Universe of the center instance: every vertex is both client and site.
  std::vector<std::pair<std::string, int>> points;  // id -> original universe idx
  for (int c = 0; c < inst.num_clients(); ++c)
    for (std::int64_t i = 1; i <= n_copies; ++i) {
      std::string id = inst.client_ids[c] + "#" + std::to_string(i);
      witness.origin[id] = inst.client_ids[c];
      points.push_back({id, c});
    }
  for (int f = 0; f < inst.num_facilities(); ++f)
    points.push_back({inst.facility_ids[f], inst.num_clients() + f});
  std::sort(points.begin(), points.end());

  const int nv = static_cast<int>(points.size());
  std::vector<std::int64_t> caps(nv, 0);
  for (int v = 0; v < nv; ++v) {
    int orig = points[v].second;
    if (orig >= inst.num_clients())
      caps[v] = n_copies * inst.capacities[orig - inst.num_clients()];
  }

  // Explicit distances: copy-to-facility pairs inherit d(v,u); the rest is
  // the shortest-path closure, which never shortens an explicit value.
  constexpr double kInf = kInfDist;
  std::vector<double> d(static_cast<std::size_t>(nv) * nv, kInf);
  auto at = [&](int a, int b) -> double& {
    return d[static_cast<std::size_t>(a) * nv + b];
  };
  for (int v = 0; v < nv; ++v) at(v, v) = 0.0;
  for (int a = 0; a < nv; ++a)
    for (int b = 0; b < nv; ++b) {
      int oa = points[a].second, ob = points[b].second;
      bool a_client = oa < inst.num_clients();
      bool b_client = ob < inst.num_clients();
      if (a_client != b_client) {
        double v = inst.dist_univ(oa, ob);
        at(a, b) = std::min(at(a, b), v);
      }
    }
  for (int m = 0; m < nv; ++m)
    for (int a = 0; a < nv; ++a) {
      if (at(a, m) == kInf) continue;
      for (int b = 0; b < nv; ++b) {
        if (at(m, b) == kInf) continue;
        double via = at(a, m) + at(m, b);
        if (via < at(a, b)) at(a, b) = via;
      }
    }

  MetricInstance out;
  out.mode = Mode::Center;
  out.capacity_mode = inst.capacity_mode;
  out.k = inst.k;
  out.p = inst.p * n_copies;
  for (const auto& [id, orig] : points) out.client_ids.push_back(id);
  out.facility_ids = out.client_ids;
  out.capacities = caps;
  const int un = out.universe_size();
  out.dist.assign(static_cast<std::size_t>(un) * un, 0.0);
  for (int a = 0; a < un; ++a)
    for (int b = 0; b < un; ++b)
      out.dist_univ_ref(a, b) = d[static_cast<std::size_t>(a % nv) * nv + (b % nv)];
  return {std::move(out), std::move(witness)};
}

Solution pull_back_center_solution(const MetricInstance& supplier_inst,
                                   const Solution& center_sol,
                                   const ReductionWitness& witness) {
  // Open the original facilities behind the center solution, padding with
  // unopened sites when the center solution wasted slots on client copies.
  std::vector<int> open;
  std::vector<char> opened(supplier_inst.num_facilities(), 0);
  for (const auto& [id, mult] : center_sol.open) {
    if (witness.origin.count(id)) continue;  // client copy, capacity zero
    auto f = supplier_inst.facility_index(id);
    if (!f) throw PipelineError("center-pullback", "unknown facility " + id);
    for (int m = 0; m < mult; ++m) open.push_back(*f);
    opened[*f] = 1;
  }
  std::int64_t missing = supplier_inst.k - static_cast<std::int64_t>(open.size());
  if (supplier_inst.capacity_mode == CapacityMode::Hard) {
    for (int f = 0; f < supplier_inst.num_facilities() && missing > 0; ++f)
      if (!opened[f]) {
        open.push_back(f);
        --missing;
      }
  } else if (missing > 0 && !open.empty()) {
    for (; missing > 0; --missing) open.push_back(open.front());
  }
  if (missing > 0)
    throw PipelineError("center-pullback", "cannot restore k facilities");
  std::sort(open.begin(), open.end());

  // One capacitated matching at the achieved radius recovers an assignment
  // of p original clients.
  const double r = center_sol.radius;
  std::map<int, int> mult;
  for (int f : open) mult[f] += 1;

  const int nc = supplier_inst.num_clients();
  const int nopen = static_cast<int>(mult.size());
  std::vector<int> open_list;
  for (const auto& [f, m] : mult) open_list.push_back(f);

  const int src = 0, gate = 1, fac_base = 2;
  const int client_base = fac_base + nopen;
  const int sink = client_base + nc;
  FlowNetwork net(sink + 1, src, sink);
  net.add_arc(src, gate, supplier_inst.p);
  std::vector<std::vector<std::pair<int, int>>> arcs(nopen);  // (arc id, client)
  for (int i = 0; i < nopen; ++i) {
    int f = open_list[i];
    net.add_arc(gate, fac_base + i, supplier_inst.capacities[f] * mult[f]);
    for (int c = 0; c < nc; ++c)
      if (supplier_inst.dist_cf(c, f) <= r)
        arcs[i].push_back({net.add_arc(fac_base + i, client_base + c, 1), c});
  }
  for (int c = 0; c < nc; ++c) net.add_arc(client_base + c, sink, 1);
  if (net.max_flow() != supplier_inst.p)
    throw PipelineError("center-pullback",
                        "matching below p at the center solution radius");

  Solution out;
  for (const auto& [f, m] : mult)
    out.open.push_back({supplier_inst.facility_ids[f], m});
  double radius = 0.0;
  for (int i = 0; i < nopen; ++i)
    for (const auto& [arc, c] : arcs[i])
      if (net.flow_on(arc) > 0) {
        out.assign.push_back({supplier_inst.client_ids[c],
                              supplier_inst.facility_ids[open_list[i]]});
        radius = std::max(radius, supplier_inst.dist_cf(c, open_list[i]));
      }
  std::sort(out.assign.begin(), out.assign.end());
  out.radius = radius;
  return out;
}

MetricInstance center_to_supplier(const MetricInstance& inst) {
  if (inst.mode != Mode::Center)
    throw PipelineError("center-to-supplier", "instance is not in center mode");
  MetricInstance out = inst;
  out.mode = Mode::Supplier;
  if (inst.client_ids == inst.facility_ids) return out;
  // Share the vertex set: every point becomes both a client and a site
  // (capacity 0 where none was given).
  std::vector<std::string> all = inst.client_ids;
  all.insert(all.end(), inst.facility_ids.begin(), inst.facility_ids.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::map<std::pair<std::string, std::string>, double> dmap;
  auto id_of = [&](int u) -> const std::string& {
    return u < inst.num_clients() ? inst.client_ids[u]
                                  : inst.facility_ids[u - inst.num_clients()];
  };
  for (int a = 0; a < inst.universe_size(); ++a)
    for (int b = 0; b < inst.universe_size(); ++b)
      dmap[{id_of(a), id_of(b)}] = inst.dist_univ(a, b);
  std::vector<std::pair<std::string, std::int64_t>> facilities;
  for (const std::string& id : all) {
    auto f = inst.facility_index(id);
    facilities.push_back({id, f ? inst.capacities[*f] : 0});
  }
  return make_metric_instance(Mode::Supplier, inst.capacity_mode, inst.k, inst.p,
                              all, facilities, dmap);
}

TransferVector uniform_soft_tree_transfer(const RoundingTree& rt,
                                          const TransferVector& y) {
  if (rt.anchor_mode != AnchorMode::SkeletonInPlace)
    throw PipelineError("tree-push", "requires the in-place uniform tree");
  for (std::size_t i = 1; i < rt.caps.size(); ++i)
    if (rt.caps[i] != rt.caps[0])
      throw PipelineError("tree-push", "capacities are not uniform");
  for (int s : rt.skeleton)
    if (y.num[s] < y.den)
      throw PipelineError("tree-push", "skeleton vertex below one unit");

  // Root at the smallest-id skeleton vertex and orient the tree.
  const int root = rt.skeleton.front();
  const int n = rt.num_nodes;
  std::vector<int> parent(n, -1), order;
  {
    std::vector<char> seen(n, 0);
    std::queue<int> queue;
    queue.push(root);
    seen[root] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop();
      order.push_back(v);
      for (int w : rt.tree_adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = v;
          queue.push(w);
        }
    }
  }
  if (static_cast<int>(order.size()) != n)
    throw PipelineError("tree-push", "tree is not connected");

  // Subtree sums bottom-up, then y''_v = floor(Y_v) - sum floor(Y_child).
  std::vector<std::int64_t> subtree(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    subtree[*it] += y.num[*it];
    if (parent[*it] >= 0) subtree[parent[*it]] += subtree[*it];
  }
  if (subtree[root] % y.den != 0)
    throw PipelineError("tree-push", "root subtree sum is not integral");

  TransferVector out;
  out.den = y.den;
  out.num.assign(n, 0);
  for (int v : order) {
    std::int64_t delta = subtree[v] % y.den;  // pushed to the parent
    if (delta > y.num[v])
      throw PipelineError("tree-push", "delta exceeds the vertex value");
    std::int64_t floor_v = subtree[v] - delta;
    std::int64_t child_floors = 0;
    for (int w : rt.tree_adj[v])
      if (parent[w] == v) child_floors += subtree[w] - (subtree[w] % y.den);
    std::int64_t val = floor_v - child_floors;
    if (val < 0) throw PipelineError("tree-push", "negative rounded value");
    out.num[v] = val;
  }
  if (out.total_num() != y.total_num())
    throw PipelineError("tree-push", "mass not preserved");
  return out;
}

}  // namespace ckso

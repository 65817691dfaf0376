#include "ckso/rounding.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "ckso/flow.hpp"
#include "ckso/graph_algos.hpp"
#include "ckso/variants.hpp"

namespace ckso {

std::optional<Assignment> match_clients(const GraphInstance& g,
                                        const std::vector<int>& open,
                                        const std::vector<int>& multiplicity,
                                        int r, std::int64_t p) {
  const int nc = g.num_clients();
  const int nopen = static_cast<int>(open.size());
  if (p < 0) return std::nullopt;
  if (p == 0) return Assignment{};

  // Nodes: source, budget gate, open facilities, clients, sink.  The gate
  // caps the total at exactly p; facility arcs carry L(u) * mult(u), which
  // is flow-equivalent to duplicating each facility to its capacity.
  const int src = 0, gate = 1;
  const int fac_base = 2;
  const int client_base = fac_base + nopen;
  const int sink = client_base + nc;
  FlowNetwork net(sink + 1, src, sink);
  net.add_arc(src, gate, p);

  std::vector<std::vector<int>> arc_ids(nopen);
  std::vector<std::vector<int>> arc_clients(nopen);
  for (int i = 0; i < nopen; ++i) {
    std::int64_t cap = g.capacities[open[i]] * multiplicity[i];
    net.add_arc(gate, fac_base + i, cap);
    DistanceMap dm = single_source_distances(g, facility_vertex(g, open[i]));
    for (int c = 0; c < nc; ++c) {
      int h = dm.hops[c];
      if (h == kUnreachable || h > r + 1) continue;
      arc_ids[i].push_back(net.add_arc(fac_base + i, client_base + c, 1));
      arc_clients[i].push_back(c);
    }
  }
  for (int c = 0; c < nc; ++c) net.add_arc(client_base + c, sink, 1);

  if (net.max_flow() != p) return std::nullopt;

  Assignment out;
  for (int i = 0; i < nopen; ++i)
    for (std::size_t j = 0; j < arc_ids[i].size(); ++j)
      if (net.flow_on(arc_ids[i][j]) > 0)
        out.pairs.push_back({arc_clients[i][j], open[i]});
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

namespace {

TransferVector characteristic_vector(const std::vector<int>& opened, int n,
                                     std::int64_t den) {
  TransferVector out;
  out.den = den;
  out.num.assign(n, 0);
  for (int v : opened) out.num[v] = den;
  return out;
}

double mass_moved(const TransferVector& a, const TransferVector& b) {
  std::int64_t shift = 0;
  for (std::size_t i = 0; i < a.num.size(); ++i)
    shift += std::abs(a.num[i] - b.num[i]);
  return static_cast<double>(shift) / (2.0 * static_cast<double>(a.den));
}

void run_step(const RoundingHooks& hooks, TransferChain& chain,
              const char* name, const char* host_name, int r_host,
              int host_factor, const HostMetric& host,
              const std::vector<std::int64_t>& caps, const TransferVector& before,
              const TransferVector& after) {
  TransferCheck check = verify_transfer(host, caps, before, after, r_host);
  if (!check.ok)
    throw PipelineError(name, "transfer verification failed: " + check.reason);
  TransferStep step;
  step.name = name;
  step.host = host_name;
  step.r_host = r_host;
  step.host_factor = host_factor;
  step.r_base = r_host * host_factor;
  step.mass_moved = mass_moved(before, after);
  if (hooks.on_transfer_step)
    hooks.on_transfer_step(step, host, caps, before, after);
  chain.steps.push_back(std::move(step));
}

}  // namespace

ComponentSolution round_component(const Component& comp, std::int64_t k_i,
                                  std::int64_t p_i, const FractionalPoint& point,
                                  Variant variant, const RoundingHooks& hooks) {
  const GraphInstance& g = comp.graph;
  if (comp.skeleton.empty())
    throw PipelineError("round-component", "component without skeleton vertices");
  if (variant == Variant::Soft)
    variant = Variant::Hard;  // soft runs the hard path on the reduced instance

  const bool in_place =
      variant == Variant::Uniform || variant == Variant::UniformSoft;
  BackboneTree bt = build_backbone_tree(g, comp.skeleton);
  RoundingTree rt = build_rounding_tree(
      g, comp.skeleton, bt,
      in_place ? AnchorMode::SkeletonInPlace : AnchorMode::MaxCapacityDuplicate);

  // Exact rational openings with the gather preconditions repaired.
  TransferVector y0;
  {
    TransferVector base = rationalize_openings(
        point.y, rt.balls, k_i, variant != Variant::UniformSoft);
    y0.den = base.den;
    y0.num = base.num;
    y0.num.resize(rt.num_nodes, 0);  // duplicates start at zero
  }

  TransferChain chain;
  TransferVector y1 = gather_step(
      rt, y0,
      variant == Variant::UniformSoft ? GatherMode::Everything : GatherMode::OneUnit);
  run_step(hooks, chain, "gather", "G'", 2, 1, rt.host, rt.caps, y0, y1);

  HostMetric tree_metric = rt.tree_metric();
  std::vector<int> open_facilities;
  std::vector<int> open_mult;
  TransferVector y_final;

  if (variant == Variant::UniformSoft) {
    TransferVector y2 = uniform_soft_tree_transfer(rt, y1);
    run_step(hooks, chain, "tree-push", "T'", 1, 10, tree_metric, rt.caps, y1, y2);
    y_final = y2;
    for (int f = 0; f < rt.num_facilities; ++f) {
      std::int64_t m = y2.num[f] / y2.den;
      if (m > 0) {
        open_facilities.push_back(f);
        open_mult.push_back(static_cast<int>(m));
      }
    }
  } else {
    std::vector<int> opened = tree_transfer(rt, y1, hooks.tree_stats);
    TransferVector y2 = characteristic_vector(opened, rt.num_nodes, y1.den);
    run_step(hooks, chain, "tree-round", "T'", 2, 10, tree_metric, rt.caps, y1, y2);
    if (variant == Variant::Hard) {
      std::vector<int> final_set = finalize_transfer(opened, rt);
      TransferVector y3 = characteristic_vector(final_set, rt.num_nodes, y2.den);
      run_step(hooks, chain, "finalize", "G'", 2, 1, rt.host, rt.caps, y2, y3);
      y_final = y3;
      open_facilities = final_set;
    } else {  // uniform hard: no duplicates were introduced
      y_final = y2;
      open_facilities = opened;
    }
    open_mult.assign(open_facilities.size(), 1);
  }

  // Composed chain: a transfer of the original LP openings at the summed
  // distance, re-verified in one shot.
  const int total = chain.total_base_distance();
  const int limit = variant == Variant::UniformSoft ? 12
                    : variant == Variant::Uniform   ? 22
                                                    : 24;
  if (total > limit)
    throw PipelineError("transfer-chain",
                        "composed distance " + std::to_string(total) +
                            " exceeds the variant bound " + std::to_string(limit));
  {
    TransferCheck composed = verify_transfer(rt.host, rt.caps, y0, y_final, total);
    if (!composed.ok)
      throw PipelineError("transfer-chain",
                          "composed transfer failed: " + composed.reason);
  }

  std::int64_t total_open = 0;
  for (int m : open_mult) total_open += m;
  if (total_open != k_i)
    throw PipelineError("transfer-chain", "opened mass differs from k_i");

  std::optional<Assignment> assignment =
      match_clients(g, open_facilities, open_mult, total, p_i);
  if (!assignment)
    throw PipelineError("matching",
                        "no cardinality-p matching at distance " +
                            std::to_string(total + 1) +
                            " despite a verified transfer");

  ComponentSolution out;
  out.open = open_facilities;
  out.multiplicity = open_mult;
  out.assignment = *assignment;
  int radius = 0;
  std::map<int, DistanceMap> from_facility;
  for (const auto& [c, f] : assignment->pairs) {
    auto it = from_facility.find(f);
    if (it == from_facility.end())
      it = from_facility.emplace(f, single_source_distances(g, facility_vertex(g, f)))
               .first;
    radius = std::max(radius, it->second.hops[c]);
  }
  out.hop_radius = radius;
  if (hooks.chain_out) *hooks.chain_out = chain;
  return out;
}

GraphSolution assemble(const ComponentDecomposition& dec,
                       const std::vector<ComponentSolution>& parts) {
  if (parts.size() != dec.components.size())
    throw PipelineError("assemble", "component count mismatch");
  GraphSolution out;
  std::vector<char> seen_facility;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Component& comp = dec.components[i];
    const ComponentSolution& part = parts[i];
    for (std::size_t j = 0; j < part.open.size(); ++j) {
      int orig = comp.facility_origin[part.open[j]];
      if (static_cast<std::size_t>(orig) >= seen_facility.size())
        seen_facility.resize(orig + 1, 0);
      if (seen_facility[orig])
        throw PipelineError("assemble", "components overlap on a facility");
      seen_facility[orig] = 1;
      out.open.push_back(orig);
      out.multiplicity.push_back(part.multiplicity[j]);
    }
    for (const auto& [c, f] : part.assignment.pairs)
      out.assign.push_back({comp.client_origin[c], comp.facility_origin[f]});
    out.hop_radius = std::max(out.hop_radius, part.hop_radius);
  }
  std::sort(out.assign.begin(), out.assign.end());
  return out;
}

}  // namespace ckso

#include "ckso/solver.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "ckso/clustering.hpp"
#include "ckso/flow.hpp"
#include "ckso/graph_algos.hpp"
#include "ckso/lp.hpp"
#include "ckso/skeleton.hpp"
#include "ckso/thresholding.hpp"
#include "ckso/variants.hpp"

namespace ckso {

Variant derive_variant(const MetricInstance& inst) {
  const bool uniform = inst.num_facilities() > 0 && inst.uniform_capacities();
  if (inst.capacity_mode == CapacityMode::Soft)
    return uniform ? Variant::UniformSoft : Variant::Soft;
  return uniform ? Variant::Uniform : Variant::Hard;
}

namespace {

Solution empty_service_solution(const MetricInstance& inst, Variant variant) {
  // p = 0: open the k largest-capacity facilities (multiset padding in the
  // soft path) and serve nobody.
  Solution sol;
  if (inst.k == 0) return sol;
  std::vector<int> order(inst.num_facilities());
  for (int f = 0; f < inst.num_facilities(); ++f) order[f] = f;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (inst.capacities[a] != inst.capacities[b])
      return inst.capacities[a] > inst.capacities[b];
    return a < b;
  });
  if (variant == Variant::UniformSoft || variant == Variant::Soft) {
    std::int64_t distinct = std::min<std::int64_t>(inst.k, inst.num_facilities());
    for (std::int64_t i = 0; i < distinct; ++i)
      sol.open.push_back({inst.facility_ids[order[i]], 1});
    sol.open.front().second += static_cast<int>(inst.k - distinct);
  } else {
    for (std::int64_t i = 0; i < inst.k; ++i)
      sol.open.push_back({inst.facility_ids[order[i]], 1});
  }
  std::sort(sol.open.begin(), sol.open.end());
  return sol;
}

// Upper bound gate: no fractional point can serve p clients at this
// threshold if even the relaxed service flow stays below p.
bool service_gate(const GraphInstance& g, std::int64_t k, std::int64_t p,
                  bool soft_multiset) {
  if (p == 0) return true;
  std::vector<std::int64_t> caps(g.capacities);
  std::sort(caps.rbegin(), caps.rend());
  std::int64_t cap_bound = 0;
  if (soft_multiset) {
    cap_bound = caps.empty() ? 0 : caps.front() * k;
  } else {
    for (std::int64_t i = 0; i < std::min<std::int64_t>(k, caps.size()); ++i)
      cap_bound += caps[i];
  }
  if (cap_bound < p) return false;

  const int nc = g.num_clients();
  const int nf = g.num_facilities();
  const int src = 0;
  const int sink = 1 + nf + nc;
  FlowNetwork net(sink + 1, src, sink);
  for (int f = 0; f < nf; ++f) {
    std::int64_t cap = soft_multiset ? g.capacities[f] * k : g.capacities[f];
    if (cap > 0) net.add_arc(src, 1 + f, cap);
  }
  for (int f = 0; f < nf; ++f)
    for (int c : g.adj_facility[f]) net.add_arc(1 + f, 1 + nf + c, 1);
  for (int c = 0; c < nc; ++c) net.add_arc(1 + nf + c, sink, 1);
  return net.max_flow() >= p;
}

struct GraphicAttempt {
  std::optional<GraphSolution> solution;
  std::vector<CandidateReport> candidates;
};

// The skeleton growth, LP and DP all run on degree-truncated capacities as
// their correctness arguments require.  The uniform paths then round and
// match with the original constant capacity: the transfer inequalities need
// a uniform L, and the matching argument stays valid for any capacities
// that dominate the LP's truncated ones.
GraphicAttempt solve_graphic(const GraphInstance& g, Variant variant,
                             const SolveOptions& opts, RunReport* report,
                             const std::vector<std::int64_t>& original_caps) {
  GraphicAttempt out;
  const bool soft_multiset = variant == Variant::UniformSoft;
  const bool restore_caps =
      variant == Variant::Uniform || variant == Variant::UniformSoft;
  std::vector<SkeletonCandidate> candidates = skeleton_candidates(g, g.k);

  for (const SkeletonCandidate& cand : candidates) {
    CandidateReport cand_report;
    for (int s : cand.facilities) cand_report.skeleton_ids.push_back(g.facility_ids[s]);

    ComponentDecomposition dec = prune_and_split(g, cand.facilities);

    // Feasibility cache also stores the points round_component consumes.
    std::map<std::tuple<int, std::int64_t, std::int64_t>, FractionalPoint> points;
    auto feas = [&](int i, std::int64_t ki, std::int64_t pi) {
      const Component& comp = dec.components[i];
      LPModel model = build_lp(comp.graph, comp.skeleton, ki, pi, !soft_multiset);
      if (opts.lp_observer) opts.lp_observer(model);
      LPFeasibility f = opts.exact_lp ? lp_feasible_exact(model) : lp_feasible(model);
      if (f.feasible) points[{i, ki, pi}] = *f.point;
      return f.feasible;
    };

    auto partition = partition_dp(dec, g.k, g.p, feas, soft_multiset);
    cand_report.dp_found = partition.has_value();
    if (!partition) {
      if (report) out.candidates.push_back(std::move(cand_report));
      continue;
    }

    std::vector<ComponentSolution> parts;
    for (std::size_t i = 0; i < dec.components.size(); ++i) {
      const auto& [ki, pi] = (*partition)[i];
      auto it = points.find({static_cast<int>(i), ki, pi});
      if (it == points.end()) {
        // The DP may have used a monotonicity implication; solve directly.
        feas(static_cast<int>(i), ki, pi);
        it = points.find({static_cast<int>(i), ki, pi});
        if (it == points.end())
          throw PipelineError("pipeline", "DP accepted an infeasible component");
      }
      RoundingHooks hooks;
      hooks.on_transfer_step = opts.transfer_observer;
      TransferChain chain;
      TreeTransferStats stats;
      hooks.chain_out = &chain;
      hooks.tree_stats = &stats;
      const Component* comp = &dec.components[i];
      Component restored;
      if (restore_caps) {
        restored = dec.components[i];
        for (std::size_t j = 0; j < restored.facility_origin.size(); ++j)
          restored.graph.capacities[j] = original_caps[restored.facility_origin[j]];
        comp = &restored;
      }
      ComponentSolution part = round_component(*comp, ki, pi, it->second, variant, hooks);
      if (report) {
        ComponentReport comp_report;
        comp_report.k_i = ki;
        comp_report.p_i = pi;
        comp_report.num_clients = dec.components[i].graph.num_clients();
        comp_report.num_facilities = dec.components[i].graph.num_facilities();
        comp_report.chain = chain;
        comp_report.hop_radius = part.hop_radius;
        cand_report.components.push_back(std::move(comp_report));
        report->tree_stats.greedy += stats.greedy;
        report->tree_stats.floor_ceil_fallback += stats.floor_ceil_fallback;
        report->tree_stats.subset_fallback += stats.subset_fallback;
        report->tree_stats.nonleaf_relaxed += stats.nonleaf_relaxed;
      }
      parts.push_back(std::move(part));
    }
    out.solution = assemble(dec, parts);
    out.candidates.push_back(std::move(cand_report));
    return out;
  }
  return out;
}

Solution to_solution(const MetricInstance& inst, const GraphSolution& gs) {
  Solution sol;
  for (std::size_t i = 0; i < gs.open.size(); ++i)
    sol.open.push_back({inst.facility_ids[gs.open[i]], gs.multiplicity[i]});
  std::sort(sol.open.begin(), sol.open.end());
  double radius = 0.0;
  for (const auto& [c, f] : gs.assign) {
    sol.assign.push_back({inst.client_ids[c], inst.facility_ids[f]});
    radius = std::max(radius, inst.dist_cf(c, f));
  }
  std::sort(sol.assign.begin(), sol.assign.end());
  sol.radius = radius;
  return sol;
}

}  // namespace

SolveOutcome solve_metric(const MetricInstance& input, const SolveOptions& opts) {
  // Center instances run through the shared-vertex reduction; ids survive,
  // so the solution needs no translation back.
  if (input.mode == Mode::Center) {
    MetricInstance supplier = center_to_supplier(input);
    return solve_metric(supplier, opts);
  }

  Variant variant = opts.variant.value_or(derive_variant(input));
  if ((variant == Variant::Uniform || variant == Variant::UniformSoft) &&
      !input.uniform_capacities())
    throw PipelineError("variant", "uniform path on non-uniform capacities");
  if ((variant == Variant::Soft || variant == Variant::UniformSoft) &&
      input.capacity_mode != CapacityMode::Soft)
    throw PipelineError("variant", "soft path on a hard-capacity instance");
  if ((variant == Variant::Hard || variant == Variant::Uniform) &&
      input.capacity_mode != CapacityMode::Hard)
    throw PipelineError("variant", "hard path on a soft-capacity instance");

  // Soft non-uniform: run the hard pipeline on the co-located-copy image.
  if (variant == Variant::Soft) {
    auto [reduced, witness] = soft_to_hard(input);
    SolveOptions inner = opts;
    inner.variant = Variant::Hard;
    SolveOutcome outcome = solve_metric(reduced, inner);
    outcome.report.variant = Variant::Soft;
    outcome.report.factor = variant_factor(Variant::Soft);
    if (outcome.solution) {
      Solution pulled = pull_back_soft_solution(*outcome.solution, witness);
      VerifyReport check = verify_solution(input, pulled, pulled.radius);
      if (!check.ok())
        throw PipelineError("soft-pullback", check.violations.front());
      outcome.solution = std::move(pulled);
    }
    return outcome;
  }

  SolveOutcome out;
  out.report.variant = variant;
  out.report.factor = variant_factor(variant);

  // Degenerate budgets first: the pipeline proper needs k >= 1 and p >= 1.
  if (input.k == 0) {
    if (input.p == 0) {
      out.solution = Solution{};
      out.report.feasible = true;
    }
    return out;
  }
  if (input.capacity_mode == CapacityMode::Hard && input.k > input.num_facilities())
    return out;
  if (input.num_facilities() == 0) return out;
  if (input.p == 0) {
    out.solution = empty_service_solution(input, variant);
    out.report.feasible = true;
    return out;
  }

  ThresholdSet taus = candidate_thresholds(input);
  const int factor = variant_factor(variant);
  for (double tau : taus.values) {
    ThresholdReport treport;
    treport.tau = tau;
    GraphInstance g = graph_at_threshold(input, tau);
    if (!service_gate(g, input.k, input.p, variant == Variant::UniformSoft)) {
      treport.skipped_by_gate = true;
      if (opts.record_report) out.report.thresholds.push_back(std::move(treport));
      continue;
    }
    GraphicAttempt attempt =
        solve_graphic(g, variant, opts, opts.record_report ? &out.report : nullptr,
                      input.capacities);
    treport.candidates = std::move(attempt.candidates);
    treport.success = attempt.solution.has_value();
    if (opts.record_report) out.report.thresholds.push_back(std::move(treport));
    if (attempt.solution) {
      Solution sol = to_solution(input, *attempt.solution);
      VerifyReport check =
          verify_solution(input, sol, factor * tau);
      if (!check.ok())
        throw PipelineError("verify", "internal solution check failed: " +
                                          check.violations.front());
      out.solution = std::move(sol);
      out.report.feasible = true;
      out.report.radius = out.solution->radius;
      out.report.threshold_used = tau;
      return out;
    }
  }
  return out;
}

}  // namespace ckso

#include "ckso/oracle.hpp"

#include <algorithm>

#include "ckso/flow.hpp"
#include "ckso/thresholding.hpp"

namespace ckso {

namespace {

// C(n, r) with saturation.
std::int64_t binomial_capped(std::int64_t n, std::int64_t r, std::int64_t cap) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::int64_t out = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    if (out > cap) return cap + 1;
    out = out * (n - r + i) / i;
  }
  return std::min(out, cap + 1);
}

struct ServeResult {
  bool ok = false;
  std::vector<std::pair<int, int>> assignment;  // (client, facility)
};

// Can the facility multiset serve exactly p clients at radius tau?
ServeResult try_serve(const MetricInstance& inst,
                      const std::vector<std::pair<int, int>>& open,  // (facility, mult)
                      double tau, bool want_witness) {
  const int nc = inst.num_clients();
  const int nopen = static_cast<int>(open.size());
  const std::int64_t p = inst.p;
  ServeResult out;
  if (p == 0) {
    out.ok = true;
    return out;
  }
  const int src = 0, gate = 1, fac_base = 2;
  const int client_base = fac_base + nopen;
  const int sink = client_base + nc;
  FlowNetwork net(sink + 1, src, sink);
  net.add_arc(src, gate, p);
  std::vector<std::vector<std::pair<int, int>>> arcs(nopen);
  for (int i = 0; i < nopen; ++i) {
    auto [f, mult] = open[i];
    net.add_arc(gate, fac_base + i, inst.capacities[f] * mult);
    for (int c = 0; c < nc; ++c)
      if (inst.dist_cf(c, f) <= tau)
        arcs[i].push_back({net.add_arc(fac_base + i, client_base + c, 1), c});
  }
  for (int c = 0; c < nc; ++c) net.add_arc(client_base + c, sink, 1);
  if (net.max_flow() != p) return out;
  out.ok = true;
  if (want_witness)
    for (int i = 0; i < nopen; ++i)
      for (const auto& [arc, c] : arcs[i])
        if (net.flow_on(arc) > 0) out.assignment.push_back({c, open[i].first});
  return out;
}

// Lexicographic enumeration of k-subsets (hard) or k-multisets over the
// facilities with positive capacity (soft).
template <class Fn>
bool enumerate_open_sets(const MetricInstance& inst, const Fn& fn) {
  const std::int64_t k = inst.k;
  const int nf = inst.num_facilities();
  if (k == 0) return fn({});
  if (inst.capacity_mode == CapacityMode::Hard) {
    std::vector<int> comb(k);
    for (std::int64_t i = 0; i < k; ++i) comb[i] = static_cast<int>(i);
    if (k > nf) return false;
    while (true) {
      std::vector<std::pair<int, int>> open;
      for (int f : comb) open.push_back({f, 1});
      if (fn(open)) return true;
      std::int64_t i = k - 1;
      while (i >= 0 && comb[i] == nf - k + i) --i;
      if (i < 0) return false;
      ++comb[i];
      for (std::int64_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  // Soft: multisets over positive-capacity facilities; any solution using a
  // zero-capacity site can shift those openings onto a positive one.
  std::vector<int> positive;
  for (int f = 0; f < nf; ++f)
    if (inst.capacities[f] > 0) positive.push_back(f);
  if (positive.empty()) return false;
  const int m = static_cast<int>(positive.size());
  std::vector<int> pick(k, 0);  // nondecreasing indices into `positive`
  while (true) {
    std::vector<std::pair<int, int>> open;
    for (std::int64_t i = 0; i < k; ++i) {
      int f = positive[pick[i]];
      if (!open.empty() && open.back().first == f)
        open.back().second += 1;
      else
        open.push_back({f, 1});
    }
    if (fn(open)) return true;
    std::int64_t i = k - 1;
    while (i >= 0 && pick[i] == m - 1) --i;
    if (i < 0) return false;
    ++pick[i];
    for (std::int64_t j = i + 1; j < k; ++j) pick[j] = pick[i];
  }
}

Solution make_witness(const MetricInstance& inst,
                      const std::vector<std::pair<int, int>>& open,
                      const std::vector<std::pair<int, int>>& assignment) {
  Solution sol;
  for (const auto& [f, mult] : open)
    sol.open.push_back({inst.facility_ids[f], mult});
  double radius = 0.0;
  for (const auto& [c, f] : assignment) {
    sol.assign.push_back({inst.client_ids[c], inst.facility_ids[f]});
    radius = std::max(radius, inst.dist_cf(c, f));
  }
  std::sort(sol.assign.begin(), sol.assign.end());
  sol.radius = radius;
  return sol;
}

std::optional<Solution> trivial_empty_service(const MetricInstance& inst) {
  // p = 0: open the k largest-capacity facilities and serve nobody.
  if (inst.k == 0) return Solution{};
  const int nf = inst.num_facilities();
  std::vector<int> order(nf);
  for (int f = 0; f < nf; ++f) order[f] = f;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (inst.capacities[a] != inst.capacities[b])
      return inst.capacities[a] > inst.capacities[b];
    return a < b;
  });
  Solution sol;
  if (inst.capacity_mode == CapacityMode::Hard) {
    if (inst.k > nf) return std::nullopt;
    for (std::int64_t i = 0; i < inst.k; ++i)
      sol.open.push_back({inst.facility_ids[order[i]], 1});
  } else {
    if (nf == 0) return std::nullopt;
    std::int64_t distinct = std::min<std::int64_t>(inst.k, nf);
    for (std::int64_t i = 0; i < distinct; ++i)
      sol.open.push_back({inst.facility_ids[order[i]], 1});
    sol.open.front().second += static_cast<int>(inst.k - distinct);
  }
  std::sort(sol.open.begin(), sol.open.end());
  return sol;
}

}  // namespace

OracleResult exact_opt(const MetricInstance& inst, const OracleOptions& opts) {
  OracleResult out;
  if (inst.p == 0) {
    auto sol = trivial_empty_service(inst);
    if (!sol) return out;
    out.feasible = true;
    out.opt = 0.0;
    out.witness = std::move(*sol);
    return out;
  }
  if (inst.k == 0) return out;

  std::int64_t sets =
      inst.capacity_mode == CapacityMode::Hard
          ? binomial_capped(inst.num_facilities(), inst.k, opts.flow_budget)
          : binomial_capped(inst.num_facilities() + inst.k - 1, inst.k,
                            opts.flow_budget);
  if (sets > opts.flow_budget)
    throw OracleBudgetExceeded("subset count exceeds the flow budget of " +
                               std::to_string(opts.flow_budget));

  ThresholdSet taus = candidate_thresholds(inst);
  std::int64_t flows = 0;
  for (double tau : taus.values) {
    std::optional<Solution> witness;
    bool ok = enumerate_open_sets(inst, [&](const std::vector<std::pair<int, int>>& open) {
      if (++flows > opts.flow_budget)
        throw OracleBudgetExceeded("flow budget of " +
                                   std::to_string(opts.flow_budget) + " exhausted");
      ServeResult r = try_serve(inst, open, tau, true);
      if (!r.ok) return false;
      witness = make_witness(inst, open, r.assignment);
      return true;
    });
    if (ok) {
      out.feasible = true;
      out.opt = tau;
      out.witness = std::move(witness);
      return out;
    }
  }
  return out;
}

bool oracle_feasible_at(const MetricInstance& inst, double tau,
                        const OracleOptions& opts) {
  if (inst.p == 0) return trivial_empty_service(inst).has_value();
  if (inst.k == 0) return false;
  std::int64_t flows = 0;
  return enumerate_open_sets(inst, [&](const std::vector<std::pair<int, int>>& open) {
    if (++flows > opts.flow_budget)
      throw OracleBudgetExceeded("flow budget of " + std::to_string(opts.flow_budget) +
                                 " exhausted");
    return try_serve(inst, open, tau, false).ok;
  });
}

}  // namespace ckso

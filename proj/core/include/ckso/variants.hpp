// Problem reductions: soft capacities to hard via co-located copies,
// supplier to center via client duplication with a metric closure, center
// to supplier by sharing the vertex set, and the uniform-soft tree push.

#ifndef CKSO_VARIANTS_HPP
#define CKSO_VARIANTS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ckso/instance.hpp"
#include "ckso/transfer.hpp"

namespace ckso {

struct ReductionWitness {
  // Transformed id -> original id (identity where omitted).
  std::map<std::string, std::string> origin;
  std::int64_t copies = 1;  // N in the supplier->center reduction
};

// Each facility becomes max(|C|, k) co-located copies; pulling a solution
// back counts copies as multiplicity and preserves the radius exactly.
std::pair<MetricInstance, ReductionWitness> soft_to_hard(const MetricInstance& inst);

Solution pull_back_soft_solution(const Solution& sol, const ReductionWitness& witness);

// Center instance on (C x {1..N}) union F with N = |F| + 1, zero capacity
// on client copies, N*L(u) on facilities, k' = k, p' = p*N; the remaining
// distances are the shortest-path closure of the explicit values.
std::pair<MetricInstance, ReductionWitness> supplier_to_center(const MetricInstance& inst);

// Serves p original clients at the radius the center solution achieved,
// recovered by one capacitated matching.
Solution pull_back_center_solution(const MetricInstance& supplier_inst,
                                   const Solution& center_sol,
                                   const ReductionWitness& witness);

// Every vertex becomes both a client and a facility site.
MetricInstance center_to_supplier(const MetricInstance& inst);

// Uniform-soft integral rounding: root the tree at a skeleton vertex and
// push the fractional part of every subtree sum to the parent, yielding
// y''_v = floor(Y_v) - sum of floor(Y_child) >= 0, a distance-1 transfer on
// the tree.  Requires uniform capacities and y >= 1 on the whole skeleton.
TransferVector uniform_soft_tree_transfer(const RoundingTree& rt,
                                          const TransferVector& y);

}  // namespace ckso

#endif  // CKSO_VARIANTS_HPP

// Per-component rounding to a distance-25 solution (23 uniform-hard,
// 13 uniform-soft) and assembly of component solutions.

#ifndef CKSO_ROUNDING_HPP
#define CKSO_ROUNDING_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ckso/clustering.hpp"
#include "ckso/instance.hpp"
#include "ckso/lp.hpp"
#include "ckso/transfer.hpp"

namespace ckso {

struct Assignment {
  // (client index, facility index) pairs within the component graph.
  std::vector<std::pair<int, int>> pairs;
};

// Exactly p clients, each assigned within hop distance r+1 of an open
// facility, respecting capacities L(u) * mult(u); one max-flow with arc
// capacities realizes the capacity duplication of the underlying argument.
// Returns nullopt iff the max flow is below p.
std::optional<Assignment> match_clients(const GraphInstance& g,
                                        const std::vector<int>& open,
                                        const std::vector<int>& multiplicity,
                                        int r, std::int64_t p);

struct ComponentSolution {
  std::vector<int> open;          // facility indices in the component graph
  std::vector<int> multiplicity;  // aligned with open
  Assignment assignment;
  int hop_radius = 0;  // max hop distance used by the assignment
};

// Invoked on every transfer step of a rounding run; hosts and vectors are
// only valid during the call.
using TransferObserver =
    std::function<void(const TransferStep&, const HostMetric&,
                       const std::vector<std::int64_t>&, const TransferVector&,
                       const TransferVector&)>;

struct RoundingHooks {
  TransferObserver on_transfer_step;  // optional
  TreeTransferStats* tree_stats = nullptr;
  TransferChain* chain_out = nullptr;
};

// Backbone tree -> rounding tree -> gather -> tree transfer -> finalize ->
// matching.  Preconditions follow the decomposition: connected graph,
// >= 6-separated skeleton covering everything within 5 hops, feasible LP
// point.  Any stage failure raises PipelineError with the stage name.
ComponentSolution round_component(const Component& comp, std::int64_t k_i,
                                  std::int64_t p_i, const FractionalPoint& point,
                                  Variant variant,
                                  const RoundingHooks& hooks = {});

// Union of disjoint component solutions mapped back to original indices.
struct GraphSolution {
  std::vector<int> open;          // facility indices in the host graph
  std::vector<int> multiplicity;  // aligned with open
  std::vector<std::pair<int, int>> assign;  // (client, facility) indices
  int hop_radius = 0;
};

GraphSolution assemble(const ComponentDecomposition& dec,
                       const std::vector<ComponentSolution>& parts);

}  // namespace ckso

#endif  // CKSO_ROUNDING_HPP

// The full approximation pipeline: ascending threshold scan, per-threshold
// skeleton candidates, component decomposition with the budget DP, LP-guided
// transfer rounding and capacitated matching.  The returned radius is at
// most factor * OPT with factor 25 (hard/soft), 23 (uniform hard) or
// 13 (uniform soft); NO certifies that no feasible solution exists.

#ifndef CKSO_SOLVER_HPP
#define CKSO_SOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "ckso/instance.hpp"
#include "ckso/rounding.hpp"

namespace ckso {

struct ComponentReport {
  std::int64_t k_i = 0;
  std::int64_t p_i = 0;
  int num_clients = 0;
  int num_facilities = 0;
  TransferChain chain;
  int hop_radius = 0;
};

struct CandidateReport {
  std::vector<std::string> skeleton_ids;
  bool dp_found = false;
  std::vector<ComponentReport> components;
};

struct ThresholdReport {
  double tau = 0.0;
  bool skipped_by_gate = false;  // cheap service bound failed
  bool success = false;
  std::vector<CandidateReport> candidates;
};

struct RunReport {
  Variant variant = Variant::Hard;
  int factor = 25;
  std::vector<ThresholdReport> thresholds;
  bool feasible = false;
  double radius = 0.0;
  double threshold_used = 0.0;
  TreeTransferStats tree_stats;
};

struct SolveOptions {
  // Default: derive the strongest applicable path from the instance.
  std::optional<Variant> variant;
  bool exact_lp = false;
  bool record_report = true;
  TransferObserver transfer_observer;  // also sees every verified step
  std::function<void(const LPModel&)> lp_observer;  // every model built
};

struct SolveOutcome {
  std::optional<Solution> solution;  // nullopt = NO (infeasible)
  RunReport report;
};

Variant derive_variant(const MetricInstance& inst);

// Full pipeline; center-mode instances are reduced to supplier form first
// and soft non-uniform instances run through the co-located-copy reduction.
SolveOutcome solve_metric(const MetricInstance& inst, const SolveOptions& opts = {});

}  // namespace ckso

#endif  // CKSO_SOLVER_HPP

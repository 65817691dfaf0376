// Reduction of metric instances to a sequence of graphic instances: the
// candidate radii are exactly the distinct client-facility distances, and
// the threshold graph keeps the pairs within each radius.

#ifndef CKSO_THRESHOLDING_HPP
#define CKSO_THRESHOLDING_HPP

#include <vector>

#include "ckso/instance.hpp"

namespace ckso {

struct ThresholdSet {
  std::vector<double> values;  // strictly ascending
};

// Distinct client-facility distances, ascending.  Empty when either side
// is empty (and infinite hop distances are skipped for graph-backed input).
ThresholdSet candidate_thresholds(const MetricInstance& inst);

// A graph instance is already the distance-1 form, so its only candidate
// radius is the unit edge length.
ThresholdSet candidate_thresholds(const GraphInstance& g);

// Edge (v,u) present iff d(v,u) <= tau; capacities truncated to degree.
GraphInstance graph_at_threshold(const MetricInstance& inst, double tau);

}  // namespace ckso

#endif  // CKSO_THRESHOLDING_HPP

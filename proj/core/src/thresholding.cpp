#include "ckso/thresholding.hpp"

#include <algorithm>
#include <cmath>

#include "ckso/skeleton.hpp"

namespace ckso {

ThresholdSet candidate_thresholds(const MetricInstance& inst) {
  ThresholdSet out;
  for (int c = 0; c < inst.num_clients(); ++c)
    for (int f = 0; f < inst.num_facilities(); ++f) {
      double d = inst.dist_cf(c, f);
      if (std::isinf(d)) continue;
      out.values.push_back(d);
    }
  std::sort(out.values.begin(), out.values.end());
  out.values.erase(std::unique(out.values.begin(), out.values.end()),
                   out.values.end());
  return out;
}

ThresholdSet candidate_thresholds(const GraphInstance& g) {
  ThresholdSet out;
  if (g.num_edges() > 0) out.values.push_back(1.0);
  return out;
}

GraphInstance graph_at_threshold(const MetricInstance& inst, double tau) {
  GraphInstance g;
  g.client_ids = inst.client_ids;
  g.facility_ids = inst.facility_ids;
  g.capacities = inst.capacities;
  g.k = inst.k;
  g.p = inst.p;
  g.capacity_mode = inst.capacity_mode;
  g.adj_client.assign(inst.num_clients(), {});
  g.adj_facility.assign(inst.num_facilities(), {});
  for (int c = 0; c < inst.num_clients(); ++c)
    for (int f = 0; f < inst.num_facilities(); ++f)
      if (inst.dist_cf(c, f) <= tau) g.add_edge(c, f);
  g.sort_adjacency();
  return cap_truncate(g);
}

}  // namespace ckso

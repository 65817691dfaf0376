// LP_{k,p}(G, L, S): openings y_u per facility, service x_{uv} per edge,
// with exact open/serve counts, capacity linking, unit client coverage and
// one covering constraint per skeleton vertex (sum of y over N^2[s] >= 1).
// Variables for non-edges are omitted, which enforces the forbidden-pair
// constraint structurally.

#ifndef CKSO_LP_HPP
#define CKSO_LP_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ckso/instance.hpp"

namespace ckso {

struct LPModel {
  int num_facilities = 0;
  // x variable e corresponds to edge (facility, client).
  std::vector<std::pair<int, int>> edges;
  std::vector<std::int64_t> capacities;
  std::vector<std::vector<int>> ball_members;  // per skeleton vertex: N^2[s] facilities
  std::int64_t k = 0;
  std::int64_t p = 0;
  bool bound_y_by_one = true;  // dropped in the uniform-soft variant

  // Variable order: y_0 .. y_{nF-1}, then one x per edge.
  int num_vars() const { return num_facilities + static_cast<int>(edges.size()); }
  int y_var(int facility) const { return facility; }
  int x_var(int edge) const { return num_facilities + edge; }

  // Ids used only by the debug dump.
  std::vector<std::string> facility_names;
  std::vector<std::string> client_names;
};

struct FractionalPoint {
  std::vector<double> y;  // per facility
  std::vector<double> x;  // per edge, aligned with LPModel::edges
};

// S holds facility indices of g; N^2[s] is computed in g.
LPModel build_lp(const GraphInstance& g, const std::vector<int>& skeleton,
                 std::int64_t k, std::int64_t p, bool bound_y_by_one = true);

struct LPFeasibility {
  bool feasible = false;
  std::optional<FractionalPoint> point;
};

// Decides feasibility within eps_feas = 1e-7 on constraint residuals.
// Numerical non-convergence raises SimplexFailure, never a silent verdict.
LPFeasibility lp_feasible(const LPModel& model);

// Exact arbitrary-precision rational mode (test oracle / --exact-lp).
LPFeasibility lp_feasible_exact(const LPModel& model);

// Most-negative constraint slack of a candidate point (>= 0 means feasible;
// equality constraints contribute -|residual|).
double lp_point_violation(const LPModel& model, const FractionalPoint& pt);

// Human-readable dump, one constraint per line.
void dump_lp(const LPModel& model, std::ostream& out);

}  // namespace ckso

#endif  // CKSO_LP_HPP

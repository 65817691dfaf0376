#include "ckso/lp.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <map>
#include <ostream>

#include "ckso/graph_algos.hpp"
#include "ckso/simplex.hpp"

namespace ckso {

using Rational = boost::multiprecision::cpp_rational;

template <>
struct SimplexTraits<Rational> {
  static Rational pivot_tol() { return Rational(0); }
  static Rational feas_tol() { return Rational(0); }
  static bool always_bland() { return true; }
};

LPModel build_lp(const GraphInstance& g, const std::vector<int>& skeleton,
                 std::int64_t k, std::int64_t p, bool bound_y_by_one) {
  LPModel m;
  m.num_facilities = g.num_facilities();
  m.capacities = g.capacities;
  m.k = k;
  m.p = p;
  m.bound_y_by_one = bound_y_by_one;
  m.facility_names = g.facility_ids;
  m.client_names = g.client_ids;
  for (int f = 0; f < g.num_facilities(); ++f)
    for (int c : g.adj_facility[f]) m.edges.push_back({f, c});

  for (int s : skeleton) {
    DistanceMap dm = single_source_distances(g, facility_vertex(g, s));
    std::vector<int> ball;
    for (int f = 0; f < g.num_facilities(); ++f) {
      int h = dm.hops[facility_vertex(g, f)];
      if (h != kUnreachable && h <= 2) ball.push_back(f);
    }
    m.ball_members.push_back(std::move(ball));
  }
  return m;
}

namespace {

template <class Scalar>
void assemble_rows(const LPModel& m, SimplexSolver<Scalar>& solver) {
  const int nf = m.num_facilities;
  const int ne = static_cast<int>(m.edges.size());

  // (1) sum y = k
  {
    std::vector<std::pair<int, Scalar>> row;
    for (int f = 0; f < nf; ++f) row.push_back({m.y_var(f), Scalar(1)});
    solver.add_row(std::move(row), RowSense::Equal, Scalar(m.k));
  }
  // (2) sum x = p
  {
    std::vector<std::pair<int, Scalar>> row;
    for (int e = 0; e < ne; ++e) row.push_back({m.x_var(e), Scalar(1)});
    solver.add_row(std::move(row), RowSense::Equal, Scalar(m.p));
  }
  // (3) x_uv <= y_u
  for (int e = 0; e < ne; ++e) {
    solver.add_row({{m.x_var(e), Scalar(1)}, {m.y_var(m.edges[e].first), Scalar(-1)}},
                   RowSense::LessEq, Scalar(0));
  }
  // (4) sum_v x_uv <= L(u) y_u
  {
    std::vector<std::vector<std::pair<int, Scalar>>> rows(nf);
    for (int e = 0; e < ne; ++e)
      rows[m.edges[e].first].push_back({m.x_var(e), Scalar(1)});
    for (int f = 0; f < nf; ++f) {
      rows[f].push_back({m.y_var(f), Scalar(-m.capacities[f])});
      solver.add_row(std::move(rows[f]), RowSense::LessEq, Scalar(0));
    }
  }
  // (5) sum_u x_uv <= 1
  {
    std::map<int, std::vector<std::pair<int, Scalar>>> rows;
    for (int e = 0; e < ne; ++e)
      rows[m.edges[e].second].push_back({m.x_var(e), Scalar(1)});
    for (auto& [client, row] : rows)
      solver.add_row(std::move(row), RowSense::LessEq, Scalar(1));
  }
  // (6) sum_{u in N^2[s]} y_u >= 1
  for (const auto& ball : m.ball_members) {
    std::vector<std::pair<int, Scalar>> row;
    for (int f : ball) row.push_back({m.y_var(f), Scalar(1)});
    solver.add_row(std::move(row), RowSense::GreaterEq, Scalar(1));
  }
  // (8) upper bounds; x <= 1 is implied by (5), y <= 1 only in hard modes.
  if (m.bound_y_by_one)
    for (int f = 0; f < nf; ++f)
      solver.add_row({{m.y_var(f), Scalar(1)}}, RowSense::LessEq, Scalar(1));
}

template <class Scalar>
LPFeasibility solve_model(const LPModel& m) {
  SimplexSolver<Scalar> solver(m.num_vars());
  assemble_rows(m, solver);
  std::vector<Scalar> point;
  SimplexStatus status = solver.solve(&point);
  LPFeasibility out;
  if (status != SimplexStatus::Feasible) return out;
  out.feasible = true;
  FractionalPoint pt;
  pt.y.resize(m.num_facilities);
  pt.x.resize(m.edges.size());
  for (int f = 0; f < m.num_facilities; ++f)
    pt.y[f] = static_cast<double>(point[m.y_var(f)]);
  for (std::size_t e = 0; e < m.edges.size(); ++e)
    pt.x[e] = static_cast<double>(point[m.x_var(static_cast<int>(e))]);
  out.point = std::move(pt);
  return out;
}

}  // namespace

LPFeasibility lp_feasible(const LPModel& model) { return solve_model<double>(model); }

LPFeasibility lp_feasible_exact(const LPModel& model) {
  return solve_model<Rational>(model);
}

double lp_point_violation(const LPModel& m, const FractionalPoint& pt) {
  double worst = 0.0;
  auto track = [&](double slack) { worst = std::min(worst, slack); };

  double sum_y = 0.0;
  for (double v : pt.y) sum_y += v;
  track(-std::abs(sum_y - static_cast<double>(m.k)));
  double sum_x = 0.0;
  for (double v : pt.x) sum_x += v;
  track(-std::abs(sum_x - static_cast<double>(m.p)));

  std::vector<double> fac_load(m.num_facilities, 0.0);
  std::map<int, double> client_load;
  for (std::size_t e = 0; e < m.edges.size(); ++e) {
    auto [f, c] = m.edges[e];
    track(pt.y[f] - pt.x[e]);  // (3)
    fac_load[f] += pt.x[e];
    client_load[c] += pt.x[e];
    track(pt.x[e]);  // x >= 0
  }
  for (int f = 0; f < m.num_facilities; ++f) {
    track(static_cast<double>(m.capacities[f]) * pt.y[f] - fac_load[f]);  // (4)
    track(pt.y[f]);                                                       // y >= 0
    if (m.bound_y_by_one) track(1.0 - pt.y[f]);                           // y <= 1
  }
  for (const auto& [c, load] : client_load) track(1.0 - load);  // (5)
  for (const auto& ball : m.ball_members) {
    double s = 0.0;
    for (int f : ball) s += pt.y[f];
    track(s - 1.0);  // (6)
  }
  return worst;
}

void dump_lp(const LPModel& m, std::ostream& out) {
  auto yname = [&](int f) { return "y[" + m.facility_names[f] + "]"; };
  auto xname = [&](int e) {
    return "x[" + m.facility_names[m.edges[e].first] + "," +
           m.client_names[m.edges[e].second] + "]";
  };
  out << "feasibility of LP_{k=" << m.k << ",p=" << m.p << "} with "
      << m.num_vars() << " variables\n";
  for (int f = 0; f < m.num_facilities; ++f) {
    out << (f ? " + " : "") << yname(f);
  }
  out << " = " << m.k << "\n";
  for (std::size_t e = 0; e < m.edges.size(); ++e) out << (e ? " + " : "") << xname(static_cast<int>(e));
  out << " = " << m.p << "\n";
  for (std::size_t e = 0; e < m.edges.size(); ++e)
    out << xname(static_cast<int>(e)) << " <= " << yname(m.edges[e].first) << "\n";
  for (int f = 0; f < m.num_facilities; ++f) {
    bool first = true;
    for (std::size_t e = 0; e < m.edges.size(); ++e)
      if (m.edges[e].first == f) {
        out << (first ? "" : " + ") << xname(static_cast<int>(e));
        first = false;
      }
    if (!first) out << " <= " << m.capacities[f] << " * " << yname(f) << "\n";
  }
  std::map<int, std::vector<int>> by_client;
  for (std::size_t e = 0; e < m.edges.size(); ++e)
    by_client[m.edges[e].second].push_back(static_cast<int>(e));
  for (const auto& [c, es] : by_client) {
    for (std::size_t i = 0; i < es.size(); ++i) out << (i ? " + " : "") << xname(es[i]);
    out << " <= 1\n";
  }
  for (std::size_t s = 0; s < m.ball_members.size(); ++s) {
    const auto& ball = m.ball_members[s];
    for (std::size_t i = 0; i < ball.size(); ++i) out << (i ? " + " : "") << yname(ball[i]);
    out << " >= 1\n";
  }
  for (int f = 0; f < m.num_facilities; ++f)
    out << "0 <= " << yname(f) << (m.bound_y_by_one ? " <= 1" : "") << "\n";
  out << "0 <= x <= 1 (per edge)\n";
}

}  // namespace ckso

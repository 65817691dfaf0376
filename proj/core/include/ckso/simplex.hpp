// Self-contained dense two-phase simplex, templated on the scalar type.
//
// The double instantiation uses Dantzig pricing with a switch to Bland's
// rule after a stall, which keeps it fast while guaranteeing termination.
// An exact-rational instantiation (see lp.cpp) runs Bland's rule with zero
// tolerances and serves as the cross-check oracle for feasibility calls.

#ifndef CKSO_SIMPLEX_HPP
#define CKSO_SIMPLEX_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ckso {

enum class RowSense { LessEq, GreaterEq, Equal };

enum class SimplexStatus { Feasible, Infeasible };

class SimplexFailure : public std::runtime_error {
 public:
  explicit SimplexFailure(const std::string& what) : std::runtime_error(what) {}
};

template <class Scalar>
struct SimplexTraits;

template <>
struct SimplexTraits<double> {
  static double pivot_tol() { return 1e-9; }
  static double feas_tol() { return 1e-7; }
  static bool always_bland() { return false; }
};

// All variables are implicitly >= 0; upper bounds are ordinary rows.
template <class Scalar>
class SimplexSolver {
 public:
  explicit SimplexSolver(int num_vars) : n_(num_vars) {}

  void add_row(std::vector<std::pair<int, Scalar>> coeffs, RowSense sense, Scalar rhs) {
    rows_.push_back(Row{std::move(coeffs), sense, std::move(rhs)});
  }

  int num_rows() const { return static_cast<int>(rows_.size()); }

  // Phase 1 decides feasibility and fills `point` (size num_vars) with a
  // feasible basic solution when one exists.
  SimplexStatus solve(std::vector<Scalar>* point);

 private:
  struct Row {
    std::vector<std::pair<int, Scalar>> coeffs;
    RowSense sense;
    Scalar rhs;
  };

  static Scalar sabs(const Scalar& x) { return x < Scalar(0) ? Scalar(-x) : x; }

  int n_;
  std::vector<Row> rows_;
};

template <class Scalar>
SimplexStatus SimplexSolver<Scalar>::solve(std::vector<Scalar>* point) {
  using Traits = SimplexTraits<Scalar>;
  const Scalar zero(0);
  const Scalar one(1);
  const int m = static_cast<int>(rows_.size());

  // Column layout: [original n_ | one slack/surplus per inequality |
  // artificials | rhs].  Rows are normalized to nonnegative rhs first.
  int num_slack = 0;
  for (const Row& r : rows_)
    if (r.sense != RowSense::Equal) ++num_slack;

  std::vector<std::vector<Scalar>> tab(m);
  std::vector<int> basis(m, -1);
  std::vector<bool> needs_artificial(m, false);

  {
    int slack_idx = 0;
    for (int i = 0; i < m; ++i) {
      Row row = rows_[i];
      bool flip = row.rhs < zero;
      if (flip) {
        row.rhs = -row.rhs;
        for (auto& c : row.coeffs) c.second = -c.second;
        if (row.sense == RowSense::LessEq)
          row.sense = RowSense::GreaterEq;
        else if (row.sense == RowSense::GreaterEq)
          row.sense = RowSense::LessEq;
      }
      tab[i].assign(static_cast<std::size_t>(n_) + num_slack + 1, zero);
      for (const auto& [var, coef] : row.coeffs) tab[i][var] += coef;
      if (row.sense == RowSense::LessEq) {
        tab[i][n_ + slack_idx] = one;
        basis[i] = n_ + slack_idx;
        ++slack_idx;
      } else if (row.sense == RowSense::GreaterEq) {
        tab[i][n_ + slack_idx] = -one;
        ++slack_idx;
        needs_artificial[i] = true;
      } else {
        needs_artificial[i] = true;
      }
      tab[i].back() = row.rhs;
      rows_[i] = std::move(row);  // keep normalized form for residual use
    }
  }

  const int base_cols = n_ + num_slack;
  int num_art = 0;
  for (int i = 0; i < m; ++i)
    if (needs_artificial[i]) ++num_art;
  const int total_cols = base_cols + num_art;

  {
    int art = 0;
    for (int i = 0; i < m; ++i) {
      Scalar rhs = tab[i].back();
      tab[i].pop_back();
      tab[i].resize(static_cast<std::size_t>(total_cols) + 1, zero);
      tab[i].back() = rhs;
      if (needs_artificial[i]) {
        tab[i][base_cols + art] = one;
        basis[i] = base_cols + art;
        ++art;
      }
    }
  }

  // Phase-1 reduced costs: minimize the artificial sum.
  std::vector<Scalar> obj(static_cast<std::size_t>(total_cols) + 1, zero);
  for (int j = base_cols; j < total_cols; ++j) obj[j] = one;
  Scalar obj_val = zero;
  for (int i = 0; i < m; ++i) {
    if (!needs_artificial[i]) continue;
    for (int j = 0; j <= total_cols; ++j) obj[j] -= tab[i][j];
  }
  obj_val = -obj.back();

  const Scalar ptol = Traits::pivot_tol();
  const long iter_limit = 2000 + 60L * (m + total_cols);
  const long bland_after = 200 + 12L * (m + total_cols);
  bool bland = Traits::always_bland();

  for (long iter = 0;; ++iter) {
    if (obj_val <= Traits::feas_tol()) break;  // all artificials at zero
    if (iter > iter_limit)
      throw SimplexFailure("simplex iteration limit exceeded (" +
                           std::to_string(iter_limit) + " iterations)");
    if (iter > bland_after) bland = true;

    int col = -1;
    if (bland) {
      for (int j = 0; j < total_cols; ++j)
        if (obj[j] < -ptol) {
          col = j;
          break;
        }
    } else {
      Scalar best = -ptol;
      for (int j = 0; j < total_cols; ++j)
        if (obj[j] < best) {
          best = obj[j];
          col = j;
        }
    }
    if (col < 0) {
      // Optimal with positive artificial mass: infeasible.
      return SimplexStatus::Infeasible;
    }

    int pivot_row = -1;
    Scalar best_ratio = zero;
    for (int i = 0; i < m; ++i) {
      if (tab[i][col] <= ptol) continue;
      Scalar ratio = tab[i].back() / tab[i][col];
      if (pivot_row < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[pivot_row])) {
        pivot_row = i;
        best_ratio = ratio;
      }
    }
    if (pivot_row < 0)
      throw SimplexFailure("phase-1 column unbounded; inconsistent tableau");

    // Pivot.
    std::vector<Scalar>& prow = tab[pivot_row];
    const Scalar piv = prow[col];
    for (int j = 0; j <= total_cols; ++j) prow[j] /= piv;
    prow[col] = one;
    for (int i = 0; i < m; ++i) {
      if (i == pivot_row) continue;
      const Scalar f = tab[i][col];
      if (f == zero) continue;
      std::vector<Scalar>& row = tab[i];
      for (int j = 0; j <= total_cols; ++j) row[j] -= f * prow[j];
      row[col] = zero;
    }
    const Scalar f = obj[col];
    if (f != zero) {
      for (int j = 0; j <= total_cols; ++j) obj[j] -= f * prow[j];
      obj[col] = zero;
    }
    basis[pivot_row] = col;
    obj_val = -obj.back();
  }

  if (point) {
    point->assign(n_, zero);
    for (int i = 0; i < m; ++i)
      if (basis[i] >= 0 && basis[i] < n_) (*point)[basis[i]] = tab[i].back();
    for (Scalar& v : *point)
      if (v < zero) v = zero;  // clear sub-tolerance negatives
  }
  return SimplexStatus::Feasible;
}

}  // namespace ckso

#endif  // CKSO_SIMPLEX_HPP

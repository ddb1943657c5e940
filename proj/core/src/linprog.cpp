#include "graphwise/linprog.hpp"

#include <cmath>
#include <vector>

#include "graphwise/errors.hpp"

namespace graphwise {

namespace {

constexpr double kPivotTol = 1e-10;

// Tableau simplex on  min c'x  s.t.  T x = rhs,  x >= 0  with a known basis.
// The cost row is kept reduced against the basis. Columns at or beyond
// col_limit may not enter. Returns false when the program is unbounded.
bool run_simplex(Eigen::MatrixXd& tableau, Eigen::VectorXd& rhs, Eigen::VectorXd& cost,
                 std::vector<int>& basis, int col_limit) {
  const int m = static_cast<int>(tableau.rows());
  for (long iteration = 0;; ++iteration) {
    if (iteration > 200000L) throw NumericalError("simplex iteration cap exceeded");
    int entering = -1;
    for (int j = 0; j < col_limit; ++j) {
      if (cost(j) < -kPivotTol) {  // Bland: first improving index
        entering = j;
        break;
      }
    }
    if (entering < 0) return true;
    int leaving = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      double a = tableau(i, entering);
      if (a > kPivotTol) {
        double ratio = rhs(i) / a;
        if (leaving < 0 || ratio < best_ratio - kPivotTol ||
            (std::abs(ratio - best_ratio) <= kPivotTol &&
             basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leaving)])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
    }
    if (leaving < 0) return false;  // unbounded
    // pivot
    double pivot = tableau(leaving, entering);
    tableau.row(leaving) /= pivot;
    rhs(leaving) /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i == leaving) continue;
      double factor = tableau(i, entering);
      if (factor != 0.0) {
        tableau.row(i) -= factor * tableau.row(leaving);
        rhs(i) -= factor * rhs(leaving);
      }
    }
    double cost_factor = cost(entering);
    if (cost_factor != 0.0) cost -= cost_factor * tableau.row(leaving).transpose();
    basis[static_cast<std::size_t>(leaving)] = entering;
  }
}

}  // namespace

LpResult solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  if (c.size() != n || b.size() != m) throw ConfigError("LP dimension mismatch");

  // standard form: [A I] [x; s] = b with rows flipped to keep rhs >= 0,
  // plus one artificial variable per flipped row
  std::vector<int> flipped;
  for (int i = 0; i < m; ++i) {
    if (b(i) < 0) flipped.push_back(i);
  }
  const int n_art = static_cast<int>(flipped.size());
  const int total = n + m + n_art;
  Eigen::MatrixXd tableau = Eigen::MatrixXd::Zero(m, total);
  Eigen::VectorXd rhs = b;
  tableau.leftCols(n) = a;
  for (int i = 0; i < m; ++i) tableau(i, n + i) = 1.0;
  for (int k = 0; k < n_art; ++k) {
    int row = flipped[static_cast<std::size_t>(k)];
    tableau.row(row) *= -1.0;
    rhs(row) *= -1.0;
    tableau(row, n + m + k) = 1.0;
  }
  std::vector<int> basis(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;
  for (int k = 0; k < n_art; ++k) basis[static_cast<std::size_t>(flipped[static_cast<std::size_t>(k)])] = n + m + k;

  if (n_art > 0) {
    // phase 1: drive the artificials to zero
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total);
    for (int k = 0; k < n_art; ++k) phase1(n + m + k) = 1.0;
    // reduce over the artificial basis rows
    for (int k = 0; k < n_art; ++k) {
      phase1 -= tableau.row(flipped[static_cast<std::size_t>(k)]).transpose();
    }
    if (!run_simplex(tableau, rhs, phase1, basis, total)) {
      throw NumericalError("phase-1 LP unbounded; malformed program");
    }
    double infeasibility = 0.0;
    for (int i = 0; i < m; ++i) {
      if (basis[static_cast<std::size_t>(i)] >= n + m) infeasibility += rhs(i);
    }
    if (infeasibility > 1e-7) return {};  // infeasible
    // pivot leftover artificials out of the basis where possible
    for (int i = 0; i < m; ++i) {
      if (basis[static_cast<std::size_t>(i)] < n + m) continue;
      int pivot_col = -1;
      for (int j = 0; j < n + m; ++j) {
        if (std::abs(tableau(i, j)) > kPivotTol) {
          pivot_col = j;
          break;
        }
      }
      if (pivot_col < 0) continue;  // redundant row
      double pivot = tableau(i, pivot_col);
      tableau.row(i) /= pivot;
      rhs(i) /= pivot;
      for (int r = 0; r < m; ++r) {
        if (r == i) continue;
        double factor = tableau(r, pivot_col);
        if (factor != 0.0) {
          tableau.row(r) -= factor * tableau.row(i);
          rhs(r) -= factor * rhs(i);
        }
      }
      basis[static_cast<std::size_t>(i)] = pivot_col;
    }
  }

  // phase 2 over the original objective; artificial columns may not re-enter
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(total);
  cost.head(n) = c;
  for (int i = 0; i < m; ++i) {
    double factor = cost(basis[static_cast<std::size_t>(i)]);
    if (factor != 0.0) cost -= factor * tableau.row(i).transpose();
  }
  if (!run_simplex(tableau, rhs, cost, basis, n + m)) {
    throw NumericalError("LP is unbounded");
  }

  LpResult out;
  out.optimal = true;
  out.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    int var = basis[static_cast<std::size_t>(i)];
    if (var < n) out.x(var) = rhs(i);
  }
  out.objective = c.dot(out.x);
  return out;
}

}  // namespace graphwise

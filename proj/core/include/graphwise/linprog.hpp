#pragma once

#include <Eigen/Dense>

namespace graphwise {

struct LpResult {
  bool optimal = false;
  Eigen::VectorXd x;
  double objective = 0.0;
};

// Dense two-phase primal simplex for  min c'x  s.t.  A x <= b,  x >= 0.
// Bland's rule throughout, so the pivot sequence is deterministic and free of
// cycling. Intended for the small programs used as test oracles.
LpResult solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

}  // namespace graphwise

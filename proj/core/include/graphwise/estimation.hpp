#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graphwise/model.hpp"

namespace graphwise {

enum class Symmetrization { smaller_magnitude, average };

Symmetrization symmetrization_from_name(const std::string& name);

struct ClimeConfig {
  double lambda = 0.1;
  double tolerance = 1e-7;  // ADMM primal/dual stopping level
  int max_iterations = 40000;
  Symmetrization symmetrization = Symmetrization::smaller_magnitude;
  double rho = 10.0;   // ADMM penalty
  unsigned threads = 1;  // parallel column solves
};

struct ClimeDiagnostics {
  double constraint_residual = 0.0;  // max over columns of ||sigma b - e||_inf, pre-symmetrization
  int max_iterations_used = 0;
  bool converged = true;
  std::vector<int> unconverged_columns;  // 1-based
};

struct PrecisionEstimate {
  Eigen::MatrixXd matrix;  // after symmetrization
  Eigen::MatrixXd raw;     // stacked column solutions
  double lambda = 0.0;
  ClimeDiagnostics diagnostics;
};

// (1/n) sum of x_i x_i'; no mean centering, the model mean is zero.
Eigen::MatrixXd empirical_covariance(const Dataset& x);

// Column-wise l1 minimization subject to ||sigma b - e_j||_inf <= lambda,
// solved by ADMM with a shared Cholesky of (I + sigma^2). Columns are
// independent; an unconverged column is reported in the diagnostics rather
// than thrown, so degenerate covariances (n = 1) still return.
PrecisionEstimate clime(const Eigen::MatrixXd& sigma, const ClimeConfig& cfg);

// Exact simplex solution of one column program; the d <= 30 fallback route.
Eigen::VectorXd clime_column_lp(const Eigen::MatrixXd& sigma, int j, double lambda);

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m, Symmetrization rule);

// K-fold cross-validation risk sum_k ||sigma_k theta_(-k) - I||_max over the
// grid; deterministic fold assignment from the seed; ties go to the smaller
// lambda.
double cv_select_lambda(const Dataset& x, const std::vector<double>& grid, int folds,
                        std::uint64_t seed, const ClimeConfig& base_cfg);

std::vector<double> default_lambda_grid(int d, int n);

// Bias-corrected edge value theta_jk - theta_j' (sigma theta_k - e_k) / (theta_j' sigma_j).
// Throws DebiasError when the denominator magnitude falls below 0.5.
double debias(const Eigen::MatrixXd& sigma, const PrecisionEstimate& est, int j, int k);

}  // namespace graphwise

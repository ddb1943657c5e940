#include "graphwise/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "graphwise/errors.hpp"
#include "graphwise/linprog.hpp"
#include "graphwise/parallel.hpp"
#include "graphwise/rng.hpp"

namespace graphwise {

Symmetrization symmetrization_from_name(const std::string& name) {
  if (name == "smaller-magnitude") return Symmetrization::smaller_magnitude;
  if (name == "average") return Symmetrization::average;
  throw ConfigError("unknown symmetrization rule '" + name + "'");
}

Eigen::MatrixXd empirical_covariance(const Dataset& x) {
  const auto& rows = x.rows();
  return rows.transpose() * rows / static_cast<double>(x.n());
}

namespace {

double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

struct ColumnSolveResult {
  Eigen::VectorXd beta;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// ADMM splitting  min ||g||_1 + box(z)  s.t.  b = g, tau (sigma b - e) = z,
// with the b-update solved exactly through a shared Cholesky of
// I + tau^2 sigma^2. The constraint scale tau balances the two blocks; the
// scale-free choice tau = 1.25 / sqrt(||sigma||_2) keeps the iteration count
// flat across well- and ill-conditioned covariances.
ColumnSolveResult clime_column_admm(const Eigen::MatrixXd& sigma,
                                    const Eigen::LLT<Eigen::MatrixXd>& llt, double tau, int j,
                                    const ClimeConfig& cfg) {
  const int d = static_cast<int>(sigma.rows());
  Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
  e(j) = 1.0;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
  const double rho = cfg.rho;
  const double box = tau * cfg.lambda;

  ColumnSolveResult out;
  Eigen::VectorXd scaled_sigma_b(d), g_prev(d), z_prev(d);
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    b = llt.solve((g - u) + tau * (sigma * (tau * e + z - v)));
    scaled_sigma_b.noalias() = tau * (sigma * b);
    g_prev = g;
    z_prev = z;
    g = (b + u).unaryExpr([&](double x) { return soft_threshold(x, 1.0 / rho); });
    z = (scaled_sigma_b - tau * e + v).cwiseMax(-box).cwiseMin(box);
    u += b - g;
    v += scaled_sigma_b - tau * e - z;
    double primal =
        std::max((b - g).lpNorm<Eigen::Infinity>(),
                 (scaled_sigma_b - tau * e - z).lpNorm<Eigen::Infinity>() / tau);
    double dual = rho * std::max((g - g_prev).lpNorm<Eigen::Infinity>(),
                                 (z - z_prev).lpNorm<Eigen::Infinity>());
    out.iterations = it;
    if (primal <= cfg.tolerance && dual <= cfg.tolerance) {
      // the returned block is g, so certify feasibility on g itself
      out.residual = (sigma * g - e).lpNorm<Eigen::Infinity>();
      if (out.residual <= cfg.lambda + cfg.tolerance) {
        out.converged = true;
        break;
      }
    }
  }
  out.beta = g;  // the l1 block is exactly sparse
  if (!out.converged) out.residual = (sigma * g - e).lpNorm<Eigen::Infinity>();
  return out;
}

}  // namespace

PrecisionEstimate clime(const Eigen::MatrixXd& sigma, const ClimeConfig& cfg) {
  if (sigma.rows() != sigma.cols()) throw ConfigError("covariance must be square");
  if (!sigma.isApprox(sigma.transpose(), 1e-12)) {
    throw ConfigError("covariance must be symmetric");
  }
  if (cfg.lambda <= 0.0) throw ConfigError("clime lambda must be positive");
  if (cfg.tolerance <= 0.0) throw ConfigError("clime tolerance must be positive");
  const int d = static_cast<int>(sigma.rows());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> spectrum(sigma, Eigen::EigenvaluesOnly);
  if (spectrum.info() != Eigen::Success) {
    throw NumericalError("eigenvalue solve failed on the covariance");
  }
  double sigma_norm = std::max(std::abs(spectrum.eigenvalues().minCoeff()),
                               std::abs(spectrum.eigenvalues().maxCoeff()));
  double tau = 1.25 / std::sqrt(std::max(sigma_norm, 1e-8));
  Eigen::MatrixXd normal =
      Eigen::MatrixXd::Identity(d, d) + (tau * tau) * (sigma * sigma);
  Eigen::LLT<Eigen::MatrixXd> llt(normal);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("Cholesky of I + tau^2 sigma^2 failed");
  }

  PrecisionEstimate est;
  est.lambda = cfg.lambda;
  est.raw.resize(d, d);
  std::vector<ColumnSolveResult> results(static_cast<std::size_t>(d));
  parallel_for(static_cast<std::size_t>(d), cfg.threads, [&](std::size_t j) {
    results[j] = clime_column_admm(sigma, llt, tau, static_cast<int>(j), cfg);
  });
  for (int j = 0; j < d; ++j) {
    const auto& r = results[static_cast<std::size_t>(j)];
    est.raw.col(j) = r.beta;
    est.diagnostics.constraint_residual = std::max(est.diagnostics.constraint_residual, r.residual);
    est.diagnostics.max_iterations_used = std::max(est.diagnostics.max_iterations_used, r.iterations);
    if (!r.converged) {
      est.diagnostics.converged = false;
      est.diagnostics.unconverged_columns.push_back(j + 1);
    }
  }
  est.matrix = symmetrize(est.raw, cfg.symmetrization);
  return est;
}

Eigen::VectorXd clime_column_lp(const Eigen::MatrixXd& sigma, int j, double lambda) {
  const int d = static_cast<int>(sigma.rows());
  if (d > 30) throw ConfigError("exact LP column solve is limited to d <= 30");
  if (j < 1 || j > d) throw ConfigError("column index out of range");
  if (lambda <= 0.0) throw ConfigError("clime lambda must be positive");
  // variables [b+; b-], constraints +-(sigma b - e) <= lambda
  Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
  e(j - 1) = 1.0;
  Eigen::MatrixXd a(2 * d, 2 * d);
  a.topLeftCorner(d, d) = sigma;
  a.topRightCorner(d, d) = -sigma;
  a.bottomLeftCorner(d, d) = -sigma;
  a.bottomRightCorner(d, d) = sigma;
  Eigen::VectorXd b(2 * d);
  b.head(d) = Eigen::VectorXd::Constant(d, lambda) + e;
  b.tail(d) = Eigen::VectorXd::Constant(d, lambda) - e;
  Eigen::VectorXd c = Eigen::VectorXd::Ones(2 * d);
  auto lp = solve_lp(c, a, b);
  if (!lp.optimal) {
    throw NumericalError("clime column " + std::to_string(j) + " is LP-infeasible at lambda " +
                         std::to_string(lambda));
  }
  return lp.x.head(d) - lp.x.tail(d);
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m, Symmetrization rule) {
  if (m.rows() != m.cols()) throw ConfigError("symmetrize needs a square matrix");
  const int d = static_cast<int>(m.rows());
  Eigen::MatrixXd out = m;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      double a = m(i, j), b = m(j, i);
      double v = 0.0;
      switch (rule) {
        case Symmetrization::smaller_magnitude:
          v = std::abs(a) <= std::abs(b) ? a : b;
          break;
        case Symmetrization::average:
          v = 0.5 * (a + b);
          break;
      }
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

std::vector<double> default_lambda_grid(int d, int n) {
  double unit = std::sqrt(std::log(static_cast<double>(d)) / static_cast<double>(n));
  return {0.5 * unit, 1.0 * unit, 1.5 * unit, 2.0 * unit, 2.5 * unit};
}

double cv_select_lambda(const Dataset& x, const std::vector<double>& grid, int folds,
                        std::uint64_t seed, const ClimeConfig& base_cfg) {
  if (grid.empty()) throw ConfigError("cross-validation grid must be nonempty");
  if (folds < 2) throw ConfigError("cross-validation needs at least 2 folds");
  if (x.n() < folds) throw ConfigError("fewer samples than folds");
  std::vector<double> lambdas = grid;
  std::sort(lambdas.begin(), lambdas.end());

  // seeded shuffle, then contiguous assignment modulo folds
  std::vector<int> order(static_cast<std::size_t>(x.n()));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, 0x5bf01du));
  for (int i = x.n() - 1; i > 0; --i) {
    auto j = static_cast<std::size_t>(rng.uniform_int(0, i));
    std::swap(order[static_cast<std::size_t>(i)], order[j]);
  }
  std::vector<int> fold_of(static_cast<std::size_t>(x.n()));
  for (int i = 0; i < x.n(); ++i) fold_of[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i % folds;

  const auto& rows = x.rows();
  const int d = x.dim();
  std::vector<double> risk(lambdas.size(), 0.0);
  for (int k = 0; k < folds; ++k) {
    std::vector<int> in_fold, out_fold;
    for (int i = 0; i < x.n(); ++i) {
      (fold_of[static_cast<std::size_t>(i)] == k ? in_fold : out_fold).push_back(i);
    }
    Eigen::MatrixXd held(static_cast<int>(in_fold.size()), d);
    Eigen::MatrixXd train(static_cast<int>(out_fold.size()), d);
    for (std::size_t i = 0; i < in_fold.size(); ++i) held.row(static_cast<int>(i)) = rows.row(in_fold[i]);
    for (std::size_t i = 0; i < out_fold.size(); ++i) train.row(static_cast<int>(i)) = rows.row(out_fold[i]);
    Eigen::MatrixXd sigma_held = held.transpose() * held / static_cast<double>(held.rows());
    Eigen::MatrixXd sigma_train = train.transpose() * train / static_cast<double>(train.rows());
    for (std::size_t gi = 0; gi < lambdas.size(); ++gi) {
      ClimeConfig cfg = base_cfg;
      cfg.lambda = lambdas[gi];
      auto est = clime(sigma_train, cfg);
      risk[gi] += (sigma_held * est.matrix - Eigen::MatrixXd::Identity(d, d))
                      .cwiseAbs()
                      .maxCoeff();
    }
  }
  std::size_t best = 0;
  for (std::size_t gi = 1; gi < lambdas.size(); ++gi) {
    if (risk[gi] < risk[best]) best = gi;
  }
  return lambdas[best];
}

double debias(const Eigen::MatrixXd& sigma, const PrecisionEstimate& est, int j, int k) {
  const int d = static_cast<int>(sigma.rows());
  if (j < 1 || j > d || k < 1 || k > d) throw ConfigError("debias index out of range");
  const auto& theta = est.matrix;
  Eigen::VectorXd col_j = theta.col(j - 1);
  Eigen::VectorXd col_k = theta.col(k - 1);
  double denominator = col_j.dot(sigma.col(j - 1));
  if (std::abs(denominator) < 0.5) throw DebiasError(j, k, denominator);
  Eigen::VectorXd residual = sigma * col_k;
  residual(k - 1) -= 1.0;
  return theta(j - 1, k - 1) - col_j.dot(residual) / denominator;
}

}  // namespace graphwise

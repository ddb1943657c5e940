#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graphwise/estimation.hpp"
#include "graphwise/graph.hpp"
#include "graphwise/record.hpp"

namespace graphwise {

struct BootstrapConfig {
  int replications = 3000;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

void validate(const BootstrapConfig& cfg);

struct TestOutcome {
  std::string property;
  bool reject = false;
  EdgeSet witness;
  EdgeSet rejected_edges;
  std::vector<double> edge_statistics;  // sqrt(n) * debiased value, aligned with witness
  std::vector<double> round_quantiles;
  double alpha = 0.0;
  double mu = 0.0;
  Record extras;  // property-specific diagnostics

  Record to_record() const;
};

std::string format_edges(const EdgeSet& edges);
EdgeSet parse_edges(const std::string& text);

// One row per multiplier-bootstrap replication, one column per edge:
// W[b][e] = n^{-1/2} sum_i (theta_j' x_i x_i' theta_k - theta_jk) zeta_i.
// The per-observation edge products are formed once and reused across
// replications; replication b draws its multipliers from derive_seed(seed, b),
// so the matrix is identical for every thread count.
Eigen::MatrixXd bootstrap_statistics(const Dataset& x, const PrecisionEstimate& est,
                                     const EdgeSet& edges, const BootstrapConfig& cfg);

// ceil((1-alpha) B)-th order statistic of the per-replication max of |W| over
// the chosen columns.
double bootstrap_quantile(const Eigen::MatrixXd& stats, const std::vector<int>& subset,
                          double alpha);

// Step-down rounds over a frozen statistics matrix; exposed so the loop can be
// driven directly in tests.
struct StepDownTrace {
  std::vector<int> rejected;  // column indices in rejection order discovery
  std::vector<double> round_quantiles;
};
StepDownTrace step_down_rounds(const Eigen::MatrixXd& stats,
                               const std::vector<double>& scaled_statistics, double alpha,
                               double scaled_mu);

// Iterative multiple edge testing: reject every surviving edge whose scaled
// statistic reaches sqrt(n) mu plus the bootstrap quantile of the surviving
// set, shrink, repeat. mu = 0 is the plain variant.
TestOutcome step_down(const Dataset& x, const PrecisionEstimate& est, const EdgeSet& edges,
                      const BootstrapConfig& cfg, double mu = 0.0);

}  // namespace graphwise

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "graphwise/inference.hpp"
#include "graphwise/model.hpp"

namespace graphwise {

enum class GraphProperty {
  connectivity,
  components,
  cycle,
  triangle,
  sap,
  max_degree,
  clique,
  connectivity_at_level,
};

GraphProperty property_from_name(const std::string& name);
std::string property_name(GraphProperty p);

// Tuning parameter: a fixed value, or scale * sqrt(log d / rows) resolved
// against the rows the estimator actually sees.
struct LambdaPolicy {
  enum class Mode { fixed, scaled };
  Mode mode = Mode::scaled;
  double value = 0.0;
  double scale = 1.5;

  static LambdaPolicy fixed(double v) { return {Mode::fixed, v, 0.0}; }
  static LambdaPolicy scaled(double s) { return {Mode::scaled, 0.0, s}; }
  double resolve(int d, int rows) const;
};

struct WitnessTestSpec {
  GraphProperty property = GraphProperty::connectivity;
  int m = 0;       // components / sap
  int s0 = 0;      // max_degree
  int s = 0;       // clique
  double mu = 0.0; // connectivity_at_level
  double alpha = 0.05;
  LambdaPolicy lambda;
  ClimeConfig clime;          // lambda field overridden per stage
  BootstrapConfig bootstrap;  // alpha field overridden by `alpha`
  bool shuffle = false;
  std::uint64_t split_seed = 0;

  void validate(int d) const;
};

// D1 = first floor(n/2) rows, D2 = the rest; optional seeded pre-shuffle.
std::pair<Dataset, Dataset> split(const Dataset& x, bool shuffle = false,
                                  std::uint64_t seed = 0);

// Solves the max-min witness program for the property on weights
// |theta_hat(1)|: spanning tree, spanning forest, or greedy insertion until
// the structure appears.
EdgeSet find_witness(const PrecisionEstimate& est1, const WitnessTestSpec& spec, int d);

// Structural check that an edge set is a valid witness for the property.
bool witness_has_property(const WitnessTestSpec& spec, const EdgeSet& edges, int d);

struct CliqueTestResult {
  bool reject = false;
  double lambda_min = 0.0;
  double nu = 0.0;
  std::vector<int> argmin_subset;
};

// Minimum eigenvalue over all size-s principal covariance blocks against the
// threshold nu = (1 - (sqrt 2 + 1) sqrt((s log(ed/s) + log(2/alpha)) / n))^2.
// Exhaustive over subsets; refuses when C(d, s) exceeds 1e6.
CliqueTestResult clique_detection_test(const Dataset& x, int s, double alpha);

// Two-stage alternative witness test: split, estimate on D1, identify the
// witness, estimate on D2, certify by step-down. The clique property routes
// to the eigenvalue test on the full data instead.
TestOutcome run_witness_test(const Dataset& x, const WitnessTestSpec& spec);

}  // namespace graphwise

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "graphwise/witness.hpp"

namespace graphwise {

enum class ScenarioRole { null_hypothesis, alternative };

struct SimulationConfig {
  GraphProperty property = GraphProperty::connectivity;
  int property_m = 0;
  int property_s0 = 0;
  int property_s1 = 0;  // alternative degree for max-degree scenarios
  double mu = 0.0;
  std::vector<double> theta_grid;
  int n = 300;
  int d = 50;
  int repetitions = 100;
  BootstrapConfig bootstrap;  // replications and alpha; seeds derived per repetition
  LambdaPolicy lambda;
  ClimeConfig clime;
  std::uint64_t seed = 0;
  std::string null_generator = "auto";  // "none" disables the scenario
  std::string alt_generator = "auto";
  unsigned threads = 1;
  bool shuffle_split = false;

  void validate() const;
};

// Named experiment scales. Both run the full signal-strength grid on the
// chosen property with lambda = 1.5 sqrt(log d / rows).
SimulationConfig desk_profile(GraphProperty property);   // d=50,  n=300, N=100, B=1000
SimulationConfig paper_profile(GraphProperty property);  // d=100, n=400, N=200, B=3000

// Scenario models drawn per repetition. The null draw follows the randomized
// construction for the property (connectivity splits a chain at a uniform
// point, cycle uses the plain chain); the alternative uses the designated
// connected or loopy model.
Eigen::MatrixXd scenario_precision(const SimulationConfig& cfg, ScenarioRole role,
                                   const std::string& generator, double theta, Rng& rng);

struct ThetaRow {
  double theta = 0.0;
  int null_reps = 0;
  int null_rejects = 0;
  int null_failures = 0;
  int alt_reps = 0;
  int alt_rejects = 0;
  int alt_failures = 0;
  std::vector<std::string> failures;

  double size() const;
  double size_se() const;
  double power() const;
  double power_se() const;
  double risk() const;  // size + (1 - power)
};

struct SimulationResult {
  SimulationConfig config;
  std::vector<ThetaRow> rows;
  double wall_seconds = 0.0;
  double rate_surrogate = 0.0;  // s log(nd) sqrt(log d log(nd)) / sqrt n, s = scenario sparsity
};

SimulationResult run_simulation(const SimulationConfig& cfg);

// CSV columns, exactly:
// property,n,d,theta,alpha,lambda,reps,size,size_se,power,power_se,risk,seed
void emit_csv(const SimulationResult& result, std::ostream& out);
void emit_records(const SimulationResult& result, std::ostream& out);

// Empirical constant K with ||theta_hat - theta*||_max <= K sqrt(log d / n):
// the max over repetitions of the scaled estimation error.
double measure_estimator_constant(const PrecisionModel& model, int n, int reps,
                                  const ClimeConfig& cfg, const LambdaPolicy& lambda,
                                  std::uint64_t seed);

}  // namespace graphwise

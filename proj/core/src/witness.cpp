#include "graphwise/witness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "graphwise/errors.hpp"
#include "graphwise/rng.hpp"

namespace graphwise {

GraphProperty property_from_name(const std::string& name) {
  if (name == "connectivity") return GraphProperty::connectivity;
  if (name == "components") return GraphProperty::components;
  if (name == "cycle") return GraphProperty::cycle;
  if (name == "triangle") return GraphProperty::triangle;
  if (name == "sap") return GraphProperty::sap;
  if (name == "max-degree") return GraphProperty::max_degree;
  if (name == "clique") return GraphProperty::clique;
  if (name == "connectivity-at-level") return GraphProperty::connectivity_at_level;
  throw ConfigError("unknown property '" + name + "'");
}

std::string property_name(GraphProperty p) {
  switch (p) {
    case GraphProperty::connectivity: return "connectivity";
    case GraphProperty::components: return "components";
    case GraphProperty::cycle: return "cycle";
    case GraphProperty::triangle: return "triangle";
    case GraphProperty::sap: return "sap";
    case GraphProperty::max_degree: return "max-degree";
    case GraphProperty::clique: return "clique";
    case GraphProperty::connectivity_at_level: return "connectivity-at-level";
  }
  return "?";
}

double LambdaPolicy::resolve(int d, int rows) const {
  if (mode == Mode::fixed) {
    if (value <= 0.0) throw ConfigError("fixed lambda must be positive");
    return value;
  }
  if (scale <= 0.0) throw ConfigError("lambda scale must be positive");
  return scale * std::sqrt(std::log(static_cast<double>(d)) / static_cast<double>(rows));
}

void WitnessTestSpec::validate(int d) const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  switch (property) {
    case GraphProperty::components:
      if (m < 1 || m > d) throw ConfigError("components test needs 1 <= m <= d");
      break;
    case GraphProperty::sap:
      if (m < 1 || m > d - 2) throw ConfigError("sap test needs 1 <= m <= d - 2");
      break;
    case GraphProperty::max_degree:
      if (s0 < 1 || s0 >= d) throw ConfigError("max-degree test needs 1 <= s0 < d");
      break;
    case GraphProperty::clique:
      if (s < 2 || s > d) throw ConfigError("clique test needs 2 <= s <= d");
      break;
    case GraphProperty::connectivity_at_level:
      if (mu < 0.0) throw ConfigError("level mu must be nonnegative");
      break;
    default:
      break;
  }
}

std::pair<Dataset, Dataset> split(const Dataset& x, bool shuffle, std::uint64_t seed) {
  if (x.n() < 4) throw ConfigError("data splitting needs at least 4 observations");
  Dataset working = x;
  if (shuffle) {
    std::vector<int> order(static_cast<std::size_t>(x.n()));
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(seed, 0x5117fu));
    for (int i = x.n() - 1; i > 0; --i) {
      auto j = static_cast<std::size_t>(rng.uniform_int(0, i));
      std::swap(order[static_cast<std::size_t>(i)], order[j]);
    }
    working = x.permuted(order);
  }
  int half = x.n() / 2;
  return {working.head(half), working.tail_from(half)};
}

EdgeSet find_witness(const PrecisionEstimate& est1, const WitnessTestSpec& spec, int d) {
  spec.validate(d);
  EdgeWeights weights = EdgeWeights::from_matrix_abs(est1.matrix);
  auto require = [&](std::optional<EdgeSet> found, const char* what) {
    if (!found) {
      throw NumericalError(std::string("greedy search exhausted all edges without finding a ") +
                           what);
    }
    return *found;
  };
  switch (spec.property) {
    case GraphProperty::connectivity:
    case GraphProperty::connectivity_at_level:
      return max_spanning_tree(weights, d);
    case GraphProperty::components:
      return max_spanning_forest(weights, d, spec.m);
    case GraphProperty::cycle:
      return require(greedy_structure_search(weights, d, {StructureKind::cycle, 0}), "cycle");
    case GraphProperty::triangle:
      return require(greedy_structure_search(weights, d, {StructureKind::triangle, 0}),
                     "triangle");
    case GraphProperty::sap:
      return require(greedy_structure_search(weights, d, {StructureKind::sap, spec.m}),
                     "self-avoiding path");
    case GraphProperty::max_degree:
      return require(greedy_structure_search(weights, d, {StructureKind::degree, spec.s0}),
                     "high-degree vertex");
    case GraphProperty::clique:
      throw ConfigError("the clique property uses the eigenvalue test, not a witness search");
  }
  throw ConfigError("unreachable property");
}

bool witness_has_property(const WitnessTestSpec& spec, const EdgeSet& edges, int d) {
  switch (spec.property) {
    case GraphProperty::connectivity:
    case GraphProperty::connectivity_at_level:
      return is_spanning_tree(d, edges);
    case GraphProperty::components:
      return is_spanning_forest(d, spec.m, edges);
    case GraphProperty::cycle:
      return is_simple_cycle(edges);
    case GraphProperty::triangle:
      return edges.size() == 3 && is_simple_cycle(edges);
    case GraphProperty::sap:
      return static_cast<int>(edges.size()) == spec.m + 1 && is_simple_path(edges);
    case GraphProperty::max_degree:
      return is_star(edges, spec.s0 + 1);
    case GraphProperty::clique: {
      auto support = vertex_support(edges);
      return static_cast<int>(support.size()) == spec.s &&
             edges.size() == static_cast<std::size_t>(spec.s) * (spec.s - 1) / 2;
    }
  }
  return false;
}

CliqueTestResult clique_detection_test(const Dataset& x, int s, double alpha) {
  const int d = x.dim();
  const int n = x.n();
  if (s < 1 || s > d) throw ConfigError("clique size out of range");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  // keep the exhaustive subset scan bounded
  unsigned __int128 count = 1;
  for (int i = 1; i <= std::min(s, d - s); ++i) {
    count = count * static_cast<unsigned>(d - std::min(s, d - s) + i) / static_cast<unsigned>(i);
    if (count > 1000000) {
      throw ConfigError("clique test needs C(d, s) <= 1e6 subsets");
    }
  }
  Eigen::MatrixXd sigma = empirical_covariance(x);

  CliqueTestResult result;
  result.lambda_min = std::numeric_limits<double>::infinity();
  std::vector<int> pick(static_cast<std::size_t>(s));
  Eigen::MatrixXd block(s, s);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == s) {
      for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
          block(i, j) = sigma(pick[static_cast<std::size_t>(i)] - 1,
                              pick[static_cast<std::size_t>(j)] - 1);
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block, Eigen::EigenvaluesOnly);
      if (solver.info() != Eigen::Success) {
        throw NumericalError("eigenvalue solve failed in clique test");
      }
      double lo = solver.eigenvalues().minCoeff();
      if (lo < result.lambda_min) {
        result.lambda_min = lo;
        result.argmin_subset = pick;
      }
      return;
    }
    for (int v = start; v <= d - (s - depth - 1); ++v) {
      pick[static_cast<std::size_t>(depth)] = v;
      rec(v + 1, depth + 1);
    }
  };
  rec(1, 0);

  double inner = (s * std::log(std::numbers::e * d / static_cast<double>(s)) +
                  std::log(2.0 / alpha)) /
                 static_cast<double>(n);
  double root = 1.0 - (std::numbers::sqrt2 + 1.0) * std::sqrt(inner);
  result.nu = root * root;
  result.reject = result.lambda_min < result.nu;
  return result;
}

namespace {

template <class Fn>
auto run_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (Error& e) {
    e.prepend(std::string("stage ") + stage + ": ");
    throw;
  }
}

}  // namespace

TestOutcome run_witness_test(const Dataset& x, const WitnessTestSpec& spec) {
  const int d = x.dim();
  spec.validate(d);

  if (spec.property == GraphProperty::clique) {
    auto result = run_stage("clique-eigenvalue", [&] {
      return clique_detection_test(x, spec.s, spec.alpha);
    });
    TestOutcome outcome;
    outcome.property = property_name(spec.property);
    outcome.alpha = spec.alpha;
    outcome.reject = result.reject;
    EdgeSet clique;
    for (std::size_t i = 0; i < result.argmin_subset.size(); ++i) {
      for (std::size_t j = i + 1; j < result.argmin_subset.size(); ++j) {
        clique.push_back(make_edge(result.argmin_subset[i], result.argmin_subset[j]));
      }
    }
    outcome.witness = make_edge_set(std::move(clique));
    if (result.reject) outcome.rejected_edges = outcome.witness;
    outcome.extras.set("lambda_min", result.lambda_min);
    outcome.extras.set("nu", result.nu);
    return outcome;
  }

  auto [first, second] = run_stage("split", [&] { return split(x, spec.shuffle, spec.split_seed); });

  ClimeConfig cfg1 = spec.clime;
  cfg1.lambda = spec.lambda.resolve(d, first.n());
  auto est1 = run_stage("estimate-first-half", [&] {
    return clime(empirical_covariance(first), cfg1);
  });

  auto witness = run_stage("find-witness", [&] { return find_witness(est1, spec, d); });

  TestOutcome outcome;
  if (witness.empty()) {
    // components with m = d: no edges are needed, the null is vacuous
    outcome.reject = true;
    outcome.extras.set("note", "empty witness; nothing to certify");
  } else {
    ClimeConfig cfg2 = spec.clime;
    cfg2.lambda = spec.lambda.resolve(d, second.n());
    auto est2 = run_stage("estimate-second-half", [&] {
      return clime(empirical_covariance(second), cfg2);
    });
    BootstrapConfig bootstrap = spec.bootstrap;
    bootstrap.alpha = spec.alpha;
    double mu = spec.property == GraphProperty::connectivity_at_level ? spec.mu : 0.0;
    outcome = run_stage("step-down", [&] {
      return step_down(second, est2, witness, bootstrap, mu);
    });
  }
  outcome.property = property_name(spec.property);
  outcome.alpha = spec.alpha;
  outcome.witness = witness;
  return outcome;
}

}  // namespace graphwise

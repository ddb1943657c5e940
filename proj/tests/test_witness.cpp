#include <doctest.h>

#include <cmath>

#include "graphwise/errors.hpp"
#include "graphwise/witness.hpp"
#include "oracles.hpp"

using namespace graphwise;

namespace {

Graph chain(int d) {
  EdgeSet edges;
  for (int j = 1; j < d; ++j) edges.push_back(make_edge(j, j + 1));
  return Graph(d, std::move(edges));
}

PrecisionEstimate estimate_from(const Eigen::MatrixXd& m) {
  PrecisionEstimate est;
  est.matrix = m;
  est.raw = m;
  est.lambda = 0.1;
  return est;
}

}  // namespace

TEST_CASE("split sizes and determinism") {
  PrecisionModel model(0.0, Graph::empty(3));
  Dataset data = sample(model, 7, 1);
  auto [first, second] = split(data);
  CHECK(first.n() == 3);
  CHECK(second.n() == 4);
  CHECK(first.rows() == data.rows().topRows(3));

  Dataset even = sample(model, 10, 2);
  auto [a, b] = split(even);
  CHECK(a.n() == 5);
  CHECK(b.n() == 5);

  auto [s1, s2] = split(even, true, 42);
  auto [t1, t2] = split(even, true, 42);
  CHECK(s1.rows() == t1.rows());
  CHECK(s2.rows() == t2.rows());
  CHECK(s1.rows() != even.rows().topRows(5));  // the shuffle moved something

  Dataset tiny = sample(model, 3, 3);
  CHECK_THROWS_AS(split(tiny), ConfigError);
}

TEST_CASE("connectivity witness is the maximum spanning tree") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
  m(0, 1) = m(1, 0) = 0.9;
  m(1, 2) = m(2, 1) = 0.8;
  m(0, 2) = m(2, 0) = 0.5;
  WitnessTestSpec spec;
  spec.property = GraphProperty::connectivity;
  CHECK(find_witness(estimate_from(m), spec, 3) ==
        make_edge_set({make_edge(1, 2), make_edge(2, 3)}));
}

TEST_CASE("components witness at m = d is empty and m = 1 matches connectivity") {
  Rng rng(9);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(6, 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) m(i, j) = m(j, i) = rng.uniform();
  }
  WitnessTestSpec spec;
  spec.property = GraphProperty::components;
  spec.m = 6;
  CHECK(find_witness(estimate_from(m), spec, 6).empty());
  spec.m = 1;
  WitnessTestSpec conn;
  conn.property = GraphProperty::connectivity;
  CHECK(find_witness(estimate_from(m), spec, 6) == find_witness(estimate_from(m), conn, 6));
}

TEST_CASE("cycle witness recovers the planted chord cycle") {
  // strong chain plus one strong chord 2-5; weak noise elsewhere
  int d = 8;
  Rng rng(15);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) m(i, j) = m(j, i) = 0.05 * rng.uniform();
  }
  for (int j = 1; j < d; ++j) m(j - 1, j) = m(j, j - 1) = 0.4 + 0.01 * j;
  m(1, 4) = m(4, 1) = 0.45;  // chord 2-5
  WitnessTestSpec spec;
  spec.property = GraphProperty::cycle;
  auto witness = find_witness(estimate_from(m), spec, d);
  CHECK(is_simple_cycle(witness));
  CHECK(witness == make_edge_set({make_edge(2, 3), make_edge(3, 4), make_edge(4, 5),
                                  make_edge(2, 5)}));

  // oracle: among the edges at or above the cycle's weakest weight, the
  // returned cycle must be present in the enumerated cycle list
  double weakest = 1e9;
  for (const auto& e : witness) weakest = std::min(weakest, std::abs(m(e.a - 1, e.b - 1)));
  EdgeSet heavy;
  for (int u = 1; u <= d; ++u) {
    for (int v = u + 1; v <= d; ++v) {
      if (std::abs(m(u - 1, v - 1)) >= weakest) heavy.push_back(make_edge(u, v));
    }
  }
  auto cycles = oracles::all_simple_cycles(Graph(d, heavy));
  CHECK(std::find(cycles.begin(), cycles.end(), witness) != cycles.end());
}

TEST_CASE("witness structures are valid for every property on random weights") {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    int d = 8;
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) m(i, j) = m(j, i) = rng.normal();
    }
    auto est = estimate_from(m);
    WitnessTestSpec spec;

    spec.property = GraphProperty::connectivity;
    CHECK(witness_has_property(spec, find_witness(est, spec, d), d));

    spec.property = GraphProperty::components;
    spec.m = 3;
    CHECK(witness_has_property(spec, find_witness(est, spec, d), d));

    spec.property = GraphProperty::cycle;
    CHECK(witness_has_property(spec, find_witness(est, spec, d), d));

    spec.property = GraphProperty::triangle;
    CHECK(witness_has_property(spec, find_witness(est, spec, d), d));

    spec.property = GraphProperty::sap;
    spec.m = 4;
    CHECK(witness_has_property(spec, find_witness(est, spec, d), d));

    spec.property = GraphProperty::max_degree;
    spec.s0 = 2;
    CHECK(witness_has_property(spec, find_witness(est, spec, d), d));
  }
}

TEST_CASE("under the alternative the tree edges carry true signal") {
  // connected chain model with a sample size large enough that the measured
  // estimation constant makes theta = r K sqrt(log d / half) with r > 2
  const int d = 20, n = 4000;
  const double theta = 0.45;
  const int reps = 30;
  double unit = std::sqrt(std::log(static_cast<double>(d)) / (n / 2));
  PrecisionModel model(theta, chain(d));
  ClimeConfig cfg;
  cfg.tolerance = 1e-5;
  int tree_in_truth = 0;
  double worst_k = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    Dataset data = sample(model, n, derive_seed(5150, static_cast<std::uint64_t>(rep)));
    auto [first, second] = split(data);
    ClimeConfig c1 = cfg;
    c1.lambda = LambdaPolicy::scaled(1.5).resolve(d, first.n());
    auto est = clime(empirical_covariance(first), c1);
    worst_k = std::max(worst_k, (est.matrix - model.matrix()).cwiseAbs().maxCoeff() / unit);
    WitnessTestSpec spec;
    spec.property = GraphProperty::connectivity;
    auto tree = find_witness(est, spec, d);
    bool all_signal = true;
    for (const auto& e : tree) {
      if (model.matrix()(e.a - 1, e.b - 1) == 0.0) all_signal = false;
    }
    if (all_signal) ++tree_in_truth;
  }
  double r = theta / (worst_k * unit);
  CHECK(r > 2.0);  // the signal regime of the consistency lemma
  double lower = (r - 2.0) / r * theta;
  CHECK(lower > 0.0);
  // |Theta*_e| is theta on every true edge, so tree-in-truth implies the
  // signal floor; require the frequency 1 - 1/d minus Monte Carlo slack
  CHECK(static_cast<double>(tree_in_truth) / reps >=
        1.0 - 1.0 / d - 2.0 * std::sqrt(0.25 / reps));
}

TEST_CASE("under the null the tree always bridges with a true zero") {
  const int d = 16, n = 1200;
  EdgeSet edges;
  for (int j = 1; j < 8; ++j) edges.push_back(make_edge(j, j + 1));
  for (int j = 9; j < d; ++j) edges.push_back(make_edge(j, j + 1));
  PrecisionModel model(0.45, Graph(d, edges));
  ClimeConfig cfg;
  cfg.tolerance = 1e-5;
  for (int rep = 0; rep < 10; ++rep) {
    Dataset data = sample(model, n, derive_seed(31, static_cast<std::uint64_t>(rep)));
    auto [first, second] = split(data);
    ClimeConfig c1 = cfg;
    c1.lambda = LambdaPolicy::scaled(1.5).resolve(d, first.n());
    auto est = clime(empirical_covariance(first), c1);
    WitnessTestSpec spec;
    spec.property = GraphProperty::connectivity;
    auto tree = find_witness(est, spec, d);
    bool has_zero = false;
    for (const auto& e : tree) {
      if (model.matrix()(e.a - 1, e.b - 1) == 0.0) has_zero = true;
    }
    CHECK(has_zero);
  }
}

TEST_CASE("the eigenvalue clique test") {
  PrecisionModel identity(0.0, Graph::empty(8));
  Dataset data = sample(identity, 500, 77);
  auto full = clique_detection_test(data, 8, 0.05);
  // s = d scans the single full-covariance block
  Eigen::MatrixXd sigma = empirical_covariance(data);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sigma, Eigen::EigenvaluesOnly);
  CHECK(full.lambda_min == doctest::Approx(solver.eigenvalues().minCoeff()).epsilon(1e-12));

  CHECK_THROWS_AS(clique_detection_test(data, 9, 0.05), ConfigError);

  // identity model keeps lambda_min above nu most of the time
  int false_alarms = 0;
  const int reps = 30;
  for (int rep = 0; rep < reps; ++rep) {
    Dataset x = sample(identity, 400, derive_seed(123, static_cast<std::uint64_t>(rep)));
    if (clique_detection_test(x, 3, 0.1).reject) ++false_alarms;
  }
  CHECK(static_cast<double>(false_alarms) / reps <= 2 * 0.1 + 2.0 * std::sqrt(0.25 / reps));

  // planted clique at strong signal is caught nearly always; the planted
  // block pins lambda_min near 1/(1 + (s-1) theta) = 0.36, far below nu
  int catches = 0;
  for (int rep = 0; rep < reps; ++rep) {
    auto precision = planted_clique_precision(12, {2, 5, 9}, 0.9);
    Dataset x =
        sample_gaussian(precision, 2000, derive_seed(321, static_cast<std::uint64_t>(rep)));
    if (clique_detection_test(x, 3, 0.05).reject) ++catches;
  }
  CHECK(static_cast<double>(catches) / reps >= 0.95);
}

TEST_CASE("run_witness_test keeps size near zero under the empty graph") {
  const int reps = 20;
  int rejections = 0;
  for (int rep = 0; rep < reps; ++rep) {
    PrecisionModel identity(0.0, Graph::empty(12));
    Dataset data = sample(identity, 120, derive_seed(9000, static_cast<std::uint64_t>(rep)));
    WitnessTestSpec spec;
    spec.property = GraphProperty::connectivity;
    spec.alpha = 0.05;
    spec.lambda = LambdaPolicy::scaled(1.5);
    spec.clime.tolerance = 1e-5;
    spec.bootstrap.replications = 300;
    spec.bootstrap.seed = derive_seed(9001, static_cast<std::uint64_t>(rep));
    auto outcome = run_witness_test(data, spec);
    if (outcome.reject) ++rejections;
    CHECK(outcome.reject == (outcome.rejected_edges == outcome.witness));
  }
  CHECK(static_cast<double>(rejections) / reps <= 0.05 + 2.0 * std::sqrt(0.25 / reps));
}

TEST_CASE("run_witness_test routes the clique property to the eigenvalue test") {
  auto precision = planted_clique_precision(10, {1, 4, 7}, 0.9);
  Dataset data = sample_gaussian(precision, 400, 55);
  WitnessTestSpec spec;
  spec.property = GraphProperty::clique;
  spec.s = 3;
  auto outcome = run_witness_test(data, spec);
  CHECK(outcome.extras.has("lambda_min"));
  CHECK(outcome.extras.has("nu"));
  CHECK(outcome.witness.size() == 3);
}

TEST_CASE("connectivity-at-level applies the shifted rule") {
  // strong connected chain: plain test rejects, a huge mu blocks rejection
  PrecisionModel model(0.45, chain(10));
  Dataset data = sample(model, 1600, 8);
  WitnessTestSpec spec;
  spec.property = GraphProperty::connectivity_at_level;
  spec.mu = 0.0;
  spec.lambda = LambdaPolicy::scaled(1.5);
  spec.clime.tolerance = 1e-5;
  spec.bootstrap.replications = 300;
  spec.bootstrap.seed = 4;
  auto plain = run_witness_test(data, spec);
  CHECK(plain.reject);
  spec.mu = 2.0;
  auto shifted = run_witness_test(data, spec);
  CHECK_FALSE(shifted.reject);
  CHECK(shifted.mu == 2.0);
}

TEST_CASE("stage labels decorate propagated errors") {
  PrecisionModel identity(0.0, Graph::empty(4));
  Dataset data = sample(identity, 3, 1);  // too small to split
  WitnessTestSpec spec;
  spec.property = GraphProperty::connectivity;
  try {
    run_witness_test(data, spec);
    FAIL("expected a stage error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("stage split") != std::string::npos);
  }
}

#include "graphwise/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "graphwise/errors.hpp"
#include "graphwise/parallel.hpp"

namespace graphwise {

void SimulationConfig::validate() const {
  if (theta_grid.empty()) throw ConfigError("simulation needs a nonempty theta grid");
  if (repetitions < 1) throw ConfigError("simulation needs at least one repetition");
  if (n < 8) throw ConfigError("simulation needs n >= 8");
  if (d < 4) throw ConfigError("simulation needs d >= 4");
  if (null_generator == "none" && alt_generator == "none") {
    throw ConfigError("at least one scenario must be enabled");
  }
  graphwise::validate(bootstrap);
}

namespace {

const std::vector<double> kPaperThetaGrid = {0.25, 0.28, 0.32, 0.35, 0.38, 0.42, 0.45};

SimulationConfig base_profile(GraphProperty property) {
  SimulationConfig cfg;
  cfg.property = property;
  cfg.theta_grid = kPaperThetaGrid;
  cfg.lambda = LambdaPolicy::scaled(1.5);
  cfg.clime.tolerance = 1e-5;
  cfg.clime.max_iterations = 4000;
  return cfg;
}

Graph chain_graph(int d) {
  EdgeSet edges;
  for (int j = 1; j < d; ++j) edges.push_back(make_edge(j, j + 1));
  return Graph(d, std::move(edges));
}

Graph split_chain_graph(int d, int m) {
  // chain(m) and chain(d - m) stacked disjointly
  EdgeSet edges;
  for (int j = 1; j < m; ++j) edges.push_back(make_edge(j, j + 1));
  for (int j = m + 1; j < d; ++j) edges.push_back(make_edge(j, j + 1));
  return Graph(d, std::move(edges));
}

Graph blocks_graph(int d, int blocks, Rng& rng) {
  // random composition of d vertices into `blocks` chains
  std::vector<int> cuts{0, d};
  while (static_cast<int>(cuts.size()) < blocks + 1) {
    int c = static_cast<int>(rng.uniform_int(1, d - 1));
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  EdgeSet edges;
  for (std::size_t b = 0; b + 1 < cuts.size(); ++b) {
    for (int j = cuts[b] + 1; j < cuts[b + 1]; ++j) edges.push_back(make_edge(j, j + 1));
  }
  return Graph(d, std::move(edges));
}

}  // namespace

SimulationConfig desk_profile(GraphProperty property) {
  SimulationConfig cfg = base_profile(property);
  cfg.d = 50;
  cfg.n = 300;
  cfg.repetitions = 100;
  cfg.bootstrap.replications = 1000;
  return cfg;
}

SimulationConfig paper_profile(GraphProperty property) {
  SimulationConfig cfg = base_profile(property);
  cfg.d = 100;
  cfg.n = 400;
  cfg.repetitions = 200;
  cfg.bootstrap.replications = 3000;
  return cfg;
}

Eigen::MatrixXd scenario_precision(const SimulationConfig& cfg, ScenarioRole role,
                                   const std::string& generator, double theta, Rng& rng) {
  const int d = cfg.d;
  auto graph_model = [&](const Graph& g) { return PrecisionModel(theta, g).matrix(); };
  std::string id = generator;
  if (id == "auto") {
    switch (cfg.property) {
      case GraphProperty::connectivity:
      case GraphProperty::connectivity_at_level:
        id = role == ScenarioRole::null_hypothesis ? "split-chain-uniform" : "chain";
        break;
      case GraphProperty::components:
        id = role == ScenarioRole::null_hypothesis ? "chain-blocks-null" : "chain-blocks-alt";
        break;
      case GraphProperty::cycle:
        id = role == ScenarioRole::null_hypothesis ? "chain" : "chain-plus-chord";
        break;
      case GraphProperty::triangle:
        id = role == ScenarioRole::null_hypothesis ? "chain" : "chain-plus-short-chord";
        break;
      case GraphProperty::sap:
        id = role == ScenarioRole::null_hypothesis ? "sap-blocks-null" : "sap-blocks-alt";
        break;
      case GraphProperty::max_degree:
        id = role == ScenarioRole::null_hypothesis ? "star-blocks-null" : "star-blocks-alt";
        break;
      case GraphProperty::clique:
        id = role == ScenarioRole::null_hypothesis ? "identity" : "planted-clique";
        break;
    }
  }

  Graph graph = Graph::empty(1);
  if (id == "identity") {
    return Eigen::MatrixXd::Identity(d, d);
  } else if (id == "chain") {
    graph = chain_graph(d);
  } else if (id == "split-chain-uniform") {
    int m = static_cast<int>(rng.uniform_int(1, d - 1));
    graph = split_chain_graph(d, m);
  } else if (id == "chain-plus-chord") {
    int hi = std::min(10, d);
    int m = static_cast<int>(rng.uniform_int(3, hi));
    graph = chain_graph(d).with_edges({make_edge(1, m)});
  } else if (id == "chain-plus-short-chord") {
    int m = static_cast<int>(rng.uniform_int(1, d - 2));
    graph = chain_graph(d).with_edges({make_edge(m, m + 2)});
  } else if (id == "chain-blocks-null") {
    graph = blocks_graph(d, cfg.property_m + 1, rng);
  } else if (id == "chain-blocks-alt") {
    graph = blocks_graph(d, cfg.property_m, rng);
  } else if (id == "sap-blocks-null" || id == "sap-blocks-alt") {
    int m = cfg.property_m;
    Family family = build_family(FamilyKind::sap_add, d - d % (m + 2), FamilyParams{.m = m});
    Graph base(d, family.base.edges());
    if (id == "sap-blocks-alt") {
      auto pick = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(family.divider.sets.size()) - 1));
      base = base.with_edges(family.divider.sets[pick]);
    }
    graph = base;
  } else if (id == "star-blocks-null" || id == "star-blocks-alt") {
    int s1 = cfg.property_s1 > cfg.property_s0 ? cfg.property_s1 : cfg.property_s0 + 2;
    Family family = build_family(FamilyKind::max_degree_bounded, d,
                                 FamilyParams{.s0 = cfg.property_s0, .s1 = s1});
    Graph base = family.base;
    if (id == "star-blocks-alt") {
      auto pick = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(family.divider.sets.size()) - 1));
      base = base.with_edges(family.divider.sets[pick]);
    }
    graph = base;
  } else if (id == "planted-clique") {
    std::vector<int> support;
    while (static_cast<int>(support.size()) < cfg.property_s1) {
      int v = static_cast<int>(rng.uniform_int(1, d));
      if (std::find(support.begin(), support.end(), v) == support.end()) support.push_back(v);
    }
    return planted_clique_precision(d, support, theta);
  } else {
    throw ConfigError("unknown scenario generator '" + id + "'");
  }

  // structural verification before sampling
  bool ok = true;
  switch (cfg.property) {
    case GraphProperty::connectivity:
    case GraphProperty::connectivity_at_level:
      ok = role == ScenarioRole::null_hypothesis ? !is_connected(graph) : is_connected(graph);
      break;
    case GraphProperty::components:
      ok = role == ScenarioRole::null_hypothesis
               ? component_count(graph) >= cfg.property_m + 1
               : component_count(graph) <= cfg.property_m;
      break;
    case GraphProperty::cycle:
      ok = role == ScenarioRole::null_hypothesis ? !has_cycle(graph) : has_cycle(graph);
      break;
    case GraphProperty::triangle:
      ok = role == ScenarioRole::null_hypothesis ? !has_triangle(graph) : has_triangle(graph);
      break;
    case GraphProperty::sap:
      ok = role == ScenarioRole::null_hypothesis ? longest_sap(graph) <= cfg.property_m
                                                 : longest_sap(graph) >= cfg.property_m + 1;
      break;
    case GraphProperty::max_degree:
      ok = role == ScenarioRole::null_hypothesis ? graph.max_degree() <= cfg.property_s0
                                                 : graph.max_degree() > cfg.property_s0;
      break;
    case GraphProperty::clique:
      break;
  }
  if (!ok) {
    throw NumericalError("scenario generator '" + id + "' produced a graph violating the " +
                         (role == ScenarioRole::null_hypothesis ? "null" : "alternative") +
                         std::string(" property"));
  }
  return graph_model(graph);
}

double ThetaRow::size() const {
  int valid = null_reps - null_failures;
  return valid > 0 ? static_cast<double>(null_rejects) / valid : std::nan("");
}

double ThetaRow::size_se() const {
  int valid = null_reps - null_failures;
  if (valid <= 0) return std::nan("");
  double p = size();
  return std::sqrt(p * (1.0 - p) / valid);
}

double ThetaRow::power() const {
  int valid = alt_reps - alt_failures;
  return valid > 0 ? static_cast<double>(alt_rejects) / valid : std::nan("");
}

double ThetaRow::power_se() const {
  int valid = alt_reps - alt_failures;
  if (valid <= 0) return std::nan("");
  double p = power();
  return std::sqrt(p * (1.0 - p) / valid);
}

double ThetaRow::risk() const { return size() + (1.0 - power()); }

SimulationResult run_simulation(const SimulationConfig& cfg) {
  cfg.validate();
  auto start = std::chrono::steady_clock::now();

  struct Task {
    std::size_t theta_index;
    int repetition;
    ScenarioRole role;
  };
  std::vector<Task> tasks;
  bool run_null = cfg.null_generator != "none";
  bool run_alt = cfg.alt_generator != "none";
  for (std::size_t t = 0; t < cfg.theta_grid.size(); ++t) {
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
      if (run_null) tasks.push_back({t, rep, ScenarioRole::null_hypothesis});
      if (run_alt) tasks.push_back({t, rep, ScenarioRole::alternative});
    }
  }

  // outcome per task: 0 accept, 1 reject, 2 failure
  std::vector<unsigned char> outcomes(tasks.size(), 0);
  std::vector<std::string> messages(tasks.size());

  parallel_for(tasks.size(), cfg.threads, [&](std::size_t idx) {
    const Task& task = tasks[idx];
    double theta = cfg.theta_grid[task.theta_index];
    std::uint64_t role_tag = task.role == ScenarioRole::null_hypothesis ? 0 : 1;
    std::uint64_t rep_seed = derive_seed(cfg.seed, task.theta_index,
                                         static_cast<std::uint64_t>(task.repetition), role_tag);
    try {
      Rng scenario_rng(derive_seed(rep_seed, 1));
      const std::string& generator =
          task.role == ScenarioRole::null_hypothesis ? cfg.null_generator : cfg.alt_generator;
      Eigen::MatrixXd precision =
          scenario_precision(cfg, task.role, generator, theta, scenario_rng);
      Dataset data = sample_gaussian(precision, cfg.n, derive_seed(rep_seed, 2));

      WitnessTestSpec spec;
      spec.property = cfg.property;
      spec.m = cfg.property_m;
      spec.s0 = cfg.property_s0;
      spec.s = cfg.property_s1;
      spec.mu = cfg.mu;
      spec.alpha = cfg.bootstrap.alpha;
      // one tuning value per experiment, resolved at the nominal sample size
      // and reused by both estimation stages
      spec.lambda = LambdaPolicy::fixed(cfg.lambda.resolve(cfg.d, cfg.n));
      spec.clime = cfg.clime;
      spec.bootstrap = cfg.bootstrap;
      spec.bootstrap.seed = derive_seed(rep_seed, 3);
      spec.shuffle = cfg.shuffle_split;
      spec.split_seed = derive_seed(rep_seed, 4);
      TestOutcome outcome = run_witness_test(data, spec);
      outcomes[idx] = outcome.reject ? 1 : 0;
    } catch (const Error& e) {
      outcomes[idx] = 2;
      messages[idx] = e.what();
    }
  });

  SimulationResult result;
  result.config = cfg;
  result.rows.resize(cfg.theta_grid.size());
  for (std::size_t t = 0; t < cfg.theta_grid.size(); ++t) {
    result.rows[t].theta = cfg.theta_grid[t];
  }
  for (std::size_t idx = 0; idx < tasks.size(); ++idx) {
    auto& row = result.rows[tasks[idx].theta_index];
    bool null_side = tasks[idx].role == ScenarioRole::null_hypothesis;
    int& reps = null_side ? row.null_reps : row.alt_reps;
    int& rejects = null_side ? row.null_rejects : row.alt_rejects;
    int& failures = null_side ? row.null_failures : row.alt_failures;
    ++reps;
    if (outcomes[idx] == 1) ++rejects;
    if (outcomes[idx] == 2) {
      ++failures;
      if (row.failures.size() < 16) row.failures.push_back(messages[idx]);
    }
  }

  // finite-sample surrogate of the bootstrap rate condition, with the chain
  // scenarios' column sparsity s = 3
  double s = 3.0;
  double logd = std::log(static_cast<double>(cfg.d));
  double lognd = std::log(static_cast<double>(cfg.n) * cfg.d);
  result.rate_surrogate = s * lognd * std::sqrt(logd * lognd) / std::sqrt(cfg.n);

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

namespace {

std::string csv_double(double v) { return format_double(v, 10); }

}  // namespace

void emit_csv(const SimulationResult& result, std::ostream& out) {
  out << "property,n,d,theta,alpha,lambda,reps,size,size_se,power,power_se,risk,seed\n";
  const auto& cfg = result.config;
  double nominal_lambda = cfg.lambda.resolve(cfg.d, cfg.n);
  for (const auto& row : result.rows) {
    out << property_name(cfg.property) << "," << cfg.n << "," << cfg.d << ","
        << csv_double(row.theta) << "," << csv_double(cfg.bootstrap.alpha) << ","
        << csv_double(nominal_lambda) << "," << cfg.repetitions << "," << csv_double(row.size())
        << "," << csv_double(row.size_se()) << "," << csv_double(row.power()) << ","
        << csv_double(row.power_se()) << "," << csv_double(row.risk()) << "," << cfg.seed
        << "\n";
  }
}

void emit_records(const SimulationResult& result, std::ostream& out) {
  const auto& cfg = result.config;
  double nominal_lambda = cfg.lambda.resolve(cfg.d, cfg.n);
  for (const auto& row : result.rows) {
    Record r;
    r.set("record", "graphwise.simulation.row");
    r.set("property", property_name(cfg.property));
    r.set("n", cfg.n);
    r.set("d", cfg.d);
    r.set("theta", row.theta);
    r.set("alpha", cfg.bootstrap.alpha);
    r.set("lambda", nominal_lambda);
    r.set("reps", cfg.repetitions);
    r.set("size", row.size());
    r.set("size_se", row.size_se());
    r.set("power", row.power());
    r.set("power_se", row.power_se());
    r.set("risk", row.risk());
    r.set("seed", cfg.seed);
    r.set("null_failures", row.null_failures);
    r.set("alt_failures", row.alt_failures);
    r.set("rate_surrogate", result.rate_surrogate);
    out << r.to_text() << "\n";
  }
}

double measure_estimator_constant(const PrecisionModel& model, int n, int reps,
                                  const ClimeConfig& cfg, const LambdaPolicy& lambda,
                                  std::uint64_t seed) {
  if (reps < 1) throw ConfigError("measurement needs at least one repetition");
  double worst = 0.0;
  double unit = std::sqrt(std::log(static_cast<double>(model.dimension())) / n);
  for (int rep = 0; rep < reps; ++rep) {
    Dataset data = sample(model, n, derive_seed(seed, static_cast<std::uint64_t>(rep)));
    ClimeConfig local = cfg;
    local.lambda = lambda.resolve(model.dimension(), n);
    auto est = clime(empirical_covariance(data), local);
    double err = (est.matrix - model.matrix()).cwiseAbs().maxCoeff();
    worst = std::max(worst, err / unit);
  }
  return worst;
}

}  // namespace graphwise

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphwise/errors.hpp"
#include "graphwise/harness.hpp"
#include "graphwise/lowerbound.hpp"

namespace gw = graphwise;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::ofstream open_output(const std::string& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw gw::ConfigError("cannot open output file: " + path);
  return out;
}

// ---- sample -----------------------------------------------------------------

struct SampleArgs {
  std::string model = "chain";
  int d = 50;
  int n = 300;
  double theta = 0.3;
  int split_m = 0;
  int chord_m = 4;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
};

int run_sample(const SampleArgs& args) {
  gw::EdgeSet edges;
  for (int j = 1; j < args.d; ++j) edges.push_back(gw::make_edge(j, j + 1));
  gw::Graph graph = gw::Graph::empty(args.d);
  if (args.model == "identity") {
    graph = gw::Graph::empty(args.d);
  } else if (args.model == "chain") {
    graph = gw::Graph(args.d, edges);
  } else if (args.model == "two-chains") {
    int m = args.split_m > 0 ? args.split_m : args.d / 2;
    gw::EdgeSet split;
    for (int j = 1; j < m; ++j) split.push_back(gw::make_edge(j, j + 1));
    for (int j = m + 1; j < args.d; ++j) split.push_back(gw::make_edge(j, j + 1));
    graph = gw::Graph(args.d, split);
  } else if (args.model == "chain-chord") {
    edges.push_back(gw::make_edge(1, args.chord_m));
    graph = gw::Graph(args.d, edges);
  } else {
    throw gw::ConfigError("unknown model '" + args.model + "'");
  }
  gw::PrecisionModel model(args.model == "identity" ? 0.0 : args.theta, graph);
  gw::Dataset data = gw::sample(model, args.n, args.seed);
  auto out = open_output(args.out, args.format == "bin");
  if (args.format == "bin") {
    data.write_binary(out);
  } else if (args.format == "csv") {
    data.write_csv(out);
  } else {
    throw gw::ConfigError("format must be csv or bin");
  }
  std::cout << "wrote " << data.n() << " x " << data.dim() << " samples to " << args.out << "\n";
  return kExitOk;
}

// ---- estimate ----------------------------------------------------------------

struct EstimateArgs {
  std::string data;
  double lambda = 0.0;
  double lambda_scale = 0.0;
  bool cv = false;
  int folds = 5;
  double tolerance = 1e-7;
  int max_iterations = 40000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out;
  std::string format = "csv";
};

int run_estimate(const EstimateArgs& args) {
  gw::Dataset data = gw::Dataset::read_file(args.data);
  gw::ClimeConfig cfg;
  cfg.tolerance = args.tolerance;
  cfg.max_iterations = args.max_iterations;
  cfg.threads = args.threads;
  if (args.cv) {
    cfg.lambda = gw::cv_select_lambda(data, gw::default_lambda_grid(data.dim(), data.n()),
                                      args.folds, args.seed, cfg);
  } else if (args.lambda > 0.0) {
    cfg.lambda = args.lambda;
  } else {
    double scale = args.lambda_scale > 0.0 ? args.lambda_scale : 1.5;
    cfg.lambda = gw::LambdaPolicy::scaled(scale).resolve(data.dim(), data.n());
  }
  auto est = gw::clime(gw::empirical_covariance(data), cfg);

  if (!args.out.empty()) {
    auto out = open_output(args.out, args.format == "bin");
    gw::Dataset as_rows(est.matrix);
    if (args.format == "bin") {
      as_rows.write_binary(out);
    } else {
      as_rows.write_csv(out);
    }
  }
  gw::Record diag;
  diag.set("record", "graphwise.estimate.diagnostics");
  diag.set("n", data.n());
  diag.set("d", data.dim());
  diag.set("lambda", cfg.lambda);
  diag.set("constraint_residual", est.diagnostics.constraint_residual);
  diag.set("max_iterations_used", est.diagnostics.max_iterations_used);
  diag.set("converged", est.diagnostics.converged);
  std::cout << diag.to_text();
  return est.diagnostics.converged ? kExitOk : kExitNumerical;
}

// ---- test ----------------------------------------------------------------------

struct TestArgs {
  std::string property = "connectivity";
  std::string data;
  double alpha = 0.05;
  double mu = 0.0;
  int m = 0;
  int s0 = 0;
  int s = 0;
  double lambda = 0.0;
  double lambda_scale = 1.5;
  int bootstrap = 3000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool no_shuffle = false;
  std::string config;
};

int run_test(TestArgs args) {
  if (!args.config.empty()) {
    auto file = gw::Record::parse_file(args.config);
    args.property = file.get_string_or("property", args.property);
    args.alpha = file.get_double_or("alpha", args.alpha);
    args.mu = file.get_double_or("mu", args.mu);
    args.m = static_cast<int>(file.get_int_or("m", args.m));
    args.s0 = static_cast<int>(file.get_int_or("s0", args.s0));
    args.s = static_cast<int>(file.get_int_or("s", args.s));
    args.lambda = file.get_double_or("lambda", args.lambda);
    args.lambda_scale = file.get_double_or("lambda_scale", args.lambda_scale);
    args.bootstrap = static_cast<int>(file.get_int_or("bootstrap", args.bootstrap));
    args.seed = static_cast<std::uint64_t>(file.get_int_or("seed", static_cast<std::int64_t>(args.seed)));
    args.no_shuffle = !file.get_bool_or("shuffle", !args.no_shuffle);
  }
  gw::Dataset data = gw::Dataset::read_file(args.data);
  gw::WitnessTestSpec spec;
  spec.property = gw::property_from_name(args.property);
  spec.m = args.m;
  spec.s0 = args.s0;
  spec.s = args.s;
  spec.mu = args.mu;
  spec.alpha = args.alpha;
  spec.lambda = args.lambda > 0.0 ? gw::LambdaPolicy::fixed(args.lambda)
                                  : gw::LambdaPolicy::scaled(args.lambda_scale);
  spec.clime.threads = args.threads;
  spec.bootstrap.replications = args.bootstrap;
  spec.bootstrap.seed = gw::derive_seed(args.seed, 3);
  spec.bootstrap.threads = args.threads;
  spec.shuffle = !args.no_shuffle;
  spec.split_seed = gw::derive_seed(args.seed, 4);
  auto outcome = gw::run_witness_test(data, spec);
  std::cout << outcome.to_record().to_text();
  return kExitOk;
}

// ---- lowerbound -------------------------------------------------------------------

struct LowerboundArgs {
  std::string family = "cycle";
  int d = 100;
  int n = 400;
  double theta = 0.05;
  double class_c = 2.0;
  double class_l = 3.0;
  double kappa = 1.0;
  int m = 0;
  int s0 = 0;
  int s1 = 0;
  int s = 0;
  std::string setting = "s1";
  std::uint64_t seed = 17;
};

int run_lowerbound(const LowerboundArgs& args) {
  gw::FamilyParams params;
  params.m = args.m;
  params.s0 = args.s0;
  params.s1 = args.s1;
  params.s = args.s;
  auto family = gw::build_family(gw::family_from_name(args.family), args.d, params);
  const auto& divider = family.divider;

  gw::Record record;
  record.set("record", "graphwise.lowerbound");
  record.set("family", gw::family_name(family.kind));
  record.set("d", args.d);
  record.set("n", args.n);
  record.set("theta", args.theta);
  record.set("mode", divider.mode == gw::DividerMode::add ? "add" : "delete");
  record.set("divider_size", divider.size());

  if (divider.is_explicit()) {
    auto packing = gw::packing_entropy(divider, std::log(static_cast<double>(divider.size())));
    record.set("packing_entropy", packing.entropy);
    record.set("packing_cardinality", static_cast<std::int64_t>(packing.packing.size()));
    record.set("packing_exact", packing.exact);
  }

  gw::ModelClassParams class_params{1, args.class_c, args.class_l};
  if (divider.single_edge()) {
    record.set("chi2_bound",
               gw::single_edge_chi2_bound(divider, args.theta, args.n, args.class_c));
  } else {
    gw::DividerStatsOptions opts;
    opts.seed = args.seed;
    auto stats = gw::divider_stats(divider, opts);
    record.set("stat_U", stats.max_set_size);
    record.set("stat_Gamma", stats.gamma);
    record.set("stat_Lambda", stats.lambda);
    record.set("stat_R", stats.edge_node_ratio);
    record.set("stat_B", stats.b_stat);
    record.set("stats_exact", stats.exact);
    auto buffer = gw::buffer_entropy(divider, {args.seed, 64, 4096});
    record.set("buffer_mean", buffer.worst_mean);
    record.set("buffer_entropy", buffer.infinite ? std::string("inf")
                                                 : gw::format_double(buffer.entropy));
    record.set("buffer_exact", buffer.exact);
    if (!buffer.exact) record.set("buffer_se", buffer.std_error);
    if (divider.is_explicit() && divider.size() <= 512) {
      auto setting = args.setting == "s2" ? gw::ChiSquareSetting::s2 : gw::ChiSquareSetting::s1;
      record.set("chi2_bound",
                 gw::multi_edge_chi2_bound(divider, args.theta, args.n, setting, args.class_c));
      record.set("chi2_setting", args.setting);
    }
  }

  gw::DividerStatsOptions opts;
  opts.seed = args.seed;
  auto report = gw::threshold_report(divider, args.n, class_params, args.kappa, opts);
  for (const auto& entry : report.entries) {
    record.set("threshold[" + entry.rule + "]", entry.threshold);
    record.set("binding[" + entry.rule + "]", entry.binding);
    for (const auto& term : entry.terms) {
      record.set("term[" + entry.rule + "." + term.name + "]", term.value);
    }
  }
  std::cout << record.to_text();
  return kExitOk;
}

// ---- simulate --------------------------------------------------------------------

struct SimulateArgs {
  std::string property = "connectivity";
  std::string profile = "desk";
  std::string config;
  std::string theta_grid;
  int n = 0;
  int d = 0;
  int reps = 0;
  int bootstrap = 0;
  double alpha = 0.05;
  double lambda = 0.0;
  double lambda_scale = 0.0;
  int m = 0;
  int s0 = 0;
  int s1 = 0;
  std::string scenarios = "both";
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out;
  std::string format = "csv";
};

int run_simulate(const SimulateArgs& args) {
  gw::GraphProperty property = gw::property_from_name(args.property);
  gw::SimulationConfig cfg =
      args.profile == "paper" ? gw::paper_profile(property) : gw::desk_profile(property);
  if (args.profile != "paper" && args.profile != "desk") {
    throw gw::ConfigError("profile must be desk or paper");
  }
  if (!args.config.empty()) {
    auto file = gw::Record::parse_file(args.config);
    cfg.n = static_cast<int>(file.get_int_or("n", cfg.n));
    cfg.d = static_cast<int>(file.get_int_or("d", cfg.d));
    cfg.repetitions = static_cast<int>(file.get_int_or("reps", cfg.repetitions));
    cfg.bootstrap.replications =
        static_cast<int>(file.get_int_or("bootstrap", cfg.bootstrap.replications));
    cfg.bootstrap.alpha = file.get_double_or("alpha", cfg.bootstrap.alpha);
    cfg.property_m = static_cast<int>(file.get_int_or("m", cfg.property_m));
    cfg.property_s0 = static_cast<int>(file.get_int_or("s0", cfg.property_s0));
    cfg.property_s1 = static_cast<int>(file.get_int_or("s1", cfg.property_s1));
    cfg.null_generator = file.get_string_or("null_generator", cfg.null_generator);
    cfg.alt_generator = file.get_string_or("alt_generator", cfg.alt_generator);
    if (file.has("lambda")) cfg.lambda = gw::LambdaPolicy::fixed(file.get_double("lambda"));
    if (file.has("lambda_scale")) {
      cfg.lambda = gw::LambdaPolicy::scaled(file.get_double("lambda_scale"));
    }
    if (file.has("theta_grid")) {
      cfg.theta_grid.clear();
      std::stringstream ss(file.get_string("theta_grid"));
      std::string cell;
      while (std::getline(ss, cell, ',')) cfg.theta_grid.push_back(std::stod(cell));
    }
    cfg.shuffle_split = file.get_bool_or("shuffle", cfg.shuffle_split);
  }
  if (args.n > 0) cfg.n = args.n;
  if (args.d > 0) cfg.d = args.d;
  if (args.reps > 0) cfg.repetitions = args.reps;
  if (args.bootstrap > 0) cfg.bootstrap.replications = args.bootstrap;
  cfg.bootstrap.alpha = args.alpha;
  if (args.lambda > 0.0) cfg.lambda = gw::LambdaPolicy::fixed(args.lambda);
  if (args.lambda_scale > 0.0) cfg.lambda = gw::LambdaPolicy::scaled(args.lambda_scale);
  if (args.m > 0) cfg.property_m = args.m;
  if (args.s0 > 0) cfg.property_s0 = args.s0;
  if (args.s1 > 0) cfg.property_s1 = args.s1;
  if (!args.theta_grid.empty()) {
    cfg.theta_grid.clear();
    std::stringstream ss(args.theta_grid);
    std::string cell;
    while (std::getline(ss, cell, ',')) cfg.theta_grid.push_back(std::stod(cell));
  }
  if (args.scenarios == "null") {
    cfg.alt_generator = "none";
  } else if (args.scenarios == "alt") {
    cfg.null_generator = "none";
  } else if (args.scenarios != "both") {
    throw gw::ConfigError("scenarios must be both, null or alt");
  }
  cfg.seed = args.seed;
  cfg.threads = args.threads;

  auto result = gw::run_simulation(cfg);
  double failure_share = 0.0;
  int total = 0, failed = 0;
  for (const auto& row : result.rows) {
    total += row.null_reps + row.alt_reps;
    failed += row.null_failures + row.alt_failures;
  }
  if (total > 0) failure_share = static_cast<double>(failed) / total;

  std::ostringstream body;
  if (args.format == "csv") {
    gw::emit_csv(result, body);
  } else if (args.format == "records") {
    gw::emit_records(result, body);
  } else {
    throw gw::ConfigError("format must be csv or records");
  }
  if (args.out.empty()) {
    std::cout << body.str();
  } else {
    auto out = open_output(args.out);
    out << body.str();
    std::cerr << "wrote " << result.rows.size() << " rows to " << args.out << " in "
              << gw::format_double(result.wall_seconds, 4) << "s\n";
  }
  if (failure_share > 0.0) {
    std::cerr << "warning: " << failed << "/" << total << " repetitions failed\n";
    for (const auto& row : result.rows) {
      for (const auto& msg : row.failures) std::cerr << "  " << msg << "\n";
    }
  }
  return failure_share > 0.01 ? kExitNumerical : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"combinatorial structure tests and information bounds for Gaussian graphical models"};
  app.require_subcommand(1);

  SampleArgs sample_args;
  auto* sample_cmd = app.add_subcommand("sample", "draw Gaussian samples from a named model");
  sample_cmd->add_option("--model", sample_args.model, "identity|chain|two-chains|chain-chord");
  sample_cmd->add_option("--d", sample_args.d, "dimension");
  sample_cmd->add_option("--n", sample_args.n, "sample count");
  sample_cmd->add_option("--theta", sample_args.theta, "signal strength");
  sample_cmd->add_option("--split-m", sample_args.split_m, "two-chains split point");
  sample_cmd->add_option("--chord-m", sample_args.chord_m, "chain-chord endpoint");
  sample_cmd->add_option("--seed", sample_args.seed, "rng seed");
  sample_cmd->add_option("--out", sample_args.out, "output path")->required();
  sample_cmd->add_option("--format", sample_args.format, "csv|bin");

  EstimateArgs estimate_args;
  auto* estimate_cmd = app.add_subcommand("estimate", "constrained l1 precision estimate");
  estimate_cmd->add_option("--data", estimate_args.data, "dataset path")->required();
  estimate_cmd->add_option("--lambda", estimate_args.lambda, "fixed constraint radius");
  estimate_cmd->add_option("--lambda-scale", estimate_args.lambda_scale,
                           "lambda = scale * sqrt(log d / n)");
  estimate_cmd->add_flag("--cv", estimate_args.cv, "pick lambda by cross validation");
  estimate_cmd->add_option("--folds", estimate_args.folds, "cross validation folds");
  estimate_cmd->add_option("--tol", estimate_args.tolerance, "solver tolerance");
  estimate_cmd->add_option("--max-iter", estimate_args.max_iterations, "solver iteration cap");
  estimate_cmd->add_option("--seed", estimate_args.seed, "rng seed");
  estimate_cmd->add_option("--threads", estimate_args.threads, "parallel column solves");
  estimate_cmd->add_option("--out", estimate_args.out, "matrix output path");
  estimate_cmd->add_option("--format", estimate_args.format, "csv|bin");

  TestArgs test_args;
  auto* test_cmd = app.add_subcommand("test", "alternative witness test on a dataset");
  test_cmd->add_option("--property", test_args.property,
                       "connectivity|components|cycle|triangle|sap|max-degree|clique|connectivity-at-level");
  test_cmd->add_option("--data", test_args.data, "dataset path")->required();
  test_cmd->add_option("--alpha", test_args.alpha, "significance level");
  test_cmd->add_option("--mu", test_args.mu, "signal level for connectivity-at-level");
  test_cmd->add_option("--m", test_args.m, "component count / path length");
  test_cmd->add_option("--s0", test_args.s0, "null degree bound");
  test_cmd->add_option("--s", test_args.s, "clique size");
  test_cmd->add_option("--lambda", test_args.lambda, "fixed constraint radius");
  test_cmd->add_option("--lambda-scale", test_args.lambda_scale,
                       "lambda = scale * sqrt(log d / rows)");
  test_cmd->add_option("--B", test_args.bootstrap, "bootstrap replications");
  test_cmd->add_option("--seed", test_args.seed, "rng seed");
  test_cmd->add_option("--threads", test_args.threads, "worker threads");
  test_cmd->add_flag("--no-shuffle", test_args.no_shuffle, "split sequentially, no pre-shuffle");
  test_cmd->add_option("--config", test_args.config, "key-value config file");

  LowerboundArgs lowerbound_args;
  auto* lowerbound_cmd =
      app.add_subcommand("lowerbound", "divider entropies and chi-square risk bounds");
  lowerbound_cmd->add_option("--family", lowerbound_args.family,
                             "connectivity|components|cycle|triangle|sap|components-delete|"
                             "sap-delete|max-degree-bounded|max-degree-split|clique|cycle-detection");
  lowerbound_cmd->add_option("--d", lowerbound_args.d, "dimension");
  lowerbound_cmd->add_option("--n", lowerbound_args.n, "sample count");
  lowerbound_cmd->add_option("--theta", lowerbound_args.theta, "signal strength");
  lowerbound_cmd->add_option("--C", lowerbound_args.class_c, "class spectral bound");
  lowerbound_cmd->add_option("--L", lowerbound_args.class_l, "class l1 bound");
  lowerbound_cmd->add_option("--kappa", lowerbound_args.kappa, "entropy term scale");
  lowerbound_cmd->add_option("--m", lowerbound_args.m, "family parameter m");
  lowerbound_cmd->add_option("--s0", lowerbound_args.s0, "family parameter s0");
  lowerbound_cmd->add_option("--s1", lowerbound_args.s1, "family parameter s1");
  lowerbound_cmd->add_option("--s", lowerbound_args.s, "family parameter s");
  lowerbound_cmd->add_option("--setting", lowerbound_args.setting, "s1|s2 multi-edge constants");
  lowerbound_cmd->add_option("--seed", lowerbound_args.seed, "sampling seed");

  SimulateArgs simulate_args;
  auto* simulate_cmd = app.add_subcommand("simulate", "size/power sweep over a theta grid");
  simulate_cmd->add_option("--property", simulate_args.property, "tested property");
  simulate_cmd->add_option("--profile", simulate_args.profile, "desk|paper");
  simulate_cmd->add_option("--config", simulate_args.config, "key-value config file");
  simulate_cmd->add_option("--theta-grid", simulate_args.theta_grid, "comma separated thetas");
  simulate_cmd->add_option("--n", simulate_args.n, "sample count");
  simulate_cmd->add_option("--d", simulate_args.d, "dimension");
  simulate_cmd->add_option("--reps", simulate_args.reps, "repetitions per scenario");
  simulate_cmd->add_option("--B", simulate_args.bootstrap, "bootstrap replications");
  simulate_cmd->add_option("--alpha", simulate_args.alpha, "significance level");
  simulate_cmd->add_option("--lambda", simulate_args.lambda, "fixed constraint radius");
  simulate_cmd->add_option("--lambda-scale", simulate_args.lambda_scale,
                           "lambda = scale * sqrt(log d / rows)");
  simulate_cmd->add_option("--m", simulate_args.m, "component count / path length");
  simulate_cmd->add_option("--s0", simulate_args.s0, "null degree bound");
  simulate_cmd->add_option("--s1", simulate_args.s1, "alternative degree bound");
  simulate_cmd->add_option("--scenarios", simulate_args.scenarios, "both|null|alt");
  simulate_cmd->add_option("--seed", simulate_args.seed, "experiment seed");
  simulate_cmd->add_option("--threads", simulate_args.threads, "worker threads");
  simulate_cmd->add_option("--out", simulate_args.out, "output path (stdout when omitted)");
  simulate_cmd->add_option("--format", simulate_args.format, "csv|records");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sample_cmd) return run_sample(sample_args);
    if (*estimate_cmd) return run_estimate(estimate_args);
    if (*test_cmd) return run_test(test_args);
    if (*lowerbound_cmd) return run_lowerbound(lowerbound_args);
    if (*simulate_cmd) return run_simulate(simulate_args);
  } catch (const gw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const gw::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}

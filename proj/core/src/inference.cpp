#include "graphwise/inference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "graphwise/errors.hpp"
#include "graphwise/parallel.hpp"
#include "graphwise/rng.hpp"

namespace graphwise {

void validate(const BootstrapConfig& cfg) {
  if (cfg.replications < 100) throw ConfigError("bootstrap needs at least 100 replications");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
}

std::string format_edges(const EdgeSet& edges) {
  std::ostringstream out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i > 0) out << " ";
    out << edges[i].a << "-" << edges[i].b;
  }
  return out.str();
}

EdgeSet parse_edges(const std::string& text) {
  EdgeSet edges;
  std::stringstream ss(text);
  std::string token;
  while (ss >> token) {
    auto dash = token.find('-');
    if (dash == std::string::npos) throw ConfigError("bad edge token '" + token + "'");
    edges.push_back(make_edge(std::stoi(token.substr(0, dash)), std::stoi(token.substr(dash + 1))));
  }
  return make_edge_set(std::move(edges));
}

Record TestOutcome::to_record() const {
  Record r;
  r.set("record", "graphwise.test.outcome");
  r.set("property", property);
  r.set("reject", reject);
  r.set("alpha", alpha);
  r.set("mu", mu);
  r.set("witness", format_edges(witness));
  r.set("rejected", format_edges(rejected_edges));
  r.set("rounds", static_cast<std::int64_t>(round_quantiles.size()));
  std::ostringstream quantiles;
  for (std::size_t i = 0; i < round_quantiles.size(); ++i) {
    if (i > 0) quantiles << " ";
    quantiles << format_double(round_quantiles[i]);
  }
  r.set("quantiles", quantiles.str());
  std::ostringstream stats;
  for (std::size_t i = 0; i < edge_statistics.size(); ++i) {
    if (i > 0) stats << " ";
    stats << format_double(edge_statistics[i]);
  }
  r.set("edge_statistics", stats.str());
  for (const auto& [k, v] : extras.items()) r.set(k, v);
  return r;
}

Eigen::MatrixXd bootstrap_statistics(const Dataset& x, const PrecisionEstimate& est,
                                     const EdgeSet& edges, const BootstrapConfig& cfg) {
  validate(cfg);
  if (edges.empty()) throw ConfigError("bootstrap needs a nonempty edge set");
  const int n = x.n();
  const int d = x.dim();
  if (est.matrix.rows() != d) throw ConfigError("estimate dimension does not match data");
  for (const auto& e : edges) {
    if (e.b > d) throw ConfigError("edge endpoint exceeds data dimension");
  }
  const int m = static_cast<int>(edges.size());

  // vertices touched by the edge set; y columns hold X theta_{*v}
  std::vector<int> vertices = vertex_support(edges);
  std::vector<int> slot(static_cast<std::size_t>(d) + 1, -1);
  Eigen::MatrixXd theta_cols(d, static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    slot[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i);
    theta_cols.col(static_cast<int>(i)) = est.matrix.col(vertices[i] - 1);
  }
  Eigen::MatrixXd y = x.rows() * theta_cols;  // n x |vertices|

  // centered per-observation products, one column per edge
  Eigen::MatrixXd centered(n, m);
  for (int c = 0; c < m; ++c) {
    const auto& e = edges[static_cast<std::size_t>(c)];
    double center = est.matrix(e.a - 1, e.b - 1);
    centered.col(c) = y.col(slot[static_cast<std::size_t>(e.a)]).array() *
                          y.col(slot[static_cast<std::size_t>(e.b)]).array() -
                      center;
  }

  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::MatrixXd stats(cfg.replications, m);
  parallel_for(static_cast<std::size_t>(cfg.replications), cfg.threads, [&](std::size_t b) {
    Rng rng(derive_seed(cfg.seed, b));
    Eigen::VectorXd zeta(n);
    for (int i = 0; i < n; ++i) zeta(i) = rng.normal();
    stats.row(static_cast<int>(b)) = scale * (zeta.transpose() * centered);
  });
  return stats;
}

double bootstrap_quantile(const Eigen::MatrixXd& stats, const std::vector<int>& subset,
                          double alpha) {
  if (subset.empty()) throw ConfigError("bootstrap quantile needs a nonempty subset");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  const int b = static_cast<int>(stats.rows());
  std::vector<double> maxima(static_cast<std::size_t>(b), 0.0);
  for (int r = 0; r < b; ++r) {
    double m = 0.0;
    for (int c : subset) {
      if (c < 0 || c >= stats.cols()) throw ConfigError("subset column out of range");
      m = std::max(m, std::abs(stats(r, c)));
    }
    maxima[static_cast<std::size_t>(r)] = m;
  }
  std::sort(maxima.begin(), maxima.end());
  // order statistic at ceil((1-alpha) B); snapped so 0.95 * B lands exactly
  int rank = static_cast<int>(std::ceil((1.0 - alpha) * b - 1e-9));
  rank = std::clamp(rank, 1, b);
  return maxima[static_cast<std::size_t>(rank - 1)];
}

StepDownTrace step_down_rounds(const Eigen::MatrixXd& stats,
                               const std::vector<double>& scaled_statistics, double alpha,
                               double scaled_mu) {
  if (static_cast<int>(scaled_statistics.size()) != stats.cols()) {
    throw ConfigError("statistic count does not match bootstrap columns");
  }
  StepDownTrace trace;
  std::vector<int> surviving(scaled_statistics.size());
  for (std::size_t i = 0; i < surviving.size(); ++i) surviving[i] = static_cast<int>(i);
  while (!surviving.empty()) {
    double quantile = bootstrap_quantile(stats, surviving, alpha);
    trace.round_quantiles.push_back(quantile);
    std::vector<int> keep, reject;
    for (int c : surviving) {
      if (std::abs(scaled_statistics[static_cast<std::size_t>(c)]) >= scaled_mu + quantile) {
        reject.push_back(c);
      } else {
        keep.push_back(c);
      }
    }
    if (reject.empty()) break;
    for (int c : reject) trace.rejected.push_back(c);
    surviving = std::move(keep);
  }
  return trace;
}

TestOutcome step_down(const Dataset& x, const PrecisionEstimate& est, const EdgeSet& edges,
                      const BootstrapConfig& cfg, double mu) {
  if (edges.empty()) throw ConfigError("step-down needs a nonempty edge set");
  if (mu < 0.0) throw ConfigError("threshold mu must be nonnegative");
  const double sqrt_n = std::sqrt(static_cast<double>(x.n()));
  Eigen::MatrixXd sigma = empirical_covariance(x);

  std::vector<double> scaled(edges.size(), 0.0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    scaled[i] = sqrt_n * debias(sigma, est, edges[i].a, edges[i].b);
  }
  Eigen::MatrixXd stats = bootstrap_statistics(x, est, edges, cfg);
  // The bias-corrected statistic carries the denominator theta_j' sigma_j,
  // which sits below one for any l1-shrunken estimate. The quantile reference
  // must carry the same factor, or every threshold is deflated by roughly
  // one minus lambda and the family-wise error rate drifts above alpha.
  for (std::size_t i = 0; i < edges.size(); ++i) {
    double gamma = est.matrix.col(edges[i].a - 1).dot(sigma.col(edges[i].a - 1));
    stats.col(static_cast<int>(i)) /= gamma;
  }
  auto trace = step_down_rounds(stats, scaled, cfg.alpha, sqrt_n * mu);

  TestOutcome outcome;
  outcome.witness = edges;
  outcome.alpha = cfg.alpha;
  outcome.mu = mu;
  outcome.edge_statistics = scaled;
  outcome.round_quantiles = trace.round_quantiles;
  for (int c : trace.rejected) outcome.rejected_edges.push_back(edges[static_cast<std::size_t>(c)]);
  outcome.rejected_edges = make_edge_set(std::move(outcome.rejected_edges));
  outcome.reject = outcome.rejected_edges == outcome.witness;
  return outcome;
}

}  // namespace graphwise

#include "graphwise/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "graphwise/errors.hpp"
#include "graphwise/record.hpp"

namespace graphwise {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---- vertex masks ----

using Mask = std::vector<std::uint64_t>;

Mask make_mask(int d) { return Mask(static_cast<std::size_t>(d + 64) / 64, 0); }

void mask_set(Mask& m, int v) { m[static_cast<std::size_t>(v - 1) / 64] |= 1ull << ((v - 1) % 64); }

Mask support_mask(int d, const EdgeSet& set) {
  Mask m = make_mask(d);
  for (const auto& e : set) {
    mask_set(m, e.a);
    mask_set(m, e.b);
  }
  return m;
}

int buffer_size(const Mask& base, const Mask& s, const Mask& t) {
  int total = 0;
  for (std::size_t w = 0; w < base.size(); ++w) {
    std::uint64_t left = (base[w] | s[w]) & t[w];
    std::uint64_t right = (base[w] | t[w]) & s[w];
    total += __builtin_popcountll(left | right);
  }
  return total;
}

int intersection_size(const EdgeSet& a, const EdgeSet& b) {
  return static_cast<int>(edge_set_intersection(a, b).size());
}

// ---- norms on the active submatrix ----

double spectral_norm_active(const Graph& base, const EdgeSet* s, const EdgeSet* t,
                            bool include_base) {
  std::vector<int> active;
  if (include_base) {
    auto bs = vertex_support(base.edges());
    active.insert(active.end(), bs.begin(), bs.end());
  }
  if (s) {
    auto vs = vertex_support(*s);
    active.insert(active.end(), vs.begin(), vs.end());
  }
  if (t) {
    auto vt = vertex_support(*t);
    active.insert(active.end(), vt.begin(), vt.end());
  }
  std::sort(active.begin(), active.end());
  active.erase(std::unique(active.begin(), active.end()), active.end());
  if (active.empty()) return 0.0;
  std::vector<int> slot(static_cast<std::size_t>(base.vertex_count()) + 1, -1);
  for (std::size_t i = 0; i < active.size(); ++i) slot[static_cast<std::size_t>(active[i])] = static_cast<int>(i);
  int k = static_cast<int>(active.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, k);
  auto add_edges = [&](const EdgeSet& edges) {
    for (const auto& e : edges) {
      int i = slot[static_cast<std::size_t>(e.a)];
      int j = slot[static_cast<std::size_t>(e.b)];
      a(i, j) += 1.0;
      a(j, i) += 1.0;
    }
  };
  if (include_base) add_edges(base.edges());
  if (s) add_edges(*s);
  if (t) add_edges(*t);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue solve failed on A_{S,S'}");
  return std::max(std::abs(solver.eigenvalues().minCoeff()),
                  std::abs(solver.eigenvalues().maxCoeff()));
}

// max column absolute sum of A0 + A_S + A_S'
double one_norm_pair(const Graph& base, const EdgeSet& s, const EdgeSet& t) {
  std::vector<int> degree(static_cast<std::size_t>(base.vertex_count()) + 1, 0);
  for (const auto& e : base.edges()) {
    ++degree[static_cast<std::size_t>(e.a)];
    ++degree[static_cast<std::size_t>(e.b)];
  }
  for (const auto& e : s) {
    ++degree[static_cast<std::size_t>(e.a)];
    ++degree[static_cast<std::size_t>(e.b)];
  }
  for (const auto& e : t) {
    ++degree[static_cast<std::size_t>(e.a)];
    ++degree[static_cast<std::size_t>(e.b)];
  }
  return static_cast<double>(*std::max_element(degree.begin(), degree.end()));
}

void require_explicit(const Divider& c, const char* op) {
  if (!c.is_explicit()) {
    throw ConfigError(std::string(op) + " needs an explicit divider; this one is implicit (" +
                      c.implicit->describe() + ")");
  }
}

std::vector<Distance> pairwise_predistances(const Divider& c) {
  // upper-triangular pair distances, flattened; singleton sets reuse the
  // single-pair definition through the set form
  const auto& sets = c.sets;
  std::size_t count = sets.size();
  std::vector<Distance> out;
  out.reserve(count * (count + 1) / 2);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i; j < count; ++j) {
      out.push_back(edgeset_predistance(c.base, sets[i], sets[j]));
    }
  }
  return out;
}

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t count) {
  if (i > j) std::swap(i, j);
  return i * count - i * (i + 1) / 2 + j;
}

// ---- maximum independent set, exact branch and bound ----

struct MisSolver {
  const std::vector<std::vector<bool>>& conflict;
  std::vector<std::size_t> best;

  void search(std::vector<std::size_t>& chosen, const std::vector<std::size_t>& candidates) {
    if (chosen.size() + candidates.size() <= best.size()) return;
    if (candidates.empty()) {
      if (chosen.size() > best.size()) best = chosen;
      return;
    }
    auto v = candidates.front();
    // branch: take v
    std::vector<std::size_t> rest;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      if (!conflict[v][candidates[i]]) rest.push_back(candidates[i]);
    }
    chosen.push_back(v);
    search(chosen, rest);
    chosen.pop_back();
    // branch: skip v
    rest.assign(candidates.begin() + 1, candidates.end());
    search(chosen, rest);
  }
};

}  // namespace

PackingResult packing_entropy(const Divider& c, double radius) {
  require_explicit(c, "packing entropy");
  if (c.sets.empty()) throw ConfigError("packing entropy of an empty divider is undefined");
  const std::size_t count = c.sets.size();
  auto dist = pairwise_predistances(c);

  std::vector<std::vector<bool>> conflict(count, std::vector<bool>(count, false));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      bool ok = dist[pair_index(i, j, count)] >= radius;
      conflict[i][j] = conflict[j][i] = !ok;
    }
  }

  PackingResult result;
  if (count <= 20) {
    // order candidates by conflict degree, most constrained first
    std::vector<std::size_t> order(count);
    for (std::size_t i = 0; i < count; ++i) order[i] = i;
    std::vector<int> deg(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = 0; j < count; ++j) deg[i] += conflict[i][j] ? 1 : 0;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
    MisSolver solver{conflict, {}};
    std::vector<std::size_t> chosen;
    solver.search(chosen, order);
    result.packing = solver.best;
    result.exact = true;
  } else {
    // greedy maximal packing in input order; a valid packing and a lower
    // bound on the exact entropy
    for (std::size_t i = 0; i < count; ++i) {
      bool ok = true;
      for (auto j : result.packing) {
        if (conflict[i][j]) {
          ok = false;
          break;
        }
      }
      if (ok) result.packing.push_back(i);
    }
    result.exact = false;
  }
  std::sort(result.packing.begin(), result.packing.end());
  result.entropy = std::log(static_cast<double>(result.packing.size()));
  return result;
}

double buffer_mean_exact(const Divider& c, const EdgeSet& s) {
  require_explicit(c, "exact buffer mean");
  const Graph& ref = c.buffer_graph();
  Mask base = support_mask(ref.vertex_count(), ref.edges());
  Mask ms = support_mask(ref.vertex_count(), s);
  std::int64_t total = 0;
  for (const auto& t : c.sets) {
    Mask mt = support_mask(ref.vertex_count(), t);
    total += buffer_size(base, ms, mt);
  }
  return static_cast<double>(total) / static_cast<double>(c.sets.size());
}

double buffer_mean_mc(const Divider& c, const EdgeSet& s, int draws, std::uint64_t seed,
                      double* std_error) {
  if (draws < 2) throw ConfigError("buffer Monte Carlo needs at least 2 draws");
  const Graph& ref = c.buffer_graph();
  Mask base = support_mask(ref.vertex_count(), ref.edges());
  Mask ms = support_mask(ref.vertex_count(), s);
  Rng rng(derive_seed(seed, 0xbfu));
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    EdgeSet t = c.is_explicit()
                    ? c.sets[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(c.sets.size()) - 1))]
                    : c.implicit->sample(rng);
    Mask mt = support_mask(ref.vertex_count(), t);
    double v = buffer_size(base, ms, mt);
    sum += v;
    sum_sq += v * v;
  }
  double mean = sum / draws;
  if (std_error) {
    double variance = std::max(0.0, (sum_sq - draws * mean * mean) / (draws - 1));
    *std_error = std::sqrt(variance / draws);
  }
  return mean;
}

BufferEntropyResult buffer_entropy(const Divider& c, const BufferMcOptions& mc) {
  BufferEntropyResult result;
  if (c.is_explicit() && c.sets.empty()) throw ConfigError("buffer entropy of an empty divider");
  if (c.is_explicit() && c.sets.size() <= 10000) {
    const Graph& ref = c.buffer_graph();
    Mask base = support_mask(ref.vertex_count(), ref.edges());
    std::vector<Mask> masks;
    masks.reserve(c.sets.size());
    for (const auto& s : c.sets) masks.push_back(support_mask(ref.vertex_count(), s));
    double worst = 0.0;
    for (std::size_t i = 0; i < masks.size(); ++i) {
      std::int64_t total = 0;
      for (std::size_t j = 0; j < masks.size(); ++j) {
        total += buffer_size(base, masks[i], masks[j]);
      }
      worst = std::max(worst, static_cast<double>(total) / static_cast<double>(masks.size()));
    }
    result.worst_mean = worst;
    result.exact = true;
  } else {
    Rng rng(derive_seed(mc.seed, 0xebu));
    int candidates = c.is_explicit()
                         ? static_cast<int>(std::min<std::uint64_t>(mc.sampled_sets, c.sets.size()))
                         : mc.sampled_sets;
    double worst = -1.0, worst_se = 0.0;
    for (int i = 0; i < candidates; ++i) {
      EdgeSet s = c.is_explicit()
                      ? c.sets[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(c.sets.size()) - 1))]
                      : c.implicit->sample(rng);
      double se = 0.0;
      double mean = buffer_mean_mc(c, s, mc.draws_per_set, derive_seed(mc.seed, 0xca11, i), &se);
      if (mean > worst) {
        worst = mean;
        worst_se = se;
      }
    }
    result.worst_mean = worst;
    result.std_error = worst_se;
    result.exact = false;
  }
  if (result.worst_mean <= 0.0) {
    result.infinite = true;
    result.entropy = kInf;
  } else {
    result.entropy = -std::log(result.worst_mean);
  }
  return result;
}

DividerStats divider_stats(const Divider& c, const DividerStatsOptions& opts) {
  DividerStats stats;
  const Graph& buffer_ref = c.buffer_graph();
  Mask base_mask = support_mask(buffer_ref.vertex_count(), buffer_ref.edges());

  auto consider_pair = [&](const EdgeSet& s, const EdgeSet& t) {
    stats.max_set_size = std::max({stats.max_set_size, static_cast<int>(s.size()),
                                   static_cast<int>(t.size())});
    stats.gamma = std::max(stats.gamma, one_norm_pair(c.base, s, t));
    stats.lambda = std::max(stats.lambda, spectral_norm_active(c.base, &s, &t, true));
    Mask ms = support_mask(buffer_ref.vertex_count(), s);
    Mask mt = support_mask(buffer_ref.vertex_count(), t);
    int buffer = buffer_size(base_mask, ms, mt);
    if (buffer > 0) {
      stats.edge_node_ratio = std::max(
          stats.edge_node_ratio, static_cast<double>(intersection_size(s, t)) / buffer);
    }
    return buffer;
  };

  double max_buffer = 0.0;
  if (c.is_explicit() && c.sets.size() <= opts.exact_pair_cap) {
    for (std::size_t i = 0; i < c.sets.size(); ++i) {
      for (std::size_t j = i; j < c.sets.size(); ++j) {
        max_buffer = std::max(max_buffer,
                              static_cast<double>(consider_pair(c.sets[i], c.sets[j])));
      }
    }
    stats.exact = true;
  } else {
    Rng rng(derive_seed(opts.seed, 0x57a7u));
    auto draw = [&]() {
      return c.is_explicit()
                 ? c.sets[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(c.sets.size()) - 1))]
                 : c.implicit->sample(rng);
    };
    for (int i = 0; i < opts.sampled_self_pairs; ++i) {
      EdgeSet s = draw();
      max_buffer = std::max(max_buffer, static_cast<double>(consider_pair(s, s)));
    }
    for (int i = 0; i < opts.sampled_pairs; ++i) {
      EdgeSet s = draw();
      EdgeSet t = draw();
      max_buffer = std::max(max_buffer, static_cast<double>(consider_pair(s, t)));
    }
    stats.exact = false;
  }
  stats.b_stat = std::min(std::pow(stats.lambda, 4.0), stats.gamma * stats.gamma * max_buffer);

  BufferMcOptions mc = opts.buffer;
  mc.seed = derive_seed(opts.seed, 0xb0ffu);
  stats.buffer_mean_worst = buffer_entropy(c, mc).worst_mean;
  return stats;
}

double single_edge_chi2_bound(const Divider& c, double theta, int n, double class_c) {
  require_explicit(c, "single-edge chi-square bound");
  if (!c.single_edge()) throw ConfigError("this bound needs a single-edge divider");
  if (n < 1) throw ConfigError("sample count must be positive");
  if (class_c <= 1.0) throw ConfigError("class constant C must exceed 1");
  if (theta < 0.0) throw ConfigError("theta must be nonnegative");
  if (c.sets.size() > 4000) throw ConfigError("pair sum capped at 4000 divider edges");

  double base_one_norm = static_cast<double>(c.base.max_degree());
  double base_two_norm = spectral_norm_active(c.base, nullptr, nullptr, true);
  double cap = (1.0 - 1.0 / class_c) / (std::numbers::sqrt2 * (base_one_norm + 2.0));
  if (theta > cap) {
    throw ConfigError("theta " + format_double(theta, 6) + " violates the precondition <= " +
                      format_double(cap, 6));
  }
  double r = std::numbers::sqrt2 * (base_two_norm + 2.0);

  const std::size_t count = c.sets.size();
  auto dist = pairwise_predistances(c);
  long double total = 0.0L;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i; j < count; ++j) {
      double weight = i == j ? 1.0 : 2.0;  // ordered pairs
      const auto& d_ij = dist[pair_index(i, j, count)];
      long double term = 1.0L;  // unreachable pairs contribute exp(0)
      if (!d_ij.is_infinite()) {
        auto hops = static_cast<double>(d_ij.value());
        double exponent =
            n * std::pow(r * theta, 2.0 * hops + 2.0) / (hops + 1.0);
        term = std::exp(static_cast<long double>(exponent));
      }
      total += weight * term;
    }
  }
  long double mean = total / static_cast<long double>(count) / static_cast<long double>(count);
  long double excess = mean - 1.0L;
  if (excess < 0.0L) excess = 0.0L;
  double bound = 1.0 - 0.5 * static_cast<double>(sqrtl(excess));
  return std::isfinite(bound) ? bound : -kInf;
}

double multi_edge_chi2_bound(const Divider& c, double theta, int n, ChiSquareSetting setting,
                             double class_c) {
  require_explicit(c, "multi-edge chi-square bound");
  if (c.sets.empty()) throw ConfigError("empty divider");
  if (n < 1) throw ConfigError("sample count must be positive");
  if (class_c <= 1.0) throw ConfigError("class constant C must exceed 1");
  if (theta < 0.0) throw ConfigError("theta must be nonnegative");
  if (c.sets.size() > 512) {
    throw ConfigError("multi-edge pair sum capped at 512 divider sets");
  }

  const std::size_t count = c.sets.size();
  const Graph& buffer_ref = c.buffer_graph();
  Mask base_mask = support_mask(buffer_ref.vertex_count(), buffer_ref.edges());
  std::vector<Mask> masks;
  std::vector<double> set_two_norm(count);
  masks.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    masks.push_back(support_mask(buffer_ref.vertex_count(), c.sets[i]));
    set_two_norm[i] = spectral_norm_active(c.base, &c.sets[i], nullptr, false);
  }

  // precondition needs the worst pair degree norm
  double gamma = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i; j < count; ++j) {
      gamma = std::max(gamma, one_norm_pair(c.base, c.sets[i], c.sets[j]));
    }
  }
  double cap = (1.0 - 1.0 / class_c) / (2.0 * std::numbers::sqrt2 * gamma);
  if (theta >= cap && theta > 0.0) {
    throw ConfigError("theta " + format_double(theta, 6) + " violates the precondition < " +
                      format_double(cap, 6));
  }

  long double total = 0.0L;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i; j < count; ++j) {
      double weight = i == j ? 1.0 : 2.0;
      Distance dist = edgeset_predistance(c.base, c.sets[i], c.sets[j]);
      long double term = 1.0L;
      if (!dist.is_infinite()) {
        double overlap = intersection_size(c.sets[i], c.sets[j]);
        double m = std::max(static_cast<double>(dist.value()), 1.0);
        // buffer restricted to each side's support
        Mask joint = make_mask(buffer_ref.vertex_count());
        for (std::size_t w = 0; w < joint.size(); ++w) {
          std::uint64_t left = (base_mask[w] | masks[i][w]) & masks[j][w];
          std::uint64_t right = (base_mask[w] | masks[j][w]) & masks[i][w];
          joint[w] = left | right;
        }
        double buf_i = 0.0, buf_j = 0.0;
        for (std::size_t w = 0; w < joint.size(); ++w) {
          buf_i += __builtin_popcountll(joint[w] & masks[i][w]);
          buf_j += __builtin_popcountll(joint[w] & masks[j][w]);
        }
        double h = 0.0, k = 0.0;
        if (setting == ChiSquareSetting::s1) {
          double pair_two = spectral_norm_active(c.base, &c.sets[i], &c.sets[j], true);
          h = std::min(buf_i, buf_j) * set_two_norm[i] * set_two_norm[j] / (pair_two * pair_two);
          k = 2.0 * pair_two;
        } else {
          double pair_one = one_norm_pair(c.base, c.sets[i], c.sets[j]);
          h = buf_i * buf_j / (pair_one * pair_one);
          k = 2.0 * pair_one;
        }
        double exponent = n * (overlap * theta * theta +
                               h * std::pow(k * theta, 2.0 * (m + 1.0)) / (2.0 * (m + 1.0)));
        term = std::exp(static_cast<long double>(exponent));
      }
      total += weight * term;
    }
  }
  long double mean = total / static_cast<long double>(count) / static_cast<long double>(count);
  long double excess = mean - 1.0L;
  if (excess < 0.0L) excess = 0.0L;
  double bound = 1.0 - 0.5 * static_cast<double>(sqrtl(excess));
  return std::isfinite(bound) ? bound : -kInf;
}

ThresholdReport threshold_report(const Divider& c, int n, const ModelClassParams& params,
                                 double kappa, const DividerStatsOptions& opts) {
  if (n < 1) throw ConfigError("sample count must be positive");
  if (params.C <= 1.0) throw ConfigError("class constant C must exceed 1 for a threshold");
  ThresholdReport report;
  double one_minus = 1.0 - 1.0 / params.C;

  auto push = [&](std::string rule, std::vector<ThresholdTerm> terms) {
    ThresholdEntry entry;
    entry.rule = std::move(rule);
    entry.terms = std::move(terms);
    entry.threshold = kInf;
    for (const auto& t : entry.terms) {
      if (t.value < entry.threshold) {
        entry.threshold = t.value;
        entry.binding = t.name;
      }
    }
    report.entries.push_back(std::move(entry));
  };

  if (c.single_edge()) {
    double count = static_cast<double>(c.size());
    auto packing = packing_entropy(c, std::log(count));
    double entropy_term = kappa * std::sqrt(packing.entropy / n);
    double degree = static_cast<double>(c.base.max_degree());
    if (c.mode == DividerMode::add) {
      double cap = std::min(one_minus, std::exp(-0.5)) /
                   (std::numbers::sqrt2 * (degree + 2.0));
      push("single-edge-packing", {{"kappa-scaled-entropy", entropy_term}, {"class-cap", cap}});
    } else {
      double cap = one_minus / (std::numbers::sqrt2 * degree);
      push("single-edge-deletion-packing",
           {{"kappa-scaled-entropy", entropy_term}, {"class-cap", cap}});
    }
    return report;
  }

  DividerStats stats = divider_stats(c, opts);
  if (c.is_explicit() && c.mode == DividerMode::add) {
    double count = static_cast<double>(c.size());
    auto packing = packing_entropy(c, std::log(count));
    double u = static_cast<double>(stats.max_set_size);
    double base_two = spectral_norm_active(c.base, nullptr, nullptr, true);
    double base_one = static_cast<double>(c.base.max_degree());
    push("multi-edge-packing",
         {{"kappa-scaled-entropy", kappa * std::sqrt(packing.entropy / (n * u))},
          {"kappa-spectral-cap", kappa / (u * (base_two + 2.0 * u))},
          {"class-cap", one_minus / (4.0 * (base_one + 2.0 * u))}});
  }

  BufferMcOptions mc = opts.buffer;
  mc.seed = derive_seed(opts.seed, 0x3c0u);
  auto buffer = buffer_entropy(c, mc);
  if (!buffer.infinite && stats.edge_node_ratio > 0.0) {
    push("buffer-entropy",
         {{"buffer-entropy-term",
           std::sqrt(buffer.entropy / (4.0 * n * stats.edge_node_ratio))},
          {"ratio-cap", std::sqrt(stats.edge_node_ratio / stats.b_stat)},
          {"class-cap", one_minus / (2.0 * std::numbers::sqrt2 * stats.gamma)}});
  }
  return report;
}

}  // namespace graphwise

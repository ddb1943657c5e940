#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphwise/divider.hpp"
#include "graphwise/model.hpp"

namespace graphwise {

struct PackingResult {
  double entropy = 0.0;             // log of the packing cardinality
  std::vector<std::size_t> packing; // indices into divider.sets
  bool exact = true;                // greedy fallback marks this false
};

// Largest subset of the divider with pairwise predistance >= radius under the
// base graph. Exact branch-and-bound up to 20 sets, greedy maximal beyond
// (flagged, a lower bound on the true entropy). Explicit dividers only.
PackingResult packing_entropy(const Divider& c, double radius);

struct BufferMcOptions {
  std::uint64_t seed = 17;
  int sampled_sets = 64;    // S candidates when the collection is too large
  int draws_per_set = 4096; // S' draws per candidate
};

struct BufferEntropyResult {
  double entropy = 0.0;     // log(1 / worst_mean); +inf when worst_mean is 0
  bool infinite = false;
  double worst_mean = 0.0;  // max over S of mean |V_{S,S'}| under uniform S'
  bool exact = true;
  double std_error = 0.0;   // of the worst candidate's mean when sampled
};

// Exact enumeration up to 1e4 sets, seeded Monte Carlo beyond (both the S
// candidates and the S' draws are sampled).
BufferEntropyResult buffer_entropy(const Divider& c, const BufferMcOptions& mc = {});

// Mean of |V_{S, S'}| over uniform S' for one fixed S.
double buffer_mean_exact(const Divider& c, const EdgeSet& s);
double buffer_mean_mc(const Divider& c, const EdgeSet& s, int draws, std::uint64_t seed,
                      double* std_error = nullptr);

struct DividerStatsOptions {
  std::uint64_t seed = 17;
  std::uint64_t exact_pair_cap = 2000;  // full pair enumeration up to this set count
  int sampled_pairs = 20000;
  int sampled_self_pairs = 256;
  BufferMcOptions buffer;
};

struct DividerStats {
  int max_set_size = 0;          // U
  double gamma = 0.0;            // max ||A0 + A_S + A_S'||_1 over pairs
  double lambda = 0.0;           // max ||A0 + A_S + A_S'||_2 over pairs
  double edge_node_ratio = 0.0;  // max |S cap S'| / |V_{S,S'}| over nonempty buffers
  double b_stat = 0.0;           // lambda^4 min (gamma^2 max |V_{S,S'}|)
  double buffer_mean_worst = 0.0;
  bool exact = true;
};

DividerStats divider_stats(const Divider& c, const DividerStatsOptions& opts = {});

// Le Cam chi-square risk bound for single-edge dividers:
//   1 - (1/2) sqrt(mean over pairs of exp(n (R theta)^{2 dist + 2} / (dist + 1)) - 1)
// with R = sqrt(2) (||A_base||_2 + 2); unreachable pairs contribute exp(0).
// Requires theta <= (1 - 1/C) / (sqrt(2) (||A_base||_1 + 2)). Works unchanged
// for deletion dividers with the alternative base.
double single_edge_chi2_bound(const Divider& c, double theta, int n, double class_c);

enum class ChiSquareSetting { s1, s2 };

// Multi-edge variant with per-pair constants from the chosen setting:
//   exponent n (|S cap S'| theta^2 + H (K theta)^{2(m+1)} / (2(m+1))),
// m = max(dist, 1); S1 uses buffer sizes with spectral norms, S2 degree
// norms. Requires theta < min over pairs of (1 - 1/C) / (2 sqrt(2) ||A_{S,S'}||_1).
double multi_edge_chi2_bound(const Divider& c, double theta, int n, ChiSquareSetting setting,
                             double class_c);

struct ThresholdTerm {
  std::string name;
  double value = 0.0;
};

struct ThresholdEntry {
  std::string rule;  // which bound produced this row
  double threshold = 0.0;
  std::string binding;
  std::vector<ThresholdTerm> terms;
};

struct ThresholdReport {
  std::vector<ThresholdEntry> entries;
};

// Signal-strength thresholds implied by the applicable bounds: the packing
// bound for single-edge dividers (addition or deletion form), and for
// multi-edge dividers both the bounded-set packing form and the buffer
// entropy form. kappa scales the entropy terms and is reported as such.
ThresholdReport threshold_report(const Divider& c, int n, const ModelClassParams& params,
                                 double kappa = 1.0, const DividerStatsOptions& opts = {});

}  // namespace graphwise

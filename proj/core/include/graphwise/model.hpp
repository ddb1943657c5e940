#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graphwise/divider.hpp"
#include "graphwise/graph.hpp"

namespace graphwise {

// Parameters of the precision-matrix class: eigenvalues in [1/C, C], matrix
// l1 norm at most L, column support at most s.
struct ModelClassParams {
  int s = 1;
  double C = 2.0;
  double L = 3.0;
};

void validate(const ModelClassParams& p, int d);

// Precision matrix of the form I + theta * A for the adjacency matrix A of a
// base graph. Strict positive definiteness is checked at construction.
class PrecisionModel {
 public:
  PrecisionModel(double theta, Graph base);

  double theta() const { return theta_; }
  const Graph& base() const { return base_; }
  int dimension() const { return base_.vertex_count(); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  Eigen::MatrixXd covariance() const;  // inverse of the precision matrix
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double theta_ = 0.0;
  Graph base_;
  Eigen::MatrixXd matrix_;
  double min_eigenvalue_ = 0.0;
};

struct MembershipReport {
  double eig_min = 0.0;
  double eig_max = 0.0;
  double max_column_l1 = 0.0;
  int max_column_support = 0;
  bool spectral_ok = false;
  bool l1_ok = false;
  bool support_ok = false;
  bool pass = false;
};

MembershipReport check_membership(const PrecisionModel& m, const ModelClassParams& p);

// n observations of a d-dimensional vector, one per row. All entries finite.
class Dataset {
 public:
  explicit Dataset(Eigen::MatrixXd rows);

  int n() const { return static_cast<int>(rows_.rows()); }
  int dim() const { return static_cast<int>(rows_.cols()); }
  const Eigen::MatrixXd& rows() const { return rows_; }

  Dataset head(int k) const;
  Dataset tail_from(int k) const;
  Dataset permuted(const std::vector<int>& order) const;

  // CSV: n rows, d comma-separated columns, no header.
  void write_csv(std::ostream& out) const;
  static Dataset read_csv(std::istream& in);

  // Binary: 8 magic bytes "GWDSET01", then n and d as little-endian uint64,
  // then n*d row-major little-endian IEEE doubles.
  void write_binary(std::ostream& out) const;
  static Dataset read_binary(std::istream& in);

  static Dataset read_file(const std::string& path);  // sniffs binary magic

 private:
  Eigen::MatrixXd rows_;
};

// i.i.d. draws from N(0, precision^{-1}); bitwise deterministic given seed.
Dataset sample_gaussian(const Eigen::MatrixXd& precision, int n, std::uint64_t seed);
Dataset sample(const PrecisionModel& m, int n, std::uint64_t seed);

// I + theta * (v v' - I) for v supported (as +1) on the given vertex set;
// the induced graph is one clique on the support.
Eigen::MatrixXd planted_clique_precision(int d, const std::vector<int>& support, double theta);

// ---- example families -------------------------------------------------------

enum class FamilyKind {
  connectivity,       // two cycles, rung divider
  components_add,     // split path; add mode, m at or above sqrt(d)
  cycle,              // chain base, chord divider
  triangle,           // d-cycle base, chord divider
  sap_add,            // broken path blocks; add mode
  components_delete,  // path alternative, deletion divider
  sap_delete,         // path alternative, deletion divider
  max_degree_bounded, // star blocks, bounded gap, multi-edge
  max_degree_split,   // split-vertex star blocks, multi-edge
  clique,             // all s-cliques on the empty base
  cycle_detection,    // increasing-order s-cycles on the empty base
};

FamilyKind family_from_name(const std::string& name);
std::string family_name(FamilyKind kind);

struct FamilyParams {
  int m = 0;   // components / sap length
  int s0 = 0;  // max-degree null bound
  int s1 = 0;  // max-degree alternative bound
  int s = 0;   // clique / cycle size
};

struct Family {
  FamilyKind kind = FamilyKind::connectivity;
  Graph base;       // null base in add mode, alternative base in deletion mode
  Divider divider;
};

// Exact base graph and divider of the named example. Throws ConfigError when
// d is below the family minimum or parameters are out of range.
Family build_family(FamilyKind kind, int d, const FamilyParams& params = {});

// Structural check of the divider contract: in add mode the base lacks the
// family's alternative property and base+S has it for every S; in deletion
// mode the base has it and base-S does not. Sampled for implicit dividers.
void verify_family(const Family& f, Rng& rng, int sampled_checks = 32);

}  // namespace graphwise

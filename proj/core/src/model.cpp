#include "graphwise/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "graphwise/errors.hpp"
#include "graphwise/record.hpp"

namespace graphwise {

void validate(const ModelClassParams& p, int d) {
  if (p.C < 1.0) throw ConfigError("class parameter C must be at least 1");
  if (p.L < p.C) throw ConfigError("class parameter L must be at least C");
  if (p.s < 1 || p.s > d) throw ConfigError("class sparsity s must lie in [1, d]");
}

PrecisionModel::PrecisionModel(double theta, Graph base) : theta_(theta), base_(std::move(base)) {
  if (theta < 0.0) throw ConfigError("signal strength theta must be nonnegative");
  int d = base_.vertex_count();
  matrix_ = Eigen::MatrixXd::Identity(d, d);
  for (const auto& e : base_.edges()) {
    matrix_(e.a - 1, e.b - 1) = theta;
    matrix_(e.b - 1, e.a - 1) = theta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalue solve failed for precision matrix");
  }
  min_eigenvalue_ = solver.eigenvalues().minCoeff();
  if (min_eigenvalue_ <= 1e-10) {
    throw NumericalError("precision matrix is not strictly positive definite (min eigenvalue " +
                         format_double(min_eigenvalue_, 6) + ")");
  }
}

Eigen::MatrixXd PrecisionModel::covariance() const {
  return matrix_.llt().solve(Eigen::MatrixXd::Identity(dimension(), dimension()));
}

MembershipReport check_membership(const PrecisionModel& m, const ModelClassParams& p) {
  const auto& theta = m.matrix();
  int d = m.dimension();
  validate(p, d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(theta, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalue solve failed in membership check");
  }
  MembershipReport report;
  report.eig_min = solver.eigenvalues().minCoeff();
  report.eig_max = solver.eigenvalues().maxCoeff();
  report.max_column_l1 = theta.cwiseAbs().colwise().sum().maxCoeff();
  for (int j = 0; j < d; ++j) {
    int support = 0;
    for (int i = 0; i < d; ++i) {
      if (theta(i, j) != 0.0) ++support;
    }
    report.max_column_support = std::max(report.max_column_support, support);
  }
  report.spectral_ok = report.eig_min >= 1.0 / p.C && report.eig_max <= p.C;
  report.l1_ok = report.max_column_l1 <= p.L;
  report.support_ok = report.max_column_support <= p.s;
  report.pass = report.spectral_ok && report.l1_ok && report.support_ok;
  return report;
}

Dataset::Dataset(Eigen::MatrixXd rows) : rows_(std::move(rows)) {
  if (rows_.rows() < 1 || rows_.cols() < 1) throw ConfigError("dataset must be nonempty");
  if (!rows_.allFinite()) throw ConfigError("dataset entries must all be finite");
}

Dataset Dataset::head(int k) const {
  if (k < 1 || k > n()) throw ConfigError("dataset head size out of range");
  return Dataset(rows_.topRows(k));
}

Dataset Dataset::tail_from(int k) const {
  if (k < 0 || k >= n()) throw ConfigError("dataset tail start out of range");
  return Dataset(rows_.bottomRows(n() - k));
}

Dataset Dataset::permuted(const std::vector<int>& order) const {
  if (static_cast<int>(order.size()) != n()) throw ConfigError("permutation length mismatch");
  Eigen::MatrixXd out(n(), dim());
  for (int i = 0; i < n(); ++i) {
    if (order[i] < 0 || order[i] >= n()) throw ConfigError("permutation index out of range");
    out.row(i) = rows_.row(order[i]);
  }
  return Dataset(std::move(out));
}

void Dataset::write_csv(std::ostream& out) const {
  for (int i = 0; i < n(); ++i) {
    for (int j = 0; j < dim(); ++j) {
      if (j > 0) out << ",";
      out << format_double(rows_(i, j), 17);
    }
    out << "\n";
  }
}

Dataset Dataset::read_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ConfigError("bad CSV cell '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ConfigError("ragged CSV row (got " + std::to_string(row.size()) + " columns)");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("empty CSV dataset");
  Eigen::MatrixXd m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return Dataset(std::move(m));
}

namespace {

constexpr char kDatasetMagic[8] = {'G', 'W', 'D', 'S', 'E', 'T', '0', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  if (!in) throw ConfigError("truncated binary dataset header");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

void put_f64(std::ostream& out, double x) {
  std::uint64_t bits;
  std::memcpy(&bits, &x, 8);
  put_u64(out, bits);
}

double get_f64(std::istream& in) {
  std::uint64_t bits = get_u64(in);
  double x;
  std::memcpy(&x, &bits, 8);
  return x;
}

}  // namespace

void Dataset::write_binary(std::ostream& out) const {
  out.write(kDatasetMagic, 8);
  put_u64(out, static_cast<std::uint64_t>(n()));
  put_u64(out, static_cast<std::uint64_t>(dim()));
  for (int i = 0; i < n(); ++i) {
    for (int j = 0; j < dim(); ++j) put_f64(out, rows_(i, j));
  }
}

Dataset Dataset::read_binary(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kDatasetMagic, 8) != 0) {
    throw ConfigError("binary dataset is missing the GWDSET01 magic");
  }
  auto n = get_u64(in);
  auto d = get_u64(in);
  if (n == 0 || d == 0 || n > (1u << 28) || d > (1u << 20)) {
    throw ConfigError("binary dataset header out of range");
  }
  Eigen::MatrixXd m(static_cast<int>(n), static_cast<int>(d));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) m(i, j) = get_f64(in);
  }
  if (!in) throw ConfigError("truncated binary dataset body");
  return Dataset(std::move(m));
}

Dataset Dataset::read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open dataset file: " + path);
  char magic[8] = {};
  in.read(magic, 8);
  in.clear();
  in.seekg(0);
  if (in.gcount() == 8 && std::memcmp(magic, kDatasetMagic, 8) == 0) {
    return read_binary(in);
  }
  return read_csv(in);
}

Dataset sample_gaussian(const Eigen::MatrixXd& precision, int n, std::uint64_t seed) {
  if (n < 1) throw ConfigError("sample count must be positive");
  if (precision.rows() != precision.cols()) throw ConfigError("precision matrix must be square");
  int d = static_cast<int>(precision.rows());
  Eigen::LLT<Eigen::MatrixXd> llt(precision);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("Cholesky factorization failed: precision matrix not positive definite");
  }
  // precision = L L', so x = L^{-T} z has covariance precision^{-1}
  Rng rng(seed);
  Eigen::MatrixXd rows(n, d);
  Eigen::VectorXd z(d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) z(j) = rng.normal();
    rows.row(i) = llt.matrixU().solve(z).transpose();
  }
  return Dataset(std::move(rows));
}

Dataset sample(const PrecisionModel& m, int n, std::uint64_t seed) {
  return sample_gaussian(m.matrix(), n, seed);
}

Eigen::MatrixXd planted_clique_precision(int d, const std::vector<int>& support, double theta) {
  if (theta <= 0.0 || theta >= 1.0) throw ConfigError("planted clique theta must lie in (0,1)");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
  for (int idx : support) {
    if (idx < 1 || idx > d) throw ConfigError("clique support vertex out of range");
    v(idx - 1) = 1.0;
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d);
  m += theta * (v * v.transpose() - Eigen::MatrixXd::Identity(d, d));
  return m;
}

// ---- families ---------------------------------------------------------------

namespace {

int wrap_vertex(int x, int d) { return ((x - 1) % d) + 1; }

std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 out = 1;
  for (int i = 1; i <= k; ++i) {
    // out * (n - k + i) / i stays integral at every step
    out = out * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (out > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(out);
}

EdgeSet clique_edges(const std::vector<int>& vertices) {
  EdgeSet edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      edges.push_back(make_edge(vertices[i], vertices[j]));
    }
  }
  return make_edge_set(std::move(edges));
}

EdgeSet ordered_cycle_edges(std::vector<int> vertices) {
  std::sort(vertices.begin(), vertices.end());
  EdgeSet edges;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    edges.push_back(make_edge(vertices[i], vertices[i + 1]));
  }
  edges.push_back(make_edge(vertices.back(), vertices.front()));
  return make_edge_set(std::move(edges));
}

std::vector<int> sample_subset(Rng& rng, int lo, int hi, int k) {
  // partial Fisher-Yates over [lo, hi]
  int n = hi - lo + 1;
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = lo + i;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    auto j = static_cast<std::size_t>(rng.uniform_int(i, n - 1));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    out.push_back(pool[static_cast<std::size_t>(i)]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void foreach_subset(int lo, int hi, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> pick(static_cast<std::size_t>(k));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      fn(pick);
      return;
    }
    for (int v = start; v <= hi - (k - depth - 1); ++v) {
      pick[static_cast<std::size_t>(depth)] = v;
      rec(v + 1, depth + 1);
    }
  };
  rec(lo, 0);
}

constexpr std::uint64_t kMaterializeCap = 50000;

class CliqueSets final : public ImplicitEdgeSets {
 public:
  CliqueSets(int d, int s) : d_(d), s_(s) {}
  std::uint64_t size() const override {
    return binomial_capped(d_, s_, std::numeric_limits<std::uint64_t>::max() / 2);
  }
  EdgeSet sample(Rng& rng) const override { return clique_edges(sample_subset(rng, 1, d_, s_)); }
  std::string describe() const override {
    return "all " + std::to_string(s_) + "-cliques on " + std::to_string(d_) + " vertices";
  }

 private:
  int d_, s_;
};

class OrderedCycleSets final : public ImplicitEdgeSets {
 public:
  OrderedCycleSets(int d, int s) : d_(d), s_(s) {}
  std::uint64_t size() const override {
    return binomial_capped(d_, s_, std::numeric_limits<std::uint64_t>::max() / 2);
  }
  EdgeSet sample(Rng& rng) const override {
    return ordered_cycle_edges(sample_subset(rng, 1, d_, s_));
  }
  std::string describe() const override {
    return "increasing-order " + std::to_string(s_) + "-cycles on " + std::to_string(d_) +
           " vertices";
  }

 private:
  int d_, s_;
};

class StarSplitSets final : public ImplicitEdgeSets {
 public:
  StarSplitSets(std::vector<int> centers, int pool_lo, int pool_hi, int k)
      : centers_(std::move(centers)), pool_lo_(pool_lo), pool_hi_(pool_hi), k_(k) {}
  std::uint64_t size() const override {
    auto per_center = binomial_capped(pool_hi_ - pool_lo_ + 1, k_,
                                      std::numeric_limits<std::uint64_t>::max() / 4);
    return per_center * centers_.size();
  }
  EdgeSet sample(Rng& rng) const override {
    int center = centers_[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(centers_.size()) - 1))];
    EdgeSet out;
    for (int leaf : sample_subset(rng, pool_lo_, pool_hi_, k_)) {
      out.push_back(make_edge(center, leaf));
    }
    return make_edge_set(std::move(out));
  }
  std::string describe() const override {
    return std::to_string(centers_.size()) + " centers joined to " + std::to_string(k_) +
           "-subsets of {" + std::to_string(pool_lo_) + ".." + std::to_string(pool_hi_) + "}";
  }

 private:
  std::vector<int> centers_;
  int pool_lo_, pool_hi_, k_;
};

}  // namespace

FamilyKind family_from_name(const std::string& name) {
  if (name == "connectivity") return FamilyKind::connectivity;
  if (name == "components" || name == "components-add") return FamilyKind::components_add;
  if (name == "cycle") return FamilyKind::cycle;
  if (name == "triangle") return FamilyKind::triangle;
  if (name == "sap" || name == "sap-add") return FamilyKind::sap_add;
  if (name == "components-delete") return FamilyKind::components_delete;
  if (name == "sap-delete") return FamilyKind::sap_delete;
  if (name == "max-degree-bounded") return FamilyKind::max_degree_bounded;
  if (name == "max-degree-split") return FamilyKind::max_degree_split;
  if (name == "clique") return FamilyKind::clique;
  if (name == "cycle-detection") return FamilyKind::cycle_detection;
  throw ConfigError("unknown family '" + name + "'");
}

std::string family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::connectivity: return "connectivity";
    case FamilyKind::components_add: return "components-add";
    case FamilyKind::cycle: return "cycle";
    case FamilyKind::triangle: return "triangle";
    case FamilyKind::sap_add: return "sap-add";
    case FamilyKind::components_delete: return "components-delete";
    case FamilyKind::sap_delete: return "sap-delete";
    case FamilyKind::max_degree_bounded: return "max-degree-bounded";
    case FamilyKind::max_degree_split: return "max-degree-split";
    case FamilyKind::clique: return "clique";
    case FamilyKind::cycle_detection: return "cycle-detection";
  }
  return "?";
}

Family build_family(FamilyKind kind, int d, const FamilyParams& params) {
  Family out;
  out.kind = kind;
  switch (kind) {
    case FamilyKind::connectivity: {
      if (d < 6) throw ConfigError("connectivity family needs d >= 6");
      int h = d / 2;
      EdgeSet base;
      for (int j = 1; j < h; ++j) base.push_back(make_edge(j, j + 1));
      base.push_back(make_edge(1, h));
      for (int j = h + 1; j < d; ++j) base.push_back(make_edge(j, j + 1));
      base.push_back(make_edge(h + 1, d));
      out.base = Graph(d, std::move(base));
      for (int j = 1; j <= h; ++j) out.divider.sets.push_back({make_edge(j, h + j)});
      break;
    }
    case FamilyKind::components_add: {
      int m = params.m;
      if (m < 1 || m > d - 2) throw ConfigError("components-add needs 1 <= m <= d - 2");
      EdgeSet base;
      for (int j = 1; j <= d - m - 1; ++j) base.push_back(make_edge(j, j + 1));
      out.base = Graph(d, std::move(base));
      for (int j = d - m; j <= d - 1; ++j) out.divider.sets.push_back({make_edge(j, j + 1)});
      break;
    }
    case FamilyKind::cycle:
    case FamilyKind::triangle: {
      if (d < 5) throw ConfigError("chord divider families need d >= 5");
      EdgeSet base;
      for (int j = 1; j < d; ++j) base.push_back(make_edge(j, j + 1));
      if (kind == FamilyKind::triangle) base.push_back(make_edge(1, d));
      out.base = Graph(d, std::move(base));
      for (int j = 1; j <= d; ++j) {
        out.divider.sets.push_back({make_edge(j, wrap_vertex(j + 2, d))});
      }
      break;
    }
    case FamilyKind::sap_add: {
      int m = params.m;
      if (m < 1) throw ConfigError("sap-add needs m >= 1");
      if (d < m + 2 || d % (m + 2) != 0) {
        throw ConfigError("sap-add needs (m + 2) to divide d");
      }
      EdgeSet base;
      for (int j = 1; j < d; ++j) {
        if (j % (m + 2) == 0 || (j + 1) % (m + 2) == 0) continue;
        base.push_back(make_edge(j, j + 1));
      }
      out.base = Graph(d, std::move(base));
      for (int j = 1; j <= d / (m + 2); ++j) {
        out.divider.sets.push_back({make_edge(j * (m + 2) - 1, j * (m + 2))});
      }
      break;
    }
    case FamilyKind::components_delete: {
      int m = params.m;
      if (m < 1 || m > d - 1) throw ConfigError("components-delete needs 1 <= m <= d - 1");
      EdgeSet base;
      for (int j = 1; j <= d - m; ++j) base.push_back(make_edge(j, j + 1));
      out.base = Graph(d, base);
      out.divider.mode = DividerMode::deletion;
      for (const auto& e : base) out.divider.sets.push_back({e});
      break;
    }
    case FamilyKind::sap_delete: {
      int m = params.m;
      if (m < 1 || d < m + 2) throw ConfigError("sap-delete needs d >= m + 2");
      EdgeSet base;
      for (int j = 1; j <= m + 1; ++j) base.push_back(make_edge(j, j + 1));
      out.base = Graph(d, base);
      out.divider.mode = DividerMode::deletion;
      for (const auto& e : base) out.divider.sets.push_back({e});
      break;
    }
    case FamilyKind::max_degree_bounded: {
      int s0 = params.s0, s1 = params.s1;
      if (s0 < 1 || s1 <= s0) throw ConfigError("max-degree-bounded needs 1 <= s0 < s1");
      if (d < s1 + 1) throw ConfigError("max-degree-bounded needs d >= s1 + 1");
      int blocks = d / (s1 + 1);
      EdgeSet base;
      for (int j = 0; j < blocks; ++j) {
        int center = (s1 + 1) * j + 1;
        for (int k = 1; k <= s0; ++k) base.push_back(make_edge(center, center + k));
      }
      out.base = Graph(d, std::move(base));
      for (int j = 0; j < blocks; ++j) {
        int center = (s1 + 1) * j + 1;
        EdgeSet set;
        for (int k = s0 + 1; k <= s1; ++k) set.push_back(make_edge(center, center + k));
        out.divider.sets.push_back(make_edge_set(std::move(set)));
      }
      break;
    }
    case FamilyKind::max_degree_split: {
      int s0 = params.s0, s1 = params.s1;
      if (s0 < 1 || s1 <= s0) throw ConfigError("max-degree-split needs 1 <= s0 < s1");
      int r = static_cast<int>(std::floor(std::sqrt(static_cast<double>(d))));
      int ncenters = r / (s0 + 1);
      if (ncenters < 1) throw ConfigError("max-degree-split centers must fit in floor(sqrt(d))");
      int pool_lo = r + 1, pool_hi = d, k = s1 - s0;
      if (pool_hi - pool_lo + 1 < k) throw ConfigError("max-degree-split leaf pool too small");
      EdgeSet base;
      std::vector<int> centers;
      for (int j = 0; j < ncenters; ++j) {
        int center = (s0 + 1) * j + 1;
        centers.push_back(center);
        for (int t = 1; t <= s0; ++t) base.push_back(make_edge(center, center + t));
      }
      out.base = Graph(d, std::move(base));
      out.divider.buffer_base = Graph::empty(d);
      auto count = binomial_capped(pool_hi - pool_lo + 1, k, kMaterializeCap);
      if (count * centers.size() <= kMaterializeCap) {
        for (int center : centers) {
          foreach_subset(pool_lo, pool_hi, k, [&](const std::vector<int>& leaves) {
            EdgeSet set;
            for (int leaf : leaves) set.push_back(make_edge(center, leaf));
            out.divider.sets.push_back(make_edge_set(std::move(set)));
          });
        }
      } else {
        out.divider.implicit =
            std::make_shared<StarSplitSets>(centers, pool_lo, pool_hi, k);
      }
      break;
    }
    case FamilyKind::clique: {
      int s = params.s;
      if (s < 2 || s > d) throw ConfigError("clique family needs 2 <= s <= d");
      out.base = Graph::empty(d);
      if (binomial_capped(d, s, kMaterializeCap) <= kMaterializeCap) {
        foreach_subset(1, d, s, [&](const std::vector<int>& vs) {
          out.divider.sets.push_back(clique_edges(vs));
        });
      } else {
        out.divider.implicit = std::make_shared<CliqueSets>(d, s);
      }
      break;
    }
    case FamilyKind::cycle_detection: {
      int s = params.s;
      if (s < 3 || s > d) throw ConfigError("cycle-detection family needs 3 <= s <= d");
      out.base = Graph::empty(d);
      if (binomial_capped(d, s, kMaterializeCap) <= kMaterializeCap) {
        foreach_subset(1, d, s, [&](const std::vector<int>& vs) {
          out.divider.sets.push_back(ordered_cycle_edges(vs));
        });
      } else {
        out.divider.implicit = std::make_shared<OrderedCycleSets>(d, s);
      }
      break;
    }
  }
  out.divider.base = out.base;
  if (out.divider.is_explicit() && out.divider.sets.empty()) {
    throw ConfigError("family produced an empty divider");
  }
  if (out.divider.mode == DividerMode::add) {
    for (const auto& set : out.divider.sets) {
      if (!edge_set_intersection(set, out.base.edges()).empty()) {
        throw ConfigError("add-mode divider set overlaps the base graph");
      }
    }
  }
  return out;
}

namespace {

bool contains_clique(const Graph& g, const std::vector<int>& vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (!g.has_edge(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

void check_pair(const Family& f, const Graph& with, const Graph& without,
                const FamilyParams& params) {
  auto fail = [&](const std::string& what) {
    throw NumericalError("family " + family_name(f.kind) + " violates the divider contract: " +
                         what);
  };
  switch (f.kind) {
    case FamilyKind::connectivity:
      if (is_connected(without)) fail("null base is connected");
      if (!is_connected(with)) fail("alternative graph is disconnected");
      break;
    case FamilyKind::components_add:
    case FamilyKind::components_delete: {
      int m = params.m;
      if (component_count(without) < m + 1) fail("null side has too few components");
      if (component_count(with) > m) fail("alternative side has too many components");
      break;
    }
    case FamilyKind::cycle:
      if (has_cycle(without)) fail("null base has a cycle");
      if (!has_cycle(with)) fail("alternative graph is a forest");
      break;
    case FamilyKind::triangle:
      if (has_triangle(without)) fail("null base has a triangle");
      if (!has_triangle(with)) fail("alternative graph is triangle-free");
      break;
    case FamilyKind::sap_add:
    case FamilyKind::sap_delete: {
      int m = params.m;
      if (longest_sap(without) > m) fail("null side has a long self-avoiding path");
      if (longest_sap(with) < m + 1) fail("alternative side lacks the long path");
      break;
    }
    case FamilyKind::max_degree_bounded:
    case FamilyKind::max_degree_split:
      if (without.max_degree() > params.s0) fail("null side exceeds degree s0");
      if (with.max_degree() < params.s1) fail("alternative side below degree s1");
      break;
    case FamilyKind::clique: {
      if (without.edge_count() != 0) fail("null base is not empty");
      bool found = false;
      for (const auto& block : connected_components(with)) {
        if (static_cast<int>(block.size()) == params.s && contains_clique(with, block)) {
          found = true;
        }
      }
      if (!found) fail("alternative side lacks the planted clique");
      break;
    }
    case FamilyKind::cycle_detection:
      if (without.edge_count() != 0) fail("null base is not empty");
      if (!has_cycle(with)) fail("alternative side lacks the cycle");
      break;
  }
}

}  // namespace

void verify_family(const Family& f, Rng& rng, int sampled_checks) {
  FamilyParams params;
  // recover the parameters implied by the built structure
  switch (f.kind) {
    case FamilyKind::components_add:
      params.m = static_cast<int>(f.divider.sets.size());
      break;
    case FamilyKind::components_delete:
      params.m = component_count(f.base);
      break;
    case FamilyKind::sap_add:
    case FamilyKind::sap_delete:
      params.m = f.divider.mode == DividerMode::add ? longest_sap(f.base)
                                                    : longest_sap(f.base) - 1;
      break;
    case FamilyKind::max_degree_bounded:
    case FamilyKind::max_degree_split: {
      params.s0 = f.base.max_degree();
      EdgeSet first = f.divider.is_explicit() ? f.divider.sets.front() : [&] {
        Rng peek(7);
        return f.divider.implicit->sample(peek);
      }();
      params.s1 = params.s0 + static_cast<int>(first.size());
      break;
    }
    case FamilyKind::clique:
    case FamilyKind::cycle_detection: {
      EdgeSet first = f.divider.is_explicit() ? f.divider.sets.front() : [&] {
        Rng peek(7);
        return f.divider.implicit->sample(peek);
      }();
      params.s = static_cast<int>(vertex_support(first).size());
      break;
    }
    default:
      break;
  }

  auto check_set = [&](const EdgeSet& set) {
    if (f.divider.mode == DividerMode::add) {
      check_pair(f, f.base.with_edges(set), f.base, params);
    } else {
      for (const auto& e : set) {
        if (!edge_set_contains(f.base.edges(), e)) {
          throw NumericalError("deletion divider set is not a subset of the base edges");
        }
      }
      check_pair(f, f.base, f.base.without_edges(set), params);
    }
  };

  if (f.divider.is_explicit()) {
    for (const auto& set : f.divider.sets) check_set(set);
  } else {
    for (int i = 0; i < sampled_checks; ++i) check_set(f.divider.implicit->sample(rng));
  }
}

bool Divider::single_edge() const {
  if (!is_explicit()) return false;
  for (const auto& set : sets) {
    if (set.size() != 1) return false;
  }
  return !sets.empty();
}

}  // namespace graphwise

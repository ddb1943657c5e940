#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace graphwise {

// Undirected edge on 1-indexed vertices, stored with a < b.
struct Edge {
  int a = 0;
  int b = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Normalizes (u, v) to a < b; rejects self-loops and nonpositive vertices.
Edge make_edge(int u, int v);

// Sorted, duplicate-free set of undirected edges.
using EdgeSet = std::vector<Edge>;

EdgeSet make_edge_set(std::vector<Edge> edges);
bool edge_set_contains(const EdgeSet& set, const Edge& e);
EdgeSet edge_set_union(const EdgeSet& a, const EdgeSet& b);
EdgeSet edge_set_intersection(const EdgeSet& a, const EdgeSet& b);
EdgeSet edge_set_difference(const EdgeSet& a, const EdgeSet& b);

// Sorted vertex support V(E).
std::vector<int> vertex_support(const EdgeSet& set);

// Extended nonnegative integer: a finite hop count or the unreachable marker.
// Unreachable compares greater than every finite value.
class Distance {
 public:
  static Distance infinity() { return Distance(true, 0); }
  static Distance finite(std::int64_t value);

  bool is_infinite() const { return infinite_; }
  std::int64_t value() const;  // throws on the unreachable marker

  friend bool operator==(const Distance&, const Distance&) = default;
  friend bool operator<(const Distance& x, const Distance& y) {
    if (x.infinite_) return false;
    if (y.infinite_) return true;
    return x.value_ < y.value_;
  }
  friend bool operator>(const Distance& x, const Distance& y) { return y < x; }
  friend bool operator<=(const Distance& x, const Distance& y) { return !(y < x); }
  friend bool operator>=(const Distance& x, const Distance& y) { return !(x < y); }

  // also comparable against plain finite values
  friend bool operator>=(const Distance& x, double r) {
    return x.infinite_ || static_cast<double>(x.value_) >= r;
  }

 private:
  Distance(bool infinite, std::int64_t value) : infinite_(infinite), value_(value) {}
  bool infinite_;
  std::int64_t value_;
};

// Simple undirected graph on vertices 1..d.
class Graph {
 public:
  Graph() = default;
  Graph(int d, EdgeSet edges);
  static Graph empty(int d) { return Graph(d, {}); }

  int vertex_count() const { return d_; }
  const EdgeSet& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int v) const;
  int degree(int v) const;
  int max_degree() const;

  // symmetric 0/1 matrix with zero diagonal, 0-based indexing
  Eigen::MatrixXi adjacency_matrix() const;

  Graph with_edges(const EdgeSet& extra) const;
  Graph without_edges(const EdgeSet& removed) const;

 private:
  int d_ = 0;
  EdgeSet edges_;
  std::vector<std::vector<int>> adjacency_;  // 1-indexed, slot 0 unused
};

// ---- geodesics and predistances ----------------------------------------

// Hop counts from `source` to every vertex; -1 marks unreachable.
std::vector<int> bfs_hops(const Graph& g, int source);

Distance geodesic_distance(const Graph& g, int u, int v);

// min over u in e, v in f of the geodesic distance; e and f need not belong
// to g's edge set and the value does not depend on whether they do.
Distance edge_predistance(const Graph& g, const Edge& e, const Edge& f);

Distance edgeset_predistance(const Graph& g, const EdgeSet& s, const EdgeSet& t);

// ---- exact walk counting ------------------------------------------------

// Trace of M^k for a symmetric integer matrix. All arithmetic is checked
// 64-bit integer; overflow raises NumericalError.
std::int64_t integer_trace_power(const Eigen::MatrixXi& m, int k);

// Number of closed walks of length k, i.e. trace of A^k.
std::int64_t closed_walk_count(const Graph& g, int k);

// ---- components ----------------------------------------------------------

// Maximal connected blocks, each sorted, ordered by smallest member.
std::vector<std::vector<int>> connected_components(const Graph& g);
int component_count(const Graph& g);

// ---- weights and spanning structures --------------------------------------

// Nonnegative symmetric weight per edge of the complete graph on d vertices.
class EdgeWeights {
 public:
  explicit EdgeWeights(int d);
  // w(j,k) = |m(j-1,k-1)| for a symmetric matrix
  static EdgeWeights from_matrix_abs(const Eigen::MatrixXd& m);

  int vertex_count() const { return d_; }
  double at(int u, int v) const;
  void set(int u, int v, double w);

 private:
  std::size_t index(int u, int v) const;
  int d_ = 0;
  std::vector<double> values_;
};

// Maximum-weight spanning tree of the complete graph, dense Prim. Ties break
// toward the lexicographically smallest (min vertex, max vertex) edge.
EdgeSet max_spanning_tree(const EdgeWeights& w, int d);

// The d-m heaviest edges of the maximum spanning tree; spans exactly m
// components. m = 1 reduces to max_spanning_tree.
EdgeSet max_spanning_forest(const EdgeWeights& w, int d, int m);

enum class StructureKind { cycle, triangle, sap, degree };

struct StructureTarget {
  StructureKind kind = StructureKind::cycle;
  int param = 0;  // path length m for sap, degree bound s0 for degree
};

// Inserts complete-graph edges in strictly decreasing weight order (ties
// lexicographic) until the target substructure first appears, and returns
// exactly that substructure's edges. When one insertion completes several
// candidates, the one with the lexicographically smallest vertex sequence
// containing the just-inserted edge is returned. nullopt when every edge is
// exhausted without the structure appearing.
std::optional<EdgeSet> greedy_structure_search(const EdgeWeights& w, int d,
                                               const StructureTarget& target);

// ---- vertex buffer ---------------------------------------------------------

// {V(E0 ∪ s) ∩ V(t)} ∪ {V(E0 ∪ t) ∩ V(s)} for E0 = g0's edges; sorted.
std::vector<int> vertex_buffer(const Graph& g0, const EdgeSet& s, const EdgeSet& t);

// ---- structural predicates --------------------------------------------------

bool is_connected(const Graph& g);
bool has_cycle(const Graph& g);
bool has_triangle(const Graph& g);

// Longest self-avoiding path length (edge count). Linear for forests via
// per-tree diameters; exhaustive search otherwise, restricted to small d.
int longest_sap(const Graph& g);

// Checks on bare edge sets, used to validate witness structures.
bool is_spanning_tree(int d, const EdgeSet& edges);
bool is_spanning_forest(int d, int m, const EdgeSet& edges);
bool is_simple_cycle(const EdgeSet& edges);
bool is_simple_path(const EdgeSet& edges);   // connected, all degrees <= 2, acyclic
bool is_star(const EdgeSet& edges, int leaves);

// ---- serialization -----------------------------------------------------------

// Plain edge-list text format: first line "d <count>", then one "j k" line
// per edge, 1-indexed.
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);

}  // namespace graphwise

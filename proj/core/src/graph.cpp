#include "graphwise/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "graphwise/errors.hpp"

namespace graphwise {

Edge make_edge(int u, int v) {
  if (u <= 0 || v <= 0) throw ConfigError("edge vertices must be positive, got (" +
                                          std::to_string(u) + "," + std::to_string(v) + ")");
  if (u == v) throw ConfigError("self-loop (" + std::to_string(u) + "," + std::to_string(u) +
                                ") is not a valid edge");
  return u < v ? Edge{u, v} : Edge{v, u};
}

EdgeSet make_edge_set(std::vector<Edge> edges) {
  for (auto& e : edges) e = make_edge(e.a, e.b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

bool edge_set_contains(const EdgeSet& set, const Edge& e) {
  return std::binary_search(set.begin(), set.end(), e);
}

EdgeSet edge_set_union(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

EdgeSet edge_set_intersection(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

EdgeSet edge_set_difference(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> vertex_support(const EdgeSet& set) {
  std::vector<int> v;
  v.reserve(set.size() * 2);
  for (const auto& e : set) {
    v.push_back(e.a);
    v.push_back(e.b);
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Distance Distance::finite(std::int64_t value) {
  if (value < 0) throw ConfigError("finite distance must be nonnegative");
  return Distance(false, value);
}

std::int64_t Distance::value() const {
  if (infinite_) throw ConfigError("unreachable distance has no finite value");
  return value_;
}

Graph::Graph(int d, EdgeSet edges) : d_(d), edges_(make_edge_set(std::move(edges))) {
  if (d <= 0) throw ConfigError("graph needs a positive vertex count");
  for (const auto& e : edges_) {
    if (e.b > d_) {
      throw ConfigError("edge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                        ") exceeds vertex count " + std::to_string(d_));
    }
  }
  adjacency_.assign(static_cast<std::size_t>(d_) + 1, {});
  for (const auto& e : edges_) {
    adjacency_[e.a].push_back(e.b);
    adjacency_[e.b].push_back(e.a);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(int u, int v) const {
  if (u == v) return false;
  return edge_set_contains(edges_, make_edge(u, v));
}

const std::vector<int>& Graph::neighbors(int v) const {
  if (v < 1 || v > d_) throw ConfigError("vertex " + std::to_string(v) + " out of range");
  return adjacency_[v];
}

int Graph::degree(int v) const { return static_cast<int>(neighbors(v).size()); }

int Graph::max_degree() const {
  int m = 0;
  for (int v = 1; v <= d_; ++v) m = std::max(m, static_cast<int>(adjacency_[v].size()));
  return m;
}

Eigen::MatrixXi Graph::adjacency_matrix() const {
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(d_, d_);
  for (const auto& e : edges_) {
    a(e.a - 1, e.b - 1) = 1;
    a(e.b - 1, e.a - 1) = 1;
  }
  return a;
}

Graph Graph::with_edges(const EdgeSet& extra) const {
  return Graph(d_, edge_set_union(edges_, extra));
}

Graph Graph::without_edges(const EdgeSet& removed) const {
  return Graph(d_, edge_set_difference(edges_, removed));
}

std::vector<int> bfs_hops(const Graph& g, int source) {
  if (source < 1 || source > g.vertex_count()) {
    throw ConfigError("vertex " + std::to_string(source) + " out of range");
  }
  std::vector<int> hops(static_cast<std::size_t>(g.vertex_count()) + 1, -1);
  std::deque<int> queue{source};
  hops[source] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : g.neighbors(u)) {
      if (hops[v] < 0) {
        hops[v] = hops[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return hops;
}

Distance geodesic_distance(const Graph& g, int u, int v) {
  if (v < 1 || v > g.vertex_count()) {
    throw ConfigError("vertex " + std::to_string(v) + " out of range");
  }
  if (u == v) return Distance::finite(0);
  auto hops = bfs_hops(g, u);
  return hops[v] < 0 ? Distance::infinity() : Distance::finite(hops[v]);
}

Distance edge_predistance(const Graph& g, const Edge& e, const Edge& f) {
  Edge en = make_edge(e.a, e.b);
  Edge fn = make_edge(f.a, f.b);
  if (en.b > g.vertex_count() || fn.b > g.vertex_count()) {
    throw ConfigError("edge endpoint exceeds vertex count");
  }
  if (en == fn || en.a == fn.a || en.a == fn.b || en.b == fn.a || en.b == fn.b) {
    return Distance::finite(0);
  }
  Distance best = Distance::infinity();
  for (int u : {en.a, en.b}) {
    auto hops = bfs_hops(g, u);
    for (int v : {fn.a, fn.b}) {
      if (hops[v] >= 0) {
        Distance cand = Distance::finite(hops[v]);
        if (cand < best) best = cand;
      }
    }
  }
  return best;
}

Distance edgeset_predistance(const Graph& g, const EdgeSet& s, const EdgeSet& t) {
  if (s.empty() || t.empty()) throw ConfigError("edge set predistance needs nonempty sets");
  auto sv = vertex_support(s);
  auto tv = vertex_support(t);
  for (int v : sv) {
    if (v > g.vertex_count()) throw ConfigError("edge endpoint exceeds vertex count");
    if (std::binary_search(tv.begin(), tv.end(), v)) return Distance::finite(0);
  }
  // multi-source BFS from V(s); min hop over V(t) equals the pairwise minimum
  std::vector<int> hops(static_cast<std::size_t>(g.vertex_count()) + 1, -1);
  std::deque<int> queue;
  for (int v : sv) {
    hops[v] = 0;
    queue.push_back(v);
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : g.neighbors(u)) {
      if (hops[v] < 0) {
        hops[v] = hops[u] + 1;
        queue.push_back(v);
      }
    }
  }
  Distance best = Distance::infinity();
  for (int v : tv) {
    if (v > g.vertex_count()) throw ConfigError("edge endpoint exceeds vertex count");
    if (hops[v] >= 0) {
      Distance cand = Distance::finite(hops[v]);
      if (cand < best) best = cand;
    }
  }
  return best;
}

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw NumericalError("integer overflow in walk count accumulation");
  }
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw NumericalError("integer overflow in walk count multiplication");
  }
  return out;
}

using IntMatrix = std::vector<std::vector<std::int64_t>>;

IntMatrix checked_product(const IntMatrix& x, const IntMatrix& y) {
  std::size_t n = x.size();
  IntMatrix out(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (x[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[k][j] == 0) continue;
        out[i][j] = checked_add(out[i][j], checked_mul(x[i][k], y[k][j]));
      }
    }
  }
  return out;
}

}  // namespace

std::int64_t integer_trace_power(const Eigen::MatrixXi& m, int k) {
  if (k < 1) throw ConfigError("walk length must be at least 1");
  if (m.rows() != m.cols()) throw ConfigError("trace power needs a square matrix");
  std::size_t n = static_cast<std::size_t>(m.rows());
  IntMatrix base(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) base[i][j] = m(static_cast<int>(i), static_cast<int>(j));
  }
  IntMatrix power = base;
  for (int step = 1; step < k; ++step) power = checked_product(power, base);
  std::int64_t trace = 0;
  for (std::size_t i = 0; i < n; ++i) trace = checked_add(trace, power[i][i]);
  return trace;
}

std::int64_t closed_walk_count(const Graph& g, int k) {
  return integer_trace_power(g.adjacency_matrix(), k);
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  int d = g.vertex_count();
  std::vector<int> label(static_cast<std::size_t>(d) + 1, -1);
  std::vector<std::vector<int>> blocks;
  for (int start = 1; start <= d; ++start) {
    if (label[start] >= 0) continue;
    int id = static_cast<int>(blocks.size());
    blocks.emplace_back();
    std::deque<int> queue{start};
    label[start] = id;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      blocks[id].push_back(u);
      for (int v : g.neighbors(u)) {
        if (label[v] < 0) {
          label[v] = id;
          queue.push_back(v);
        }
      }
    }
    std::sort(blocks[id].begin(), blocks[id].end());
  }
  return blocks;
}

int component_count(const Graph& g) {
  return static_cast<int>(connected_components(g).size());
}

EdgeWeights::EdgeWeights(int d) : d_(d) {
  if (d < 1) throw ConfigError("edge weights need a positive vertex count");
  values_.assign(static_cast<std::size_t>(d) * (d - 1) / 2, 0.0);
}

EdgeWeights EdgeWeights::from_matrix_abs(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw ConfigError("weight matrix must be square");
  EdgeWeights w(static_cast<int>(m.rows()));
  for (int u = 1; u <= w.d_; ++u) {
    for (int v = u + 1; v <= w.d_; ++v) w.set(u, v, std::abs(m(u - 1, v - 1)));
  }
  return w;
}

std::size_t EdgeWeights::index(int u, int v) const {
  if (u < 1 || v < 1 || u > d_ || v > d_ || u == v) {
    throw ConfigError("edge weight index out of range");
  }
  int a = std::min(u, v) - 1;
  int b = std::max(u, v) - 1;
  // row-packed upper triangle
  return static_cast<std::size_t>(a) * (2 * d_ - a - 1) / 2 + (b - a - 1);
}

double EdgeWeights::at(int u, int v) const { return values_[index(u, v)]; }

void EdgeWeights::set(int u, int v, double w) {
  if (!(w >= 0.0)) throw ConfigError("edge weights must be nonnegative");
  values_[index(u, v)] = w;
}

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n) + 1) {
    for (int i = 0; i <= n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

// better edge under (weight desc, lexicographic asc)
bool weight_order_before(double wa, const Edge& ea, double wb, const Edge& eb) {
  if (wa != wb) return wa > wb;
  return ea < eb;
}

std::vector<std::pair<double, Edge>> complete_graph_by_weight(const EdgeWeights& w, int d) {
  std::vector<std::pair<double, Edge>> order;
  order.reserve(static_cast<std::size_t>(d) * (d - 1) / 2);
  for (int u = 1; u <= d; ++u) {
    for (int v = u + 1; v <= d; ++v) order.push_back({w.at(u, v), Edge{u, v}});
  }
  std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    return weight_order_before(x.first, x.second, y.first, y.second);
  });
  return order;
}

}  // namespace

EdgeSet max_spanning_tree(const EdgeWeights& w, int d) {
  if (d < 2) throw ConfigError("spanning tree needs at least 2 vertices");
  if (w.vertex_count() < d) throw ConfigError("weights cover fewer vertices than requested");
  std::vector<bool> in_tree(static_cast<std::size_t>(d) + 1, false);
  std::vector<double> best(static_cast<std::size_t>(d) + 1, -1.0);
  std::vector<Edge> best_edge(static_cast<std::size_t>(d) + 1);
  in_tree[1] = true;
  for (int v = 2; v <= d; ++v) {
    best[v] = w.at(1, v);
    best_edge[v] = make_edge(1, v);
  }
  EdgeSet tree;
  for (int step = 1; step < d; ++step) {
    int pick = -1;
    for (int v = 2; v <= d; ++v) {
      if (in_tree[v]) continue;
      if (pick < 0 || weight_order_before(best[v], best_edge[v], best[pick], best_edge[pick])) {
        pick = v;
      }
    }
    tree.push_back(best_edge[pick]);
    in_tree[pick] = true;
    for (int v = 2; v <= d; ++v) {
      if (in_tree[v]) continue;
      double cand = w.at(pick, v);
      Edge cand_edge = make_edge(pick, v);
      if (cand > best[v] || (cand == best[v] && cand_edge < best_edge[v])) {
        best[v] = cand;
        best_edge[v] = cand_edge;
      }
    }
  }
  return make_edge_set(std::move(tree));
}

EdgeSet max_spanning_forest(const EdgeWeights& w, int d, int m) {
  if (m < 1 || m > d) throw ConfigError("forest component count out of range");
  if (m == d) return {};
  EdgeSet tree = max_spanning_tree(w, d);
  std::vector<std::pair<double, Edge>> order;
  order.reserve(tree.size());
  for (const auto& e : tree) order.push_back({w.at(e.a, e.b), e});
  std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    return weight_order_before(x.first, x.second, y.first, y.second);
  });
  EdgeSet kept;
  for (int i = 0; i < d - m; ++i) kept.push_back(order[static_cast<std::size_t>(i)].second);
  return make_edge_set(std::move(kept));
}

namespace {

// All simple paths starting at `from` using at most max_len edges, never
// touching `banned`. Paths are returned as vertex sequences starting at
// `from`, grouped by edge count.
void enumerate_paths(const std::vector<std::vector<int>>& adj, int from, int banned, int max_len,
                     std::vector<int>& current, std::vector<bool>& used,
                     std::vector<std::vector<std::vector<int>>>& by_length) {
  int len = static_cast<int>(current.size()) - 1;
  by_length[len].push_back(current);
  if (len == max_len) return;
  for (int next : adj[current.back()]) {
    if (next == banned || used[next]) continue;
    used[next] = true;
    current.push_back(next);
    enumerate_paths(adj, from, banned, max_len, current, used, by_length);
    current.pop_back();
    used[next] = false;
  }
}

// Simple path of exactly m+1 edges through the new edge (u, v), if any;
// returns the candidate with the lexicographically smallest vertex sequence.
std::optional<std::vector<int>> sap_through_edge(const std::vector<std::vector<int>>& adj, int d,
                                                 int u, int v, int m) {
  int want = m + 1;  // total edges
  std::vector<std::vector<std::vector<int>>> from_u(want), from_v(want);
  std::vector<bool> used(static_cast<std::size_t>(d) + 1, false);
  std::vector<int> current;
  used[u] = true;
  current = {u};
  enumerate_paths(adj, u, v, want - 1, current, used, from_u);
  used[u] = false;
  used[v] = true;
  current = {v};
  enumerate_paths(adj, v, u, want - 1, current, used, from_v);
  used[v] = false;

  std::optional<std::vector<int>> best;
  for (int lu = 0; lu < want; ++lu) {
    int lv = want - 1 - lu;
    for (const auto& pu : from_u[lu]) {
      for (const auto& pv : from_v[lv]) {
        bool disjoint = true;
        for (int x : pu) {
          for (int y : pv) {
            if (x == y) {
              disjoint = false;
              break;
            }
          }
          if (!disjoint) break;
        }
        if (!disjoint) continue;
        // sequence pu reversed, then pv: runs far(u)-...-u-v-...-far(v)
        std::vector<int> seq(pu.rbegin(), pu.rend());
        seq.insert(seq.end(), pv.begin(), pv.end());
        std::vector<int> rev(seq.rbegin(), seq.rend());
        if (rev < seq) seq = rev;
        if (!best || seq < *best) best = seq;
      }
    }
  }
  return best;
}

}  // namespace

std::optional<EdgeSet> greedy_structure_search(const EdgeWeights& w, int d,
                                               const StructureTarget& target) {
  switch (target.kind) {
    case StructureKind::cycle:
      if (d < 3) throw ConfigError("cycle search needs d >= 3");
      break;
    case StructureKind::triangle:
      if (d < 3) throw ConfigError("triangle search needs d >= 3");
      break;
    case StructureKind::sap:
      if (target.param < 1) throw ConfigError("sap target needs m >= 1");
      if (d < target.param + 2) throw ConfigError("sap(m) search needs d >= m + 2");
      break;
    case StructureKind::degree:
      if (target.param < 1) throw ConfigError("degree target needs s0 >= 1");
      if (d < target.param + 2) throw ConfigError("degree(s0) search needs d >= s0 + 2");
      break;
  }

  auto order = complete_graph_by_weight(w, d);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(d) + 1);
  DisjointSets sets(d);
  std::vector<std::vector<int>> parent_edges;  // adjacency doubles as inserted-edge record

  for (const auto& [weight, e] : order) {
    int u = e.a, v = e.b;
    bool closes_cycle = (sets.find(u) == sets.find(v));
    if (target.kind == StructureKind::cycle && closes_cycle) {
      // unique cycle: path u..v in the current forest plus the new edge
      std::vector<int> prev(static_cast<std::size_t>(d) + 1, 0);
      std::deque<int> queue{u};
      prev[u] = u;
      while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        if (x == v) break;
        for (int y : adj[x]) {
          if (prev[y] == 0) {
            prev[y] = x;
            queue.push_back(y);
          }
        }
      }
      EdgeSet cycle{e};
      for (int x = v; x != u; x = prev[x]) cycle.push_back(make_edge(x, prev[x]));
      return make_edge_set(std::move(cycle));
    }
    sets.unite(u, v);
    adj[u].push_back(v);
    adj[v].push_back(u);
    std::sort(adj[u].begin(), adj[u].end());
    std::sort(adj[v].begin(), adj[v].end());

    switch (target.kind) {
      case StructureKind::cycle:
        break;
      case StructureKind::triangle: {
        std::vector<int> common;
        std::set_intersection(adj[u].begin(), adj[u].end(), adj[v].begin(), adj[v].end(),
                              std::back_inserter(common));
        if (!common.empty()) {
          int z = common.front();
          return make_edge_set({e, make_edge(u, z), make_edge(v, z)});
        }
        break;
      }
      case StructureKind::sap: {
        auto seq = sap_through_edge(adj, d, u, v, target.param);
        if (seq) {
          EdgeSet path;
          for (std::size_t i = 0; i + 1 < seq->size(); ++i) {
            path.push_back(make_edge((*seq)[i], (*seq)[i + 1]));
          }
          return make_edge_set(std::move(path));
        }
        break;
      }
      case StructureKind::degree: {
        // degrees grow one edge at a time, so == is the first crossing; when
        // both endpoints cross at once the smaller vertex wins
        int threshold = target.param + 1;
        int center = 0;
        if (static_cast<int>(adj[u].size()) == threshold) center = u;
        if (static_cast<int>(adj[v].size()) == threshold && (center == 0 || v < center)) center = v;
        if (center != 0) {
          EdgeSet star;
          for (int nb : adj[center]) star.push_back(make_edge(center, nb));
          return make_edge_set(std::move(star));
        }
        break;
      }
    }
  }
  return std::nullopt;
}

std::vector<int> vertex_buffer(const Graph& g0, const EdgeSet& s, const EdgeSet& t) {
  auto base_support = vertex_support(g0.edges());
  auto vs = vertex_support(s);
  auto vt = vertex_support(t);
  auto base_plus = [&](const std::vector<int>& extra) {
    std::vector<int> out;
    std::set_union(base_support.begin(), base_support.end(), extra.begin(), extra.end(),
                   std::back_inserter(out));
    return out;
  };
  auto left_sup = base_plus(vs);   // V(E0 ∪ s)
  auto right_sup = base_plus(vt);  // V(E0 ∪ t)
  std::vector<int> left, right, out;
  std::set_intersection(left_sup.begin(), left_sup.end(), vt.begin(), vt.end(),
                        std::back_inserter(left));
  std::set_intersection(right_sup.begin(), right_sup.end(), vs.begin(), vs.end(),
                        std::back_inserter(right));
  std::set_union(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(out));
  return out;
}

bool is_connected(const Graph& g) { return component_count(g) == 1; }

bool has_cycle(const Graph& g) {
  DisjointSets sets(g.vertex_count());
  for (const auto& e : g.edges()) {
    if (!sets.unite(e.a, e.b)) return true;
  }
  return false;
}

bool has_triangle(const Graph& g) {
  for (const auto& e : g.edges()) {
    const auto& na = g.neighbors(e.a);
    const auto& nb = g.neighbors(e.b);
    std::vector<int> common;
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(common));
    if (!common.empty()) return true;
  }
  return false;
}

namespace {

// farthest vertex from start inside one tree component, by hop count
std::pair<int, int> farthest_in_tree(const Graph& g, int start) {
  auto hops = bfs_hops(g, start);
  int best_v = start, best_h = 0;
  for (int v = 1; v <= g.vertex_count(); ++v) {
    if (hops[v] > best_h) {
      best_h = hops[v];
      best_v = v;
    }
  }
  return {best_v, best_h};
}

int longest_sap_exhaustive(const Graph& g) {
  int d = g.vertex_count();
  if (d > 24) throw NumericalError("exhaustive longest-path search is limited to d <= 24");
  int best = 0;
  std::vector<bool> used(static_cast<std::size_t>(d) + 1, false);
  std::function<void(int, int)> dfs = [&](int v, int len) {
    best = std::max(best, len);
    for (int nb : g.neighbors(v)) {
      if (!used[nb]) {
        used[nb] = true;
        dfs(nb, len + 1);
        used[nb] = false;
      }
    }
  };
  for (int v = 1; v <= d; ++v) {
    used[v] = true;
    dfs(v, 0);
    used[v] = false;
  }
  return best;
}

}  // namespace

int longest_sap(const Graph& g) {
  if (has_cycle(g)) return longest_sap_exhaustive(g);
  // forest: per-component double sweep gives the diameter
  int best = 0;
  for (const auto& block : connected_components(g)) {
    auto [far_v, _] = farthest_in_tree(g, block.front());
    auto [_v2, diameter] = farthest_in_tree(g, far_v);
    best = std::max(best, diameter);
  }
  return best;
}

bool is_spanning_tree(int d, const EdgeSet& edges) {
  if (static_cast<int>(edges.size()) != d - 1) return false;
  Graph g(d, edges);
  return is_connected(g) && !has_cycle(g);
}

bool is_spanning_forest(int d, int m, const EdgeSet& edges) {
  if (static_cast<int>(edges.size()) != d - m) return false;
  Graph g(d, edges);
  return component_count(g) == m && !has_cycle(g);
}

bool is_simple_cycle(const EdgeSet& edges) {
  if (edges.size() < 3) return false;
  auto support = vertex_support(edges);
  if (support.size() != edges.size()) return false;
  int d = support.back();
  Graph g(d, edges);
  for (int v : support) {
    if (g.degree(v) != 2) return false;
  }
  // degrees all 2 and |E| = |V|: connected iff a single cycle
  auto blocks = connected_components(g);
  int nonisolated = 0;
  for (const auto& b : blocks) {
    if (b.size() > 1) ++nonisolated;
  }
  return nonisolated == 1;
}

bool is_simple_path(const EdgeSet& edges) {
  if (edges.empty()) return false;
  auto support = vertex_support(edges);
  if (support.size() != edges.size() + 1) return false;
  Graph g(support.back(), edges);
  if (has_cycle(g)) return false;
  int endpoints = 0;
  for (int v : support) {
    int deg = g.degree(v);
    if (deg > 2) return false;
    if (deg == 1) ++endpoints;
  }
  if (endpoints != 2) return false;
  // acyclic, |V| = |E| + 1, max degree 2: one path component
  return true;
}

bool is_star(const EdgeSet& edges, int leaves) {
  if (static_cast<int>(edges.size()) != leaves) return false;
  std::map<int, int> deg;
  for (const auto& e : edges) {
    ++deg[e.a];
    ++deg[e.b];
  }
  int centers = 0;
  for (const auto& [v, k] : deg) {
    if (k == leaves) ++centers;
    else if (k != 1) return false;
  }
  return centers == 1 || (leaves == 1 && deg.size() == 2);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "d " << g.vertex_count() << "\n";
  for (const auto& e : g.edges()) out << e.a << " " << e.b << "\n";
}

Graph read_edge_list(std::istream& in) {
  std::string tag;
  int d = 0;
  if (!(in >> tag >> d) || tag != "d") {
    throw ConfigError("edge list must start with a 'd <count>' line");
  }
  EdgeSet edges;
  int a = 0, b = 0;
  while (in >> a >> b) edges.push_back(make_edge(a, b));
  return Graph(d, std::move(edges));
}

}  // namespace graphwise

#include <doctest.h>

#include <sstream>

#include "graphwise/errors.hpp"
#include "graphwise/graph.hpp"
#include "oracles.hpp"

using namespace graphwise;

namespace {

Graph chain(int d) {
  EdgeSet edges;
  for (int j = 1; j < d; ++j) edges.push_back(make_edge(j, j + 1));
  return Graph(d, std::move(edges));
}

// two disjoint 5-cycles on {1..5} and {6..10}
Graph two_five_cycles() {
  EdgeSet edges;
  for (int j = 1; j < 5; ++j) edges.push_back(make_edge(j, j + 1));
  edges.push_back(make_edge(1, 5));
  for (int j = 6; j < 10; ++j) edges.push_back(make_edge(j, j + 1));
  edges.push_back(make_edge(6, 10));
  return Graph(10, std::move(edges));
}

}  // namespace

TEST_CASE("geodesic distance on paths, identity, and across components") {
  CHECK(geodesic_distance(chain(4), 1, 4) == Distance::finite(3));
  CHECK(geodesic_distance(chain(4), 3, 3) == Distance::finite(0));
  auto g = two_five_cycles();
  CHECK(geodesic_distance(g, 1, 8).is_infinite());
  CHECK_THROWS_AS(geodesic_distance(g, 0, 3), ConfigError);
  CHECK_THROWS_AS(geodesic_distance(g, 1, 11), ConfigError);
}

TEST_CASE("the unreachable marker compares above every finite distance") {
  CHECK(Distance::finite(1000000) < Distance::infinity());
  CHECK(Distance::infinity() >= 3.0);
  CHECK(Distance::infinity() == Distance::infinity());
  CHECK_FALSE(Distance::infinity() < Distance::infinity());
  CHECK_THROWS_AS(Distance::infinity().value(), ConfigError);
}

TEST_CASE("edge predistance matches the figure values") {
  auto g = two_five_cycles();
  CHECK(edge_predistance(g, make_edge(1, 6), make_edge(4, 9)) == Distance::finite(2));
  CHECK(edge_predistance(g, make_edge(1, 6), make_edge(1, 6)) == Distance::finite(0));

  // split path: 1-2-3-4-5 with 6, 7 isolated
  EdgeSet edges;
  for (int j = 1; j < 5; ++j) edges.push_back(make_edge(j, j + 1));
  Graph split(7, edges);
  CHECK(edge_predistance(split, make_edge(4, 5), make_edge(6, 7)).is_infinite());
}

TEST_CASE("edge predistance is symmetric and ignores membership") {
  Rng rng(11);
  auto random_edge = [&](Rng& r) {
    int u = static_cast<int>(r.uniform_int(1, 8));
    int v;
    do {
      v = static_cast<int>(r.uniform_int(1, 8));
    } while (v == u);
    return make_edge(u, v);
  };
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = oracles::random_graph(rng, 8, 0.3);
    Edge e = random_edge(rng);
    Edge f = random_edge(rng);
    CHECK(edge_predistance(g, e, f) == edge_predistance(g, f, e));
    Graph with_both = g.with_edges(make_edge_set({e, f}));
    Graph without = g.without_edges(make_edge_set({e, f}));
    CHECK(edge_predistance(with_both, e, f) == edge_predistance(without, e, f));
  }
}

TEST_CASE("edge set predistance reduces to the single-pair form") {
  auto g = two_five_cycles();
  EdgeSet s{make_edge(1, 6)};
  EdgeSet t{make_edge(4, 9)};
  CHECK(edgeset_predistance(g, s, t) == edge_predistance(g, make_edge(1, 6), make_edge(4, 9)));
  CHECK(edgeset_predistance(g, s, s) == Distance::finite(0));
  CHECK_THROWS_AS(edgeset_predistance(g, {}, t), ConfigError);
}

TEST_CASE("edge set predistance equals the pairwise minimum on star blocks") {
  // stars at 1 and 5 with overlapping leaf sets, vertex 14 and 16 shared
  Graph g0 = Graph::empty(18);
  EdgeSet s{make_edge(1, 13), make_edge(1, 14), make_edge(1, 16)};
  EdgeSet t{make_edge(5, 14), make_edge(5, 16), make_edge(5, 18)};
  Distance best = Distance::infinity();
  for (const auto& e : s) {
    for (const auto& f : t) {
      Distance cand = edge_predistance(g0, e, f);
      if (cand < best) best = cand;
    }
  }
  CHECK(edgeset_predistance(g0, s, t) == best);
  CHECK(edgeset_predistance(g0, s, t) == Distance::finite(0));
}

TEST_CASE("closed walk identities") {
  // cycle C_d at k = 2 counts 2d walks, one out-and-back per edge end
  for (int d : {3, 5, 8}) {
    EdgeSet edges;
    for (int j = 1; j < d; ++j) edges.push_back(make_edge(j, j + 1));
    edges.push_back(make_edge(1, d));
    Graph cyc(d, edges);
    CHECK(closed_walk_count(cyc, 2) == 2 * d);
    CHECK(closed_walk_count(cyc, 1) == 0);
  }
  Graph triangle(3, {make_edge(1, 2), make_edge(1, 3), make_edge(2, 3)});
  CHECK(closed_walk_count(triangle, 3) == oracles::enumerate_closed_walks(triangle, 3));
  CHECK(closed_walk_count(triangle, 3) == 6);
}

TEST_CASE("walk counts agree with exhaustive enumeration on small graphs") {
  Rng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    int d = 3 + static_cast<int>(rng.uniform_int(0, 5));
    Graph g = oracles::random_graph(rng, d, 0.45);
    for (int k = 1; k <= 6; ++k) {
      CHECK(closed_walk_count(g, k) == oracles::enumerate_closed_walks(g, k));
    }
  }
}

TEST_CASE("walk count overflow is detected") {
  EdgeSet edges;
  int d = 40;
  for (int u = 1; u <= d; ++u) {
    for (int v = u + 1; v <= d; ++v) edges.push_back(make_edge(u, v));
  }
  Graph complete(d, edges);
  CHECK_THROWS_AS(closed_walk_count(complete, 14), NumericalError);
}

TEST_CASE("connected components") {
  CHECK(connected_components(Graph::empty(5)).size() == 5);
  CHECK(connected_components(chain(6)).size() == 1);
  // path on 1..5 with 6, 7 isolated: one block of five plus two singletons
  EdgeSet edges;
  for (int j = 1; j < 5; ++j) edges.push_back(make_edge(j, j + 1));
  auto blocks = connected_components(Graph(7, edges));
  REQUIRE(blocks.size() == 3);
  CHECK(blocks[0] == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(blocks[1] == std::vector<int>{6});
  CHECK(blocks[2] == std::vector<int>{7});
}

TEST_CASE("inserting an edge drops the component count by at most one") {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = oracles::random_graph(rng, 9, 0.15);
    int before = component_count(g);
    int u = static_cast<int>(rng.uniform_int(1, 8));
    int v = static_cast<int>(rng.uniform_int(u + 1, 9));
    if (g.has_edge(u, v)) continue;
    int after = component_count(g.with_edges({make_edge(u, v)}));
    CHECK((after == before || after == before - 1));
  }
}

TEST_CASE("maximum spanning tree") {
  EdgeWeights w(3);
  w.set(1, 2, 0.9);
  w.set(2, 3, 0.8);
  w.set(1, 3, 0.5);
  CHECK(max_spanning_tree(w, 3) == make_edge_set({make_edge(1, 2), make_edge(2, 3)}));

  // equal weights: the tie-break yields the lexicographically first tree
  EdgeWeights flat(4);
  for (int u = 1; u <= 4; ++u) {
    for (int v = u + 1; v <= 4; ++v) flat.set(u, v, 1.0);
  }
  CHECK(max_spanning_tree(flat, 4) ==
        make_edge_set({make_edge(1, 2), make_edge(1, 3), make_edge(1, 4)}));

  CHECK_THROWS_AS(max_spanning_tree(w, 1), ConfigError);
}

TEST_CASE("maximum spanning tree matches enumeration over all labeled trees") {
  auto trees = oracles::all_labeled_trees(5);
  REQUIRE(trees.size() == 125);
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    EdgeWeights w(5);
    for (int u = 1; u <= 5; ++u) {
      for (int v = u + 1; v <= 5; ++v) w.set(u, v, rng.uniform());
    }
    auto tree = max_spanning_tree(w, 5);
    CHECK(is_spanning_tree(5, tree));
    double best = 0.0;
    for (const auto& t : trees) best = std::max(best, oracles::edge_set_weight(w, t));
    CHECK(oracles::edge_set_weight(w, tree) == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("maximum spanning forest") {
  EdgeWeights w(5);
  Rng rng(13);
  for (int u = 1; u <= 5; ++u) {
    for (int v = u + 1; v <= 5; ++v) w.set(u, v, rng.uniform());
  }
  CHECK(max_spanning_forest(w, 5, 5).empty());
  CHECK(max_spanning_forest(w, 5, 1) == max_spanning_tree(w, 5));
  for (int m : {2, 3}) {
    auto forest = max_spanning_forest(w, 5, m);
    CHECK(is_spanning_forest(5, m, forest));
    CHECK(oracles::edge_set_weight(w, forest) ==
          doctest::Approx(oracles::best_forest_weight(w, 5, m)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(max_spanning_forest(w, 5, 0), ConfigError);
  CHECK_THROWS_AS(max_spanning_forest(w, 5, 6), ConfigError);
}

TEST_CASE("greedy search stops at the first cycle") {
  EdgeWeights w(3);
  w.set(1, 2, 0.9);
  w.set(2, 3, 0.8);
  w.set(1, 3, 0.5);
  auto cycle = greedy_structure_search(w, 3, {StructureKind::cycle, 0});
  REQUIRE(cycle.has_value());
  CHECK(*cycle == make_edge_set({make_edge(1, 2), make_edge(2, 3), make_edge(1, 3)}));
}

TEST_CASE("greedy search returns the first star of the requested degree") {
  EdgeWeights w(4);
  w.set(1, 2, 0.9);
  w.set(1, 3, 0.8);
  w.set(1, 4, 0.1);
  w.set(2, 3, 0.2);
  w.set(2, 4, 0.15);
  w.set(3, 4, 0.05);
  auto star = greedy_structure_search(w, 4, {StructureKind::degree, 1});
  REQUIRE(star.has_value());
  CHECK(*star == make_edge_set({make_edge(1, 2), make_edge(1, 3)}));
}

TEST_CASE("greedy sap search agrees with an insertion-replay path enumeration") {
  Rng rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    EdgeWeights w(6);
    for (int u = 1; u <= 6; ++u) {
      for (int v = u + 1; v <= 6; ++v) w.set(u, v, rng.uniform());
    }
    const int m = 3;
    auto found = greedy_structure_search(w, 6, {StructureKind::sap, m});
    REQUIRE(found.has_value());
    CHECK(is_simple_path(*found));
    CHECK(found->size() == m + 1);

    // replay insertions; the first step where any (m+1)-path exists must
    // contain the returned path, and earlier steps must have none
    std::vector<std::pair<double, Edge>> order;
    for (int u = 1; u <= 6; ++u) {
      for (int v = u + 1; v <= 6; ++v) order.push_back({w.at(u, v), make_edge(u, v)});
    }
    std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first > y.first;
      return x.second < y.second;
    });
    EdgeSet inserted;
    bool verified = false;
    for (const auto& [weight, e] : order) {
      inserted.push_back(e);
      inserted = make_edge_set(std::move(inserted));
      auto paths = oracles::all_simple_paths(Graph(6, inserted), m + 1);
      if (!paths.empty()) {
        CHECK(std::find(paths.begin(), paths.end(), *found) != paths.end());
        for (const auto& pe : *found) CHECK(edge_set_contains(inserted, pe));
        verified = true;
        break;
      }
    }
    CHECK(verified);
  }
}

TEST_CASE("greedy invariants: cycles are cycles, stars are stars") {
  Rng rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    int d = 5 + static_cast<int>(rng.uniform_int(0, 3));
    EdgeWeights w(d);
    for (int u = 1; u <= d; ++u) {
      for (int v = u + 1; v <= d; ++v) w.set(u, v, rng.uniform());
    }
    auto cycle = greedy_structure_search(w, d, {StructureKind::cycle, 0});
    REQUIRE(cycle.has_value());
    CHECK(is_simple_cycle(*cycle));
    int s0 = 1 + static_cast<int>(rng.uniform_int(0, 2));
    if (d >= s0 + 2) {
      auto star = greedy_structure_search(w, d, {StructureKind::degree, s0});
      REQUIRE(star.has_value());
      CHECK(is_star(*star, s0 + 1));
    }
  }
}

TEST_CASE("greedy search rejects structures the dimension cannot host") {
  EdgeWeights w(2);
  w.set(1, 2, 1.0);
  CHECK_THROWS_AS(greedy_structure_search(w, 2, {StructureKind::triangle, 0}), ConfigError);
  CHECK_THROWS_AS(greedy_structure_search(w, 2, {StructureKind::cycle, 0}), ConfigError);
}

TEST_CASE("vertex buffer of clique and cycle supports") {
  Graph g0 = Graph::empty(10);
  auto clique = [](std::vector<int> vs) {
    EdgeSet out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) out.push_back(make_edge(vs[i], vs[j]));
    }
    return make_edge_set(std::move(out));
  };
  auto s = clique({1, 3, 5, 7, 9});
  auto t = clique({1, 2, 3, 9, 10});
  CHECK(vertex_buffer(g0, s, t) == std::vector<int>{1, 3, 9});

  auto ring = [](std::vector<int> vs) {
    EdgeSet out;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) out.push_back(make_edge(vs[i], vs[i + 1]));
    out.push_back(make_edge(vs.back(), vs.front()));
    return make_edge_set(std::move(out));
  };
  CHECK(vertex_buffer(g0, ring({1, 3, 5, 7, 9}), ring({1, 2, 3, 9, 10})) ==
        std::vector<int>{1, 3, 9});

  CHECK(vertex_buffer(g0, clique({1, 2, 3}), clique({5, 6, 7})).empty());
}

TEST_CASE("edge list serialization round-trips") {
  auto g = two_five_cycles();
  std::stringstream buffer;
  write_edge_list(buffer, g);
  CHECK(buffer.str().substr(0, 5) == "d 10\n");
  Graph back = read_edge_list(buffer);
  CHECK(back.vertex_count() == g.vertex_count());
  CHECK(back.edges() == g.edges());
}

TEST_CASE("structure predicates") {
  CHECK(is_connected(chain(5)));
  CHECK_FALSE(has_cycle(chain(5)));
  CHECK(has_cycle(two_five_cycles()));
  CHECK_FALSE(has_triangle(two_five_cycles()));
  CHECK(longest_sap(chain(6)) == 5);
  Graph split(7, {make_edge(1, 2), make_edge(2, 3), make_edge(5, 6)});
  CHECK(longest_sap(split) == 2);
}

#include <doctest.h>

#include <random>
#include <sstream>

#include "fmlab/structures.hpp"
#include "oracle.hpp"

using namespace fmlab;

namespace {

Structure ternary(int n, std::set<Tuple> r_tuples) {
  Signature sig({{"R", 3}});
  return Structure(sig, n, {{"R", std::move(r_tuples)}});
}

Structure from_graph(const Graph& g) {
  static const Signature sig({{"R", 2}});
  return r_graph_from_graph(g, sig, "R");
}

Graph path_on(int vertices) {
  Graph g(vertices);
  for (int i = 0; i + 1 < vertices; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle_on(int vertices) {
  Graph g = path_on(vertices);
  g.add_edge(vertices - 1, 0);
  return g;
}

Graph two_disjoint_edges() {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  return g;
}

}  // namespace

TEST_CASE("signature invariants are enforced") {
  CHECK_THROWS_AS(Signature({{"R", 0}}), InputError);
  CHECK_THROWS_AS(Signature({{"", 1}}), InputError);
  CHECK_THROWS_AS(Signature({{"R", 2}, {"R", 3}}), InputError);
  CHECK_THROWS_AS(Signature({{"bad name", 1}}), InputError);
  Signature sig = parse_signature("R/3 Q/2");
  CHECK(sig.arity("R") == 3);
  CHECK(sig.arity("Q") == 2);
  CHECK(sig.without("Q").size() == 1);
}

TEST_CASE("structure construction validates relations") {
  Signature sig({{"R", 2}});
  CHECK_THROWS_AS(Structure(sig, 2, {{"S", {}}}), InputError);
  CHECK_THROWS_AS(Structure(sig, 2, {{"R", {{0, 5}}}}), InputError);
  CHECK_THROWS_AS(Structure(sig, 2, {{"R", {{0, 1, 1}}}}), InputError);
  Structure s(sig, 2, {});
  CHECK(s.relation("R").empty());  // missing relation becomes empty
}

TEST_CASE("adjacency follows shared tuple membership") {
  Structure s = ternary(2, {{0, 1, 1}});
  CHECK(adjacent(s, 0, 1));
  CHECK_FALSE(adjacent(s, 0, 0));
  Structure t = ternary(4, {{0, 1, 1}, {2, 3, 3}});
  CHECK_FALSE(adjacent(t, 1, 2));
  CHECK_THROWS_AS(adjacent(t, 0, 9), InputError);
}

TEST_CASE("degree counts distinct neighbors") {
  Structure isolated = ternary(1, {});
  CHECK(degree(isolated, 0) == 0);

  Graph star(4);
  star.add_edge(0, 1);
  star.add_edge(0, 2);
  star.add_edge(0, 3);
  CHECK(degree(from_graph(star), 0) == 3);

  CHECK(degree(from_graph(path_on(2)), 0) == 1);
}

TEST_CASE("distance is a path metric with an infinite value") {
  Structure p3 = from_graph(path_on(3));
  CHECK(distance(p3, 1, 1) == 0);
  CHECK(distance(p3, 0, 2) == 2);
  Structure split = from_graph(two_disjoint_edges());
  CHECK_FALSE(distance(split, 0, 3).has_value());
}

TEST_CASE("distance agrees with the all-pairs oracle and is symmetric") {
  std::mt19937_64 rng(7001);
  Signature sig({{"R", 3}, {"Q", 2}});
  for (int trial = 0; trial < 40; ++trial) {
    Structure s = oracle::random_structure(rng, 12, sig);
    auto d = oracle::floyd_warshall(s);
    for (int a = 0; a < s.size(); ++a) {
      for (int b = 0; b < s.size(); ++b) {
        auto got = distance(s, a, b);
        CHECK(got.value_or(-1) == d[a][b]);
        CHECK(got == distance(s, b, a));
        for (int c = 0; c < s.size(); ++c) {
          if (d[a][c] >= 0 && d[c][b] >= 0) {
            REQUIRE(d[a][b] >= 0);
            CHECK(d[a][b] <= d[a][c] + d[c][b]);
          }
        }
      }
    }
  }
}

TEST_CASE("connectivity and component counting") {
  CHECK(is_connected(from_graph(Graph(1))));
  CHECK(is_connected(ternary(0, {})));
  CHECK_FALSE(is_connected(from_graph(two_disjoint_edges())));
  CHECK(is_connected(from_graph(path_on(5))));

  CHECK(component_count(ternary(0, {})) == 0);
  CHECK(component_count(from_graph(two_disjoint_edges())) == 2);

  std::mt19937_64 rng(7002);
  Signature sig({{"R", 2}});
  for (int trial = 0; trial < 30; ++trial) {
    Structure s = oracle::random_structure(rng, 8, sig);
    auto d = oracle::floyd_warshall(s);
    // reachability oracle: count classes of the finite-distance relation
    std::vector<int> repr;
    for (int v = 0; v < s.size(); ++v) {
      bool fresh = true;
      for (int r : repr) {
        if (d[v][r] >= 0) fresh = false;
      }
      if (fresh) repr.push_back(v);
    }
    CHECK(component_count(s) == static_cast<int>(repr.size()));
    CHECK(is_connected(s) == (component_count(s) <= 1));
  }
}

TEST_CASE("r-connectedness brute-forces removals") {
  CHECK(is_r_connected(from_graph(path_on(5)), 1));
  CHECK_FALSE(is_r_connected(from_graph(path_on(3)), 2));
  CHECK(is_r_connected(from_graph(cycle_on(4)), 2));
  CHECK_FALSE(is_r_connected(from_graph(cycle_on(4)), 3));
  CHECK_THROWS_AS(is_r_connected(from_graph(path_on(2)), 0), InputError);
}

TEST_CASE("cycle detection in both indexings") {
  Structure triangle = from_graph(cycle_on(3));
  CHECK(has_k_cycle(triangle, 4));
  CHECK_FALSE(has_k_cycle(triangle, 3));
  CHECK_FALSE(has_k_cycle(triangle, 5));
  CHECK(has_simple_cycle_of_size(triangle, 3));
  CHECK_FALSE(has_simple_cycle_of_size(triangle, 4));

  Structure square = from_graph(cycle_on(4));
  CHECK(has_k_cycle(square, 5));
  CHECK_FALSE(has_k_cycle(square, 4));

  // trees have no k-cycle for any k
  Graph tree(5);
  tree.add_edge(0, 1);
  tree.add_edge(0, 2);
  tree.add_edge(2, 3);
  tree.add_edge(2, 4);
  Structure t = from_graph(tree);
  for (int k = 3; k <= 8; ++k) CHECK_FALSE(has_k_cycle(t, k));

  CHECK_THROWS_AS(has_k_cycle(t, 2), InputError);
}

TEST_CASE("disjoint union relabels and preserves parts") {
  Structure edge = from_graph(path_on(2));

  auto single = disjoint_union({edge});
  CHECK(single.structure == edge);

  auto pair = disjoint_union({edge, edge});
  CHECK(pair.structure.size() == 4);
  CHECK(pair.structure.relation("R").size() == 4);  // two edges, two tuples each
  CHECK(pair.relabel[0][0] == 0);
  CHECK(pair.relabel[1][0] == 2);

  // sizes add
  Structure p3 = from_graph(path_on(3));
  CHECK(disjoint_union({edge, p3, edge}).structure.size() == 2 + 3 + 2);

  // elements of different parts are never adjacent
  std::mt19937_64 rng(7003);
  Signature sig({{"R", 3}, {"Q", 2}});
  for (int trial = 0; trial < 20; ++trial) {
    Structure a = oracle::random_structure(rng, 5, sig);
    Structure b = oracle::random_structure(rng, 5, sig);
    auto u = disjoint_union({a, b});
    for (int x = 0; x < a.size(); ++x) {
      for (int y = 0; y < b.size(); ++y) {
        CHECK_FALSE(adjacent(u.structure, u.relabel[0][x], u.relabel[1][y]));
      }
    }
  }

  Signature other({{"S", 2}});
  Structure mismatched(other, 1, {});
  CHECK_THROWS_AS(disjoint_union({edge, mismatched}), InputError);
}

TEST_CASE("q-diagonal tagging") {
  Signature sig({{"R", 3}, {"Q", 2}});
  Structure s(sig, 2, {{"R", {{0, 1, 1}}}});
  Structure tagged = add_q_diagonal(s, "Q");
  CHECK(tagged.relation("Q") == std::set<Tuple>{{0, 0}, {1, 1}});
  CHECK(tagged.relation("R") == s.relation("R"));
  CHECK(tagged.relation("Q").size() == static_cast<std::size_t>(s.size()));
  CHECK_THROWS_AS(add_q_diagonal(tagged, "Q"), InputError);
  CHECK_THROWS_AS(add_q_diagonal(s, "S"), InputError);

  // tagging never changes adjacency between distinct elements
  std::mt19937_64 rng(7004);
  for (int trial = 0; trial < 20; ++trial) {
    Structure m = oracle::random_structure(rng, 6, Signature({{"R", 3}}));
    Structure wide(sig, m.size(), {{"R", m.relation("R")}});
    Structure t = add_q_diagonal(wide, "Q");
    for (int a = 0; a < m.size(); ++a) {
      for (int b = 0; b < m.size(); ++b) {
        CHECK(adjacent(wide, a, b) == adjacent(t, a, b));
      }
    }
  }
}

TEST_CASE("r-graph encoding matches the displayed tuple sets") {
  Signature sig({{"R", 3}, {"Q", 2}});
  Graph edge(2);
  edge.add_edge(0, 1);
  Structure enc = r_graph_from_graph(edge, sig, "R");
  CHECK(enc.relation("R") == std::set<Tuple>{{0, 1, 1}, {1, 0, 0}});
  CHECK(enc.relation("Q").empty());
  CHECK(validate_r_graph(enc, "R"));

  Structure empty_enc = r_graph_from_graph(Graph(3), sig, "R");
  for (const auto& [name, tuples] : empty_enc.relations()) {
    CHECK(tuples.empty());
  }

  CHECK(graph_from_r_graph(enc, "R") == edge);
  Signature with_unary({{"R", 2}, {"U", 1}});
  CHECK_THROWS_AS(r_graph_from_graph(edge, with_unary, "U"), InputError);
}

TEST_CASE("r-graph validation rejects broken encodings") {
  Signature sig({{"R", 3}, {"Q", 2}});
  Structure missing_swap(sig, 2, {{"R", {{0, 1, 1}}}});
  CHECK_FALSE(validate_r_graph(missing_swap, "R"));
  CHECK_THROWS_AS(graph_from_r_graph(missing_swap, "R"), InputError);

  Structure bad_shape(sig, 3, {{"R", {{0, 1, 2}, {1, 0, 0}}}});
  CHECK_FALSE(validate_r_graph(bad_shape, "R"));

  Graph edge(2);
  edge.add_edge(0, 1);
  Structure with_q = add_q_diagonal(r_graph_from_graph(edge, sig, "R"), "Q");
  CHECK_FALSE(validate_r_graph(with_q, "R"));
  CHECK_THROWS_AS(graph_from_r_graph(with_q, "R"), InputError);

  Structure loopish(sig, 1, {{"R", {{0, 0, 0}}}});
  CHECK_FALSE(validate_r_graph(loopish, "R"));
}

TEST_CASE("graph and r-graph conversions are mutually inverse, exhaustively") {
  Signature sig({{"R", 2}});
  for (int n = 0; n <= 5; ++n) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    }
    for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
      Graph g(n);
      for (std::size_t b = 0; b < slots.size(); ++b) {
        if (mask & (1u << b)) g.add_edge(slots[b].first, slots[b].second);
      }
      Structure enc = r_graph_from_graph(g, sig, "R");
      CHECK(validate_r_graph(enc, "R"));
      CHECK(enc.relation("R").size() == 2 * g.edges().size());
      CHECK(graph_from_r_graph(enc, "R") == g);
    }
  }
}

TEST_CASE("component count distributes over disjoint union") {
  std::mt19937_64 rng(7005);
  Signature sig({{"R", 2}});
  for (int trial = 0; trial < 20; ++trial) {
    int parts = 1 + static_cast<int>(rng() % 4);
    std::vector<Structure> connected_parts;
    for (int i = 0; i < parts; ++i) {
      // draw random structures until one is connected
      while (true) {
        Structure s = oracle::random_structure(rng, 5, sig);
        if (is_connected(s) && s.size() > 0) {
          connected_parts.push_back(s);
          break;
        }
      }
    }
    CHECK(component_count(disjoint_union(connected_parts).structure) == parts);
  }
}

TEST_CASE("structure text format round-trips and tolerates whitespace") {
  Signature sig({{"R", 3}, {"Q", 2}});
  Structure s(sig, 4, {{"R", {{0, 1, 1}, {1, 0, 0}}}, {"Q", {{2, 2}}}});

  std::string text = to_text(s);
  CHECK(parse_structure(text) == s);
  // canonical serialization is stable
  CHECK(to_text(parse_structure(text)) == text);

  Structure relaxed = parse_structure(
      "# a comment\n"
      "  signature   R/3   Q/2\n"
      "universe 4\n"
      "rel R :  ( 0 , 1 ,1)   (1,0,0)\n"
      "\n"
      "rel Q: (2,2)  # trailing comment\n");
  CHECK(relaxed == s);

  CHECK_THROWS_AS(parse_structure("universe 3\n"), InputError);
  CHECK_THROWS_AS(parse_structure("signature R/2\nuniverse 2\nrel S: (0,1)\n"),
                  InputError);
  CHECK_THROWS_AS(
      parse_structure("signature R/2\nuniverse 2\nrel R: (0,1,1)\n"),
      InputError);
  CHECK_THROWS_AS(
      parse_structure("signature R/2\nuniverse 2\nrel R: (0,9)\n"),
      InputError);
}

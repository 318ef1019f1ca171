#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "mpcgraph/generators.hpp"
#include "mpcgraph/graph.hpp"

using namespace mpcgraph;

TEST_CASE("from_edges canonicalizes, sorts, and dedupes") {
  Graph g = Graph::from_edges(4, {{2, 1}, {1, 2}, {0, 3}, {3, 0}});
  CHECK(g.num_edges() == 2);
  CHECK(g.edges()[0] == Edge{0, 3});
  CHECK(g.edges()[1] == Edge{1, 2});
  CHECK(g.degree(1) == 1);
  CHECK(g.has_edge(2, 1));
  CHECK(!g.has_edge(0, 1));
  CHECK(g.edge_id(1, 2).value() == 1);
  CHECK(!g.edge_id(0, 2).has_value());
  validate(g);
}

TEST_CASE("from_edges rejects self-loops and out-of-range ids") {
  CHECK_THROWS_AS(Graph::from_edges(3, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), std::invalid_argument);
}

TEST_CASE("neighbors are sorted and symmetric") {
  Graph g = Graph::from_edges(5, {{0, 4}, {0, 1}, {0, 2}, {2, 4}});
  auto nb = g.neighbors(0);
  REQUIRE(nb.size() == 3);
  CHECK(nb[0] == 1);
  CHECK(nb[1] == 2);
  CHECK(nb[2] == 4);
  CHECK(g.max_degree() == 3);
  validate(g);
}

TEST_CASE("edge list loader remaps ids by first appearance") {
  std::istringstream in("# comment line\n5 7\n7 9\n\n9 5\n");
  LoadedGraph lg = load_edge_list(in);
  CHECK(lg.graph.num_vertices() == 3);
  CHECK(lg.graph.num_edges() == 3);
  REQUIRE(lg.original_id.size() == 3);
  CHECK(lg.original_id[0] == 5);
  CHECK(lg.original_id[1] == 7);
  CHECK(lg.original_id[2] == 9);
}

TEST_CASE("edge list loader rejects malformed input with line numbers") {
  auto expect_line = [](const char* text, size_t line) {
    std::istringstream in(text);
    try {
      load_edge_list(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
    }
  };
  expect_line("1 2\n3\n", 2);
  expect_line("1 2 3\n", 1);
  expect_line("1 2\n4 4\n", 2);
  expect_line("a b\n", 1);
}

TEST_CASE("induced subgraph relabels densely and keeps isolated vertices") {
  Graph tri = Graph::from_edges(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  InducedGraph sub = induced_subgraph(tri, {0, 2, 3});
  CHECK(sub.graph.num_vertices() == 3);
  CHECK(sub.graph.num_edges() == 2);
  CHECK(sub.origin == std::vector<VertexId>{0, 2, 3});
  CHECK(sub.graph.has_edge(0, 1));  // 0-2 in the parent
  CHECK(sub.graph.has_edge(1, 2));  // 2-3 in the parent

  InducedGraph lone = induced_subgraph(tri, {3});
  CHECK(lone.graph.num_vertices() == 1);
  CHECK(lone.graph.num_edges() == 0);
  CHECK_THROWS_AS(induced_subgraph(tri, {9}), std::invalid_argument);
}

TEST_CASE("generators: fixed shapes") {
  Graph star = gen_star(6);
  CHECK(star.num_edges() == 5);
  CHECK(star.degree(0) == 5);
  CHECK(star.max_degree() == 5);

  Graph k5 = gen_complete(5);
  CHECK(k5.num_edges() == 10);

  Graph dis = gen_disjoint_edges(7);
  CHECK(dis.num_vertices() == 14);
  CHECK(dis.num_edges() == 7);
  CHECK(dis.max_degree() == 1);
}

TEST_CASE("gnp: determinism, extremes, and edge-count concentration") {
  Graph a = gen_gnp(300, 0.02, 42);
  Graph b = gen_gnp(300, 0.02, 42);
  CHECK(a.edges() == b.edges());
  validate(a);

  CHECK(gen_gnp(100, 0.0, 1).num_edges() == 0);
  CHECK(gen_gnp(10, 1.0, 1).num_edges() == 45);
  CHECK_THROWS_AS(gen_gnp(10, 1.5, 1), std::invalid_argument);

  // Edge count within 4 sigma of Binomial(C(n,2), p), both sampling regimes.
  for (double p : {0.005, 0.5}) {
    const double pairs = 1000.0 * 999.0 / 2.0;
    double mean = pairs * p, sigma = std::sqrt(pairs * p * (1 - p));
    double got = static_cast<double>(gen_gnp(1000, p, 7).num_edges());
    CHECK(std::fabs(got - mean) < 4.0 * sigma);
  }
}

TEST_CASE("powerlaw generator yields a simple graph with heavy head") {
  Graph g = gen_powerlaw(2000, 2.5, 11);
  validate(g);
  CHECK(g.num_vertices() == 2000);
  CHECK(g.num_edges() > 0);
  // Chung-Lu weights are decreasing in the vertex id, so early vertices
  // should dominate the degree sequence.
  CHECK(g.degree(0) > g.max_degree() / 2);
}

TEST_CASE("generator spec grammar") {
  CHECK(parse_gen_spec("gnp:50,0.1", 3).num_vertices() == 50);
  CHECK(parse_gen_spec("star:9", 0).num_edges() == 8);
  CHECK(parse_gen_spec("complete:6", 0).num_edges() == 15);
  CHECK(parse_gen_spec("disjoint_edges:4", 0).num_vertices() == 8);
  CHECK(parse_gen_spec("powerlaw:100,2.5", 5).num_vertices() == 100);
  CHECK_THROWS_AS(parse_gen_spec("ring:4", 0), std::invalid_argument);
  CHECK_THROWS_AS(parse_gen_spec("gnp:50", 0), std::invalid_argument);
  CHECK_THROWS_AS(parse_gen_spec("gnp", 0), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <vector>

#include "mpcgraph/generators.hpp"
#include "mpcgraph/oracles.hpp"
#include "mpcgraph/rng.hpp"
#include "mpcgraph/rounding.hpp"

using namespace mpcgraph;

namespace {

Graph petersen() {
  std::vector<Edge> es;
  for (VertexId i = 0; i < 5; ++i) {
    es.push_back({i, (i + 1) % 5});                  // outer cycle
    es.push_back({i, i + 5});                        // spokes
    es.push_back({5 + i, 5 + ((i + 2) % 5)});        // inner pentagram
  }
  return Graph::from_edges(10, es);
}

void check_witness(const Graph& g, const ExactMatchingResult& r) {
  CHECK(r.witness.size() == r.value);
  CHECK(verify_matching(g, {r.witness}).ok);
}

}  // namespace

TEST_CASE("exact matcher on small fixed graphs") {
  Graph empty = Graph::from_edges(5, {});
  CHECK(exact_max_matching(empty).value == 0);

  Graph one = Graph::from_edges(2, {{0, 1}});
  CHECK(exact_max_matching(one).value == 1);

  Graph k4 = gen_complete(4);
  ExactMatchingResult r4 = exact_max_matching(k4);
  CHECK(r4.value == 2);
  CHECK(r4.method == "bitmask-dp");
  check_witness(k4, r4);

  Graph c5 = gen_cycle(5);
  ExactMatchingResult r5 = exact_max_matching(c5);
  CHECK(r5.value == 2);
  check_witness(c5, r5);

  ExactMatchingResult rp = exact_max_matching(petersen());
  CHECK(rp.value == 5);  // perfect matching exists
  check_witness(petersen(), rp);
}

TEST_CASE("dp and augmenting-path matchers agree on random bipartite graphs") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    VertexId left = 2 + static_cast<VertexId>(rng.next_below(10));
    VertexId right = 2 + static_cast<VertexId>(rng.next_below(12));
    VertexId n = left + right;
    REQUIRE(n <= 24);
    std::vector<Edge> es;
    for (VertexId a = 0; a < left; ++a)
      for (VertexId b = left; b < n; ++b)
        if (rng.next_u01() < 0.3) es.push_back({a, b});
    Graph g = Graph::from_edges(n, es);
    ExactMatchingResult dp = detail::bitmask_dp_matching(g);
    std::vector<int8_t> side = detail::bipartition(g);
    REQUIRE(!side.empty());
    ExactMatchingResult hk = detail::hopcroft_karp(g, side);
    CHECK(dp.value == hk.value);
    check_witness(g, dp);
    check_witness(g, hk);
  }
}

TEST_CASE("big bipartite inputs take the augmenting-path route") {
  SplitMix64 rng(4);
  std::vector<Edge> es;
  for (VertexId a = 0; a < 40; ++a)
    for (VertexId b = 40; b < 80; ++b)
      if (rng.next_u01() < 0.1) es.push_back({a, b});
  Graph g = Graph::from_edges(80, es);
  ExactMatchingResult r = exact_max_matching(g);
  CHECK(r.method == "bipartite-augmenting");
  check_witness(g, r);
  CHECK(r.value >= greedy_maximal_matching(g, [] {
          std::vector<VertexId> o(80);
          std::iota(o.begin(), o.end(), 0);
          return o;
        }()).size());
}

TEST_CASE("non-bipartite graphs beyond the dp limit are rejected") {
  std::vector<Edge> es;
  for (VertexId i = 0; i < 25; ++i) es.push_back({i, (i + 1) % 25});  // odd cycle
  Graph g = Graph::from_edges(25, es);
  CHECK_THROWS_AS(exact_max_matching(g), std::invalid_argument);
}

TEST_CASE("greedy matcher is deterministic, maximal, and order-sensitive") {
  Graph p4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  std::vector<size_t> ends = greedy_maximal_matching(p4, {0, 3, 1, 2});
  std::vector<size_t> mid = greedy_maximal_matching(p4, {2, 0, 1, 3});
  CHECK(ends.size() == 2);  // takes {0,1} then {2,3}
  CHECK(mid.size() == 1);   // vertex 2 grabs {1,2}, isolating both path ends
  CHECK(verify_matching(p4, {ends}, true).ok);
  CHECK(verify_matching(p4, {mid}, true).ok);
  CHECK(greedy_maximal_matching(p4, {0, 3, 1, 2}) == ends);
  CHECK_THROWS_AS(greedy_maximal_matching(p4, {0, 1}), std::invalid_argument);
}

TEST_CASE("matching size is a vertex cover lower bound") {
  CHECK(vc_lower_bound(gen_star(6)) == 1);
  CHECK(vc_lower_bound(gen_complete(3)) == 1);
  CHECK(vc_lower_bound(gen_disjoint_edges(7)) == 7);
  Graph g = gen_gnp(100, 0.05, 2);
  CHECK(vc_lower_bound(g) <= g.num_vertices() / 2);
}

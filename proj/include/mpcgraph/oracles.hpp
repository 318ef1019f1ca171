#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpcgraph/graph.hpp"

// Independent reference implementations used to check the distributed
// algorithms: exact maximum matching (bitmask DP for tiny graphs,
// augmenting paths for bipartite graphs), greedy maximal matching for a
// given vertex order, and a matching-based vertex cover lower bound.

namespace mpcgraph {

struct ExactMatchingResult {
  size_t value = 0;
  std::vector<size_t> witness;  // edge ids forming a maximum matching
  std::string method;           // "bitmask-dp" or "bipartite-augmenting"
};

namespace detail {

// Two-coloring; returns empty if an odd cycle exists.
inline std::vector<int8_t> bipartition(const Graph& g) {
  std::vector<int8_t> side(g.num_vertices(), -1);
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (VertexId u : g.neighbors(v)) {
        if (side[u] == -1) {
          side[u] = static_cast<int8_t>(1 - side[v]);
          stack.push_back(u);
        } else if (side[u] == side[v]) {
          return {};
        }
      }
    }
  }
  return side;
}

inline ExactMatchingResult bitmask_dp_matching(const Graph& g) {
  const VertexId n = g.num_vertices();
  std::vector<uint32_t> nbr(n, 0);
  for (const Edge& e : g.edges()) {
    nbr[e.u] |= 1u << e.v;
    nbr[e.v] |= 1u << e.u;
  }
  // best[S] = max matching size within vertex subset S; processed by
  // pairing off the lowest set bit.
  const size_t full = size_t{1} << n;
  std::vector<uint8_t> best(full, 0);
  for (size_t s = 1; s < full; ++s) {
    VertexId v = static_cast<VertexId>(std::countr_zero(s));
    size_t rest = s & (s - 1);
    uint8_t b = best[rest];  // leave v unmatched
    uint32_t avail = nbr[v] & static_cast<uint32_t>(rest);
    while (avail) {
      VertexId u = static_cast<VertexId>(std::countr_zero(avail));
      avail &= avail - 1;
      b = std::max<uint8_t>(b, 1 + best[rest & ~(size_t{1} << u)]);
    }
    best[s] = b;
  }

  ExactMatchingResult out;
  out.method = "bitmask-dp";
  out.value = best[full - 1];
  size_t s = full - 1;
  while (s) {
    VertexId v = static_cast<VertexId>(std::countr_zero(s));
    size_t rest = s & (s - 1);
    if (best[s] == best[rest]) {
      s = rest;
      continue;
    }
    uint32_t avail = nbr[v] & static_cast<uint32_t>(rest);
    while (avail) {
      VertexId u = static_cast<VertexId>(std::countr_zero(avail));
      avail &= avail - 1;
      if (1 + best[rest & ~(size_t{1} << u)] == best[s]) {
        out.witness.push_back(g.edge_id(v, u).value());
        s = rest & ~(size_t{1} << u);
        break;
      }
    }
  }
  std::sort(out.witness.begin(), out.witness.end());
  return out;
}

inline ExactMatchingResult hopcroft_karp(const Graph& g, const std::vector<int8_t>& side) {
  const VertexId n = g.num_vertices();
  constexpr VertexId kNil = std::numeric_limits<VertexId>::max();
  std::vector<VertexId> match(n, kNil);
  std::vector<uint32_t> dist(n);
  std::vector<VertexId> left;
  for (VertexId v = 0; v < n; ++v)
    if (side[v] == 0 && g.degree(v) > 0) left.push_back(v);

  auto bfs = [&]() {
    std::queue<VertexId> q;
    bool found = false;
    for (VertexId v : left) {
      if (match[v] == kNil) {
        dist[v] = 0;
        q.push(v);
      } else {
        dist[v] = std::numeric_limits<uint32_t>::max();
      }
    }
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (VertexId u : g.neighbors(v)) {
        VertexId w = match[u];
        if (w == kNil) {
          found = true;
        } else if (dist[w] == std::numeric_limits<uint32_t>::max()) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };
  auto dfs = [&](auto&& self, VertexId v) -> bool {
    for (VertexId u : g.neighbors(v)) {
      VertexId w = match[u];
      if (w == kNil || (dist[w] == dist[v] + 1 && self(self, w))) {
        match[v] = u;
        match[u] = v;
        return true;
      }
    }
    dist[v] = std::numeric_limits<uint32_t>::max();
    return false;
  };

  ExactMatchingResult out;
  out.method = "bipartite-augmenting";
  while (bfs()) {
    for (VertexId v : left)
      if (match[v] == kNil && dfs(dfs, v)) ++out.value;
  }
  for (VertexId v : left)
    if (match[v] != kNil) out.witness.push_back(g.edge_id(v, match[v]).value());
  std::sort(out.witness.begin(), out.witness.end());
  return out;
}

}  // namespace detail

// Exact maximum matching. Supported inputs: any graph with at most 24
// vertices, or a bipartite graph of any size; otherwise throws.
inline ExactMatchingResult exact_max_matching(const Graph& g) {
  if (g.num_vertices() <= 24) {
    if (g.num_edges() == 0) return {0, {}, "bitmask-dp"};
    return detail::bitmask_dp_matching(g);
  }
  std::vector<int8_t> side = detail::bipartition(g);
  if (side.empty())
    throw std::invalid_argument(
        "exact_max_matching: graph is non-bipartite and has more than 24 vertices");
  return detail::hopcroft_karp(g, side);
}

// Maximal matching by scanning vertices in the given order and matching
// each to its first available neighbor. Returns edge ids.
inline std::vector<size_t> greedy_maximal_matching(const Graph& g,
                                                   const std::vector<VertexId>& order) {
  if (order.size() != g.num_vertices())
    throw std::invalid_argument("greedy_maximal_matching: order size mismatch");
  std::vector<uint8_t> used(g.num_vertices(), 0);
  std::vector<size_t> out;
  for (VertexId v : order) {
    if (used[v]) continue;
    for (VertexId u : g.neighbors(v)) {
      if (used[u]) continue;
      used[v] = used[u] = 1;
      out.push_back(g.edge_id(v, u).value());
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Any matching is a lower bound on the vertex cover size.
inline size_t vc_lower_bound(const Graph& g) {
  std::vector<VertexId> order(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) order[v] = v;
  return greedy_maximal_matching(g, order).size();
}

}  // namespace mpcgraph

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpcgraph/graph.hpp"
#include "mpcgraph/matching.hpp"
#include "mpcgraph/mpc.hpp"
#include "mpcgraph/rng.hpp"

// From fractional to integral: randomized rounding of a fractional matching
// (each cover vertex proposes an incident edge with probability x_e/10;
// edges whose both endpoints end up with proposal-degree one are kept),
// a space-bounded filtering algorithm for maximal matching, and the
// iterated scheme that combines them into a (2+eps)-approximate maximum
// matching.

namespace mpcgraph {

struct Matching {
  std::vector<size_t> edges;  // edge ids, sorted
};

struct MatchingCheck {
  bool ok = true;
  std::string reason;
};

inline MatchingCheck verify_matching(const Graph& g, const Matching& m,
                                     bool require_maximal = false) {
  std::vector<uint8_t> used(g.num_vertices(), 0);
  for (size_t e : m.edges) {
    if (e >= g.num_edges()) return {false, "edge id out of range"};
    const Edge& ed = g.edges()[e];
    if (used[ed.u] || used[ed.v]) return {false, "shared endpoint"};
    used[ed.u] = used[ed.v] = 1;
  }
  if (require_maximal) {
    for (const Edge& ed : g.edges())
      if (!used[ed.u] && !used[ed.v]) return {false, "not maximal"};
  }
  return {};
}

// One round of proposal rounding. Every vertex of `cover` independently
// proposes one incident edge e with probability x_e/10 (and nothing with
// the remaining probability); an edge is kept iff it is proposed and
// neither endpoint touches any other proposed edge. Requires y(v) <= 1
// on the cover so the proposal probabilities form a sub-distribution.
inline Matching round_matching(const Graph& g, const FractionalMatching& fm,
                               const std::vector<VertexId>& cover, uint64_t seed) {
  if (fm.x.size() != g.num_edges())
    throw std::invalid_argument("round_matching: weight vector size mismatch");
  std::vector<double> y = vertex_weights(g, fm);
  for (VertexId v : cover) {
    if (v >= g.num_vertices()) throw std::invalid_argument("round_matching: vertex out of range");
    if (y[v] > 1.0 + 1e-9)
      throw std::invalid_argument("round_matching: vertex weight above 1 on cover");
  }

  std::vector<size_t> proposed;
  for (VertexId v : cover) {
    double u01 = u01_from_bits(counter_hash(seed, 0x70726f70ULL, v));
    double cum = 0.0;
    for (VertexId u : g.neighbors(v)) {
      size_t e = g.edge_id(v, u).value();
      cum += fm.x[e] / 10.0;
      if (u01 < cum) {
        proposed.push_back(e);
        break;
      }
    }
  }
  std::sort(proposed.begin(), proposed.end());
  proposed.erase(std::unique(proposed.begin(), proposed.end()), proposed.end());

  std::vector<uint32_t> hdeg(g.num_vertices(), 0);
  for (size_t e : proposed) {
    ++hdeg[g.edges()[e].u];
    ++hdeg[g.edges()[e].v];
  }
  Matching out;
  for (size_t e : proposed)
    if (hdeg[g.edges()[e].u] == 1 && hdeg[g.edges()[e].v] == 1) out.edges.push_back(e);
  return out;
}

struct FallbackResult {
  Matching matching;
  RoundTrace trace;
};

// Maximal matching under the per-machine space budget: while the surviving
// edge set does not fit on one machine, greedily match within a uniform
// edge sample and filter out covered edges; finish exactly once it fits.
inline FallbackResult small_matching_fallback(const Graph& g, const MpcConfig& cfg = {},
                                              uint64_t seed = 0) {
  FallbackResult out;
  const VertexId n = g.num_vertices();
  const uint64_t budget = cfg.budget(n);
  // The gathering machine also hosts the n vertex-match flags, so only
  // budget - n words are available for edges.
  const uint64_t room = budget > n ? budget - n : 0;
  if (room == 0 && g.num_edges() > 0)
    throw std::invalid_argument("small_matching_fallback: budget leaves no room for edges");
  std::vector<uint8_t> used(n, 0);
  std::vector<size_t> alive(g.num_edges());
  for (size_t e = 0; e < g.num_edges(); ++e) alive[e] = e;

  SplitMix64 rng(splitmix64(seed ^ 0x66616c6cULL));
  uint64_t phase = 0;
  auto greedy_into = [&](const std::vector<size_t>& pool) {
    for (size_t e : pool) {
      const Edge& ed = g.edges()[e];
      if (!used[ed.u] && !used[ed.v]) {
        used[ed.u] = used[ed.v] = 1;
        out.matching.edges.push_back(e);
      }
    }
  };

  while (true) {
    size_t keep = 0;
    for (size_t e : alive) {
      const Edge& ed = g.edges()[e];
      if (!used[ed.u] && !used[ed.v]) alive[keep++] = e;
    }
    alive.resize(keep);
    if (alive.size() <= room) {
      account_round(out.trace, {alive.size() + n}, cfg, n, phase, "gather");
      greedy_into(alive);
      break;
    }
    // Sample `room` edge slots with replacement; duplicates are harmless
    // to the greedy pass.
    std::vector<size_t> sample(room);
    for (uint64_t i = 0; i < room; ++i) sample[i] = alive[rng.next_below(alive.size())];
    std::sort(sample.begin(), sample.end());
    sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
    account_round(out.trace, {sample.size() + n}, cfg, n, phase, "sample");
    greedy_into(sample);
    ++phase;
  }
  std::sort(out.matching.edges.begin(), out.matching.edges.end());
  out.trace.phase_count = phase + 1;
  return out;
}

namespace detail {

// Translate an edge of a relabeled subgraph back to its id in the input.
inline size_t input_edge_id(const Graph& input, const std::vector<VertexId>& origin,
                            const Edge& e) {
  return input.edge_id(origin[e.u], origin[e.v]).value();
}

}  // namespace detail

struct IteratedMatchingResult {
  Matching matching;  // edge ids in the input graph
  RoundTrace trace;
  uint64_t fractional_iterations = 0;  // iterations that produced progress
};

// Repeatedly: compute a fractional matching with accuracy eps/50, round it
// on the well-covered frozen vertices, remove matched vertices, recurse on
// the residual; after ceil(log_{150/149}(1/eps)) iterations finish the
// leftover with the filtering algorithm. Yields a (2+eps)-approximate
// maximum matching in expectation.
inline IteratedMatchingResult iterated_matching(const Graph& g, double eps, uint64_t seed,
                                                const MpcConfig& cfg = {},
                                                const MatchingKnobs& knobs = {}) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("iterated_matching: eps outside (0, 1)");
  const double sub_eps = eps / 50.0;
  const uint64_t iters = static_cast<uint64_t>(
      std::ceil(std::log(1.0 / eps) / std::log(150.0 / 149.0)));

  IteratedMatchingResult out;
  Graph cur = g;
  std::vector<VertexId> origin(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) origin[v] = v;

  for (uint64_t k = 0; k < iters; ++k) {
    if (cur.num_edges() == 0) break;
    uint64_t sub_seed = counter_hash(seed, 0x69746572ULL, k);
    MpcMatchingResult fr = mpc_fractional_matching(cur, sub_eps, sub_seed, cfg, knobs);
    out.trace.append(fr.trace);

    // Round only on frozen cover vertices that are nearly saturated and
    // still in the working set; drop edge weight touching removed vertices
    // so rounding sees y(v) = the surviving weight <= 1.
    FractionalMatching fx = fr.x;
    for (size_t e = 0; e < cur.num_edges(); ++e) {
      const Edge& ed = cur.edges()[e];
      if (fr.removed[ed.u] || fr.removed[ed.v]) fx.x[e] = 0.0;
    }
    std::vector<VertexId> heavy_frozen;
    for (size_t i = 0; i < fr.cover.members.size(); ++i) {
      VertexId v = fr.cover.members[i];
      if (fr.cover.provenance[i] == CoverReason::kFrozen && !fr.removed[v] &&
          fr.y_final[v] >= 1.0 - 5.0 * sub_eps)
        heavy_frozen.push_back(v);
    }
    Matching local =
        round_matching(cur, fx, heavy_frozen, counter_hash(sub_seed, 0x726f756eULL, k));
    if (!local.edges.empty()) ++out.fractional_iterations;

    std::vector<uint8_t> matched(cur.num_vertices(), 0);
    for (size_t e : local.edges) {
      const Edge& ed = cur.edges()[e];
      out.matching.edges.push_back(detail::input_edge_id(g, origin, ed));
      matched[ed.u] = matched[ed.v] = 1;
    }
    std::vector<VertexId> keep;
    for (VertexId v = 0; v < cur.num_vertices(); ++v)
      if (!matched[v]) keep.push_back(v);
    InducedGraph next = induced_subgraph(cur, keep);
    std::vector<VertexId> next_origin(next.graph.num_vertices());
    for (VertexId v = 0; v < next.graph.num_vertices(); ++v)
      next_origin[v] = origin[next.origin[v]];
    cur = std::move(next.graph);
    origin = std::move(next_origin);
  }

  if (cur.num_edges() > 0) {
    FallbackResult tail = small_matching_fallback(cur, cfg, counter_hash(seed, 0x7461696cULL, 0));
    out.trace.append(tail.trace);
    for (size_t e : tail.matching.edges)
      out.matching.edges.push_back(detail::input_edge_id(g, origin, cur.edges()[e]));
  }
  std::sort(out.matching.edges.begin(), out.matching.edges.end());
  return out;
}

struct BestOfResult {
  Matching matching;
  std::string source;  // "iterated" or "fallback"
  size_t iterated_size = 0;
  size_t fallback_size = 0;
};

// Run both the iterated scheme and the filtering algorithm, verify both,
// and keep the larger matching.
inline BestOfResult best_of(const Graph& g, double eps, uint64_t seed, const MpcConfig& cfg = {},
                            const MatchingKnobs& knobs = {}) {
  IteratedMatchingResult it = iterated_matching(g, eps, seed, cfg, knobs);
  FallbackResult fb = small_matching_fallback(g, cfg, counter_hash(seed, 0x62657374ULL, 1));
  if (!verify_matching(g, it.matching).ok)
    throw std::logic_error("best_of: iterated result is not a matching");
  if (!verify_matching(g, fb.matching, true).ok)
    throw std::logic_error("best_of: fallback result is not a maximal matching");
  BestOfResult out;
  out.iterated_size = it.matching.edges.size();
  out.fallback_size = fb.matching.edges.size();
  if (out.iterated_size >= out.fallback_size) {
    out.matching = std::move(it.matching);
    out.source = "iterated";
  } else {
    out.matching = std::move(fb.matching);
    out.source = "fallback";
  }
  return out;
}

}  // namespace mpcgraph

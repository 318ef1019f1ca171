#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mpcgraph/graph.hpp"
#include "mpcgraph/mpc.hpp"
#include "mpcgraph/rng.hpp"

// Randomized-greedy maximal independent set: the sequential reference and
// its rank-batching MPC simulation. The simulation processes the random
// rank order in growing prefixes, each prefix's induced residual subgraph
// delivered to a single machine, so the output is the greedy MIS of the
// full permutation, exactly.

namespace mpcgraph {

struct RankPermutation {
  std::vector<VertexId> order;    // order[rank] = vertex
  std::vector<uint32_t> rank_of;  // inverse

  static RankPermutation from_seed(VertexId n, uint64_t seed) {
    RankPermutation p;
    p.order.resize(n);
    for (VertexId i = 0; i < n; ++i) p.order[i] = i;
    SplitMix64 rng(seed);
    for (VertexId i = n; i > 1; --i) {
      uint64_t j = rng.next_below(i);
      std::swap(p.order[i - 1], p.order[j]);
    }
    p.fill_ranks();
    return p;
  }

  static RankPermutation from_order(std::vector<VertexId> order) {
    RankPermutation p;
    p.order = std::move(order);
    p.fill_ranks();
    return p;
  }

  void fill_ranks() {
    rank_of.assign(order.size(), UINT32_MAX);
    for (uint32_t r = 0; r < order.size(); ++r) {
      if (order[r] >= order.size() || rank_of[order[r]] != UINT32_MAX)
        throw std::invalid_argument("RankPermutation: not a permutation");
      rank_of[order[r]] = r;
    }
  }
};

struct IndependentSet {
  std::vector<VertexId> members;  // sorted
};

// Greedy in rank order: add a vertex iff none of its neighbors was added.
inline IndependentSet sequential_greedy_mis(const Graph& g, const RankPermutation& pi) {
  if (pi.order.size() != g.num_vertices())
    throw std::invalid_argument("sequential_greedy_mis: permutation size mismatch");
  std::vector<uint8_t> dominated(g.num_vertices(), 0);
  IndependentSet out;
  for (VertexId v : pi.order) {
    if (dominated[v]) continue;
    out.members.push_back(v);
    dominated[v] = 1;
    for (VertexId u : g.neighbors(v)) dominated[u] = 1;
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

// Graph left after greedily processing the first r ranks: vertices neither
// selected nor dominated, with the edges among them.
inline InducedGraph residual_graph(const Graph& g, const RankPermutation& pi, uint32_t r) {
  if (r > g.num_vertices()) throw std::invalid_argument("residual_graph: rank out of range");
  std::vector<uint8_t> dominated(g.num_vertices(), 0);
  for (uint32_t i = 0; i < r; ++i) {
    VertexId v = pi.order[i];
    if (dominated[v]) continue;
    dominated[v] = 1;
    for (VertexId u : g.neighbors(v)) dominated[u] = 1;
  }
  std::vector<VertexId> keep;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (!dominated[v] && pi.rank_of[v] >= r) keep.push_back(v);
  return induced_subgraph(g, keep);
}

struct BatchSchedule {
  double alpha = 0.75;       // rank-prefix exponent: cutoff_i = n / max_degree^(alpha^i)
  uint32_t degree_floor = 0; // finish once residual max degree <= this
  uint64_t fit_cutoff = 0;   // finish once residual edges <= this; 0 = use cfg budget
};

struct MisCheck {
  bool ok = true;
  std::optional<Edge> violating_edge;       // independence failure
  std::optional<VertexId> extendable_vertex;  // maximality failure
};

inline MisCheck verify_mis(const Graph& g, const IndependentSet& is) {
  std::vector<uint8_t> in(g.num_vertices(), 0);
  for (VertexId v : is.members) {
    if (v >= g.num_vertices()) throw std::invalid_argument("verify_mis: vertex out of range");
    in[v] = 1;
  }
  for (const Edge& e : g.edges()) {
    if (in[e.u] && in[e.v]) return {false, e, std::nullopt};
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (in[v]) continue;
    bool covered = false;
    for (VertexId u : g.neighbors(v))
      if (in[u]) {
        covered = true;
        break;
      }
    if (!covered) return {false, std::nullopt, v};
  }
  return {};
}

struct MpcMisResult {
  IndependentSet mis;
  RoundTrace trace;
  uint64_t batch_phases = 0;  // rank batches before the finish round
};

// Rank-batching simulation. Batch i extends the processed prefix to rank
// cutoff_i = n / Delta^(alpha^i) (forced to advance by at least one rank);
// the batch's undecided vertices and their induced residual edges land on
// one machine, which resolves them greedily in rank order. Once the
// residual is small (degree <= degree_floor or edges <= fit_cutoff) the
// whole remainder is delivered to one machine. That finish rule stands in
// for the sparsified low-degree subroutine the full-scale algorithm would
// call here, and is recorded in the trace.
inline MpcMisResult mpc_greedy_mis(const Graph& g, uint64_t seed, const MpcConfig& cfg = {},
                                   const BatchSchedule& sched = {}) {
  const VertexId n = g.num_vertices();
  const RankPermutation pi = RankPermutation::from_seed(n, seed);
  const uint64_t fit_cutoff = sched.fit_cutoff ? sched.fit_cutoff : cfg.budget(n);

  MpcMisResult out;
  std::vector<uint8_t> dominated(n, 0);  // selected-or-dominated
  std::vector<uint8_t> in_mis(n, 0);

  auto process_range = [&](uint32_t rank_lo, uint32_t rank_hi) {
    for (uint32_t r = rank_lo; r < rank_hi; ++r) {
      VertexId v = pi.order[r];
      if (dominated[v]) continue;
      in_mis[v] = 1;
      dominated[v] = 1;
      for (VertexId u : g.neighbors(v)) dominated[u] = 1;
    }
  };

  // Residual load (undecided vertices + edges among them) and max degree.
  auto residual_stats = [&](uint64_t& verts, uint64_t& edges, uint32_t& maxdeg) {
    verts = edges = 0;
    maxdeg = 0;
    std::vector<uint32_t> deg(n, 0);
    for (const Edge& e : g.edges()) {
      if (!dominated[e.u] && !dominated[e.v]) {
        ++edges;
        ++deg[e.u];
        ++deg[e.v];
      }
    }
    for (VertexId v = 0; v < n; ++v) {
      if (!dominated[v]) {
        ++verts;
        maxdeg = std::max(maxdeg, deg[v]);
      }
    }
  };

  const double delta = std::max<double>(2.0, g.max_degree());
  double exponent = sched.alpha;
  uint32_t processed = 0;

  while (processed < n) {
    uint64_t rverts, redges;
    uint32_t rmaxdeg;
    residual_stats(rverts, redges, rmaxdeg);
    if (rmaxdeg <= sched.degree_floor || redges <= fit_cutoff) {
      // Finish: the remainder goes to a single machine.
      process_range(processed, n);
      processed = n;
      account_round(out.trace, {rverts + redges}, cfg, n, out.batch_phases, "finish");
      out.trace.substitutions.push_back(
          "low-degree residual finished on one machine (batching stopped at degree<=" +
          std::to_string(sched.degree_floor) + " or edges<=" + std::to_string(fit_cutoff) + ")");
      break;
    }

    uint32_t cutoff = static_cast<uint32_t>(
        std::min<double>(n, std::floor(static_cast<double>(n) / std::pow(delta, exponent))));
    cutoff = std::max(cutoff, processed + 1);  // always advance
    cutoff = std::min(cutoff, n);
    exponent *= sched.alpha;

    // Load of the hosting machine: batch's undecided vertices + induced
    // residual edges among them.
    uint64_t batch_verts = 0, batch_edges = 0;
    {
      std::vector<uint8_t> in_batch(n, 0);
      for (uint32_t r = processed; r < cutoff; ++r) {
        VertexId v = pi.order[r];
        if (!dominated[v]) {
          in_batch[v] = 1;
          ++batch_verts;
        }
      }
      for (uint32_t r = processed; r < cutoff; ++r) {
        VertexId v = pi.order[r];
        if (!in_batch[v]) continue;
        for (VertexId u : g.neighbors(v))
          if (in_batch[u]) ++batch_edges;
      }
      batch_edges /= 2;
    }
    account_round(out.trace, {batch_verts + batch_edges}, cfg, n, out.batch_phases, "batch");
    ++out.batch_phases;

    process_range(processed, cutoff);
    processed = cutoff;
  }

  out.trace.phase_count = out.batch_phases;
  for (VertexId v = 0; v < n; ++v)
    if (in_mis[v]) out.mis.members.push_back(v);
  return out;
}

}  // namespace mpcgraph

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "mpcgraph/graph.hpp"
#include "mpcgraph/mpc.hpp"
#include "mpcgraph/rng.hpp"

// Fractional maximum matching and vertex cover by multiplicative weight
// growth with freezing, in three flavors:
//
//  * sequential_matching            -- fixed freeze threshold 1 - 2*eps
//  * sequential_matching_randomized -- per-(vertex, iteration) random
//                                      thresholds in [1-4*eps, 1-2*eps]
//  * mpc_fractional_matching        -- phase-structured simulation of the
//                                      randomized algorithm on m = ceil(sqrt(d))
//                                      machines with vertex partitioning
//
// All three share the weight law: every edge active at iteration t has
// weight w_t = w0 / (1-eps)^t, and an edge's final weight is w_{t'} where
// t' is the last iteration in which both endpoints were active. Vertices
// whose weight crosses their threshold freeze, and the frozen set is the
// vertex cover.

namespace mpcgraph {

struct FractionalMatching {
  std::vector<double> x;  // indexed by edge id
};

// y(v) = sum of incident edge weights.
inline std::vector<double> vertex_weights(const Graph& g, const FractionalMatching& fm) {
  std::vector<double> y(g.num_vertices(), 0.0);
  for (size_t e = 0; e < g.num_edges(); ++e) {
    y[g.edges()[e].u] += fm.x[e];
    y[g.edges()[e].v] += fm.x[e];
  }
  return y;
}

// Sum of y(v) over a vertex set (each edge counts once per listed endpoint).
inline double matching_weight(const Graph& g, const FractionalMatching& fm,
                              const std::vector<VertexId>& over) {
  std::vector<double> y = vertex_weights(g, fm);
  double total = 0.0;
  for (VertexId v : over) total += y[v];
  return total;
}

enum class CoverReason : uint8_t { kFrozen, kRemovedHeavy };

struct VertexCover {
  std::vector<VertexId> members;            // sorted
  std::vector<CoverReason> provenance;      // parallel to members
};

struct CoverCheck {
  bool ok = true;
  std::optional<Edge> uncovered;
};

inline CoverCheck verify_vertex_cover(const Graph& g, const VertexCover& cover) {
  std::vector<uint8_t> in(g.num_vertices(), 0);
  for (VertexId v : cover.members) {
    if (v >= g.num_vertices()) throw std::invalid_argument("verify_vertex_cover: vertex out of range");
    in[v] = 1;
  }
  for (const Edge& e : g.edges())
    if (!in[e.u] && !in[e.v]) return {false, e};
  return {};
}

// Per-(vertex, iteration) freeze thresholds, i.i.d. uniform on
// [1-4*eps, 1-2*eps], realized by counter-mode hashing so the sequential
// reference and the MPC simulation can share one schedule without storing
// it. `constant`, when set, pins every threshold to that value.
struct ThresholdSchedule {
  double eps = 0.0;
  uint64_t seed = 0;
  std::optional<double> constant;

  ThresholdSchedule() = default;
  ThresholdSchedule(double eps, uint64_t seed, std::optional<double> constant = std::nullopt)
      : eps(eps), seed(seed), constant(constant) {
    if (!(eps > 0.0 && eps <= 0.1))
      throw std::invalid_argument("ThresholdSchedule: eps outside (0, 0.1]");
  }

  double lower() const { return 1.0 - 4.0 * eps; }
  double upper() const { return 1.0 - 2.0 * eps; }

  double operator()(VertexId v, int64_t t) const {
    if (constant) return *constant;
    return lower() + u01_from_bits(counter_hash(seed, v, static_cast<uint64_t>(t))) *
                         (upper() - lower());
  }
};

struct SeqMatchingResult {
  FractionalMatching x;
  VertexCover cover;
  int64_t iterations = 0;
  std::vector<int64_t> freeze_iter;  // -1 if never frozen
};

namespace detail {

// Shared sequential loop. threshold(v, t) decides freezing; threshold_floor
// is a lower bound on every threshold, letting the scan skip vertices that
// cannot freeze this iteration without consuming random draws.
template <typename ThresholdFn>
SeqMatchingResult run_sequential(const Graph& g, double eps, double w0, double threshold_floor,
                                 ThresholdFn&& threshold) {
  const VertexId n = g.num_vertices();
  SeqMatchingResult out;
  out.freeze_iter.assign(n, -1);

  std::vector<uint32_t> active_deg(n);
  std::vector<double> yfro(n, 0.0);
  for (VertexId v = 0; v < n; ++v) active_deg[v] = g.degree(v);
  size_t active_edges = g.num_edges();

  std::vector<VertexId> cand;
  for (VertexId v = 0; v < n; ++v)
    if (active_deg[v] > 0) cand.push_back(v);

  auto freeze = [&](VertexId v, int64_t t, double w) {
    out.freeze_iter[v] = t;
    for (VertexId u : g.neighbors(v)) {
      if (out.freeze_iter[u] >= 0) continue;  // edge froze earlier
      yfro[u] += w;
      yfro[v] += w;
      --active_deg[u];
      --active_deg[v];
      --active_edges;
    }
  };

  int64_t t = 0;
  double w = w0;
  const int64_t iter_cap =
      64 + static_cast<int64_t>(std::log(std::max(1.0, 1.0 / w0)) / -std::log1p(-eps));
  std::vector<VertexId> freezing;
  while (active_edges > 0) {
    if (t > iter_cap) throw std::logic_error("matching: iteration cap exceeded");
    freezing.clear();
    size_t keep = 0;
    for (VertexId v : cand) {
      if (out.freeze_iter[v] >= 0) continue;
      cand[keep++] = v;
      double y = w * active_deg[v] + yfro[v];
      if (y >= threshold_floor && y >= threshold(v, t)) freezing.push_back(v);
    }
    cand.resize(keep);
    for (VertexId v : freezing) freeze(v, t, w);
    if (active_edges == 0) break;
    ++t;
    w /= (1.0 - eps);
  }

  out.iterations = t;
  out.x.x.resize(g.num_edges());
  for (size_t e = 0; e < g.num_edges(); ++e) {
    int64_t fu = out.freeze_iter[g.edges()[e].u];
    int64_t fv = out.freeze_iter[g.edges()[e].v];
    int64_t te = std::min(fu < 0 ? t : fu, fv < 0 ? t : fv);
    out.x.x[e] = w0 * std::pow(1.0 / (1.0 - eps), static_cast<double>(te));
  }
  for (VertexId v = 0; v < n; ++v) {
    if (out.freeze_iter[v] >= 0) {
      out.cover.members.push_back(v);
      out.cover.provenance.push_back(CoverReason::kFrozen);
    }
  }
  return out;
}

}  // namespace detail

// Fixed-threshold variant: initial edge weight 1/n, freeze at y >= 1-2*eps.
inline SeqMatchingResult sequential_matching(const Graph& g, double eps) {
  if (!(eps > 0.0 && eps <= 0.1))
    throw std::invalid_argument("sequential_matching: eps outside (0, 0.1]");
  const double thr = 1.0 - 2.0 * eps;
  const double w0 = 1.0 / std::max<double>(1.0, g.num_vertices());
  return detail::run_sequential(g, eps, w0, thr, [&](VertexId, int64_t) { return thr; });
}

// Random-threshold variant. w0 defaults to 1/n; the MPC equivalence tests
// pass (1-2*eps)/n to match the simulation's initialization.
inline SeqMatchingResult sequential_matching_randomized(const Graph& g, double eps,
                                                        const ThresholdSchedule& sched,
                                                        std::optional<double> w0 = std::nullopt) {
  if (!(eps > 0.0 && eps <= 0.1))
    throw std::invalid_argument("sequential_matching_randomized: eps outside (0, 0.1]");
  if (sched.eps != eps)
    throw std::invalid_argument("sequential_matching_randomized: schedule eps mismatch");
  const double w_init = w0 ? *w0 : 1.0 / std::max<double>(1.0, g.num_vertices());
  double floor = sched.constant ? *sched.constant : sched.lower();
  return detail::run_sequential(g, eps, w_init, floor,
                                [&](VertexId v, int64_t t) { return sched(v, t); });
}

struct MatchingKnobs {
  // Degree bound at which phase batching stops and the remaining iterations
  // run one by one. The asymptotic stop (polylog) exceeds n at any feasible
  // scale, which would skip the phase machinery entirely; 64 keeps it
  // exercised. Set to a polylog value explicitly to mimic the asymptotic rule.
  double d_floor = 64.0;
  bool single_machine = false;   // force m = 1 (used by equivalence tests)
  bool check_invariants = true;  // per-phase degree / weight-law assertions
};

struct MpcMatchingResult {
  FractionalMatching x;
  VertexCover cover;
  RoundTrace trace;
  std::vector<int64_t> freeze_iter;  // -1 if never frozen
  std::vector<uint8_t> removed;      // weight exceeded 1; out of the working set
  std::vector<double> y_final;       // per vertex, counting only edges inside V'
  int64_t iterations = 0;
  uint64_t phases = 0;
  double w_m = 0.0;  // sum of y_final over surviving vertices

  // Cover-size certificate |C| <= 2*(1+50*eps)*W_M, checkable post-run.
  bool cover_certificate(double eps) const {
    return static_cast<double>(cover.members.size()) <= 2.0 * (1.0 + 50.0 * eps) * w_m + 1e-9;
  }
};

// Phase-structured MPC simulation of the randomized sequential algorithm.
//
// Each phase: take the active subgraph on the working set V' (degree at
// most d), partition V' over m = ceil(sqrt(d)) machines, and let every
// machine run I iterations locally, estimating vertex weights from its
// induced subgraph scaled by m plus the frozen weight carried in from
// earlier phases. Afterwards d <- d*(1-eps)^I, edge weights are reconciled
// from freeze iterations, vertices whose weight exceeds 1 are removed into
// the cover, and vertices above 1-2*eps are frozen. Once d <= d_floor the
// remaining iterations run globally, one iteration per round.
inline MpcMatchingResult mpc_fractional_matching(const Graph& g, double eps, uint64_t seed,
                                                 const MpcConfig& cfg = {},
                                                 const MatchingKnobs& knobs = {}) {
  if (!(eps > 0.0 && eps <= 0.02))
    throw std::invalid_argument("mpc_fractional_matching: eps outside (0, 1/50]");
  if (knobs.d_floor < 1.0)
    throw std::invalid_argument("mpc_fractional_matching: d_floor must be >= 1");

  const VertexId n = g.num_vertices();
  const double w0 = (1.0 - 2.0 * eps) / std::max<double>(1.0, n);
  const ThresholdSchedule sched(eps, seed);

  MpcMatchingResult out;
  out.freeze_iter.assign(n, -1);
  out.removed.assign(n, 0);

  std::vector<uint8_t> in_vprime(n, 1);
  std::vector<int64_t> last_active(n, -1);
  std::vector<uint32_t> active_deg(n);
  std::vector<double> yfro(n, 0.0), yold(n, 0.0), lfro(n, 0.0);
  std::vector<uint32_t> local_deg(n, 0);
  std::vector<uint16_t> mach(n, 0);
  for (VertexId v = 0; v < n; ++v) active_deg[v] = g.degree(v);

  // Active edge set kept as parallel endpoint arrays; the per-phase scan
  // over it dominates the run time at scale.
  std::vector<uint32_t> pu(g.num_edges()), pv(g.num_edges());
  for (size_t e = 0; e < g.num_edges(); ++e) {
    pu[e] = g.edges()[e].u;
    pv[e] = g.edges()[e].v;
  }
  size_t active_edges = g.num_edges();

  auto& f = out.freeze_iter;
  int64_t t = 0;
  double w = w0;
  double d = static_cast<double>(n);
  const double thr_floor = sched.lower();

  // Freeze v at iteration `t`; every still-active incident edge locks in
  // weight `w`. Inside a phase the machine-local view (local_deg / lfro)
  // tracks only same-machine edges.
  auto freeze = [&](VertexId v, bool in_phase) {
    f[v] = t;
    for (VertexId u : g.neighbors(v)) {
      if (!in_vprime[u] || f[u] >= 0) continue;
      yfro[u] += w;
      yfro[v] += w;
      --active_deg[u];
      --active_deg[v];
      --active_edges;
      if (in_phase && mach[u] == mach[v]) {
        --local_deg[u];
        lfro[u] += w;
        lfro[v] += w;
      }
    }
  };

  // Remove a heavy vertex from V'; its edges stop counting toward anything.
  auto remove_heavy = [&](VertexId v) {
    in_vprime[v] = 0;
    out.removed[v] = 1;
    last_active[v] = f[v] >= 0 ? f[v] : t;
    for (VertexId u : g.neighbors(v)) {
      if (!in_vprime[u]) continue;
      if (f[v] < 0 && f[u] < 0) {
        --active_deg[u];
        --active_deg[v];
        --active_edges;
      } else {
        int64_t te = std::min(f[u] >= 0 ? f[u] : t, f[v] >= 0 ? f[v] : t);
        yfro[u] -= w0 * std::pow(1.0 / (1.0 - eps), static_cast<double>(te));
      }
    }
  };

  std::vector<VertexId> cand;  // unfrozen members of V' with any weight potential
  for (VertexId v = 0; v < n; ++v)
    if (active_deg[v] > 0) cand.push_back(v);

  std::vector<VertexId> freezing, removing;
  std::vector<uint64_t> eload, vcount;

  // ---- Phase loop ----
  while (d > knobs.d_floor && active_edges > 0) {
    const uint64_t phase = out.phases;
    // Compact to the current active edge set (drops frozen/removed); a
    // no-op unless the previous phase actually froze or removed something.
    if (pu.size() != active_edges) {
      size_t keep = 0;
      for (size_t i = 0; i < pu.size(); ++i) {
        VertexId a = pu[i], b = pv[i];
        if (in_vprime[a] && in_vprime[b] && f[a] < 0 && f[b] < 0) {
          pu[keep] = a;
          pv[keep] = b;
          ++keep;
        }
      }
      pu.resize(keep);
      pv.resize(keep);
    }

    size_t ck = 0;
    uint32_t max_active_deg = 0;
    double max_yfro = 0.0;
    for (VertexId v : cand) {
      if (!in_vprime[v] || f[v] >= 0) continue;
      cand[ck++] = v;
      max_active_deg = std::max(max_active_deg, active_deg[v]);
      max_yfro = std::max(max_yfro, yfro[v]);
    }
    cand.resize(ck);

    if (knobs.check_invariants && static_cast<double>(max_active_deg) > d * (1.0 + 1e-9))
      throw std::logic_error("mpc_fractional_matching: active degree exceeds d");

    const uint32_t m =
        knobs.single_machine ? 1u : static_cast<uint32_t>(std::ceil(std::sqrt(d)));
    const int64_t iters =
        std::max<int64_t>(1, static_cast<int64_t>(std::floor(
                                 std::log(static_cast<double>(std::max(2u, m))) /
                                 (10.0 * std::log(5.0)))));
    if (m > 65535)
      throw std::invalid_argument("mpc_fractional_matching: graph too large for the harness");
    const double weight_cap =
        (1.0 - 2.0 * eps) * std::pow(m, 0.2) / (static_cast<double>(m) * m) * (1.0 + 1e-9);

    // If even the loosest over-estimate of any machine-local weight stays
    // below the smallest possible threshold (1 - 4*eps) for every iteration
    // of this phase, no vertex can freeze: skip the local-degree bookkeeping
    // and the threshold draws. The machine loads are still computed exactly.
    const double w_end = w / std::pow(1.0 - eps, static_cast<double>(iters));
    const bool can_freeze =
        m * w_end * static_cast<double>(max_active_deg) + max_yfro >= thr_floor;

    eload.assign(m, 0);
    vcount.assign(m, 0);
    for (VertexId v = 0; v < n; ++v) {
      if (!in_vprime[v]) continue;
      mach[v] = static_cast<uint16_t>(counter_hash(seed, 0x70686173ULL + phase, v) % m);
      ++vcount[mach[v]];
    }
    if (can_freeze) {
      for (VertexId v : cand) {
        local_deg[v] = 0;
        lfro[v] = 0.0;
        yold[v] = yfro[v];
      }
      for (size_t i = 0; i < pu.size(); ++i) {
        uint16_t ma = mach[pu[i]];
        if (ma == mach[pv[i]]) {
          ++local_deg[pu[i]];
          ++local_deg[pv[i]];
          ++eload[ma];
        }
      }
    } else {
      for (size_t i = 0; i < pu.size(); ++i) {
        uint16_t ma = mach[pu[i]];
        if (ma == mach[pv[i]]) ++eload[ma];
      }
    }
    {
      std::vector<uint64_t> loads(m);
      for (uint32_t i = 0; i < m; ++i) loads[i] = eload[i] + 2 * vcount[i];
      account_round(out.trace, loads, cfg, n, phase, "phase");
    }

    for (int64_t rep = 0; rep < iters; ++rep) {
      if (knobs.check_invariants && !knobs.single_machine && w > weight_cap)
        throw std::logic_error("mpc_fractional_matching: active weight exceeds phase cap");
      if (can_freeze) {
        freezing.clear();
        for (VertexId v : cand) {
          if (f[v] >= 0) continue;
          double ty = m * (w * local_deg[v] + lfro[v]) + yold[v];
          if (ty >= thr_floor && ty >= sched(v, t)) freezing.push_back(v);
        }
        for (VertexId v : freezing) freeze(v, true);
      }
      ++t;
      w /= (1.0 - eps);
    }

    d *= std::pow(1.0 - eps, static_cast<double>(iters));
    if (knobs.check_invariants && std::fabs(d * w - (1.0 - 2.0 * eps)) > 1e-9)
      throw std::logic_error("mpc_fractional_matching: d*w invariant drifted");

    // Reconciled vertex weights over V' (edge weights follow from freeze
    // iterations; active edges all sit at w). Skippable in no-freeze phases:
    // every y is bounded by the same under-threshold estimate.
    if (can_freeze) {
      removing.clear();
      freezing.clear();
      for (VertexId v = 0; v < n; ++v) {
        if (!in_vprime[v]) continue;
        double y = w * active_deg[v] + yfro[v];
        if (y > 1.0)
          removing.push_back(v);
        else if (f[v] < 0 && y > 1.0 - 2.0 * eps)
          freezing.push_back(v);
      }
      for (VertexId v : removing) remove_heavy(v);
      for (VertexId v : freezing) freeze(v, false);
    }
    ++out.phases;
  }

  // ---- Direct tail: one iteration per round on the remaining graph ----
  while (active_edges > 0) {
    {
      uint64_t vp = 0;
      for (VertexId v = 0; v < n; ++v) vp += in_vprime[v];
      account_round(out.trace, {active_edges + vp}, cfg, n, out.phases, "direct");
    }
    freezing.clear();
    size_t ck = 0;
    for (VertexId v : cand) {
      if (!in_vprime[v] || f[v] >= 0) continue;
      cand[ck++] = v;
      double y = w * active_deg[v] + yfro[v];
      if (y >= thr_floor && y >= sched(v, t)) freezing.push_back(v);
    }
    cand.resize(ck);
    for (VertexId v : freezing) freeze(v, false);
    if (active_edges == 0) break;
    ++t;
    w /= (1.0 - eps);
    if (t > static_cast<int64_t>(64 + std::log(std::max<double>(2, n)) / -std::log1p(-eps)))
      throw std::logic_error("mpc_fractional_matching: direct tail did not terminate");
  }

  // ---- Finalize ----
  out.iterations = t;
  out.trace.phase_count = out.phases;
  for (VertexId v = 0; v < n; ++v)
    if (in_vprime[v]) last_active[v] = f[v] >= 0 ? f[v] : t;

  out.x.x.resize(g.num_edges());
  out.y_final.assign(n, 0.0);
  for (size_t e = 0; e < g.num_edges(); ++e) {
    VertexId u = g.edges()[e].u, v = g.edges()[e].v;
    int64_t te = std::min(last_active[u], last_active[v]);
    double xe = w0 * std::pow(1.0 / (1.0 - eps), static_cast<double>(te));
    out.x.x[e] = xe;
    if (in_vprime[u] && in_vprime[v]) {
      out.y_final[u] += xe;
      out.y_final[v] += xe;
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    if (in_vprime[v]) out.w_m += out.y_final[v];
    if (out.removed[v]) {
      out.cover.members.push_back(v);
      out.cover.provenance.push_back(CoverReason::kRemovedHeavy);
    } else if (f[v] >= 0) {
      out.cover.members.push_back(v);
      out.cover.provenance.push_back(CoverReason::kFrozen);
    }
  }
  return out;
}

// CSV export: one row per edge with its weight and endpoint freeze times.
inline void write_fractional_csv(const Graph& g, const MpcMatchingResult& r, std::ostream& out) {
  out << "u,v,x_e,frozen_iteration_u,frozen_iteration_v\n";
  for (size_t e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edges()[e];
    out << ed.u << ',' << ed.v << ',' << r.x.x[e] << ',' << r.freeze_iter[ed.u] << ','
        << r.freeze_iter[ed.v] << '\n';
  }
}

// One vertex id + provenance per line.
inline void write_cover(const VertexCover& c, std::ostream& out) {
  for (size_t i = 0; i < c.members.size(); ++i) {
    out << c.members[i] << ' '
        << (c.provenance[i] == CoverReason::kFrozen ? "frozen" : "removed-heavy") << '\n';
  }
}

}  // namespace mpcgraph

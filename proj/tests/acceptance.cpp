// Acceptance gate: one self-contained check per release criterion, each
// printing a single PASS/FAIL line. Exit status is 0 iff every check passes.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "mpcgraph/generators.hpp"
#include "mpcgraph/matching.hpp"
#include "mpcgraph/mis.hpp"
#include "mpcgraph/oracles.hpp"
#include "mpcgraph/rounding.hpp"

using namespace mpcgraph;

namespace {

int g_failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int criterion, bool pass, const std::string& detail, double secs) {
  std::printf("%s criterion %d: %s (%.1fs)\n", pass ? "PASS" : "FAIL", criterion, detail.c_str(),
              secs);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

Graph petersen() {
  std::vector<Edge> es;
  for (VertexId i = 0; i < 5; ++i) {
    es.push_back({i, (i + 1) % 5});
    es.push_back({i, i + 5});
    es.push_back({5 + i, 5 + ((i + 2) % 5)});
  }
  return Graph::from_edges(10, es);
}

Graph random_bipartite(VertexId left, VertexId right, double p, uint64_t seed) {
  SplitMix64 rng(splitmix64(seed ^ 0x62697061));
  std::vector<Edge> es;
  for (VertexId a = 0; a < left; ++a)
    for (VertexId b = left; b < left + right; ++b)
      if (rng.next_u01() < p) es.push_back({a, b});
  return Graph::from_edges(left + right, es);
}

// ---------------------------------------------------------------------------
// 1. Batched greedy MIS equals the sequential greedy run, exactly, on a mixed
//    corpus of 200 seeded instances.

void criterion_1() {
  Timer timer;
  int runs = 0, good = 0;
  auto check = [&](const Graph& g, uint64_t seed) {
    ++runs;
    MpcMisResult mpc = mpc_greedy_mis(g, seed);
    IndependentSet seq = sequential_greedy_mis(g, RankPermutation::from_seed(g.num_vertices(), seed));
    if (mpc.mis.members == seq.members && verify_mis(g, mpc.mis).ok) ++good;
  };

  struct Cell {
    VertexId n;
    double p;
    int seeds;
  };
  const Cell grid[] = {{100, 0.5, 20},  {100, 0.05, 20},  {100, 0.005, 20},
                       {1000, 0.5, 15}, {1000, 0.05, 15}, {1000, 0.005, 15},
                       {10000, 0.5, 2}, {10000, 0.05, 10}, {10000, 0.005, 20}};
  uint64_t seed = 1;
  for (const Cell& c : grid) {
    for (int s = 0; s < c.seeds; ++s, ++seed) check(gen_gnp(c.n, c.p, seed * 7 + 3), seed);
  }
  Graph star = gen_star(5000);
  for (int s = 0; s < 30; ++s, ++seed) check(star, seed);
  for (int s = 0; s < 33; ++s, ++seed) check(gen_powerlaw(2000, 2.5, seed), seed);

  report(1, good == runs && runs == 200 && timer.seconds() <= 120.0,
         "batched greedy MIS equals sequential oracle on " + std::to_string(good) + "/" +
             std::to_string(runs) + " runs",
         timer.seconds());
}

// ---------------------------------------------------------------------------
// 2. MIS batch-phase count stays within ceil(log_{4/3} log2 Delta) + 2.

void criterion_2() {
  Timer timer;
  int runs = 0, good = 0;
  for (VertexId n : {1u << 10, 1u << 12, 1u << 14, 1u << 16}) {
    double p = 8.0 * std::log(static_cast<double>(n)) / n;
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      Graph g = gen_gnp(n, p, seed * 11 + n);
      MpcMisResult r = mpc_greedy_mis(g, seed);
      double delta = std::max<uint32_t>(2, g.max_degree());
      uint64_t bound =
          static_cast<uint64_t>(std::ceil(std::log(std::log2(delta)) / std::log(4.0 / 3.0))) + 2;
      ++runs;
      if (r.batch_phases <= bound && verify_mis(g, r.mis).ok) ++good;
    }
  }
  report(2, good == runs,
         "MIS batch phases within ceil(log_{4/3} log2 Delta)+2 on " + std::to_string(good) + "/" +
             std::to_string(runs) + " runs",
         timer.seconds());
}

// ---------------------------------------------------------------------------
// 3. Residual degree after processing the first r ranks is at most
//    20 n ln(n) / r at each checkpoint.

void criterion_3() {
  Timer timer;
  const VertexId n = 20000;
  int good = 0;
  const int trials = 100;
  for (uint64_t seed = 1; seed <= trials; ++seed) {
    Graph g = gen_gnp(n, 0.01, seed * 13 + 5);
    RankPermutation pi = RankPermutation::from_seed(n, seed);
    bool ok = true;
    for (uint32_t r : {n / 16, n / 8, n / 4}) {
      InducedGraph res = residual_graph(g, pi, r);
      double bound = 20.0 * n * std::log(static_cast<double>(n)) / r;
      if (res.graph.max_degree() > bound) ok = false;
    }
    good += ok;
  }
  report(3, good >= 99,
         "residual max degree within 20*n*ln(n)/r in " + std::to_string(good) + "/100 trials",
         timer.seconds());
}

// ---------------------------------------------------------------------------
// 4. Fixed-threshold sequential matching stops at the exact predicted
//    iteration on regular graphs and never exceeds the global bound.

void criterion_4() {
  Timer timer;
  const double eps = 0.1;
  bool ok = true;

  auto regular_steps = [&](uint32_t d, VertexId n) {
    int64_t t = 0;
    double y = static_cast<double>(d) / n;
    while (y < 1.0 - 2.0 * eps) {
      y /= 1.0 - eps;
      ++t;
    }
    return t;
  };
  auto check_regular = [&](const Graph& g, uint32_t d) {
    SeqMatchingResult r = sequential_matching(g, eps);
    int64_t want = regular_steps(d, g.num_vertices());
    if (r.iterations != want) ok = false;
    for (int64_t f : r.freeze_iter)
      if (f != want) ok = false;
  };
  check_regular(gen_disjoint_edges(250), 1);
  check_regular(gen_complete(4), 3);
  check_regular(gen_complete(50), 49);
  check_regular(gen_cycle(100), 2);
  check_regular(gen_cycle(9), 2);

  std::vector<Graph> corpus;
  corpus.push_back(gen_gnp(1000, 0.01, 2));
  corpus.push_back(gen_gnp(200, 0.1, 3));
  corpus.push_back(gen_star(1000));
  corpus.push_back(gen_powerlaw(1000, 2.5, 4));
  corpus.push_back(gen_disjoint_edges(500));
  corpus.push_back(gen_complete(40));
  for (const Graph& g : corpus) {
    SeqMatchingResult r = sequential_matching(g, eps);
    double n = std::max<double>(2.0, g.num_vertices());
    int64_t bound =
        static_cast<int64_t>(std::ceil(std::log(n * (1.0 - 2.0 * eps)) / std::log(1.0 / (1.0 - eps)))) + 1;
    if (r.iterations > bound) ok = false;
  }

  report(4, ok, "sequential matching termination exact on regular graphs, bounded everywhere",
         timer.seconds());
}

// ---------------------------------------------------------------------------
// 5. The one-machine simulation reproduces the randomized sequential run:
//    identical freeze iterations, per-edge weights within 1e-12, no removals.

void criterion_5() {
  Timer timer;
  int good = 0;
  const int trials = 50;
  for (uint64_t seed = 1; seed <= trials; ++seed) {
    VertexId n = 40 + static_cast<VertexId>((seed * 17) % 300);
    double p = 0.02 + 0.002 * (seed % 50);
    double eps = 0.006 + 0.00025 * (seed % 50);
    Graph g = gen_gnp(n, p, seed * 29 + 7);

    MatchingKnobs knobs;
    knobs.single_machine = true;
    MpcMatchingResult mpc = mpc_fractional_matching(g, eps, seed, {}, knobs);
    SeqMatchingResult ref = sequential_matching_randomized(g, eps, ThresholdSchedule(eps, seed),
                                                           (1.0 - 2.0 * eps) / n);
    bool ok = mpc.freeze_iter == ref.freeze_iter;
    for (size_t e = 0; e < g.num_edges(); ++e)
      if (std::fabs(mpc.x.x[e] - ref.x.x[e]) > 1e-12) ok = false;
    for (VertexId v = 0; v < n; ++v)
      if (mpc.removed[v]) ok = false;
    good += ok;
  }
  report(5, good == trials,
         "one-machine run matches sequential randomized run on " + std::to_string(good) + "/" +
             std::to_string(trials) + " instances",
         timer.seconds());
}

// ---------------------------------------------------------------------------
// 6 + 7. Fractional matching certificates across the full grid, plus the
//    space law under slack 8, sharing one set of runs.

void criteria_6_and_7() {
  Timer timer;
  const VertexId ns[] = {1000, 5000, 20000};
  const double epss[] = {0.01, 0.019};
  const int seeds = 100;

  bool cover_all = true, weight_all = true, phase_all = true;
  bool cert_99 = true, space_99 = true;
  int runs = 0;
  std::string worst;

  for (int family = 0; family < 2; ++family) {
    for (VertexId n : ns) {
      double p = family == 0 ? 10.0 / n : 0.01;
      int cert_bad[2] = {0, 0}, space_bad[2] = {0, 0};
      for (uint64_t seed = 1; seed <= seeds; ++seed) {
        Graph g = gen_gnp(n, p, seed * 101 + n + family);
        for (int ei = 0; ei < 2; ++ei) {
          double eps = epss[ei];
          MpcMatchingResult r = mpc_fractional_matching(g, eps, seed);
          ++runs;

          if (!verify_vertex_cover(g, r.cover).ok) cover_all = false;
          for (VertexId v = 0; v < n; ++v)
            if (!r.removed[v] && r.y_final[v] > 1.0 + 1e-9) weight_all = false;

          double gamma = std::log(1.0 / (1.0 - eps)) / (20.0 * std::log(5.0));
          uint64_t bound = static_cast<uint64_t>(std::ceil(
                               std::log(std::log2(static_cast<double>(n))) /
                               std::log(1.0 / (1.0 - gamma)))) +
                           2;
          if (r.phases > bound) phase_all = false;

          if (!r.cover_certificate(eps)) ++cert_bad[ei];
          if (r.trace.any_violation()) ++space_bad[ei];
        }
      }
      for (int ei = 0; ei < 2; ++ei) {
        if (cert_bad[ei] > 1) cert_99 = false;
        if (space_bad[ei] > 1) space_99 = false;
        if (cert_bad[ei] || space_bad[ei])
          worst += " [n=" + std::to_string(n) + " p=" + (family ? "0.01" : "10/n") +
                   " eps=" + std::to_string(epss[ei]) + ": cert_fail=" + std::to_string(cert_bad[ei]) +
                   " space_fail=" + std::to_string(space_bad[ei]) + "]";
      }
    }
  }

  double secs = timer.seconds();
  report(6, cover_all && weight_all && phase_all && cert_99 && secs <= 600.0,
         "cover/weight/phase/size certificates across " + std::to_string(runs) + " runs" + worst,
         secs);
  report(7, space_99, "per-machine loads within slack-8 budget across the same grid" + worst, secs);
}

// ---------------------------------------------------------------------------
// 8. Rounding returns at least |cover|/50 edges on the saturated disjoint-edge
//    family and matches the enumerated single-edge probability.

void criterion_8() {
  Timer timer;
  bool ok = true;

  for (VertexId k : {500u, 5000u}) {
    Graph g = gen_disjoint_edges(k);
    FractionalMatching x{std::vector<double>(k, 1.0)};
    std::vector<VertexId> cover(2 * k);
    for (VertexId v = 0; v < 2 * k; ++v) cover[v] = v;
    for (uint64_t seed = 1; seed <= 100; ++seed) {
      Matching m = round_matching(g, x, cover, seed);
      if (m.edges.size() < 2 * k / 50) ok = false;
      if (!verify_matching(g, m).ok) ok = false;
    }
  }

  Graph one = Graph::from_edges(2, {{0, 1}});
  FractionalMatching x1{{1.0}};
  int hits = 0;
  const int samples = 100000;
  for (uint64_t seed = 0; seed < samples; ++seed)
    hits += !round_matching(one, x1, {0, 1}, seed).edges.empty();
  double p = static_cast<double>(hits) / samples;
  if (std::fabs(p - 0.19) > 0.01) ok = false;

  report(8, ok,
         "rounding yields >= |cover|/50 edges; single-edge rate " + std::to_string(p) +
             " within 0.19 +/- 0.01",
         timer.seconds());
}

// ---------------------------------------------------------------------------
// 9. End-to-end integral matching is at least opt/2.1 on instances with a
//    known optimum.

void criterion_9() {
  Timer timer;
  const double eps = 0.1;
  bool ok = true;
  int runs = 0;
  std::string detail;

  auto family = [&](const std::string& name, auto&& make_graph) {
    int good = 0;
    for (uint64_t seed = 1; seed <= 100; ++seed) {
      Graph g = make_graph(seed);
      size_t opt = exact_max_matching(g).value;
      BestOfResult r = best_of(g, eps, seed);
      ++runs;
      bool pass = verify_matching(g, r.matching).ok &&
                  static_cast<double>(r.matching.edges.size()) >=
                      static_cast<double>(opt) / (2.0 + eps);
      good += pass;
    }
    if (good < 99) ok = false;
    detail += " " + name + "=" + std::to_string(good) + "/100";
  };

  Graph disjoint = gen_disjoint_edges(500);
  Graph k4 = gen_complete(4);
  Graph pete = petersen();
  family("disjoint500", [&](uint64_t) { return disjoint; });
  family("K4", [&](uint64_t) { return k4; });
  family("petersen", [&](uint64_t) { return pete; });
  family("bipartite200", [](uint64_t seed) { return random_bipartite(100, 100, 0.05, seed); });
  family("tiny", [](uint64_t seed) {
    VertexId n = 4 + static_cast<VertexId>(seed % 17);
    return gen_gnp(n, 0.3, seed * 37 + 11);
  });

  report(9, ok, "best-of matching >= opt/2.1 per family:" + detail, timer.seconds());
}

// ---------------------------------------------------------------------------
// 10. Phase counts on a quadrupling n grid are non-decreasing and do not
//     double between any quadrupled pair (the bench subcommand enforces the
//     same property).

void criterion_10() {
  Timer timer;
  std::vector<std::pair<uint64_t, uint64_t>> points;
  std::string detail = "matching phases";
  for (int s = 0; s < 4; ++s) {
    uint64_t n = 256ull << (2 * s);
    Graph g = gen_gnp(static_cast<VertexId>(n), 8.0 / n, splitmix64(1 + s));
    MpcMatchingResult r = mpc_fractional_matching(g, 0.02, 1);
    points.emplace_back(n, r.phases);
    detail += " " + std::to_string(r.phases);
  }
  bool ok = true;
  for (size_t i = 1; i < points.size(); ++i) {
    if (points[i].second < points[i - 1].second) ok = false;
    if (points[i].first >= 4 * points[i - 1].first && points[i].second > 2 * points[i - 1].second)
      ok = false;
  }
  report(10, ok, detail + " are non-decreasing and sub-doubling as n quadruples", timer.seconds());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criteria_6_and_7();
  criterion_8();
  criterion_9();
  criterion_10();
  return g_failures == 0 ? 0 : 1;
}

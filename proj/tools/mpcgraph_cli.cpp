// Command-line front end: runs the distributed MIS / fractional matching /
// vertex cover / rounding pipelines on generated or file-loaded graphs,
// verifies their certificates, and emits JSON reports plus machine-load
// traces. Exit code 0 means every certificate passed, 1 means at least one
// failed, 2 means the invocation or input was unusable.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mpcgraph/generators.hpp"
#include "mpcgraph/graph.hpp"
#include "mpcgraph/matching.hpp"
#include "mpcgraph/mis.hpp"
#include "mpcgraph/mpc.hpp"
#include "mpcgraph/oracles.hpp"
#include "mpcgraph/rounding.hpp"

namespace {

using nlohmann::ordered_json;
using namespace mpcgraph;

struct Options {
  std::string input;
  std::string gen;
  uint64_t seed = 1;
  double eps = 0.01;
  double space_slack = 8.0;
  bool strict_space = false;
  double d_floor = 64.0;
  bool single_machine = false;
  std::string out;
  std::string trace_path;
  std::string format = "json";
  std::string export_x;
  std::string export_cover;
};

void add_common_flags(CLI::App* cmd, Options& o, bool needs_eps) {
  cmd->add_option("--input", o.input, "edge-list file (one 'u v' pair per line, # comments)");
  cmd->add_option("--gen", o.gen,
                  "generator spec: gnp:n,p | star:n | complete:n | disjoint_edges:k | "
                  "powerlaw:n,exponent");
  cmd->add_option("--seed", o.seed, "random seed");
  if (needs_eps) cmd->add_option("--eps", o.eps, "accuracy parameter");
  cmd->add_option("--space-slack", o.space_slack, "per-machine budget multiplier c (budget c*n)");
  cmd->add_flag("--strict-space", o.strict_space, "abort on any budget violation");
  cmd->add_option("--d-floor", o.d_floor, "degree bound at which phase batching stops");
  cmd->add_flag("--single-machine", o.single_machine, "force the one-machine simulation");
  cmd->add_option("--out", o.out, "write the JSON report here (default: stdout)");
  cmd->add_option("--trace", o.trace_path, "write the per-round machine-load trace here");
  cmd->add_option("--format", o.format, "trace format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

struct Input {
  Graph graph;
  std::vector<uint64_t> original_id;  // internal id -> id used in the input
  std::string descriptor;
};

Input load_input(const Options& o) {
  if (o.input.empty() == o.gen.empty())
    throw std::invalid_argument("exactly one of --input or --gen is required");
  Input in;
  if (!o.input.empty()) {
    std::ifstream f(o.input);
    if (!f) throw std::invalid_argument("cannot open input file: " + o.input);
    LoadedGraph lg = load_edge_list(f);
    in.graph = std::move(lg.graph);
    in.original_id = std::move(lg.original_id);
    in.descriptor = "file:" + o.input;
  } else {
    in.graph = parse_gen_spec(o.gen, o.seed);
    in.original_id.resize(in.graph.num_vertices());
    for (VertexId v = 0; v < in.graph.num_vertices(); ++v) in.original_id[v] = v;
    in.descriptor = "gen:" + o.gen;
  }
  return in;
}

MpcConfig make_config(const Options& o) {
  MpcConfig cfg;
  cfg.space_slack = o.space_slack;
  cfg.strict = o.strict_space;
  return cfg;
}

MatchingKnobs make_knobs(const Options& o) {
  MatchingKnobs k;
  k.d_floor = o.d_floor;
  k.single_machine = o.single_machine;
  return k;
}

void write_trace(const Options& o, const RoundTrace& trace) {
  if (o.trace_path.empty()) return;
  std::ofstream f(o.trace_path);
  if (!f) throw std::invalid_argument("cannot open trace file: " + o.trace_path);
  if (o.format == "csv")
    write_trace_csv(trace, f);
  else
    write_trace_json(trace, f);
}

int emit_report(const Options& o, ordered_json& report,
                std::chrono::steady_clock::time_point start) {
  bool all_pass = true;
  for (auto& [key, val] : report["certificates"].items()) {
    (void)key;
    if (!val.get<bool>()) all_pass = false;
  }
  report["all_certificates_pass"] = all_pass;
  report["wall_time_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (o.out.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream f(o.out);
    if (!f) throw std::invalid_argument("cannot open report file: " + o.out);
    f << report.dump(2) << "\n";
  }
  return all_pass ? 0 : 1;
}

ordered_json base_report(const std::string& algo, const Input& in, const Options& o) {
  ordered_json r;
  r["algorithm"] = algo;
  r["input"] = in.descriptor;
  r["n"] = in.graph.num_vertices();
  r["m"] = in.graph.num_edges();
  r["seed"] = o.seed;
  return r;
}

void add_trace_summary(ordered_json& r, const RoundTrace& t) {
  r["rounds"] = t.rounds.size();
  r["phases"] = t.phase_count;
  r["max_load"] = t.max_load();
  r["space_violation"] = t.any_violation();
}

int cmd_mis(const Options& o) {
  auto start = std::chrono::steady_clock::now();
  Input in = load_input(o);
  MpcConfig cfg = make_config(o);
  MpcMisResult res = mpc_greedy_mis(in.graph, o.seed, cfg);

  MisCheck chk = verify_mis(in.graph, res.mis);
  IndependentSet oracle =
      sequential_greedy_mis(in.graph, RankPermutation::from_seed(in.graph.num_vertices(), o.seed));
  uint32_t delta = std::max<uint32_t>(2, in.graph.max_degree());
  uint64_t bound = static_cast<uint64_t>(std::ceil(std::log(std::log2(static_cast<double>(delta))) /
                                                   std::log(4.0 / 3.0))) +
                   2;

  ordered_json r = base_report("mis", in, o);
  r["eps"] = nullptr;
  add_trace_summary(r, res.trace);
  r["sizes"] = {{"mis", res.mis.members.size()}};
  r["phase_bound"] = bound;
  r["certificates"] = {{"independent_and_maximal", chk.ok},
                       {"matches_sequential_oracle", res.mis.members == oracle.members},
                       {"phase_bound", res.batch_phases <= bound},
                       {"space_budget", !res.trace.any_violation()}};
  write_trace(o, res.trace);
  return emit_report(o, r, start);
}

void export_matching_artifacts(const Options& o, const Input& in, const MpcMatchingResult& res) {
  if (!o.export_x.empty()) {
    std::ofstream f(o.export_x);
    if (!f) throw std::invalid_argument("cannot open export file: " + o.export_x);
    f << "u,v,x_e,frozen_iteration_u,frozen_iteration_v\n";
    for (size_t e = 0; e < in.graph.num_edges(); ++e) {
      const Edge& ed = in.graph.edges()[e];
      f << in.original_id[ed.u] << ',' << in.original_id[ed.v] << ',' << res.x.x[e] << ','
        << res.freeze_iter[ed.u] << ',' << res.freeze_iter[ed.v] << '\n';
    }
  }
  if (!o.export_cover.empty()) {
    std::ofstream f(o.export_cover);
    if (!f) throw std::invalid_argument("cannot open export file: " + o.export_cover);
    for (size_t i = 0; i < res.cover.members.size(); ++i) {
      f << in.original_id[res.cover.members[i]] << ' '
        << (res.cover.provenance[i] == CoverReason::kFrozen ? "frozen" : "removed-heavy") << '\n';
    }
  }
}

int cmd_matching(const Options& o, bool as_cover) {
  auto start = std::chrono::steady_clock::now();
  Input in = load_input(o);
  MpcMatchingResult res =
      mpc_fractional_matching(in.graph, o.eps, o.seed, make_config(o), make_knobs(o));

  bool valid = true;
  for (VertexId v = 0; v < in.graph.num_vertices(); ++v)
    if (!res.removed[v] && res.y_final[v] > 1.0 + 1e-9) valid = false;
  CoverCheck cover_ok = verify_vertex_cover(in.graph, res.cover);

  size_t removed = 0;
  for (CoverReason cr : res.cover.provenance)
    if (cr == CoverReason::kRemovedHeavy) ++removed;

  ordered_json r = base_report(as_cover ? "vcover" : "matching", in, o);
  r["eps"] = o.eps;
  add_trace_summary(r, res.trace);
  r["iterations"] = res.iterations;
  r["matching_weight"] = res.w_m;
  r["sizes"] = {{"cover", res.cover.members.size()},
                {"cover_frozen", res.cover.members.size() - removed},
                {"cover_removed_heavy", removed}};
  r["certificates"] = {{"fractional_validity", valid},
                       {"cover_covers_all_edges", cover_ok.ok},
                       {"cover_size_certificate", res.cover_certificate(o.eps)},
                       {"space_budget", !res.trace.any_violation()}};
  export_matching_artifacts(o, in, res);
  write_trace(o, res.trace);
  return emit_report(o, r, start);
}

int cmd_round(const Options& o) {
  auto start = std::chrono::steady_clock::now();
  Input in = load_input(o);
  BestOfResult res = best_of(in.graph, o.eps, o.seed, make_config(o), make_knobs(o));
  MatchingCheck chk = verify_matching(in.graph, res.matching);

  ordered_json r = base_report("round", in, o);
  r["eps"] = o.eps;
  r["source"] = res.source;
  r["sizes"] = {{"matching", res.matching.edges.size()},
                {"iterated", res.iterated_size},
                {"fallback", res.fallback_size}};
  r["certificates"] = {{"matching_valid", chk.ok}};
  if (!o.export_x.empty()) {
    std::ofstream f(o.export_x);
    if (!f) throw std::invalid_argument("cannot open export file: " + o.export_x);
    for (size_t e : res.matching.edges)
      f << in.original_id[in.graph.edges()[e].u] << ' ' << in.original_id[in.graph.edges()[e].v]
        << '\n';
  }
  return emit_report(o, r, start);
}

// Sweep n over a geometric grid, run the chosen algorithm on G(n, p) with
// p = avg_degree/n, and emit one CSV row per n. Fails (exit 1) if the phase
// count ever decreases, or more than doubles while n quadruples.
int cmd_bench(const Options& o, const std::string& algo, uint64_t n0, int steps, double factor,
              double avg_degree) {
  std::ostringstream csv;
  csv << "algorithm,n,m,seed,eps,phases,rounds,max_load\n";
  std::vector<std::pair<uint64_t, uint64_t>> points;  // (n, phases)
  for (int s = 0; s < steps; ++s) {
    uint64_t n = static_cast<uint64_t>(std::llround(n0 * std::pow(factor, s)));
    double p = std::min(1.0, avg_degree / static_cast<double>(n));
    Graph g = gen_gnp(static_cast<VertexId>(n), p, splitmix64(o.seed + s));
    uint64_t phases, rounds, max_load;
    if (algo == "mis") {
      MpcMisResult r = mpc_greedy_mis(g, o.seed, make_config(o));
      phases = r.batch_phases;
      rounds = r.trace.rounds.size();
      max_load = r.trace.max_load();
    } else {
      MpcMatchingResult r =
          mpc_fractional_matching(g, o.eps, o.seed, make_config(o), make_knobs(o));
      phases = r.phases;
      rounds = r.trace.rounds.size();
      max_load = r.trace.max_load();
    }
    csv << algo << ',' << n << ',' << g.num_edges() << ',' << o.seed << ',' << o.eps << ','
        << phases << ',' << rounds << ',' << max_load << '\n';
    points.emplace_back(n, phases);
  }
  if (o.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream f(o.out);
    if (!f) throw std::invalid_argument("cannot open report file: " + o.out);
    f << csv.str();
  }
  bool ok = true;
  for (size_t i = 1; i < points.size(); ++i) {
    if (points[i].second < points[i - 1].second) ok = false;
    // Each quadrupling of n must at most double the phase count.
    if (points[i].first >= 4 * points[i - 1].first && points[i].second > 2 * points[i - 1].second)
      ok = false;
  }
  if (!ok) std::cerr << "bench: phase growth check failed\n";
  return ok ? 0 : 1;
}

// Check that a matching file (one 'u v' pair per line, vertex ids as in the
// input graph) is a valid matching of the input graph.
int cmd_verify(const Options& o, const std::string& matching_path) {
  Input in = load_input(o);
  std::ifstream f(matching_path);
  if (!f) throw std::invalid_argument("cannot open matching file: " + matching_path);

  // original_id is a bijection onto [0, n) only for generated graphs; build
  // the inverse by search for file inputs.
  std::unordered_map<uint64_t, VertexId> inv;
  for (VertexId v = 0; v < in.graph.num_vertices(); ++v) inv[in.original_id[v]] = v;

  Matching m;
  std::string line;
  size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    std::istringstream ls(line);
    uint64_t a, b;
    if (!(ls >> a)) continue;  // blank line
    if (!(ls >> b)) throw std::invalid_argument("matching file: bad line " + std::to_string(lineno));
    auto ia = inv.find(a), ib = inv.find(b);
    if (ia == inv.end() || ib == inv.end()) {
      std::cerr << "verify: unknown vertex on line " << lineno << "\n";
      return 1;
    }
    std::optional<size_t> e = in.graph.edge_id(ia->second, ib->second);
    if (!e) {
      std::cerr << "verify: not an edge of the graph on line " << lineno << "\n";
      return 1;
    }
    m.edges.push_back(*e);
  }
  std::sort(m.edges.begin(), m.edges.end());
  MatchingCheck chk = verify_matching(in.graph, m);
  if (!chk.ok) {
    std::cerr << "verify: " << chk.reason << "\n";
    return 1;
  }
  std::cout << "valid matching with " << m.edges.size() << " edges\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributed graph algorithms: MIS, fractional matching, vertex cover, rounding"};
  app.require_subcommand(1);

  Options o;
  std::string bench_algo = "matching";
  uint64_t bench_n0 = 1024;
  int bench_steps = 5;
  double bench_factor = 2.0;
  double bench_degree = 16.0;
  std::string matching_path;

  CLI::App* mis = app.add_subcommand("mis", "greedy maximal independent set via rank batching");
  add_common_flags(mis, o, false);

  CLI::App* matching =
      app.add_subcommand("matching", "fractional matching with freeze thresholds");
  add_common_flags(matching, o, true);
  matching->add_option("--export-x", o.export_x, "write edge weights as CSV");
  matching->add_option("--export-cover", o.export_cover, "write the vertex cover");

  CLI::App* vcover = app.add_subcommand("vcover", "vertex cover from the frozen/removed set");
  add_common_flags(vcover, o, true);
  vcover->add_option("--export-x", o.export_x, "write edge weights as CSV");
  vcover->add_option("--export-cover", o.export_cover, "write the vertex cover");

  CLI::App* round = app.add_subcommand("round", "integral matching via iterated rounding");
  add_common_flags(round, o, true);
  round->add_option("--export-x", o.export_x, "write the matching edges");

  CLI::App* bench = app.add_subcommand("bench", "phase-count sweep over a geometric n grid");
  add_common_flags(bench, o, true);
  bench->add_option("--algo", bench_algo, "mis|matching")
      ->check(CLI::IsMember({"mis", "matching"}));
  bench->add_option("--n0", bench_n0, "smallest n in the sweep");
  bench->add_option("--steps", bench_steps, "number of grid points");
  bench->add_option("--factor", bench_factor, "geometric growth factor");
  bench->add_option("--avg-degree", bench_degree, "expected average degree of G(n,p)");

  CLI::App* verify = app.add_subcommand("verify", "check a matching file against a graph");
  add_common_flags(verify, o, false);
  verify->add_option("--matching", matching_path, "matching file, one 'u v' per line")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (mis->parsed()) return cmd_mis(o);
    if (matching->parsed()) return cmd_matching(o, false);
    if (vcover->parsed()) return cmd_matching(o, true);
    if (round->parsed()) return cmd_round(o);
    if (bench->parsed())
      return cmd_bench(o, bench_algo, bench_n0, bench_steps, bench_factor, bench_degree);
    if (verify->parsed()) return cmd_verify(o, matching_path);
  } catch (const SpaceViolation& e) {
    std::cerr << "space violation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

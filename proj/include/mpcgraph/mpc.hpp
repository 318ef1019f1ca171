#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpcgraph/graph.hpp"
#include "mpcgraph/rng.hpp"

// The simulated MPC execution model: random vertex partitioning, per-round
// space accounting, and a round/phase trace.
//
// The harness is a faithful-state simulator: machines hold state, and
// inter-round communication is modeled as re-assignment of that state, with
// the volume charged to the receiving machine's load. A machine's load for
// a round is counted in words: edges materialized + vertices hosted +
// broadcast state received. The literature states per-machine memory both
// in bits and in words; we count words (a logarithmic factor apart).

namespace mpcgraph {

struct MpcConfig {
  // Enforced per-machine budget is space_slack * n words. space_words is
  // informational when nonzero (the nominal S of the model).
  uint64_t space_words = 0;
  double space_slack = 8.0;
  bool strict = false;

  uint64_t budget(uint64_t n) const {
    return static_cast<uint64_t>(space_slack * static_cast<double>(n));
  }
};

class SpaceViolation : public std::runtime_error {
 public:
  SpaceViolation(uint64_t machine, uint64_t round, uint64_t load, uint64_t budget)
      : std::runtime_error("space violation: machine " + std::to_string(machine) + " at round " +
                           std::to_string(round) + " holds " + std::to_string(load) +
                           " words, budget " + std::to_string(budget)),
        machine(machine),
        round(round),
        load(load),
        budget(budget) {}
  uint64_t machine, round, load, budget;
};

struct PartitionAssignment {
  std::vector<uint32_t> machine_of;  // indexed by vertex
  uint32_t machines = 0;
};

// Assign each vertex independently and uniformly to one of m machines.
// Counter-mode keyed by (seed, v): the draw for a vertex does not depend
// on how many other vertices were assigned before it.
inline PartitionAssignment partition_vertices(const std::vector<VertexId>& vertices, uint32_t m,
                                              uint64_t seed) {
  if (m == 0) throw std::invalid_argument("partition_vertices: m must be >= 1");
  PartitionAssignment pa;
  pa.machines = m;
  VertexId maxv = 0;
  for (VertexId v : vertices) maxv = std::max(maxv, v);
  pa.machine_of.assign(vertices.empty() ? 0 : maxv + 1, 0);
  for (VertexId v : vertices) {
    pa.machine_of[v] = static_cast<uint32_t>(counter_hash(seed, 0x7061727469ULL, v) % m);
  }
  return pa;
}

struct RoundRecord {
  uint64_t round = 0;
  uint64_t phase = 0;
  std::vector<uint64_t> loads;  // words per machine
  uint64_t max_load = 0;
  bool violation = false;
  std::string tag;
};

struct RoundTrace {
  std::vector<RoundRecord> rounds;
  uint64_t phase_count = 0;
  std::vector<std::string> substitutions;
  uint64_t next_round = 0;

  uint64_t max_load() const {
    uint64_t m = 0;
    for (const auto& r : rounds) m = std::max(m, r.max_load);
    return m;
  }

  bool any_violation() const {
    for (const auto& r : rounds)
      if (r.violation) return true;
    return false;
  }

  // Merge another trace after this one, renumbering its rounds.
  void append(const RoundTrace& other) {
    for (RoundRecord r : other.rounds) {
      r.round = next_round++;
      r.phase += phase_count;
      rounds.push_back(std::move(r));
    }
    phase_count += other.phase_count;
    for (const auto& s : other.substitutions) substitutions.push_back(s);
  }
};

// Append one round record. In strict mode any load above the budget aborts
// with a report naming the machine and round; otherwise the record is kept
// with its violation flag set.
inline void account_round(RoundTrace& trace, const std::vector<uint64_t>& loads,
                          const MpcConfig& cfg, uint64_t n, uint64_t phase,
                          const std::string& tag) {
  if (!trace.rounds.empty() && phase < trace.rounds.back().phase)
    throw std::logic_error("account_round: phase index decreased");
  RoundRecord rec;
  rec.round = trace.next_round++;
  rec.phase = phase;
  rec.loads = loads;
  rec.tag = tag;
  const uint64_t budget = cfg.budget(n);
  for (size_t i = 0; i < loads.size(); ++i) {
    rec.max_load = std::max(rec.max_load, loads[i]);
    if (loads[i] > budget) {
      rec.violation = true;
      if (cfg.strict) throw SpaceViolation(i, rec.round, loads[i], budget);
    }
  }
  trace.rounds.push_back(std::move(rec));
}

// Trace export: JSON lines, one object per round record.
inline void write_trace_json(const RoundTrace& trace, std::ostream& out) {
  for (const auto& r : trace.rounds) {
    out << "{\"round\":" << r.round << ",\"phase\":" << r.phase << ",\"max_load\":" << r.max_load
        << ",\"violation\":" << (r.violation ? "true" : "false") << ",\"tag\":\"" << r.tag
        << "\",\"loads\":[";
    for (size_t i = 0; i < r.loads.size(); ++i) out << (i ? "," : "") << r.loads[i];
    out << "]}\n";
  }
  for (const auto& s : trace.substitutions) out << "{\"substitution\":\"" << s << "\"}\n";
}

// Trace export: CSV, one row per (round, machine).
inline void write_trace_csv(const RoundTrace& trace, std::ostream& out) {
  out << "round,phase,machine,load,tag\n";
  for (const auto& r : trace.rounds)
    for (size_t i = 0; i < r.loads.size(); ++i)
      out << r.round << ',' << r.phase << ',' << i << ',' << r.loads[i] << ',' << r.tag << '\n';
}

}  // namespace mpcgraph

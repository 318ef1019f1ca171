#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpcgraph/graph.hpp"
#include "mpcgraph/rng.hpp"

namespace mpcgraph {

// G(n, p): every unordered pair independently with probability p.
// Dense regime scans all pairs with an integer threshold compare; sparse
// regime uses geometric skips. Both consume the same SplitMix64 stream
// kind, so a given (n, p, seed) always yields the same edge set.
inline Graph gen_gnp(VertexId n, double p, uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("gen_gnp: p outside [0,1]");
  std::vector<Edge> edges;
  if (n >= 2 && p > 0.0) {
    SplitMix64 rng(seed);
    if (p >= 1.0) {
      for (VertexId u = 0; u + 1 < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) edges.push_back({u, v});
    } else if (p > 0.25) {
      const uint64_t threshold = static_cast<uint64_t>(p * 0x1.0p64);
      for (VertexId u = 0; u + 1 < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
          if (rng.next() < threshold) edges.push_back({u, v});
    } else {
      // Skip-sampling: jump over pairs in geometric strides.
      const double log1mp = std::log1p(-p);
      const uint64_t total = static_cast<uint64_t>(n) * (n - 1) / 2;
      uint64_t idx = 0;
      // Incremental decode of the linear pair index (row-major over u < v):
      // (u, rem, row) always corresponds to position `pos`.
      uint64_t pos = 0, rem = 0, row = n - 1;
      VertexId u = 0;
      while (true) {
        double u01 = rng.next_u01();
        uint64_t skip = static_cast<uint64_t>(std::floor(std::log1p(-u01) / log1mp));
        if (skip > total || idx > total - 1 - skip) break;
        idx += skip;
        rem += idx - pos;
        pos = idx;
        while (rem >= row) {
          rem -= row;
          --row;
          ++u;
        }
        VertexId v = u + 1 + static_cast<VertexId>(rem);
        edges.push_back({u, v});
        ++idx;
      }
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

// Star K_{1,n-1}: vertex 0 is the center.
inline Graph gen_star(VertexId n) {
  std::vector<Edge> edges;
  for (VertexId v = 1; v < n; ++v) edges.push_back({0, v});
  return Graph::from_edges(n, std::move(edges));
}

inline Graph gen_complete(VertexId n) { return gen_gnp(n, 1.0, 0); }

inline Graph gen_cycle(VertexId n) {
  if (n < 3) throw std::invalid_argument("gen_cycle: need at least 3 vertices");
  std::vector<Edge> edges;
  for (VertexId v = 0; v < n; ++v) {
    VertexId u = (v + 1) % n;
    edges.push_back(v < u ? Edge{v, u} : Edge{u, v});
  }
  return Graph::from_edges(n, std::move(edges));
}

// k disjoint edges on 2k vertices: (0,1), (2,3), ...
inline Graph gen_disjoint_edges(VertexId k) {
  std::vector<Edge> edges;
  for (VertexId i = 0; i < k; ++i) edges.push_back({2 * i, 2 * i + 1});
  return Graph::from_edges(2 * k, std::move(edges));
}

// Chung-Lu style power-law graph: vertex i carries weight (i+1)^(-1/(beta-1)),
// scaled to average degree ~8; edges are sampled proportionally to weight
// products. Produces the heavy degree skew the MIS batching tests need.
inline Graph gen_powerlaw(VertexId n, double beta, uint64_t seed) {
  if (beta <= 1.0) throw std::invalid_argument("gen_powerlaw: exponent must be > 1");
  if (n < 2) return Graph::from_edges(n, {});
  const double alpha = 1.0 / (beta - 1.0);
  std::vector<double> cumw(n);
  double total = 0.0;
  for (VertexId i = 0; i < n; ++i) {
    total += std::pow(static_cast<double>(i + 1), -alpha);
    cumw[i] = total;
  }
  const double avg_degree = 8.0;
  const size_t target_edges = static_cast<size_t>(avg_degree / 2.0 * n);

  SplitMix64 rng(seed);
  auto draw = [&]() -> VertexId {
    double r = rng.next_u01() * total;
    auto it = std::lower_bound(cumw.begin(), cumw.end(), r);
    return static_cast<VertexId>(it - cumw.begin());
  };

  std::vector<Edge> edges;
  edges.reserve(target_edges);
  for (size_t i = 0; i < target_edges; ++i) {
    VertexId u = draw(), v = draw();
    if (u == v) continue;  // rejected; duplicates collapse in from_edges
    edges.push_back(u < v ? Edge{u, v} : Edge{v, u});
  }
  return Graph::from_edges(n, std::move(edges));
}

// Generator spec mini-grammar: kind:arg,arg
//   gnp:n,p | star:n | complete:n | cycle:n | disjoint_edges:k | powerlaw:n,exponent
inline Graph parse_gen_spec(const std::string& spec, uint64_t seed) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("generator spec: missing ':'");
  std::string kind = spec.substr(0, colon);
  std::vector<std::string> args;
  {
    std::string rest = spec.substr(colon + 1);
    size_t pos = 0;
    while (pos <= rest.size()) {
      size_t comma = rest.find(',', pos);
      if (comma == std::string::npos) {
        args.push_back(rest.substr(pos));
        break;
      }
      args.push_back(rest.substr(pos, comma - pos));
      pos = comma + 1;
    }
  }
  auto want = [&](size_t k) {
    if (args.size() != k)
      throw std::invalid_argument("generator spec: '" + kind + "' expects " + std::to_string(k) + " arg(s)");
  };
  try {
    if (kind == "gnp") {
      want(2);
      return gen_gnp(static_cast<VertexId>(std::stoull(args[0])), std::stod(args[1]), seed);
    }
    if (kind == "star") {
      want(1);
      return gen_star(static_cast<VertexId>(std::stoull(args[0])));
    }
    if (kind == "complete") {
      want(1);
      return gen_complete(static_cast<VertexId>(std::stoull(args[0])));
    }
    if (kind == "cycle") {
      want(1);
      return gen_cycle(static_cast<VertexId>(std::stoull(args[0])));
    }
    if (kind == "disjoint_edges") {
      want(1);
      return gen_disjoint_edges(static_cast<VertexId>(std::stoull(args[0])));
    }
    if (kind == "powerlaw") {
      want(2);
      return gen_powerlaw(static_cast<VertexId>(std::stoull(args[0])), std::stod(args[1]), seed);
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("generator spec: bad numeric argument in '" + spec + "'");
  }
  throw std::invalid_argument("generator spec: unknown kind '" + kind + "'");
}

}  // namespace mpcgraph

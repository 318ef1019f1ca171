#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mpcgraph {

using VertexId = uint32_t;

// Canonical undirected edge: u < v always. An edge's identity is its index
// in Graph::edges(), which is sorted lexicographically; algorithms that
// attach weights to edges index by that position.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge& a, const Edge& b) {
    return std::pair{a.u, a.v} <=> std::pair{b.u, b.v};
  }
};

// Immutable simple undirected graph. Vertex ids are dense in [0, n).
// Neighbor lists are sorted; adjacency is symmetric; no self-loops or
// parallel edges survive construction.
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(VertexId n, std::vector<Edge> edges) {
    for (Edge& e : edges) {
      if (e.u == e.v) throw std::invalid_argument("graph: self-loop");
      if (e.u >= n || e.v >= n) throw std::invalid_argument("graph: vertex id out of range");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.build_adjacency();
    return g;
  }

  VertexId num_vertices() const { return n_; }
  size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

  uint32_t degree(VertexId v) const {
    return static_cast<uint32_t>(offsets_[v + 1] - offsets_[v]);
  }

  uint32_t max_degree() const {
    uint32_t d = 0;
    for (VertexId v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
  }

  bool has_edge(VertexId u, VertexId v) const { return edge_id(u, v).has_value(); }

  // Index of the canonical edge {u, v}, if present.
  std::optional<size_t> edge_id(VertexId u, VertexId v) const {
    if (u > v) std::swap(u, v);
    Edge probe{u, v};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), probe);
    if (it == edges_.end() || !(*it == probe)) return std::nullopt;
    return static_cast<size_t>(it - edges_.begin());
  }

 private:
  void build_adjacency() {
    offsets_.assign(static_cast<size_t>(n_) + 1, 0);
    for (const Edge& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    adj_.resize(2 * edges_.size());
    std::vector<size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const Edge& e : edges_) {
      adj_[cursor[e.u]++] = e.v;
      adj_[cursor[e.v]++] = e.u;
    }
    // Edges are lex-sorted, so each neighbor list comes out sorted already.
  }

  VertexId n_ = 0;
  std::vector<Edge> edges_;
  std::vector<size_t> offsets_;
  std::vector<VertexId> adj_;
};

// Full-scan structural check; used by tests and the loader.
inline void validate(const Graph& g) {
  size_t deg_sum = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    auto nb = g.neighbors(v);
    deg_sum += nb.size();
    for (size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] == v) throw std::logic_error("validate: self-loop");
      if (i > 0 && nb[i - 1] >= nb[i]) throw std::logic_error("validate: neighbors not sorted/unique");
      if (!g.has_edge(v, nb[i])) throw std::logic_error("validate: asymmetric adjacency");
    }
  }
  if (deg_sum != 2 * g.num_edges()) throw std::logic_error("validate: degree sum mismatch");
}

struct LoadedGraph {
  Graph graph;
  // original_id[dense] = id as it appeared in the input stream.
  std::vector<uint64_t> original_id;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Edge-list format: one "u v" pair per line, decimal ids, '#' comments,
// blank lines ignored. Ids need not be dense; they are remapped to [0, n)
// in order of first appearance. Duplicate lines collapse; self-loops are
// rejected with their line number.
inline LoadedGraph load_edge_list(std::istream& in) {
  std::unordered_map<uint64_t, VertexId> remap;
  std::vector<uint64_t> original;
  std::vector<Edge> edges;

  auto intern = [&](uint64_t id) {
    auto [it, inserted] = remap.try_emplace(id, static_cast<VertexId>(original.size()));
    if (inserted) original.push_back(id);
    return it->second;
  };

  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    uint64_t a, b;
    if (!(ls >> a >> b)) throw ParseError("edge list: malformed line", lineno);
    std::string rest;
    if (ls >> rest) throw ParseError("edge list: trailing tokens", lineno);
    if (a == b) throw ParseError("edge list: self-loop", lineno);
    VertexId u = intern(a), v = intern(b);
    edges.push_back(u < v ? Edge{u, v} : Edge{v, u});
  }

  LoadedGraph out;
  out.graph = Graph::from_edges(static_cast<VertexId>(original.size()), std::move(edges));
  out.original_id = std::move(original);
  return out;
}

struct InducedGraph {
  Graph graph;
  // origin[dense-id-in-subgraph] = id in the parent graph.
  std::vector<VertexId> origin;
};

// Subgraph induced on `keep` (ids relative to g). The result contains
// exactly the edges of g with both endpoints kept, relabeled densely in
// the order the kept vertices appear in [0, n).
inline InducedGraph induced_subgraph(const Graph& g, const std::vector<VertexId>& keep) {
  std::vector<VertexId> new_id(g.num_vertices(), UINT32_MAX);
  InducedGraph out;
  for (VertexId v : keep) {
    if (v >= g.num_vertices()) throw std::invalid_argument("induced_subgraph: vertex out of range");
    if (new_id[v] != UINT32_MAX) continue;
    new_id[v] = static_cast<VertexId>(out.origin.size());
    out.origin.push_back(v);
  }
  std::sort(out.origin.begin(), out.origin.end());
  for (VertexId i = 0; i < out.origin.size(); ++i) new_id[out.origin[i]] = i;

  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (new_id[e.u] != UINT32_MAX && new_id[e.v] != UINT32_MAX) {
      edges.push_back({new_id[e.u], new_id[e.v]});
    }
  }
  out.graph = Graph::from_edges(static_cast<VertexId>(out.origin.size()), std::move(edges));
  return out;
}

}  // namespace mpcgraph

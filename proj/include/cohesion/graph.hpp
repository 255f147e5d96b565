#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cohesion/disjoint_set.hpp"

namespace cohesion {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

struct Edge {
  VertexId lo = 0;
  VertexId hi = 0;
  double weight = 1.0;
};

struct Adjacent {
  VertexId vertex;
  EdgeId edge;
};

class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::uint64_t pair_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Open-addressing map from canonical vertex pair to edge id.
class EdgeIndex {
 public:
  EdgeIndex() = default;

  explicit EdgeIndex(std::span<const Edge> edges) {
    std::size_t cap = 16;
    while (cap < edges.size() * 2 + 1) cap <<= 1;
    mask_ = cap - 1;
    keys_.assign(cap, kEmpty);
    ids_.assign(cap, kNoEdge);
    for (EdgeId e = 0; e < edges.size(); ++e) {
      std::uint64_t key = pair_key(edges[e].lo, edges[e].hi);
      std::size_t slot = mix64(key) & mask_;
      while (keys_[slot] != kEmpty) slot = (slot + 1) & mask_;
      keys_[slot] = key;
      ids_[slot] = e;
    }
  }

  EdgeId find(VertexId a, VertexId b) const {
    if (keys_.empty()) return kNoEdge;
    std::uint64_t key = pair_key(a, b);
    std::size_t slot = mix64(key) & mask_;
    while (keys_[slot] != kEmpty) {
      if (keys_[slot] == key) return ids_[slot];
      slot = (slot + 1) & mask_;
    }
    return kNoEdge;
  }

 private:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
  std::vector<std::uint64_t> keys_;
  std::vector<EdgeId> ids_;
  std::size_t mask_ = 0;
};

}  // namespace detail

// Immutable simple undirected graph.  Edges are stored canonically (lo < hi)
// and adjacency lists are sorted by neighbor id.
class Graph {
 public:
  Graph() = default;

  // `edges` must already be canonical and free of duplicates; use
  // GraphBuilder for raw input.
  Graph(std::vector<std::string> labels, std::vector<Edge> edges, bool weighted = false)
      : labels_(std::move(labels)), edges_(std::move(edges)), weighted_(weighted) {
    const std::size_t n = labels_.size();
    offsets_.assign(n + 1, 0);
    for (const Edge& e : edges_) {
      if (e.lo >= e.hi || e.hi >= n) throw validation_error("non-canonical edge");
      if (!(e.weight > 0.0) || !std::isfinite(e.weight))
        throw validation_error("edge weight must be positive");
      ++offsets_[e.lo + 1];
      ++offsets_[e.hi + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adjacency_.resize(2 * edges_.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (EdgeId id = 0; id < edges_.size(); ++id) {
      const Edge& e = edges_[id];
      adjacency_[fill[e.lo]++] = {e.hi, id};
      adjacency_[fill[e.hi]++] = {e.lo, id};
    }
    for (VertexId v = 0; v < n; ++v) {
      std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1],
                [](const Adjacent& a, const Adjacent& b) { return a.vertex < b.vertex; });
    }
    index_ = detail::EdgeIndex(edges_);
    for (VertexId v = 0; v < n; ++v) {
      auto nb = neighbors(v);
      for (std::size_t i = 1; i < nb.size(); ++i)
        if (nb[i].vertex == nb[i - 1].vertex) throw validation_error("duplicate edge");
    }
  }

  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool weighted() const { return weighted_; }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }

  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::span<const Adjacent> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], degree(v)};
  }

  // Constant-time edge lookup; kNoEdge when absent.
  EdgeId edge_id(VertexId a, VertexId b) const { return a == b ? kNoEdge : index_.find(a, b); }

  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const {
    EdgeId e = edge_id(a, b);
    if (e == kNoEdge) return std::nullopt;
    return e;
  }

  const std::string& label(VertexId v) const { return labels_[v]; }
  std::span<const std::string> labels() const { return labels_; }

  VertexId other(EdgeId e, VertexId v) const {
    return edges_[e].lo == v ? edges_[e].hi : edges_[e].lo;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Adjacent> adjacency_;
  detail::EdgeIndex index_;
  bool weighted_ = false;
};

// Accumulates raw edges.  Self-loops are dropped; duplicate edges collapse
// and keep the maximum weight.
class GraphBuilder {
 public:
  VertexId vertex(std::string_view label) {
    auto it = ids_.find(std::string(label));
    if (it != ids_.end()) return it->second;
    VertexId id = static_cast<VertexId>(labels_.size());
    labels_.emplace_back(label);
    ids_.emplace(labels_.back(), id);
    return id;
  }

  // Adds `count` vertices labelled by their decimal id.
  void add_numbered_vertices(std::size_t count) {
    labels_.reserve(labels_.size() + count);
    for (std::size_t i = 0; i < count; ++i) vertex(std::to_string(labels_.size()));
  }

  void add_edge(VertexId a, VertexId b, double weight = 1.0) {
    if (!(weight > 0.0) || !std::isfinite(weight))
      throw validation_error("edge weight must be positive");
    if (a == b) return;
    auto [it, fresh] = slot_.try_emplace(detail::pair_key(a, b), edges_.size());
    if (fresh) {
      edges_.push_back({std::min(a, b), std::max(a, b), weight});
    } else {
      edges_[it->second].weight = std::max(edges_[it->second].weight, weight);
    }
  }

  void add_edge(std::string_view a, std::string_view b, double weight = 1.0) {
    VertexId u = vertex(a);
    VertexId v = vertex(b);
    add_edge(u, v, weight);
  }

  void set_weighted(bool weighted) { weighted_ = weighted; }

  Graph build() && { return Graph(std::move(labels_), std::move(edges_), weighted_); }
  Graph build() const& { return Graph(labels_, edges_, weighted_); }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId> ids_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, std::size_t> slot_;
  bool weighted_ = false;
};

struct LoadOptions {
  bool weighted = false;
};

// Reads "u v [w]" lines; '#' comments and blank lines are skipped.
inline Graph load_edge_list(std::istream& in, LoadOptions options = {}) {
  GraphBuilder builder;
  builder.set_weighted(options.weighted);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string_view> tokens;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    tokens.clear();
    while (true) {
      std::size_t start = rest.find_first_not_of(" \t\r\n\v\f");
      if (start == std::string_view::npos) break;
      rest.remove_prefix(start);
      std::size_t end = rest.find_first_of(" \t\r\n\v\f");
      tokens.push_back(rest.substr(0, end));
      if (end == std::string_view::npos) break;
      rest.remove_prefix(end);
    }
    if (tokens.empty() || tokens.front().front() == '#') continue;
    const std::size_t expected = options.weighted ? 3 : 2;
    if (tokens.size() != expected) {
      throw parse_error(line_no, "expected " + std::to_string(expected) + " tokens, found " +
                                     std::to_string(tokens.size()));
    }
    double weight = 1.0;
    if (options.weighted) {
      std::string_view tok = tokens[2];
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), weight);
      if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw parse_error(line_no, "bad weight '" + std::string(tok) + "'");
      if (!(weight > 0.0) || !std::isfinite(weight))
        throw validation_error("line " + std::to_string(line_no) + ": weight must be positive");
    }
    builder.add_edge(tokens[0], tokens[1], weight);
  }
  return std::move(builder).build();
}

inline Graph load_edge_list_file(const std::string& path, LoadOptions options = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_edge_list(in, options);
}

inline void write_label_table(std::ostream& out, const Graph& g) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) out << v << '\t' << g.label(v) << '\n';
}

// Total order on vertices: ascending degree, ties by external label.
struct VertexRanking {
  std::vector<std::uint32_t> rank;  // vertex -> position
  std::vector<VertexId> order;      // position -> vertex

  bool lower(VertexId a, VertexId b) const { return rank[a] < rank[b]; }
};

inline VertexRanking vertex_ranking(const Graph& g) {
  VertexRanking r;
  r.order.resize(g.vertex_count());
  std::iota(r.order.begin(), r.order.end(), VertexId{0});
  std::sort(r.order.begin(), r.order.end(), [&](VertexId a, VertexId b) {
    if (g.degree(a) != g.degree(b)) return g.degree(a) < g.degree(b);
    return g.label(a) < g.label(b);
  });
  r.rank.resize(g.vertex_count());
  for (std::uint32_t i = 0; i < r.order.size(); ++i) r.rank[r.order[i]] = i;
  return r;
}

using EdgeSet = std::vector<EdgeId>;

// Groups the given edges into vertex-connected components.  Components are
// ordered by smallest edge id; edges within a component ascend.
inline std::vector<EdgeSet> edge_components(const Graph& g, std::span<const EdgeId> subset) {
  DisjointSet dsu(g.vertex_count());
  for (EdgeId e : subset) dsu.unite(g.edge(e).lo, g.edge(e).hi);
  std::vector<EdgeId> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  std::unordered_map<std::uint32_t, std::size_t> slot;
  std::vector<EdgeSet> out;
  for (EdgeId e : sorted) {
    auto [it, fresh] = slot.try_emplace(dsu.find(g.edge(e).lo), out.size());
    if (fresh) out.emplace_back();
    out[it->second].push_back(e);
  }
  return out;
}

inline std::vector<EdgeSet> connected_components(const Graph& g) {
  std::vector<EdgeId> all(g.edge_count());
  std::iota(all.begin(), all.end(), EdgeId{0});
  return edge_components(g, all);
}

struct EdgeSubgraph {
  Graph graph;
  std::vector<EdgeId> parent_edge;      // subgraph edge -> original edge
  std::vector<VertexId> parent_vertex;  // subgraph vertex -> original vertex
};

inline EdgeSubgraph induced_edge_subgraph(const Graph& g, std::span<const EdgeId> subset) {
  std::vector<EdgeId> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  EdgeSubgraph sub;
  std::vector<VertexId> local(g.vertex_count(), std::numeric_limits<VertexId>::max());
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  auto map_vertex = [&](VertexId v) {
    if (local[v] == std::numeric_limits<VertexId>::max()) {
      local[v] = static_cast<VertexId>(sub.parent_vertex.size());
      sub.parent_vertex.push_back(v);
      labels.push_back(g.label(v));
    }
    return local[v];
  };
  for (EdgeId e : sorted) {
    if (e >= g.edge_count()) throw std::out_of_range("unknown edge id " + std::to_string(e));
    const Edge& ed = g.edge(e);
    VertexId a = map_vertex(ed.lo);
    VertexId b = map_vertex(ed.hi);
    edges.push_back({std::min(a, b), std::max(a, b), ed.weight});
    sub.parent_edge.push_back(e);
  }
  sub.graph = Graph(std::move(labels), std::move(edges), g.weighted());
  return sub;
}

}  // namespace cohesion

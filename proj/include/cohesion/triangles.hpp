#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <vector>

#include "cohesion/graph.hpp"

namespace cohesion {

// Per-edge triangle counts, indexed by edge id.
using SupportMap = std::vector<std::uint32_t>;

// MinBucket enumeration: every edge is filed under its lower-ranked endpoint
// and each pair within a bucket is closed by a constant-time lookup.  Each
// triangle is reported exactly once, from its lowest-ranked vertex, as the
// two bucket edges followed by the closing edge.
template <typename Fn>
void for_each_triangle(const Graph& g, const VertexRanking& ranking, Fn&& fn) {
  std::vector<Adjacent> bucket;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    bucket.clear();
    for (const Adjacent& a : g.neighbors(u))
      if (ranking.rank[a.vertex] > ranking.rank[u]) bucket.push_back(a);
    for (std::size_t i = 0; i < bucket.size(); ++i) {
      for (std::size_t j = i + 1; j < bucket.size(); ++j) {
        EdgeId closing = g.edge_id(bucket[i].vertex, bucket[j].vertex);
        if (closing != kNoEdge) fn(bucket[i].edge, bucket[j].edge, closing);
      }
    }
  }
}

template <typename Fn>
void for_each_triangle(const Graph& g, Fn&& fn) {
  for_each_triangle(g, vertex_ranking(g), std::forward<Fn>(fn));
}

inline SupportMap edge_supports(const Graph& g, const VertexRanking& ranking) {
  SupportMap sup(g.edge_count(), 0);
  for_each_triangle(g, ranking, [&](EdgeId a, EdgeId b, EdgeId c) {
    ++sup[a];
    ++sup[b];
    ++sup[c];
  });
  return sup;
}

inline SupportMap edge_supports(const Graph& g) { return edge_supports(g, vertex_ranking(g)); }

// Reference implementation: common neighbours by sorted-list intersection.
inline SupportMap brute_force_supports(const Graph& g) {
  SupportMap sup(g.edge_count(), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto a = g.neighbors(g.edge(e).lo);
    auto b = g.neighbors(g.edge(e).hi);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i].vertex < b[j].vertex) {
        ++i;
      } else if (b[j].vertex < a[i].vertex) {
        ++j;
      } else {
        ++sup[e];
        ++i;
        ++j;
      }
    }
  }
  return sup;
}

inline std::uint64_t triangle_count(const SupportMap& sup) {
  return std::accumulate(sup.begin(), sup.end(), std::uint64_t{0}) / 3;
}

inline void write_supports_tsv(std::ostream& out, const Graph& g, const SupportMap& sup) {
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    out << g.label(g.edge(e).lo) << '\t' << g.label(g.edge(e).hi) << '\t' << sup[e] << '\n';
}

}  // namespace cohesion

#pragma once

#include <cstdint>
#include <vector>

#include "cohesion/cluster_family.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/truss.hpp"

namespace cohesion {

// Clusters merge only through shared triangles, so each level holds the
// triangle-connected components of the edges of class >= that level.
inline ClusterFamily strong_truss_family(const Graph& g, const KClassDecomposition& d) {
  detail::FamilyBuilder b(g.edge_count());
  std::vector<std::uint32_t> id_of(g.edge_count(), kNoEdge);
  for (auto it = d.classes.rbegin(); it != d.classes.rend(); ++it) {
    for (EdgeId e : it->second) {
      std::uint32_t id = b.add_leaf(e, it->first);
      VertexId u = g.edge(e).lo, v = g.edge(e).hi;
      if (g.degree(v) < g.degree(u)) std::swap(u, v);
      for (const Adjacent& a : g.neighbors(u)) {
        if (a.vertex == v || id_of[a.edge] == kNoEdge) continue;
        EdgeId closing = g.edge_id(v, a.vertex);
        if (closing == kNoEdge || id_of[closing] == kNoEdge) continue;
        b.unite(id, id_of[a.edge]);
        b.unite(id, id_of[closing]);
      }
      id_of[e] = id;
    }
    b.finish_level(it->first);
  }
  return std::move(b).build();
}

inline std::vector<EdgeSet> strong_trusses_at(const ClusterFamily& f, std::uint32_t k) {
  require_truss_level(k);
  std::vector<EdgeSet> out;
  for (Cluster& c : f.clusters_at(k))
    if (c.edges.size() >= 2) out.push_back(std::move(c.edges));
  return out;
}

inline std::vector<Cluster> summit_strong_trusses(const ClusterFamily& f) { return f.summits(); }

}  // namespace cohesion

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "cohesion/cluster_family.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/triangles.hpp"

namespace cohesion {

struct KClassDecomposition {
  std::vector<std::uint32_t> phi;                 // indexed by edge id
  std::uint32_t k_max = 0;                        // 0 for an edgeless graph
  std::map<std::uint32_t, EdgeSet> classes;       // only non-empty classes

  const EdgeSet& class_edges(std::uint32_t k) const {
    static const EdgeSet empty;
    auto it = classes.find(k);
    return it == classes.end() ? empty : it->second;
  }
};

struct TrussSet {
  std::uint32_t k = 0;
  std::vector<EdgeSet> members;
};

namespace detail {

inline KClassDecomposition classes_from_phi(std::vector<std::uint32_t> phi) {
  KClassDecomposition d;
  for (EdgeId e = 0; e < phi.size(); ++e) {
    d.classes[phi[e]].push_back(e);
    d.k_max = std::max(d.k_max, phi[e]);
  }
  d.phi = std::move(phi);
  return d;
}

// Bucket-queue peeling shared by the plain and weighted decompositions.
// `support` holds the initial (weighted) support and `delta(e, f, g)` the
// amount a triangle contributes.  Each popped edge fixes its class at
// current support + 2; neighbours are lowered but never below that floor.
template <typename Delta>
std::vector<std::uint32_t> peel(const Graph& g, const std::vector<std::uint64_t>& support,
                                Delta&& delta) {
  const std::size_t m = g.edge_count();
  std::vector<std::uint32_t> phi(m, 2);
  if (m == 0) return phi;

  std::uint64_t top = *std::max_element(support.begin(), support.end());
  constexpr std::uint32_t nil = kNoEdge;
  std::vector<std::uint32_t> head(top + 1, nil), tail(top + 1, nil);
  std::vector<std::uint32_t> next(m, nil), prev(m, nil);
  std::vector<std::uint64_t> level(support);
  std::vector<char> removed(m, 0);

  auto push = [&](EdgeId e) {
    std::uint64_t b = level[e];
    prev[e] = tail[b];
    next[e] = nil;
    if (tail[b] != nil) next[tail[b]] = e; else head[b] = e;
    tail[b] = e;
  };
  auto unlink = [&](EdgeId e) {
    std::uint64_t b = level[e];
    if (prev[e] != nil) next[prev[e]] = next[e]; else head[b] = next[e];
    if (next[e] != nil) prev[next[e]] = prev[e]; else tail[b] = prev[e];
  };
  for (EdgeId e = 0; e < m; ++e) push(e);

  std::uint64_t cur = 0;
  auto lower = [&](EdgeId f, std::uint64_t amount) {
    if (amount == 0 || level[f] <= cur) return;
    unlink(f);
    level[f] = level[f] - cur > amount ? level[f] - amount : cur;
    push(f);
  };

  for (std::size_t done = 0; done < m; ++done) {
    while (head[cur] == nil) ++cur;
    EdgeId e = head[cur];
    unlink(e);
    removed[e] = 1;
    phi[e] = static_cast<std::uint32_t>(cur + 2);

    VertexId u = g.edge(e).lo, v = g.edge(e).hi;
    if (g.degree(v) < g.degree(u)) std::swap(u, v);
    for (const Adjacent& a : g.neighbors(u)) {
      if (a.vertex == v || removed[a.edge]) continue;
      EdgeId closing = g.edge_id(v, a.vertex);
      if (closing == kNoEdge || removed[closing]) continue;
      std::uint64_t amount = delta(e, a.edge, closing);
      lower(a.edge, amount);
      lower(closing, amount);
    }
  }
  return phi;
}

}  // namespace detail

// Trussness of every edge by bucket-queue peeling.
inline KClassDecomposition k_classes(const Graph& g, const SupportMap& sup) {
  std::vector<std::uint64_t> s(sup.begin(), sup.end());
  return detail::classes_from_phi(
      detail::peel(g, s, [](EdgeId, EdgeId, EdgeId) { return std::uint64_t{1}; }));
}

inline KClassDecomposition k_classes(const Graph& g) { return k_classes(g, edge_supports(g)); }

inline void require_truss_level(std::uint32_t k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
}

inline TrussSet trusses_at(const Graph& g, const KClassDecomposition& d, std::uint32_t k) {
  require_truss_level(k);
  EdgeSet keep;
  for (EdgeId e = 0; e < d.phi.size(); ++e)
    if (d.phi[e] >= k) keep.push_back(e);
  return {k, edge_components(g, keep)};
}

// Direct check of the definition: delete under-supported edges until stable.
inline TrussSet iterative_deletion_oracle(const Graph& g, std::uint32_t k) {
  require_truss_level(k);
  std::vector<char> alive(g.edge_count(), 1);
  for (bool changed = true; changed;) {
    changed = false;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (!alive[e]) continue;
      std::uint32_t count = 0;
      VertexId u = g.edge(e).lo, v = g.edge(e).hi;
      for (const Adjacent& a : g.neighbors(u)) {
        if (a.vertex == v || !alive[a.edge]) continue;
        EdgeId c = g.edge_id(v, a.vertex);
        if (c != kNoEdge && alive[c]) ++count;
      }
      if (count + 2 < k) {
        alive[e] = 0;
        changed = true;
      }
    }
  }
  EdgeSet keep;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (alive[e]) keep.push_back(e);
  return {k, edge_components(g, keep)};
}

// Single-link agglomeration: classes are added from k_max down, and clusters
// sharing a vertex merge at the level of the edge that links them.
inline ClusterFamily truss_dendrogram(const KClassDecomposition& d, const Graph& g) {
  detail::FamilyBuilder b(g.edge_count());
  std::vector<std::uint32_t> anchor(g.vertex_count(), kNoEdge);
  for (auto it = d.classes.rbegin(); it != d.classes.rend(); ++it) {
    for (EdgeId e : it->second) {
      std::uint32_t id = b.add_leaf(e, it->first);
      for (VertexId x : {g.edge(e).lo, g.edge(e).hi}) {
        if (anchor[x] == kNoEdge) anchor[x] = id; else b.unite(id, anchor[x]);
      }
    }
    b.finish_level(it->first);
  }
  return std::move(b).build();
}

// Maximal trusses whose every edge has trussness equal to the truss level.
// Single-edge components are not reported.
inline std::vector<Cluster> summit_trusses(const KClassDecomposition& d, const Graph& g) {
  return truss_dendrogram(d, g).summits();
}

inline void write_trussness_tsv(std::ostream& out, const Graph& g, const KClassDecomposition& d) {
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    out << g.label(g.edge(e).lo) << '\t' << g.label(g.edge(e).hi) << '\t' << d.phi[e] << '\n';
}

inline void write_truss_tsv(std::ostream& out, const Graph& g, const TrussSet& t) {
  for (std::size_t i = 0; i < t.members.size(); ++i)
    for (EdgeId e : t.members[i])
      out << t.k << '\t' << i << '\t' << g.label(g.edge(e).lo) << '\t' << g.label(g.edge(e).hi)
          << '\n';
}

inline void write_dendrogram_tsv(std::ostream& out, const ClusterFamily& f) {
  for (const Merge& m : f.merges()) {
    out << m.level << '\t';
    for (std::size_t i = 0; i < m.absorbed.size(); ++i) out << (i ? "," : "") << m.absorbed[i];
    out << '\t' << m.result << '\n';
  }
}

}  // namespace cohesion

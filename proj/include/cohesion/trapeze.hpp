#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "cohesion/disjoint_set.hpp"
#include "cohesion/graph.hpp"

namespace cohesion {

enum class TriadKind : std::uint8_t { low_apex, median_apex };

struct Triad {
  VertexId apex;
  VertexId u, v;  // periphery, rank(u) < rank(v)
  TriadKind kind;
};

struct TrapezeSet {
  std::uint32_t k = 0;
  std::vector<EdgeSet> members;
};

// Edge-triad-periphery bookkeeping for rectangle support.  Edge vertices
// share ids with the graph edges; an edge with no admissible triad in a
// productive periphery is absent from the start.
class ETPGraph {
 public:
  using TriadId = std::uint32_t;
  using PeripheryId = std::uint32_t;

  std::size_t edge_slots() const { return edge_alive_.size(); }
  std::size_t triad_count() const { return triads_.size(); }
  std::size_t periphery_count() const { return periph_u_.size(); }

  const Triad& triad(TriadId t) const { return triads_[t]; }
  EdgeId triad_edge(TriadId t, int side) const { return side == 0 ? tri_a_[t] : tri_b_[t]; }
  PeripheryId triad_periphery(TriadId t) const { return tri_p_[t]; }
  bool triad_alive(TriadId t) const { return tri_alive_[t]; }

  std::pair<VertexId, VertexId> periphery(PeripheryId p) const { return {periph_u_[p], periph_v_[p]}; }
  bool periphery_alive(PeripheryId p) const { return p_alive_[p]; }
  std::uint32_t periphery_degree(PeripheryId p) const { return p_deg_[p]; }
  std::int64_t last_reported(PeripheryId p) const { return q_[p]; }

  bool edge_alive(EdgeId e) const { return edge_alive_[e]; }
  std::uint32_t edge_degree(EdgeId e) const { return e_deg_[e]; }
  std::int64_t tentative_support(EdgeId e) const { return s_[e]; }
  std::uint32_t threshold() const { return k_; }
  bool initialized() const { return initialized_; }

  std::span<const TriadId> triads_of_edge(EdgeId e) const {
    return {e_triads_.data() + e_off_[e], e_triads_.data() + e_off_[e + 1]};
  }
  std::span<const TriadId> triads_of_periphery(PeripheryId p) const {
    return {p_triads_.data() + p_off_[p], p_triads_.data() + p_off_[p + 1]};
  }

  EdgeSet surviving_edges() const {
    EdgeSet out;
    for (EdgeId e = 0; e < edge_alive_.size(); ++e)
      if (edge_alive_[e]) out.push_back(e);
    return out;
  }

  // Exact rectangle count per edge from the current periphery degrees.
  std::vector<std::uint64_t> exact_supports() const {
    std::vector<std::uint64_t> out(edge_alive_.size(), 0);
    for (TriadId t = 0; t < triads_.size(); ++t) {
      if (!tri_alive_[t]) continue;
      std::uint64_t c = p_deg_[tri_p_[t]] - 1;
      out[tri_a_[t]] += c;
      out[tri_b_[t]] += c;
    }
    return out;
  }

  // Seeds Q and S from the periphery degrees; runs once per instance.
  void initialize() {
    if (initialized_) return;
    initialized_ = true;
    for (PeripheryId p = 0; p < q_.size(); ++p) q_[p] = p_alive_[p] ? p_deg_[p] - 1 : 0;
    std::fill(s_.begin(), s_.end(), 0);
    for (TriadId t = 0; t < triads_.size(); ++t) {
      if (!tri_alive_[t]) continue;
      s_[tri_a_[t]] += q_[tri_p_[t]];
      s_[tri_b_[t]] += q_[tri_p_[t]];
    }
  }

  void set_threshold(std::uint32_t k) {
    if (k < 1) throw std::invalid_argument("trapeze support must be at least 1");
    if (k < k_) throw std::invalid_argument("trapeze support levels must be non-decreasing");
    k_ = k;
  }

  // Removes edge vertices until every survivor has at least k rectangles.
  void trim(std::uint32_t k) {
    set_threshold(k);
    initialize();
    // Peripheries skipped earlier because their support exceeded the old
    // threshold may now fall short of the new one.
    std::vector<PeripheryId> stale;
    stale.swap(stale_);
    for (PeripheryId p : stale) {
      p_stale_[p] = 0;
      if (p_alive_[p]) examine_periphery(p);
    }
    for (EdgeId e = 0; e < edge_alive_.size(); ++e)
      if (edge_alive_[e] && s_[e] < k_) slate(e);
    while (!kill_.empty() || !touched_.empty()) {
      for (std::size_t i = 0; i < kill_.size(); ++i) {
        EdgeId e = kill_[i];
        in_kill_[e] = 0;
        if (edge_alive_[e]) remove_edge_vertex(e);
      }
      kill_.clear();
      std::vector<PeripheryId> touched;
      touched.swap(touched_);
      for (PeripheryId p : touched) {
        in_touched_[p] = 0;
        examine_periphery(p);
      }
    }
  }

  void remove_edge_vertex(EdgeId e) {
    if (!edge_alive_[e]) return;
    for (TriadId t : triads_of_edge(e)) {
      if (!tri_alive_[t]) continue;
      PeripheryId p = tri_p_[t];
      touch(p);
      EdgeId other = tri_a_[t] == e ? tri_b_[t] : tri_a_[t];
      if (e_deg_[other] == 1) {
        edge_alive_[other] = 0;
        s_[other] = 0;
      } else {
        s_[other] -= q_[p];
        if (s_[other] < k_) slate(other);
      }
      kill_triad(t);
    }
    edge_alive_[e] = 0;
    s_[e] = 0;
  }

  // An edge whose support drops below k is slated for removal.  A
  // periphery still offering at least k rectangles is left unpropagated and
  // revisited when the threshold rises.
  void examine_periphery(PeripheryId p) {
    if (!p_alive_[p]) return;
    if (p_deg_[p] == 0) {
      p_alive_[p] = 0;
      return;
    }
    std::int64_t s = static_cast<std::int64_t>(p_deg_[p]) - 1;
    if (s != q_[p] && s >= static_cast<std::int64_t>(k_)) {
      if (!p_stale_[p]) {
        p_stale_[p] = 1;
        stale_.push_back(p);
      }
      return;
    }
    std::int64_t delta = s - q_[p];
    q_[p] = s;
    if (delta != 0) {
      for (TriadId t : triads_of_periphery(p)) {
        if (!tri_alive_[t]) continue;
        for (EdgeId e : {tri_a_[t], tri_b_[t]}) {
          s_[e] += delta;
          if (s_[e] < k_) slate(e);
        }
      }
    }
    if (s == 0) {
      for (TriadId t : triads_of_periphery(p))
        if (tri_alive_[t]) kill_triad(t);
      p_alive_[p] = 0;
    }
  }

  std::span<const EdgeId> pending_removals() const { return kill_; }
  std::span<const PeripheryId> pending_peripheries() const { return touched_; }

 private:
  friend ETPGraph build_etp_graph(const Graph& g, const VertexRanking& ranking);

  void slate(EdgeId e) {
    if (in_kill_[e]) return;
    in_kill_[e] = 1;
    kill_.push_back(e);
  }

  void touch(PeripheryId p) {
    if (in_touched_[p]) return;
    in_touched_[p] = 1;
    touched_.push_back(p);
  }

  void kill_triad(TriadId t) {
    tri_alive_[t] = 0;
    --p_deg_[tri_p_[t]];
    --e_deg_[tri_a_[t]];
    --e_deg_[tri_b_[t]];
  }

  std::vector<Triad> triads_;
  std::vector<EdgeId> tri_a_, tri_b_;
  std::vector<PeripheryId> tri_p_;
  std::vector<char> tri_alive_;

  std::vector<VertexId> periph_u_, periph_v_;
  std::vector<std::uint32_t> p_deg_;
  std::vector<std::int64_t> q_;
  std::vector<char> p_alive_, p_stale_, in_touched_;
  std::vector<std::uint32_t> p_off_;
  std::vector<TriadId> p_triads_;

  std::vector<char> edge_alive_, in_kill_;
  std::vector<std::uint32_t> e_deg_;
  std::vector<std::int64_t> s_;
  std::vector<std::uint32_t> e_off_;
  std::vector<TriadId> e_triads_;

  std::vector<EdgeId> kill_;
  std::vector<PeripheryId> touched_, stale_;
  std::uint32_t k_ = 0;
  bool initialized_ = false;
};

namespace detail {

// Calls fn(apex, edge to u, edge to v, u, v, kind) for every admissible triad,
// with rank(u) < rank(v).  Apex v pairs its up-edges with each other
// (low-apex) and with its down-edges (median-apex).
template <typename Fn>
void for_each_admissible_triad(const Graph& g, const VertexRanking& r, Fn&& fn) {
  std::vector<Adjacent> up, down;
  for (VertexId a = 0; a < g.vertex_count(); ++a) {
    up.clear();
    down.clear();
    for (const Adjacent& x : g.neighbors(a)) (r.rank[x.vertex] > r.rank[a] ? up : down).push_back(x);
    for (std::size_t i = 0; i < up.size(); ++i) {
      for (std::size_t j = i + 1; j < up.size(); ++j) {
        const Adjacent *x = &up[i], *y = &up[j];
        if (r.rank[y->vertex] < r.rank[x->vertex]) std::swap(x, y);
        fn(a, x->edge, y->edge, x->vertex, y->vertex, TriadKind::low_apex);
      }
      for (const Adjacent& y : down) fn(a, y.edge, up[i].edge, y.vertex, up[i].vertex, TriadKind::median_apex);
    }
  }
}

}  // namespace detail

inline ETPGraph build_etp_graph(const Graph& g, const VertexRanking& ranking) {
  const std::size_t m = g.edge_count();
  std::unordered_map<std::uint64_t, std::uint32_t> count;
  detail::for_each_admissible_triad(g, ranking, [&](VertexId, EdgeId, EdgeId, VertexId u, VertexId v, TriadKind) {
    ++count[detail::pair_key(u, v)];
  });

  ETPGraph t;
  std::unordered_map<std::uint64_t, std::uint32_t> pid;
  detail::for_each_admissible_triad(g, ranking, [&](VertexId a, EdgeId eu, EdgeId ev, VertexId u, VertexId v, TriadKind kind) {
    std::uint64_t key = detail::pair_key(u, v);
    if (count[key] < 2) return;
    auto [it, fresh] = pid.try_emplace(key, static_cast<std::uint32_t>(t.periph_u_.size()));
    if (fresh) {
      t.periph_u_.push_back(u);
      t.periph_v_.push_back(v);
    }
    t.triads_.push_back({a, u, v, kind});
    t.tri_a_.push_back(eu);
    t.tri_b_.push_back(ev);
    t.tri_p_.push_back(it->second);
  });

  const std::size_t nt = t.triads_.size(), np = t.periph_u_.size();
  t.tri_alive_.assign(nt, 1);
  t.p_deg_.assign(np, 0);
  t.e_deg_.assign(m, 0);
  for (std::size_t i = 0; i < nt; ++i) {
    ++t.p_deg_[t.tri_p_[i]];
    ++t.e_deg_[t.tri_a_[i]];
    ++t.e_deg_[t.tri_b_[i]];
  }
  t.p_off_.assign(np + 1, 0);
  for (std::size_t p = 0; p < np; ++p) t.p_off_[p + 1] = t.p_off_[p] + t.p_deg_[p];
  t.e_off_.assign(m + 1, 0);
  for (std::size_t e = 0; e < m; ++e) t.e_off_[e + 1] = t.e_off_[e] + t.e_deg_[e];
  t.p_triads_.resize(nt);
  t.e_triads_.resize(2 * nt);
  {
    std::vector<std::uint32_t> pf(t.p_off_.begin(), t.p_off_.end() - 1);
    std::vector<std::uint32_t> ef(t.e_off_.begin(), t.e_off_.end() - 1);
    for (std::uint32_t i = 0; i < nt; ++i) {
      t.p_triads_[pf[t.tri_p_[i]]++] = i;
      t.e_triads_[ef[t.tri_a_[i]]++] = i;
      t.e_triads_[ef[t.tri_b_[i]]++] = i;
    }
  }
  t.q_.assign(np, 0);
  t.p_alive_.assign(np, 1);
  t.p_stale_.assign(np, 0);
  t.in_touched_.assign(np, 0);
  t.edge_alive_.assign(m, 0);
  for (std::size_t e = 0; e < m; ++e) t.edge_alive_[e] = t.e_deg_[e] > 0;
  t.in_kill_.assign(m, 0);
  t.s_.assign(m, 0);
  return t;
}

inline ETPGraph build_etp_graph(const Graph& g) { return build_etp_graph(g, vertex_ranking(g)); }

// Rectangle count per edge, read from an untrimmed ETP graph.
inline std::vector<std::uint64_t> rectangle_supports(const ETPGraph& t) { return t.exact_supports(); }

inline EdgeSet trim(ETPGraph& t, std::uint32_t k) {
  t.trim(k);
  return t.surviving_edges();
}

inline void remove_edge_vertex(ETPGraph& t, EdgeId e) { t.remove_edge_vertex(e); }
inline void examine_periphery(ETPGraph& t, ETPGraph::PeripheryId p) { t.examine_periphery(p); }

// Maximal k-trapezes.  Trims to k first when the graph sits at a lower level.
inline TrapezeSet trapezes_at(const Graph& g, ETPGraph& t, std::uint32_t k) {
  if (k < 1) throw std::invalid_argument("trapeze support must be at least 1");
  if (t.threshold() != k || !t.initialized()) t.trim(k);
  EdgeSet keep = t.surviving_edges();
  return {k, edge_components(g, keep)};
}

// Strong k-trapezes: all edges of triads meeting at a live periphery are
// rectangle-connected to each other.
inline TrapezeSet strong_trapezes_at(const Graph& g, ETPGraph& t, std::uint32_t k) {
  if (k < 1) throw std::invalid_argument("trapeze support must be at least 1");
  if (t.threshold() != k || !t.initialized()) t.trim(k);
  DisjointSet dsu(g.edge_count());
  for (ETPGraph::PeripheryId p = 0; p < t.periphery_count(); ++p) {
    if (!t.periphery_alive(p) || t.periphery_degree(p) < 2) continue;
    EdgeId anchor = kNoEdge;
    for (ETPGraph::TriadId tr : t.triads_of_periphery(p)) {
      if (!t.triad_alive(tr)) continue;
      for (int side = 0; side < 2; ++side) {
        EdgeId e = t.triad_edge(tr, side);
        if (anchor == kNoEdge) anchor = e; else dsu.unite(anchor, e);
      }
    }
  }
  EdgeSet keep = t.surviving_edges();
  std::vector<std::int64_t> slot(g.edge_count(), -1);
  TrapezeSet out{k, {}};
  for (EdgeId e : keep) {
    std::uint32_t r = dsu.find(e);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::int64_t>(out.members.size());
      out.members.emplace_back();
    }
    out.members[static_cast<std::size_t>(slot[r])].push_back(e);
  }
  std::erase_if(out.members, [](const EdgeSet& s) { return s.size() < 2; });
  return out;
}

struct TrapezeLevel {
  std::uint32_t k;
  TrapezeSet weak;
  TrapezeSet strong;
};

struct TrapezeRun {
  std::vector<TrapezeLevel> levels;
  std::vector<TrapezeSet> summits;  // one entry per level, possibly empty
};

// Trims one ETP graph through an ascending schedule.  A maximal trapeze is a
// summit at its level when none of its edges survives the next level.
inline TrapezeRun trapeze_level_run(const Graph& g, std::span<const std::uint32_t> schedule) {
  if (schedule.empty()) return {};
  if (schedule.front() < 1) throw std::invalid_argument("trapeze support must be at least 1");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i] <= schedule[i - 1])
      throw std::invalid_argument("trapeze schedule must be strictly ascending");

  ETPGraph t = build_etp_graph(g);
  TrapezeRun run;
  for (std::uint32_t k : schedule) {
    t.trim(k);
    run.levels.push_back({k, trapezes_at(g, t, k), strong_trapezes_at(g, t, k)});
  }
  for (std::size_t i = 0; i < run.levels.size(); ++i) {
    TrapezeSet s{run.levels[i].k, {}};
    for (const EdgeSet& member : run.levels[i].weak.members) {
      bool survives = false;
      if (i + 1 < run.levels.size()) {
        for (const EdgeSet& higher : run.levels[i + 1].weak.members) {
          for (EdgeId e : higher)
            if (std::binary_search(member.begin(), member.end(), e)) survives = true;
          if (survives) break;
        }
      }
      if (!survives) s.members.push_back(member);
    }
    run.summits.push_back(std::move(s));
  }
  return run;
}

inline std::vector<std::uint32_t> geometric_schedule(std::uint32_t max_exponent) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i <= max_exponent && i < 32; ++i) out.push_back(std::uint32_t{1} << i);
  return out;
}

// Reference count: for edge (x, y), every w ~ x and z ~ y with w ~ z closes
// the cycle x-y-z-w when all four vertices are distinct.
inline std::vector<std::uint64_t> brute_force_rectangles(const Graph& g) {
  std::vector<std::uint64_t> out(g.edge_count(), 0);
  std::vector<char> mark(g.vertex_count(), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    VertexId x = g.edge(e).lo, y = g.edge(e).hi;
    for (const Adjacent& a : g.neighbors(y)) mark[a.vertex] = 1;
    for (const Adjacent& w : g.neighbors(x)) {
      if (w.vertex == y) continue;
      for (const Adjacent& z : g.neighbors(w.vertex))
        if (z.vertex != x && mark[z.vertex]) ++out[e];
    }
    for (const Adjacent& a : g.neighbors(y)) mark[a.vertex] = 0;
  }
  return out;
}

}  // namespace cohesion

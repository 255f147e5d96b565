#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "cohesion/cluster_family.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/strong_truss.hpp"
#include "cohesion/triangles.hpp"
#include "cohesion/truss.hpp"

namespace cohesion {

struct PlantedModel {
  std::uint32_t l = 10;
  std::uint32_t size_lo = 10;  // group sizes drawn uniformly from [size_lo, size_hi]
  std::uint32_t size_hi = 10;
  double p = 0.8;
  double mu = 0.1;
  std::uint64_t seed = 1;
};

struct Partition {
  std::vector<std::uint32_t> label;  // indexed by vertex id
};

struct PlantedGraph {
  Graph graph;
  Partition truth;
};

// Inter-group probability giving an expected outside fraction of mu for
// groups of n / l vertices.
inline double derive_inter_prob(double l, double n, double p, double mu) {
  if (l < 2) throw std::invalid_argument("at least two groups are required");
  if (!(mu >= 0 && mu < 1)) throw std::invalid_argument("mu must lie in [0, 1)");
  double g = n / l;
  double r = (mu / (1 - mu)) * p * (g - 1) / (n - g);
  if (r > 1) throw validation_error("infeasible model: derived inter-group probability r = " + std::to_string(r));
  return std::max(r, 0.0);
}

namespace detail {

inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Number of failures before the next success of a Bernoulli(q) sequence.
inline std::uint64_t geometric_skip(std::mt19937_64& rng, double q) {
  if (q >= 1) return 0;
  double u = unit_uniform(rng);
  double s = std::floor(std::log1p(-u) / std::log1p(-q));
  return s >= 1e18 ? std::uint64_t{1} << 62 : static_cast<std::uint64_t>(s);
}

}  // namespace detail

inline void validate(const PlantedModel& m) {
  if (m.l < 2) throw std::invalid_argument("at least two groups are required");
  if (m.size_lo < 1 || m.size_hi < m.size_lo) throw std::invalid_argument("invalid group size range");
  if (!(m.p >= 0 && m.p <= 1)) throw std::invalid_argument("p must lie in [0, 1]");
  if (!(m.mu >= 0 && m.mu < 1)) throw std::invalid_argument("mu must lie in [0, 1)");
}

inline PlantedGraph generate_planted(const PlantedModel& model) {
  validate(model);
  std::mt19937_64 rng(model.seed);
  std::vector<std::uint32_t> sizes(model.l);
  for (auto& s : sizes)
    s = model.size_lo + static_cast<std::uint32_t>(detail::unit_uniform(rng) * (model.size_hi - model.size_lo + 1));
  std::uint32_t n = 0;
  for (auto s : sizes) n += s;
  double r = derive_inter_prob(model.l, n, model.p, model.mu);

  Partition truth;
  truth.label.reserve(n);
  for (std::uint32_t gi = 0; gi < model.l; ++gi) truth.label.insert(truth.label.end(), sizes[gi], gi);

  GraphBuilder b;
  b.add_numbered_vertices(n);
  std::uint32_t start = 0;
  for (std::uint32_t s : sizes) {
    for (std::uint32_t i = start; i < start + s; ++i)
      for (std::uint32_t j = i + 1; j < start + s; ++j)
        if (detail::unit_uniform(rng) < model.p) b.add_edge(i, j);
    start += s;
  }
  if (r > 0 && n >= 2) {
    // Walk all pairs i < j with geometric jumps; intra-group hits are ignored
    // since those pairs were already drawn with probability p.
    std::uint64_t i = 0, j = 0;
    for (;;) {
      j += 1 + detail::geometric_skip(rng, r);
      while (i + 1 < n && j >= n) {
        std::uint64_t excess = j - n;
        ++i;
        j = i + 1 + excess;
      }
      if (i + 1 >= n) break;
      if (truth.label[i] != truth.label[j])
        b.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
    }
  }
  return {b.build(), std::move(truth)};
}

// Vertices take the cluster formed at the highest level among those touching
// them, ties going to the lower index; untouched vertices become singletons.
inline Partition clusters_to_node_partition(const Graph& g, std::span<const EdgeSet> clusters,
                                            std::span<const std::uint32_t> levels = {}) {
  constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> owner(g.vertex_count(), none);
  auto level = [&](std::uint32_t c) { return levels.empty() ? 0u : levels[c]; };
  for (std::uint32_t c = 0; c < clusters.size(); ++c) {
    for (EdgeId e : clusters[c]) {
      for (VertexId x : {g.edge(e).lo, g.edge(e).hi}) {
        if (owner[x] == none || level(c) > level(owner[x])) owner[x] = c;
      }
    }
  }
  Partition out;
  out.label.resize(g.vertex_count());
  auto next = static_cast<std::uint32_t>(clusters.size());
  for (VertexId v = 0; v < g.vertex_count(); ++v) out.label[v] = owner[v] == none ? next++ : owner[v];
  return out;
}

// Normalized mutual information, -2 I / (H_a + H_b) over the confusion counts.
inline double nmi(const Partition& a, const Partition& b) {
  if (a.label.size() != b.label.size()) throw std::invalid_argument("partitions cover different vertex sets");
  const double n = static_cast<double>(a.label.size());
  if (a.label.empty()) return 1.0;
  std::unordered_map<std::uint32_t, double> na, nb;
  std::unordered_map<std::uint64_t, double> nab;
  for (std::size_t i = 0; i < a.label.size(); ++i) {
    na[a.label[i]] += 1;
    nb[b.label[i]] += 1;
    nab[(std::uint64_t{a.label[i]} << 32) | b.label[i]] += 1;
  }
  double ha = 0, hb = 0;
  for (auto& [k, c] : na) ha += c * std::log(c / n);
  for (auto& [k, c] : nb) hb += c * std::log(c / n);
  if (ha == 0 && hb == 0) return 1.0;
  if (ha == 0 || hb == 0) return 0.0;
  double num = 0;
  for (auto& [key, c] : nab) {
    double ci = na[static_cast<std::uint32_t>(key >> 32)];
    double cj = nb[static_cast<std::uint32_t>(key & 0xffffffffu)];
    num += c * std::log(c * n / (ci * cj));
  }
  return -2 * num / (ha + hb);
}

enum class BenchMethod { truss, strong, summit, strong_summit };

struct BenchSpec {
  BenchMethod method = BenchMethod::truss;
  std::uint32_t k_lo = 3;
  std::uint32_t k_hi = 14;
};

struct BenchReport {
  PlantedModel model;
  BenchSpec spec;
  std::uint32_t trials = 0;
  double mean_n = 0;
  double mean_m = 0;
  double mean_seconds = 0;
  // Column k (or 0 for summit methods) → mean NMI.  A level absent from a
  // trial contributes the NMI of the all-singleton partition.
  std::map<std::uint32_t, double> mean_nmi;
};

inline bool is_summit(BenchMethod m) { return m == BenchMethod::summit || m == BenchMethod::strong_summit; }

// NMI of each requested column for one generated instance.
inline std::map<std::uint32_t, double> evaluate_planted(const PlantedGraph& pg, const BenchSpec& spec) {
  const Graph& g = pg.graph;
  KClassDecomposition d = k_classes(g);
  std::map<std::uint32_t, double> out;
  auto score = [&](const std::vector<Cluster>& cs) {
    std::vector<EdgeSet> sets;
    std::vector<std::uint32_t> lv;
    for (const Cluster& c : cs) {
      sets.push_back(c.edges);
      lv.push_back(c.level);
    }
    return nmi(pg.truth, clusters_to_node_partition(g, sets, lv));
  };
  switch (spec.method) {
    case BenchMethod::truss:
      for (std::uint32_t k = std::max(2u, spec.k_lo); k <= spec.k_hi; ++k) {
        auto members = trusses_at(g, d, k).members;
        out[k] = nmi(pg.truth, clusters_to_node_partition(g, members));
      }
      break;
    case BenchMethod::strong: {
      ClusterFamily f = strong_truss_family(g, d);
      for (std::uint32_t k = std::max(2u, spec.k_lo); k <= spec.k_hi; ++k) {
        auto members = strong_trusses_at(f, k);
        out[k] = nmi(pg.truth, clusters_to_node_partition(g, members));
      }
      break;
    }
    case BenchMethod::summit:
      out[0] = score(summit_trusses(d, g));
      break;
    case BenchMethod::strong_summit:
      out[0] = score(summit_strong_trusses(strong_truss_family(g, d)));
      break;
  }
  return out;
}

// Trial i uses seed + i.
inline BenchReport run_benchmark(const PlantedModel& model, const BenchSpec& spec, std::uint32_t trials) {
  validate(model);
  BenchReport rep{model, spec, trials, 0, 0, 0, {}};
  if (trials == 0) return rep;
  for (std::uint32_t t = 0; t < trials; ++t) {
    PlantedModel m = model;
    m.seed = model.seed + t;
    auto start = std::chrono::steady_clock::now();
    PlantedGraph pg = generate_planted(m);
    auto scores = evaluate_planted(pg, spec);
    rep.mean_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.mean_n += static_cast<double>(pg.graph.vertex_count());
    rep.mean_m += static_cast<double>(pg.graph.edge_count());
    for (auto& [k, v] : scores) rep.mean_nmi[k] += v;
  }
  rep.mean_n /= trials;
  rep.mean_m /= trials;
  rep.mean_seconds /= trials;
  for (auto& [k, v] : rep.mean_nmi) v /= trials;
  return rep;
}

}  // namespace cohesion

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "cohesion/disjoint_set.hpp"
#include "cohesion/graph.hpp"

namespace cohesion {

// One agglomeration step: at `level`, the clusters in `absorbed` joined the
// cluster `result`.  The survivor is always the lowest participating id.
struct Merge {
  std::uint32_t level;
  std::vector<std::uint32_t> absorbed;
  std::uint32_t result;
};

struct Cluster {
  std::uint32_t id;     // survivor id within the family
  std::uint32_t level;  // level at which this cluster took its current form
  EdgeSet edges;        // ascending edge ids
};

// Agglomerative dendrogram over edges.  Leaf cluster i holds the i-th edge in
// addition order (descending class, ascending edge id within a class), so a
// lower cluster id always means an older cluster.  Merges are consolidated
// per level and listed with non-increasing level.
class ClusterFamily {
 public:
  ClusterFamily() = default;
  ClusterFamily(std::vector<EdgeId> order, std::vector<std::uint32_t> leaf_level,
                std::vector<Merge> merges)
      : order_(std::move(order)), leaf_level_(std::move(leaf_level)), merges_(std::move(merges)) {}

  std::size_t leaf_count() const { return order_.size(); }
  EdgeId edge_of(std::uint32_t leaf) const { return order_[leaf]; }
  std::uint32_t leaf_level(std::uint32_t leaf) const { return leaf_level_[leaf]; }
  std::span<const Merge> merges() const { return merges_; }

  // Clusters present once every edge of class >= k has been added, including
  // single-edge clusters.  Ordered by survivor id.
  std::vector<Cluster> clusters_at(std::uint32_t k) const {
    DisjointSet dsu(order_.size());
    std::vector<std::uint32_t> formed(order_.size());
    for (std::uint32_t i = 0; i < order_.size(); ++i) formed[i] = leaf_level_[i];
    for (const Merge& m : merges_) {
      if (m.level < k) break;
      for (std::uint32_t a : m.absorbed) dsu.unite(a, m.result);
      formed[m.result] = m.level;
    }
    std::vector<std::int64_t> slot(order_.size(), -1);
    std::vector<Cluster> out;
    for (std::uint32_t i = 0; i < order_.size(); ++i) {
      if (leaf_level_[i] < k) continue;
      std::uint32_t root = dsu.find(i);
      if (slot[root] < 0) {
        slot[root] = static_cast<std::int64_t>(out.size());
        // Survivor ids are minimal, so the first leaf seen is the survivor.
        out.push_back({i, formed[i], {}});
      }
      out[static_cast<std::size_t>(slot[root])].edges.push_back(order_[i]);
    }
    for (Cluster& c : out) std::sort(c.edges.begin(), c.edges.end());
    return out;
  }

  // Clusters formed purely from single-edge clusters: no multi-edge cluster
  // from a higher level was absorbed.
  std::vector<Cluster> summits() const {
    std::vector<char> multi(order_.size(), 0);
    std::vector<Cluster> out;
    for (const Merge& m : merges_) {
      bool pure = !multi[m.result];
      for (std::uint32_t a : m.absorbed) pure = pure && !multi[a];
      if (pure) {
        Cluster c{m.result, m.level, {order_[m.result]}};
        for (std::uint32_t a : m.absorbed) c.edges.push_back(order_[a]);
        std::sort(c.edges.begin(), c.edges.end());
        out.push_back(std::move(c));
      }
      multi[m.result] = 1;
    }
    std::sort(out.begin(), out.end(),
              [](const Cluster& a, const Cluster& b) { return a.id < b.id; });
    return out;
  }

 private:
  std::vector<EdgeId> order_;
  std::vector<std::uint32_t> leaf_level_;
  std::vector<Merge> merges_;
};

namespace detail {

// Incremental builder: add leaves and unions within a level, then
// finish_level() emits one Merge per cluster that changed.
class FamilyBuilder {
 public:
  explicit FamilyBuilder(std::size_t leaves)
      : dsu_(leaves), survivor_(leaves), stamp_(leaves, 0), pending_(leaves) {
    order_.reserve(leaves);
    level_.reserve(leaves);
  }

  std::uint32_t add_leaf(EdgeId e, std::uint32_t level) {
    auto id = static_cast<std::uint32_t>(order_.size());
    order_.push_back(e);
    level_.push_back(level);
    survivor_[id] = id;
    touch(id);
    return id;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    std::uint32_t ra = dsu_.find(a), rb = dsu_.find(b);
    if (ra == rb) return;
    touch(ra);
    touch(rb);
    std::uint32_t root = dsu_.unite(ra, rb);
    std::uint32_t gone = root == ra ? rb : ra;
    auto& keep = pending_[root];
    auto& drop = pending_[gone];
    if (keep.size() < drop.size()) keep.swap(drop);
    keep.insert(keep.end(), drop.begin(), drop.end());
    drop.clear();
    drop.shrink_to_fit();
    survivor_[root] = std::min(survivor_[ra], survivor_[rb]);
  }

  void finish_level(std::uint32_t level) {
    for (std::uint32_t r : touched_) {
      if (dsu_.find(r) != r) continue;
      auto& p = pending_[r];
      if (p.size() >= 2) {
        std::sort(p.begin(), p.end());
        merges_.push_back({level, std::vector<std::uint32_t>(p.begin() + 1, p.end()), p.front()});
      }
      p.clear();
    }
    touched_.clear();
    ++serial_;
  }

  ClusterFamily build() && {
    return ClusterFamily(std::move(order_), std::move(level_), std::move(merges_));
  }

 private:
  void touch(std::uint32_t root) {
    if (stamp_[root] == serial_ + 1) return;
    stamp_[root] = serial_ + 1;
    pending_[root].assign(1, survivor_[root]);
    touched_.push_back(root);
  }

  DisjointSet dsu_;
  std::vector<std::uint32_t> survivor_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::vector<std::uint32_t>> pending_;
  std::vector<std::uint32_t> touched_;
  std::uint32_t serial_ = 0;
  std::vector<EdgeId> order_;
  std::vector<std::uint32_t> level_;
  std::vector<Merge> merges_;
};

}  // namespace detail
}  // namespace cohesion

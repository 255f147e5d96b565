#include <gtest/gtest.h>

#include <deque>
#include <numeric>

#include "test_support.hpp"

using namespace cohesion;
using namespace testing_support;

namespace {

ClusterFamily family(const Graph& g) { return strong_truss_family(g, k_classes(g)); }

std::vector<std::size_t> sizes(const std::vector<EdgeSet>& sets) {
  std::vector<std::size_t> out;
  for (auto& s : sets) out.push_back(s.size());
  std::sort(out.begin(), out.end());
  return out;
}

bool triangle_connected(const Graph& g, const EdgeSet& cluster) {
  std::vector<char> alive(g.edge_count(), 0);
  for (EdgeId e : cluster) alive[e] = 1;
  std::vector<char> seen(g.edge_count(), 0);
  std::deque<EdgeId> q{cluster.front()};
  seen[cluster.front()] = 1;
  std::size_t reached = 0;
  while (!q.empty()) {
    EdgeId e = q.front();
    q.pop_front();
    ++reached;
    for (auto [f, h] : triangles_within(g, e, alive))
      for (EdgeId x : {f, h})
        if (!seen[x]) {
          seen[x] = 1;
          q.push_back(x);
        }
  }
  return reached == cluster.size();
}

}  // namespace

TEST(StrongFamily, TwoTrianglesSharingAnEdge) {
  Graph g = make_graph(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
  auto s = strong_trusses_at(family(g), 3);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].size(), 5u);
}

TEST(StrongFamily, K4sSharingAVertexSplit) {
  Graph g = make_graph(7, join(complete(4), complete(4, 3)));
  auto d = k_classes(g);
  EXPECT_EQ(trusses_at(g, d, 4).members.size(), 1u);
  auto s = strong_trusses_at(strong_truss_family(g, d), 4);
  EXPECT_EQ(sizes(s), (std::vector<std::size_t>{6, 6}));
}

TEST(StrongFamily, K4sSharingAnEdgeStayTogether) {
  Graph g = make_graph(6, join(complete(4), complete(4, 2)));
  auto s = strong_trusses_at(family(g), 4);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].size(), 11u);
}

TEST(StrongFamily, CliqueAlone) {
  Graph g = make_graph(5, complete(5));
  auto f = family(g);
  auto s = strong_trusses_at(f, 5);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].size(), 10u);
  auto summits = summit_strong_trusses(f);
  ASSERT_EQ(summits.size(), 1u);
  EXPECT_EQ(summits[0].edges.size(), 10u);
  EXPECT_EQ(summits[0].level, 5u);
  EXPECT_THROW(strong_trusses_at(f, 1), std::invalid_argument);
}

TEST(StrongFamily, SummitsOfCliquesJoinedByPath) {
  EdgePairs e = join(complete(5), complete(4, 7));
  e.insert(e.end(), {{4, 5}, {5, 6}, {6, 7}});
  Graph g = make_graph(11, e);
  auto summits = summit_strong_trusses(family(g));
  ASSERT_EQ(summits.size(), 2u);
  std::multiset<std::pair<std::uint32_t, std::size_t>> got;
  for (auto& c : summits) got.insert({c.level, c.edges.size()});
  EXPECT_EQ(got, (std::multiset<std::pair<std::uint32_t, std::size_t>>{{5, 10}, {4, 6}}));
}

TEST(StrongFamily, TwoHighClustersMergedLowerGiveTwoSummits) {
  // A K5 and a K4 tied together by two level-3 triangles through edge 4-5.
  EdgePairs e = join(complete(5), complete(4, 5));
  e.insert(e.end(), {{4, 5}, {0, 5}, {4, 6}});
  Graph g = make_graph(9, e);
  auto d = k_classes(g);
  auto f = strong_truss_family(g, d);
  auto summits = summit_strong_trusses(f);
  std::multiset<std::uint32_t> levels;
  for (auto& c : summits) levels.insert(c.level);
  EXPECT_EQ(levels, (std::multiset<std::uint32_t>{4, 5}));
  EXPECT_EQ(strong_trusses_at(f, 3).size(), 1u);
}

TEST(StrongFamily, ClustersMatchTriangleConnectivityOracle) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    Graph g = random_graph(rng, 28, 0.1 + 0.5 * (t % 10) / 10.0);
    auto d = k_classes(g);
    auto f = strong_truss_family(g, d);
    for (std::uint32_t k = 2; k <= d.k_max; ++k)
      ASSERT_EQ(sorted_sets(strong_trusses_at(f, k)), triangle_components(g, d, k)) << "trial " << t << " k=" << k;
  }
}

TEST(StrongFamily, ClustersRefineTrussesAndSatisfyDefinition) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 60; ++t) {
    Graph g = random_graph(rng, 26, 0.2 + 0.5 * (t % 6) / 6.0);
    auto d = k_classes(g);
    auto f = strong_truss_family(g, d);
    for (std::uint32_t k = 3; k <= d.k_max; ++k) {
      auto weak = trusses_at(g, d, k).members;
      for (const auto& s : strong_trusses_at(f, k)) {
        int containing = 0;
        for (const auto& w : weak)
          if (std::includes(w.begin(), w.end(), s.begin(), s.end())) ++containing;
        EXPECT_EQ(containing, 1);
        EXPECT_TRUE(triangle_connected(g, s));
        std::vector<char> alive(g.edge_count(), 0);
        for (EdgeId e : s) alive[e] = 1;
        for (EdgeId e : s) EXPECT_GE(triangles_within(g, e, alive).size() + 2, k);
      }
    }
  }
}

TEST(StrongFamily, SummitsEdgeDisjoint) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 100; ++t) {
    Graph g = random_graph(rng, 30, 0.15 + 0.5 * (t % 8) / 8.0);
    std::vector<int> uses(g.edge_count(), 0);
    for (auto& c : summit_strong_trusses(family(g)))
      for (EdgeId e : c.edges) ++uses[e];
    for (int u : uses) EXPECT_LE(u, 1);
  }
}

TEST(StrongFamily, IntraClassOrderDoesNotChangeLevels) {
  // Relabelling vertices permutes edge ids, hence the intra-class order.
  std::mt19937_64 rng(47);
  for (int t = 0; t < 30; ++t) {
    Graph g = random_graph(rng, 20, 0.4);
    std::vector<VertexId> perm(g.vertex_count());
    std::iota(perm.begin(), perm.end(), VertexId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    EdgePairs e;
    for (EdgeId i = 0; i < g.edge_count(); ++i) e.emplace_back(perm[g.edge(i).hi], perm[g.edge(i).lo]);
    std::shuffle(e.begin(), e.end(), rng);
    Graph h = make_graph(g.vertex_count(), e);
    auto dg = k_classes(g), dh = k_classes(h);
    auto fg = strong_truss_family(g, dg), fh = strong_truss_family(h, dh);
    auto as_vertex_sets = [&](const Graph& x, const std::vector<EdgeSet>& sets, bool map) {
      std::set<std::set<std::pair<VertexId, VertexId>>> out;
      for (auto& s : sets) {
        std::set<std::pair<VertexId, VertexId>> edges;
        for (EdgeId i : s) {
          VertexId a = x.edge(i).lo, b = x.edge(i).hi;
          if (map) {
            a = perm[a];
            b = perm[b];
          }
          edges.insert({std::min(a, b), std::max(a, b)});
        }
        out.insert(edges);
      }
      return out;
    };
    for (std::uint32_t k = 2; k <= dg.k_max; ++k)
      EXPECT_EQ(as_vertex_sets(g, strong_trusses_at(fg, k), true), as_vertex_sets(h, strong_trusses_at(fh, k), false));
  }
}

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace cohesion;
using namespace testing_support;

TEST(EdgeSupports, Cliques) {
  for (VertexId n : {4u, 5u}) {
    Graph g = make_graph(n, complete(n));
    for (auto s : edge_supports(g)) EXPECT_EQ(s, n - 2);
  }
}

TEST(EdgeSupports, CycleHasNoTriangles) {
  Graph g = make_graph(5, cycle(5));
  for (auto s : brute_force_supports(g)) EXPECT_EQ(s, 0u);
  for (auto s : edge_supports(g)) EXPECT_EQ(s, 0u);
}

TEST(EdgeSupports, TwoTrianglesSharingAnEdge) {
  Graph g = make_graph(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
  auto sup = brute_force_supports(g);
  EXPECT_EQ(sup[g.edge_id(1, 2)], 2u);
  for (auto [a, b] : EdgePairs{{0, 1}, {0, 2}, {1, 3}, {2, 3}}) EXPECT_EQ(sup[g.edge_id(a, b)], 1u);
  EXPECT_EQ(edge_supports(g), sup);
}

TEST(EdgeSupports, MatchesOracleOnSeededErdosRenyi) {
  std::mt19937_64 rng(30);
  Graph g = random_graph(rng, 30, 0.3);
  EXPECT_EQ(edge_supports(g), brute_force_supports(g));
}

TEST(EdgeSupports, MatchesOracleOn200RandomGraphs) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(2, 40);
  std::uniform_real_distribution<double> density(0.05, 0.9);
  for (int t = 0; t < 200; ++t) {
    Graph g = random_graph(rng, size(rng), density(rng));
    auto sup = edge_supports(g);
    ASSERT_EQ(sup, brute_force_supports(g)) << "trial " << t;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      EXPECT_LE(sup[e], g.degree(g.edge(e).lo) - 1);
      EXPECT_LE(sup[e], g.degree(g.edge(e).hi) - 1);
    }
  }
}

TEST(EdgeSupports, IndependentOfTieBreak) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    Graph g = random_graph(rng, 20, 0.4);
    VertexRanking r = vertex_ranking(g);
    // Reverse the order within each degree class.
    std::vector<VertexId> order = r.order;
    for (std::size_t i = 0; i < order.size();) {
      std::size_t j = i;
      while (j < order.size() && g.degree(order[j]) == g.degree(order[i])) ++j;
      std::reverse(order.begin() + i, order.begin() + j);
      i = j;
    }
    VertexRanking alt{std::vector<std::uint32_t>(order.size()), order};
    for (std::uint32_t i = 0; i < order.size(); ++i) alt.rank[order[i]] = i;
    EXPECT_EQ(edge_supports(g, alt), edge_supports(g, r));
  }
}

TEST(EdgeSupports, EachTriangleReportedOnce) {
  Graph g = make_graph(6, complete(6));
  std::size_t count = 0;
  for_each_triangle(g, [&](EdgeId, EdgeId, EdgeId) { ++count; });
  EXPECT_EQ(count, 20u);
  EXPECT_EQ(triangle_count(edge_supports(g)), 20u);
}

TEST(EdgeSupports, DolphinTriangleTotalMatchesOracle) {
  Graph g = load_edge_list_file(std::string(COHESION_DATA_DIR) + "/dolphins.tsv");
  auto sup = edge_supports(g);
  EXPECT_EQ(sup, brute_force_supports(g));
  std::uint64_t sum = 0;
  for (auto s : sup) sum += s;
  EXPECT_EQ(sum, 3 * triangle_count(sup));
}

TEST(EdgeSupports, TsvDump) {
  Graph g = parse("a b\nb c\nc a\n");
  std::ostringstream out;
  write_supports_tsv(out, g, edge_supports(g));
  EXPECT_EQ(out.str(), "a\tb\t1\nb\tc\t1\na\tc\t1\n");
}

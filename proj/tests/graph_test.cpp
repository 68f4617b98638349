#include <gtest/gtest.h>

#include <random>

#include "obstruct/canonical.hpp"
#include "obstruct/graph.hpp"
#include "support/oracles.hpp"

using namespace obstruct;

TEST(Graph, RejectsBadEdges) {
  EXPECT_THROW(Graph(3, {Edge(0, 0)}), InputError);
  EXPECT_THROW(Graph(3, {Edge(0, 3)}), InputError);
  EXPECT_THROW(Graph(65), InputError);
  EXPECT_EQ(Graph(3, {Edge(0, 1), Edge(1, 0)}).size(), 1);
}

TEST(Graph, DeleteEdge) {
  const Graph p3 = delete_edge(complete_graph(3), Edge(0, 1));
  EXPECT_EQ(p3.order(), 3);
  EXPECT_EQ(p3.size(), 2);
  EXPECT_TRUE(isomorphic(p3, path_graph(3)));
  EXPECT_EQ(delete_edge(complete_graph(4), Edge(1, 3)).size(), 5);
  EXPECT_THROW(delete_edge(empty_graph(3), Edge(0, 1)), InputError);
}

TEST(Graph, DeleteVertex) {
  EXPECT_TRUE(isomorphic(delete_vertex(complete_graph(4), 2), complete_graph(3)));
  EXPECT_EQ(delete_vertex(Graph(1), 0).order(), 0);
  EXPECT_TRUE(isomorphic(delete_vertex(cycle_graph(5), 3), path_graph(4)));
  EXPECT_THROW(delete_vertex(Graph(2), 2), InputError);
}

TEST(Graph, DeleteVertexKeepsSurvivorOrder) {
  const Graph g = delete_vertex(path_graph(4), 1);
  EXPECT_EQ(g.order(), 3);
  EXPECT_TRUE(g.has_edge(1, 2));
  EXPECT_EQ(g.size(), 1);
}

TEST(Graph, ContractEdge) {
  EXPECT_TRUE(isomorphic(contract_edge(complete_graph(3), Edge(0, 2)), complete_graph(2)));
  EXPECT_TRUE(isomorphic(contract_edge(cycle_graph(5), Edge(0, 1)), cycle_graph(4)));
  EXPECT_TRUE(isomorphic(contract_edge(complete_graph(4), Edge(1, 2)), complete_graph(3)));
  EXPECT_THROW(contract_edge(path_graph(3), Edge(0, 2)), InputError);
}

TEST(Graph, OneStepMinorsOfTriangle) {
  const auto m = one_step_minors(complete_graph(3));
  ASSERT_EQ(m.size(), 2u);
  bool p3 = false, k2 = false;
  for (const Graph& g : m) {
    p3 = p3 || isomorphic(g, path_graph(3));
    k2 = k2 || isomorphic(g, complete_graph(2));
  }
  EXPECT_TRUE(p3 && k2);
}

TEST(Graph, OneStepMinorsEdgeCases) {
  EXPECT_TRUE(one_step_minors(Graph(0)).empty());
  const auto m = one_step_minors(Graph(1));
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].order(), 0);
}

TEST(Graph, MinorsShrinkAndStaySimple) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = oracle::random_graph(rng, 2 + trial % 8, 0.45);
    const auto minors = one_step_minors(g);
    if (is_connected(g) && g.size() > 0) EXPECT_FALSE(minors.empty());
    for (const Graph& h : minors) {
      EXPECT_LT(h.order() + h.size(), g.order() + g.size());
      for (int v = 0; v < h.order(); ++v) EXPECT_FALSE(h.has_edge(v, v));
    }
  }
}

TEST(Graph, NamedFamilies) {
  EXPECT_EQ(augmented_complete(3).order(), 6);
  EXPECT_EQ(augmented_complete(3).size(), 9);
  EXPECT_EQ(augmented_complete(4).order(), 10);
  EXPECT_EQ(augmented_complete(4).size(), 18);
  EXPECT_EQ(augmented_cycle(3).order(), 6);
  EXPECT_EQ(augmented_cycle(3).size(), 9);
  EXPECT_TRUE(isomorphic(augmented_cycle(3), augmented_complete(3)));
  const Graph u = disjoint_union(complete_graph(3), complete_graph(4));
  EXPECT_EQ(u.order(), 7);
  EXPECT_EQ(u.size(), 9);
  EXPECT_TRUE(isomorphic(wheel_graph(3), complete_graph(4)));
  EXPECT_THROW(augmented_complete(2), InputError);
  EXPECT_THROW(augmented_cycle(2), InputError);
}

TEST(Graph, Components) {
  const Graph g = disjoint_union(path_graph(3), cycle_graph(4));
  EXPECT_EQ(component_count(g), 2);
  EXPECT_FALSE(is_connected(g));
  EXPECT_FALSE(is_acyclic(g));
  EXPECT_TRUE(is_acyclic(path_graph(5)));
  EXPECT_EQ(component_count(empty_graph(4)), 4);
}

#include <gtest/gtest.h>

#include <algorithm>

#include "obstruct/canonical.hpp"
#include "obstruct/obstructions.hpp"
#include "support/oracles.hpp"

using namespace obstruct;

namespace {

bool contains(const std::vector<Graph>& set, const Graph& g) {
  return std::any_of(set.begin(), set.end(), [&](const Graph& h) { return isomorphic(g, h); });
}

Graph triangle_with_pendant_triangle() {
  return Graph(5, {Edge(0, 1), Edge(1, 2), Edge(0, 2), Edge(2, 3), Edge(3, 4), Edge(2, 4)});
}

Graph theta() {
  // C_3 with one edge doubled by a length-2 path.
  return Graph(4, {Edge(0, 1), Edge(1, 2), Edge(0, 2), Edge(0, 3), Edge(3, 1)});
}

}  // namespace

TEST(Dedup, CollapsesIsomorphs) {
  const std::vector<Graph> gs = {cycle_graph(4), relabel(cycle_graph(4), std::vector<int>{1, 3, 0, 2}),
                                 path_graph(4)};
  EXPECT_EQ(dedup_isomorphic(gs).size(), 2u);
}

TEST(ContractEdges, Basics) {
  EXPECT_TRUE(isomorphic(contract_edges(cycle_graph(6), std::vector<Edge>{Edge(0, 1), Edge(2, 3)}),
                         cycle_graph(4)));
  EXPECT_TRUE(isomorphic(contract_edges(path_graph(4), std::vector<Edge>{Edge(0, 1), Edge(1, 2)}),
                         path_graph(2)));
  EXPECT_EQ(remove_isolated(empty_graph(3)).order(), 0);
}

TEST(DeriveFinal, BoundaryTriangle) {
  const std::vector<TParse> obs = {parse_tparse("v0 v1 v2 e0,1 e0,2 e1,2")};
  std::vector<std::string> rejected;
  const auto out = derive_final(obs, FamilyId(FamilyKind::FVS, 0), &rejected);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(isomorphic(out[0], complete_graph(3)));
  EXPECT_FALSE(rejected.empty());  // contractions of K_3 fall into the family
}

TEST(DeriveFinal, ContractionsReachSmallerObstruction) {
  // Subdivided triangle whose boundary edge contraction gives K_3.
  const std::vector<TParse> obs = {parse_tparse("v0 v1 v2 e0,1 e0,2 v0 e0,1 e0,2 e1,2")};
  const auto out = derive_final(obs, FamilyId(FamilyKind::FVS, 0));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(isomorphic(out[0], complete_graph(3)));
}

TEST(Compose, Examples) {
  const std::map<int, std::vector<Graph>> fvs = {
      {0, {complete_graph(3)}}, {1, {complete_graph(4), augmented_complete(3)}}};
  const auto two = compose_disconnected(fvs, FamilyId(FamilyKind::FVS, 2));
  const Graph k3k4 = disjoint_union(complete_graph(3), complete_graph(4));
  EXPECT_TRUE(contains(two, k3k4));
  EXPECT_TRUE(contains(two, disjoint_union(complete_graph(3),
                                           disjoint_union(complete_graph(3), complete_graph(3)))));
  for (const Graph& g : two) EXPECT_TRUE(certify_obstruction(g, FamilyId(FamilyKind::FVS, 2)));

  const auto fes = compose_disconnected({{0, {complete_graph(3)}}}, FamilyId(FamilyKind::FES, 1));
  ASSERT_EQ(fes.size(), 1u);
  EXPECT_TRUE(isomorphic(fes[0], disjoint_union(complete_graph(3), complete_graph(3))));

  EXPECT_TRUE(compose_disconnected({{0, {complete_graph(3)}}}, FamilyId(FamilyKind::FVS, 0)).empty());
}

TEST(MinimumFes, EnumeratesAll) {
  const auto sets = minimum_feedback_edge_sets(complete_graph(4));
  EXPECT_EQ(sets.size(), 16u);  // spanning trees of K_4
  for (const auto& s : sets) EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(minimum_feedback_edge_sets(cycle_graph(5)).size(), 5u);
}

TEST(Predict, LiftsOfTriangle) {
  const std::vector<Graph> k0 = {complete_graph(3)};
  const auto next = predict_fes_next(k0);
  EXPECT_TRUE(contains(next, triangle_with_pendant_triangle()));
  EXPECT_TRUE(contains(next, theta()));
  for (const Graph& g : next) EXPECT_TRUE(certify_obstruction(g, FamilyId(FamilyKind::FES, 1)));
}

TEST(Predict, WheelFromOneFes) {
  const std::vector<Graph> k1 = {theta(), triangle_with_pendant_triangle()};
  const auto next = predict_fes_next(k1);
  EXPECT_TRUE(contains(next, wheel_graph(3)));
  for (const Graph& g : next) EXPECT_TRUE(certify_obstruction(g, FamilyId(FamilyKind::FES, 2)));
}

TEST(Predict, MatchesEnumerationUpToSix) {
  // Every connected 1-FES obstruction on <= 5 vertices comes from a lift.
  const auto conn0 = oracle::enumerate_obstructions(FamilyId(FamilyKind::FES, 0), 6, 6);
  const auto conn1 = oracle::enumerate_obstructions(FamilyId(FamilyKind::FES, 1), 6, 6);
  const auto lifted = predict_fes_next(conn0);
  for (const Graph& g : conn1) {
    if (g.order() <= 5) EXPECT_TRUE(contains(lifted, g)) << g.order();
  }
}

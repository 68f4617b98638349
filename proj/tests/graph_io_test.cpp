#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "obstruct/canonical.hpp"
#include "obstruct/graph_io.hpp"
#include "support/oracles.hpp"

using namespace obstruct;

TEST(Graph6, KnownStrings) {
  EXPECT_EQ(to_graph6(complete_graph(3)), "Bw");
  EXPECT_EQ(to_graph6(complete_graph(4)), "C~");
  EXPECT_EQ(to_graph6(Graph(0)), "?");
  EXPECT_EQ(to_graph6(path_graph(3)), "Bg");
  EXPECT_TRUE(from_graph6("Bw") == complete_graph(3));
}

TEST(Graph6, RoundTrip) {
  std::mt19937_64 rng(5);
  for (int n : {1, 2, 7, 12, 33, 62, 63, 64}) {
    const Graph g = oracle::random_graph(rng, n, 0.3);
    EXPECT_TRUE(from_graph6(to_graph6(g)) == g) << n;
  }
}

TEST(Graph6, LongForm) {
  const std::string s = to_graph6(empty_graph(63));
  EXPECT_EQ(s[0], '~');
  EXPECT_EQ(from_graph6(s).order(), 63);
}

TEST(Graph6, Rejects) {
  EXPECT_THROW(from_graph6(""), InputError);
  EXPECT_THROW(from_graph6("B"), InputError);
  EXPECT_THROW(from_graph6("Bx"), InputError);  // nonzero padding
  EXPECT_THROW(from_graph6("B w"), InputError);
}

TEST(Graph6, Stream) {
  std::stringstream ss("Bw\n\nC~\r\n");
  const auto graphs = read_graph6_stream(ss);
  ASSERT_EQ(graphs.size(), 2u);
  std::stringstream out;
  write_graph6_stream(out, graphs);
  EXPECT_EQ(out.str(), "Bw\nC~\n");
}

TEST(EdgeList, RoundTripAndErrors) {
  const Graph g = augmented_complete(3);
  EXPECT_TRUE(from_edge_list(to_edge_list(g)) == g);
  EXPECT_EQ(to_edge_list(path_graph(3)), "3 2\n0 1\n1 2\n");
  EXPECT_THROW(from_edge_list("3 1\n0 3\n"), InputError);
  EXPECT_THROW(from_edge_list("3 2\n0 1\n"), InputError);
  EXPECT_THROW(from_edge_list("3 1\n1 1\n"), InputError);
  EXPECT_THROW(from_edge_list("3 2\n0 1\n1 0\n"), InputError);
  EXPECT_THROW(from_edge_list("x"), InputError);
}

TEST(Dot, Emits) {
  const std::string dot = to_dot(path_graph(2), "p");
  EXPECT_NE(dot.find("graph p {"), std::string::npos);
  EXPECT_NE(dot.find("0 -- 1;"), std::string::npos);
}

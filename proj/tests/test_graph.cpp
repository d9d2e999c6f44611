#include <gtest/gtest.h>

#include "occ/graph.hpp"
#include "occ/instances.hpp"

using namespace occ;

namespace {

SignedGraph make(std::size_t n, std::vector<Edge> edges) {
  return SignedGraph::from_edges(n, edges);
}

}  // namespace

TEST(Graph, ParsesEdgeList) {
  const auto g = parse_graph("3 2\n0 1\n0 2");
  ASSERT_EQ(g.num_vertices(), 3u);
  EXPECT_TRUE(g.is_positive(0, 1));
  EXPECT_TRUE(g.is_positive(0, 2));
  EXPECT_FALSE(g.is_positive(1, 2));
  EXPECT_EQ(g.sign(1, 2), Sign::negative);
  EXPECT_EQ(g.num_positive_edges(), 2u);
}

TEST(Graph, SingleVertexNoEdges) {
  const auto g = parse_graph("1 0");
  EXPECT_EQ(g.num_vertices(), 1u);
  EXPECT_EQ(g.positive_degree(0), 0u);
  EXPECT_EQ(g.pos_neighborhood(0), VertexSet{0});
}

TEST(Graph, TrailingNewlinesAndWhitespaceAccepted) {
  const auto g = parse_graph("3 1\n 0\t2 \r\n\n");
  EXPECT_TRUE(g.is_positive(2, 0));
}

TEST(Graph, RejectsDuplicateWithLineNumber) {
  try {
    parse_graph("3 2\n0 1\n0 1");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos);
  }
}

TEST(Graph, RejectsMalformedInput) {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_graph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of(""), 1u);
  EXPECT_EQ(line_of("3"), 1u);
  EXPECT_EQ(line_of("x 1"), 1u);
  EXPECT_EQ(line_of("3 1\n1 1"), 2u);        // self-loop
  EXPECT_EQ(line_of("3 1\n0 3"), 2u);        // out of range
  EXPECT_EQ(line_of("3 1\n2 1"), 2u);        // u > v
  EXPECT_EQ(line_of("3 2\n0 1"), 3u);        // ended early
  EXPECT_EQ(line_of("3 1\n0 1\n1 2"), 3u);   // extra content
  EXPECT_EQ(line_of("3 1\n0 -1"), 2u);
  EXPECT_EQ(line_of("3 1\n0 1 2"), 2u);
}

TEST(Graph, FromEdgesValidates) {
  EXPECT_THROW(make(2, {{0, 0}}), ParameterError);
  EXPECT_THROW(make(2, {{0, 2}}), ParameterError);
  EXPECT_THROW(make(3, {{0, 1}, {1, 0}}), ParameterError);
}

TEST(Graph, PosNeighborhoodIncludesSelf) {
  const auto tri = make(3, {{0, 1}, {0, 2}, {1, 2}});
  EXPECT_EQ(tri.pos_neighborhood(0), (VertexSet{0, 1, 2}));
  const auto g = make(3, {{0, 1}, {0, 2}});
  EXPECT_EQ(g.pos_neighborhood(1), (VertexSet{0, 1}));
  const auto iso = make(3, {{0, 1}});
  EXPECT_EQ(iso.pos_neighborhood(2), VertexSet{2});
}

TEST(Graph, SignQueries) {
  const auto g = make(3, {{0, 1}});
  EXPECT_EQ(g.sign(0, 1), Sign::positive);
  EXPECT_EQ(g.sign(1, 0), Sign::positive);
  EXPECT_EQ(g.sign(0, 2), Sign::negative);
  EXPECT_THROW(g.sign(2, 2), ContractViolation);
  EXPECT_THROW(g.sign(0, 3), ContractViolation);
}

TEST(Graph, AdjacencyIsSymmetricAndComplete) {
  const auto g = gen_random_sign(30, 0.4, 11).graph;
  std::size_t positive_pairs = 0;
  for (VertexId u = 0; u < 30; ++u) {
    for (VertexId v = 0; v < 30; ++v) {
      if (u == v) continue;
      EXPECT_EQ(g.is_positive(u, v), g.is_positive(v, u));
      if (u < v) positive_pairs += g.is_positive(u, v);
    }
  }
  EXPECT_EQ(positive_pairs, g.num_positive_edges());
}

TEST(Graph, SerializeRoundTrip) {
  const auto g = gen_random_sign(25, 0.3, 5).graph;
  const auto text = serialize_graph(g);
  EXPECT_EQ(parse_graph(text), g);
  EXPECT_EQ(serialize_graph(parse_graph(text)), text);
}

TEST(Graph, InducedSubgraphRelabels) {
  const auto g = make(4, {{0, 1}, {1, 3}, {2, 3}});
  const std::vector<VertexId> keep{1, 3};
  const auto h = g.induced(keep);
  EXPECT_EQ(h.num_vertices(), 2u);
  EXPECT_TRUE(h.is_positive(0, 1));
}

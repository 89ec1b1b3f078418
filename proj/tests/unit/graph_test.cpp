#include <gtest/gtest.h>

#include <numeric>

#include "corpus.hpp"
#include "pkern/error.hpp"
#include "pkern/graph.hpp"

using namespace pkern;

TEST(Edge, NormalizesEndpoints) {
  Edge e(5, 2);
  EXPECT_EQ(e.u, 2u);
  EXPECT_EQ(e.v, 5u);
  EXPECT_TRUE(Edge(3, 3).isLoop());
  EXPECT_EQ(Edge(1, 4), Edge(4, 1));
}

TEST(VertexSetTest, SortedUniqueAndSetAlgebra) {
  VertexSet a{5, 1, 3, 1};
  EXPECT_EQ(a.ids(), (std::vector<VertexId>{1, 3, 5}));
  EXPECT_TRUE(a.contains(3));
  EXPECT_FALSE(a.contains(2));
  a.insert(2);
  a.insert(2);
  EXPECT_EQ(a.size(), 4u);
  VertexSet b{2, 9};
  EXPECT_EQ(a.unite(b), (VertexSet{1, 2, 3, 5, 9}));
  EXPECT_EQ(a.minus(b), (VertexSet{1, 3, 5}));
}

TEST(MultiGraphTest, DegreesCountLoopsTwiceAndMultiplicity) {
  auto g = MultiGraph::fromEdges(4, {{0, 1}, {0, 1}, {1, 2}, {3, 3}});
  EXPECT_EQ(g.vertexCount(), 4u);
  EXPECT_EQ(g.edgeCount(), 4u);
  EXPECT_EQ(g.degree(0), 2u);
  EXPECT_EQ(g.degree(1), 3u);
  EXPECT_EQ(g.degree(3), 2u);
  EXPECT_EQ(g.multiplicity(0, 1), 2u);
  EXPECT_EQ(g.multiplicity(1, 0), 2u);
  EXPECT_EQ(g.loopCount(3), 1u);
  EXPECT_TRUE(g.hasSelfLoop(3));
  EXPECT_FALSE(g.isSimple());
  EXPECT_EQ(g.neighbors(1), (std::vector<VertexId>{0, 2}));
  EXPECT_TRUE(g.neighbors(3).empty());
  g.validate();
}

TEST(MultiGraphTest, RejectsOutOfRangeEndpoint) {
  EXPECT_THROW(MultiGraph::fromEdges(2, {{0, 2}}), InputError);
}

TEST(MultiGraphTest, EdgeRecordsAreSortedWithMultiplicity) {
  auto g = MultiGraph::fromEdges(3, {{2, 1}, {0, 0}, {1, 2}});
  auto recs = g.edgeRecords();
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0], (EdgeRecord{Edge(0, 0), 1}));
  EXPECT_EQ(recs[1], (EdgeRecord{Edge(1, 2), 2}));
}

TEST(MultiGraphTest, DeletionKeepsIdsStable) {
  auto g = MultiGraph::fromEdges(4, {{0, 1}, {1, 2}, {2, 3}});
  auto h = g.withoutVertices(VertexSet{1});
  EXPECT_EQ(h.capacity(), 4u);
  EXPECT_EQ(h.vertexCount(), 3u);
  EXPECT_FALSE(h.contains(1));
  EXPECT_EQ(h.edgeCount(), 1u);
  EXPECT_EQ(h.deletedVertices(), (std::vector<VertexId>{1}));
  EXPECT_EQ(h.degree(0), 0u);
  h.validate();
}

TEST(MultiGraphTest, FromRecordsRoundTrip) {
  auto g = MultiGraph::fromEdges(5, {{0, 1}, {0, 1}, {3, 3}, {2, 4}}).withoutVertices(VertexSet{2});
  auto recs = g.edgeRecords();
  auto del = g.deletedVertices();
  EXPECT_EQ(MultiGraph::fromRecords(g.capacity(), recs, del), g);
}

TEST(CommitTest, AppliesDeletionsAdditionsAndK) {
  Instance inst{MultiGraph::fromEdges(4, {{0, 1}, {1, 2}}), 3};
  ChangeSet cs;
  cs.deleteVertex(1);
  cs.addEdge(0, 2);
  cs.addEdge(3, 3, 2);
  cs.decrementK(1);
  const Instance out = commit(inst, cs);
  EXPECT_EQ(out.k, 2);
  EXPECT_FALSE(out.graph.contains(1));
  EXPECT_EQ(out.graph.multiplicity(0, 2), 1u);
  EXPECT_EQ(out.graph.loopCount(3), 2u);
  EXPECT_EQ(out.graph.edgeCount(), 3u);
  EXPECT_EQ(cs.size(), 1u + 1u + 2u + 1u);
}

TEST(CommitTest, AdditionAtDeletedVertexConflicts) {
  Instance inst{MultiGraph::fromEdges(3, {{0, 1}}), 1};
  ChangeSet cs;
  cs.deleteVertex(1);
  cs.addEdge(1, 2);
  EXPECT_THROW(commit(inst, cs), CommitConflict);
}

TEST(CommitTest, MergeIsOrderIndependent) {
  Instance inst{MultiGraph::fromEdges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}), 4};
  ChangeSet a;
  a.deleteVertex(4);
  a.addEdge(0, 2);
  ChangeSet b;
  b.deleteVertex(4);
  b.addEdge(2, 0);
  b.decrementK(2);
  ChangeSet ab = a;
  ab.merge(b);
  ChangeSet ba = b;
  ba.merge(a);
  EXPECT_EQ(commit(inst, ab), commit(inst, ba));
  const Instance out = commit(inst, ab);
  EXPECT_EQ(out.k, 2);
  EXPECT_EQ(out.graph.multiplicity(0, 2), 2u);
  EXPECT_FALSE(out.graph.contains(4));
  EXPECT_EQ(ab.deletions(), (std::vector<VertexId>{4}));
}

TEST(ForestTest, LoopsAndParallelEdgesAreCycles) {
  EXPECT_TRUE(isForest(MultiGraph::fromEdges(4, {{0, 1}, {1, 2}})));
  EXPECT_FALSE(isForest(MultiGraph::fromEdges(2, {{0, 1}, {0, 1}})));
  EXPECT_FALSE(isForest(MultiGraph::fromEdges(1, {{0, 0}})));
  EXPECT_FALSE(isForest(MultiGraph::fromEdges(3, {{0, 1}, {1, 2}, {2, 0}})));
  EXPECT_TRUE(isForest(MultiGraph()));
}

TEST(ForestTest, ComponentsCountsIsolatedVertices) {
  EXPECT_EQ(connectedComponents(MultiGraph::fromEdges(5, {{0, 1}, {2, 3}})), 3u);
  EXPECT_EQ(connectedComponents(MultiGraph::fromEdges(3, {{0, 1}, {1, 2}}).withoutVertices(VertexSet{1})), 2u);
}

// Properties over random multigraphs.

TEST(GraphProperty, DegreeSumIsTwiceEdgeCount) {
  for (std::uint64_t i = 0; i < 300; ++i) {
    auto g = corpus::multiGraph(1, i, 12);
    std::size_t sum = 0;
    for (VertexId v : g.vertices()) sum += g.degree(v);
    ASSERT_EQ(sum, 2 * g.edgeCount()) << "seed " << i;
    g.validate();
  }
}

TEST(GraphProperty, ForestIffEdgesEqualVerticesMinusComponents) {
  for (std::uint64_t i = 0; i < 300; ++i) {
    auto g = corpus::multiGraph(2, i, 10);
    const bool identity = g.edgeCount() + connectedComponents(g) == g.vertexCount();
    ASSERT_EQ(isForest(g), identity) << "seed " << i;
  }
}

TEST(GraphProperty, InducedSubgraphOfEverythingIsIdentity) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto g = corpus::multiGraph(3, i, 10);
    ASSERT_EQ(g.inducedSubgraph(g.vertexSet()), g) << "seed " << i;
    ASSERT_EQ(g.withoutVertices(VertexSet{}), g);
  }
}

TEST(GraphProperty, InducedAndWithoutAreComplements) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto g = corpus::multiGraph(4, i, 10);
    pkern::gen::Rng rng(i);
    VertexSet drop;
    for (VertexId v : g.vertices()) {
      if (rng.chance(1, 3)) drop.insert(v);
    }
    ASSERT_EQ(g.withoutVertices(drop), g.inducedSubgraph(g.vertexSet().minus(drop)));
  }
}

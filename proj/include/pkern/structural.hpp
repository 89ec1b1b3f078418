#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pkern/cover_kernels.hpp"
#include "pkern/engine.hpp"
#include "pkern/graph.hpp"
#include "pkern/outcome.hpp"

namespace pkern {

/// Width problem instance: is the width of `graph` at most k, given the
/// vertex cover S? The parameter is |S|.
struct StructuralInstance {
  MultiGraph graph;
  std::int64_t k = 0;
  VertexSet S;
  friend bool operator==(const StructuralInstance&, const StructuralInstance&) = default;
};

using StructuralOutcome = BasicOutcome<StructuralInstance>;

struct Mark {
  VertexId vertex = 0;
  std::string reason;  // "degree-one", "pair-witness", "self", "high-degree-neighbor"
  /// The vertex or pair that caused the mark.
  VertexId witnessA = 0;
  VertexId witnessB = 0;
  friend auto operator<=>(const Mark&, const Mark&) = default;
};

/// Sorted list of marks; a vertex can be marked for several reasons.
struct MarkSet {
  std::vector<Mark> marks;
  VertexSet vertices() const;
  friend bool operator==(const MarkSet&, const MarkSet&) = default;
};

/// Throws InputError unless the graph is simple, k >= 0, S consists of live
/// vertices and S covers every edge.
void validateStructural(const StructuralInstance& si);

bool isSimplicial(const MultiGraph& g, VertexId v);

/// One round: joins nonadjacent u, v in S that have more than k common
/// neighbors outside S.
StructuralInstance commonNeighborCompletion(const StructuralInstance& si, const Engine& engine = sequentialEngine(),
                                            RoundStats* stats = nullptr);

/// Marks used by the path-width and tree-depth kernels on a completed graph.
MarkSet pathWidthMarks(const StructuralInstance& si, const Engine& engine = sequentialEngine());
MarkSet treeDepthMarks(const StructuralInstance& si, const Engine& engine = sequentialEngine());

StructuralOutcome twKernel(const StructuralInstance& si, const Engine& engine = sequentialEngine());
StructuralOutcome pwKernel(const StructuralInstance& si, const Engine& engine = sequentialEngine());
StructuralOutcome tdKernel(const StructuralInstance& si, const Engine& engine = sequentialEngine());

/// Vertex bounds of the three kernels evaluated at s = |S|.
std::uint64_t twKernelBound(std::uint64_t s);
std::uint64_t pwKernelBound(std::uint64_t s);
std::uint64_t tdKernelBound(std::uint64_t s);

/// Greedy 2-approximate vertex cover (endpoints of a maximal matching).
VertexSet greedyVertexCover(const MultiGraph& g);

}  // namespace pkern

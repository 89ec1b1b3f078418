#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <boost/rational.hpp>

#include "pkern/engine.hpp"
#include "pkern/graph.hpp"

namespace pkern {

struct BiEdge {
  VertexId left = 0;
  VertexId right = 0;
  friend auto operator<=>(const BiEdge&, const BiEdge&) = default;
};

/// Bipartite graph over two disjoint id sets. Throws InputError on overlap
/// or on an edge that does not cross the sides.
class BipartiteGraph {
public:
  BipartiteGraph(VertexSet left, VertexSet right, std::vector<BiEdge> edges);

  const VertexSet& left() const { return left_; }
  const VertexSet& right() const { return right_; }
  const std::vector<BiEdge>& edges() const { return edges_; }

private:
  VertexSet left_;
  VertexSet right_;
  std::vector<BiEdge> edges_;
};

/// Endpoint-disjoint edge set, sorted by left endpoint.
using Matching = std::vector<BiEdge>;

/// Hopcroft-Karp. Every BFS layering plus disjoint-augmentation phase is
/// recorded as one "hk-phase" round in stats when given.
Matching maximumBipartiteMatching(const BipartiteGraph& h, RoundStats* stats = nullptr);

/// Vertex cover of size |m| from alternating reachability. Throws
/// ContractViolation if m is not maximum (the cover would be invalid or larger).
VertexSet koenigVertexCover(const BipartiteGraph& h, const Matching& m);

using Rational = boost::rational<std::int64_t>;

/// LPVC values in {0, 1/2, 1}, stored doubled as 0/1/2.
class HalfIntegralAssignment {
public:
  HalfIntegralAssignment() = default;
  void set(VertexId v, int doubled);
  int doubled(VertexId v) const;
  Rational value(VertexId v) const { return Rational(doubled(v), 2); }
  /// Sum of values times two.
  std::int64_t objectiveDoubled() const;
  bool feasibleFor(const MultiGraph& g) const;
  const std::map<VertexId, int>& values() const { return doubled_; }
  friend bool operator==(const HalfIntegralAssignment&, const HalfIntegralAssignment&) = default;

private:
  std::map<VertexId, int> doubled_;
};

/// Optimal half-integral LPVC solution through the bipartite double cover.
/// Throws InputError on non-simple graphs.
HalfIntegralAssignment solveLPVC(const MultiGraph& g, RoundStats* stats = nullptr);

/// Rounds a feasible rational LPVC solution: < 1/2 -> 0, = 1/2 -> 1/2, > 1/2 -> 1.
/// Throws InputError if beta is infeasible or misses a live vertex.
HalfIntegralAssignment roundHalfIntegral(const MultiGraph& g, const std::map<VertexId, Rational>& beta);

struct NtPartition {
  VertexSet zero;
  VertexSet half;
  VertexSet one;
};

NtPartition ntPartition(const HalfIntegralAssignment& beta);

}  // namespace pkern

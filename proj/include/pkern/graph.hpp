#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace pkern {

using VertexId = std::uint32_t;

/// Unordered vertex pair, stored with u <= v. u == v is a self-loop.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  Edge() = default;
  Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  bool isLoop() const { return u == v; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// An edge of the multiset together with its multiplicity.
struct EdgeRecord {
  Edge edge;
  std::uint32_t multiplicity = 0;
  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

struct Incidence {
  VertexId to = 0;
  std::uint32_t multiplicity = 0;
  friend bool operator==(const Incidence&, const Incidence&) = default;
};

/// Sorted, duplicate-free list of vertex ids.
class VertexSet {
public:
  VertexSet() = default;
  VertexSet(std::initializer_list<VertexId> ids);
  explicit VertexSet(std::vector<VertexId> ids);

  bool contains(VertexId v) const;
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<VertexId>& ids() const { return ids_; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  void insert(VertexId v);
  VertexSet unite(const VertexSet& other) const;
  VertexSet minus(const VertexSet& other) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
  std::vector<VertexId> ids_;
};

class ChangeSet;

/// Immutable multigraph snapshot. Vertex ids are dense in [0, capacity());
/// deleted vertices stay as tombstones so ids are stable across rounds.
/// A self-loop adds 2 to the degree, an edge of multiplicity m adds m.
class MultiGraph {
public:
  MultiGraph() = default;

  /// Throws InputError if an endpoint is >= n.
  static MultiGraph fromEdges(std::size_t n, std::span<const Edge> edges);
  static MultiGraph fromEdges(std::size_t n, std::initializer_list<Edge> edges);
  static MultiGraph fromRecords(std::size_t n, std::span<const EdgeRecord> records,
                                std::span<const VertexId> deleted = {});

  std::size_t capacity() const { return alive_.size(); }
  std::size_t vertexCount() const { return liveCount_; }
  /// Size of the edge multiset (a double edge counts twice, a loop once).
  std::size_t edgeCount() const { return edgeCount_; }
  bool empty() const { return liveCount_ == 0; }

  bool contains(VertexId v) const { return v < alive_.size() && alive_[v]; }
  std::size_t degree(VertexId v) const { return degree_[v]; }
  std::uint32_t multiplicity(VertexId u, VertexId v) const;
  std::uint32_t loopCount(VertexId v) const { return multiplicity(v, v); }
  bool hasSelfLoop(VertexId v) const { return loopCount(v) > 0; }

  /// Sorted by neighbor id; a self-loop appears as an incidence to v itself.
  std::span<const Incidence> incident(VertexId v) const { return adjacency_[v]; }
  /// Distinct neighbors other than v itself, ascending.
  std::vector<VertexId> neighbors(VertexId v) const;

  std::vector<VertexId> vertices() const;
  VertexSet vertexSet() const { return VertexSet(vertices()); }
  std::vector<VertexId> deletedVertices() const;
  /// Distinct edges in ascending (u, v) order with multiplicities.
  std::vector<EdgeRecord> edgeRecords() const;

  bool isSimple() const;
  /// Checks that adjacency, degrees, and counters agree. Throws ContractViolation.
  void validate() const;

  MultiGraph inducedSubgraph(const VertexSet& keep) const;
  MultiGraph withoutVertices(const VertexSet& drop) const;
  MultiGraph apply(const ChangeSet& changes) const;

  friend bool operator==(const MultiGraph&, const MultiGraph&) = default;

private:
  void addEdgeUnchecked(VertexId u, VertexId v, std::uint32_t mult);
  void recount();

  std::vector<bool> alive_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::vector<std::size_t> degree_;
  std::size_t liveCount_ = 0;
  std::size_t edgeCount_ = 0;
};

/// A parameterized instance: a graph together with the parameter k.
/// k may become negative while branching.
struct Instance {
  MultiGraph graph;
  std::int64_t k = 0;
  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Deletions and edge additions committed at once. Merging is a set union
/// for deletions and a multiset sum for additions, so the merged result does
/// not depend on the order in which parts arrive.
class ChangeSet {
public:
  void deleteVertex(VertexId v) { deletions_.push_back(v); }
  void addEdge(VertexId u, VertexId v, std::uint32_t mult = 1) {
    additions_.push_back({Edge(u, v), mult});
  }
  void decrementK(std::int64_t by) { kDecrement_ += by; }
  void merge(const ChangeSet& other);

  bool empty() const { return deletions_.empty() && additions_.empty() && kDecrement_ == 0; }
  /// Number of elementary changes (deleted vertices, added edge units, k units).
  std::size_t size() const;

  /// Sorted and deduplicated deletions.
  std::vector<VertexId> deletions() const;
  const std::vector<EdgeRecord>& additions() const { return additions_; }
  std::int64_t kDecrement() const { return kDecrement_; }

private:
  std::vector<VertexId> deletions_;
  std::vector<EdgeRecord> additions_;
  std::int64_t kDecrement_ = 0;
};

/// Throws CommitConflict if the change set adds an edge at a vertex it
/// deletes or at a vertex that is not live.
Instance commit(const Instance& inst, const ChangeSet& changes);

bool isForest(const MultiGraph& g);
std::size_t connectedComponents(const MultiGraph& g);

}  // namespace pkern

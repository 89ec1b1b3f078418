#include "pkern/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "pkern/error.hpp"

namespace pkern {

VertexSet::VertexSet(std::initializer_list<VertexId> ids) : VertexSet(std::vector<VertexId>(ids)) {}

VertexSet::VertexSet(std::vector<VertexId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool VertexSet::contains(VertexId v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

void VertexSet::insert(VertexId v) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
  if (it == ids_.end() || *it != v) ids_.insert(it, v);
}

VertexSet VertexSet::unite(const VertexSet& other) const {
  std::vector<VertexId> out;
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet VertexSet::minus(const VertexSet& other) const {
  std::vector<VertexId> out;
  std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                      std::back_inserter(out));
  return VertexSet(std::move(out));
}

namespace {

void insertIncidence(std::vector<Incidence>& list, VertexId to, std::uint32_t mult) {
  auto it = std::lower_bound(list.begin(), list.end(), to,
                             [](const Incidence& inc, VertexId id) { return inc.to < id; });
  if (it != list.end() && it->to == to) {
    it->multiplicity += mult;
  } else {
    list.insert(it, Incidence{to, mult});
  }
}

}  // namespace

MultiGraph MultiGraph::fromEdges(std::size_t n, std::span<const Edge> edges) {
  std::vector<EdgeRecord> records;
  records.reserve(edges.size());
  for (const Edge& e : edges) records.push_back({e, 1});
  return fromRecords(n, records);
}

MultiGraph MultiGraph::fromEdges(std::size_t n, std::initializer_list<Edge> edges) {
  return fromEdges(n, std::span<const Edge>(edges.begin(), edges.size()));
}

MultiGraph MultiGraph::fromRecords(std::size_t n, std::span<const EdgeRecord> records,
                                   std::span<const VertexId> deleted) {
  MultiGraph g;
  g.alive_.assign(n, true);
  g.adjacency_.assign(n, {});
  g.degree_.assign(n, 0);
  for (VertexId v : deleted) {
    if (v >= n) throw InputError("deleted vertex " + std::to_string(v) + " out of range");
    g.alive_[v] = false;
  }
  for (const EdgeRecord& r : records) {
    const Edge& e = r.edge;
    if (e.u >= n || e.v >= n) {
      throw InputError("edge endpoint out of range: (" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + ") with n=" + std::to_string(n));
    }
    if (!g.alive_[e.u] || !g.alive_[e.v]) {
      throw InputError("edge at deleted vertex: (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
    if (r.multiplicity == 0) continue;
    g.addEdgeUnchecked(e.u, e.v, r.multiplicity);
  }
  g.recount();
  return g;
}

void MultiGraph::addEdgeUnchecked(VertexId u, VertexId v, std::uint32_t mult) {
  if (u == v) {
    insertIncidence(adjacency_[u], u, mult);
    degree_[u] += 2 * static_cast<std::size_t>(mult);
  } else {
    insertIncidence(adjacency_[u], v, mult);
    insertIncidence(adjacency_[v], u, mult);
    degree_[u] += mult;
    degree_[v] += mult;
  }
  edgeCount_ += mult;
}

void MultiGraph::recount() {
  liveCount_ = static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), true));
}

std::uint32_t MultiGraph::multiplicity(VertexId u, VertexId v) const {
  if (!contains(u) || !contains(v)) return 0;
  const auto& list = adjacency_[u];
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const Incidence& inc, VertexId id) { return inc.to < id; });
  return (it != list.end() && it->to == v) ? it->multiplicity : 0;
}

std::vector<VertexId> MultiGraph::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for (const Incidence& inc : adjacency_[v]) {
    if (inc.to != v) out.push_back(inc.to);
  }
  return out;
}

std::vector<VertexId> MultiGraph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(liveCount_);
  for (VertexId v = 0; v < alive_.size(); ++v) {
    if (alive_[v]) out.push_back(v);
  }
  return out;
}

std::vector<VertexId> MultiGraph::deletedVertices() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < alive_.size(); ++v) {
    if (!alive_[v]) out.push_back(v);
  }
  return out;
}

std::vector<EdgeRecord> MultiGraph::edgeRecords() const {
  std::vector<EdgeRecord> out;
  for (VertexId u = 0; u < adjacency_.size(); ++u) {
    for (const Incidence& inc : adjacency_[u]) {
      if (inc.to >= u) out.push_back({Edge(u, inc.to), inc.multiplicity});
    }
  }
  return out;
}

bool MultiGraph::isSimple() const {
  for (VertexId u = 0; u < adjacency_.size(); ++u) {
    for (const Incidence& inc : adjacency_[u]) {
      if (inc.to == u || inc.multiplicity > 1) return false;
    }
  }
  return true;
}

void MultiGraph::validate() const {
  const std::size_t n = alive_.size();
  if (adjacency_.size() != n || degree_.size() != n) throw ContractViolation("graph arrays disagree in size");
  std::size_t degreeSum = 0;
  std::size_t loops = 0;
  for (VertexId u = 0; u < n; ++u) {
    std::size_t deg = 0;
    const auto& list = adjacency_[u];
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Incidence& inc = list[i];
      if (i > 0 && list[i - 1].to >= inc.to) throw ContractViolation("adjacency not sorted");
      if (inc.to >= n || inc.multiplicity == 0) throw ContractViolation("bad incidence");
      if (!alive_[u] || !alive_[inc.to]) throw ContractViolation("incidence at tombstone");
      if (inc.to == u) {
        deg += 2 * static_cast<std::size_t>(inc.multiplicity);
        loops += inc.multiplicity;
      } else {
        deg += inc.multiplicity;
        if (multiplicity(inc.to, u) != inc.multiplicity) throw ContractViolation("asymmetric adjacency");
      }
    }
    if (deg != degree_[u]) throw ContractViolation("cached degree mismatch");
    degreeSum += deg;
  }
  if (degreeSum != 2 * edgeCount_) throw ContractViolation("degree sum != 2 * edge count");
  (void)loops;
  if (liveCount_ != static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), true))) {
    throw ContractViolation("live count mismatch");
  }
}

MultiGraph MultiGraph::inducedSubgraph(const VertexSet& keep) const {
  for (VertexId v : keep) {
    if (!contains(v)) throw InputError("inducedSubgraph: unknown vertex " + std::to_string(v));
  }
  std::vector<bool> keepMask(capacity(), false);
  for (VertexId v : keep) keepMask[v] = true;
  std::vector<EdgeRecord> records;
  for (const EdgeRecord& r : edgeRecords()) {
    if (keepMask[r.edge.u] && keepMask[r.edge.v]) records.push_back(r);
  }
  std::vector<VertexId> dropped;
  for (VertexId v = 0; v < capacity(); ++v) {
    if (!keepMask[v]) dropped.push_back(v);
  }
  return fromRecords(capacity(), records, dropped);
}

MultiGraph MultiGraph::withoutVertices(const VertexSet& drop) const {
  return inducedSubgraph(vertexSet().minus(drop));
}

MultiGraph MultiGraph::apply(const ChangeSet& changes) const {
  const std::vector<VertexId> dels = changes.deletions();
  std::vector<bool> gone(capacity(), false);
  for (VertexId v : dels) {
    if (!contains(v)) throw CommitConflict("deletion of non-live vertex " + std::to_string(v));
    gone[v] = true;
  }
  for (const EdgeRecord& r : changes.additions()) {
    const Edge& e = r.edge;
    if (!contains(e.u) || !contains(e.v)) {
      throw CommitConflict("edge addition at non-live vertex (" + std::to_string(e.u) + "," +
                           std::to_string(e.v) + ")");
    }
    if (gone[e.u] || gone[e.v]) {
      throw CommitConflict("edge addition at deleted vertex (" + std::to_string(e.u) + "," +
                           std::to_string(e.v) + ")");
    }
  }
  std::vector<EdgeRecord> records;
  for (const EdgeRecord& r : edgeRecords()) {
    if (!gone[r.edge.u] && !gone[r.edge.v]) records.push_back(r);
  }
  records.insert(records.end(), changes.additions().begin(), changes.additions().end());
  std::vector<VertexId> dead = deletedVertices();
  dead.insert(dead.end(), dels.begin(), dels.end());
  return fromRecords(capacity(), records, dead);
}

void ChangeSet::merge(const ChangeSet& other) {
  deletions_.insert(deletions_.end(), other.deletions_.begin(), other.deletions_.end());
  additions_.insert(additions_.end(), other.additions_.begin(), other.additions_.end());
  kDecrement_ += other.kDecrement_;
}

std::vector<VertexId> ChangeSet::deletions() const {
  std::vector<VertexId> out = deletions_;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t ChangeSet::size() const {
  std::size_t n = deletions().size();
  for (const EdgeRecord& r : additions_) n += r.multiplicity;
  return n + static_cast<std::size_t>(kDecrement_ < 0 ? -kDecrement_ : kDecrement_);
}

Instance commit(const Instance& inst, const ChangeSet& changes) {
  return Instance{inst.graph.apply(changes), inst.k - changes.kDecrement()};
}

namespace {

struct DisjointSets {
  std::vector<VertexId> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  VertexId find(VertexId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

bool isForest(const MultiGraph& g) {
  DisjointSets ds(g.capacity());
  for (const EdgeRecord& r : g.edgeRecords()) {
    if (r.edge.isLoop() || r.multiplicity > 1) return false;
    if (!ds.unite(r.edge.u, r.edge.v)) return false;
  }
  return true;
}

std::size_t connectedComponents(const MultiGraph& g) {
  DisjointSets ds(g.capacity());
  std::size_t comps = g.vertexCount();
  for (const EdgeRecord& r : g.edgeRecords()) {
    if (ds.unite(r.edge.u, r.edge.v)) --comps;
  }
  return comps;
}

}  // namespace pkern

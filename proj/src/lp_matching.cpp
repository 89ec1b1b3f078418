#include "pkern/lp_matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

#include "pkern/error.hpp"

namespace pkern {

BipartiteGraph::BipartiteGraph(VertexSet left, VertexSet right, std::vector<BiEdge> edges)
    : left_(std::move(left)), right_(std::move(right)), edges_(std::move(edges)) {
  for (VertexId v : left_) {
    if (right_.contains(v)) throw InputError("bipartite sides overlap at " + std::to_string(v));
  }
  for (const BiEdge& e : edges_) {
    if (!left_.contains(e.left) || !right_.contains(e.right)) {
      throw InputError("bipartite edge does not cross sides: (" + std::to_string(e.left) + "," +
                       std::to_string(e.right) + ")");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Compact-index view of a bipartite graph.
struct Dense {
  std::vector<VertexId> leftIds, rightIds;
  std::vector<std::vector<std::size_t>> adj;  // left index -> right indices

  explicit Dense(const BipartiteGraph& h) : leftIds(h.left().ids()), rightIds(h.right().ids()) {
    adj.assign(leftIds.size(), {});
    for (const BiEdge& e : h.edges()) adj[leftIndex(e.left)].push_back(rightIndex(e.right));
  }
  std::size_t leftIndex(VertexId v) const {
    return static_cast<std::size_t>(std::lower_bound(leftIds.begin(), leftIds.end(), v) - leftIds.begin());
  }
  std::size_t rightIndex(VertexId v) const {
    return static_cast<std::size_t>(std::lower_bound(rightIds.begin(), rightIds.end(), v) - rightIds.begin());
  }
};

}  // namespace

Matching maximumBipartiteMatching(const BipartiteGraph& h, RoundStats* stats) {
  const Dense d(h);
  const std::size_t nl = d.leftIds.size();
  const std::size_t nr = d.rightIds.size();
  std::vector<std::size_t> mateL(nl, kNone), mateR(nr, kNone), dist(nl);

  auto bfs = [&] {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t u = 0; u < nl; ++u) {
      if (mateL[u] == kNone) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = kNone;
      }
    }
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t r : d.adj[u]) {
        const std::size_t w = mateR[r];
        if (w == kNone) {
          found = true;
        } else if (dist[w] == kNone) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };

  // Iterative DFS along the BFS layering; finds vertex-disjoint shortest paths.
  std::vector<std::size_t> iter(nl);
  auto augment = [&](std::size_t root) {
    std::vector<std::size_t> stack{root};
    std::vector<std::size_t> via;  // right vertex used to leave stack[i]
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      bool advanced = false;
      while (iter[u] < d.adj[u].size()) {
        const std::size_t r = d.adj[u][iter[u]++];
        const std::size_t w = mateR[r];
        if (w == kNone) {
          via.push_back(r);
          for (std::size_t i = 0; i < stack.size(); ++i) {
            mateL[stack[i]] = via[i];
            mateR[via[i]] = stack[i];
          }
          return true;
        }
        if (dist[w] == dist[u] + 1) {
          via.push_back(r);
          stack.push_back(w);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist[u] = kNone;
        stack.pop_back();
        if (!via.empty()) via.pop_back();
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(iter.begin(), iter.end(), 0);
    std::size_t augmented = 0;
    for (std::size_t u = 0; u < nl; ++u) {
      if (mateL[u] == kNone && augment(u)) ++augmented;
    }
    if (stats) {
      stats->rounds += 1;
      stats->work += h.edges().size() + nl + augmented;
      stats->perRule["hk-phase"] += augmented;
      stats->commits["hk-phase"] += 1;
    }
    if (augmented == 0) break;
  }

  Matching m;
  for (std::size_t u = 0; u < nl; ++u) {
    if (mateL[u] != kNone) m.push_back({d.leftIds[u], d.rightIds[mateL[u]]});
  }
  return m;
}

VertexSet koenigVertexCover(const BipartiteGraph& h, const Matching& m) {
  const Dense d(h);
  const std::size_t nl = d.leftIds.size();
  const std::size_t nr = d.rightIds.size();
  std::vector<std::size_t> mateL(nl, kNone), mateR(nr, kNone);
  for (const BiEdge& e : m) {
    const std::size_t l = d.leftIndex(e.left);
    const std::size_t r = d.rightIndex(e.right);
    if (l >= nl || d.leftIds[l] != e.left || r >= nr || d.rightIds[r] != e.right ||
        !std::binary_search(h.edges().begin(), h.edges().end(), e)) {
      throw ContractViolation("matching edge not in graph");
    }
    if (mateL[l] != kNone || mateR[r] != kNone) throw ContractViolation("matching edges share an endpoint");
    mateL[l] = r;
    mateR[r] = l;
  }

  std::vector<bool> zLeft(nl, false), zRight(nr, false);
  std::queue<std::size_t> q;
  for (std::size_t u = 0; u < nl; ++u) {
    if (mateL[u] == kNone) {
      zLeft[u] = true;
      q.push(u);
    }
  }
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (std::size_t r : d.adj[u]) {
      if (zRight[r] || mateL[u] == r) continue;
      zRight[r] = true;
      const std::size_t w = mateR[r];
      if (w != kNone && !zLeft[w]) {
        zLeft[w] = true;
        q.push(w);
      }
    }
  }

  std::vector<VertexId> cover;
  for (std::size_t u = 0; u < nl; ++u) {
    if (!zLeft[u]) cover.push_back(d.leftIds[u]);
  }
  for (std::size_t r = 0; r < nr; ++r) {
    if (zRight[r]) cover.push_back(d.rightIds[r]);
  }
  VertexSet result(std::move(cover));
  if (result.size() != m.size()) throw ContractViolation("matching is not maximum: cover size differs");
  for (const BiEdge& e : h.edges()) {
    if (!result.contains(e.left) && !result.contains(e.right)) {
      throw ContractViolation("matching is not maximum: cover misses an edge");
    }
  }
  return result;
}

void HalfIntegralAssignment::set(VertexId v, int doubled) {
  if (doubled < 0 || doubled > 2) throw InputError("half-integral value out of range");
  doubled_[v] = doubled;
}

int HalfIntegralAssignment::doubled(VertexId v) const {
  auto it = doubled_.find(v);
  return it == doubled_.end() ? 0 : it->second;
}

std::int64_t HalfIntegralAssignment::objectiveDoubled() const {
  std::int64_t sum = 0;
  for (const auto& [v, x] : doubled_) sum += x;
  return sum;
}

bool HalfIntegralAssignment::feasibleFor(const MultiGraph& g) const {
  for (const EdgeRecord& r : g.edgeRecords()) {
    if (doubled(r.edge.u) + doubled(r.edge.v) < 2) return false;
  }
  return true;
}

HalfIntegralAssignment solveLPVC(const MultiGraph& g, RoundStats* stats) {
  if (!g.isSimple()) throw InputError("solveLPVC requires a simple graph");
  const auto n = static_cast<VertexId>(g.capacity());
  std::vector<VertexId> left = g.vertices();
  std::vector<VertexId> right;
  for (VertexId v : left) right.push_back(n + v);
  std::vector<BiEdge> edges;
  for (const EdgeRecord& r : g.edgeRecords()) {
    edges.push_back({r.edge.u, n + r.edge.v});
    edges.push_back({r.edge.v, n + r.edge.u});
  }
  const BipartiteGraph h(VertexSet(left), VertexSet(right), std::move(edges));
  const Matching m = maximumBipartiteMatching(h, stats);
  const VertexSet cover = koenigVertexCover(h, m);
  HalfIntegralAssignment beta;
  for (VertexId v : left) {
    beta.set(v, (cover.contains(v) ? 1 : 0) + (cover.contains(n + v) ? 1 : 0));
  }
  return beta;
}

HalfIntegralAssignment roundHalfIntegral(const MultiGraph& g, const std::map<VertexId, Rational>& beta) {
  auto valueOf = [&](VertexId v) {
    auto it = beta.find(v);
    if (it == beta.end()) throw InputError("assignment misses vertex " + std::to_string(v));
    return it->second;
  };
  for (VertexId v : g.vertices()) {
    if (valueOf(v) < 0) throw InputError("negative LP value at vertex " + std::to_string(v));
  }
  for (const EdgeRecord& r : g.edgeRecords()) {
    if (valueOf(r.edge.u) + valueOf(r.edge.v) < 1) {
      throw InputError("infeasible LP assignment on edge (" + std::to_string(r.edge.u) + "," +
                       std::to_string(r.edge.v) + ")");
    }
  }
  const Rational half(1, 2);
  HalfIntegralAssignment out;
  for (VertexId v : g.vertices()) {
    const Rational x = valueOf(v);
    out.set(v, x < half ? 0 : (x == half ? 1 : 2));
  }
  return out;
}

NtPartition ntPartition(const HalfIntegralAssignment& beta) {
  std::vector<VertexId> zero, half, one;
  for (const auto& [v, x] : beta.values()) {
    (x == 0 ? zero : (x == 1 ? half : one)).push_back(v);
  }
  return {VertexSet(std::move(zero)), VertexSet(std::move(half)), VertexSet(std::move(one))};
}

}  // namespace pkern

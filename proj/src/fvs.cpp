#include "pkern/fvs.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <string>
#include <unordered_map>

#include "pkern/error.hpp"

namespace pkern {

namespace {

constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

// Marks the vertices the Leaf Rule would eventually delete. An edge of
// multiplicity >= 2 is never a bridge; loops make their 2-edge-connected
// component cyclic. A component of the bridge tree survives iff it is
// cyclic or separates two cyclic components.
std::vector<bool> attachedTreeMask(const MultiGraph& g) {
  const std::size_t n = g.capacity();
  std::vector<std::size_t> disc(n, kUnset), low(n, 0), parent(n, kUnset);
  std::vector<std::vector<bool>> isBridge(n);
  for (VertexId v = 0; v < n; ++v) isBridge[v].assign(g.incident(v).size(), false);
  std::size_t timer = 0;

  struct Frame {
    VertexId v;
    std::size_t next;
  };
  for (VertexId root : g.vertices()) {
    if (disc[root] != kUnset) continue;
    std::vector<Frame> stack{{root, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto inc = g.incident(f.v);
      if (f.next < inc.size()) {
        const Incidence& e = inc[f.next++];
        const VertexId w = e.to;
        if (w == f.v) continue;
        if (w == parent[f.v] && e.multiplicity == 1) continue;
        if (disc[w] == kUnset) {
          parent[w] = f.v;
          disc[w] = low[w] = timer++;
          stack.push_back({w, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        const VertexId v = f.v;
        stack.pop_back();
        if (!stack.empty()) {
          const VertexId p = stack.back().v;
          low[p] = std::min(low[p], low[v]);
          if (low[v] > disc[p] && g.multiplicity(p, v) == 1) {
            const auto pi = g.incident(p);
            const auto vi = g.incident(v);
            for (std::size_t i = 0; i < pi.size(); ++i) {
              if (pi[i].to == v) isBridge[p][i] = true;
            }
            for (std::size_t i = 0; i < vi.size(); ++i) {
              if (vi[i].to == p) isBridge[v][i] = true;
            }
          }
        }
      }
    }
  }

  // 2-edge-connected components.
  std::vector<std::size_t> comp(n, kUnset);
  std::vector<bool> cyclic;
  std::vector<std::size_t> compSize;
  for (VertexId s : g.vertices()) {
    if (comp[s] != kUnset) continue;
    const std::size_t id = cyclic.size();
    cyclic.push_back(false);
    compSize.push_back(0);
    std::vector<VertexId> todo{s};
    comp[s] = id;
    while (!todo.empty()) {
      const VertexId v = todo.back();
      todo.pop_back();
      ++compSize[id];
      if (g.hasSelfLoop(v)) cyclic[id] = true;
      const auto inc = g.incident(v);
      for (std::size_t i = 0; i < inc.size(); ++i) {
        const VertexId w = inc[i].to;
        if (w == v || isBridge[v][i] || comp[w] != kUnset) continue;
        comp[w] = id;
        todo.push_back(w);
      }
    }
    if (compSize[id] > 1) cyclic[id] = true;
  }

  // Bridge tree.
  const std::size_t nc = cyclic.size();
  std::vector<std::vector<std::size_t>> tree(nc);
  for (VertexId v : g.vertices()) {
    const auto inc = g.incident(v);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      if (isBridge[v][i]) tree[comp[v]].push_back(comp[inc[i].to]);
    }
  }
  std::vector<std::size_t> treeParent(nc, kUnset), sub(nc, 0), total(nc, 0);
  std::vector<bool> seen(nc, false);
  for (std::size_t r = 0; r < nc; ++r) {
    if (seen[r]) continue;
    std::vector<std::size_t> order{r};
    seen[r] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t c : tree[order[i]]) {
        if (!seen[c]) {
          seen[c] = true;
          treeParent[c] = order[i];
          order.push_back(c);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      sub[*it] += cyclic[*it] ? 1 : 0;
      if (treeParent[*it] != kUnset) sub[treeParent[*it]] += sub[*it];
    }
    for (std::size_t c : order) total[c] = sub[r];
  }
  std::vector<bool> keepComp(nc, false);
  for (std::size_t c = 0; c < nc; ++c) {
    if (cyclic[c]) {
      keepComp[c] = true;
      continue;
    }
    std::size_t directions = 0;
    for (std::size_t d : tree[c]) {
      if (d == treeParent[c]) {
        if (total[c] - sub[c] > 0) ++directions;
      } else if (sub[d] > 0) {
        ++directions;
      }
    }
    keepComp[c] = directions >= 2;
  }

  std::vector<bool> drop(n, false);
  for (VertexId v : g.vertices()) drop[v] = !keepComp[comp[v]];
  return drop;
}

bool contractible(const MultiGraph& g, VertexId v) { return g.degree(v) == 2 && !g.hasSelfLoop(v); }

// Per-vertex chain verdicts: delete, and optionally add one edge.
struct ChainPlan {
  std::vector<bool> remove;
  std::vector<std::optional<Edge>> add;
};

ChainPlan planChains(const MultiGraph& g) {
  const std::size_t n = g.capacity();
  ChainPlan plan{std::vector<bool>(n, false), std::vector<std::optional<Edge>>(n)};
  std::vector<bool> visited(n, false);
  for (VertexId s : g.vertices()) {
    if (visited[s] || !contractible(g, s)) continue;
    std::vector<VertexId> members{s};
    visited[s] = true;
    std::vector<VertexId> anchors;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const VertexId v = members[i];
      for (const Incidence& inc : g.incident(v)) {
        if (contractible(g, inc.to)) {
          if (!visited[inc.to]) {
            visited[inc.to] = true;
            members.push_back(inc.to);
          }
        } else {
          for (std::uint32_t m = 0; m < inc.multiplicity; ++m) anchors.push_back(inc.to);
        }
      }
    }
    if (anchors.size() == 2) {
      const VertexId rep = *std::min_element(members.begin(), members.end());
      for (VertexId v : members) plan.remove[v] = true;
      plan.add[rep] = Edge(anchors[0], anchors[1]);
    } else if (anchors.empty()) {
      const VertexId keep = *std::max_element(members.begin(), members.end());
      for (VertexId v : members) plan.remove[v] = v != keep;
      plan.add[keep] = Edge(keep, keep);
    } else {
      throw ContractViolation("degree-2 chain with " + std::to_string(anchors.size()) + " anchor incidences");
    }
  }
  return plan;
}

Instance runSinglePass(const PassSpec& pass, const Instance& inst, const Engine& engine, RoundStats* stats) {
  RoundStats local;
  Instance cur = inst;
  engine.step(pass, cur, stats ? *stats : local);
  return cur;
}

}  // namespace

PassSpec loopRuleSpec() {
  return {"loop", [](const Instance& inst) -> ScanFn {
            const MultiGraph* g = &inst.graph;
            return [g](VertexId v) {
              ChangeSet cs;
              if (g->hasSelfLoop(v)) {
                cs.deleteVertex(v);
                cs.decrementK(1);
              }
              return cs;
            };
          }};
}

PassSpec leafRuleSpec() {
  return {"leaf", [](const Instance& inst) -> ScanFn {
            auto drop = std::make_shared<const std::vector<bool>>(attachedTreeMask(inst.graph));
            return [drop](VertexId v) {
              ChangeSet cs;
              if ((*drop)[v]) cs.deleteVertex(v);
              return cs;
            };
          }};
}

PassSpec chainRuleSpec() {
  return {"chain", [](const Instance& inst) -> ScanFn {
            auto plan = std::make_shared<const ChainPlan>(planChains(inst.graph));
            return [plan](VertexId v) {
              ChangeSet cs;
              if (plan->remove[v]) cs.deleteVertex(v);
              if (plan->add[v]) cs.addEdge(plan->add[v]->u, plan->add[v]->v);
              return cs;
            };
          }};
}

Instance loopRulePass(const Instance& inst, const Engine& engine, RoundStats* stats) {
  return runSinglePass(loopRuleSpec(), inst, engine, stats);
}

Instance leafRuleExhaustive(const Instance& inst, const Engine& engine, RoundStats* stats) {
  return runSinglePass(leafRuleSpec(), inst, engine, stats);
}

Instance chainRuleExhaustive(const Instance& inst, const Engine& engine, RoundStats* stats) {
  return runSinglePass(chainRuleSpec(), inst, engine, stats);
}

std::pair<Instance, RoundStats> reduceWithFvsRules(const Instance& inst, bool withLeafRule, const Engine& engine) {
  std::vector<PassSpec> passes;
  if (withLeafRule) passes.push_back(leafRuleSpec());
  passes.push_back(chainRuleSpec());
  passes.push_back(loopRuleSpec());
  return engine.runToFixpoint(passes, inst);
}

namespace {

struct Branch {
  Instance inst;
  std::vector<VertexId> removed;
};

struct BranchResult {
  enum class Kind { Reject, Accept, Expand } kind = Kind::Reject;
  std::vector<VertexId> removed;
  std::vector<Branch> children;
  RoundStats stats;
};

BranchResult processBranch(const Branch& b, const Engine& inner) {
  BranchResult res;
  if (b.inst.k < 0) return res;
  if (isForest(b.inst.graph)) {
    res.kind = BranchResult::Kind::Accept;
    res.removed = b.removed;
    return res;
  }
  Instance cur = b.inst;
  inner.step(leafRuleSpec(), cur, res.stats);
  inner.step(chainRuleSpec(), cur, res.stats);
  if (isForest(cur.graph)) {
    res.kind = BranchResult::Kind::Accept;
    res.removed = b.removed;
    return res;
  }
  const std::vector<VertexId> loops = [&] {
    std::vector<VertexId> out;
    for (VertexId v : cur.graph.vertices()) {
      if (cur.graph.hasSelfLoop(v)) out.push_back(v);
    }
    return out;
  }();
  if (!loops.empty()) {
    Instance next = cur;
    inner.step(loopRuleSpec(), next, res.stats);
    if (next.k < 0) return res;
    std::vector<VertexId> removed = b.removed;
    removed.insert(removed.end(), loops.begin(), loops.end());
    res.kind = BranchResult::Kind::Expand;
    res.children.push_back({std::move(next), std::move(removed)});
    return res;
  }
  if (cur.k == 0) return res;

  std::vector<VertexId> candidates;
  for (const EdgeRecord& r : cur.graph.edgeRecords()) {
    if (r.multiplicity >= 2) {
      candidates = {r.edge.u, r.edge.v};
      break;
    }
  }
  if (candidates.empty()) {
    candidates = cur.graph.vertices();
    std::stable_sort(candidates.begin(), candidates.end(), [&](VertexId a, VertexId c) {
      return cur.graph.degree(a) > cur.graph.degree(c);
    });
    const auto limit = static_cast<std::size_t>(3 * cur.k);
    if (candidates.size() > limit) candidates.resize(limit);
  }
  res.kind = BranchResult::Kind::Expand;
  for (VertexId v : candidates) {
    Branch child{{cur.graph.withoutVertices(VertexSet{v}), cur.k - 1}, b.removed};
    child.removed.push_back(v);
    res.children.push_back(std::move(child));
  }
  return res;
}

}  // namespace

FvsResult fvsSolve(const Instance& inst, const Engine& engine) {
  if (inst.k < 0) throw InputError("fvsSolve requires k >= 0");
  FvsResult result;
  const Engine inner;
  std::vector<Branch> frontier{{inst, {}}};
  while (!frontier.empty()) {
    ++result.layers;
    std::vector<BranchResult> outcomes = engine.executor().map<BranchResult>(
        frontier.size(), [&](std::size_t i) { return processBranch(frontier[i], inner); });
    std::size_t layerDepth = 0;
    std::vector<Branch> next;
    for (BranchResult& r : outcomes) {
      result.stats.work += r.stats.work + 1;
      for (const auto& [rule, n] : r.stats.perRule) result.stats.perRule[rule] += n;
      for (const auto& [rule, n] : r.stats.commits) result.stats.commits[rule] += n;
      layerDepth = std::max(layerDepth, r.stats.rounds);
    }
    result.stats.rounds += layerDepth;
    result.stats.commits["fvs-layer"] += 1;
    for (BranchResult& r : outcomes) {
      if (r.kind == BranchResult::Kind::Accept) {
        VertexSet solution(r.removed);
        if (!isForest(inst.graph.withoutVertices(solution)) || static_cast<std::int64_t>(solution.size()) > inst.k) {
          throw ContractViolation("fvsSolve produced an invalid certificate");
        }
        result.yes = true;
        result.solution = std::move(solution);
        return result;
      }
    }
    for (BranchResult& r : outcomes) {
      for (Branch& c : r.children) next.push_back(std::move(c));
    }
    frontier = std::move(next);
  }
  return result;
}

// ---------------------------------------------------------------------------

MonotoneCircuit::MonotoneCircuit(std::vector<Gate> gates, std::size_t output)
    : gates_(std::move(gates)), output_(output) {
  if (gates_.empty()) throw InputError("circuit has no gates");
  if (output_ >= gates_.size()) throw InputError("circuit output out of range");
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    if (g.kind != GateKind::In && (g.a >= i || g.b >= i)) {
      throw InputError("gate g" + std::to_string(i) + " references a later gate");
    }
  }
}

std::vector<bool> evalAllGates(const MonotoneCircuit& c) {
  std::vector<bool> val(c.gates().size(), false);
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    const Gate& g = c.gates()[i];
    switch (g.kind) {
      case GateKind::In: val[i] = g.value; break;
      case GateKind::And: val[i] = val[g.a] && val[g.b]; break;
      case GateKind::Or: val[i] = val[g.a] || val[g.b]; break;
    }
  }
  return val;
}

bool evalMonotoneCircuit(const MonotoneCircuit& c) { return evalAllGates(c)[c.output()]; }

McvpGraph mcvpToGraph(const MonotoneCircuit& c) {
  McvpGraph out;
  std::vector<Edge> edges;
  VertexId next = 0;
  auto fresh = [&] { return next++; };
  auto internal = [&](GadgetRecord& rec, VertexId u, VertexId v) {
    rec.internalEdges.emplace_back(u, v);
    edges.emplace_back(u, v);
  };

  for (const Gate& gate : c.gates()) {
    GadgetRecord rec;
    if (gate.kind != GateKind::In) {
      rec.inputX = fresh();
      rec.inputY = fresh();
    }
    rec.output = fresh();
    const VertexId t[3] = {fresh(), fresh(), fresh()};
    for (int i = 0; i < 3; ++i) {
      internal(rec, rec.output, t[i]);
      for (int j = i + 1; j < 3; ++j) internal(rec, t[i], t[j]);
    }
    switch (gate.kind) {
      case GateKind::In:
        if (gate.value) internal(rec, rec.output, rec.output);
        break;
      case GateKind::And:
        internal(rec, *rec.inputX, *rec.inputY);
        internal(rec, *rec.inputX, rec.output);
        internal(rec, *rec.inputY, rec.output);
        break;
      case GateKind::Or:
        for (int rep = 0; rep < 2; ++rep) {
          internal(rec, *rec.inputX, rec.output);
          internal(rec, *rec.inputY, rec.output);
        }
        break;
    }
    out.gadgets.gadgets.push_back(std::move(rec));
  }
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    const Gate& gate = c.gates()[i];
    if (gate.kind == GateKind::In) continue;
    const GadgetRecord& rec = out.gadgets.gadgets[i];
    const Edge wa(out.gadgets.gadgets[gate.a].output, *rec.inputX);
    const Edge wb(out.gadgets.gadgets[gate.b].output, *rec.inputY);
    out.gadgets.wires.push_back(wa);
    out.gadgets.wires.push_back(wb);
    edges.push_back(wa);
    edges.push_back(wb);
  }
  out.graph = MultiGraph::fromEdges(next, edges);
  out.target = out.gadgets.gadgets[c.output()].output;
  return out;
}

Instance genNecklace(std::int64_t k) {
  if (k < 1) throw InputError("genNecklace requires k >= 1");
  const auto levels = static_cast<VertexId>(k);
  std::vector<Edge> edges;
  for (VertexId i = 0; i < levels; ++i) {
    const VertexId a = 3 * i, b = 3 * i + 1, c = 3 * i + 2;
    edges.emplace_back(a, b);
    edges.emplace_back(a, c);
    edges.emplace_back(b, c);
    if (i > 0) {
      edges.emplace_back(b, 3 * (i - 1));
      edges.emplace_back(c, 3 * (i - 1));
    }
  }
  return {MultiGraph::fromEdges(3 * static_cast<std::size_t>(levels), edges), k};
}

// ---------------------------------------------------------------------------

std::size_t maxFlowerPetals(const MultiGraph& g, VertexId v) {
  if (g.vertexCount() > kFlowerVertexLimit) {
    throw OracleRefused("flower check limited to " + std::to_string(kFlowerVertexLimit) + " vertices");
  }
  if (!g.contains(v)) throw InputError("flower centre is not a vertex");
  std::vector<VertexId> others;
  for (VertexId u : g.vertices()) {
    if (u != v) others.push_back(u);
  }
  const std::size_t m = others.size();
  std::vector<std::uint32_t> adjMask(m, 0);
  std::uint32_t nbrMask = 0;
  std::uint32_t doubleMask = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint32_t mult = g.multiplicity(v, others[i]);
    if (mult >= 1) nbrMask |= 1u << i;
    if (mult >= 2) doubleMask |= 1u << i;
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j && g.multiplicity(others[i], others[j]) > 0) adjMask[i] |= 1u << j;
    }
  }

  std::unordered_map<std::uint32_t, std::size_t> memo;
  // Petal vertex sets through index x: x alone (double edge to v) or a
  // path x ... y with y the first other neighbor of v reached.
  auto petalsFrom = [&](std::size_t x, std::uint32_t used) {
    std::vector<std::uint32_t> sets;
    if (doubleMask >> x & 1u) sets.push_back(1u << x);
    std::vector<std::pair<std::size_t, std::uint32_t>> stack{{x, 1u << x}};
    while (!stack.empty()) {
      auto [u, path] = stack.back();
      stack.pop_back();
      std::uint32_t cand = adjMask[u] & ~used & ~path;
      while (cand) {
        const auto w = static_cast<std::size_t>(__builtin_ctz(cand));
        cand &= cand - 1;
        const std::uint32_t np = path | (1u << w);
        if (nbrMask >> w & 1u) {
          sets.push_back(np);
        } else {
          stack.push_back({w, np});
        }
      }
    }
    return sets;
  };

  std::function<std::size_t(std::uint32_t)> best = [&](std::uint32_t used) -> std::size_t {
    const std::uint32_t avail = nbrMask & ~used;
    if (!avail) return 0;
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    const auto x = static_cast<std::size_t>(__builtin_ctz(avail));
    std::size_t result = best(used | (1u << x));
    for (std::uint32_t petal : petalsFrom(x, used)) {
      result = std::max(result, 1 + best(used | petal));
    }
    memo[used] = result;
    return result;
  };
  return g.loopCount(v) + best(0);
}

bool flowerApplicableBrute(const MultiGraph& g, VertexId v, std::int64_t k) {
  return static_cast<std::int64_t>(maxFlowerPetals(g, v)) > k;
}

bool matchingViaFlower(const MultiGraph& g, std::int64_t k) {
  const auto s = static_cast<VertexId>(g.capacity());
  std::vector<EdgeRecord> records = g.edgeRecords();
  for (VertexId u : g.vertices()) records.push_back({Edge(u, s), 1});
  std::vector<VertexId> dead = g.deletedVertices();
  const MultiGraph withHub = MultiGraph::fromRecords(g.capacity() + 1, records, dead);
  return flowerApplicableBrute(withHub, s, k - 1);
}

}  // namespace pkern

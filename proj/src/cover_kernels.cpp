#include "pkern/cover_kernels.hpp"

#include <algorithm>
#include <string>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include "pkern/error.hpp"
#include "pkern/lp_matching.hpp"

namespace pkern {

const Engine& sequentialEngine() {
  static const Engine engine;
  return engine;
}

namespace {

void requireSimple(const Instance& inst, const char* who) {
  if (!inst.graph.isSimple()) throw InputError(std::string(who) + " requires a simple graph");
  if (inst.k < 0) throw InputError(std::string(who) + " requires k >= 0");
}

VertexSet liveWhere(const Engine& engine, const MultiGraph& g, RoundStats& stats,
                    const std::function<bool(VertexId)>& pred) {
  const std::vector<VertexId> vs = g.vertices();
  const std::vector<char> hit = engine.scan<char>(vs.size(), [&](std::size_t i) { return pred(vs[i]) ? 1 : 0; }, stats);
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (hit[i]) out.push_back(vs[i]);
  }
  return VertexSet(std::move(out));
}

ChangeSet deleteAll(const VertexSet& vs, std::int64_t kDecrement = 0) {
  ChangeSet cs;
  for (VertexId v : vs) cs.deleteVertex(v);
  cs.decrementK(kDecrement);
  return cs;
}

void checkBound(const SizeBound& bound, std::int64_t param, const KernelOutcome& out) {
  if (out.isReduced() && !bound.holds(param, out.reduced().graph.vertexCount())) {
    throw ContractViolation("kernel exceeds its size bound " + bound.name());
  }
}

}  // namespace

KernelOutcome bussKernel(const Instance& inst, const Engine& engine) {
  requireSimple(inst, "bussKernel");
  const std::int64_t k = inst.k;
  RoundStats stats;
  std::vector<TraceRecord> trace;

  const VertexSet high =
      liveWhere(engine, inst.graph, stats, [&](VertexId v) { return inst.graph.degree(v) > static_cast<std::size_t>(k); });
  trace.push_back({"buss-high-degree", high, static_cast<std::int64_t>(high.size())});
  if (static_cast<std::int64_t>(high.size()) > k) {
    KernelOutcome out = KernelOutcome::makeDecided(Answer::No);
    out.trace = std::move(trace);
    out.stats = std::move(stats);
    return out;
  }

  Instance cur = engine.commitRound(inst, deleteAll(high, static_cast<std::int64_t>(high.size())),
                                    "buss-high-degree", high.size(), stats);
  const VertexSet isolated =
      liveWhere(engine, cur.graph, stats, [&](VertexId v) { return cur.graph.degree(v) == 0; });
  cur = engine.commitRound(cur, deleteAll(isolated), "buss-isolated", isolated.size(), stats);
  trace.push_back({"buss-isolated", isolated, static_cast<std::int64_t>(isolated.size())});

  const std::int64_t kRest = cur.k;
  const auto edges = static_cast<std::int64_t>(cur.graph.edgeCount());
  const auto verts = static_cast<std::int64_t>(cur.graph.vertexCount());
  KernelOutcome out;
  if (edges > k * kRest || verts > kRest + k * kRest) {
    out = KernelOutcome::makeDecided(Answer::No);
    trace.push_back({"buss-count", {}, edges});
  } else {
    out = KernelOutcome::makeReduced(std::move(cur));
  }
  out.trace = std::move(trace);
  out.stats = std::move(stats);
  checkBound({BoundKind::BussQuadratic}, k, out);
  return out;
}

KernelOutcome ntKernel(const Instance& inst, const Engine& engine) {
  requireSimple(inst, "ntKernel");
  RoundStats stats;
  const HalfIntegralAssignment beta = solveLPVC(inst.graph, &stats);
  const NtPartition part = ntPartition(beta);
  std::vector<TraceRecord> trace{{"nt-v0", part.zero, static_cast<std::int64_t>(part.zero.size())},
                                 {"nt-v1", part.one, static_cast<std::int64_t>(part.one.size())},
                                 {"nt-lp-doubled", {}, beta.objectiveDoubled()}};
  KernelOutcome out;
  if (beta.objectiveDoubled() > 2 * inst.k) {
    out = KernelOutcome::makeDecided(Answer::No);
  } else {
    Instance reduced = engine.commitRound(inst, deleteAll(part.zero.unite(part.one), static_cast<std::int64_t>(part.one.size())),
                                          "nt-commit", part.zero.size() + part.one.size(), stats);
    out = KernelOutcome::makeReduced(std::move(reduced));
  }
  out.trace = std::move(trace);
  out.stats = std::move(stats);
  checkBound({BoundKind::TwoK}, inst.k, out);
  return out;
}

KernelOutcome matchingKernel(const Instance& inst, const Engine& engine) {
  requireSimple(inst, "matchingKernel");
  const std::int64_t k = inst.k;
  if (k == 0) return KernelOutcome::makeDecided(Answer::Yes);
  const MultiGraph& g = inst.graph;
  RoundStats stats;
  std::vector<TraceRecord> trace;

  const auto twoK = static_cast<std::size_t>(2 * k);
  const VertexSet high = liveWhere(engine, g, stats, [&](VertexId v) { return g.degree(v) > twoK; });
  trace.push_back({"matching-high-degree", high, static_cast<std::int64_t>(high.size())});

  if (static_cast<std::int64_t>(high.size()) >= k) {
    // The first k high-degree vertices have > 2k neighbors each, more than the
    // other k-1 chosen vertices plus k-1 used mates can block.
    const std::vector<VertexId> chosen(high.begin(), high.begin() + k);
    const VertexSet chosenSet(chosen);
    VertexSet used;
    std::vector<Edge> matching;
    for (VertexId v : chosen) {
      for (VertexId u : g.neighbors(v)) {
        if (chosenSet.contains(u) || used.contains(u)) continue;
        used.insert(u);
        matching.emplace_back(v, u);
        break;
      }
    }
    if (matching.size() != chosen.size()) throw ContractViolation("greedy high-degree matching failed");
    KernelOutcome out = KernelOutcome::makeDecided(Answer::Yes);
    std::get<Decided>(out.result).matching = std::move(matching);
    out.trace = std::move(trace);
    out.stats = std::move(stats);
    return out;
  }

  const std::vector<std::vector<VertexId>> kept = engine.scan<std::vector<VertexId>>(
      high.size(),
      [&](std::size_t i) {
        std::vector<VertexId> nb = g.neighbors(high.ids()[i]);
        if (nb.size() > twoK) nb.resize(twoK);
        return nb;
      },
      stats);
  VertexSet sPrime = high;
  for (const auto& nb : kept) sPrime = sPrime.unite(VertexSet(nb));
  trace.push_back({"matching-s-prime", sPrime, static_cast<std::int64_t>(sPrime.size())});

  const MultiGraph rest = g.withoutVertices(sPrime);
  const VertexSet restLive =
      liveWhere(engine, rest, stats, [&](VertexId v) { return rest.degree(v) > 0; });
  trace.push_back({"matching-low-part", {}, static_cast<std::int64_t>(restLive.size())});

  KernelOutcome out;
  if (static_cast<std::int64_t>(restLive.size()) >= 4 * k * k) {
    out = KernelOutcome::makeDecided(Answer::Yes);
  } else {
    const VertexSet keep = sPrime.unite(restLive);
    const VertexSet drop = g.vertexSet().minus(keep);
    Instance reduced = engine.commitRound(inst, deleteAll(drop), "matching-commit", drop.size(), stats);
    out = KernelOutcome::makeReduced(std::move(reduced));
  }
  out.trace = std::move(trace);
  out.stats = std::move(stats);
  checkBound({BoundKind::SixKSquared}, k, out);
  return out;
}

Kernelizer bussKernelizer() {
  return {"vc-buss", {BoundKind::BussQuadratic}, bussKernel,
          [](const Instance& i) { return vcSolve(i).yes; }};
}

Kernelizer ntKernelizer() {
  return {"vc-nt", {BoundKind::TwoK}, ntKernel, [](const Instance& i) { return vcSolve(i).yes; }};
}

Kernelizer matchingKernelizer() {
  return {"matching", {BoundKind::SixKSquared}, matchingKernel, [](const Instance& i) {
            return static_cast<std::int64_t>(maximumMatching(i.graph).size()) >= i.k;
          }};
}

KernelOutcome sizeThresholdWrap(const Kernelizer& inner, int delta, const Instance& inst, const Engine& engine) {
  if (delta < 1) throw InputError("threshold wrapper requires delta >= 1");
  const std::uint64_t bound = thresholdBound(inst.k, delta);
  if (bound > inst.graph.vertexCount()) {
    KernelOutcome out = KernelOutcome::makeReduced(inst);
    out.trace.push_back({"threshold-pass-through", {}, static_cast<std::int64_t>(std::min<std::uint64_t>(bound, INT64_MAX))});
    return out;
  }
  KernelOutcome out = inner.run(inst, engine);
  if (out.isReduced() && out.reduced().graph.vertexCount() > bound) {
    const bool yes = inner.decide(out.reduced());
    KernelOutcome decided = KernelOutcome::makeDecided(yes ? Answer::Yes : Answer::No);
    decided.trace = std::move(out.trace);
    decided.trace.push_back({"threshold-decide", {}, static_cast<std::int64_t>(bound)});
    decided.stats = std::move(out.stats);
    return decided;
  }
  return out;
}

namespace {

// Depth-bounded branching on the smallest-id remaining edge.
bool branchCover(const MultiGraph& g, std::int64_t k, std::vector<VertexId>& chosen, std::size_t& nodes) {
  ++nodes;
  for (VertexId u : g.vertices()) {
    const std::vector<VertexId> nb = g.neighbors(u);
    if (nb.empty()) continue;
    if (k <= 0) return false;
    for (VertexId pick : {u, nb.front()}) {
      chosen.push_back(pick);
      if (branchCover(g.withoutVertices(VertexSet{pick}), k - 1, chosen, nodes)) return true;
      chosen.pop_back();
    }
    return false;
  }
  return true;
}

}  // namespace

VcResult vcSolve(const Instance& inst, const Engine& engine) {
  const KernelOutcome kernel = bussKernel(inst, engine);
  VcResult result;
  result.stats = kernel.stats;
  if (!kernel.isReduced()) return result;

  std::vector<VertexId> chosen;
  std::size_t nodes = 0;
  const Instance& reduced = kernel.reduced();
  const bool yes = branchCover(reduced.graph, reduced.k, chosen, nodes);
  result.stats.work += nodes;
  if (!yes) return result;

  VertexSet cover(chosen);
  for (const TraceRecord& t : kernel.trace) {
    if (t.rule == "buss-high-degree") cover = cover.unite(t.vertices);
  }
  if (!isVertexCover(inst.graph, cover) || static_cast<std::int64_t>(cover.size()) > inst.k) {
    throw ContractViolation("vcSolve produced an invalid cover");
  }
  result.yes = true;
  result.cover = std::move(cover);
  return result;
}

std::vector<Edge> maximumMatching(const MultiGraph& g) {
  using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BGraph bg(g.capacity());
  for (const EdgeRecord& r : g.edgeRecords()) {
    if (!r.edge.isLoop()) boost::add_edge(r.edge.u, r.edge.v, bg);
  }
  std::vector<boost::graph_traits<BGraph>::vertex_descriptor> mate(g.capacity());
  boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
  std::vector<Edge> out;
  for (VertexId v = 0; v < g.capacity(); ++v) {
    const auto m = mate[v];
    if (m != boost::graph_traits<BGraph>::null_vertex() && v < m) out.emplace_back(v, static_cast<VertexId>(m));
  }
  return out;
}

bool isVertexCover(const MultiGraph& g, const VertexSet& cover) {
  for (const EdgeRecord& r : g.edgeRecords()) {
    if (!cover.contains(r.edge.u) && !cover.contains(r.edge.v)) return false;
  }
  return true;
}

bool isMatching(const MultiGraph& g, const std::vector<Edge>& m) {
  std::vector<bool> used(g.capacity(), false);
  for (const Edge& e : m) {
    if (e.isLoop() || g.multiplicity(e.u, e.v) == 0 || used[e.u] || used[e.v]) return false;
    used[e.u] = used[e.v] = true;
  }
  return true;
}

}  // namespace pkern

#include "pkern/structural.hpp"

#include <algorithm>
#include <string>

#include "pkern/error.hpp"

namespace pkern {

VertexSet MarkSet::vertices() const {
  std::vector<VertexId> out;
  for (const Mark& m : marks) out.push_back(m.vertex);
  return VertexSet(std::move(out));
}

void validateStructural(const StructuralInstance& si) {
  if (si.k < 0) throw InputError("width bound k must be >= 0");
  if (!si.graph.isSimple()) throw InputError("width kernels require a simple graph");
  for (VertexId v : si.S) {
    if (!si.graph.contains(v)) throw InputError("cover vertex " + std::to_string(v) + " is not in the graph");
  }
  for (const EdgeRecord& r : si.graph.edgeRecords()) {
    if (!si.S.contains(r.edge.u) && !si.S.contains(r.edge.v)) {
      throw InputError("S is not a vertex cover: edge (" + std::to_string(r.edge.u) + "," +
                       std::to_string(r.edge.v) + ") is uncovered");
    }
  }
}

bool isSimplicial(const MultiGraph& g, VertexId v) {
  const std::vector<VertexId> nb = g.neighbors(v);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      if (g.multiplicity(nb[i], nb[j]) == 0) return false;
    }
  }
  return true;
}

StructuralInstance commonNeighborCompletion(const StructuralInstance& si, const Engine& engine, RoundStats* stats) {
  validateStructural(si);
  RoundStats local;
  RoundStats& st = stats ? *stats : local;
  const MultiGraph& g = si.graph;
  const std::vector<VertexId>& cover = si.S.ids();
  const auto k = static_cast<std::size_t>(si.k);

  // Item i handles the pairs (cover[i], cover[j]) with j > i.
  const std::vector<ChangeSet> verdicts = engine.scan<ChangeSet>(
      cover.size(),
      [&](std::size_t i) {
        ChangeSet cs;
        const VertexId u = cover[i];
        std::vector<VertexId> outer;
        for (VertexId w : g.neighbors(u)) {
          if (!si.S.contains(w)) outer.push_back(w);
        }
        for (std::size_t j = i + 1; j < cover.size(); ++j) {
          const VertexId v = cover[j];
          if (g.multiplicity(u, v) > 0) continue;
          std::size_t common = 0;
          for (VertexId w : outer) {
            if (g.multiplicity(v, w) > 0) ++common;
          }
          if (common > k) cs.addEdge(u, v);
        }
        return cs;
      },
      st);
  ChangeSet merged;
  std::size_t applied = 0;
  for (const ChangeSet& cs : verdicts) {
    applied += cs.additions().size();
    merged.merge(cs);
  }
  Instance next = engine.commitRound({g, si.k}, merged, "common-neighbor", applied, st);
  return {std::move(next.graph), si.k, si.S};
}

namespace {

// A simplicial vertex whose neighbors all have degree above k stays removable
// for tree depth; such neighbors keep k+1 marked neighbors.
std::size_t tdNeighborDegree(std::int64_t k) { return static_cast<std::size_t>(k) + 1; }

std::vector<VertexId> outsideCover(const StructuralInstance& si) {
  std::vector<VertexId> out;
  for (VertexId v : si.graph.vertices()) {
    if (!si.S.contains(v)) out.push_back(v);
  }
  return out;
}

MarkSet collect(std::vector<std::vector<Mark>> parts) {
  MarkSet ms;
  for (auto& p : parts) ms.marks.insert(ms.marks.end(), p.begin(), p.end());
  std::sort(ms.marks.begin(), ms.marks.end());
  ms.marks.erase(std::unique(ms.marks.begin(), ms.marks.end()), ms.marks.end());
  return ms;
}

}  // namespace

MarkSet pathWidthMarks(const StructuralInstance& si, const Engine& engine) {
  const MultiGraph& g = si.graph;
  const std::vector<VertexId> all = g.vertices();
  RoundStats scratch;
  const std::vector<char> simplicial =
      engine.scan<char>(g.capacity(), [&](std::size_t v) {
        return g.contains(static_cast<VertexId>(v)) && isSimplicial(g, static_cast<VertexId>(v)) ? 1 : 0;
      }, scratch);

  std::vector<std::vector<Mark>> parts = engine.scan<std::vector<Mark>>(
      all.size(),
      [&](std::size_t i) {
        std::vector<Mark> out;
        const VertexId v = all[i];
        const std::vector<VertexId> nb = g.neighbors(v);
        if (si.S.contains(v)) {
          for (VertexId u : nb) {
            if (g.degree(u) == 1) {
              out.push_back({u, "degree-one", v, v});
              break;
            }
          }
          return out;
        }
        if (!simplicial[v] || nb.size() < 2) return out;
        for (std::size_t a = 0; a < nb.size(); ++a) {
          for (std::size_t b = a + 1; b < nb.size(); ++b) {
            const VertexId x = nb[a], y = nb[b];
            std::optional<VertexId> witness;
            for (VertexId w : g.neighbors(x)) {
              if (w == v || w == y || !simplicial[w] || g.multiplicity(w, y) == 0) continue;
              if (g.multiplicity(w, v) > 0) continue;
              witness = w;
              break;
            }
            if (witness) {
              out.push_back({*witness, "pair-witness", x, y});
            } else {
              out.push_back({v, "self", x, y});
            }
          }
        }
        return out;
      },
      scratch);
  return collect(std::move(parts));
}

MarkSet treeDepthMarks(const StructuralInstance& si, const Engine& engine) {
  const MultiGraph& g = si.graph;
  const std::vector<VertexId> all = g.vertices();
  const std::size_t need = tdNeighborDegree(si.k);
  RoundStats scratch;
  std::vector<std::vector<Mark>> parts = engine.scan<std::vector<Mark>>(
      all.size(),
      [&](std::size_t i) {
        std::vector<Mark> out;
        const VertexId v = all[i];
        const std::vector<VertexId> nb = g.neighbors(v);
        if (si.S.contains(v)) {
          if (nb.size() >= need) {
            for (std::size_t j = 0; j < need; ++j) out.push_back({nb[j], "high-degree-neighbor", v, v});
          }
          return out;
        }
        if (!isSimplicial(g, v)) return out;
        for (VertexId x : nb) {
          if (g.degree(x) < need) {
            out.push_back({v, "self", x, x});
            break;
          }
        }
        return out;
      },
      scratch);
  return collect(std::move(parts));
}

namespace {

enum class Width { Tree, Path, Depth };

const char* prefix(Width w) {
  switch (w) {
    case Width::Tree: return "tw";
    case Width::Path: return "pw";
    case Width::Depth: return "td";
  }
  return "?";
}

SizeBound boundOf(Width w) {
  switch (w) {
    case Width::Tree: return {BoundKind::TreeWidth};
    case Width::Path: return {BoundKind::PathWidth};
    case Width::Depth: return {BoundKind::TreeDepth};
  }
  return {BoundKind::TreeWidth};
}

StructuralOutcome runWidthKernel(Width kind, const StructuralInstance& si, const Engine& engine) {
  validateStructural(si);
  const std::string tag = prefix(kind);
  const auto s = static_cast<std::int64_t>(si.S.size());
  if (si.k >= s) {
    StructuralOutcome out = StructuralOutcome::makeDecided(Answer::Yes);
    out.trace.push_back({tag + "-cover-bound", si.S, s});
    return out;
  }

  RoundStats stats;
  std::vector<TraceRecord> trace;
  const StructuralInstance done = commonNeighborCompletion(si, engine, &stats);
  const std::size_t added = done.graph.edgeCount() - si.graph.edgeCount();
  trace.push_back({tag + "-completion", {}, static_cast<std::int64_t>(added)});

  const MultiGraph& g = done.graph;
  const std::vector<VertexId> outer = outsideCover(done);
  const std::vector<char> simp = engine.scan<char>(
      outer.size(), [&](std::size_t i) { return isSimplicial(g, outer[i]) ? 1 : 0; }, stats);

  std::vector<VertexId> tooWide;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    if (simp[i] && static_cast<std::int64_t>(g.degree(outer[i])) > si.k) tooWide.push_back(outer[i]);
  }
  if (!tooWide.empty()) {
    StructuralOutcome out = StructuralOutcome::makeDecided(Answer::No);
    trace.push_back({tag + "-simplicial-degree", VertexSet(tooWide), static_cast<std::int64_t>(g.degree(tooWide[0]))});
    out.trace = std::move(trace);
    out.stats = std::move(stats);
    return out;
  }

  VertexSet marked;
  if (kind == Width::Path) marked = pathWidthMarks(done, engine).vertices();
  if (kind == Width::Depth) marked = treeDepthMarks(done, engine).vertices();
  if (kind != Width::Tree) trace.push_back({tag + "-marked", marked, static_cast<std::int64_t>(marked.size())});

  ChangeSet drop;
  std::vector<VertexId> dropped;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    if (simp[i] && !marked.contains(outer[i])) {
      drop.deleteVertex(outer[i]);
      dropped.push_back(outer[i]);
    }
  }
  Instance after = engine.commitRound({g, si.k}, drop, tag + "-simplicial", dropped.size(), stats);
  trace.push_back({tag + "-simplicial", VertexSet(dropped), static_cast<std::int64_t>(dropped.size())});

  StructuralOutcome out = StructuralOutcome::makeReduced({std::move(after.graph), si.k, si.S});
  out.trace = std::move(trace);
  out.stats = std::move(stats);
  if (!boundOf(kind).holds(s, out.reduced().graph.vertexCount())) {
    throw ContractViolation(tag + " kernel exceeds its size bound " + boundOf(kind).name());
  }
  return out;
}

}  // namespace

StructuralOutcome twKernel(const StructuralInstance& si, const Engine& engine) {
  return runWidthKernel(Width::Tree, si, engine);
}

StructuralOutcome pwKernel(const StructuralInstance& si, const Engine& engine) {
  return runWidthKernel(Width::Path, si, engine);
}

StructuralOutcome tdKernel(const StructuralInstance& si, const Engine& engine) {
  return runWidthKernel(Width::Depth, si, engine);
}

std::uint64_t twKernelBound(std::uint64_t s) { return SizeBound{BoundKind::TreeWidth}.limit(static_cast<std::int64_t>(s)); }
std::uint64_t pwKernelBound(std::uint64_t s) { return SizeBound{BoundKind::PathWidth}.limit(static_cast<std::int64_t>(s)); }
std::uint64_t tdKernelBound(std::uint64_t s) { return SizeBound{BoundKind::TreeDepth}.limit(static_cast<std::int64_t>(s)); }

VertexSet greedyVertexCover(const MultiGraph& g) {
  std::vector<bool> taken(g.capacity(), false);
  std::vector<VertexId> cover;
  for (const EdgeRecord& r : g.edgeRecords()) {
    if (taken[r.edge.u] || taken[r.edge.v]) continue;
    taken[r.edge.u] = true;
    cover.push_back(r.edge.u);
    if (!r.edge.isLoop()) {
      taken[r.edge.v] = true;
      cover.push_back(r.edge.v);
    }
  }
  return VertexSet(std::move(cover));
}

}  // namespace pkern

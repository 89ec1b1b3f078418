#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pkern/engine.hpp"
#include "pkern/graph.hpp"
#include "pkern/outcome.hpp"

namespace pkern {

/// Default single-worker engine.
const Engine& sequentialEngine();

/// High-degree rule: H = {deg > k}, NO if |H| > k, else delete H, k' = k - |H|,
/// drop isolated vertices and reject if edges > k*k' or vertices > k' + k*k'.
/// Reduced outputs have at most k^2+2k vertices.
KernelOutcome bussKernel(const Instance& inst, const Engine& engine = sequentialEngine());

/// LP-based kernel: V1 goes into the solution, V0 is discarded, G[V_half] is
/// the kernel with parameter k - |V1| and at most 2k vertices.
KernelOutcome ntKernel(const Instance& inst, const Engine& engine = sequentialEngine());

/// Matching kernel with at most 6k^2 vertices. High-degree vertices (> 2k)
/// keep their 2k smallest-id neighbors.
KernelOutcome matchingKernel(const Instance& inst, const Engine& engine = sequentialEngine());

/// A kernelizer plus an exact decision procedure for its problem, used by
/// the threshold wrapper to settle outputs that are still too big.
struct Kernelizer {
  std::string name;
  SizeBound bound;
  std::function<KernelOutcome(const Instance&, const Engine&)> run;
  std::function<bool(const Instance&)> decide;
};

Kernelizer bussKernelizer();
Kernelizer ntKernelizer();
Kernelizer matchingKernelizer();

/// If 2^ceil(k^(1/delta)) exceeds the vertex count the instance is returned
/// unchanged; otherwise the inner kernelizer runs. Inner outputs larger than
/// the threshold are decided exactly, so every Reduced output meets the bound.
KernelOutcome sizeThresholdWrap(const Kernelizer& inner, int delta, const Instance& inst,
                                const Engine& engine = sequentialEngine());

struct VcResult {
  bool yes = false;
  VertexSet cover;
  RoundStats stats;
};

/// Buss kernel followed by depth-k branching on the smallest-id edge.
VcResult vcSolve(const Instance& inst, const Engine& engine = sequentialEngine());

/// Maximum matching in general graphs (Edmonds) used to decide matching kernels.
std::vector<Edge> maximumMatching(const MultiGraph& g);

bool isVertexCover(const MultiGraph& g, const VertexSet& cover);
bool isMatching(const MultiGraph& g, const std::vector<Edge>& m);

}  // namespace pkern

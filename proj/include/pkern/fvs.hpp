#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pkern/cover_kernels.hpp"
#include "pkern/engine.hpp"
#include "pkern/graph.hpp"

namespace pkern {

// ---------------------------------------------------------------------------
// Reduction rules. Each pass performs the exhaustive application of its rule
// in a single commit.

/// Deletes every vertex carrying a self-loop; k drops by their number.
PassSpec loopRuleSpec();
/// Deletes every vertex of an attached tree (found through bridges whose
/// far side is acyclic) and every tree component.
PassSpec leafRuleSpec();
/// Collapses maximal paths of degree-2 vertices into one edge between their
/// anchors. A component made only of degree-2 vertices collapses onto its
/// largest-id vertex, which keeps a self-loop.
PassSpec chainRuleSpec();

Instance loopRulePass(const Instance& inst, const Engine& engine = sequentialEngine(), RoundStats* stats = nullptr);
Instance leafRuleExhaustive(const Instance& inst, const Engine& engine = sequentialEngine(),
                            RoundStats* stats = nullptr);
Instance chainRuleExhaustive(const Instance& inst, const Engine& engine = sequentialEngine(),
                             RoundStats* stats = nullptr);

/// Runs {Leaf, Chain, Loop} (or only {Chain, Loop}) to a joint fixpoint.
std::pair<Instance, RoundStats> reduceWithFvsRules(const Instance& inst, bool withLeafRule = true,
                                                   const Engine& engine = sequentialEngine());

struct FvsResult {
  bool yes = false;
  VertexSet solution;
  std::size_t layers = 0;
  RoundStats stats;
};

/// Layered branch-and-reduce. Each layer lowers k by at least one in every
/// branch, so at most k+1 layers run. Branches of a layer are explored in
/// parallel; the accepted branch with the smallest index wins.
FvsResult fvsSolve(const Instance& inst, const Engine& engine = sequentialEngine());

// ---------------------------------------------------------------------------
// Monotone circuits and the gadget graph.

enum class GateKind { In, And, Or };

struct Gate {
  GateKind kind = GateKind::In;
  bool value = false;  // In gates only
  std::size_t a = 0;   // And/Or operands, both < own index
  std::size_t b = 0;
  friend bool operator==(const Gate&, const Gate&) = default;
};

class MonotoneCircuit {
public:
  MonotoneCircuit() = default;
  /// Throws InputError on forward references or an output out of range.
  MonotoneCircuit(std::vector<Gate> gates, std::size_t output);

  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t output() const { return output_; }
  friend bool operator==(const MonotoneCircuit&, const MonotoneCircuit&) = default;

private:
  std::vector<Gate> gates_;
  std::size_t output_ = 0;
};

/// Values of all gates in topological order.
std::vector<bool> evalAllGates(const MonotoneCircuit& c);
bool evalMonotoneCircuit(const MonotoneCircuit& c);

struct GadgetRecord {
  std::optional<VertexId> inputX;
  std::optional<VertexId> inputY;
  VertexId output = 0;
  std::vector<Edge> internalEdges;
};

struct GadgetMap {
  std::vector<GadgetRecord> gadgets;
  /// Wires: predecessor output -> successor input.
  std::vector<Edge> wires;
};

struct McvpGraph {
  MultiGraph graph;
  VertexId target = 0;
  GadgetMap gadgets;
};

/// Gadget graph whose target vertex is removed by the exhaustive rules iff the
/// circuit evaluates to true. Every output vertex sits in a private K4; a true
/// input carries a self-loop; AND inputs form a triangle with the output; OR
/// inputs are joined to the output by double edges.
McvpGraph mcvpToGraph(const MonotoneCircuit& c);

/// Levels of triangles, each tethered to the previous level's anchor, so that
/// alternating exhaustive Chain/Loop passes need exactly k Loop commits.
Instance genNecklace(std::int64_t k);

// ---------------------------------------------------------------------------
// Flower checking (desk scale).

inline constexpr std::size_t kFlowerVertexLimit = 14;

/// Largest number of cycles through v that pairwise share only v.
/// Throws OracleRefused above kFlowerVertexLimit vertices.
std::size_t maxFlowerPetals(const MultiGraph& g, VertexId v);
bool flowerApplicableBrute(const MultiGraph& g, VertexId v, std::int64_t k);
/// Adds a universal vertex s and asks whether s lies in more than k-1 petals.
bool matchingViaFlower(const MultiGraph& g, std::int64_t k);

}  // namespace pkern

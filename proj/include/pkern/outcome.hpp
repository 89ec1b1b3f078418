#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pkern/engine.hpp"
#include "pkern/graph.hpp"

namespace pkern {

enum class Answer { Yes, No };

/// One applied rule, e.g. {"buss-high-degree", H}.
struct TraceRecord {
  std::string rule;
  VertexSet vertices;
  std::int64_t value = 0;
  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct Decided {
  Answer answer = Answer::No;
  /// Vertex certificate (cover, backdoor, ...) when one is known.
  std::optional<VertexSet> certificate;
  /// Matching certificate for matching kernels.
  std::vector<Edge> matching;
};

template <class Inst>
struct Reduced {
  Inst instance;
};

/// Either a reduced instance (which meets the kernelizer's size bound) or an
/// early decision, plus the applied-rule trace and round/work accounting.
template <class Inst>
struct BasicOutcome {
  std::variant<Reduced<Inst>, Decided> result;
  std::vector<TraceRecord> trace;
  RoundStats stats;

  bool isReduced() const { return std::holds_alternative<Reduced<Inst>>(result); }
  const Inst& reduced() const { return std::get<Reduced<Inst>>(result).instance; }
  const Decided& decided() const { return std::get<Decided>(result); }

  static BasicOutcome makeReduced(Inst inst) { return BasicOutcome{Reduced<Inst>{std::move(inst)}, {}, {}}; }
  static BasicOutcome makeDecided(Answer a, std::optional<VertexSet> cert = std::nullopt) {
    return BasicOutcome{Decided{a, std::move(cert), {}}, {}, {}};
  }
};

using KernelOutcome = BasicOutcome<Instance>;

/// Vertex (or point) budget a kernelizer guarantees for its Reduced outputs.
enum class BoundKind { BussQuadratic, TwoK, SixKSquared, Threshold, TreeWidth, PathWidth, TreeDepth, KSquared };

struct SizeBound {
  BoundKind kind;
  int delta = 1;  // only for Threshold

  std::string name() const;
  /// Evaluated at k (or |S| for the structural bounds); saturates at UINT64_MAX.
  std::uint64_t limit(std::int64_t param) const;
  bool holds(std::int64_t param, std::size_t size) const { return size <= limit(param); }
};

/// Smallest r >= 0 with r^delta >= k.
std::uint64_t ceilRoot(std::uint64_t k, int delta);
/// 2^(ceil(k^(1/delta))), saturating.
std::uint64_t thresholdBound(std::int64_t k, int delta);

}  // namespace pkern

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pkern/backdoor.hpp"
#include "pkern/graph.hpp"
#include "pkern/plc.hpp"

namespace pkern::oracle {

/// Largest instance each exhaustive oracle accepts. Larger inputs raise
/// OracleRefused before any enumeration starts.
struct OracleLimit {
  static constexpr std::size_t vc = 20;
  static constexpr std::size_t matching = 16;
  static constexpr std::size_t fvs = 12;
  static constexpr std::size_t width = 11;
  static constexpr std::size_t plc = 12;
  static constexpr std::size_t sat = 20;
  static constexpr std::size_t halfIntegral = 12;
};

std::size_t vcOpt(const MultiGraph& g);
/// Every minimum vertex cover.
std::vector<VertexSet> minimumVertexCovers(const MultiGraph& g);
std::size_t independenceNumber(const MultiGraph& g);
std::size_t matchOpt(const MultiGraph& g);
std::size_t fvsOpt(const MultiGraph& g);

/// Minimum of 2 * sum(x) over x in {0, 1/2, 1}^V with x_u + x_v >= 1 per edge.
std::int64_t halfIntegralOptDoubled(const MultiGraph& g);

struct Widths {
  int tw = -1;
  int pw = -1;
  /// Elimination-forest height minus one.
  int td = -1;
  friend bool operator==(const Widths&, const Widths&) = default;
};
Widths widthOpt(const MultiGraph& g);

std::size_t plcOpt(const PointSet& ps);
/// Collinearity by comparing the rational ratios of r - p against q - p.
bool collinearRational(const Point& p, const Point& q, const Point& r);

bool satBrute(const CnfFormula& f);
/// Smallest strong backdoor by enumerating variable subsets; nullopt if none
/// of at most maxSize variables exists.
std::optional<std::size_t> strongBackdoorOpt(const CnfFormula& f, BackdoorTarget target, std::size_t maxSize);
/// Smallest set of variables meeting every triple.
std::size_t tripleHittingSetOpt(const TripleHypergraph& h);

// Sequential one-step fixpoints for the feedback vertex set rules, always
// applying the rule at the smallest eligible vertex first.
Instance leafFixpoint(const Instance& inst);
Instance chainFixpoint(const Instance& inst);
Instance loopFixpoint(const Instance& inst);

}  // namespace pkern::oracle

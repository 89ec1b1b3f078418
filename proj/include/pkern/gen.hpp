#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "pkern/backdoor.hpp"
#include "pkern/fvs.hpp"
#include "pkern/plc.hpp"

namespace pkern::gen {

/// The single source of randomness. Bounded draws are computed here rather
/// than with std distributions so corpora agree across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
  std::mt19937_64 engine_;
};

struct GraphParams {
  std::size_t n = 10;
  /// Edge probability per unordered pair, in percent.
  unsigned edgePercent = 30;
  unsigned loopPercent = 0;
  /// Probability that a present edge gets a second copy, in percent.
  unsigned parallelPercent = 0;
};

MultiGraph randomGraph(const GraphParams& p, Rng& rng);
MultiGraph randomSimpleGraph(std::size_t n, unsigned edgePercent, Rng& rng);

/// n distinct lattice points in [-range, range]^d. Every third draw is snapped
/// onto a line through two earlier points so heavy lines actually occur.
PointSet randomPoints(std::size_t n, std::size_t d, std::int64_t range, Rng& rng);

/// Random CNF with clause widths in [1, maxWidth].
CnfFormula randomCnf(std::size_t vars, std::size_t clauses, std::size_t maxWidth, Rng& rng);

/// Circuit whose gates after the inputs pick operands among earlier gates;
/// the last gate is the output.
MonotoneCircuit randomCircuit(std::size_t gates, Rng& rng);

/// Serialized instance for `gen random <problem>`: vc, matching, fvs, tw, pw,
/// td (simple or multigraph text), plc, sat and mcvp.
std::string randomInstanceText(std::string_view problem, std::size_t size, std::uint64_t seed);

}  // namespace pkern::gen

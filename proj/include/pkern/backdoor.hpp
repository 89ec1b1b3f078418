#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "pkern/cover_kernels.hpp"
#include "pkern/engine.hpp"
#include "pkern/graph.hpp"

namespace pkern {

/// DIMACS-style literal: +v or -v for variable v in [1, variables].
using Literal = std::int32_t;
using Clause = std::vector<Literal>;

/// CNF formula. Each clause is stored sorted by (variable, sign) without
/// repeated literals.
class CnfFormula {
public:
  CnfFormula() = default;
  /// Throws InputError on a zero literal or a variable out of range.
  CnfFormula(std::size_t variables, std::vector<Clause> clauses);

  std::size_t variables() const { return variables_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

private:
  std::size_t variables_ = 0;
  std::vector<Clause> clauses_;
};

bool isTautology(const Clause& c);
CnfFormula removeTautologies(const CnfFormula& f);
bool isHorn(const CnfFormula& f);
bool isTwoCnf(const CnfFormula& f);

/// index 0 unused; assignment[v] is the value of variable v.
using Assignment = std::vector<bool>;
bool satisfies(const CnfFormula& f, const Assignment& a);

/// Vertex v-1 stands for variable v.
MultiGraph positivePrimalGraph(const CnfFormula& f);

struct TripleHypergraph {
  std::size_t variables = 0;
  /// Sorted triples of variables, ascending and duplicate-free.
  std::vector<std::array<std::int32_t, 3>> edges;
};
TripleHypergraph tripleHypergraph(const CnfFormula& f);

struct SatResult {
  bool sat = false;
  Assignment assignment;
};

/// Unit propagation; throws InputError on a clause with two positive literals.
SatResult hornSat(const CnfFormula& f);
/// Implication graph SCCs; throws InputError on a clause with three literals.
SatResult twoSat(const CnfFormula& f);

enum class BackdoorTarget { Horn, TwoCnf };

/// Formula left after fixing the given variables: satisfied clauses vanish and
/// falsified literals are stripped. `values` is indexed like an Assignment;
/// only variables in `fixed` are read.
CnfFormula restrictFormula(const CnfFormula& f, const std::vector<std::int32_t>& fixed, const Assignment& values);

/// True iff every assignment of `vars` leaves a formula of the target class.
bool isStrongBackdoor(const CnfFormula& f, const std::vector<std::int32_t>& vars, BackdoorTarget target);

/// A strong backdoor of at most k variables (ascending), or nullopt.
std::optional<std::vector<std::int32_t>> findBackdoor(const CnfFormula& f, std::int64_t k, BackdoorTarget target,
                                                      const Engine& engine = sequentialEngine());

enum class BackdoorAnswer { Sat, Unsat, NoBackdoor };

struct BackdoorResult {
  BackdoorAnswer answer = BackdoorAnswer::NoBackdoor;
  std::vector<std::int32_t> backdoor;
  /// Full satisfying assignment when answer is Sat.
  Assignment assignment;
  std::size_t branches = 0;
  RoundStats stats;
};

/// Finds a backdoor and solves every assignment of it as an independent job.
/// Throws InputError for backdoors larger than kMaxBackdoorEnumeration.
BackdoorResult backdoorSatSolve(const CnfFormula& f, std::int64_t k, BackdoorTarget target,
                                const Engine& engine = sequentialEngine());

inline constexpr std::size_t kMaxBackdoorEnumeration = 24;

}  // namespace pkern

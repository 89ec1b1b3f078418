#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "pkern/backdoor.hpp"
#include "pkern/fvs.hpp"
#include "pkern/outcome.hpp"
#include "pkern/plc.hpp"
#include "pkern/structural.hpp"

namespace pkern::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Text formats. Parsers throw ParseError with a 1-based line number.
// mgraph: "p mgraph <n> <m>", then "d <v>" for tombstoned ids and m lines
// "e <u> <v>"; "c ..." lines are comments.
MultiGraph parseGraph(std::string_view text);
std::string writeGraph(const MultiGraph& g);

// "p plc <d> <n> <k>" followed by n rows of d integers.
PlcInstance parsePoints(std::string_view text);
std::string writePoints(const PlcInstance& inst);

// DIMACS CNF; clauses end with 0 and may span lines.
CnfFormula parseCnf(std::string_view text);
std::string writeCnf(const CnfFormula& f);

// One line per gate in order, "g<i> = IN 0|1", "g<i> = AND g<a> g<b>" or
// "g<i> = OR g<a> g<b>", then a final "out g<i>".
MonotoneCircuit parseCircuit(std::string_view text);
std::string writeCircuit(const MonotoneCircuit& c);

// One vertex id per line.
VertexSet parseCover(std::string_view text);

Json toJson(const RoundStats& s);
Json toJson(const std::vector<TraceRecord>& trace);
Json toJson(const VertexSet& s);

/// Shared outcome envelope. `instance` is the reduced instance in its text
/// format when the outcome is "reduced".
Json outcomeEnvelope(std::string_view command, std::string_view problem, std::string_view outcome);

Json kernelJson(std::string_view problem, const KernelOutcome& out, bool withStats);
Json structuralJson(std::string_view problem, const StructuralOutcome& out, bool withStats);
Json plcJson(const PlcOutcome& out, bool withStats);

/// Rebuilds a kernel outcome from its JSON form (stats are not restored).
KernelOutcome kernelFromJson(const Json& j);
StructuralOutcome structuralFromJson(const Json& j, const VertexSet& cover);
PlcOutcome plcFromJson(const Json& j);

// Verification of kernel outcomes against the original instance.
enum class KernelProblem { VcBuss, VcNt, VcThreshold, Matching, FvsRules, Tw, Pw, Td, Plc };

std::optional<KernelProblem> kernelProblemFromName(std::string_view name);
std::string kernelProblemName(KernelProblem p);

struct VerifyReport {
  bool sizeChecked = false;
  bool sizeOk = true;
  std::uint64_t sizeLimit = 0;
  std::size_t size = 0;
  /// Empty when the oracle refused the instance.
  std::optional<bool> answerOk;
  std::optional<bool> originalAnswer;
  std::optional<bool> outcomeAnswer;
  std::vector<std::string> warnings;

  bool pass() const { return sizeOk && answerOk.value_or(true); }
  Json toJson() const;
};

/// delta is only read for VcThreshold.
VerifyReport verifyOutcome(KernelProblem p, const Instance& original, const KernelOutcome& out, int delta = 1);
VerifyReport verifyOutcome(KernelProblem p, const StructuralInstance& original, const StructuralOutcome& out);
VerifyReport verifyOutcome(const PlcInstance& original, const PlcOutcome& out);

}  // namespace pkern::io

#include "pkern/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "pkern/error.hpp"
#include "pkern/oracles.hpp"

namespace pkern::io {

namespace {

// Non-comment, non-blank lines with their 1-based numbers.
struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text, bool allowPercentEnd = false) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::istringstream in{std::string(raw)};
    std::vector<std::string> toks;
    for (std::string t; in >> t;) toks.push_back(t);
    if (!toks.empty() && toks[0] == "c") continue;
    if (allowPercentEnd && !toks.empty() && toks[0] == "%") break;
    if (!toks.empty()) out.push_back({number, std::move(toks)});
    if (end == text.size()) break;
  }
  return out;
}

template <class T>
T parseInt(const std::string& s, std::size_t line, const char* what) {
  T value{};
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) throw ParseError(line, std::string("invalid ") + what + " '" + s + "'");
  return value;
}

BigInt parseBig(const std::string& s, std::size_t line) {
  std::size_t i = (s.size() > 1 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) throw ParseError(line, "invalid coordinate '" + s + "'");
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) throw ParseError(line, "invalid coordinate '" + s + "'");
  }
  BigInt v(s.substr(i));
  return s[0] == '-' ? BigInt(-v) : v;
}

void expectTokens(const Line& l, std::size_t n, const char* what) {
  if (l.tokens.size() != n) {
    throw ParseError(l.number, std::string(what) + " expects " + std::to_string(n) + " fields, got " +
                                   std::to_string(l.tokens.size()));
  }
}

template <class F>
auto rethrowAsParse(std::size_t line, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
}

}  // namespace

MultiGraph parseGraph(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "missing 'p mgraph' header");
  const Line& h = lines[0];
  if (h.tokens.size() != 4 || h.tokens[0] != "p" || h.tokens[1] != "mgraph") {
    throw ParseError(h.number, "expected header 'p mgraph <n> <m>'");
  }
  const auto n = parseInt<std::uint32_t>(h.tokens[2], h.number, "vertex count");
  const auto m = parseInt<std::size_t>(h.tokens[3], h.number, "edge count");
  std::vector<Edge> edges;
  std::vector<VertexId> deleted;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens[0] == "e") {
      expectTokens(l, 3, "edge line");
      const auto u = parseInt<VertexId>(l.tokens[1], l.number, "vertex");
      const auto v = parseInt<VertexId>(l.tokens[2], l.number, "vertex");
      if (u >= n || v >= n) throw ParseError(l.number, "edge endpoint out of range");
      edges.emplace_back(u, v);
    } else if (l.tokens[0] == "d") {
      expectTokens(l, 2, "deleted-vertex line");
      const auto v = parseInt<VertexId>(l.tokens[1], l.number, "vertex");
      if (v >= n) throw ParseError(l.number, "deleted vertex out of range");
      deleted.push_back(v);
    } else {
      throw ParseError(l.number, "unknown line type '" + l.tokens[0] + "'");
    }
  }
  if (edges.size() != m) {
    throw ParseError(lines.back().number,
                     "header announces " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  std::sort(edges.begin(), edges.end());
  std::vector<EdgeRecord> records;
  for (const Edge& e : edges) {
    if (!records.empty() && records.back().edge == e) {
      ++records.back().multiplicity;
    } else {
      records.push_back({e, 1});
    }
  }
  return rethrowAsParse(lines.back().number, [&] { return MultiGraph::fromRecords(n, records, deleted); });
}

std::string writeGraph(const MultiGraph& g) {
  std::ostringstream out;
  out << "p mgraph " << g.capacity() << ' ' << g.edgeCount() << '\n';
  for (VertexId v : g.deletedVertices()) out << "d " << v << '\n';
  for (const EdgeRecord& r : g.edgeRecords()) {
    for (std::uint32_t i = 0; i < r.multiplicity; ++i) out << "e " << r.edge.u << ' ' << r.edge.v << '\n';
  }
  return out.str();
}

PlcInstance parsePoints(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "missing 'p plc' header");
  const Line& h = lines[0];
  if (h.tokens.size() != 5 || h.tokens[0] != "p" || h.tokens[1] != "plc") {
    throw ParseError(h.number, "expected header 'p plc <d> <n> <k>'");
  }
  const auto d = parseInt<std::size_t>(h.tokens[2], h.number, "dimension");
  const auto n = parseInt<std::size_t>(h.tokens[3], h.number, "point count");
  const auto k = parseInt<std::int64_t>(h.tokens[4], h.number, "k");
  if (lines.size() - 1 != n) {
    throw ParseError(lines.back().number,
                     "header announces " + std::to_string(n) + " points, found " + std::to_string(lines.size() - 1));
  }
  std::vector<Point> pts;
  std::set<Point> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    expectTokens(lines[i], d, "point row");
    Point p;
    for (const std::string& t : lines[i].tokens) p.push_back(parseBig(t, lines[i].number));
    if (!seen.insert(p).second) throw ParseError(lines[i].number, "duplicate point");
    pts.push_back(std::move(p));
  }
  if (k < 0) throw ParseError(h.number, "k must be >= 0");
  return rethrowAsParse(h.number, [&] { return PlcInstance{PointSet(d, std::move(pts)), k}; });
}

std::string writePoints(const PlcInstance& inst) {
  std::ostringstream out;
  out << "p plc " << inst.points.dimension() << ' ' << inst.points.size() << ' ' << inst.k << '\n';
  for (const Point& p : inst.points.points()) {
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i];
    out << '\n';
  }
  return out.str();
}

CnfFormula parseCnf(std::string_view text) {
  const std::vector<Line> lines = tokenize(text, true);
  if (lines.empty()) throw ParseError(1, "missing 'p cnf' header");
  const Line& h = lines[0];
  if (h.tokens.size() != 4 || h.tokens[0] != "p" || h.tokens[1] != "cnf") {
    throw ParseError(h.number, "expected header 'p cnf <variables> <clauses>'");
  }
  const auto vars = parseInt<std::size_t>(h.tokens[2], h.number, "variable count");
  const auto count = parseInt<std::size_t>(h.tokens[3], h.number, "clause count");
  std::vector<Clause> clauses;
  Clause cur;
  std::size_t lastLine = h.number;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    lastLine = lines[i].number;
    for (const std::string& t : lines[i].tokens) {
      const auto lit = parseInt<Literal>(t, lines[i].number, "literal");
      if (lit == 0) {
        clauses.push_back(std::move(cur));
        cur.clear();
        continue;
      }
      if (static_cast<std::size_t>(std::abs(lit)) > vars) {
        throw ParseError(lines[i].number, "variable " + std::to_string(std::abs(lit)) + " exceeds header count");
      }
      cur.push_back(lit);
    }
  }
  if (!cur.empty()) throw ParseError(lastLine, "last clause is not terminated by 0");
  if (clauses.size() != count) {
    throw ParseError(lastLine, "header announces " + std::to_string(count) + " clauses, found " +
                                   std::to_string(clauses.size()));
  }
  return CnfFormula(vars, std::move(clauses));
}

std::string writeCnf(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.variables() << ' ' << f.clauses().size() << '\n';
  for (const Clause& c : f.clauses()) {
    for (Literal l : c) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

namespace {

std::size_t gateRef(const std::string& tok, std::size_t line) {
  if (tok.size() < 2 || tok[0] != 'g') throw ParseError(line, "expected a gate reference g<i>, got '" + tok + "'");
  return parseInt<std::size_t>(tok.substr(1), line, "gate reference");
}

}  // namespace

MonotoneCircuit parseCircuit(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty circuit");
  const Line& last = lines.back();
  if (last.tokens[0] != "out") throw ParseError(last.number, "circuit must end with 'out g<i>'");
  expectTokens(last, 2, "output line");
  const std::size_t output = gateRef(last.tokens[1], last.number);

  std::vector<Gate> gates;
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    const Line& l = lines[i];
    if (gateRef(l.tokens[0], l.number) != i) throw ParseError(l.number, "expected gate id g" + std::to_string(i));
    if (l.tokens.size() < 3 || l.tokens[1] != "=") throw ParseError(l.number, "expected 'g<i> = <kind> ...'");
    Gate g;
    const std::string& kind = l.tokens[2];
    if (kind == "IN") {
      expectTokens(l, 4, "input gate");
      if (l.tokens[3] != "0" && l.tokens[3] != "1") throw ParseError(l.number, "input value must be 0 or 1");
      g.kind = GateKind::In;
      g.value = l.tokens[3] == "1";
    } else if (kind == "AND" || kind == "OR") {
      expectTokens(l, 5, "binary gate");
      g.kind = kind == "AND" ? GateKind::And : GateKind::Or;
      g.a = gateRef(l.tokens[3], l.number);
      g.b = gateRef(l.tokens[4], l.number);
      if (g.a >= i || g.b >= i) throw ParseError(l.number, "operand must refer to an earlier gate");
    } else {
      throw ParseError(l.number, "unknown gate kind '" + kind + "'");
    }
    gates.push_back(g);
  }
  return rethrowAsParse(last.number, [&] { return MonotoneCircuit(std::move(gates), output); });
}

std::string writeCircuit(const MonotoneCircuit& c) {
  std::ostringstream out;
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    const Gate& g = c.gates()[i];
    out << 'g' << i << " = ";
    switch (g.kind) {
      case GateKind::In: out << "IN " << (g.value ? 1 : 0); break;
      case GateKind::And: out << "AND g" << g.a << " g" << g.b; break;
      case GateKind::Or: out << "OR g" << g.a << " g" << g.b; break;
    }
    out << '\n';
  }
  out << "out g" << c.output() << '\n';
  return out.str();
}

VertexSet parseCover(std::string_view text) {
  std::vector<VertexId> ids;
  for (const Line& l : tokenize(text)) {
    expectTokens(l, 1, "cover line");
    ids.push_back(parseInt<VertexId>(l.tokens[0], l.number, "vertex"));
  }
  return VertexSet(std::move(ids));
}

// ---------------------------------------------------------------------------

Json toJson(const RoundStats& s) {
  return Json{{"rounds", s.rounds}, {"work", s.work}, {"perRule", s.perRule}, {"commits", s.commits}};
}

Json toJson(const VertexSet& s) { return Json(s.ids()); }

Json toJson(const std::vector<TraceRecord>& trace) {
  Json arr = Json::array();
  for (const TraceRecord& t : trace) arr.push_back({{"rule", t.rule}, {"vertices", toJson(t.vertices)}, {"value", t.value}});
  return arr;
}

Json outcomeEnvelope(std::string_view command, std::string_view problem, std::string_view outcome) {
  return Json{{"schema", kSchemaVersion}, {"command", command}, {"problem", problem}, {"outcome", outcome}};
}

namespace {

const char* answerName(Answer a) { return a == Answer::Yes ? "yes" : "no"; }

template <class Out>
void fillDecided(Json& j, const Out& out) {
  const Decided& d = out.decided();
  if (d.certificate) j["certificate"] = toJson(*d.certificate);
  if (!d.matching.empty()) {
    Json m = Json::array();
    for (const Edge& e : d.matching) m.push_back({e.u, e.v});
    j["matching"] = m;
  }
}

template <class Out>
void fillCommon(Json& j, const Out& out, bool withStats) {
  j["trace"] = toJson(out.trace);
  if (withStats) j["stats"] = toJson(out.stats);
}

Answer answerFrom(const Json& j) {
  const std::string o = j.at("outcome").get<std::string>();
  if (o == "yes") return Answer::Yes;
  if (o == "no") return Answer::No;
  throw InputError("unknown outcome '" + o + "'");
}

Decided decidedFrom(const Json& j) {
  Decided d{answerFrom(j), std::nullopt, {}};
  if (j.contains("certificate")) d.certificate = VertexSet(j["certificate"].get<std::vector<VertexId>>());
  if (j.contains("matching")) {
    for (const auto& e : j["matching"]) d.matching.emplace_back(e.at(0).get<VertexId>(), e.at(1).get<VertexId>());
  }
  return d;
}

std::vector<TraceRecord> traceFrom(const Json& j) {
  std::vector<TraceRecord> out;
  if (!j.contains("trace")) return out;
  for (const auto& t : j["trace"]) {
    out.push_back({t.at("rule").get<std::string>(), VertexSet(t.at("vertices").get<std::vector<VertexId>>()),
                   t.at("value").get<std::int64_t>()});
  }
  return out;
}

}  // namespace

Json kernelJson(std::string_view problem, const KernelOutcome& out, bool withStats) {
  Json j;
  if (out.isReduced()) {
    j = outcomeEnvelope("kernelize", problem, "reduced");
    j["k"] = out.reduced().k;
    j["vertices"] = out.reduced().graph.vertexCount();
    j["instance"] = writeGraph(out.reduced().graph);
  } else {
    j = outcomeEnvelope("kernelize", problem, answerName(out.decided().answer));
    fillDecided(j, out);
  }
  fillCommon(j, out, withStats);
  return j;
}

Json structuralJson(std::string_view problem, const StructuralOutcome& out, bool withStats) {
  Json j;
  if (out.isReduced()) {
    j = outcomeEnvelope("kernelize", problem, "reduced");
    j["k"] = out.reduced().k;
    j["cover"] = toJson(out.reduced().S);
    j["vertices"] = out.reduced().graph.vertexCount();
    j["instance"] = writeGraph(out.reduced().graph);
  } else {
    j = outcomeEnvelope("kernelize", problem, answerName(out.decided().answer));
    fillDecided(j, out);
  }
  fillCommon(j, out, withStats);
  return j;
}

Json plcJson(const PlcOutcome& out, bool withStats) {
  Json j;
  if (out.isReduced()) {
    j = outcomeEnvelope("kernelize", "plc", "reduced");
    j["k"] = out.reduced().k;
    j["points"] = out.reduced().points.size();
    j["instance"] = writePoints(out.reduced());
  } else {
    j = outcomeEnvelope("kernelize", "plc", answerName(out.decided().answer));
    fillDecided(j, out);
  }
  fillCommon(j, out, withStats);
  return j;
}

KernelOutcome kernelFromJson(const Json& j) {
  KernelOutcome out;
  if (j.at("outcome") == "reduced") {
    out = KernelOutcome::makeReduced({parseGraph(j.at("instance").get<std::string>()), j.at("k").get<std::int64_t>()});
  } else {
    out.result = decidedFrom(j);
  }
  out.trace = traceFrom(j);
  return out;
}

StructuralOutcome structuralFromJson(const Json& j, const VertexSet& cover) {
  StructuralOutcome out;
  if (j.at("outcome") == "reduced") {
    const VertexSet s = j.contains("cover") ? VertexSet(j["cover"].get<std::vector<VertexId>>()) : cover;
    out = StructuralOutcome::makeReduced(
        {parseGraph(j.at("instance").get<std::string>()), j.at("k").get<std::int64_t>(), s});
  } else {
    out.result = decidedFrom(j);
  }
  out.trace = traceFrom(j);
  return out;
}

PlcOutcome plcFromJson(const Json& j) {
  PlcOutcome out;
  if (j.at("outcome") == "reduced") {
    out = PlcOutcome::makeReduced(parsePoints(j.at("instance").get<std::string>()));
  } else {
    out.result = decidedFrom(j);
  }
  out.trace = traceFrom(j);
  return out;
}

// ---------------------------------------------------------------------------

std::optional<KernelProblem> kernelProblemFromName(std::string_view name) {
  static const std::pair<const char*, KernelProblem> table[] = {
      {"vc-buss", KernelProblem::VcBuss}, {"vc-nt", KernelProblem::VcNt},       {"vc-thresh", KernelProblem::VcThreshold},
      {"matching", KernelProblem::Matching}, {"fvs-rules", KernelProblem::FvsRules}, {"tw", KernelProblem::Tw},
      {"pw", KernelProblem::Pw},           {"td", KernelProblem::Td},           {"plc", KernelProblem::Plc}};
  for (const auto& [n, p] : table) {
    if (name == n) return p;
  }
  return std::nullopt;
}

std::string kernelProblemName(KernelProblem p) {
  switch (p) {
    case KernelProblem::VcBuss: return "vc-buss";
    case KernelProblem::VcNt: return "vc-nt";
    case KernelProblem::VcThreshold: return "vc-thresh";
    case KernelProblem::Matching: return "matching";
    case KernelProblem::FvsRules: return "fvs-rules";
    case KernelProblem::Tw: return "tw";
    case KernelProblem::Pw: return "pw";
    case KernelProblem::Td: return "td";
    case KernelProblem::Plc: return "plc";
  }
  return "?";
}

Json VerifyReport::toJson() const {
  Json j{{"schema", kSchemaVersion}, {"command", "verify"}, {"pass", pass()}, {"sizeChecked", sizeChecked},
         {"sizeOk", sizeOk},         {"size", size},          {"sizeLimit", sizeLimit}, {"warnings", warnings}};
  j["answerOk"] = answerOk ? Json(*answerOk) : Json(nullptr);
  j["originalAnswer"] = originalAnswer ? Json(*originalAnswer) : Json(nullptr);
  j["outcomeAnswer"] = outcomeAnswer ? Json(*outcomeAnswer) : Json(nullptr);
  return j;
}

namespace {

// Decides the problem exactly, or returns nullopt with a warning on refusal.
template <class F>
std::optional<bool> decide(F&& f, VerifyReport& rep, const char* what) {
  try {
    return f();
  } catch (const OracleRefused& e) {
    rep.warnings.push_back(std::string(what) + ": " + e.what() + "; answer check skipped");
    return std::nullopt;
  }
}

void finishAnswer(VerifyReport& rep, std::optional<bool> original, std::optional<bool> outcome) {
  rep.originalAnswer = original;
  rep.outcomeAnswer = outcome;
  if (original && outcome) rep.answerOk = *original == *outcome;
}

std::optional<bool> decideGraph(KernelProblem p, const Instance& inst, VerifyReport& rep) {
  return decide(
      [&] {
        switch (p) {
          case KernelProblem::Matching:
            return static_cast<std::int64_t>(oracle::matchOpt(inst.graph)) >= inst.k;
          case KernelProblem::FvsRules:
            return inst.k >= 0 && static_cast<std::int64_t>(oracle::fvsOpt(inst.graph)) <= inst.k;
          default:
            return inst.k >= 0 && static_cast<std::int64_t>(oracle::vcOpt(inst.graph)) <= inst.k;
        }
      },
      rep, "oracle");
}

}  // namespace

VerifyReport verifyOutcome(KernelProblem p, const Instance& original, const KernelOutcome& out, int delta) {
  VerifyReport rep;
  if (out.isReduced()) {
    rep.size = out.reduced().graph.vertexCount();
    std::optional<SizeBound> bound;
    switch (p) {
      case KernelProblem::VcBuss: bound = SizeBound{BoundKind::BussQuadratic}; break;
      case KernelProblem::VcNt: bound = SizeBound{BoundKind::TwoK}; break;
      case KernelProblem::VcThreshold: bound = SizeBound{BoundKind::Threshold, delta}; break;
      case KernelProblem::Matching: bound = SizeBound{BoundKind::SixKSquared}; break;
      case KernelProblem::FvsRules: break;
      default: throw InputError("problem " + kernelProblemName(p) + " is not a graph kernel");
    }
    if (bound) {
      rep.sizeChecked = true;
      rep.sizeLimit = bound->limit(original.k);
      rep.sizeOk = bound->holds(original.k, rep.size);
    }
  }
  const std::optional<bool> orig = decideGraph(p, original, rep);
  const std::optional<bool> got = out.isReduced() ? decideGraph(p, out.reduced(), rep)
                                                  : std::optional<bool>(out.decided().answer == Answer::Yes);
  finishAnswer(rep, orig, got);
  return rep;
}

VerifyReport verifyOutcome(KernelProblem p, const StructuralInstance& original, const StructuralOutcome& out) {
  VerifyReport rep;
  SizeBound bound{BoundKind::TreeWidth};
  if (p == KernelProblem::Pw) bound = {BoundKind::PathWidth};
  else if (p == KernelProblem::Td) bound = {BoundKind::TreeDepth};
  else if (p != KernelProblem::Tw) throw InputError("problem " + kernelProblemName(p) + " is not a width kernel");
  const auto s = static_cast<std::int64_t>(original.S.size());
  if (out.isReduced()) {
    rep.sizeChecked = true;
    rep.size = out.reduced().graph.vertexCount();
    rep.sizeLimit = bound.limit(s);
    rep.sizeOk = bound.holds(s, rep.size);
  }
  auto width = [&](const MultiGraph& g) {
    const oracle::Widths w = oracle::widthOpt(g);
    return p == KernelProblem::Tw ? w.tw : (p == KernelProblem::Pw ? w.pw : w.td);
  };
  const std::optional<bool> orig = decide([&] { return width(original.graph) <= original.k; }, rep, "oracle");
  const std::optional<bool> got =
      out.isReduced() ? decide([&] { return width(out.reduced().graph) <= out.reduced().k; }, rep, "oracle")
                      : std::optional<bool>(out.decided().answer == Answer::Yes);
  finishAnswer(rep, orig, got);
  return rep;
}

VerifyReport verifyOutcome(const PlcInstance& original, const PlcOutcome& out) {
  VerifyReport rep;
  if (out.isReduced()) {
    const SizeBound bound{BoundKind::KSquared};
    rep.sizeChecked = true;
    rep.size = out.reduced().points.size();
    rep.sizeLimit = bound.limit(original.k);
    rep.sizeOk = bound.holds(original.k, rep.size) && bound.holds(out.reduced().k, rep.size);
  }
  auto solvable = [&](const PlcInstance& inst) {
    return decide([&] { return static_cast<std::int64_t>(oracle::plcOpt(inst.points)) <= inst.k; }, rep, "oracle");
  };
  finishAnswer(rep, solvable(original),
               out.isReduced() ? solvable(out.reduced()) : std::optional<bool>(out.decided().answer == Answer::Yes));
  return rep;
}

}  // namespace pkern::io

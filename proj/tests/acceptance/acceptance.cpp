// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <concepts>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "pkern/backdoor.hpp"
#include "pkern/cover_kernels.hpp"
#include "pkern/fvs.hpp"
#include "pkern/io.hpp"
#include "pkern/lp_matching.hpp"
#include "pkern/oracles.hpp"
#include "pkern/plc.hpp"
#include "pkern/structural.hpp"

using namespace pkern;

namespace {

constexpr std::uint64_t kPerProblem = 500;

struct Tally {
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::string first;

  template <class D>
    requires std::invocable<D&, std::ostream&>
  void check(bool ok, D&& describe) {
    ++checks;
    if (ok) return;
    if (violations++ == 0) {
      std::ostringstream s;
      describe(s);
      first = s.str();
    }
  }
  void check(bool ok, const std::string& what) {
    check(ok, [&](std::ostream& s) { s << what; });
  }
};

bool report(int id, const std::string& title, const Tally& t) {
  const bool pass = t.violations == 0 && t.checks > 0;
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " (" << t.checks << " checks, "
            << t.violations << " violations)";
  if (!t.first.empty()) std::cout << "; first: " << t.first;
  std::cout << std::endl;
  return pass;
}

// Size limits written out from their closed forms.
std::uint64_t u(std::int64_t k) { return static_cast<std::uint64_t>(std::max<std::int64_t>(k, 0)); }
std::uint64_t bussLimit(std::int64_t k) { return u(k) * u(k) + 2 * u(k); }
std::uint64_t ntLimit(std::int64_t k) { return 2 * u(k); }
std::uint64_t matchingLimit(std::int64_t k) { return 6 * u(k) * u(k); }
std::uint64_t widthLimit(std::uint64_t s) { return s * s * s + 2 * s * s + 2 * s; }
std::uint64_t plcLimit(std::int64_t k) { return u(k) * u(k); }
std::uint64_t thresholdLimit(std::int64_t k, int delta) {
  std::uint64_t r = 0;
  auto pow = [&](std::uint64_t b) {
    std::uint64_t p = 1;
    for (int i = 0; i < delta; ++i) p *= b;
    return p;
  };
  while (pow(r) < u(k)) ++r;
  return std::uint64_t{1} << r;
}

bool vcYes(const Instance& i) { return i.k >= 0 && oracle::vcOpt(i.graph) <= u(i.k); }
bool matchingYes(const Instance& i) { return i.k <= 0 || oracle::matchOpt(i.graph) >= u(i.k); }
bool fvsYes(const Instance& i) { return i.k >= 0 && oracle::fvsOpt(i.graph) <= u(i.k); }
bool plcYes(const PlcInstance& i) { return i.k >= 0 && oracle::plcOpt(i.points) <= u(i.k); }

template <class Out, class F>
bool derived(const Out& out, F&& yes) {
  return out.isReduced() ? yes(out.reduced()) : out.decided().answer == Answer::Yes;
}

enum class Width { Tw, Pw, Td };

const char* widthName(Width w) { return w == Width::Tw ? "tw" : (w == Width::Pw ? "pw" : "td"); }

StructuralOutcome widthKernel(Width w, const StructuralInstance& si, const Engine& e = sequentialEngine()) {
  return w == Width::Tw ? twKernel(si, e) : (w == Width::Pw ? pwKernel(si, e) : tdKernel(si, e));
}

std::uint64_t moduleWidthBound(Width w, std::uint64_t s) {
  return w == Width::Tw ? twKernelBound(s) : (w == Width::Pw ? pwKernelBound(s) : tdKernelBound(s));
}

bool widthYes(Width w, const MultiGraph& g, std::int64_t k) {
  const oracle::Widths x = oracle::widthOpt(g);
  return (w == Width::Tw ? x.tw : (w == Width::Pw ? x.pw : x.td)) <= k;
}

StructuralInstance widthInstance(std::uint64_t family, std::uint64_t i, std::size_t maxN) {
  return i % 2 == 0 ? corpus::structuralInstance(family, i, maxN) : corpus::coverAttachedInstance(family, i, maxN);
}

KernelOutcome fvsRulesOutcome(const Instance& inst, const Engine& e = sequentialEngine()) {
  auto [reduced, stats] = reduceWithFvsRules(inst, true, e);
  KernelOutcome out = reduced.k < 0 ? KernelOutcome::makeDecided(Answer::No) : KernelOutcome::makeReduced(reduced);
  for (const auto& [rule, n] : stats.perRule) out.trace.push_back({rule, {}, static_cast<std::int64_t>(n)});
  out.stats = std::move(stats);
  return out;
}

// ---------------------------------------------------------------------------

bool sizeBounds() {
  Tally t;
  const Kernelizer inner[] = {bussKernelizer(), ntKernelizer(), matchingKernelizer()};
  for (std::uint64_t i = 0; i < kPerProblem; ++i) {
    Instance inst = corpus::graphInstance(1001, i, 40, 12);
    auto b = bussKernel(inst);
    if (b.isReduced()) t.check(b.reduced().graph.vertexCount() <= bussLimit(inst.k), "vc-buss over k^2+2k");
    auto n = ntKernel(inst);
    if (n.isReduced()) t.check(n.reduced().graph.vertexCount() <= ntLimit(inst.k), "vc-nt over 2k");
    auto m = matchingKernel(inst);
    if (m.isReduced()) t.check(m.reduced().graph.vertexCount() <= matchingLimit(inst.k), "matching over 6k^2");
    for (const Kernelizer& kz : inner) {
      for (int delta : {1, 2, 3}) {
        auto w = sizeThresholdWrap(kz, delta, inst);
        if (!w.isReduced()) continue;
        t.check(w.reduced().graph.vertexCount() <= thresholdLimit(inst.k, delta), [&](std::ostream& s) {
          s << "threshold(" << kz.name << ", delta " << delta << ") seed " << i;
        });
      }
    }
  }
  for (Width w : {Width::Tw, Width::Pw, Width::Td}) {
    for (std::uint64_t i = 0; i < kPerProblem; ++i) {
      StructuralInstance si = widthInstance(1002, i, 30);
      auto out = widthKernel(w, si);
      if (!out.isReduced()) continue;
      const std::uint64_t s = si.S.size();
      const std::size_t size = out.reduced().graph.vertexCount();
      t.check(size <= widthLimit(s) && size <= moduleWidthBound(w, s), [&](std::ostream& o) {
        o << widthName(w) << " kernel of " << size << " vertices for |S| = " << s << ", seed " << i;
      });
    }
  }
  for (std::uint64_t i = 0; i < kPerProblem; ++i) {
    PlcInstance inst = corpus::plcInstance(1003, i, 40, 20);
    auto out = plcKernel(inst);
    if (!out.isReduced()) continue;
    const std::size_t size = out.reduced().points.size();
    t.check(size <= plcLimit(inst.k) && size <= plcLimit(out.reduced().k), "plc over k^2");
  }
  return report(1, "size bounds", t);
}

bool answerPreservation() {
  Tally t;
  const Kernelizer ks[] = {bussKernelizer(), ntKernelizer(), matchingKernelizer()};
  for (std::uint64_t i = 0; i < kPerProblem; ++i) {
    Instance inst = corpus::graphInstance(2001, i, 14, 7);
    for (const Kernelizer& kz : ks) {
      auto yes = kz.name == "matching" ? matchingYes : vcYes;
      const bool truth = yes(inst);
      t.check(derived(kz.run(inst, sequentialEngine()), yes) == truth,
              [&](std::ostream& s) { s << kz.name << " seed " << i; });
      for (int delta : {1, 2, 3}) {
        t.check(derived(sizeThresholdWrap(kz, delta, inst), yes) == truth,
                [&](std::ostream& s) { s << "threshold(" << kz.name << ", " << delta << ") seed " << i; });
      }
    }
  }
  for (std::uint64_t i = 0; i < kPerProblem; ++i) {
    Instance inst = corpus::graphInstance(2002, i, 12, 7, true);
    t.check(derived(fvsRulesOutcome(inst), fvsYes) == fvsYes(inst),
            [&](std::ostream& s) { s << "fvs-rules seed " << i; });
  }
  for (Width w : {Width::Tw, Width::Pw, Width::Td}) {
    for (std::uint64_t i = 0; i < kPerProblem; ++i) {
      StructuralInstance si = widthInstance(2003, i, 11);
      auto out = widthKernel(w, si);
      const bool got = out.isReduced() ? widthYes(w, out.reduced().graph, out.reduced().k)
                                       : out.decided().answer == Answer::Yes;
      t.check(got == widthYes(w, si.graph, si.k), [&](std::ostream& s) { s << widthName(w) << " seed " << i; });
    }
  }
  for (std::uint64_t i = 0; i < kPerProblem; ++i) {
    for (std::int64_t range : {8, 1000000}) {
      PlcInstance inst = corpus::plcInstance(2004 + static_cast<std::uint64_t>(range), i, 12, range);
      t.check(derived(plcKernel(inst), plcYes) == plcYes(inst), [&](std::ostream& s) { s << "plc seed " << i; });
    }
  }
  return report(2, "answer preservation", t);
}

bool nemhauserTrotter() {
  Tally t;
  for (std::uint64_t i = 0; i < kPerProblem; ++i) {
    MultiGraph g = corpus::simpleGraph(3001, i, 12);
    const HalfIntegralAssignment beta = solveLPVC(g);
    t.check(beta.feasibleFor(g) && beta.objectiveDoubled() == oracle::halfIntegralOptDoubled(g),
            [&](std::ostream& s) { s << "LP objective seed " << i; });
    const NtPartition p = ntPartition(beta);
    const VertexSet upper = p.one.unite(p.half);
    bool found = false;
    for (const VertexSet& c : oracle::minimumVertexCovers(g)) {
      found = found || (p.one.minus(c).empty() && c.minus(upper).empty());
    }
    t.check(found, [&](std::ostream& s) { s << "no minimum cover between V1 and V1+Vhalf, seed " << i; });
  }
  for (std::uint64_t i = 0; i < kPerProblem; ++i) {
    gen::Rng rng(corpus::seedFor(3002, i));
    const auto a = static_cast<VertexId>(1 + rng.below(7));
    const auto b = static_cast<VertexId>(1 + rng.below(7));
    const unsigned density = static_cast<unsigned>(10 + rng.below(60));
    std::vector<VertexId> left, right;
    for (VertexId x = 0; x < a; ++x) left.push_back(x);
    for (VertexId y = 0; y < b; ++y) right.push_back(a + y);
    std::vector<BiEdge> edges;
    std::vector<Edge> plain;
    for (VertexId x : left) {
      for (VertexId y : right) {
        if (!rng.chance(density, 100)) continue;
        edges.push_back({x, y});
        plain.emplace_back(x, y);
      }
    }
    BipartiteGraph h{VertexSet(left), VertexSet(right), edges};
    const Matching m = maximumBipartiteMatching(h);
    const VertexSet c = koenigVertexCover(h, m);
    const MultiGraph g = MultiGraph::fromEdges(a + b, plain);
    t.check(m.size() == c.size() && c.size() == oracle::vcOpt(g) && m.size() == oracle::matchOpt(g) &&
                isVertexCover(g, c),
            [&](std::ostream& s) { s << "Koenig equality seed " << i; });
  }
  return report(3, "Nemhauser-Trotter and Koenig", t);
}

bool fvsEngine() {
  Tally t;
  for (std::uint64_t i = 0; i < 200; ++i) {
    Instance inst = corpus::graphInstance(4001, i, 12, 5, true);
    t.check(leafRuleExhaustive(inst) == oracle::leafFixpoint(inst), [&](std::ostream& s) { s << "leaf seed " << i; });
    t.check(chainRuleExhaustive(inst) == oracle::chainFixpoint(inst),
            [&](std::ostream& s) { s << "chain seed " << i; });
    t.check(loopRulePass(inst) == oracle::loopFixpoint(inst), [&](std::ostream& s) { s << "loop seed " << i; });
  }
  for (std::uint64_t i = 0; i < kPerProblem; ++i) {
    Instance inst = corpus::graphInstance(4002, i, 10, 4, true);
    const FvsResult r = fvsSolve(inst);
    t.check(r.yes == fvsYes(inst), [&](std::ostream& s) { s << "fvsSolve seed " << i; });
    t.check(r.layers <= u(inst.k) + 1, [&](std::ostream& s) { s << "layers " << r.layers << " seed " << i; });
    if (r.yes) {
      t.check(r.solution.size() <= u(inst.k) && isForest(inst.graph.withoutVertices(r.solution)),
              [&](std::ostream& s) { s << "bad certificate seed " << i; });
    }
  }
  return report(4, "feedback vertex set rule engine", t);
}

bool mcvp() {
  Tally t;
  auto one = [&](const MonotoneCircuit& c, const std::string& what) {
    const McvpGraph m = mcvpToGraph(c);
    const bool value = evalMonotoneCircuit(c);
    for (bool withLeaf : {true, false}) {
      auto [out, stats] = reduceWithFvsRules({m.graph, 0}, withLeaf);
      t.check(out.graph.contains(m.target) != value,
              [&](std::ostream& s) { s << what << (withLeaf ? " with" : " without") << " leaf rule"; });
    }
  };
  std::size_t idx = 0;
  for (const MonotoneCircuit& c : corpus::allTwoGateCircuits()) one(c, "two-gate circuit " + std::to_string(idx++));
  for (std::uint64_t i = 0; i < 300; ++i) one(corpus::circuit(5001, i, 30), "random circuit " + std::to_string(i));
  return report(5, "monotone circuit value through the rule fixpoint", t);
}

bool necklace() {
  Tally t;
  EngineOptions par;
  par.workers = 4;
  par.scheduleSeed = 17;
  const std::vector<PassSpec> passes{chainRuleSpec(), loopRuleSpec()};
  for (std::int64_t k = 1; k <= 10; ++k) {
    for (const Engine& e : {Engine(), Engine(par)}) {
      auto [out, stats] = e.runToFixpoint(passes, genNecklace(k));
      t.check(stats.commitsOf("loop") == u(k) && out.graph.vertexCount() == 0, [&](std::ostream& s) {
        s << "necklace " << k << ": " << stats.commitsOf("loop") << " loop commits";
      });
    }
  }
  return report(6, "necklace alternation depth", t);
}

bool flower() {
  Tally t;
  for (std::uint64_t i = 0; i < kPerProblem; ++i) {
    MultiGraph g = corpus::simpleGraph(7001, i, 10);
    const std::size_t nu = oracle::matchOpt(g);
    for (std::int64_t k = 0; k <= 4; ++k) {
      t.check(matchingViaFlower(g, k) == (nu >= u(k)), [&](std::ostream& s) { s << "seed " << i << " k " << k; });
    }
  }
  return report(7, "matching through flowers", t);
}

bool rounds() {
  Tally t;
  // Small corpus plus instances two orders of magnitude larger.
  for (std::size_t maxN : {14u, 400u}) {
    for (std::uint64_t i = 0; i < kPerProblem; ++i) {
      Instance inst = corpus::graphInstance(8001 + maxN, i, maxN, 7);
      const std::size_t b = bussKernel(inst).stats.rounds;
      const std::size_t m = matchingKernel(inst).stats.rounds;
      t.check(b <= 4, [&](std::ostream& s) { s << "buss " << b << " rounds, n " << inst.graph.vertexCount(); });
      t.check(m <= 4, [&](std::ostream& s) { s << "matching " << m << " rounds, n " << inst.graph.vertexCount(); });
    }
  }
  for (std::size_t maxN : {11u, 150u}) {
    for (Width w : {Width::Tw, Width::Pw, Width::Td}) {
      for (std::uint64_t i = 0; i < kPerProblem; ++i) {
        StructuralInstance si = widthInstance(8002 + maxN, i, maxN);
        const std::size_t r = widthKernel(w, si).stats.rounds;
        t.check(r <= 4, [&](std::ostream& s) { s << widthName(w) << " " << r << " rounds, n " << maxN; });
      }
    }
  }
  for (std::size_t maxPoints : {12u, 300u}) {
    for (std::uint64_t i = 0; i < kPerProblem; ++i) {
      PlcInstance inst = corpus::plcInstance(8003 + maxPoints, i, maxPoints, 30);
      const std::size_t r = plcKernel(inst).stats.rounds;
      t.check(r <= u(inst.k) + 1, [&](std::ostream& s) { s << "plc " << r << " rounds for k " << inst.k; });
    }
  }
  return report(8, "round counts", t);
}

bool determinism() {
  Tally t;
  std::vector<Engine> many;
  for (std::size_t w : {2u, 4u, 8u}) {
    EngineOptions o;
    o.workers = w;
    o.scheduleSeed = 1000 + w;
    many.emplace_back(o);
  }
  auto same = [&](auto&& render, const std::string& what) {
    const std::string base = render(sequentialEngine());
    for (const Engine& e : many) t.check(render(e) == base, what);
  };
  for (std::uint64_t i = 0; i < kPerProblem; ++i) {
    const std::string tag = " seed " + std::to_string(i);
    Instance inst = corpus::graphInstance(9001, i, 14, 7);
    same([&](const Engine& e) { return io::kernelJson("vc-buss", bussKernel(inst, e), true).dump(); }, "vc-buss" + tag);
    same([&](const Engine& e) { return io::kernelJson("vc-nt", ntKernel(inst, e), true).dump(); }, "vc-nt" + tag);
    same([&](const Engine& e) { return io::kernelJson("matching", matchingKernel(inst, e), true).dump(); },
         "matching" + tag);
    same(
        [&](const Engine& e) {
          return io::kernelJson("vc-thresh", sizeThresholdWrap(bussKernelizer(), 2, inst, e), true).dump();
        },
        "vc-thresh" + tag);
    Instance multi = corpus::graphInstance(9002, i, 14, 7, true);
    same([&](const Engine& e) { return io::kernelJson("fvs-rules", fvsRulesOutcome(multi, e), true).dump(); },
         "fvs-rules" + tag);
    StructuralInstance si = widthInstance(9003, i, 14);
    for (Width w : {Width::Tw, Width::Pw, Width::Td}) {
      same([&](const Engine& e) { return io::structuralJson(widthName(w), widthKernel(w, si, e), true).dump(); },
           std::string(widthName(w)) + tag);
    }
    PlcInstance pi = corpus::plcInstance(9004, i, 20, 20);
    same([&](const Engine& e) { return io::plcJson(plcKernel(pi, e), true).dump(); }, "plc" + tag);
  }
  return report(9, "determinism under parallelism", t);
}

// Class membership of every restriction, computed here without the library.
bool backdoorValid(const CnfFormula& f, const std::vector<std::int32_t>& b, BackdoorTarget target) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << b.size()); ++mask) {
    auto value = [&](std::int32_t var) -> std::optional<bool> {
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (b[j] == var) return (mask >> j & 1u) != 0;
      }
      return std::nullopt;
    };
    for (const Clause& c : f.clauses()) {
      bool satisfied = false;
      std::size_t width = 0, positive = 0;
      for (Literal l : c) {
        auto v = value(std::abs(l));
        if (v) {
          satisfied = satisfied || (*v == (l > 0));
        } else {
          ++width;
          positive += l > 0 ? 1 : 0;
        }
      }
      if (satisfied) continue;
      if (target == BackdoorTarget::Horn ? positive > 1 : width > 2) return false;
    }
  }
  return true;
}

bool backdoorSat() {
  Tally t;
  for (BackdoorTarget target : {BackdoorTarget::Horn, BackdoorTarget::TwoCnf}) {
    const char* name = target == BackdoorTarget::Horn ? "horn" : "2cnf";
    for (std::uint64_t i = 0; i < kPerProblem; ++i) {
      const CnfFormula f = corpus::formula(10001, i, 12);
      gen::Rng rng(corpus::seedFor(10002, i));
      const std::int64_t k = rng.between(0, 5);
      const BackdoorResult r = backdoorSatSolve(f, k, target);
      const CnfFormula clean = removeTautologies(f);
      const bool exists = oracle::strongBackdoorOpt(clean, target, u(k)).has_value();
      t.check((r.answer != BackdoorAnswer::NoBackdoor) == exists,
              [&](std::ostream& s) { s << name << " existence seed " << i; });
      if (r.answer == BackdoorAnswer::NoBackdoor) continue;
      t.check(r.backdoor.size() <= u(k) && backdoorValid(clean, r.backdoor, target),
              [&](std::ostream& s) { s << name << " invalid backdoor seed " << i; });
      const bool sat = oracle::satBrute(f);
      t.check((r.answer == BackdoorAnswer::Sat) == sat, [&](std::ostream& s) { s << name << " answer seed " << i; });
      if (r.answer == BackdoorAnswer::Sat) {
        t.check(satisfies(f, r.assignment), [&](std::ostream& s) { s << name << " assignment seed " << i; });
      }
    }
  }
  for (std::uint64_t i = 0; i < kPerProblem; ++i) {
    const CnfFormula f = removeTautologies(corpus::formula(10003, i, 12));
    const std::size_t vc = oracle::vcOpt(positivePrimalGraph(f));
    for (std::int64_t k = 0; k <= 5; ++k) {
      t.check(findBackdoor(f, k, BackdoorTarget::Horn).has_value() == (vc <= u(k)),
              [&](std::ostream& s) { s << "horn existence vs primal cover, seed " << i << " k " << k; });
    }
  }
  return report(10, "strong backdoor satisfiability", t);
}

bool plcExactness() {
  Tally t;
  gen::Rng rng(11001);
  auto nonzero = [&](unsigned bits) {
    BigInt x = 0;
    while (x == 0) x = corpus::randomBig(rng, bits);
    return x;
  };
  for (int i = 0; i < 1000; ++i) {
    Point p, q, r;
    std::optional<bool> expected;
    switch (i % 4) {
      case 0: {  // three independent points
        p = corpus::randomBigPoint(rng, 2, 256);
        q = corpus::randomBigPoint(rng, 2, 256);
        r = corpus::randomBigPoint(rng, 2, 256);
        break;
      }
      case 1: {  // r on the line through p and q
        p = corpus::randomBigPoint(rng, 2, 256);
        q = corpus::randomBigPoint(rng, 2, 256);
        const BigInt a = nonzero(64);
        r = Point{p[0] + a * (q[0] - p[0]), p[1] + a * (q[1] - p[1])};
        expected = true;
        break;
      }
      default: {  // (0,0), (x,z), (y,1) with x = y*z or x != y*z
        const BigInt y = nonzero(128), z = nonzero(128);
        const bool equal = i % 4 == 2;
        const BigInt x = equal ? BigInt(y * z) : BigInt(y * z + nonzero(64));
        p = Point{0, 0};
        q = Point{x, z};
        r = Point{y, 1};
        expected = equal;
        break;
      }
    }
    const bool got = collinear(p, q, r);
    t.check(got == oracle::collinearRational(p, q, r), [&](std::ostream& s) { s << "triple " << i; });
    if (expected) t.check(got == *expected, [&](std::ostream& s) { s << "family triple " << i; });
  }
  return report(11, "exact collinearity on 256-bit coordinates", t);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::function<bool()>> criteria{sizeBounds, answerPreservation, nemhauserTrotter, fvsEngine,
                                                    mcvp,       necklace,           flower,           rounds,
                                                    determinism, backdoorSat,       plcExactness};
  int failed = 0;
  for (const auto& c : criteria) {
    try {
      failed += c() ? 0 : 1;
    } catch (const std::exception& e) {
      std::cout << "FAIL  criterion aborted: " << e.what() << std::endl;
      ++failed;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (secs < 300 ? "PASS" : "FAIL") << "  wall time " << secs << " s (limit 300 s)" << std::endl;
  if (secs >= 300) ++failed;
  return failed == 0 ? 0 : 1;
}

// Command-line front end. Talks to the library only through pkern.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pkern/pkern.h"

namespace {

constexpr int kExitUsage = 64;

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void fail(pk_status s) { throw Failure{kExitUsage + static_cast<int>(s), pk_last_error()}; }

void check(pk_status s) {
  if (s != PK_OK) fail(s);
}

std::string readAll(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitUsage + PK_ERR_INPUT, "cannot open " + path};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  pk_string_free(s);
  return out;
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
};

using EngineH = Handle<pk_engine, pk_engine_free>;
using GraphH = Handle<pk_graph, pk_graph_free>;
using PointsH = Handle<pk_points, pk_points_free>;
using CnfH = Handle<pk_cnf, pk_cnf_free>;
using CircuitH = Handle<pk_circuit, pk_circuit_free>;
using ResultH = Handle<pk_result, pk_result_free>;

struct Options {
  std::string problem;
  std::string input;
  std::optional<std::int64_t> k;
  int delta = 1;
  std::string cover;
  std::string target = "horn";
  std::string outcome;
  std::uint64_t seed = 0;
  bool seedGiven = false;
  std::size_t workers = 1;
  std::size_t roundsBudget = 0;
  std::size_t gates = 20;
  std::size_t size = 10;
  bool stats = false;
  bool noLeaf = false;
  std::string out;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Failure{kExitUsage + PK_ERR_INPUT, "cannot write " + o.out};
  f << text;
}

std::int64_t needK(const Options& o) {
  if (!o.k) throw Failure{kExitUsage, "--k is required for " + o.problem};
  return *o.k;
}

void makeEngine(const Options& o, EngineH& e) {
  check(pk_engine_new(o.workers, o.seedGiven ? 1 : 0, o.seed, o.roundsBudget, &e.p));
}

int exitFor(pk_answer a) {
  switch (a) {
    case PK_ANSWER_YES:
    case PK_ANSWER_REDUCED: return 0;
    case PK_ANSWER_NO: return 1;
    case PK_ANSWER_NO_BACKDOOR: return 2;
  }
  return 0;
}

int finishResult(const Options& o, ResultH& r) {
  char* json = nullptr;
  check(pk_result_json(r.p, o.stats ? 1 : 0, &json));
  emit(o, take(json) + "\n");
  pk_answer a;
  check(pk_result_answer(r.p, &a));
  return exitFor(a);
}

int runKernelize(const Options& o) {
  EngineH engine;
  makeEngine(o, engine);
  ResultH r;
  const std::string text = readAll(o.input);
  if (o.problem == "plc") {
    PointsH p;
    check(pk_points_parse(text.c_str(), &p.p));
    check(pk_kernelize_plc(engine.p, p.p, &r.p));
    return finishResult(o, r);
  }
  GraphH g;
  check(pk_graph_parse(text.c_str(), &g.p));
  if (o.problem == "tw" || o.problem == "pw" || o.problem == "td") {
    if (o.cover.empty()) throw Failure{kExitUsage, "--cover is required for " + o.problem};
    const pk_kernel kind = o.problem == "tw" ? PK_KERNEL_TW : (o.problem == "pw" ? PK_KERNEL_PW : PK_KERNEL_TD);
    const std::string cover = readAll(o.cover);
    check(pk_kernelize_width(engine.p, kind, g.p, needK(o), cover.c_str(), &r.p));
    return finishResult(o, r);
  }
  pk_kernel kind;
  if (o.problem == "vc-buss") kind = PK_KERNEL_VC_BUSS;
  else if (o.problem == "vc-nt") kind = PK_KERNEL_VC_NT;
  else if (o.problem == "vc-thresh") kind = PK_KERNEL_VC_THRESHOLD;
  else if (o.problem == "matching") kind = PK_KERNEL_MATCHING;
  else if (o.problem == "fvs-rules") kind = PK_KERNEL_FVS_RULES;
  else throw Failure{kExitUsage, "unknown kernel " + o.problem};
  check(pk_kernelize(engine.p, kind, g.p, needK(o), o.delta, &r.p));
  return finishResult(o, r);
}

int runSolve(const Options& o) {
  EngineH engine;
  makeEngine(o, engine);
  ResultH r;
  const std::string text = readAll(o.input);
  if (o.problem == "backdoor-sat") {
    if (o.target != "horn" && o.target != "2cnf") throw Failure{kExitUsage, "--target must be horn or 2cnf"};
    CnfH f;
    check(pk_cnf_parse(text.c_str(), &f.p));
    check(pk_solve_backdoor_sat(engine.p, f.p, needK(o), o.target == "horn" ? PK_TARGET_HORN : PK_TARGET_2CNF, &r.p));
  } else if (o.problem == "mcvp") {
    CircuitH c;
    check(pk_circuit_parse(text.c_str(), &c.p));
    check(pk_solve_mcvp(engine.p, c.p, o.noLeaf ? 0 : 1, &r.p));
  } else {
    GraphH g;
    check(pk_graph_parse(text.c_str(), &g.p));
    if (o.problem == "vc") check(pk_solve_vc(engine.p, g.p, needK(o), &r.p));
    else if (o.problem == "fvs") check(pk_solve_fvs(engine.p, g.p, needK(o), &r.p));
    else throw Failure{kExitUsage, "unknown solver " + o.problem};
  }
  return finishResult(o, r);
}

int runGen(const Options& o, const std::string& what) {
  char* text = nullptr;
  if (what == "mcvp") check(pk_gen_mcvp(o.gates, o.seed, &text));
  else if (what == "necklace") check(pk_gen_necklace(needK(o), &text));
  else check(pk_gen_random(o.problem.c_str(), o.size, o.seed, &text));
  emit(o, take(text));
  return 0;
}

int runOracle(const Options& o) {
  const std::string text = readAll(o.input);
  char* json = nullptr;
  const pk_status s = pk_oracle(o.problem.c_str(), text.c_str(), &json);
  if (s == PK_ERR_ORACLE_REFUSED) {
    std::cerr << "refused: " << pk_last_error() << '\n';
    return 2;
  }
  check(s);
  emit(o, take(json) + "\n");
  return 0;
}

int runVerify(const Options& o) {
  const std::string original = readAll(o.input);
  const std::string outcome = readAll(o.outcome);
  const std::string cover = o.cover.empty() ? std::string() : readAll(o.cover);
  char* report = nullptr;
  int pass = 0;
  check(pk_verify(o.problem.c_str(), original.c_str(), o.k.value_or(0), o.cover.empty() ? nullptr : cover.c_str(),
                  o.delta, outcome.c_str(), &report, &pass));
  emit(o, take(report) + "\n");
  return pass ? 0 : 1;
}

void commonFlags(CLI::App* app, Options& o) {
  app->add_flag("--stats", o.stats, "Include round/work statistics in the JSON output");
  app->add_option("--workers", o.workers, "Worker threads for parallel scans")->check(CLI::PositiveNumber);
  app->add_option("--rounds-budget", o.roundsBudget, "Abort after this many commit rounds (0 = unlimited)");
  app->add_option("--out", o.out, "Write output to a file instead of stdout");
  app->add_option("--seed", o.seed, "Schedule seed; scan order is shuffled but results do not change")
      ->each([&](const std::string&) { o.seedGiven = true; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel kernelization toolkit"};
  app.require_subcommand(1);
  Options o;

  auto* kern = app.add_subcommand("kernelize", "Run a kernelizer and print its outcome as JSON");
  kern->add_option("problem", o.problem, "vc-buss, vc-nt, vc-thresh, matching, fvs-rules, tw, pw, td or plc")
      ->required()
      ->check(CLI::IsMember({"vc-buss", "vc-nt", "vc-thresh", "matching", "fvs-rules", "tw", "pw", "td", "plc"}));
  kern->add_option("input", o.input, "Instance file, - for stdin")->required();
  kern->add_option("--k", o.k, "Parameter");
  kern->add_option("--delta", o.delta, "Root for the size-threshold wrapper")->check(CLI::PositiveNumber);
  kern->add_option("--cover", o.cover, "Vertex cover file for tw/pw/td");
  commonFlags(kern, o);

  auto* solve = app.add_subcommand("solve", "Decide an instance exactly");
  solve->add_option("problem", o.problem, "vc, fvs, backdoor-sat or mcvp")
      ->required()
      ->check(CLI::IsMember({"vc", "fvs", "backdoor-sat", "mcvp"}));
  solve->add_option("input", o.input, "Instance file, - for stdin")->required();
  solve->add_option("--k", o.k, "Parameter or backdoor size");
  solve->add_option("--target", o.target, "Backdoor class: horn or 2cnf");
  solve->add_flag("--no-leaf", o.noLeaf, "mcvp: run only the chain and loop rules");
  commonFlags(solve, o);

  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->require_subcommand(1);
  auto* genMcvp = gen->add_subcommand("mcvp", "Random monotone circuit");
  genMcvp->add_option("--gates", o.gates, "Number of gates")->check(CLI::PositiveNumber);
  genMcvp->add_option("--seed", o.seed, "Generator seed");
  genMcvp->add_option("--out", o.out, "Output file");
  auto* genNeck = gen->add_subcommand("necklace", "Triangle necklace that needs k loop rounds");
  genNeck->add_option("--k", o.k, "Number of levels")->required();
  genNeck->add_option("--out", o.out, "Output file");
  auto* genRand = gen->add_subcommand("random", "Random corpus instance");
  genRand->add_option("problem", o.problem, "vc, matching, fvs, tw, pw, td, plc, sat or mcvp")->required();
  genRand->add_option("--size", o.size, "Vertices, points, variables or gates");
  genRand->add_option("--seed", o.seed, "Generator seed");
  genRand->add_option("--out", o.out, "Output file");

  auto* orc = app.add_subcommand("oracle", "Exhaustive reference value (debugging aid, output format unstable)");
  orc->add_option("problem", o.problem, "vc, matching, fvs, width, lpvc, plc or sat")->required();
  orc->add_option("input", o.input, "Instance file, - for stdin")->required();
  orc->add_option("--out", o.out, "Output file");

  auto* ver = app.add_subcommand("verify", "Check a kernelize outcome against the original instance");
  ver->add_option("problem", o.problem, "Kernel name as given to kernelize")->required();
  ver->add_option("input", o.input, "Original instance file")->required();
  ver->add_option("--outcome", o.outcome, "JSON written by kernelize")->required();
  ver->add_option("--k", o.k, "Parameter of the original instance");
  ver->add_option("--cover", o.cover, "Vertex cover file for tw/pw/td");
  ver->add_option("--delta", o.delta, "Root used by vc-thresh");
  ver->add_option("--out", o.out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (kern->parsed()) return runKernelize(o);
    if (solve->parsed()) return runSolve(o);
    if (genMcvp->parsed()) return runGen(o, "mcvp");
    if (genNeck->parsed()) return runGen(o, "necklace");
    if (genRand->parsed()) return runGen(o, "random");
    if (orc->parsed()) return runOracle(o);
    if (ver->parsed()) return runVerify(o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
  return kExitUsage;
}

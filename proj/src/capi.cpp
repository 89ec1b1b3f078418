#include "pkern/pkern.h"

#include <cstring>
#include <new>
#include <string>

#include "pkern/backdoor.hpp"
#include "pkern/cover_kernels.hpp"
#include "pkern/error.hpp"
#include "pkern/fvs.hpp"
#include "pkern/gen.hpp"
#include "pkern/io.hpp"
#include "pkern/lp_matching.hpp"
#include "pkern/oracles.hpp"
#include "pkern/plc.hpp"
#include "pkern/structural.hpp"

using pkern::io::Json;

struct pk_engine {
  pkern::Engine engine;
};
struct pk_graph {
  pkern::MultiGraph g;
};
struct pk_points {
  pkern::PlcInstance inst;
};
struct pk_cnf {
  pkern::CnfFormula f;
};
struct pk_circuit {
  pkern::MonotoneCircuit c;
};
struct pk_result {
  pk_answer answer = PK_ANSWER_NO;
  Json json;
};

namespace {

thread_local std::string lastError;

struct NullArgument : pkern::Error {
  NullArgument() : pkern::Error(pkern::ErrorCode::Input, "null argument") {}
};

pk_status statusOf(pkern::ErrorCode c) {
  switch (c) {
    case pkern::ErrorCode::Input: return PK_ERR_INPUT;
    case pkern::ErrorCode::Parse: return PK_ERR_PARSE;
    case pkern::ErrorCode::CommitConflict: return PK_ERR_COMMIT_CONFLICT;
    case pkern::ErrorCode::BudgetExceeded: return PK_ERR_BUDGET;
    case pkern::ErrorCode::OracleRefused: return PK_ERR_ORACLE_REFUSED;
    case pkern::ErrorCode::ContractViolation: return PK_ERR_CONTRACT;
    case pkern::ErrorCode::Internal: return PK_ERR_INTERNAL;
  }
  return PK_ERR_INTERNAL;
}

template <class F>
pk_status guarded(F&& f) {
  lastError.clear();
  try {
    f();
    return PK_OK;
  } catch (const NullArgument& e) {
    lastError = e.what();
    return PK_ERR_NULL_ARGUMENT;
  } catch (const pkern::Error& e) {
    lastError = e.what();
    return statusOf(e.code());
  } catch (const nlohmann::json::exception& e) {
    lastError = std::string("malformed JSON: ") + e.what();
    return PK_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    lastError = "out of memory";
    return PK_ERR_INTERNAL;
  } catch (const std::exception& e) {
    lastError = e.what();
    return PK_ERR_INTERNAL;
  } catch (...) {
    lastError = "unknown failure";
    return PK_ERR_INTERNAL;
  }
}

template <class... P>
void requireNonNull(const P*... ps) {
  if (((ps == nullptr) || ...)) throw NullArgument();
}

char* dupString(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pk_answer answerOf(const pkern::Decided& d) { return d.answer == pkern::Answer::Yes ? PK_ANSWER_YES : PK_ANSWER_NO; }

template <class Out>
pk_answer answerOf(const Out& out) {
  return out.isReduced() ? PK_ANSWER_REDUCED : answerOf(out.decided());
}

const char* kernelName(pk_kernel kind) {
  switch (kind) {
    case PK_KERNEL_VC_BUSS: return "vc-buss";
    case PK_KERNEL_VC_NT: return "vc-nt";
    case PK_KERNEL_VC_THRESHOLD: return "vc-thresh";
    case PK_KERNEL_MATCHING: return "matching";
    case PK_KERNEL_FVS_RULES: return "fvs-rules";
    case PK_KERNEL_TW: return "tw";
    case PK_KERNEL_PW: return "pw";
    case PK_KERNEL_TD: return "td";
  }
  throw pkern::InputError("unknown kernel kind");
}

pkern::KernelOutcome fvsRulesOutcome(const pkern::Instance& inst, const pkern::Engine& engine) {
  auto [reduced, stats] = pkern::reduceWithFvsRules(inst, true, engine);
  pkern::KernelOutcome out = reduced.k < 0 ? pkern::KernelOutcome::makeDecided(pkern::Answer::No)
                                           : pkern::KernelOutcome::makeReduced(reduced);
  for (const auto& [rule, n] : stats.perRule) out.trace.push_back({rule, {}, static_cast<std::int64_t>(n)});
  out.stats = std::move(stats);
  return out;
}

pk_result* newResult(pk_answer a, Json j) { return new pk_result{a, std::move(j)}; }

}  // namespace

extern "C" {

const char* pk_version(void) { return PKERN_VERSION; }
const char* pk_last_error(void) { return lastError.c_str(); }
void pk_string_free(char* s) { delete[] s; }

pk_status pk_engine_new(size_t workers, int has_schedule_seed, uint64_t schedule_seed, size_t rounds_budget,
                        pk_engine** out) {
  return guarded([&] {
    requireNonNull(out);
    pkern::EngineOptions opt;
    opt.workers = workers == 0 ? 1 : workers;
    if (has_schedule_seed) opt.scheduleSeed = schedule_seed;
    if (rounds_budget > 0) opt.roundsBudget = rounds_budget;
    *out = new pk_engine{pkern::Engine(opt)};
  });
}

void pk_engine_free(pk_engine* engine) { delete engine; }

pk_status pk_graph_parse(const char* text, pk_graph** out) {
  return guarded([&] {
    requireNonNull(text, out);
    *out = new pk_graph{pkern::io::parseGraph(text)};
  });
}

pk_status pk_graph_from_edges(uint32_t n, const uint32_t* endpoints, size_t edge_count, pk_graph** out) {
  return guarded([&] {
    requireNonNull(out);
    if (edge_count > 0) requireNonNull(endpoints);
    std::vector<pkern::Edge> edges;
    for (size_t i = 0; i < edge_count; ++i) edges.emplace_back(endpoints[2 * i], endpoints[2 * i + 1]);
    *out = new pk_graph{pkern::MultiGraph::fromEdges(n, edges)};
  });
}

pk_status pk_graph_vertex_count(const pk_graph* g, size_t* out) {
  return guarded([&] {
    requireNonNull(g, out);
    *out = g->g.vertexCount();
  });
}

pk_status pk_graph_edge_count(const pk_graph* g, size_t* out) {
  return guarded([&] {
    requireNonNull(g, out);
    *out = g->g.edgeCount();
  });
}

pk_status pk_graph_write(const pk_graph* g, char** out) {
  return guarded([&] {
    requireNonNull(g, out);
    *out = dupString(pkern::io::writeGraph(g->g));
  });
}

void pk_graph_free(pk_graph* g) { delete g; }

pk_status pk_points_parse(const char* text, pk_points** out) {
  return guarded([&] {
    requireNonNull(text, out);
    *out = new pk_points{pkern::io::parsePoints(text)};
  });
}

pk_status pk_points_write(const pk_points* p, char** out) {
  return guarded([&] {
    requireNonNull(p, out);
    *out = dupString(pkern::io::writePoints(p->inst));
  });
}

void pk_points_free(pk_points* p) { delete p; }

pk_status pk_cnf_parse(const char* text, pk_cnf** out) {
  return guarded([&] {
    requireNonNull(text, out);
    *out = new pk_cnf{pkern::io::parseCnf(text)};
  });
}

pk_status pk_cnf_write(const pk_cnf* f, char** out) {
  return guarded([&] {
    requireNonNull(f, out);
    *out = dupString(pkern::io::writeCnf(f->f));
  });
}

void pk_cnf_free(pk_cnf* f) { delete f; }

pk_status pk_circuit_parse(const char* text, pk_circuit** out) {
  return guarded([&] {
    requireNonNull(text, out);
    *out = new pk_circuit{pkern::io::parseCircuit(text)};
  });
}

pk_status pk_circuit_write(const pk_circuit* c, char** out) {
  return guarded([&] {
    requireNonNull(c, out);
    *out = dupString(pkern::io::writeCircuit(c->c));
  });
}

void pk_circuit_free(pk_circuit* c) { delete c; }

pk_status pk_kernelize(const pk_engine* engine, pk_kernel kind, const pk_graph* g, int64_t k, int delta,
                       pk_result** out) {
  return guarded([&] {
    requireNonNull(engine, g, out);
    const pkern::Instance inst{g->g, k};
    const pkern::Engine& e = engine->engine;
    pkern::KernelOutcome res;
    switch (kind) {
      case PK_KERNEL_VC_BUSS: res = pkern::bussKernel(inst, e); break;
      case PK_KERNEL_VC_NT: res = pkern::ntKernel(inst, e); break;
      case PK_KERNEL_VC_THRESHOLD: res = pkern::sizeThresholdWrap(pkern::bussKernelizer(), delta, inst, e); break;
      case PK_KERNEL_MATCHING: res = pkern::matchingKernel(inst, e); break;
      case PK_KERNEL_FVS_RULES: res = fvsRulesOutcome(inst, e); break;
      default: throw pkern::InputError(std::string(kernelName(kind)) + " needs a vertex cover; use pk_kernelize_width");
    }
    Json j = pkern::io::kernelJson(kernelName(kind), res, true);
    if (kind == PK_KERNEL_VC_THRESHOLD) j["delta"] = delta;
    *out = newResult(answerOf(res), std::move(j));
  });
}

pk_status pk_kernelize_width(const pk_engine* engine, pk_kernel kind, const pk_graph* g, int64_t k,
                             const char* cover_text, pk_result** out) {
  return guarded([&] {
    requireNonNull(engine, g, cover_text, out);
    const pkern::StructuralInstance si{g->g, k, pkern::io::parseCover(cover_text)};
    pkern::StructuralOutcome res;
    switch (kind) {
      case PK_KERNEL_TW: res = pkern::twKernel(si, engine->engine); break;
      case PK_KERNEL_PW: res = pkern::pwKernel(si, engine->engine); break;
      case PK_KERNEL_TD: res = pkern::tdKernel(si, engine->engine); break;
      default: throw pkern::InputError(std::string(kernelName(kind)) + " is not a width kernel");
    }
    *out = newResult(answerOf(res), pkern::io::structuralJson(kernelName(kind), res, true));
  });
}

pk_status pk_kernelize_plc(const pk_engine* engine, const pk_points* p, pk_result** out) {
  return guarded([&] {
    requireNonNull(engine, p, out);
    const pkern::PlcOutcome res = pkern::plcKernel(p->inst, engine->engine);
    *out = newResult(answerOf(res), pkern::io::plcJson(res, true));
  });
}

pk_status pk_solve_vc(const pk_engine* engine, const pk_graph* g, int64_t k, pk_result** out) {
  return guarded([&] {
    requireNonNull(engine, g, out);
    const pkern::VcResult r = pkern::vcSolve({g->g, k}, engine->engine);
    Json j = pkern::io::outcomeEnvelope("solve", "vc", r.yes ? "yes" : "no");
    j["k"] = k;
    if (r.yes) j["certificate"] = pkern::io::toJson(r.cover);
    j["stats"] = pkern::io::toJson(r.stats);
    *out = newResult(r.yes ? PK_ANSWER_YES : PK_ANSWER_NO, std::move(j));
  });
}

pk_status pk_solve_fvs(const pk_engine* engine, const pk_graph* g, int64_t k, pk_result** out) {
  return guarded([&] {
    requireNonNull(engine, g, out);
    const pkern::FvsResult r = pkern::fvsSolve({g->g, k}, engine->engine);
    Json j = pkern::io::outcomeEnvelope("solve", "fvs", r.yes ? "yes" : "no");
    j["k"] = k;
    j["layers"] = r.layers;
    if (r.yes) j["certificate"] = pkern::io::toJson(r.solution);
    j["stats"] = pkern::io::toJson(r.stats);
    *out = newResult(r.yes ? PK_ANSWER_YES : PK_ANSWER_NO, std::move(j));
  });
}

pk_status pk_solve_backdoor_sat(const pk_engine* engine, const pk_cnf* f, int64_t k, pk_target target,
                                pk_result** out) {
  return guarded([&] {
    requireNonNull(engine, f, out);
    const auto t = target == PK_TARGET_HORN ? pkern::BackdoorTarget::Horn : pkern::BackdoorTarget::TwoCnf;
    const pkern::BackdoorResult r = pkern::backdoorSatSolve(f->f, k, t, engine->engine);
    const char* name = r.answer == pkern::BackdoorAnswer::Sat     ? "sat"
                       : r.answer == pkern::BackdoorAnswer::Unsat ? "unsat"
                                                                  : "no-backdoor";
    Json j = pkern::io::outcomeEnvelope("solve", "backdoor-sat", name);
    j["k"] = k;
    j["target"] = target == PK_TARGET_HORN ? "horn" : "2cnf";
    if (r.answer != pkern::BackdoorAnswer::NoBackdoor) {
      j["backdoor"] = r.backdoor;
      j["branches"] = r.branches;
    }
    if (r.answer == pkern::BackdoorAnswer::Sat) {
      std::vector<std::int32_t> trueVars;
      for (std::size_t v = 1; v < r.assignment.size(); ++v) {
        if (r.assignment[v]) trueVars.push_back(static_cast<std::int32_t>(v));
      }
      j["trueVariables"] = trueVars;
    }
    j["stats"] = pkern::io::toJson(r.stats);
    const pk_answer a = r.answer == pkern::BackdoorAnswer::Sat     ? PK_ANSWER_YES
                        : r.answer == pkern::BackdoorAnswer::Unsat ? PK_ANSWER_NO
                                                                   : PK_ANSWER_NO_BACKDOOR;
    *out = newResult(a, std::move(j));
  });
}

pk_status pk_solve_mcvp(const pk_engine* engine, const pk_circuit* c, int with_leaf_rule, pk_result** out) {
  return guarded([&] {
    requireNonNull(engine, c, out);
    const pkern::McvpGraph mg = pkern::mcvpToGraph(c->c);
    auto [reduced, stats] = pkern::reduceWithFvsRules({mg.graph, 0}, with_leaf_rule != 0, engine->engine);
    const bool removed = !reduced.graph.contains(mg.target);
    Json j = pkern::io::outcomeEnvelope("solve", "mcvp", removed ? "yes" : "no");
    j["target"] = mg.target;
    j["targetRemoved"] = removed;
    j["circuitValue"] = pkern::evalMonotoneCircuit(c->c);
    j["vertices"] = mg.graph.vertexCount();
    j["stats"] = pkern::io::toJson(stats);
    *out = newResult(removed ? PK_ANSWER_YES : PK_ANSWER_NO, std::move(j));
  });
}

pk_status pk_result_answer(const pk_result* r, pk_answer* out) {
  return guarded([&] {
    requireNonNull(r, out);
    *out = r->answer;
  });
}

pk_status pk_result_json(const pk_result* r, int with_stats, char** out) {
  return guarded([&] {
    requireNonNull(r, out);
    Json j = r->json;
    if (!with_stats) j.erase("stats");
    *out = dupString(j.dump());
  });
}

void pk_result_free(pk_result* r) { delete r; }

pk_status pk_gen_random(const char* problem, size_t size, uint64_t seed, char** out) {
  return guarded([&] {
    requireNonNull(problem, out);
    *out = dupString(pkern::gen::randomInstanceText(problem, size, seed));
  });
}

pk_status pk_gen_mcvp(size_t gates, uint64_t seed, char** out) {
  return guarded([&] {
    requireNonNull(out);
    pkern::gen::Rng rng(seed);
    *out = dupString(pkern::io::writeCircuit(pkern::gen::randomCircuit(gates, rng)));
  });
}

pk_status pk_gen_necklace(int64_t k, char** out) {
  return guarded([&] {
    requireNonNull(out);
    *out = dupString(pkern::io::writeGraph(pkern::genNecklace(k).graph));
  });
}

pk_status pk_oracle(const char* problem, const char* instance_text, char** out) {
  return guarded([&] {
    requireNonNull(problem, instance_text, out);
    const std::string p = problem;
    Json j{{"schema", pkern::io::kSchemaVersion}, {"command", "oracle"}, {"problem", p}, {"stable", false}};
    namespace o = pkern::oracle;
    if (p == "vc" || p == "matching" || p == "fvs" || p == "width" || p == "lpvc") {
      const pkern::MultiGraph g = pkern::io::parseGraph(instance_text);
      if (p == "vc") j["value"] = o::vcOpt(g);
      if (p == "matching") j["value"] = o::matchOpt(g);
      if (p == "fvs") j["value"] = o::fvsOpt(g);
      if (p == "lpvc") j["doubledValue"] = o::halfIntegralOptDoubled(g);
      if (p == "width") {
        const o::Widths w = o::widthOpt(g);
        j["tw"] = w.tw;
        j["pw"] = w.pw;
        j["td"] = w.td;
      }
    } else if (p == "plc") {
      const pkern::PlcInstance inst = pkern::io::parsePoints(instance_text);
      const std::size_t v = o::plcOpt(inst.points);
      j["value"] = v;
      j["withinK"] = static_cast<std::int64_t>(v) <= inst.k;
    } else if (p == "sat") {
      j["satisfiable"] = o::satBrute(pkern::io::parseCnf(instance_text));
    } else {
      throw pkern::InputError("unknown oracle problem '" + p + "'");
    }
    *out = dupString(j.dump());
  });
}

pk_status pk_verify(const char* problem, const char* original_text, int64_t k, const char* cover_text, int delta,
                    const char* outcome_json, char** report_json, int* pass) {
  return guarded([&] {
    requireNonNull(problem, original_text, outcome_json, report_json, pass);
    const auto kind = pkern::io::kernelProblemFromName(problem);
    if (!kind) throw pkern::InputError(std::string("unknown problem '") + problem + "'");
    const Json outcome = Json::parse(outcome_json);
    pkern::io::VerifyReport rep;
    using KP = pkern::io::KernelProblem;
    if (*kind == KP::Plc) {
      rep = pkern::io::verifyOutcome(pkern::io::parsePoints(original_text), pkern::io::plcFromJson(outcome));
    } else if (*kind == KP::Tw || *kind == KP::Pw || *kind == KP::Td) {
      if (!cover_text) throw pkern::InputError("width verification needs the cover");
      const pkern::StructuralInstance si{pkern::io::parseGraph(original_text), k, pkern::io::parseCover(cover_text)};
      rep = pkern::io::verifyOutcome(*kind, si, pkern::io::structuralFromJson(outcome, si.S));
    } else {
      rep = pkern::io::verifyOutcome(*kind, {pkern::io::parseGraph(original_text), k},
                                     pkern::io::kernelFromJson(outcome), delta);
    }
    Json j = rep.toJson();
    j["problem"] = problem;
    *report_json = dupString(j.dump());
    *pass = rep.pass() ? 1 : 0;
  });
}

}  // extern "C"

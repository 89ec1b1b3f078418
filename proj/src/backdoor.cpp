#include "pkern/backdoor.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "pkern/error.hpp"

namespace pkern {

namespace {

std::int32_t var(Literal l) { return std::abs(l); }

}  // namespace

CnfFormula::CnfFormula(std::size_t variables, std::vector<Clause> clauses)
    : variables_(variables), clauses_(std::move(clauses)) {
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    Clause& c = clauses_[i];
    for (Literal l : c) {
      if (l == 0) throw InputError("clause " + std::to_string(i) + " contains literal 0");
      if (static_cast<std::size_t>(var(l)) > variables_) {
        throw InputError("clause " + std::to_string(i) + " uses variable " + std::to_string(var(l)) + " > " +
                         std::to_string(variables_));
      }
    }
    std::sort(c.begin(), c.end(), [](Literal a, Literal b) { return var(a) != var(b) ? var(a) < var(b) : a < b; });
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
}

bool isTautology(const Clause& c) {
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] == -c[i - 1]) return true;
  }
  // Clauses built outside CnfFormula may be unsorted.
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (c[i] == -c[j]) return true;
    }
  }
  return false;
}

CnfFormula removeTautologies(const CnfFormula& f) {
  std::vector<Clause> kept;
  for (const Clause& c : f.clauses()) {
    if (!isTautology(c)) kept.push_back(c);
  }
  return CnfFormula(f.variables(), std::move(kept));
}

bool isHorn(const CnfFormula& f) {
  for (const Clause& c : f.clauses()) {
    if (std::count_if(c.begin(), c.end(), [](Literal l) { return l > 0; }) > 1) return false;
  }
  return true;
}

bool isTwoCnf(const CnfFormula& f) {
  return std::all_of(f.clauses().begin(), f.clauses().end(), [](const Clause& c) { return c.size() <= 2; });
}

bool satisfies(const CnfFormula& f, const Assignment& a) {
  if (a.size() < f.variables() + 1) return false;
  for (const Clause& c : f.clauses()) {
    if (std::none_of(c.begin(), c.end(), [&](Literal l) { return a[var(l)] == (l > 0); })) return false;
  }
  return true;
}

MultiGraph positivePrimalGraph(const CnfFormula& f) {
  std::vector<Edge> edges;
  for (const Clause& c : f.clauses()) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] < 0) continue;
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        if (c[j] > 0 && c[j] != c[i]) edges.emplace_back(c[i] - 1, c[j] - 1);
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return MultiGraph::fromEdges(f.variables(), edges);
}

TripleHypergraph tripleHypergraph(const CnfFormula& f) {
  TripleHypergraph h{f.variables(), {}};
  for (const Clause& c : f.clauses()) {
    std::vector<std::int32_t> vs;
    for (Literal l : c) vs.push_back(var(l));
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    for (std::size_t a = 0; a < vs.size(); ++a) {
      for (std::size_t b = a + 1; b < vs.size(); ++b) {
        for (std::size_t c2 = b + 1; c2 < vs.size(); ++c2) h.edges.push_back({vs[a], vs[b], vs[c2]});
      }
    }
  }
  std::sort(h.edges.begin(), h.edges.end());
  h.edges.erase(std::unique(h.edges.begin(), h.edges.end()), h.edges.end());
  return h;
}

SatResult hornSat(const CnfFormula& f) {
  const std::size_t n = f.variables();
  const auto& clauses = f.clauses();
  std::vector<std::size_t> pending(clauses.size(), 0);
  std::vector<Literal> head(clauses.size(), 0);
  std::vector<std::vector<std::size_t>> negOcc(n + 1);
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    for (Literal l : clauses[i]) {
      if (l > 0) {
        if (head[i] != 0) throw InputError("hornSat: clause " + std::to_string(i) + " has two positive literals");
        head[i] = l;
      } else {
        negOcc[var(l)].push_back(i);
        ++pending[i];
      }
    }
  }
  SatResult res{true, Assignment(n + 1, false)};
  std::vector<std::size_t> queue;
  auto fire = [&](std::size_t i) {
    if (head[i] == 0) {
      res.sat = false;
    } else if (!res.assignment[head[i]]) {
      res.assignment[head[i]] = true;
      queue.push_back(static_cast<std::size_t>(head[i]));
    }
  };
  for (std::size_t i = 0; i < clauses.size() && res.sat; ++i) {
    if (pending[i] == 0) fire(i);
  }
  while (!queue.empty() && res.sat) {
    const std::size_t v = queue.back();
    queue.pop_back();
    for (std::size_t i : negOcc[v]) {
      if (--pending[i] == 0) fire(i);
    }
  }
  if (!res.sat) res.assignment.assign(n + 1, false);
  return res;
}

SatResult twoSat(const CnfFormula& f) {
  const std::size_t n = f.variables();
  auto node = [](Literal l) { return static_cast<std::size_t>(2 * (var(l) - 1) + (l < 0 ? 1 : 0)); };
  std::vector<std::vector<std::size_t>> adj(2 * n);
  for (std::size_t i = 0; i < f.clauses().size(); ++i) {
    const Clause& c = f.clauses()[i];
    if (c.size() > 2) throw InputError("twoSat: clause " + std::to_string(i) + " has more than two literals");
    if (c.empty()) return {false, Assignment(n + 1, false)};
    const Literal a = c[0];
    const Literal b = c.size() == 2 ? c[1] : c[0];
    adj[node(-a)].push_back(node(b));
    adj[node(-b)].push_back(node(a));
  }

  // Iterative Tarjan; components are numbered in reverse topological order.
  const std::size_t N = 2 * n;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(N, kNone), low(N, 0), comp(N, kNone), stack;
  std::vector<bool> onStack(N, false);
  std::size_t counter = 0, comps = 0;
  for (std::size_t s = 0; s < N; ++s) {
    if (index[s] != kNone) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call{{s, 0}};
    index[s] = low[s] = counter++;
    stack.push_back(s);
    onStack[s] = true;
    while (!call.empty()) {
      auto& [v, it] = call.back();
      if (it < adj[v].size()) {
        const std::size_t w = adj[v][it++];
        if (index[w] == kNone) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          onStack[w] = true;
          call.push_back({w, 0});
        } else if (onStack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        const std::size_t done = v;
        if (low[done] == index[done]) {
          while (true) {
            const std::size_t w = stack.back();
            stack.pop_back();
            onStack[w] = false;
            comp[w] = comps;
            if (w == done) break;
          }
          ++comps;
        }
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      }
    }
  }
  SatResult res{true, Assignment(n + 1, false)};
  for (std::size_t v = 1; v <= n; ++v) {
    const std::size_t pos = 2 * (v - 1), neg = pos + 1;
    if (comp[pos] == comp[neg]) return {false, Assignment(n + 1, false)};
    res.assignment[v] = comp[pos] < comp[neg];
  }
  return res;
}

CnfFormula restrictFormula(const CnfFormula& f, const std::vector<std::int32_t>& fixed, const Assignment& values) {
  std::vector<bool> isFixed(f.variables() + 1, false);
  for (std::int32_t v : fixed) isFixed[v] = true;
  std::vector<Clause> out;
  for (const Clause& c : f.clauses()) {
    bool satisfied = false;
    Clause rest;
    for (Literal l : c) {
      if (!isFixed[var(l)]) {
        rest.push_back(l);
      } else if (values[var(l)] == (l > 0)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) out.push_back(std::move(rest));
  }
  return CnfFormula(f.variables(), std::move(out));
}

namespace {

Assignment assignmentOf(const std::vector<std::int32_t>& vars, std::uint64_t bits, std::size_t n) {
  Assignment a(n + 1, false);
  for (std::size_t j = 0; j < vars.size(); ++j) a[vars[j]] = (bits >> j & 1u) != 0;
  return a;
}

bool inClass(const CnfFormula& f, BackdoorTarget t) { return t == BackdoorTarget::Horn ? isHorn(f) : isTwoCnf(f); }

void requireEnumerable(std::size_t size) {
  if (size > kMaxBackdoorEnumeration) {
    throw InputError("backdoor of " + std::to_string(size) + " variables is too large to enumerate");
  }
}

bool hitSearch(const TripleHypergraph& h, std::int64_t budget, std::vector<std::int32_t>& chosen) {
  const auto uncovered = std::find_if(h.edges.begin(), h.edges.end(), [&](const auto& e) {
    return std::none_of(e.begin(), e.end(), [&](std::int32_t v) {
      return std::find(chosen.begin(), chosen.end(), v) != chosen.end();
    });
  });
  if (uncovered == h.edges.end()) return true;
  if (budget == 0) return false;
  for (std::int32_t v : *uncovered) {
    chosen.push_back(v);
    if (hitSearch(h, budget - 1, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

bool isStrongBackdoor(const CnfFormula& f, const std::vector<std::int32_t>& vars, BackdoorTarget target) {
  requireEnumerable(vars.size());
  const CnfFormula g = removeTautologies(f);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << vars.size()); ++bits) {
    if (!inClass(restrictFormula(g, vars, assignmentOf(vars, bits, g.variables())), target)) return false;
  }
  return true;
}

std::optional<std::vector<std::int32_t>> findBackdoor(const CnfFormula& f, std::int64_t k, BackdoorTarget target,
                                                      const Engine& engine) {
  if (k < 0) throw InputError("findBackdoor requires k >= 0");
  const CnfFormula g = removeTautologies(f);
  std::vector<std::int32_t> found;
  if (target == BackdoorTarget::Horn) {
    const VcResult vc = vcSolve({positivePrimalGraph(g), k}, engine);
    if (!vc.yes) return std::nullopt;
    for (VertexId v : vc.cover) found.push_back(static_cast<std::int32_t>(v) + 1);
  } else {
    if (!hitSearch(tripleHypergraph(g), k, found)) return std::nullopt;
    std::sort(found.begin(), found.end());
  }
  if (!isStrongBackdoor(g, found, target)) throw ContractViolation("computed set is not a strong backdoor");
  return found;
}

BackdoorResult backdoorSatSolve(const CnfFormula& f, std::int64_t k, BackdoorTarget target, const Engine& engine) {
  BackdoorResult res;
  const std::optional<std::vector<std::int32_t>> b = findBackdoor(f, k, target, engine);
  if (!b) return res;
  res.backdoor = *b;
  requireEnumerable(b->size());
  const CnfFormula g = removeTautologies(f);
  const std::size_t n = g.variables();
  res.branches = std::size_t{1} << b->size();
  const std::vector<SatResult> results = engine.executor().map<SatResult>(res.branches, [&](std::size_t bits) {
    const Assignment fixed = assignmentOf(*b, bits, n);
    const CnfFormula rest = restrictFormula(g, *b, fixed);
    SatResult r = target == BackdoorTarget::Horn ? hornSat(rest) : twoSat(rest);
    if (r.sat) {
      for (std::int32_t v : *b) r.assignment[v] = fixed[v];
    }
    return r;
  });
  res.stats.rounds = 1;
  res.stats.work = res.branches;
  res.stats.commits["backdoor-branches"] = 1;
  res.answer = BackdoorAnswer::Unsat;
  for (const SatResult& r : results) {
    if (!r.sat) continue;
    if (!satisfies(f, r.assignment)) throw ContractViolation("backdoor branch returned a non-satisfying assignment");
    res.answer = BackdoorAnswer::Sat;
    res.assignment = r.assignment;
    break;
  }
  res.stats.perRule["backdoor-sat-branch"] = static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const SatResult& r) { return r.sat; }));
  return res;
}

}  // namespace pkern

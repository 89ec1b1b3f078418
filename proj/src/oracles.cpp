#include "pkern/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "pkern/error.hpp"

namespace pkern::oracle {

namespace {

using Mask = std::uint32_t;

// Live vertices renumbered 0..m-1 with adjacency bitmasks (loops excluded).
struct Compact {
  std::vector<VertexId> ids;
  std::vector<Mask> adj;
  Mask loopMask = 0;

  Compact(const MultiGraph& g, std::size_t limit, const char* who) {
    if (g.vertexCount() > limit) {
      throw OracleRefused(std::string(who) + " refuses graphs above " + std::to_string(limit) + " vertices");
    }
    ids = g.vertices();
    adj.assign(ids.size(), 0);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = 0; j < ids.size(); ++j) {
        if (i != j && g.multiplicity(ids[i], ids[j]) > 0) adj[i] |= Mask{1} << j;
      }
      if (g.hasSelfLoop(ids[i])) loopMask |= Mask{1} << i;
    }
  }
  std::size_t size() const { return ids.size(); }
  Mask all() const { return size() == 32 ? ~Mask{0} : (Mask{1} << size()) - 1; }
};

void requireSimple(const MultiGraph& g, const char* who) {
  if (!g.isSimple()) throw InputError(std::string(who) + " requires a simple graph");
}

bool covers(const Compact& c, Mask s) {
  for (std::size_t v = 0; v < c.size(); ++v) {
    if (!(s >> v & 1u) && (c.adj[v] & ~s)) return false;
  }
  return true;
}

}  // namespace

std::size_t vcOpt(const MultiGraph& g) {
  requireSimple(g, "vcOpt");
  const Compact c(g, OracleLimit::vc, "vcOpt");
  std::size_t best = c.size();
  for (Mask s = 0; s <= c.all(); ++s) {
    const auto pc = static_cast<std::size_t>(std::popcount(s));
    if (pc < best && covers(c, s)) best = pc;
    if (s == c.all()) break;
  }
  return best;
}

std::vector<VertexSet> minimumVertexCovers(const MultiGraph& g) {
  const std::size_t opt = vcOpt(g);
  const Compact c(g, OracleLimit::vc, "minimumVertexCovers");
  std::vector<VertexSet> out;
  for (Mask s = 0; s <= c.all(); ++s) {
    if (static_cast<std::size_t>(std::popcount(s)) == opt && covers(c, s)) {
      std::vector<VertexId> vs;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (s >> i & 1u) vs.push_back(c.ids[i]);
      }
      out.emplace_back(std::move(vs));
    }
    if (s == c.all()) break;
  }
  return out;
}

std::size_t independenceNumber(const MultiGraph& g) {
  requireSimple(g, "independenceNumber");
  const Compact c(g, OracleLimit::vc, "independenceNumber");
  std::size_t best = 0;
  for (Mask s = 0; s <= c.all(); ++s) {
    bool independent = true;
    for (std::size_t v = 0; v < c.size() && independent; ++v) {
      if ((s >> v & 1u) && (c.adj[v] & s)) independent = false;
    }
    if (independent) best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(s)));
    if (s == c.all()) break;
  }
  return best;
}

std::size_t matchOpt(const MultiGraph& g) {
  const Compact c(g, OracleLimit::matching, "matchOpt");
  std::vector<int> memo(std::size_t{1} << c.size(), -1);
  std::function<int(Mask)> go = [&](Mask used) -> int {
    const Mask free = c.all() & ~used;
    if (!free) return 0;
    if (memo[used] >= 0) return memo[used];
    const int i = std::countr_zero(free);
    const Mask withI = used | (Mask{1} << i);
    int best = go(withI);
    Mask cand = c.adj[i] & ~withI;
    while (cand) {
      const int j = std::countr_zero(cand);
      cand &= cand - 1;
      best = std::max(best, 1 + go(withI | (Mask{1} << j)));
    }
    return memo[used] = best;
  };
  return static_cast<std::size_t>(go(0));
}

namespace {

bool acyclicAfterRemoving(const MultiGraph& g, const Compact& c, Mask removed) {
  std::vector<std::size_t> parent(c.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::size_t> pos(g.capacity(), 0);
  for (std::size_t i = 0; i < c.size(); ++i) pos[c.ids[i]] = i;
  for (const EdgeRecord& r : g.edgeRecords()) {
    const std::size_t a = pos[r.edge.u], b = pos[r.edge.v];
    if ((removed >> a & 1u) || (removed >> b & 1u)) continue;
    if (a == b || r.multiplicity > 1) return false;
    const std::size_t ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  return true;
}

}  // namespace

std::size_t fvsOpt(const MultiGraph& g) {
  const Compact c(g, OracleLimit::fvs, "fvsOpt");
  std::size_t best = c.size();
  for (Mask s = 0; s <= c.all(); ++s) {
    const auto pc = static_cast<std::size_t>(std::popcount(s));
    if (pc < best && acyclicAfterRemoving(g, c, s)) best = pc;
    if (s == c.all()) break;
  }
  return best;
}

std::int64_t halfIntegralOptDoubled(const MultiGraph& g) {
  requireSimple(g, "halfIntegralOptDoubled");
  const Compact c(g, OracleLimit::halfIntegral, "halfIntegralOptDoubled");
  std::vector<int> x(c.size(), 0);
  std::int64_t best = 2 * static_cast<std::int64_t>(c.size());
  std::function<void(std::size_t, std::int64_t)> go = [&](std::size_t i, std::int64_t sum) {
    if (sum >= best) return;
    if (i == c.size()) {
      best = sum;
      return;
    }
    for (int val = 0; val <= 2; ++val) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        if ((c.adj[i] >> j & 1u) && x[j] + val < 2) ok = false;
      }
      if (!ok) continue;
      x[i] = val;
      go(i + 1, sum + val);
    }
  };
  go(0, 0);
  return best;
}

Widths widthOpt(const MultiGraph& g) {
  requireSimple(g, "widthOpt");
  const Compact c(g, OracleLimit::width, "widthOpt");
  const std::size_t m = c.size();
  if (m == 0) return {};
  const std::size_t full = std::size_t{1} << m;

  // Treewidth: TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), where
  // Q(S, v) are the vertices outside S + v reachable from v through S.
  auto qSize = [&](Mask s, std::size_t v) {
    Mask seen = Mask{1} << v, frontier = seen, reach = 0;
    while (frontier) {
      Mask next = 0;
      Mask f = frontier;
      while (f) {
        const int u = std::countr_zero(f);
        f &= f - 1;
        next |= c.adj[u];
      }
      next &= ~seen;
      seen |= next;
      reach |= next & ~s;
      frontier = next & s;
    }
    return std::popcount(reach);
  };
  std::vector<int> tw(full, std::numeric_limits<int>::max());
  tw[0] = -1;
  for (std::size_t s = 1; s < full; ++s) {
    for (std::size_t v = 0; v < m; ++v) {
      if (!(s >> v & 1u)) continue;
      const Mask rest = static_cast<Mask>(s) & ~(Mask{1} << v);
      tw[s] = std::min(tw[s], std::max(tw[rest], qSize(rest, v)));
    }
  }

  // Pathwidth as vertex separation over linear orders.
  std::vector<int> pw(full, std::numeric_limits<int>::max());
  pw[0] = -1;
  for (std::size_t s = 1; s < full; ++s) {
    int boundary = 0;
    for (std::size_t v = 0; v < m; ++v) {
      if ((s >> v & 1u) && (c.adj[v] & ~static_cast<Mask>(s))) ++boundary;
    }
    int prev = std::numeric_limits<int>::max();
    for (std::size_t v = 0; v < m; ++v) {
      if (s >> v & 1u) prev = std::min(prev, pw[s & ~(std::size_t{1} << v)]);
    }
    pw[s] = std::max(prev, boundary);
  }

  // Tree depth as minimum elimination-forest height.
  std::vector<int> height(full, -1);
  height[0] = 0;
  std::function<int(Mask)> td = [&](Mask s) -> int {
    if (height[s] >= 0) return height[s];
    const Mask first = s & (~s + 1);
    Mask comp = first, frontier = first;
    while (frontier) {
      Mask next = 0;
      Mask f = frontier;
      while (f) {
        const int u = std::countr_zero(f);
        f &= f - 1;
        next |= c.adj[u];
      }
      next &= s & ~comp;
      comp |= next;
      frontier = next;
    }
    int h;
    if (comp != s) {
      h = std::max(td(comp), td(s & ~comp));
    } else {
      h = std::numeric_limits<int>::max();
      Mask rest = s;
      while (rest) {
        const int v = std::countr_zero(rest);
        rest &= rest - 1;
        h = std::min(h, 1 + td(s & ~(Mask{1} << v)));
      }
    }
    return height[s] = h;
  };
  return {tw[full - 1], pw[full - 1], td(static_cast<Mask>(full - 1)) - 1};
}

bool collinearRational(const Point& p, const Point& q, const Point& r) {
  using boost::multiprecision::cpp_rational;
  if (p.size() != q.size() || p.size() != r.size()) throw InputError("points of different dimension");
  std::size_t lead = 0;
  while (lead < p.size() && q[lead] == p[lead]) ++lead;
  if (lead == p.size()) return true;  // p == q: any r lies on a line through both
  const cpp_rational lambda = cpp_rational(BigInt(r[lead] - p[lead])) / cpp_rational(BigInt(q[lead] - p[lead]));
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (cpp_rational(r[i]) != cpp_rational(p[i]) + lambda * cpp_rational(BigInt(q[i] - p[i]))) return false;
  }
  return true;
}

std::size_t plcOpt(const PointSet& ps) {
  const std::size_t n = ps.size();
  if (n > OracleLimit::plc) {
    throw OracleRefused("plcOpt refuses more than " + std::to_string(OracleLimit::plc) + " points");
  }
  if (n == 0) return 0;
  std::vector<Mask> lines;
  for (std::size_t i = 0; i < n; ++i) {
    lines.push_back(Mask{1} << i);
    for (std::size_t j = i + 1; j < n; ++j) {
      Mask on = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (collinearRational(ps[i], ps[j], ps[r])) on |= Mask{1} << r;
      }
      lines.push_back(on);
    }
  }
  const Mask all = (Mask{1} << n) - 1;
  std::vector<int> memo(std::size_t{1} << n, -1);
  std::function<int(Mask)> go = [&](Mask covered) -> int {
    if (covered == all) return 0;
    if (memo[covered] >= 0) return memo[covered];
    const int i = std::countr_zero(~covered & all);
    int best = std::numeric_limits<int>::max();
    for (Mask l : lines) {
      if (l >> i & 1u) best = std::min(best, 1 + go(covered | l));
    }
    return memo[covered] = best;
  };
  return static_cast<std::size_t>(go(0));
}

namespace {

bool clauseTrue(const Clause& c, const std::vector<int>& val) {
  return std::any_of(c.begin(), c.end(), [&](Literal l) { return val[std::abs(l)] == (l > 0 ? 1 : 0); });
}

}  // namespace

bool satBrute(const CnfFormula& f) {
  const std::size_t n = f.variables();
  if (n > OracleLimit::sat) throw OracleRefused("satBrute refuses more than " + std::to_string(OracleLimit::sat) + " variables");
  std::vector<int> val(n + 1, 0);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    for (std::size_t v = 1; v <= n; ++v) val[v] = static_cast<int>(bits >> (v - 1) & 1u);
    if (std::all_of(f.clauses().begin(), f.clauses().end(), [&](const Clause& c) { return clauseTrue(c, val); })) {
      return true;
    }
  }
  return false;
}

std::optional<std::size_t> strongBackdoorOpt(const CnfFormula& f, BackdoorTarget target, std::size_t maxSize) {
  const std::size_t n = f.variables();
  if (n > OracleLimit::sat) throw OracleRefused("strongBackdoorOpt refuses more than 20 variables");
  std::vector<Clause> clauses;
  for (const Clause& c : f.clauses()) {
    bool taut = false;
    for (Literal a : c) {
      for (Literal b : c) taut = taut || a == -b;
    }
    if (!taut) clauses.push_back(c);
  }
  auto good = [&](Mask b) {
    // Enumerate assignments of b as sub-masks of b (bit set = true).
    Mask sub = 0;
    while (true) {
      for (const Clause& c : clauses) {
        bool sat = false;
        std::size_t pos = 0, len = 0;
        for (Literal l : c) {
          const auto v = static_cast<std::size_t>(std::abs(l) - 1);
          if (b >> v & 1u) {
            if (((sub >> v & 1u) != 0) == (l > 0)) sat = true;
          } else {
            ++len;
            if (l > 0) ++pos;
          }
        }
        if (sat) continue;
        if (target == BackdoorTarget::Horn ? pos > 1 : len > 2) return false;
      }
      if (sub == b) break;
      sub = (sub - b) & b;
    }
    return true;
  };
  for (std::size_t size = 0; size <= std::min(maxSize, n); ++size) {
    for (Mask b = 0; b < (Mask{1} << n); ++b) {
      if (static_cast<std::size_t>(std::popcount(b)) == size && good(b)) return size;
    }
  }
  return std::nullopt;
}

std::size_t tripleHittingSetOpt(const TripleHypergraph& h) {
  if (h.variables > OracleLimit::sat) throw OracleRefused("tripleHittingSetOpt refuses more than 20 variables");
  std::vector<Mask> edges;
  for (const auto& e : h.edges) {
    edges.push_back((Mask{1} << (e[0] - 1)) | (Mask{1} << (e[1] - 1)) | (Mask{1} << (e[2] - 1)));
  }
  std::size_t best = h.variables;
  for (Mask s = 0; s < (Mask{1} << h.variables); ++s) {
    const auto pc = static_cast<std::size_t>(std::popcount(s));
    if (pc >= best) continue;
    if (std::all_of(edges.begin(), edges.end(), [&](Mask e) { return (e & s) != 0; })) best = pc;
  }
  return best;
}

Instance leafFixpoint(const Instance& inst) {
  Instance cur = inst;
  while (true) {
    std::optional<VertexId> pick;
    for (VertexId v : cur.graph.vertices()) {
      if (cur.graph.degree(v) <= 1) {
        pick = v;
        break;
      }
    }
    if (!pick) return cur;
    ChangeSet cs;
    cs.deleteVertex(*pick);
    cur.graph = cur.graph.apply(cs);
  }
}

Instance chainFixpoint(const Instance& inst) {
  Instance cur = inst;
  while (true) {
    std::optional<VertexId> pick;
    for (VertexId v : cur.graph.vertices()) {
      if (cur.graph.degree(v) == 2 && !cur.graph.hasSelfLoop(v)) {
        pick = v;
        break;
      }
    }
    if (!pick) return cur;
    std::vector<VertexId> ends;
    for (const Incidence& inc : cur.graph.incident(*pick)) {
      for (std::uint32_t i = 0; i < inc.multiplicity; ++i) ends.push_back(inc.to);
    }
    ChangeSet cs;
    cs.deleteVertex(*pick);
    cs.addEdge(ends.at(0), ends.at(1));
    cur.graph = cur.graph.apply(cs);
  }
}

Instance loopFixpoint(const Instance& inst) {
  Instance cur = inst;
  for (VertexId v : inst.graph.vertices()) {
    if (!cur.graph.hasSelfLoop(v)) continue;
    ChangeSet cs;
    cs.deleteVertex(v);
    cur.graph = cur.graph.apply(cs);
    cur.k -= 1;
  }
  return cur;
}

}  // namespace pkern::oracle

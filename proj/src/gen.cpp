#include "pkern/gen.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "pkern/error.hpp"
#include "pkern/io.hpp"

namespace pkern::gen {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InputError("Rng::below needs a positive bound");
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InputError("Rng::between with an empty range");
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

MultiGraph randomGraph(const GraphParams& p, Rng& rng) {
  std::vector<Edge> edges;
  for (VertexId u = 0; u < p.n; ++u) {
    if (rng.chance(p.loopPercent, 100)) edges.emplace_back(u, u);
    for (VertexId v = u + 1; v < p.n; ++v) {
      if (!rng.chance(p.edgePercent, 100)) continue;
      edges.emplace_back(u, v);
      if (rng.chance(p.parallelPercent, 100)) edges.emplace_back(u, v);
    }
  }
  return MultiGraph::fromEdges(p.n, edges);
}

MultiGraph randomSimpleGraph(std::size_t n, unsigned edgePercent, Rng& rng) {
  return randomGraph({n, edgePercent, 0, 0}, rng);
}

PointSet randomPoints(std::size_t n, std::size_t d, std::int64_t range, Rng& rng) {
  std::vector<Point> pts;
  std::set<Point> seen;
  std::size_t attempts = 0;
  while (pts.size() < n) {
    if (++attempts > 1000 * (n + 1)) throw InputError("cannot draw that many distinct points in the range");
    Point p(d);
    bool snapped = false;
    if (pts.size() >= 2 && pts.size() % 3 == 2) {
      const Point& a = pts[rng.below(pts.size())];
      const Point& b = pts[rng.below(pts.size())];
      if (a == b) continue;
      BigInt g = 0;
      for (std::size_t i = 0; i < d; ++i) g = boost::multiprecision::gcd(g, BigInt(abs(b[i] - a[i])));
      const std::int64_t t = rng.between(-3, 3);
      for (std::size_t i = 0; i < d; ++i) p[i] = a[i] + t * ((b[i] - a[i]) / g);
      snapped = std::none_of(p.begin(), p.end(), [&](const BigInt& c) { return abs(c) > range; });
    }
    // Snaps that leave the box fall back to a uniform draw.
    if (!snapped) {
      for (std::size_t i = 0; i < d; ++i) p[i] = rng.between(-range, range);
    }
    if (!seen.insert(p).second) continue;
    pts.push_back(std::move(p));
  }
  return PointSet(d, std::move(pts));
}

CnfFormula randomCnf(std::size_t vars, std::size_t clauses, std::size_t maxWidth, Rng& rng) {
  if (vars == 0) return CnfFormula(0, std::vector<Clause>(clauses));
  std::vector<Clause> out;
  for (std::size_t c = 0; c < clauses; ++c) {
    const auto width = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(maxWidth)));
    Clause cl;
    for (std::size_t i = 0; i < width; ++i) {
      const auto v = static_cast<Literal>(rng.between(1, static_cast<std::int64_t>(vars)));
      cl.push_back(rng.chance(1, 2) ? v : -v);
    }
    out.push_back(std::move(cl));
  }
  return CnfFormula(vars, std::move(out));
}

MonotoneCircuit randomCircuit(std::size_t gates, Rng& rng) {
  if (gates == 0) throw InputError("a circuit needs at least one gate");
  std::vector<Gate> gs;
  const std::size_t inputs = std::max<std::size_t>(1, std::min<std::size_t>(gates, 1 + rng.below(gates / 2 + 1)));
  for (std::size_t i = 0; i < gates; ++i) {
    Gate g;
    if (i < inputs) {
      g.kind = GateKind::In;
      g.value = rng.chance(1, 2);
    } else {
      g.kind = rng.chance(1, 2) ? GateKind::And : GateKind::Or;
      g.a = rng.below(i);
      g.b = rng.below(i);
    }
    gs.push_back(g);
  }
  return MonotoneCircuit(std::move(gs), gates - 1);
}

std::string randomInstanceText(std::string_view problem, std::size_t size, std::uint64_t seed) {
  Rng rng(seed);
  if (problem == "vc" || problem == "matching" || problem == "tw" || problem == "pw" || problem == "td") {
    return io::writeGraph(randomSimpleGraph(size, 30, rng));
  }
  if (problem == "fvs") return io::writeGraph(randomGraph({size, 25, 5, 10}, rng));
  if (problem == "plc") {
    PointSet ps = randomPoints(size, 2, 50, rng);
    const std::int64_t k = rng.between(0, 4);
    return io::writePoints({std::move(ps), k});
  }
  if (problem == "sat") return io::writeCnf(randomCnf(size, 2 * size, 3, rng));
  if (problem == "mcvp") return io::writeCircuit(randomCircuit(size, rng));
  throw InputError("unknown problem '" + std::string(problem) + "' for random generation");
}

}  // namespace pkern::gen

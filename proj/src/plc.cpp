#include "pkern/plc.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "pkern/error.hpp"

namespace pkern {

PointSet::PointSet(std::size_t dimension, std::vector<Point> points)
    : dimension_(dimension), points_(std::move(points)) {
  if (dimension_ < 2) throw InputError("point dimension must be at least 2");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].size() != dimension_) {
      throw InputError("point " + std::to_string(i) + " has " + std::to_string(points_[i].size()) +
                       " coordinates, expected " + std::to_string(dimension_));
    }
  }
  std::vector<std::size_t> order(points_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points_[a] < points_[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (points_[order[i]] == points_[order[i - 1]]) {
      throw InputError("duplicate point at positions " + std::to_string(std::min(order[i], order[i - 1])) + " and " +
                       std::to_string(std::max(order[i], order[i - 1])));
    }
  }
}

namespace {

BigInt floorDiv(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

LineKey lineKey(const Point& p, const Point& q) {
  if (p.size() != q.size()) throw InputError("points of different dimension");
  if (p == q) throw InputError("a line needs two distinct points");
  Point dir(p.size());
  BigInt g = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    dir[i] = q[i] - p[i];
    g = boost::multiprecision::gcd(g, BigInt(abs(dir[i])));
  }
  std::size_t lead = 0;
  while (dir[lead] == 0) ++lead;
  const bool flip = dir[lead] < 0;
  for (BigInt& c : dir) {
    c /= g;
    if (flip) c = -c;
  }
  const BigInt t = floorDiv(p[lead], dir[lead]);
  Point anchor(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) anchor[i] = p[i] - t * dir[i];
  return {std::move(anchor), std::move(dir)};
}

bool collinear(const Point& p, const Point& q, const Point& r) {
  if (p.size() != q.size() || p.size() != r.size()) throw InputError("points of different dimension");
  const std::size_t d = p.size();
  for (std::size_t i = 0; i < d; ++i) {
    const BigInt a = q[i] - p[i];
    const BigInt c = r[i] - p[i];
    for (std::size_t j = i + 1; j < d; ++j) {
      if (a * (r[j] - p[j]) != c * (q[j] - p[j])) return false;
    }
  }
  return true;
}

PlcOutcome plcKernel(const PlcInstance& inst, const Engine& engine) {
  if (inst.k < 0) throw InputError("plcKernel requires k >= 0");
  const PointSet& ps = inst.points;
  // Points are tracked as isolated vertices so deletions go through the engine.
  Instance cur{MultiGraph::fromEdges(ps.size(), {}), inst.k};
  RoundStats stats;
  std::vector<TraceRecord> trace;

  auto finish = [&](PlcOutcome out) {
    out.trace = std::move(trace);
    out.stats = std::move(stats);
    return out;
  };

  while (true) {
    const std::vector<VertexId> live = cur.graph.vertices();
    using Bucket = std::vector<std::pair<LineKey, VertexId>>;
    std::vector<Bucket> keyed = engine.scan<Bucket>(
        live.size(),
        [&](std::size_t i) {
          Bucket out;
          for (std::size_t j = i + 1; j < live.size(); ++j) {
            out.push_back({lineKey(ps[live[i]], ps[live[j]]), live[j]});
          }
          return out;
        },
        stats);
    std::map<LineKey, std::vector<VertexId>> lines;
    for (std::size_t i = 0; i < keyed.size(); ++i) {
      for (auto& [key, j] : keyed[i]) {
        auto& on = lines[key];
        on.push_back(live[i]);
        on.push_back(j);
      }
    }
    for (auto& [key, on] : lines) {
      std::sort(on.begin(), on.end());
      on.erase(std::unique(on.begin(), on.end()), on.end());
    }
    const auto threshold = static_cast<std::size_t>(cur.k) + 1;
    ChangeSet cs;
    std::int64_t heavy = 0;
    std::vector<VertexId> removed;
    for (const auto& [key, on] : lines) {
      if (on.size() < threshold) continue;
      ++heavy;
      for (VertexId v : on) {
        cs.deleteVertex(v);
        removed.push_back(v);
      }
    }
    if (heavy == 0) break;
    cs.decrementK(heavy);
    cur = engine.commitRound(cur, cs, "plc-heavy-line", static_cast<std::size_t>(heavy), stats);
    trace.push_back({"plc-heavy-line", VertexSet(removed), heavy});
    if (cur.k < 0) return finish(PlcOutcome::makeDecided(Answer::No));
  }

  const std::vector<VertexId> rest = cur.graph.vertices();
  if (static_cast<std::int64_t>(rest.size()) > cur.k * cur.k) {
    trace.push_back({"plc-count", VertexSet(rest), static_cast<std::int64_t>(rest.size())});
    return finish(PlcOutcome::makeDecided(Answer::No));
  }
  std::vector<Point> kept;
  for (VertexId v : rest) kept.push_back(ps[v]);
  return finish(PlcOutcome::makeReduced({PointSet(ps.dimension(), std::move(kept)), cur.k}));
}

}  // namespace pkern

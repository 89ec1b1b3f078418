#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pkern/cover_kernels.hpp"
#include "pkern/engine.hpp"
#include "pkern/outcome.hpp"

namespace pkern {

using BigInt = boost::multiprecision::cpp_int;
using Point = std::vector<BigInt>;

/// Distinct integer points of a common dimension d >= 2.
class PointSet {
public:
  PointSet() = default;
  /// Throws InputError for d < 2, wrong arity, or duplicate points.
  PointSet(std::size_t dimension, std::vector<Point> points);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  friend bool operator==(const PointSet&, const PointSet&) = default;

private:
  std::size_t dimension_ = 2;
  std::vector<Point> points_;
};

struct PlcInstance {
  PointSet points;
  std::int64_t k = 0;
  friend bool operator==(const PlcInstance&, const PlcInstance&) = default;
};

using PlcOutcome = BasicOutcome<PlcInstance>;

/// Canonical form of the affine line through two distinct points: the
/// primitive direction with a positive leading entry, and the unique lattice
/// point of the line whose coordinate at that entry lies in [0, dir_i).
struct LineKey {
  Point anchor;
  Point direction;
  friend auto operator<=>(const LineKey&, const LineKey&) = default;
};

/// Throws InputError if p == q or the dimensions differ.
LineKey lineKey(const Point& p, const Point& q);

/// True iff every 2x2 minor of [q-p; r-p] vanishes.
bool collinear(const Point& p, const Point& q, const Point& r);

/// Removes every line holding more than k' remaining points, all at once per
/// round, until no such line is left. Reduced outputs have at most k'^2 points.
/// Trace vertex sets index the input points.
PlcOutcome plcKernel(const PlcInstance& inst, const Engine& engine = sequentialEngine());

}  // namespace pkern

#include "pkern/outcome.hpp"

#include <limits>

namespace pkern {

namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t satMul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

std::uint64_t satAdd(std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; }

std::uint64_t satPow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r = satMul(r, base);
  return r;
}

}  // namespace

std::uint64_t ceilRoot(std::uint64_t k, int delta) {
  if (delta < 1) return k;
  std::uint64_t r = 0;
  while (satPow(r, delta) < k) ++r;
  return r;
}

std::uint64_t thresholdBound(std::int64_t k, int delta) {
  if (k <= 0) return 1;
  const std::uint64_t r = ceilRoot(static_cast<std::uint64_t>(k), delta);
  return r >= 64 ? kMax : (std::uint64_t{1} << r);
}

std::string SizeBound::name() const {
  switch (kind) {
    case BoundKind::BussQuadratic: return "k^2+2k";
    case BoundKind::TwoK: return "2k";
    case BoundKind::SixKSquared: return "6k^2";
    case BoundKind::Threshold: return "2^ceil(k^(1/" + std::to_string(delta) + "))";
    case BoundKind::TreeWidth: return "|S|^3+|S|";
    case BoundKind::PathWidth: return "|S|^3+|S|^2+2|S|";
    case BoundKind::TreeDepth: return "|S|^3+2|S|^2+|S|";
    case BoundKind::KSquared: return "k^2";
  }
  return "?";
}

std::uint64_t SizeBound::limit(std::int64_t param) const {
  const std::uint64_t p = param < 0 ? 0 : static_cast<std::uint64_t>(param);
  const std::uint64_t p2 = satMul(p, p);
  const std::uint64_t p3 = satMul(p2, p);
  switch (kind) {
    case BoundKind::BussQuadratic: return satAdd(p2, satMul(2, p));
    case BoundKind::TwoK: return satMul(2, p);
    case BoundKind::SixKSquared: return satMul(6, p2);
    case BoundKind::Threshold: return thresholdBound(param, delta);
    case BoundKind::TreeWidth: return satAdd(p3, p);
    case BoundKind::PathWidth: return satAdd(satAdd(p3, p2), satMul(2, p));
    case BoundKind::TreeDepth: return satAdd(satAdd(p3, satMul(2, p2)), p);
    case BoundKind::KSquared: return p2;
  }
  return 0;
}

}  // namespace pkern

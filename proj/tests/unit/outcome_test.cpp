#include <gtest/gtest.h>

#include <limits>

#include "pkern/outcome.hpp"

using namespace pkern;

TEST(CeilRoot, SmallValues) {
  EXPECT_EQ(ceilRoot(0, 2), 0u);
  EXPECT_EQ(ceilRoot(1, 2), 1u);
  EXPECT_EQ(ceilRoot(4, 2), 2u);
  EXPECT_EQ(ceilRoot(5, 2), 3u);
  EXPECT_EQ(ceilRoot(9, 2), 3u);
  EXPECT_EQ(ceilRoot(8, 3), 2u);
  EXPECT_EQ(ceilRoot(9, 3), 3u);
  EXPECT_EQ(ceilRoot(7, 1), 7u);
}

TEST(ThresholdBound, WorkedValues) {
  EXPECT_EQ(thresholdBound(9, 2), 8u);
  EXPECT_EQ(thresholdBound(4, 2), 4u);
  EXPECT_EQ(thresholdBound(0, 2), 1u);
  EXPECT_EQ(thresholdBound(5, 1), 32u);
  EXPECT_EQ(thresholdBound(100, 1), std::numeric_limits<std::uint64_t>::max());
}

TEST(SizeBoundTest, Limits) {
  EXPECT_EQ((SizeBound{BoundKind::BussQuadratic}.limit(3)), 15u);
  EXPECT_EQ((SizeBound{BoundKind::TwoK}.limit(3)), 6u);
  EXPECT_EQ((SizeBound{BoundKind::SixKSquared}.limit(3)), 54u);
  EXPECT_EQ((SizeBound{BoundKind::KSquared}.limit(3)), 9u);
  EXPECT_EQ((SizeBound{BoundKind::Threshold, 3}.limit(9)), 8u);
  EXPECT_EQ((SizeBound{BoundKind::TreeWidth}.limit(2)), 10u);
  EXPECT_EQ((SizeBound{BoundKind::PathWidth}.limit(2)), 16u);
  EXPECT_EQ((SizeBound{BoundKind::TreeDepth}.limit(2)), 18u);
  EXPECT_EQ((SizeBound{BoundKind::TwoK}.limit(-4)), 0u);
  EXPECT_TRUE((SizeBound{BoundKind::TwoK}.holds(2, 4)));
  EXPECT_FALSE((SizeBound{BoundKind::TwoK}.holds(2, 5)));
}

TEST(SizeBoundTest, StructuralBoundsStayBelowCommonCubic) {
  for (std::int64_t s = 0; s < 200; ++s) {
    const std::uint64_t u = static_cast<std::uint64_t>(s);
    const std::uint64_t common = u * u * u + 2 * u * u + 2 * u;
    for (BoundKind k : {BoundKind::TreeWidth, BoundKind::PathWidth, BoundKind::TreeDepth}) {
      ASSERT_LE(SizeBound{k}.limit(s), common);
    }
  }
}

TEST(SizeBoundTest, SaturatesInsteadOfOverflowing) {
  const auto big = std::numeric_limits<std::int64_t>::max();
  EXPECT_EQ((SizeBound{BoundKind::SixKSquared}.limit(big)), std::numeric_limits<std::uint64_t>::max());
  EXPECT_EQ((SizeBound{BoundKind::TreeDepth}.limit(big)), std::numeric_limits<std::uint64_t>::max());
}

TEST(OutcomeTest, ReducedAndDecidedAccessors) {
  auto r = KernelOutcome::makeReduced(Instance{MultiGraph::fromEdges(2, {{0, 1}}), 1});
  EXPECT_TRUE(r.isReduced());
  EXPECT_EQ(r.reduced().k, 1);
  auto d = KernelOutcome::makeDecided(Answer::Yes, VertexSet{0});
  EXPECT_FALSE(d.isReduced());
  EXPECT_EQ(d.decided().answer, Answer::Yes);
  EXPECT_EQ(*d.decided().certificate, VertexSet{0});
}

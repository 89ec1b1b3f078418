#include <gtest/gtest.h>

#include <set>

#include "pkern/error.hpp"
#include "pkern/gen.hpp"
#include "pkern/io.hpp"

using namespace pkern;

TEST(RngTest, BoundedDrawsStayInRange) {
  gen::Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    ASSERT_LT(rng.below(7), 7u);
    const auto x = rng.between(-3, 3);
    ASSERT_GE(x, -3);
    ASSERT_LE(x, 3);
  }
  EXPECT_EQ(rng.between(5, 5), 5);
}

TEST(RngTest, RoughlyUniform) {
  gen::Rng rng(2);
  std::vector<int> counts(6, 0);
  for (int i = 0; i < 60000; ++i) ++counts[rng.below(6)];
  for (int c : counts) {
    EXPECT_GT(c, 9000);
    EXPECT_LT(c, 11000);
  }
}

TEST(RngTest, SameSeedSameStream) {
  gen::Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    ASSERT_EQ(x, b.next());
    differs |= x != c.next();
  }
  EXPECT_TRUE(differs);
}

TEST(GenRandom, Deterministic) {
  for (const char* p : {"vc", "matching", "fvs", "tw", "pw", "td", "plc", "sat", "mcvp"}) {
    EXPECT_EQ(gen::randomInstanceText(p, 10, 1), gen::randomInstanceText(p, 10, 1)) << p;
    EXPECT_NE(gen::randomInstanceText(p, 10, 1), gen::randomInstanceText(p, 10, 2)) << p;
  }
}

TEST(GenRandom, OutputsParse) {
  EXPECT_EQ(io::parseGraph(gen::randomInstanceText("vc", 10, 1)).vertexCount(), 10u);
  EXPECT_TRUE(io::parseGraph(gen::randomInstanceText("tw", 9, 3)).isSimple());
  EXPECT_NO_THROW(io::parseGraph(gen::randomInstanceText("fvs", 12, 3)));
  EXPECT_NO_THROW(io::parseCnf(gen::randomInstanceText("sat", 8, 3)));
  auto c = io::parseCircuit(gen::randomInstanceText("mcvp", 20, 3));
  EXPECT_EQ(c.gates().size(), 20u);
  EXPECT_THROW(gen::randomInstanceText("nope", 5, 1), InputError);
}

TEST(GenRandom, PlcPointsAreDistinct) {
  auto inst = io::parsePoints(gen::randomInstanceText("plc", 8, 2));
  ASSERT_EQ(inst.points.size(), 8u);
  std::set<Point> seen(inst.points.points().begin(), inst.points.points().end());
  EXPECT_EQ(seen.size(), 8u);
}

TEST(Generators, PointsAreDistinctAndInRange) {
  gen::Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    PointSet ps = gen::randomPoints(30, 2, 5, rng);
    ASSERT_EQ(ps.size(), 30u);
    for (const Point& p : ps.points()) {
      for (const BigInt& c : p) {
        ASSERT_LE(c, 5);
        ASSERT_GE(c, -5);
      }
    }
  }
}

TEST(Generators, GraphParametersAreHonoured) {
  gen::Rng rng(9);
  MultiGraph simple = gen::randomSimpleGraph(30, 50, rng);
  EXPECT_TRUE(simple.isSimple());
  EXPECT_EQ(simple.vertexCount(), 30u);
  EXPECT_EQ(gen::randomSimpleGraph(10, 0, rng).edgeCount(), 0u);
  EXPECT_EQ(gen::randomSimpleGraph(10, 100, rng).edgeCount(), 45u);

  gen::GraphParams p;
  p.n = 40;
  p.loopPercent = 50;
  p.parallelPercent = 50;
  MultiGraph multi = gen::randomGraph(p, rng);
  EXPECT_FALSE(multi.isSimple());
  EXPECT_NO_THROW(multi.validate());
}

TEST(Generators, CnfAndCircuitShape) {
  gen::Rng rng(10);
  CnfFormula f = gen::randomCnf(6, 20, 3, rng);
  EXPECT_EQ(f.variables(), 6u);
  EXPECT_EQ(f.clauses().size(), 20u);
  for (const Clause& c : f.clauses()) {
    EXPECT_GE(c.size(), 1u);
    EXPECT_LE(c.size(), 3u);
  }
  MonotoneCircuit c = gen::randomCircuit(25, rng);
  EXPECT_EQ(c.gates().size(), 25u);
  EXPECT_EQ(c.output(), 24u);
  EXPECT_EQ(c.gates()[0].kind, GateKind::In);
}

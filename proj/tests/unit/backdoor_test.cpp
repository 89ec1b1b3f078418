#include <gtest/gtest.h>

#include "corpus.hpp"
#include "pkern/backdoor.hpp"
#include "pkern/error.hpp"
#include "pkern/oracles.hpp"

using namespace pkern;

namespace {

using V = std::vector<std::int32_t>;

CnfFormula cnf(std::size_t vars, std::vector<Clause> cs) { return CnfFormula(vars, std::move(cs)); }

const CnfFormula kPositiveTriangle = cnf(3, {{1, 2}, {2, 3}, {1, 3}});

}  // namespace

TEST(CnfFormulaTest, Validation) {
  EXPECT_THROW(cnf(2, {{1, 0}}), InputError);
  EXPECT_THROW(cnf(2, {{3}}), InputError);
  EXPECT_THROW(cnf(2, {{-3}}), InputError);
  auto f = cnf(3, {{3, -1, 3}});
  ASSERT_EQ(f.clauses().size(), 1u);
  EXPECT_EQ(f.clauses()[0], (Clause{-1, 3}));
}

TEST(CnfFormulaTest, Tautologies) {
  EXPECT_TRUE(isTautology({1, -1, 2}));
  EXPECT_FALSE(isTautology({1, 2}));
  auto f = removeTautologies(cnf(2, {{1, -1}, {2}}));
  EXPECT_EQ(f.clauses(), (std::vector<Clause>{{2}}));
}

TEST(PrimalGraph, Examples) {
  EXPECT_EQ(positivePrimalGraph(cnf(2, {{1, 2}})).edgeCount(), 1u);
  EXPECT_EQ(positivePrimalGraph(cnf(2, {{-1, -2}})).edgeCount(), 0u);
  auto tri = positivePrimalGraph(cnf(3, {{1, 2, 3}, {1, 2}}));
  EXPECT_EQ(tri.edgeCount(), 3u);
  EXPECT_TRUE(tri.isSimple());
  EXPECT_EQ(tri.vertexCount(), 3u);
  // Mixed clause: only the positive pair counts.
  EXPECT_EQ(positivePrimalGraph(cnf(3, {{1, 2, -3}})).edgeCount(), 1u);
}

TEST(TripleHypergraphTest, Examples) {
  EXPECT_EQ(tripleHypergraph(cnf(3, {{1, 2, 3}})).edges.size(), 1u);
  EXPECT_TRUE(tripleHypergraph(cnf(2, {{1, 2}})).edges.empty());
  auto four = tripleHypergraph(cnf(4, {{1, -2, 3, -4}}));
  EXPECT_EQ(four.edges.size(), 4u);
  EXPECT_EQ(four.edges.front(), (std::array<std::int32_t, 3>{1, 2, 3}));
}

TEST(HornSat, Examples) {
  EXPECT_FALSE(hornSat(cnf(1, {{1}, {-1}})).sat);
  auto allFalse = hornSat(cnf(2, {{-1, -2}}));
  ASSERT_TRUE(allFalse.sat);
  EXPECT_FALSE(allFalse.assignment[1]);
  EXPECT_FALSE(allFalse.assignment[2]);
  EXPECT_FALSE(hornSat(cnf(2, {{1}, {-1, 2}, {-2, -1}})).sat);
  auto chain = hornSat(cnf(3, {{1}, {-1, 2}, {-3, -2, 1}}));
  ASSERT_TRUE(chain.sat);
  EXPECT_EQ(chain.assignment, (Assignment{false, true, true, false}));
  EXPECT_THROW(hornSat(cnf(2, {{1, 2}})), InputError);
}

TEST(TwoSat, Examples) {
  EXPECT_FALSE(twoSat(cnf(2, {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}})).sat);
  auto one = twoSat(cnf(2, {{1, 2}}));
  ASSERT_TRUE(one.sat);
  EXPECT_TRUE(satisfies(cnf(2, {{1, 2}}), one.assignment));
  auto chain = twoSat(cnf(3, {{-1, 2}, {-2, 3}, {1}}));
  ASSERT_TRUE(chain.sat);
  EXPECT_EQ(chain.assignment, (Assignment{false, true, true, true}));
  EXPECT_THROW(twoSat(cnf(3, {{1, 2, 3}})), InputError);
}

TEST(FindBackdoor, Examples) {
  EXPECT_EQ(findBackdoor(cnf(2, {{-1, 2}, {-2}}), 0, BackdoorTarget::Horn), V{});
  EXPECT_EQ(findBackdoor(cnf(3, {{1, 2, 3}}), 1, BackdoorTarget::TwoCnf), V{1});
  EXPECT_EQ(findBackdoor(kPositiveTriangle, 1, BackdoorTarget::Horn), std::nullopt);
  auto two = findBackdoor(kPositiveTriangle, 2, BackdoorTarget::Horn);
  ASSERT_TRUE(two.has_value());
  EXPECT_EQ(two->size(), 2u);
  EXPECT_TRUE(isStrongBackdoor(kPositiveTriangle, *two, BackdoorTarget::Horn));
}

TEST(BackdoorSolve, Examples) {
  auto f = cnf(3, {{1, 2, -3}, {-1, 3}});
  auto r = backdoorSatSolve(f, 1, BackdoorTarget::Horn);
  ASSERT_EQ(r.answer, BackdoorAnswer::Sat);
  EXPECT_TRUE(satisfies(f, r.assignment));
  EXPECT_EQ(r.branches, 2u);
  EXPECT_TRUE(oracle::satBrute(f));

  auto unsat = backdoorSatSolve(cnf(2, {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}}), 0, BackdoorTarget::TwoCnf);
  EXPECT_EQ(unsat.answer, BackdoorAnswer::Unsat);
  EXPECT_EQ(backdoorSatSolve(kPositiveTriangle, 1, BackdoorTarget::Horn).answer, BackdoorAnswer::NoBackdoor);
}

TEST(BackdoorSolve, EmptyClauseBranchIsUnsat) {
  auto f = cnf(2, {{1}, {-1}, {2, -2}});
  EXPECT_EQ(backdoorSatSolve(f, 1, BackdoorTarget::Horn).answer, BackdoorAnswer::Unsat);
  EXPECT_FALSE(oracle::satBrute(f));
}

TEST(RestrictFormulaTest, StripsAndDrops) {
  auto f = cnf(3, {{1, 2}, {-1, 3}, {-1, -2}});
  Assignment a{false, true, false, false};
  auto g = restrictFormula(f, {1}, a);
  EXPECT_EQ(g.clauses(), (std::vector<Clause>{{3}, {-2}}));
}

class BackdoorProperty : public ::testing::TestWithParam<BackdoorTarget> {};

TEST_P(BackdoorProperty, AgreesWithExhaustiveOracles) {
  const BackdoorTarget target = GetParam();
  for (std::uint64_t i = 0; i < 250; ++i) {
    CnfFormula f = corpus::formula(70, i, 10);
    gen::Rng rng(corpus::seedFor(71, i));
    const std::int64_t k = rng.between(0, 4);
    auto opt = oracle::strongBackdoorOpt(f, target, static_cast<std::size_t>(k));
    auto b = findBackdoor(f, k, target);
    ASSERT_EQ(b.has_value(), opt.has_value()) << "seed " << i;
    auto r = backdoorSatSolve(f, k, target);
    if (!b) {
      ASSERT_EQ(r.answer, BackdoorAnswer::NoBackdoor);
      continue;
    }
    ASSERT_LE(static_cast<std::int64_t>(b->size()), k);
    ASSERT_TRUE(isStrongBackdoor(f, *b, target));
    ASSERT_EQ(r.answer == BackdoorAnswer::Sat, oracle::satBrute(f)) << "seed " << i;
    ASSERT_EQ(r.branches, std::size_t{1} << r.backdoor.size());
    if (r.answer == BackdoorAnswer::Sat) ASSERT_TRUE(satisfies(f, r.assignment));
  }
}

INSTANTIATE_TEST_SUITE_P(Targets, BackdoorProperty, ::testing::Values(BackdoorTarget::Horn, BackdoorTarget::TwoCnf));

TEST(BackdoorEquivalence, HornMatchesPrimalCover) {
  for (std::uint64_t i = 0; i < 300; ++i) {
    CnfFormula f = removeTautologies(corpus::formula(72, i, 12));
    const std::size_t vc = oracle::vcOpt(positivePrimalGraph(f));
    for (std::int64_t k = 0; k <= 4; ++k) {
      ASSERT_EQ(findBackdoor(f, k, BackdoorTarget::Horn).has_value(), vc <= static_cast<std::size_t>(k)) << i;
    }
  }
}

TEST(BackdoorEquivalence, TwoCnfMatchesTripleHittingSet) {
  for (std::uint64_t i = 0; i < 300; ++i) {
    CnfFormula f = removeTautologies(corpus::formula(73, i, 12));
    const std::size_t hs = oracle::tripleHittingSetOpt(tripleHypergraph(f));
    for (std::int64_t k = 0; k <= 4; ++k) {
      ASSERT_EQ(findBackdoor(f, k, BackdoorTarget::TwoCnf).has_value(), hs <= static_cast<std::size_t>(k)) << i;
    }
  }
}

TEST(BackdoorSolve, ParallelBranchesAgree) {
  EngineOptions opt;
  opt.workers = 4;
  const Engine par(opt);
  for (std::uint64_t i = 0; i < 80; ++i) {
    CnfFormula f = corpus::formula(74, i, 10);
    for (BackdoorTarget t : {BackdoorTarget::Horn, BackdoorTarget::TwoCnf}) {
      auto a = backdoorSatSolve(f, 3, t);
      auto b = backdoorSatSolve(f, 3, t, par);
      ASSERT_EQ(a.answer, b.answer);
      ASSERT_EQ(a.backdoor, b.backdoor);
      ASSERT_EQ(a.assignment, b.assignment);
    }
  }
}

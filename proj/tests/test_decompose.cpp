#include <gtest/gtest.h>

#include <cmath>

#include "lowenergy/decompose.hpp"
#include "lowenergy/energy.hpp"
#include "lowenergy/error.hpp"
#include "oracles.hpp"

using namespace lowenergy;

namespace {

BivariateQuadratic x2_plus_y(const FieldCtx& F) { return BivariateQuadratic::from_ints(F, {1, 0, 0, 0, 1, 0}); }

void check_partition(const FSet& A, const Decomposition& d) {
  ASSERT_TRUE(set_intersection(d.S, d.T).empty());
  ASSERT_EQ(set_union(d.S, d.T), A);
  ASSERT_LE(d.rounds.size(), A.size());
  for (std::size_t i = 1; i < d.rounds.size(); ++i) ASSERT_LT(d.rounds[i].S_size, d.rounds[i - 1].S_size);
  // oracle recount of the post-condition
  std::vector<std::uint64_t> s(d.S.begin(), d.S.end());
  const Count es = oracle::energy_k(s, s, A.field().p(), 2);
  ASSERT_EQ(es, d.E_S);
  ASSERT_LE(static_cast<long double>(es), d.threshold);
}

}  // namespace

TEST(Decompose, TrivialInputs) {
  const FieldCtx F(101);
  const auto f = x2_plus_y(F);
  for (const FSet& A : {FSet(F), FSet::from_ints(F, {7})}) {
    const Decomposition d = balog_wooley_decompose(A, f);
    EXPECT_EQ(d.S, A);
    EXPECT_TRUE(d.T.empty());
    EXPECT_TRUE(d.rounds.empty());
  }
}

TEST(Decompose, MEqualOneNeverLoops) {
  const FieldCtx F(4001);
  const FSet A = arithmetic_progression(F, 0, 1, 100);
  DecomposeOptions opt;
  opt.M = 1.0;
  const Decomposition d = balog_wooley_decompose(A, x2_plus_y(F), opt);
  EXPECT_TRUE(d.rounds.empty());
  EXPECT_EQ(d.S, A);
  EXPECT_EQ(d.threshold, 1e6L);
}

TEST(Decompose, RandomSetNeedsNoRounds) {
  const FieldCtx F(4001);
  const FSet A = random_set(F, 128, 5);
  const Decomposition d = balog_wooley_decompose(A, x2_plus_y(F));
  EXPECT_TRUE(d.rounds.empty());
  EXPECT_EQ(d.S, A);
}

TEST(Decompose, DegenerateRejected) {
  const FieldCtx F(101);
  const auto sq = BivariateQuadratic::from_ints(F, {1, 2, 1, 0, 0, 0});
  try {
    balog_wooley_decompose(arithmetic_progression(F, 0, 1, 10), sq);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Degenerate);
  }
}

TEST(Decompose, ProgressionRunsRounds) {
  const FieldCtx F(100003);
  const FSet A = arithmetic_progression(F, 0, 1, 200);
  DecomposeOptions opt;
  opt.M = 4.0;
  const Decomposition d = balog_wooley_decompose(A, x2_plus_y(F), opt);
  EXPECT_FALSE(d.rounds.empty());
  check_partition(A, d);
  EXPECT_EQ(d.Ef_T, poly_energy(x2_plus_y(F), d.T).value);
  ASSERT_FALSE(d.reports.empty());
  EXPECT_EQ(d.reports.back().name, "decomposition");
}

TEST(Decompose, PConstraintWarns) {
  const FieldCtx F(101);
  const FSet A = arithmetic_progression(F, 0, 1, 60);  // 60^8 > 101^5
  const Decomposition d = balog_wooley_decompose(A, x2_plus_y(F));
  EXPECT_FALSE(d.p_constraint);
  EXPECT_FALSE(d.warnings.empty());
  check_partition(A, d);
}

TEST(Decompose, LargeSetSubsets) {
  const FieldCtx F(101);
  const FSet A = FSet::from_ints(F, {2, 9});
  const SubsetPair sp = large_set_subsets(A, LargeSetMode::multiplicative, std::nullopt);
  EXPECT_EQ(sp.B, A);
  EXPECT_FALSE(sp.C.empty());
  const auto f = RationalFunction(UnivariatePoly::from_ints(F, {1, 0, 1}));
  const SubsetPair img = large_set_subsets(interval(F, 0, 40), LargeSetMode::image, f);
  EXPECT_TRUE(img.reports.back().hypothesis_flags.at("large_set"));
  EXPECT_THROW(large_set_subsets(A, LargeSetMode::image, std::nullopt), Error);
  const auto lin = RationalFunction(UnivariatePoly::from_ints(F, {1, 3}));
  try {
    large_set_subsets(A, LargeSetMode::image, lin);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InsufficientNondegeneracy);
  }
}

TEST(Decompose, MixedEnergy) {
  const FieldCtx F(4001);
  const FSet A = arithmetic_progression(F, 0, 1, 64);
  const FSet V = random_set(F, 64, 1), X = random_set(F, 64, 2);
  const SubsetPair sp = mixed_energy_subsets(A, V, X, x2_plus_y(F));
  EXPECT_TRUE(sp.C.subset_of(sp.B));
  EXPECT_TRUE(sp.B.subset_of(A));
  ASSERT_EQ(sp.reports.size(), 2u);
  EXPECT_EQ(sp.reports[0].name, "mixed_energy");
  try {
    mixed_energy_subsets(A, random_set(F, 8, 3), X, x2_plus_y(F));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SizeImbalance);
  }
}

TEST(Decompose, ExtractionGuarantees) {
  const FieldCtx F(100003);
  const FSet A = set_union(arithmetic_progression(F, 1, 1, 64), geometric_progression(F, 1, 2, 64));
  const auto f = x2_plus_y(F);
  const PopularSubset ps = extract_low_Ef_subset(A, A, f);
  EXPECT_FALSE(ps.X_star.empty());
  const BoundReport r = extraction_report(ps, A, A, A, f);
  EXPECT_EQ(r.name, "extraction");
  EXPECT_TRUE(r.hypothesis_flags.at("Y_subset_A"));
  EXPECT_THROW(extract_low_Ef_subset(A, arithmetic_progression(F, 1, 1, 10), f), Error);
}

// ---------------------------------------------------------------- properties

TEST(DecomposeProperty, PartitionAndPostConditionOnCorpus) {
  oracle::Gen g(61);
  const FieldCtx F(100003);
  for (int i = 0; i < 24; ++i) {
    const std::size_t n = g.range(2, 200);
    FSet A(F);
    switch (i % 4) {
      case 0: A = arithmetic_progression(F, g.below(F.p()), 1 + g.below(F.p() - 1), n); break;
      case 1: A = geometric_progression(F, 1 + g.below(F.p() - 1), 2, n); break;
      case 2: A = random_set(F, n, g.rng()); break;
      default: A = set_union(arithmetic_progression(F, 1, 1, n / 2 + 1), geometric_progression(F, 1, 3, n / 2 + 1));
    }
    oracle::Quad q = g.quad(F.p());
    while (!is_nondegenerate_quadratic(oracle::to_quad(F, q))) q = g.quad(F.p());
    DecomposeOptions opt;
    if (i % 3 == 0) opt.M = 1.0 + static_cast<double>(g.below(8));
    const Decomposition d = balog_wooley_decompose(A, oracle::to_quad(F, q), opt);
    check_partition(A, d);
  }
}

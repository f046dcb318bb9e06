#include <gtest/gtest.h>

#include <cmath>

#include "lowenergy/energy.hpp"
#include "lowenergy/error.hpp"
#include "oracles.hpp"

using namespace lowenergy;

namespace {

FSet S(const FieldCtx& F, std::initializer_list<std::int64_t> v) { return FSet::from_ints(F, v); }

}  // namespace

TEST(Energy, SmallExamples) {
  const FieldCtx F(101);
  EXPECT_EQ(additive_energy(S(F, {0, 1, 2})).value, Count{19});
  EXPECT_EQ(oracle::energy4({0, 1, 2}, {0, 1, 2}, 101), 19u);
  const FSet A = S(F, {3, 50, 70, 99});
  const FSet B = S(F, {0, 1, 7});
  EXPECT_EQ(additive_energy_k(A, B, 1).value, Count{12});
  const FieldCtx F5(5);
  EXPECT_EQ(additive_energy(FSet::full_field(F5)).value, Count{125});
}

TEST(Energy, Multiplicative) {
  const FieldCtx F13(13);
  EXPECT_EQ(mult_energy(S(F13, {1, 2, 4})).value, Count{19});
  const FSet H = multiplicative_subgroup(F13, 4);
  EXPECT_EQ(mult_energy(H).value, Count{64});
  EXPECT_EQ(mult_energy_k(S(F13, {0, 3, 5}), S(F13, {1, 2}), 1).value, Count{6});
  EXPECT_EQ(mult_energy_k(S(F13, {1, 3}), S(F13, {0}), 2).value, Count{0});
}

TEST(Energy, Polynomial) {
  const FieldCtx F13(13);
  const auto xy = BivariateQuadratic::from_ints(F13, {0, 1, 0, 0, 0, 0});
  EXPECT_EQ(poly_energy(xy, S(F13, {1, 2, 4})).value, Count{19});
}

TEST(Energy, Transform) {
  const FieldCtx F(101);
  EXPECT_EQ(fast_additive_energy(FSet::full_field(F), FSet::full_field(F)).value, Count{101} * 101 * 101);
  EXPECT_EQ(fast_additive_energy(FSet(F), S(F, {1, 2})).value, Count{0});
  const FieldCtx E = FieldCtx::extension(3, 2);
  try {
    fast_additive_energy(S(E, {1}), S(E, {2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Unsupported);
  }
  const FieldCtx big(1048583);
  EXPECT_THROW(difference_counts_ntt(S(big, {1}), S(big, {2})), Error);
}

TEST(Energy, SixTuple) {
  const FieldCtx F(101);
  const TernaryFn sum = [&](std::uint64_t x, std::uint64_t y, std::uint64_t z) { return F.add_code(F.add_code(x, y), z); };
  const FSet b = S(F, {0, 1});
  EXPECT_EQ(six_tuple_count(sum, b, b, b).value, Count{20});
  EXPECT_EQ(six_tuple_count(sum, S(F, {5}), S(F, {9}), S(F, {1})).value, Count{1});
  const TernaryFn constant = [](std::uint64_t, std::uint64_t, std::uint64_t) { return std::uint64_t{7}; };
  const FSet u = S(F, {1, 2, 3}), v = S(F, {4, 5}), w = S(F, {6, 7, 8, 9});
  EXPECT_EQ(six_tuple_count(constant, u, v, w).value, Count{24} * 24);
  EXPECT_THROW(six_tuple_count(sum, u, v, w, 10), Error);
}

TEST(Energy, Identities) {
  const FieldCtx F(101);
  const FSet A = S(F, {0, 1, 2});
  const BoundReport cs = check_identity("cauchy_schwarz", IdentityInputs{{A, A}, SetOp::add, std::nullopt});
  EXPECT_EQ(cs.lhs.n, Count{81});
  EXPECT_EQ(cs.rhs.n, Count{95});
  EXPECT_TRUE(cs.pass);
  EXPECT_TRUE(cs.hard);
  const BoundReport fm = check_identity("first_moment", IdentityInputs{{A, S(F, {5, 9})}, SetOp::sub, std::nullopt});
  EXPECT_TRUE(fm.pass);
  EXPECT_EQ(fm.lhs.n, fm.rhs.n);
  const auto f = BivariateQuadratic::from_ints(F, {1, 0, 0, 0, 1, 0});
  const BoundReport sub = check_identity("subadditivity", IdentityInputs{{A}, SetOp::add, f});
  EXPECT_TRUE(sub.pass);
  EXPECT_NEAR(static_cast<double>(sub.lhs.value()), static_cast<double>(sub.rhs.value()), 1e-9);
  EXPECT_THROW(check_identity("subadditivity", IdentityInputs{{A}, SetOp::add, std::nullopt}), Error);
  EXPECT_THROW(check_identity("cauchy_schwarz", IdentityInputs{{A}, SetOp::add, std::nullopt}), Error);
  try {
    check_identity("nope", IdentityInputs{{A, A}, SetOp::add, std::nullopt});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownCheckName);
  }
}

// ---------------------------------------------------------------- properties

TEST(EnergyProperty, ThreeRoutesAgree) {
  oracle::Gen g(41);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t p = i % 2 ? 101 : 257;
    const FieldCtx F(p);
    const auto a = g.subset(p, 0, 40), b = g.subset(p, 0, 40);
    const FSet A = oracle::to_set(F, a), B = oracle::to_set(F, b);
    const Count ref = oracle::energy4(a, b, p);
    ASSERT_EQ(additive_energy_k(A, B, 2).value, ref);
    ASSERT_EQ(additive_energy(A, B).value, ref);
    if (!a.empty() && !b.empty()) ASSERT_EQ(fast_additive_energy(A, B).value, ref);
    for (unsigned k : {1u, 3u, 4u}) ASSERT_EQ(additive_energy_k(A, B, k).value, oracle::energy_k(a, b, p, k));
  }
}

TEST(EnergyProperty, MultiplicativeAndPolynomialMatchNestedLoops) {
  oracle::Gen g(42);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t p = i % 2 ? 101 : 257;
    const FieldCtx F(p);
    const auto a = g.subset(p, 0, 20), b = g.subset(p, 0, 20);
    const FSet A = oracle::to_set(F, a), B = oracle::to_set(F, b);
    ASSERT_EQ(mult_energy_k(A, B, 2).value, oracle::mult_energy4(a, b, p));
    const oracle::Quad f = g.quad(p);
    ASSERT_EQ(poly_energy(oracle::to_quad(F, f), A, B).value, oracle::poly_energy4(f, a, b, p));
  }
}

TEST(EnergyProperty, ExtensionFieldEnergyMatchesCodeLoops) {
  oracle::Gen g(43);
  const FieldCtx F = FieldCtx::extension(5, 2);
  for (int i = 0; i < 50; ++i) {
    const FSet A = random_set(F, g.range(1, 15), g.rng()), B = random_set(F, g.range(1, 15), g.rng());
    Count ref = 0;
    for (auto a1 : A)
      for (auto b1 : B)
        for (auto a2 : A)
          for (auto b2 : B) ref += F.sub_code(a1, b1) == F.sub_code(a2, b2);
    ASSERT_EQ(additive_energy(A, B).value, ref);
  }
}

TEST(EnergyProperty, ElementaryBounds) {
  oracle::Gen g(44);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t p = i % 3 == 0 ? 31 : 257;
    const FieldCtx F(p);
    const FSet A = oracle::to_set(F, g.subset(p, 1, 40)), B = oracle::to_set(F, g.subset(p, 1, 40));
    const Count na = A.size(), nb = B.size();
    const Count e = additive_energy(A, B).value;
    ASSERT_LE(e, na * nb * std::min(na, nb));
    ASSERT_LE(additive_energy(A).value, na * na * na);
    const auto f = oracle::to_quad(F, g.quad(p));
    const PolyImage img = poly_image(f, A, B);
    ASSERT_GE(poly_energy(f, A, B).value * img.image.size(), na * na * nb * nb);
    const RepHistogram h = rep_function(A, B, SetOp::sub);
    const Count m = h.max_count();
    ASSERT_LE(additive_energy_k(A, B, 4).value, e * m * m);
  }
}

TEST(EnergyProperty, SixTupleAgainstDirectCountAndReport) {
  oracle::Gen g(45);
  std::size_t failures = 0;
  for (int i = 0; i < 60; ++i) {
    const std::uint64_t p = std::vector<std::uint64_t>{11, 23, 37, 53}[i % 4];
    const FieldCtx F(p);
    oracle::Quad f = g.quad(p);
    while (!is_nondegenerate_quadratic(oracle::to_quad(F, f))) f = g.quad(p);
    auto u = g.subset(p, 1, 8), v = g.subset(p, 1, 8), w = g.subset(p, 1, 8);
    while (u.size() * v.size() * w.size() > p * p) u.pop_back();
    const BivariateQuadratic q = oracle::to_quad(F, f);
    Count ref = 0;
    for (auto u1 : u)
      for (auto v1 : v)
        for (auto w1 : w)
          for (auto u2 : u)
            for (auto v2 : v)
              for (auto w2 : w) ref += f(oracle::addm(u1, v1, p), w1, p) == f(oracle::addm(u2, v2, p), w2, p);
    const FSet U = oracle::to_set(F, u), V = oracle::to_set(F, v), W = oracle::to_set(F, w);
    ASSERT_EQ(six_tuple_count(shifted_ternary(q), U, V, W).value, ref);
    const BoundReport r = six_tuple_report(q, U, V, W);
    EXPECT_EQ(r.constant, 64.0);
    EXPECT_TRUE(r.hypothesis_flags.at("triple_product_le_p2"));
    EXPECT_FALSE(r.hard);
    failures += !r.pass;
  }
  // reported, not asserted; recorded for the log
  RecordProperty("six_tuple_report_failures", static_cast<int>(failures));
}

TEST(EnergyProperty, CauchySchwarzAndSubadditivity) {
  oracle::Gen g(46);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t p = i % 2 ? 61 : 257;
    const FieldCtx F(p);
    const FSet A = oracle::to_set(F, g.subset(p, 1, 30)), B = oracle::to_set(F, g.subset(p, 1, 30));
    for (SetOp op : {SetOp::add, SetOp::sub})
      ASSERT_TRUE(check_identity("cauchy_schwarz", IdentityInputs{{A, B}, op, std::nullopt}).pass);
    std::vector<FSet> parts;
    for (std::size_t k = g.range(1, 4); k > 0; --k) parts.push_back(oracle::to_set(F, g.subset(p, 1, 12)));
    const auto f = oracle::to_quad(F, g.quad(p));
    ASSERT_TRUE(check_identity("subadditivity", IdentityInputs{parts, SetOp::add, f}).pass);
  }
}

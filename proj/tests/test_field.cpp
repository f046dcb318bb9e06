#include <gtest/gtest.h>

#include <cmath>

#include "lowenergy/error.hpp"
#include "lowenergy/field.hpp"
#include "oracles.hpp"

using namespace lowenergy;

TEST(Field, InverseOfThreeModSeven) {
  const FieldCtx F(7);
  EXPECT_EQ(F.inv(F.from_int(3)).code, 5u);
}

TEST(Field, PowZeroIsOne) {
  const FieldCtx F(11);
  for (std::int64_t x = 1; x < 11; ++x) EXPECT_EQ(F.pow(F.from_int(x), 0), F.one());
}

TEST(Field, InverseOfGeneratorInF9) {
  const FieldCtx F(3, {1, 0, 1});  // t^2 + 1
  const FElem t = F.generator_t();
  // 2t, by exhaustive search
  FElem found = F.zero();
  for (std::uint64_t c = 1; c < 9; ++c)
    if (F.mul_code(t.code, c) == 1) found = F.elem(c);
  EXPECT_EQ(F.inv(t), found);
  EXPECT_EQ(F.coeffs(found), (std::vector<std::uint64_t>{0, 2}));
}

TEST(Field, Traces) {
  const FieldCtx F9(3, {1, 0, 1});
  EXPECT_EQ(F9.trace(F9.one()), 2u);
  EXPECT_EQ(F9.trace(F9.generator_t()), 0u);
  const FieldCtx F7(7);
  EXPECT_EQ(F7.trace(F7.from_int(5)), 5u);
}

TEST(Field, Characters) {
  const FieldCtx F7(7);
  const auto z = F7.additive_character(F7.zero());
  EXPECT_NEAR(z.real(), 1.0, 1e-15);
  EXPECT_NEAR(z.imag(), 0.0, 1e-15);
  std::complex<double> s = 0;
  for (std::uint64_t x = 0; x < 7; ++x) s += F7.e_p(x);
  EXPECT_LT(std::abs(s), 1e-12);
  const FieldCtx F5(5);
  EXPECT_NEAR(F5.e_p(1).real(), 0.309017, 1e-6);
  EXPECT_NEAR(F5.e_p(1).imag(), 0.951057, 1e-6);
}

TEST(Field, RejectsBadParameters) {
  EXPECT_THROW(FieldCtx(9), Error);
  EXPECT_THROW(FieldCtx(2), Error);
  EXPECT_THROW(FieldCtx(3, {2, 0, 1}), Error);  // t^2 + 2 = (t - 1)(t + 1)
  EXPECT_THROW(FieldCtx::extension(3, 5), Error);
}

TEST(Field, ContextMismatchIsAnError) {
  const FieldCtx a(7), b(11);
  try {
    a.add(a.one(), b.one());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CtxMismatch);
  }
  const FieldCtx a2(7);
  EXPECT_EQ(a.add(a.one(), a2.one()).code, 2u);
}

TEST(Field, DivisionByZero) {
  const FieldCtx F(13);
  try {
    F.inv(F.zero());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DivisionByZero);
  }
}

TEST(Field, IrreducibilityAgreesWithRootAndFactorScan) {
  // degree 2 and 3: irreducible iff no root; check every monic polynomial over F_5
  const std::uint64_t p = 5;
  for (unsigned n : {2u, 3u}) {
    std::vector<std::uint64_t> m(n + 1, 0);
    m[n] = 1;
    const std::uint64_t combos = n == 2 ? 25 : 125;
    for (std::uint64_t k = 0; k < combos; ++k) {
      std::uint64_t t = k;
      for (unsigned i = 0; i < n; ++i, t /= p) m[i] = t % p;
      bool root = false;
      for (std::uint64_t x = 0; x < p && !root; ++x) {
        std::uint64_t v = 0;
        for (unsigned i = n + 1; i-- > 0;) v = (v * x + m[i]) % p;
        root = v == 0;
      }
      EXPECT_EQ(is_irreducible(p, m), !root) << "k=" << k;
    }
  }
}

// ---------------------------------------------------------------- properties

TEST(FieldProperty, InverseExhaustive) {
  for (auto F : {FieldCtx(3), FieldCtx(1999), FieldCtx::extension(3, 2), FieldCtx::extension(5, 3),
                 FieldCtx::extension(3, 4), FieldCtx::extension(7, 2)}) {
    for (std::uint64_t x = 1; x < F.q(); ++x) ASSERT_EQ(F.mul_code(x, F.inv_code(x)), 1u) << F.describe() << " x=" << x;
  }
}

TEST(FieldProperty, InverseRandomized) {
  oracle::Gen g(11);
  const FieldCtx F(1000003);
  const FieldCtx E = FieldCtx::extension(101, 3);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t x = 1 + g.below(F.q() - 1);
    ASSERT_EQ(F.mul_code(x, F.inv_code(x)), 1u);
    ASSERT_EQ(F.inv_code(x), oracle::invm(x, F.p()));
    const std::uint64_t y = 1 + g.below(E.q() - 1);
    ASSERT_EQ(E.mul_code(y, E.inv_code(y)), 1u);
  }
}

TEST(FieldProperty, PrimeArithmeticMatchesIntegers) {
  oracle::Gen g(12);
  for (std::uint64_t p : {3ull, 101ull, 65537ull, 4294967291ull}) {
    const FieldCtx F(p);
    for (int i = 0; i < 500; ++i) {
      const std::uint64_t a = g.below(p), b = g.below(p), e = g.below(1000);
      ASSERT_EQ(F.add_code(a, b), oracle::addm(a, b, p));
      ASSERT_EQ(F.sub_code(a, b), oracle::subm(a, b, p));
      ASSERT_EQ(F.mul_code(a, b), oracle::mulm(a, b, p));
      ASSERT_EQ(F.pow_code(a, e), oracle::powm(a, e, p));
    }
  }
}

TEST(FieldProperty, TraceIsLinear) {
  oracle::Gen g(13);
  for (auto F : {FieldCtx::extension(3, 2), FieldCtx::extension(7, 3), FieldCtx::extension(5, 4)}) {
    for (int i = 0; i < 300; ++i) {
      const std::uint64_t a = g.below(F.p()), x = g.below(F.q()), y = g.below(F.q());
      const std::uint64_t lhs = F.trace_code(F.add_code(F.mul_code(a, x), y));
      const std::uint64_t rhs = (a * F.trace_code(x) + F.trace_code(y)) % F.p();
      ASSERT_EQ(lhs, rhs);
    }
  }
}

TEST(FieldProperty, TraceIsSumOfFrobeniusConjugates) {
  const FieldCtx F = FieldCtx::extension(5, 3);
  for (std::uint64_t x = 0; x < F.q(); ++x) {
    std::uint64_t s = 0, y = x;
    for (unsigned i = 0; i < F.n(); ++i, y = F.pow_code(y, F.p())) s = F.add_code(s, y);
    ASSERT_LT(s, F.p());
    ASSERT_EQ(s, F.trace_code(x));
  }
}

TEST(FieldProperty, CharacterSumOverFieldVanishes) {
  for (auto F : {FieldCtx(7), FieldCtx(9973), FieldCtx::extension(3, 2), FieldCtx::extension(11, 3),
                 FieldCtx::extension(3, 4), FieldCtx::extension(97, 2)}) {
    std::complex<double> s = 0;
    for (std::uint64_t x = 0; x < F.q(); ++x) s += F.additive_character(F.elem(x));
    EXPECT_LT(std::abs(s), 1e-9) << F.describe();
  }
}

TEST(FieldProperty, CharacterIsHomomorphism) {
  oracle::Gen g(14);
  const FieldCtx F = FieldCtx::extension(7, 2);
  for (int i = 0; i < 200; ++i) {
    const FElem x = F.elem(g.below(F.q())), y = F.elem(g.below(F.q()));
    const auto lhs = F.additive_character(F.add(x, y));
    const auto rhs = F.additive_character(x) * F.additive_character(y);
    ASSERT_LT(std::abs(lhs - rhs), 1e-12);
  }
}

#include <gtest/gtest.h>

#include "lowenergy/error.hpp"
#include "lowenergy/poly.hpp"
#include "oracles.hpp"

using namespace lowenergy;

namespace {

BivariateQuadratic quad(const FieldCtx& F, std::array<std::int64_t, 6> c) { return BivariateQuadratic::from_ints(F, c); }

}  // namespace

TEST(Poly, NondegenerateExamples) {
  const FieldCtx F7(7);
  EXPECT_TRUE(is_nondegenerate_quadratic(quad(F7, {0, 1, 0, 0, 0, 0})));   // xy
  EXPECT_FALSE(is_nondegenerate_quadratic(quad(F7, {1, 2, 1, 0, 0, 0})));  // (x + y)^2
  EXPECT_TRUE(is_nondegenerate_quadratic(quad(F7, {1, 2, 1, 1, 2, 0})));   // (x + y)^2 + x + 2y
  EXPECT_FALSE(is_nondegenerate_quadratic(quad(F7, {1, 0, 0, 3, 0, 1})));  // x^2 + 3x + 1 ignores y
  EXPECT_TRUE(is_nondegenerate_quadratic(quad(F7, {1, 0, 0, 0, 1, 0})));   // x^2 + y
}

TEST(Poly, RationalSufficientTest) {
  const FieldCtx F7(7), F11(11);
  EXPECT_EQ(rational_nondeg_sufficient(RationalFunction(UnivariatePoly::from_ints(F7, {0, 0, 1})), F7), NondegVerdict::pass);
  EXPECT_EQ(rational_nondeg_sufficient(RationalFunction(UnivariatePoly::from_ints(F7, {1, 3})), F7), NondegVerdict::fail);
  std::vector<std::uint64_t> x11(12, 0);
  x11[11] = 1;
  EXPECT_EQ(rational_nondeg_sufficient(RationalFunction(UnivariatePoly(F11, x11)), F11), NondegVerdict::unknown);
}

TEST(Poly, ParserRoundTrip) {
  const FieldCtx F(101);
  const auto f = parse_bivariate_quadratic("x^2+3*x*y+y^2+2*x+1", F);
  EXPECT_EQ(f.coeffs(), (BivariateQuadratic::Coeffs{1, 3, 1, 2, 0, 1}));
  const auto g = parse_bivariate_quadratic("(x+y)^2 - 4", F);
  EXPECT_EQ(g.coeffs(), (BivariateQuadratic::Coeffs{1, 2, 1, 0, 0, 97}));
  const auto h = parse_bivariate_quadratic("3x y + 205", F);
  EXPECT_EQ(h.coeffs(), (BivariateQuadratic::Coeffs{0, 3, 0, 0, 0, 3}));
  EXPECT_EQ(parse_univariate("x^2+1", F).to_string(), "x^2+1");
  EXPECT_THROW(parse_bivariate_quadratic("x^3", F), Error);
  EXPECT_THROW(parse_bivariate_quadratic("x+", F), Error);
  EXPECT_THROW(parse_bivariate_quadratic("t*x*y", F), Error);
  EXPECT_THROW(parse_univariate("x*y", F), Error);
}

TEST(Poly, ParserExtensionGenerator) {
  const FieldCtx F(3, {1, 0, 1});
  const auto f = parse_univariate("t*x^2 + 1", F);
  EXPECT_EQ(f.coeff(2), F.generator_t().code);
  EXPECT_EQ(f.eval_code(1), F.add_code(F.generator_t().code, 1));
}

TEST(Poly, RationalReduces) {
  const FieldCtx F(13);
  // (x^2 - 1) / (2x - 2) = (x + 1) / 2 after dividing out x - 1 and making h monic
  const auto f = parse_rational("(x^2-1)/(2*x-2)", F);
  EXPECT_EQ(f.denominator().degree(), 0);
  EXPECT_EQ(f.degree(), 1);
  EXPECT_EQ(*f.eval_code(3), 2u);
  const auto g = parse_rational("(x^2+1)/(x)", F);
  EXPECT_FALSE(g.eval_code(0).has_value());
  EXPECT_EQ(*g.eval_code(2), F.mul_code(5, F.inv_code(2)));
}

TEST(Poly, DivmodAndGcd) {
  const FieldCtx F(7);
  const auto a = UnivariatePoly::from_ints(F, {-1, 0, 0, 1});  // x^3 - 1
  const auto b = UnivariatePoly::from_ints(F, {-1, 1});       // x - 1
  const auto d = divmod(a, b);
  EXPECT_TRUE(d.remainder.is_zero());
  EXPECT_EQ(d.quotient.to_string(), "x^2+x+1");
  EXPECT_EQ(gcd(a, UnivariatePoly::from_ints(F, {-1, 0, 1})).to_string(), "x+6");
}

TEST(Poly, LinearFlag) {
  const FieldCtx F(7);
  EXPECT_THROW(BivariateQuadratic(F, {0, 0, 0, 1, 1, 0}), Error);
  EXPECT_FALSE(is_nondegenerate_quadratic(BivariateQuadratic(F, {0, 0, 0, 1, 1, 0}, true)));
}

// ---------------------------------------------------------------- properties

TEST(PolyProperty, NondegeneracyMatchesExhaustiveScan) {
  oracle::Gen g(21);
  for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
    const FieldCtx F(p);
    const int trials = p <= 7 ? 300 : 40;
    for (int i = 0; i < trials; ++i) {
      oracle::Quad f = g.quad(p);
      // bias toward perfect squares so the degenerate branch is exercised
      if (i % 3 == 0) {
        const std::uint64_t a = g.below(p), b = g.below(p), s = 1 + g.below(p - 1);
        f.q1 = oracle::mulm(s, oracle::mulm(a, a, p), p);
        f.q2 = oracle::mulm(s, oracle::mulm(2, oracle::mulm(a, b, p), p), p);
        f.q3 = oracle::mulm(s, oracle::mulm(b, b, p), p);
        if (i % 2 == 0) {
          const std::uint64_t k = g.below(p);
          f.l1 = oracle::mulm(k, a, p);
          f.l2 = oracle::mulm(k, b, p);
        }
        if (!(f.q1 || f.q2 || f.q3)) continue;
      }
      ASSERT_EQ(is_nondegenerate_quadratic(oracle::to_quad(F, f)), oracle::nondegenerate_exhaustive(f, p))
          << "p=" << p << " f=" << oracle::to_quad(F, f).to_string();
    }
  }
}

TEST(PolyProperty, SufficientTestNeverPassesExcludedFamily) {
  // a (g^p - g) + b x + c with deg g <= 2
  oracle::Gen g(22);
  for (std::uint64_t p : {3ull, 5ull, 7ull}) {
    const FieldCtx F(p);
    for (int i = 0; i < 200; ++i) {
      const UnivariatePoly gp(F, {g.below(p), g.below(p), g.below(p)});
      UnivariatePoly pw = UnivariatePoly::constant(F, 1);
      for (std::uint64_t k = 0; k < p; ++k) pw = pw * gp;
      const UnivariatePoly fam = UnivariatePoly::constant(F, g.below(p)) * (pw - gp) +
                                 UnivariatePoly(F, {g.below(p), g.below(p)});
      ASSERT_NE(rational_nondeg_sufficient(RationalFunction(fam), F), NondegVerdict::pass) << fam.to_string();
    }
  }
}

TEST(PolyProperty, EvalMatchesInteger) {
  oracle::Gen g(23);
  const std::uint64_t p = 1009;
  const FieldCtx F(p);
  for (int i = 0; i < 100; ++i) {
    const oracle::Quad f = g.quad(p);
    const auto q = oracle::to_quad(F, f);
    for (int j = 0; j < 50; ++j) {
      const std::uint64_t x = g.below(p), y = g.below(p);
      ASSERT_EQ(q.eval_code(x, y), f(x, y, p));
    }
    // the printed form parses back to the same polynomial
    ASSERT_EQ(parse_bivariate_quadratic(q.to_string(), F).coeffs(), q.coeffs()) << q.to_string();
  }
}

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lowenergy/field.hpp"

namespace lowenergy {

/// Polynomial in one variable over F_q; coefficients little-endian, trimmed so
/// that the leading coefficient is nonzero (the zero polynomial is empty).
class UnivariatePoly {
 public:
  explicit UnivariatePoly(FieldCtx ctx) : ctx_(std::move(ctx)) {}
  UnivariatePoly(FieldCtx ctx, std::vector<std::uint64_t> coeff_codes);
  /// Coefficients given as integers, reduced into the prime subfield.
  static UnivariatePoly from_ints(const FieldCtx& ctx, std::initializer_list<std::int64_t> coeffs);
  static UnivariatePoly constant(const FieldCtx& ctx, std::uint64_t code);
  static UnivariatePoly x(const FieldCtx& ctx);

  const FieldCtx& field() const noexcept { return ctx_; }
  const std::vector<std::uint64_t>& coeffs() const noexcept { return c_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  std::uint64_t coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  std::uint64_t leading() const noexcept { return c_.empty() ? 0 : c_.back(); }

  std::uint64_t eval_code(std::uint64_t x) const noexcept;
  FElem operator()(const FElem& x) const;

  UnivariatePoly monic() const;
  UnivariatePoly derivative() const;

  friend UnivariatePoly operator+(const UnivariatePoly& a, const UnivariatePoly& b);
  friend UnivariatePoly operator-(const UnivariatePoly& a, const UnivariatePoly& b);
  friend UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b);
  UnivariatePoly scaled(std::uint64_t code) const;
  UnivariatePoly pow(unsigned e) const;
  /// g(h(x)).
  UnivariatePoly compose(const UnivariatePoly& inner) const;
  friend bool operator==(const UnivariatePoly& a, const UnivariatePoly& b) {
    return a.ctx_ == b.ctx_ && a.c_ == b.c_;
  }

  std::string to_string() const;

 private:
  void trim();

  FieldCtx ctx_;
  std::vector<std::uint64_t> c_;
};

struct PolyDivision {
  UnivariatePoly quotient;
  UnivariatePoly remainder;
};

PolyDivision divmod(const UnivariatePoly& a, const UnivariatePoly& b);
/// Monic gcd; gcd(0, 0) = 0.
UnivariatePoly gcd(const UnivariatePoly& a, const UnivariatePoly& b);

/// f(x, y) = q1 x^2 + q2 xy + q3 y^2 + l1 x + l2 y + c over F_q.
class BivariateQuadratic {
 public:
  struct Coeffs {
    std::uint64_t q1 = 0, q2 = 0, q3 = 0, l1 = 0, l2 = 0, c = 0;
    friend bool operator==(const Coeffs&, const Coeffs&) = default;
  };

  /// Throws InvalidParams when the quadratic part vanishes unless `linear`.
  BivariateQuadratic(FieldCtx ctx, Coeffs coeffs, bool linear = false);
  /// Integer coefficients (q1, q2, q3, l1, l2, c), reduced mod p.
  static BivariateQuadratic from_ints(const FieldCtx& ctx, std::array<std::int64_t, 6> coeffs, bool linear = false);

  const FieldCtx& field() const noexcept { return ctx_; }
  const Coeffs& coeffs() const noexcept { return k_; }
  bool is_linear() const noexcept { return linear_; }

  std::uint64_t eval_code(std::uint64_t x, std::uint64_t y) const noexcept;
  FElem operator()(const FElem& x, const FElem& y) const;

  std::string to_string() const;

 private:
  FieldCtx ctx_;
  Coeffs k_;
  bool linear_;
};

/// f = g / h with gcd(g, h) = 1 and h monic; degree d = max(deg g, deg h).
class RationalFunction {
 public:
  RationalFunction(UnivariatePoly g, UnivariatePoly h);
  explicit RationalFunction(UnivariatePoly g);

  const FieldCtx& field() const noexcept { return g_.field(); }
  const UnivariatePoly& numerator() const noexcept { return g_; }
  const UnivariatePoly& denominator() const noexcept { return h_; }
  int degree() const noexcept { return std::max(g_.degree(), h_.degree()); }
  bool is_polynomial() const noexcept { return h_.degree() == 0; }

  /// Empty at poles.
  std::optional<std::uint64_t> eval_code(std::uint64_t x) const noexcept;

  std::string to_string() const;

 private:
  UnivariatePoly g_;
  UnivariatePoly h_;
};

/// Depends on both variables and is not g(ax + by) for a univariate g.
bool is_nondegenerate_quadratic(const BivariateQuadratic& f);

enum class NondegVerdict { pass, fail, unknown };

std::string_view to_string(NondegVerdict v) noexcept;

/// Sufficient test for f not in {a(g^p - g) + bx + c}: every member of that
/// family has degree <= 1 or degree >= p, so 2 <= d < p passes; f = bx + c
/// fails; anything else is unknown.
NondegVerdict rational_nondeg_sufficient(const RationalFunction& f, const FieldCtx& ctx);

/// Sparse polynomial in x, y, z; key = exponents (x, y, z), value = coefficient code.
using Monomial = std::array<unsigned, 3>;
using SparsePoly = std::map<Monomial, std::uint64_t>;

/// Parse literals like `x^2+3*x*y+y^2+2*x+1`, `(x+y)^2 - 4`, `3x`. Integers
/// are reduced into the prime subfield; `t` denotes the adjoined generator of
/// an extension field. Throws Parse on malformed input.
SparsePoly parse_polynomial(std::string_view text, const FieldCtx& ctx);

BivariateQuadratic to_bivariate_quadratic(const SparsePoly& f, const FieldCtx& ctx);
UnivariatePoly to_univariate(const SparsePoly& f, const FieldCtx& ctx);

BivariateQuadratic parse_bivariate_quadratic(std::string_view text, const FieldCtx& ctx);
UnivariatePoly parse_univariate(std::string_view text, const FieldCtx& ctx);
/// `g` or `(g)/(h)`.
RationalFunction parse_rational(std::string_view text, const FieldCtx& ctx);

}  // namespace lowenergy

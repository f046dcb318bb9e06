#include "lowenergy/poly.hpp"

#include <cctype>
#include <sstream>

#include "lowenergy/error.hpp"

namespace lowenergy {

// ---------------------------------------------------------------- univariate

UnivariatePoly::UnivariatePoly(FieldCtx ctx, std::vector<std::uint64_t> coeff_codes)
    : ctx_(std::move(ctx)), c_(std::move(coeff_codes)) {
  for (auto c : c_)
    if (c >= ctx_.q()) throw Error(Errc::InvalidParams, "polynomial coefficient out of range");
  trim();
}

UnivariatePoly UnivariatePoly::from_ints(const FieldCtx& ctx, std::initializer_list<std::int64_t> coeffs) {
  std::vector<std::uint64_t> c;
  for (auto v : coeffs) c.push_back(ctx.from_int(v).code);
  return UnivariatePoly(ctx, std::move(c));
}

UnivariatePoly UnivariatePoly::constant(const FieldCtx& ctx, std::uint64_t code) {
  return UnivariatePoly(ctx, {code});
}

UnivariatePoly UnivariatePoly::x(const FieldCtx& ctx) { return UnivariatePoly(ctx, {0, 1}); }

void UnivariatePoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::uint64_t UnivariatePoly::eval_code(std::uint64_t x) const noexcept {
  std::uint64_t acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = ctx_.add_code(ctx_.mul_code(acc, x), *it);
  return acc;
}

FElem UnivariatePoly::operator()(const FElem& x) const {
  ctx_.check(x);
  return FElem{eval_code(x.code), ctx_.id()};
}

UnivariatePoly UnivariatePoly::monic() const {
  if (c_.empty()) return *this;
  return scaled(ctx_.inv_code(c_.back()));
}

UnivariatePoly UnivariatePoly::derivative() const {
  std::vector<std::uint64_t> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(ctx_.mul_code(c_[i], ctx_.from_int(static_cast<std::int64_t>(i % ctx_.p())).code));
  return UnivariatePoly(ctx_, std::move(d));
}

UnivariatePoly UnivariatePoly::scaled(std::uint64_t code) const {
  std::vector<std::uint64_t> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = ctx_.mul_code(c_[i], code);
  return UnivariatePoly(ctx_, std::move(r));
}

UnivariatePoly operator+(const UnivariatePoly& a, const UnivariatePoly& b) {
  if (!(a.ctx_ == b.ctx_)) throw Error(Errc::CtxMismatch, "polynomials over different fields");
  std::vector<std::uint64_t> r(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.ctx_.add_code(a.coeff(i), b.coeff(i));
  return UnivariatePoly(a.ctx_, std::move(r));
}

UnivariatePoly operator-(const UnivariatePoly& a, const UnivariatePoly& b) {
  if (!(a.ctx_ == b.ctx_)) throw Error(Errc::CtxMismatch, "polynomials over different fields");
  std::vector<std::uint64_t> r(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.ctx_.sub_code(a.coeff(i), b.coeff(i));
  return UnivariatePoly(a.ctx_, std::move(r));
}

UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b) {
  if (!(a.ctx_ == b.ctx_)) throw Error(Errc::CtxMismatch, "polynomials over different fields");
  if (a.is_zero() || b.is_zero()) return UnivariatePoly(a.ctx_);
  const auto& F = a.ctx_;
  std::vector<std::uint64_t> r(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = F.add_code(r[i + j], F.mul_code(a.c_[i], b.c_[j]));
  return UnivariatePoly(F, std::move(r));
}

UnivariatePoly UnivariatePoly::pow(unsigned e) const {
  UnivariatePoly r = constant(ctx_, 1);
  UnivariatePoly base = *this;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

UnivariatePoly UnivariatePoly::compose(const UnivariatePoly& inner) const {
  UnivariatePoly acc(ctx_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(ctx_, *it);
  return acc;
}

std::string UnivariatePoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || c_[i] != 1) os << c_[i] << (i ? "*" : "");
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

PolyDivision divmod(const UnivariatePoly& a, const UnivariatePoly& b) {
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  if (!(a.field() == b.field())) throw Error(Errc::CtxMismatch, "polynomials over different fields");
  const auto& F = a.field();
  std::vector<std::uint64_t> rem = a.coeffs();
  const auto& d = b.coeffs();
  if (rem.size() < d.size()) return {UnivariatePoly(F), a};
  std::vector<std::uint64_t> quot(rem.size() - d.size() + 1, 0);
  const std::uint64_t inv_lead = F.inv_code(d.back());
  for (std::size_t k = quot.size(); k-- > 0;) {
    const std::uint64_t factor = F.mul_code(rem[k + d.size() - 1], inv_lead);
    quot[k] = factor;
    if (factor == 0) continue;
    for (std::size_t i = 0; i < d.size(); ++i) rem[k + i] = F.sub_code(rem[k + i], F.mul_code(factor, d[i]));
  }
  return {UnivariatePoly(F, std::move(quot)), UnivariatePoly(F, std::move(rem))};
}

UnivariatePoly gcd(const UnivariatePoly& a, const UnivariatePoly& b) {
  UnivariatePoly x = a, y = b;
  while (!y.is_zero()) {
    UnivariatePoly r = divmod(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

// ----------------------------------------------------------------- bivariate

BivariateQuadratic::BivariateQuadratic(FieldCtx ctx, Coeffs coeffs, bool linear)
    : ctx_(std::move(ctx)), k_(coeffs), linear_(linear) {
  for (auto c : {k_.q1, k_.q2, k_.q3, k_.l1, k_.l2, k_.c})
    if (c >= ctx_.q()) throw Error(Errc::InvalidParams, "coefficient out of range");
  const bool quad_zero = k_.q1 == 0 && k_.q2 == 0 && k_.q3 == 0;
  if (quad_zero && !linear_) throw Error(Errc::InvalidParams, "quadratic part vanishes; flag the polynomial as linear");
  if (!quad_zero && linear_) throw Error(Errc::InvalidParams, "polynomial flagged linear has a quadratic part");
}

BivariateQuadratic BivariateQuadratic::from_ints(const FieldCtx& ctx, std::array<std::int64_t, 6> v, bool linear) {
  return BivariateQuadratic(ctx,
                            Coeffs{ctx.from_int(v[0]).code, ctx.from_int(v[1]).code, ctx.from_int(v[2]).code,
                                   ctx.from_int(v[3]).code, ctx.from_int(v[4]).code, ctx.from_int(v[5]).code},
                            linear);
}

std::uint64_t BivariateQuadratic::eval_code(std::uint64_t x, std::uint64_t y) const noexcept {
  const auto& F = ctx_;
  // (q1 x + q2 y + l1) x + (q3 y + l2) y + c
  const std::uint64_t ax = F.add_code(F.add_code(F.mul_code(k_.q1, x), F.mul_code(k_.q2, y)), k_.l1);
  const std::uint64_t by = F.add_code(F.mul_code(k_.q3, y), k_.l2);
  return F.add_code(F.add_code(F.mul_code(ax, x), F.mul_code(by, y)), k_.c);
}

FElem BivariateQuadratic::operator()(const FElem& x, const FElem& y) const {
  ctx_.check(x);
  ctx_.check(y);
  return FElem{eval_code(x.code, y.code), ctx_.id()};
}

std::string BivariateQuadratic::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](std::uint64_t c, const char* mono) {
    if (c == 0) return;
    if (!first) os << "+";
    first = false;
    if (*mono == '\0') {
      os << c;
    } else {
      if (c != 1) os << c << "*";
      os << mono;
    }
  };
  term(k_.q1, "x^2");
  term(k_.q2, "x*y");
  term(k_.q3, "y^2");
  term(k_.l1, "x");
  term(k_.l2, "y");
  term(k_.c, "");
  if (first) os << "0";
  return os.str();
}

bool is_nondegenerate_quadratic(const BivariateQuadratic& f) {
  const auto& F = f.field();
  const auto& k = f.coeffs();
  const bool depends_x = k.q1 != 0 || k.q2 != 0 || k.l1 != 0;
  const bool depends_y = k.q3 != 0 || k.q2 != 0 || k.l2 != 0;
  if (!depends_x || !depends_y) return false;
  if (k.q1 == 0 && k.q2 == 0 && k.q3 == 0) return false;  // linear, hence g(l1 x + l2 y)
  const std::uint64_t four = F.from_int(4).code;
  const std::uint64_t disc_lhs = F.mul_code(k.q2, k.q2);
  const std::uint64_t disc_rhs = F.mul_code(four, F.mul_code(k.q1, k.q3));
  if (disc_lhs != disc_rhs) return true;
  // quadratic part is lambda (a x + b y)^2; find (a, b)
  std::uint64_t a = 0, b = 1;
  if (k.q1 != 0) {
    a = 1;
    b = F.mul_code(k.q2, F.inv_code(F.mul_code(F.from_int(2).code, k.q1)));
  }
  // linear part proportional to (a, b) iff l1 b - l2 a = 0
  return F.sub_code(F.mul_code(k.l1, b), F.mul_code(k.l2, a)) != 0;
}

// ------------------------------------------------------------------ rational

RationalFunction::RationalFunction(UnivariatePoly g, UnivariatePoly h) : g_(std::move(g)), h_(std::move(h)) {
  if (h_.is_zero()) throw Error(Errc::DivisionByZero, "rational function with zero denominator");
  if (!(g_.field() == h_.field())) throw Error(Errc::CtxMismatch, "numerator and denominator over different fields");
  UnivariatePoly common = gcd(g_, h_);
  if (common.degree() > 0) {
    g_ = divmod(g_, common).quotient;
    h_ = divmod(h_, common).quotient;
  }
  const std::uint64_t inv_lead = h_.field().inv_code(h_.leading());
  g_ = g_.scaled(inv_lead);
  h_ = h_.scaled(inv_lead);
}

RationalFunction::RationalFunction(UnivariatePoly g)
    : RationalFunction(g, UnivariatePoly::constant(g.field(), 1)) {}

std::optional<std::uint64_t> RationalFunction::eval_code(std::uint64_t x) const noexcept {
  const std::uint64_t den = h_.eval_code(x);
  if (den == 0) return std::nullopt;
  const auto& F = g_.field();
  return F.mul_code(g_.eval_code(x), F.inv_code(den));
}

std::string RationalFunction::to_string() const {
  if (is_polynomial()) return g_.to_string();
  return "(" + g_.to_string() + ")/(" + h_.to_string() + ")";
}

std::string_view to_string(NondegVerdict v) noexcept {
  switch (v) {
    case NondegVerdict::pass: return "pass";
    case NondegVerdict::fail: return "fail";
    case NondegVerdict::unknown: return "unknown";
  }
  return "unknown";
}

NondegVerdict rational_nondeg_sufficient(const RationalFunction& f, const FieldCtx& ctx) {
  if (!(f.field() == ctx)) throw Error(Errc::CtxMismatch, "rational function over a different field");
  if (f.is_polynomial() && f.numerator().degree() <= 1) return NondegVerdict::fail;
  const auto d = static_cast<std::uint64_t>(f.degree());
  if (d >= 2 && d < ctx.p()) return NondegVerdict::pass;
  return NondegVerdict::unknown;
}

// -------------------------------------------------------------------- parser

namespace {

SparsePoly sp_add(SparsePoly a, const SparsePoly& b, const FieldCtx& F, bool negate) {
  for (const auto& [m, c] : b) {
    auto& slot = a[m];
    slot = negate ? F.sub_code(slot, c) : F.add_code(slot, c);
    if (slot == 0) a.erase(m);
  }
  return a;
}

SparsePoly sp_mul(const SparsePoly& a, const SparsePoly& b, const FieldCtx& F) {
  SparsePoly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
      auto& slot = r[m];
      slot = F.add_code(slot, F.mul_code(ca, cb));
      if (slot == 0) r.erase(m);
    }
  return r;
}

SparsePoly sp_const(std::uint64_t code) {
  SparsePoly r;
  if (code != 0) r[{0, 0, 0}] = code;
  return r;
}

class Parser {
 public:
  Parser(std::string_view text, const FieldCtx& F) : s_(text), F_(F) {}

  SparsePoly parse() {
    SparsePoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::Parse, why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  SparsePoly expr() {
    SparsePoly acc;
    bool negate = false;
    char c = peek();
    if (c == '+' || c == '-') {
      negate = c == '-';
      ++pos_;
    }
    acc = sp_add(acc, term(), F_, negate);
    for (;;) {
      c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      acc = sp_add(acc, term(), F_, c == '-');
    }
    return acc;
  }

  bool starts_factor(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == 'y' || c == 'z' || c == 't' || c == '(';
  }

  SparsePoly term() {
    SparsePoly acc = power();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = sp_mul(acc, power(), F_);
      } else if (starts_factor(c)) {
        acc = sp_mul(acc, power(), F_);
      } else {
        break;
      }
    }
    return acc;
  }

  std::uint64_t integer_exponent() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected exponent");
    std::uint64_t e = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      e = e * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
      if (e > 1'000'000) fail("exponent too large");
      ++pos_;
    }
    return e;
  }

  SparsePoly power() {
    SparsePoly base = atom();
    if (peek() == '^') {
      ++pos_;
      std::uint64_t e = integer_exponent();
      SparsePoly r = sp_const(1);
      SparsePoly b = base;
      while (e) {
        if (e & 1) r = sp_mul(r, b, F_);
        e >>= 1;
        if (e) b = sp_mul(b, b, F_);
      }
      return r;
    }
    return base;
  }

  SparsePoly atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      SparsePoly inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = (v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0')) % F_.p();
        ++pos_;
      }
      return sp_const(v);
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      Monomial m{0, 0, 0};
      m[static_cast<std::size_t>(c - 'x')] = 1;
      return SparsePoly{{m, 1}};
    }
    if (c == 't') {
      if (F_.is_prime_field()) fail("'t' is only meaningful over an extension field");
      ++pos_;
      return sp_const(F_.generator_t().code);
    }
    fail(c == '\0' ? "unexpected end of input" : std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  const FieldCtx& F_;
  std::size_t pos_ = 0;
};

}  // namespace

SparsePoly parse_polynomial(std::string_view text, const FieldCtx& ctx) { return Parser(text, ctx).parse(); }

BivariateQuadratic to_bivariate_quadratic(const SparsePoly& f, const FieldCtx& ctx) {
  BivariateQuadratic::Coeffs k;
  for (const auto& [m, c] : f) {
    if (m[2] != 0) throw Error(Errc::Parse, "bivariate polynomial must not involve z");
    const unsigned deg = m[0] + m[1];
    if (deg > 2) throw Error(Errc::Parse, "bivariate polynomial of degree > 2");
    if (m[0] == 2) k.q1 = c;
    else if (m[0] == 1 && m[1] == 1) k.q2 = c;
    else if (m[1] == 2) k.q3 = c;
    else if (m[0] == 1) k.l1 = c;
    else if (m[1] == 1) k.l2 = c;
    else k.c = c;
  }
  const bool linear = k.q1 == 0 && k.q2 == 0 && k.q3 == 0;
  return BivariateQuadratic(ctx, k, linear);
}

UnivariatePoly to_univariate(const SparsePoly& f, const FieldCtx& ctx) {
  std::vector<std::uint64_t> c;
  for (const auto& [m, v] : f) {
    if (m[1] != 0 || m[2] != 0) throw Error(Errc::Parse, "univariate polynomial must only involve x");
    if (c.size() <= m[0]) c.resize(m[0] + 1, 0);
    c[m[0]] = v;
  }
  return UnivariatePoly(ctx, std::move(c));
}

BivariateQuadratic parse_bivariate_quadratic(std::string_view text, const FieldCtx& ctx) {
  return to_bivariate_quadratic(parse_polynomial(text, ctx), ctx);
}

UnivariatePoly parse_univariate(std::string_view text, const FieldCtx& ctx) {
  return to_univariate(parse_polynomial(text, ctx), ctx);
}

RationalFunction parse_rational(std::string_view text, const FieldCtx& ctx) {
  // split at a top-level '/'
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    else if (c == '/' && depth == 0) {
      return RationalFunction(parse_univariate(text.substr(0, i), ctx), parse_univariate(text.substr(i + 1), ctx));
    }
  }
  return RationalFunction(parse_univariate(text, ctx));
}

}  // namespace lowenergy

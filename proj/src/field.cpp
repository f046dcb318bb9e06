#include "lowenergy/field.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>
#include <utility>

#include "lowenergy/error.hpp"

namespace lowenergy {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::CtxMismatch: return "CtxMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::EmptyDenominator: return "EmptyDenominator";
    case Errc::InvalidField: return "InvalidField";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::InvalidInputs: return "InvalidInputs";
    case Errc::TooSmall: return "TooSmall";
    case Errc::TooLarge: return "TooLarge";
    case Errc::Unsupported: return "Unsupported";
    case Errc::Degenerate: return "Degenerate";
    case Errc::InsufficientNondegeneracy: return "InsufficientNondegeneracy";
    case Errc::SizeImbalance: return "SizeImbalance";
    case Errc::NotForwardInvariant: return "NotForwardInvariant";
    case Errc::UnknownCheckName: return "UnknownCheckName";
    case Errc::Parse: return "Parse";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Poly = std::vector<u64>;  // little-endian over F_p, trimmed

constexpr u64 kMaxPrime = u64{1} << 32;
constexpr u64 kRootTableLimit = u64{1} << 22;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// f mod m, m monic
Poly poly_mod(Poly f, const Poly& m, u64 p) {
  trim(f);
  const std::size_t dm = m.size() - 1;
  while (f.size() > dm && !f.empty()) {
    const u64 lead = f.back();
    const std::size_t shift = f.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      f[shift + i] = (f[shift + i] + p - mulmod(lead, m[i], p)) % p;
    }
    trim(f);
  }
  return f;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, u64 e, const Poly& m, u64 p) {
  Poly r{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic, then a mod b
    const u64 inv_lead = powmod(b.back(), p - 2, p);
    for (auto& c : b) c = mulmod(c, inv_lead, p);
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

u64 fingerprint(u64 p, const Poly& modulus) {
  u64 h = 1469598103934665603ULL;
  auto mix = [&h](u64 v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  mix(p);
  mix(modulus.size());
  for (u64 c : modulus) mix(c);
  return h;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (u64 d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % d == 0) return n == d;
  }
  // deterministic Miller-Rabin for 64-bit inputs
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_irreducible(std::uint64_t p, std::span<const std::uint64_t> monic) {
  Poly m(monic.begin(), monic.end());
  trim(m);
  if (m.size() < 2 || m.back() != 1) return false;
  const unsigned n = static_cast<unsigned>(m.size() - 1);
  if (n == 1) return true;
  const Poly t{0, 1};
  // frob[k] = t^{p^k} mod m
  std::vector<Poly> frob{poly_mod(t, m, p)};
  for (unsigned k = 1; k <= n; ++k) frob.push_back(poly_powmod(frob.back(), p, m, p));
  auto minus_t = [&](Poly f) {
    f.resize(std::max<std::size_t>(f.size(), 2), 0);
    f[1] = (f[1] + p - 1) % p;
    trim(f);
    return f;
  };
  if (!minus_t(frob[n]).empty()) return false;
  for (unsigned r = 2; r <= n; ++r) {
    if (n % r != 0 || !is_prime(r)) continue;
    Poly g = poly_gcd(m, minus_t(frob[n / r]), p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::shared_ptr<const FieldCtx::Data> FieldCtx::build(std::uint64_t p, std::vector<std::uint64_t> modulus) {
  if (p == 2) throw Error(Errc::InvalidField, "characteristic 2 is not supported");
  if (!is_prime(p)) throw Error(Errc::InvalidField, "modulus " + std::to_string(p) + " is not prime");
  if (p >= kMaxPrime) throw Error(Errc::InvalidField, "p must be below 2^32");
  auto d = std::make_shared<Data>();
  d->p = p;
  if (!modulus.empty()) {
    if (modulus.size() < 3 || modulus.size() > kMaxDegree + 1)
      throw Error(Errc::InvalidField, "extension degree must be in [2, 4]");
    for (u64 c : modulus)
      if (c >= p) throw Error(Errc::InvalidField, "modulus coefficient not reduced mod p");
    if (modulus.back() != 1) throw Error(Errc::InvalidField, "modulus polynomial must be monic");
    if (!is_irreducible(p, modulus)) throw Error(Errc::InvalidField, "modulus polynomial is reducible");
    d->n = static_cast<unsigned>(modulus.size() - 1);
  }
  d->pow_p.push_back(1);
  for (unsigned i = 1; i <= d->n; ++i) {
    const u128 next = static_cast<u128>(d->pow_p.back()) * p;
    if (next >> 63) throw Error(Errc::InvalidField, "q = p^n does not fit in 63 bits");
    d->pow_p.push_back(static_cast<u64>(next));
  }
  d->q = d->pow_p[d->n];
  d->modulus = std::move(modulus);
  d->id = fingerprint(p, d->modulus);
  if (p <= kRootTableLimit) {
    d->roots.resize(p);
    for (u64 k = 0; k < p; ++k) {
      d->roots[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p));
    }
  }
  return d;
}

FieldCtx::FieldCtx(std::uint64_t p) : d_(build(p, {})) {}

FieldCtx::FieldCtx(std::uint64_t p, std::vector<std::uint64_t> modulus) : d_(build(p, std::move(modulus))) {
  if (d_->n == 1) throw Error(Errc::InvalidField, "use FieldCtx(p) for prime fields");
}

FieldCtx FieldCtx::extension(std::uint64_t p, unsigned n) {
  if (n == 1) return FieldCtx(p);
  if (n < 1 || n > kMaxDegree) throw Error(Errc::InvalidField, "extension degree must be in [1, 4]");
  if (p == 2 || !is_prime(p) || p >= kMaxPrime) return FieldCtx(p);  // throws with the right message
  // scan monic polynomials by the integer encoding of their low coefficients
  u64 count = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (count > (u64{1} << 62) / p) throw Error(Errc::InvalidField, "q = p^n too large");
    count *= p;
  }
  for (u64 code = 0; code < count; ++code) {
    Poly m(n + 1, 0);
    u64 c = code;
    for (unsigned i = 0; i < n; ++i) {
      m[i] = c % p;
      c /= p;
    }
    m[n] = 1;
    if (m[0] == 0) continue;
    if (is_irreducible(p, m)) return FieldCtx(p, std::move(m));
  }
  throw Error(Errc::Internal, "no irreducible polynomial found");
}

std::string FieldCtx::describe() const {
  std::ostringstream os;
  os << "F_" << d_->p;
  if (d_->n > 1) {
    os << "^" << d_->n << " mod=";
    for (std::size_t i = 0; i < d_->modulus.size(); ++i) os << (i ? "," : "") << d_->modulus[i];
  }
  return os.str();
}

void FieldCtx::check(const FElem& x) const {
  if (x.ctx != d_->id) throw Error(Errc::CtxMismatch, "element does not belong to " + describe());
}

FElem FieldCtx::elem(std::uint64_t code) const {
  if (code >= d_->q) throw Error(Errc::InvalidParams, "encoding " + std::to_string(code) + " out of range for " + describe());
  return FElem{code, d_->id};
}

FElem FieldCtx::from_int(std::int64_t value) const {
  const auto p = static_cast<std::int64_t>(d_->p);
  std::int64_t r = value % p;
  if (r < 0) r += p;
  return FElem{static_cast<u64>(r), d_->id};
}

FElem FieldCtx::from_coeffs(std::span<const std::uint64_t> coeffs) const {
  if (coeffs.size() > d_->n) throw Error(Errc::InvalidParams, "too many coefficients");
  u64 code = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] >= d_->p) throw Error(Errc::InvalidParams, "coefficient not reduced mod p");
    code += coeffs[i] * d_->pow_p[i];
  }
  return FElem{code, d_->id};
}

std::vector<std::uint64_t> FieldCtx::coeffs(const FElem& x) const {
  check(x);
  std::vector<u64> out(d_->n);
  u64 c = x.code;
  for (unsigned i = 0; i < d_->n; ++i) {
    out[i] = c % d_->p;
    c /= d_->p;
  }
  return out;
}

FElem FieldCtx::generator_t() const {
  if (d_->n == 1) throw Error(Errc::Unsupported, "prime field has no adjoined element t");
  return FElem{d_->p, d_->id};
}

std::uint64_t FieldCtx::add_code(std::uint64_t a, std::uint64_t b) const noexcept {
  const u64 p = d_->p;
  if (d_->n == 1) {
    const u64 s = a + b;
    return s >= p ? s - p : s;
  }
  u64 r = 0;
  for (unsigned i = 0; i < d_->n; ++i) {
    u64 s = a % p + b % p;
    if (s >= p) s -= p;
    r += s * d_->pow_p[i];
    a /= p;
    b /= p;
  }
  return r;
}

std::uint64_t FieldCtx::neg_code(std::uint64_t a) const noexcept {
  const u64 p = d_->p;
  if (d_->n == 1) return a == 0 ? 0 : p - a;
  u64 r = 0;
  for (unsigned i = 0; i < d_->n; ++i) {
    const u64 c = a % p;
    r += (c == 0 ? 0 : p - c) * d_->pow_p[i];
    a /= p;
  }
  return r;
}

std::uint64_t FieldCtx::sub_code(std::uint64_t a, std::uint64_t b) const noexcept {
  if (d_->n == 1) return a >= b ? a - b : a + d_->p - b;
  return add_code(a, neg_code(b));
}

std::uint64_t FieldCtx::mul_code(std::uint64_t a, std::uint64_t b) const noexcept {
  const u64 p = d_->p;
  if (d_->n == 1) return mulmod(a, b, p);
  const unsigned n = d_->n;
  std::array<u64, kMaxDegree> x{}, y{};
  for (unsigned i = 0; i < n; ++i) {
    x[i] = a % p;
    y[i] = b % p;
    a /= p;
    b /= p;
  }
  std::array<u64, 2 * kMaxDegree - 1> z{};
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) z[i + j] = (z[i + j] + mulmod(x[i], y[j], p)) % p;
  const auto& m = d_->modulus;
  for (unsigned k = 2 * n - 2; k >= n; --k) {
    const u64 lead = z[k];
    if (lead == 0) continue;
    z[k] = 0;
    for (unsigned i = 0; i < n; ++i) z[k - n + i] = (z[k - n + i] + p - mulmod(lead, m[i], p)) % p;
  }
  u64 r = 0;
  for (unsigned i = 0; i < n; ++i) r += z[i] * d_->pow_p[i];
  return r;
}

std::uint64_t FieldCtx::pow_code(std::uint64_t a, std::uint64_t e) const noexcept {
  if (d_->n == 1) return powmod(a, e, d_->p);
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul_code(r, a);
    a = mul_code(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t FieldCtx::inv_code(std::uint64_t a) const noexcept {
  if (d_->n == 1) {
    // extended Euclid on (a, p)
    std::int64_t t = 0, new_t = 1;
    auto r = static_cast<std::int64_t>(d_->p), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
      const std::int64_t quot = r / new_r;
      std::tie(t, new_t) = std::pair{new_t, t - quot * new_t};
      std::tie(r, new_r) = std::pair{new_r, r - quot * new_r};
    }
    if (t < 0) t += static_cast<std::int64_t>(d_->p);
    return static_cast<u64>(t);
  }
  return pow_code(a, d_->q - 2);
}

std::uint64_t FieldCtx::trace_code(std::uint64_t a) const noexcept {
  if (d_->n == 1) return a;
  u64 sum = 0;
  u64 term = a;
  for (unsigned i = 0; i < d_->n; ++i) {
    sum = add_code(sum, term);
    term = pow_code(term, d_->p);
  }
  return sum;  // lies in F_p, so the encoding is the residue itself
}

FElem FieldCtx::add(const FElem& a, const FElem& b) const {
  check(a);
  check(b);
  return FElem{add_code(a.code, b.code), d_->id};
}

FElem FieldCtx::sub(const FElem& a, const FElem& b) const {
  check(a);
  check(b);
  return FElem{sub_code(a.code, b.code), d_->id};
}

FElem FieldCtx::neg(const FElem& a) const {
  check(a);
  return FElem{neg_code(a.code), d_->id};
}

FElem FieldCtx::mul(const FElem& a, const FElem& b) const {
  check(a);
  check(b);
  return FElem{mul_code(a.code, b.code), d_->id};
}

FElem FieldCtx::inv(const FElem& a) const {
  check(a);
  if (a.code == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  return FElem{inv_code(a.code), d_->id};
}

FElem FieldCtx::div(const FElem& a, const FElem& b) const { return mul(a, inv(b)); }

FElem FieldCtx::pow(const FElem& a, std::uint64_t e) const {
  check(a);
  return FElem{pow_code(a.code, e), d_->id};
}

std::uint64_t FieldCtx::trace(const FElem& x) const {
  check(x);
  const u64 t = trace_code(x.code);
  if (t >= d_->p) throw Error(Errc::Internal, "trace left the prime field");
  return t;
}

std::complex<double> FieldCtx::e_p(std::uint64_t k) const {
  k %= d_->p;
  if (!d_->roots.empty()) return d_->roots[k];
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d_->p));
}

std::complex<double> FieldCtx::additive_character(const FElem& x) const { return e_p(trace(x)); }

}  // namespace lowenergy

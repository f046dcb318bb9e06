#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace lowenergy {

/// An element of some FieldCtx. `code` is the canonical integer encoding:
/// the little-endian coefficients c_0 + c_1 p + ... + c_{n-1} p^{n-1} of the
/// polynomial representative. `ctx` is the fingerprint of the owning field.
struct FElem {
  std::uint64_t code = 0;
  std::uint64_t ctx = 0;

  friend bool operator==(const FElem&, const FElem&) = default;
};

/// The finite field F_q, q = p^n, with p an odd prime and 1 <= n <= 4.
///
/// Extension fields are F_p[t]/(m(t)) for a monic irreducible m of degree n;
/// irreducibility is verified at construction. The context is an immutable,
/// cheaply copyable handle. Two contexts built from the same (p, m) are the
/// same field and their elements mix freely; anything else is CtxMismatch.
///
/// The `*_code` members operate on raw encodings without context checks and
/// are meant for inner loops that already validated their operands.
class FieldCtx {
 public:
  static constexpr unsigned kMaxDegree = 4;

  /// Prime field F_p.
  explicit FieldCtx(std::uint64_t p);
  /// F_p[t]/(modulus); `modulus` is little-endian and monic of degree n
  /// (n + 1 entries). A single entry {1} is rejected; use the prime ctor.
  FieldCtx(std::uint64_t p, std::vector<std::uint64_t> modulus);
  /// F_{p^n} using the smallest monic irreducible of degree n in encoding order.
  static FieldCtx extension(std::uint64_t p, unsigned n);

  std::uint64_t p() const noexcept { return d_->p; }
  unsigned n() const noexcept { return d_->n; }
  std::uint64_t q() const noexcept { return d_->q; }
  std::uint64_t id() const noexcept { return d_->id; }
  bool is_prime_field() const noexcept { return d_->n == 1; }
  /// Little-endian monic modulus; empty for a prime field.
  const std::vector<std::uint64_t>& modulus() const noexcept { return d_->modulus; }

  std::string describe() const;

  FElem elem(std::uint64_t code) const;
  FElem from_int(std::int64_t value) const;
  FElem from_coeffs(std::span<const std::uint64_t> coeffs) const;
  std::vector<std::uint64_t> coeffs(const FElem& x) const;
  FElem zero() const noexcept { return FElem{0, d_->id}; }
  FElem one() const noexcept { return FElem{1, d_->id}; }
  /// The element t (the class of the indeterminate); requires n > 1.
  FElem generator_t() const;

  FElem add(const FElem& a, const FElem& b) const;
  FElem sub(const FElem& a, const FElem& b) const;
  FElem neg(const FElem& a) const;
  FElem mul(const FElem& a, const FElem& b) const;
  FElem inv(const FElem& a) const;
  FElem div(const FElem& a, const FElem& b) const;
  FElem pow(const FElem& a, std::uint64_t e) const;

  /// Tr(x) = x + x^p + ... + x^{p^{n-1}}, returned as a residue in [0, p).
  std::uint64_t trace(const FElem& x) const;
  /// psi(x) = e_p(Tr(x)).
  std::complex<double> additive_character(const FElem& x) const;
  /// e_p(k) = exp(2 pi i k / p) for a residue k.
  std::complex<double> e_p(std::uint64_t k) const;

  /// Throws CtxMismatch unless x belongs to this field.
  void check(const FElem& x) const;
  bool same_field(const FieldCtx& other) const noexcept { return d_->id == other.d_->id; }
  friend bool operator==(const FieldCtx& a, const FieldCtx& b) noexcept { return a.same_field(b); }

  std::uint64_t add_code(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t sub_code(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t neg_code(std::uint64_t a) const noexcept;
  std::uint64_t mul_code(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t pow_code(std::uint64_t a, std::uint64_t e) const noexcept;
  /// Requires a != 0.
  std::uint64_t inv_code(std::uint64_t a) const noexcept;
  std::uint64_t trace_code(std::uint64_t a) const noexcept;

 private:
  struct Data {
    std::uint64_t p = 0;
    unsigned n = 1;
    std::uint64_t q = 0;
    std::uint64_t id = 0;
    std::vector<std::uint64_t> modulus;
    std::vector<std::uint64_t> pow_p;  // p^i, i = 0..n
    std::vector<std::complex<double>> roots;  // e_p(k) for k < p, when p is small enough
  };

  explicit FieldCtx(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  static std::shared_ptr<const Data> build(std::uint64_t p, std::vector<std::uint64_t> modulus);

  std::shared_ptr<const Data> d_;
};

bool is_prime(std::uint64_t n) noexcept;

/// Irreducibility of a monic little-endian polynomial over F_p by Rabin's
/// test: m | t^{p^n} - t and gcd(t^{p^{n/r}} - t, m) = 1 for every prime r | n.
bool is_irreducible(std::uint64_t p, std::span<const std::uint64_t> monic);

}  // namespace lowenergy

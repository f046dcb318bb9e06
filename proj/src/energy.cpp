#include "lowenergy/energy.hpp"

#include <algorithm>
#include <cmath>

#include "lowenergy/error.hpp"

namespace lowenergy {

std::string_view to_string(EnergyMethod m) noexcept {
  switch (m) {
    case EnergyMethod::naive: return "naive";
    case EnergyMethod::histogram: return "histogram";
    case EnergyMethod::convolution: return "convolution";
  }
  return "?";
}

Count moment(const RepHistogram& h, unsigned k) {
  Count s = 0;
  for (const auto& e : h.entries) s = checked_add(s, checked_pow(e.second, k));
  return s;
}

EnergyValue additive_energy_k(const FSet& a, const FSet& b, unsigned k) {
  require_same_field(a, b);
  if (k == 0) throw Error(Errc::InvalidParams, "energy moment k must be positive");
  return {moment(rep_function(a, b, SetOp::sub), k), EnergyMethod::histogram};
}

EnergyValue additive_energy(const FSet& a, const FSet& b) {
  require_same_field(a, b);
  const auto& F = a.field();
  // the transform costs O(p log p) regardless of the sets; use it only when pairs dominate
  if (F.is_prime_field() && F.p() <= kTransformPrimeLimit &&
      static_cast<std::uint64_t>(a.size()) * b.size() > 8 * F.p())
    return fast_additive_energy(a, b);
  return additive_energy_k(a, b, 2);
}

EnergyValue additive_energy(const FSet& a) { return additive_energy(a, a); }

EnergyValue mult_energy_k(const FSet& a, const FSet& b, unsigned k) {
  require_same_field(a, b);
  if (k == 0) throw Error(Errc::InvalidParams, "energy moment k must be positive");
  const bool no_denominator = b.empty() || (b.size() == 1 && b.codes()[0] == 0);
  if (no_denominator || a.empty()) return {0, EnergyMethod::histogram};
  return {moment(rep_function(a, b, SetOp::div), k), EnergyMethod::histogram};
}

EnergyValue mult_energy(const FSet& a) { return mult_energy_k(a, a, 2); }

EnergyValue poly_energy(const BivariateQuadratic& f, const FSet& a, const FSet& b) {
  return {moment(poly_image(f, a, b).rep, 2), EnergyMethod::histogram};
}

EnergyValue poly_energy(const BivariateQuadratic& f, const FSet& a) { return poly_energy(f, a, a); }

// ----------------------------------------------------------------------- NTT

namespace {

constexpr std::uint32_t kMod = 998244353;  // 119 * 2^23 + 1
constexpr std::uint32_t kRoot = 3;

std::uint32_t pw(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  a %= kMod;
  while (e) {
    if (e & 1) r = r * a % kMod;
    a = a * a % kMod;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

void ntt(std::vector<std::uint32_t>& a, bool invert) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w = pw(kRoot, (kMod - 1) / len);
    if (invert) w = pw(w, kMod - 2);
    const std::size_t half = len / 2;
    std::vector<std::uint32_t> ws(half);
    ws[0] = 1;
    for (std::size_t k = 1; k < half; ++k) ws[k] = static_cast<std::uint32_t>(ws[k - 1] * w % kMod);
    for (std::size_t i = 0; i < n; i += len)
      for (std::size_t k = 0; k < half; ++k) {
        const std::uint32_t u = a[i + k];
        const std::uint32_t v = static_cast<std::uint32_t>(std::uint64_t{a[i + k + half]} * ws[k] % kMod);
        a[i + k] = u + v >= kMod ? u + v - kMod : u + v;
        a[i + k + half] = u >= v ? u - v : u + kMod - v;
      }
  }
  if (invert) {
    const std::uint64_t inv_n = pw(n, kMod - 2);
    for (auto& x : a) x = static_cast<std::uint32_t>(x * inv_n % kMod);
  }
}

}  // namespace

std::vector<std::uint64_t> difference_counts_ntt(const FSet& a, const FSet& b) {
  require_same_field(a, b);
  const auto& F = a.field();
  if (!F.is_prime_field()) throw Error(Errc::Unsupported, "transform path needs a prime field");
  const std::uint64_t p = F.p();
  if (p > kTransformPrimeLimit) throw Error(Errc::TooLarge, "transform path limited to p <= 2^20");
  std::vector<std::uint64_t> out(p, 0);
  if (a.empty() || b.empty()) return out;
  // r_{A-B}(x) is the cyclic convolution of 1_A with 1_{-B}; linear length 2p - 1
  std::size_t n = 1;
  while (n < 2 * p - 1) n <<= 1;
  std::vector<std::uint32_t> fa(n, 0), fb(n, 0);
  for (auto x : a) fa[x] = 1;
  for (auto y : b) fb[(p - y) % p] = 1;
  ntt(fa, false);
  ntt(fb, false);
  for (std::size_t i = 0; i < n; ++i) fa[i] = static_cast<std::uint32_t>(std::uint64_t{fa[i]} * fb[i] % kMod);
  ntt(fa, true);
  // each linear coefficient is at most min(|A|, |B|) <= p < kMod, so residues are exact
  for (std::size_t i = 0; i < 2 * p - 1; ++i) out[i % p] += fa[i];
  return out;
}

EnergyValue fast_additive_energy(const FSet& a, const FSet& b) {
  const auto counts = difference_counts_ntt(a, b);
  Count s = 0;
  for (auto c : counts) s = checked_add(s, Count{c} * c);
  return {s, EnergyMethod::convolution};
}

// ----------------------------------------------------------------- six-tuple

TernaryFn shifted_ternary(const BivariateQuadratic& f) {
  return [f](std::uint64_t x, std::uint64_t y, std::uint64_t z) {
    return f.eval_code(f.field().add_code(x, y), z);
  };
}

EnergyValue six_tuple_count(const TernaryFn& f3, const FSet& u, const FSet& v, const FSet& w, std::uint64_t budget) {
  require_same_field(u, v);
  require_same_field(u, w);
  const Count triples = Count{u.size()} * v.size() * w.size();
  if (triples > budget) throw Error(Errc::TooLarge, "six-tuple count over " + to_string(triples) + " triples exceeds the budget");
  Tally t(u.field(), static_cast<std::size_t>(triples));
  for (auto x : u)
    for (auto y : v)
      for (auto z : w) t.add(f3(x, y, z));
  return {moment(t.finish(), 2), EnergyMethod::histogram};
}

BoundReport six_tuple_report(const BivariateQuadratic& f, const FSet& u, const FSet& v, const FSet& w, double constant) {
  const Count lhs = six_tuple_count(shifted_ternary(f), u, v, w).value;
  const long double nu = u.size(), nv = v.size(), nw = w.size();
  const long double prod = nu * nv * nw;
  const long double rhs = std::pow(prod, 1.5L) + std::max({nu * nu * nv * nv, nu * nu * nw * nw, nv * nv * nw * nw});
  Digest d;
  d.add("six_tuple").add(u).add(v).add(w).add(f.to_string());
  BoundReport r = make_report("six_tuple", Quantity::of(lhs), Quantity::of_float(rhs), constant, false, d.hex());
  const long double p = static_cast<long double>(u.field().p());
  r.hypothesis_flags["triple_product_le_p2"] = prod <= p * p;
  r.hypothesis_flags["f_nondegenerate"] = is_nondegenerate_quadratic(f);
  r.hypothesis_flags["prime_field"] = u.field().is_prime_field();
  return r;
}

// ---------------------------------------------------------------- identities

BoundReport check_identity(std::string_view name, const IdentityInputs& in) {
  if (name == "cauchy_schwarz") {
    if (in.sets.size() != 2) throw Error(Errc::InvalidInputs, "cauchy_schwarz takes two sets");
    if (in.op != SetOp::add && in.op != SetOp::sub) throw Error(Errc::InvalidInputs, "cauchy_schwarz takes op + or -");
    const FSet& a = in.sets[0];
    const FSet& b = in.sets[1];
    if (a.empty() || b.empty()) throw Error(Errc::InvalidInputs, "cauchy_schwarz needs nonempty sets");
    const Count e = additive_energy(a, b).value;
    const Count sz = setop(a, b, in.op).size();
    const Count na = a.size(), nb = b.size();
    Digest d;
    d.add("cauchy_schwarz").add(to_string(in.op)).add(a).add(b);
    BoundReport r = make_report("cauchy_schwarz", Quantity::of(na * na * nb * nb), Quantity::of(checked_mul(e, sz)), 1.0,
                                true, d.hex());
    r.hypothesis_flags["nonempty"] = true;
    return r;
  }
  if (name == "first_moment") {
    if (in.sets.size() != 2) throw Error(Errc::InvalidInputs, "first_moment takes two sets");
    const FSet& a = in.sets[0];
    const FSet& b = in.sets[1];
    const Count first = additive_energy_k(a, b, 1).value;
    Digest d;
    d.add("first_moment").add(a).add(b);
    return make_report("first_moment", Quantity::of(first), Quantity::of(Count{a.size()} * b.size()), 1.0, true, d.hex(),
                       BoundKind::equality);
  }
  if (name == "subadditivity") {
    if (in.sets.empty()) throw Error(Errc::InvalidInputs, "subadditivity takes at least one set");
    if (!in.f) throw Error(Errc::InvalidInputs, "subadditivity needs a polynomial f");
    const auto& f = *in.f;
    FSet all(in.sets[0].field());
    Digest d;
    d.add("subadditivity").add(f.to_string());
    for (const auto& s : in.sets) {
      all = set_union(all, s);
      d.add(s);
    }
    const Count lhs = poly_energy(f, all).value;
    long double root_sum = 0;
    for (const auto& vi : in.sets)
      for (const auto& vj : in.sets) root_sum += std::sqrt(static_cast<long double>(poly_energy(f, vi, vj).value));
    BoundReport r = make_report("subadditivity", Quantity::of(lhs), Quantity::of_float(root_sum * root_sum), 1.0, true,
                                d.hex(), BoundKind::upper, 1e-9);
    r.hypothesis_flags["k_sets"] = true;
    return r;
  }
  throw Error(Errc::UnknownCheckName, "unknown identity '" + std::string(name) + "'");
}

}  // namespace lowenergy

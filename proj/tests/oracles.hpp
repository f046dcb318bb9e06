// Reference implementations for the tests. Prime fields use plain integer
// arithmetic mod p so they share no code with the library.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "lowenergy/field.hpp"
#include "lowenergy/poly.hpp"
#include "lowenergy/sets.hpp"

namespace oracle {

using u64 = std::uint64_t;
using Vec = std::vector<u64>;

inline u64 addm(u64 a, u64 b, u64 p) { return (a + b) % p; }
inline u64 subm(u64 a, u64 b, u64 p) { return (a + p - b) % p; }
inline u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }
inline u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  for (a %= p; e; e >>= 1, a = mulm(a, a, p))
    if (e & 1) r = mulm(r, a, p);
  return r;
}
inline u64 invm(u64 a, u64 p) { return powm(a, p - 2, p); }

/// #{(a1, a2, b1, b2) : a1 - b1 = a2 - b2}, the quadruple loop.
inline unsigned __int128 energy4(const Vec& a, const Vec& b, u64 p) {
  unsigned __int128 n = 0;
  for (u64 a1 : a)
    for (u64 b1 : b)
      for (u64 a2 : a)
        for (u64 b2 : b)
          if (subm(a1, b1, p) == subm(a2, b2, p)) ++n;
  return n;
}

/// sum over x of r_{A-B}(x)^k from a nested-loop tally.
inline unsigned __int128 energy_k(const Vec& a, const Vec& b, u64 p, unsigned k) {
  std::map<u64, u64> r;
  for (u64 x : a)
    for (u64 y : b) ++r[subm(x, y, p)];
  unsigned __int128 total = 0;
  for (const auto& [v, c] : r) {
    unsigned __int128 t = 1;
    for (unsigned i = 0; i < k; ++i) t *= c;
    total += t;
  }
  return total;
}

/// #{a1 b2 = a2 b1 : b1, b2 != 0}, i.e. the square sum of r_{A/B}.
inline unsigned __int128 mult_energy4(const Vec& a, const Vec& b, u64 p) {
  unsigned __int128 n = 0;
  for (u64 a1 : a)
    for (u64 b1 : b)
      for (u64 a2 : a)
        for (u64 b2 : b)
          if (b1 != 0 && b2 != 0 && mulm(a1, b2, p) == mulm(a2, b1, p)) ++n;
  return n;
}

struct Quad {
  u64 q1, q2, q3, l1, l2, c;
  u64 operator()(u64 x, u64 y, u64 p) const {
    u64 v = mulm(q1, mulm(x, x, p), p);
    v = addm(v, mulm(q2, mulm(x, y, p), p), p);
    v = addm(v, mulm(q3, mulm(y, y, p), p), p);
    v = addm(v, mulm(l1, x, p), p);
    v = addm(v, mulm(l2, y, p), p);
    return addm(v, c, p);
  }
};

inline unsigned __int128 poly_energy4(const Quad& f, const Vec& a, const Vec& b, u64 p) {
  unsigned __int128 n = 0;
  for (u64 a1 : a)
    for (u64 b1 : b) {
      const u64 v = f(a1, b1, p);
      for (u64 a2 : a)
        for (u64 b2 : b)
          if (f(a2, b2, p) == v) ++n;
    }
  return n;
}

/// False iff f(x, y) = g(ax + by) on all of F_p^2 for some direction (a, b)
/// and some univariate g of degree <= 2.
inline bool nondegenerate_exhaustive(const Quad& f, u64 p) {
  std::vector<std::pair<u64, u64>> dirs = {{0, 1}};
  for (u64 b = 0; b < p; ++b) dirs.emplace_back(1, b);
  for (const auto& [a, b] : dirs)
    for (u64 g2 = 0; g2 < p; ++g2)
      for (u64 g1 = 0; g1 < p; ++g1)
        for (u64 g0 = 0; g0 < p; ++g0) {
          bool all = true;
          for (u64 x = 0; x < p && all; ++x)
            for (u64 y = 0; y < p && all; ++y) {
              const u64 u = addm(mulm(a, x, p), mulm(b, y, p), p);
              const u64 g = addm(addm(mulm(g2, mulm(u, u, p), p), mulm(g1, u, p), p), g0, p);
              all = g == f(x, y, p);
            }
          if (all) return false;
        }
  return true;
}

/// Incidences by walking each line's q points, for any field through its codes.
inline u64 incidences_by_walk(const lowenergy::FieldCtx& F, const std::vector<std::pair<u64, u64>>& pts,
                              const std::vector<std::array<u64, 3>>& lines) {
  const std::set<std::pair<u64, u64>> P(pts.begin(), pts.end());
  // dedup lines up to a nonzero scalar
  std::set<std::array<u64, 3>> L;
  for (auto l : lines) {
    const u64 lead = l[0] != 0 ? l[0] : l[1];
    const u64 inv = F.inv_code(lead);
    L.insert({F.mul_code(l[0], inv), F.mul_code(l[1], inv), F.mul_code(l[2], inv)});
  }
  u64 n = 0;
  for (const auto& l : L) {
    if (l[1] != 0) {
      const u64 ib = F.inv_code(l[1]);
      for (u64 x = 0; x < F.q(); ++x) {
        const u64 y = F.mul_code(F.sub_code(l[2], F.mul_code(l[0], x)), ib);
        n += P.count({x, y});
      }
    } else {
      const u64 x = F.mul_code(l[2], F.inv_code(l[0]));
      for (u64 y = 0; y < F.q(); ++y) n += P.count({x, y});
    }
  }
  return n;
}

/// (1/p) sum over lambda of |sum_a exp(2 pi i lambda a / p)|, with std::polar.
inline double littlewood(const Vec& a, u64 p) {
  double total = 0;
  for (u64 lam = 0; lam < p; ++lam) {
    std::complex<double> s = 0;
    for (u64 x : a) s += std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(mulm(lam, x, p)) / static_cast<double>(p));
    total += std::abs(s);
  }
  return total / static_cast<double>(p);
}

inline std::complex<double> double_sum(const Vec& s, const Vec& t, u64 p) {
  std::complex<double> z = 0;
  for (u64 x : s)
    for (u64 y : t) z += std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(mulm(x, y, p)) / static_cast<double>(p));
  return z;
}

// ---------------------------------------------------------------- generators

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(u64 seed) : rng(seed) {}

  u64 below(u64 n) { return std::uniform_int_distribution<u64>(0, n - 1)(rng); }
  u64 range(u64 lo, u64 hi) { return std::uniform_int_distribution<u64>(lo, hi)(rng); }

  /// Distinct residues, sorted; size in [lo, hi] capped at p.
  Vec subset(u64 p, u64 lo, u64 hi) {
    const u64 k = std::min<u64>(range(lo, hi), p);
    std::set<u64> s;
    while (s.size() < k) s.insert(below(p));
    return Vec(s.begin(), s.end());
  }

  Quad quad(u64 p) {
    for (;;) {
      Quad f{below(p), below(p), below(p), below(p), below(p), below(p)};
      if (f.q1 || f.q2 || f.q3) return f;
    }
  }
};

inline lowenergy::FSet to_set(const lowenergy::FieldCtx& F, const Vec& v) { return lowenergy::FSet(F, v); }

inline lowenergy::BivariateQuadratic to_quad(const lowenergy::FieldCtx& F, const Quad& f) {
  return lowenergy::BivariateQuadratic(F, {f.q1, f.q2, f.q3, f.l1, f.l2, f.c});
}

}  // namespace oracle

#pragma once

#include <cstdint>
#include <string_view>

#include "lowenergy/count.hpp"
#include "lowenergy/sets.hpp"

namespace lowenergy {

/// Number of dyadic classes [2^i, 2^{i+1}) needed for counts up to n: floor(log2 n) + 1.
unsigned dyadic_class_count(std::uint64_t n) noexcept;

/// A level set D = {d : tau <= r(d) < 2 tau} of a representation function.
struct DyadicClass {
  FSet D;
  std::uint64_t tau = 0;
  Count energy = 0;            // sum of r^2 over the whole histogram
  std::uint64_t n = 0;         // generating set size used in the class count
  unsigned class_count = 0;    // floor(log2 n) + 1
  /// tau^2 |D| * class_count >= energy. Not a theorem: the maximal class is
  /// only guaranteed a quarter of that (see dyadic_energy_class).
  bool sharp_bound = false;

  Count mass() const noexcept { return Count{tau} * tau * D.size(); }
};

/// Classes r_{X op X} dyadically and returns the class maximizing tau^2 |D|
/// (ties toward smaller tau). Asserts tau^2 |D| <= E and the provable
/// 4 tau^2 |D| (floor(log2 max r) + 1) >= E. TooSmall for |X| < 2.
DyadicClass dyadic_energy_class(const FSet& x, SetOp op = SetOp::add);

/// Same selection on an arbitrary histogram, with class count taken from `n`.
DyadicClass dyadic_class_of(const RepHistogram& h, const FieldCtx& ctx, std::uint64_t n);

enum class PopularCase { abscissae, ordinates };

std::string_view to_string(PopularCase c) noexcept;

struct PopularSubset {
  FSet X_star;
  std::uint64_t kappa = 0;
  PopularCase case_taken = PopularCase::abscissae;
  DyadicClass cls;
  std::uint64_t kappa1 = 0;
  std::size_t V_size = 0;
  std::uint64_t P_size = 0;   // |P_1| in the first case, |P_2| in the second
  unsigned class_count = 0;   // floor(log2 |X|) + 1
  /// kappa |X_star| * class_count >= |P|; the asserted bound has an extra factor 2.
  bool sharp_product_bound = false;
};

/// Popular abscissae / ordinates extraction on X + X. Every returned x has
/// r_{D-X}(x) >= kappa, rechecked by direct count. TooSmall for |X| < 2.
PopularSubset popular_subset(const FSet& x);

struct RegularTriple {
  FSet B;
  FSet C;
  FSet D;
  std::uint64_t t = 0;
  Count energy = 0;          // E(B, V)
  unsigned class_count = 0;  // floor(log2(|B||V|)) + 1
  std::uint64_t min_pop = 0; // min over c in C of r_{D+V}(c)
  std::size_t removal_rounds = 0;
  double c1 = 2.0;  // |B| >= |A| / c1
  double c2 = 1.0;  // |C| >= |B| / (c2 (log2 |A|)^2)
  double c3 = 2.0;  // r_{D+V}(c) >= |D| t / (c3 |B|)
};

/// One-set regularization (V = B).
RegularTriple regularize(const FSet& a);
/// Two-set regularization on B - V.
RegularTriple regularize2(const FSet& a, const FSet& v);

}  // namespace lowenergy

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lowenergy/count.hpp"
#include "lowenergy/poly.hpp"
#include "lowenergy/report.hpp"
#include "lowenergy/sets.hpp"

namespace lowenergy {

struct ExpSumValue {
  std::complex<double> value;
  double magnitude = 0;
  std::uint64_t terms = 0;
};

/// sum_{s in S} sum_{t in T} psi(st), compensated summation.
ExpSumValue double_sum(const FSet& s, const FSet& t);

/// sum_{x in X} psi(xy) for one y.
std::complex<double> character_sum(const FSet& x, std::uint64_t y);

/// (1/q) sum_{y in F_q} |sum_{x in X} psi(xy)|.
double fourier_l1(const FSet& x);

/// Prime fields only: (1/p) sum_lambda |sum_{a in A} e_p(lambda a)|. Unsupported for n > 1.
double littlewood_l1(const FSet& a);

/// vinogradov (S, T): |sum| <= sqrt(|S||T|q)
/// holder4 (X, Y):    |sum|^4 <= q |X|^3 E(Y)
/// holder8 (X, Y):    |sum|^8 <= q |X|^4 |Y|^4 E(X) E(Y)
/// konshk (X1, X):    |X1|^2 / (|X|^{1/2} E(X1)^{1/2}) <= fourier_l1(X), X1 contained in X
/// All are hard checks with relative slack 1e-6.
BoundReport check_expsum_bound(std::string_view name, const std::vector<FSet>& sets);

/// min{q^{1/2} / (|T|^{1/2} (ln|T|)^{1/2}), |T| / (q^{1/2} ln|T|)}.
double M_T(std::uint64_t q, std::size_t t_size);

enum class Regime { small_p, large_q };

std::string_view to_string(Regime r) noexcept;
Regime parse_regime(std::string_view s);

struct InvariantSubset {
  FSet U;
  double c = 1;  // |U| >= |T| / c
  std::string branch;  // "B" or "f(C)"
  Count E_U = 0;
  bool p_constraint = true;
  std::vector<std::string> warnings;
  std::vector<BoundReport> reports;
};

/// Low-energy subset U of a forward-invariant T (f(T) in T, checked exactly;
/// NotForwardInvariant otherwise). small_p needs a quadratic polynomial f and
/// decomposes T with g(x, y) = f(x) + f(y); large_q regularizes T in image mode.
/// Then U = B when |B| >= |T| / 2, else U = f(C).
InvariantSubset invariant_low_energy_subset(const FSet& t, const RationalFunction& f, Regime regime,
                                            double constant = 64.0);

/// The composed bound on |sum_{s in S, u in U} psi(su)|: against
/// (|S|^3 |T|^{14/5} p)^{1/4} (small_p) or (|S|^3 |T|^3 q / M_T)^{1/4} (large_q).
BoundReport composed_sum_report(const FSet& s, const InvariantSubset& inv, const FSet& t, Regime regime,
                                double constant = 64.0);

/// |A|^{1/4} <= constant * l1(f(A)) for a quadratic f.
BoundReport littlewood_image_report(const FSet& a, const UnivariatePoly& f, double constant = 8.0);
/// |T|^{1/10} <= constant * l1(T) for a forward-invariant T.
BoundReport littlewood_orbit_report(const FSet& t, const UnivariatePoly& f, double constant = 8.0);

}  // namespace lowenergy

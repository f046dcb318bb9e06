#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "lowenergy/count.hpp"
#include "lowenergy/poly.hpp"
#include "lowenergy/report.hpp"
#include "lowenergy/sets.hpp"

namespace lowenergy {

enum class EnergyMethod { naive, histogram, convolution };

std::string_view to_string(EnergyMethod m) noexcept;

struct EnergyValue {
  Count value = 0;
  EnergyMethod method = EnergyMethod::histogram;
};

/// sum over the histogram of count^k.
Count moment(const RepHistogram& h, unsigned k);

/// E_k(A, B) = sum_x r_{A-B}(x)^k.
EnergyValue additive_energy_k(const FSet& a, const FSet& b, unsigned k);
/// E(A, B) = E_2(A, B); for prime fields with p <= 2^20 this uses the transform path.
EnergyValue additive_energy(const FSet& a, const FSet& b);
EnergyValue additive_energy(const FSet& a);

/// E^x_k(A, B) = sum_x r_{A/B}(x)^k; pairs with b = 0 are skipped.
EnergyValue mult_energy_k(const FSet& a, const FSet& b, unsigned k);
EnergyValue mult_energy(const FSet& a);

/// E_f(A, B) = sum_lambda r_{f(A,B)}(lambda)^2.
EnergyValue poly_energy(const BivariateQuadratic& f, const FSet& a, const FSet& b);
EnergyValue poly_energy(const BivariateQuadratic& f, const FSet& a);

constexpr std::uint64_t kTransformPrimeLimit = std::uint64_t{1} << 20;

/// r_{A-B} as a dense vector of length p via an exact NTT modulo 998244353.
/// Prime fields only (Unsupported otherwise), p <= 2^20 (TooLarge otherwise).
std::vector<std::uint64_t> difference_counts_ntt(const FSet& a, const FSet& b);
EnergyValue fast_additive_energy(const FSet& a, const FSet& b);

using TernaryFn = std::function<std::uint64_t(std::uint64_t, std::uint64_t, std::uint64_t)>;

/// (x, y, z) -> f(x + y, z).
TernaryFn shifted_ternary(const BivariateQuadratic& f);

constexpr std::uint64_t kSixTupleBudget = 10'000'000;

/// #{f3(u1,v1,w1) = f3(u2,v2,w2)} = sum_lambda h(lambda)^2 over the triple histogram.
/// TooLarge when |U||V||W| exceeds `budget`.
EnergyValue six_tuple_count(const TernaryFn& f3, const FSet& u, const FSet& v, const FSet& w,
                            std::uint64_t budget = kSixTupleBudget);

/// Report for the six-tuple bound C [(|U||V||W|)^{3/2} + max pairwise square products].
BoundReport six_tuple_report(const BivariateQuadratic& f, const FSet& u, const FSet& v, const FSet& w,
                             double constant = 64.0);

struct IdentityInputs {
  std::vector<FSet> sets;
  SetOp op = SetOp::add;
  std::optional<BivariateQuadratic> f;
};

/// cauchy_schwarz: |A|^2 |B|^2 <= E(A,B) |A op B|, op in {+, -}.
/// first_moment: sum_x r_{A-B}(x) = |A||B|.
/// subadditivity: E_f(V_1 u ... u V_k) <= (sum_{i,j} E_f(V_i, V_j)^{1/2})^2.
/// All three are hard checks. Throws InvalidInputs on wrong arity and
/// UnknownCheckName on other names.
BoundReport check_identity(std::string_view name, const IdentityInputs& in);

}  // namespace lowenergy

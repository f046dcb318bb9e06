#include "lowenergy/expsum.hpp"

#include <algorithm>
#include <cmath>

#include "lowenergy/decompose.hpp"
#include "lowenergy/energy.hpp"
#include "lowenergy/error.hpp"

namespace lowenergy {

namespace {

// Neumaier summation on both components
class ComplexSum {
 public:
  void add(std::complex<double> z) {
    add1(re_, cre_, z.real());
    add1(im_, cim_, z.imag());
  }
  std::complex<double> value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void add1(double& s, double& c, double x) {
    const double t = s + x;
    if (std::fabs(s) >= std::fabs(x)) c += (s - t) + x;
    else c += (x - t) + s;
    s = t;
  }
  double re_ = 0, cre_ = 0, im_ = 0, cim_ = 0;
};

std::complex<double> psi_code(const FieldCtx& F, std::uint64_t z) {
  return F.e_p(F.is_prime_field() ? z : F.trace_code(z));
}

long double ld(std::size_t n) { return static_cast<long double>(n); }

}  // namespace

ExpSumValue double_sum(const FSet& s, const FSet& t) {
  require_same_field(s, t);
  const auto& F = s.field();
  ComplexSum acc;
  for (auto x : s)
    for (auto y : t) acc.add(psi_code(F, F.mul_code(x, y)));
  ExpSumValue v;
  v.value = acc.value();
  v.magnitude = std::abs(v.value);
  v.terms = static_cast<std::uint64_t>(s.size()) * t.size();
  return v;
}

std::complex<double> character_sum(const FSet& x, std::uint64_t y) {
  const auto& F = x.field();
  ComplexSum acc;
  for (auto a : x) acc.add(psi_code(F, F.mul_code(a, y)));
  return acc.value();
}

double fourier_l1(const FSet& x) {
  const auto& F = x.field();
  if (F.q() > (std::uint64_t{1} << 26)) throw Error(Errc::TooLarge, "l1 norm enumerates the whole field");
  double total = 0, comp = 0;  // Kahan
  for (std::uint64_t y = 0; y < F.q(); ++y) {
    const double term = std::abs(character_sum(x, y)) - comp;
    const double next = total + term;
    comp = (next - total) - term;
    total = next;
  }
  return total / static_cast<double>(F.q());
}

double littlewood_l1(const FSet& a) {
  if (!a.field().is_prime_field()) throw Error(Errc::Unsupported, "littlewood_l1 needs a prime field");
  return fourier_l1(a);
}

BoundReport check_expsum_bound(std::string_view name, const std::vector<FSet>& sets) {
  if (sets.size() != 2) throw Error(Errc::InvalidInputs, std::string(name) + " takes two sets");
  const FSet& x = sets[0];
  const FSet& y = sets[1];
  require_same_field(x, y);
  const long double q = static_cast<long double>(x.field().q());
  Digest d;
  d.add(name).add(x).add(y);
  if (name == "vinogradov") {
    const double mag = double_sum(x, y).magnitude;
    return make_report("vinogradov", Quantity::of_float(mag), Quantity::of_float(std::sqrt(ld(x.size()) * ld(y.size()) * q)),
                       1.0, true, d.hex());
  }
  if (name == "holder4") {
    const long double mag = double_sum(x, y).magnitude;
    const long double ey = static_cast<long double>(additive_energy(y).value);
    const long double nx = ld(x.size());
    return make_report("holder4", Quantity::of_float(mag * mag * mag * mag), Quantity::of_float(q * nx * nx * nx * ey), 1.0,
                       true, d.hex());
  }
  if (name == "holder8") {
    const long double mag = double_sum(x, y).magnitude;
    const long double ex = static_cast<long double>(additive_energy(x).value);
    const long double ey = static_cast<long double>(additive_energy(y).value);
    const long double nx = ld(x.size()), ny = ld(y.size());
    const long double m2 = mag * mag, m4 = m2 * m2;
    return make_report("holder8", Quantity::of_float(m4 * m4),
                       Quantity::of_float(q * nx * nx * nx * nx * ny * ny * ny * ny * ex * ey), 1.0, true, d.hex());
  }
  if (name == "konshk") {
    if (!x.subset_of(y)) throw Error(Errc::InvalidInputs, "konshk needs X1 contained in X");
    if (x.empty()) throw Error(Errc::InvalidInputs, "konshk needs a nonempty X1");
    const long double e1 = static_cast<long double>(additive_energy(x).value);
    const long double n1 = ld(x.size());
    const long double lhs = n1 * n1 / (std::sqrt(ld(y.size())) * std::sqrt(e1));
    BoundReport r = make_report("konshk", Quantity::of_float(lhs), Quantity::of_float(fourier_l1(y)), 1.0, true, d.hex());
    r.hypothesis_flags["X1_subset_X"] = true;
    return r;
  }
  throw Error(Errc::UnknownCheckName, "unknown exponential-sum bound '" + std::string(name) + "'");
}

double M_T(std::uint64_t q, std::size_t t_size) {
  const double qq = static_cast<double>(q);
  const double t = static_cast<double>(t_size);
  const double lg = std::log(t);
  return std::min(std::sqrt(qq) / (std::sqrt(t) * std::sqrt(lg)), t / (std::sqrt(qq) * lg));
}

std::string_view to_string(Regime r) noexcept { return r == Regime::small_p ? "small_p" : "large_q"; }

Regime parse_regime(std::string_view s) {
  if (s == "small_p") return Regime::small_p;
  if (s == "large_q") return Regime::large_q;
  throw Error(Errc::InvalidParams, "unknown regime '" + std::string(s) + "'");
}

InvariantSubset invariant_low_energy_subset(const FSet& t, const RationalFunction& f, Regime regime, double constant) {
  const auto& F = t.field();
  if (!(f.field() == F)) throw Error(Errc::CtxMismatch, "rational function over a different field");
  if (t.size() < 2) throw Error(Errc::TooSmall, "forward-invariant subset needs |T| >= 2");
  if (!rational_image(f, t).subset_of(t)) throw Error(Errc::NotForwardInvariant, "f(T) is not contained in T");
  InvariantSubset out{FSet(F)};
  const long double n = ld(t.size());
  Digest d;
  d.add("invariant_subset").add(to_string(regime)).add(t).add(f.to_string());

  if (regime == Regime::small_p) {
    if (!f.is_polynomial() || f.numerator().degree() != 2)
      throw Error(Errc::Degenerate, "small_p regime needs a quadratic polynomial f");
    const auto& g = f.numerator();
    const BivariateQuadratic gg(F, {g.coeff(2), 0, g.coeff(2), g.coeff(1), g.coeff(1), F.add_code(g.coeff(0), g.coeff(0))});
    const long double p = F.p();
    out.p_constraint = std::pow(n, 8.0L) <= std::pow(p, 5.0L);
    if (!out.p_constraint) out.warnings.push_back("|T| > p^{5/8}");
    DecomposeOptions opt;
    opt.round_reports = false;
    const Decomposition dec = balog_wooley_decompose(t, gg, opt);
    if (2 * dec.S.size() >= t.size()) {
      out.U = dec.S;
      out.branch = "B";
      out.c = 2;
    } else {
      out.U = univariate_image(g, dec.T);
      out.branch = "f(C)";
      out.c = 4;  // |T_dec| > |T| / 2 and f is at most 2-to-1
    }
  } else {
    if (rational_nondeg_sufficient(f, F) != NondegVerdict::pass)
      throw Error(Errc::Degenerate, "f = " + f.to_string() + " does not pass the sufficient non-degeneracy test");
    const SubsetPair sp = large_set_subsets(t, LargeSetMode::image, f, constant);
    const double lg = std::log2(static_cast<double>(t.size()));
    if (2 * sp.B.size() >= t.size()) {
      out.U = sp.B;
      out.branch = "B";
      out.c = 2;
    } else {
      out.U = rational_image(f, sp.C);
      out.branch = "f(C)";
      out.c = sp.reg.c1 * sp.reg.c2 * lg * lg * f.degree();
    }
    for (const auto& r : sp.reports) out.reports.push_back(r);
  }

  if (!out.U.subset_of(t)) throw Error(Errc::Internal, "invariant subset escapes T");
  if (ld(out.U.size()) * out.c < n) throw Error(Errc::Internal, "invariant subset smaller than |T| / c");
  out.E_U = additive_energy(out.U).value;
  const long double rhs = regime == Regime::small_p ? std::pow(n, 2.8L)
                                                   : n * n * n / static_cast<long double>(M_T(F.q(), t.size()));
  BoundReport r = make_report(regime == Regime::small_p ? "invariant_energy_small_p" : "invariant_energy_large_q",
                              Quantity::of(out.E_U), Quantity::of_float(rhs), constant, false, d.hex());
  r.hypothesis_flags["forward_invariant"] = true;
  r.hypothesis_flags["p_constraint"] = out.p_constraint;
  r.notes["log"] = "natural";
  out.reports.push_back(r);
  return out;
}

BoundReport composed_sum_report(const FSet& s, const InvariantSubset& inv, const FSet& t, Regime regime, double constant) {
  require_same_field(s, t);
  const auto& F = t.field();
  const long double ns = ld(s.size()), nt = ld(t.size());
  const long double mag = double_sum(s, inv.U).magnitude;
  long double rhs;
  if (regime == Regime::small_p) {
    rhs = std::pow(ns * ns * ns * std::pow(nt, 2.8L) * static_cast<long double>(F.p()), 0.25L);
  } else {
    rhs = std::pow(ns * ns * ns * nt * nt * nt * static_cast<long double>(F.q()) / M_T(F.q(), t.size()), 0.25L);
  }
  Digest d;
  d.add("composed_sum").add(to_string(regime)).add(s).add(inv.U).add(t);
  BoundReport r = make_report(regime == Regime::small_p ? "composed_sum_small_p" : "composed_sum_large_q",
                              Quantity::of_float(mag), Quantity::of_float(rhs), constant, false, d.hex());
  r.hypothesis_flags["U_subset_T"] = inv.U.subset_of(t);
  r.hypothesis_flags["p_constraint"] = inv.p_constraint;
  r.hypothesis_flags["U_size"] = ld(inv.U.size()) * inv.c >= nt;
  return r;
}

BoundReport littlewood_image_report(const FSet& a, const UnivariatePoly& f, double constant) {
  const FSet img = univariate_image(f, a);
  const double l1 = littlewood_l1(img);
  const long double n = ld(a.size());
  Digest d;
  d.add("littlewood_image").add(a).add(f.to_string());
  BoundReport r = make_report("littlewood_image", Quantity::of_float(std::pow(n, 0.25L)), Quantity::of_float(l1), constant,
                              false, d.hex());
  const long double p = a.field().p();
  const std::size_t doubling = setop(a, a, SetOp::add).size();
  r.hypothesis_flags["size_constraint"] = n * n * n <= p * p;
  r.hypothesis_flags["small_doubling"] = ld(doubling) <= 3 * n;
  r.hypothesis_flags["f_quadratic"] = f.degree() == 2;
  r.notes["ratio"] = std::to_string(static_cast<double>(l1 / std::pow(n, 0.25L)));
  return r;
}

BoundReport littlewood_orbit_report(const FSet& t, const UnivariatePoly& f, double constant) {
  const double l1 = littlewood_l1(t);
  const long double n = ld(t.size());
  Digest d;
  d.add("littlewood_orbit").add(t).add(f.to_string());
  BoundReport r = make_report("littlewood_orbit", Quantity::of_float(std::pow(n, 0.1L)), Quantity::of_float(l1), constant,
                              false, d.hex());
  const long double p = t.field().p();
  r.hypothesis_flags["p_constraint"] = std::pow(n, 8.0L) <= std::pow(p, 5.0L);
  r.hypothesis_flags["forward_invariant"] = univariate_image(f, t).subset_of(t);
  r.hypothesis_flags["f_quadratic"] = f.degree() == 2;
  r.notes["ratio"] = std::to_string(static_cast<double>(l1 / std::pow(n, 0.1L)));
  return r;
}

}  // namespace lowenergy

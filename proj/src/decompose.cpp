#include "lowenergy/decompose.hpp"

#include <algorithm>
#include <cmath>

#include "lowenergy/energy.hpp"
#include "lowenergy/error.hpp"

namespace lowenergy {

namespace {

void require_nondegenerate(const BivariateQuadratic& f) {
  if (!is_nondegenerate_quadratic(f)) throw Error(Errc::Degenerate, "f = " + f.to_string() + " is degenerate");
}

long double ld(std::size_t n) { return static_cast<long double>(n); }

// second energy route for the post-condition: whichever path additive_energy did not take
Count energy_recheck(const FSet& s) {
  const Count hist = additive_energy_k(s, s, 2).value;
  const auto& F = s.field();
  if (F.is_prime_field() && F.p() <= kTransformPrimeLimit && !s.empty()) {
    const Count conv = fast_additive_energy(s, s).value;
    if (conv != hist) throw Error(Errc::Internal, "energy routes disagree: " + to_string(hist) + " vs " + to_string(conv));
  }
  return hist;
}

}  // namespace

PopularSubset extract_low_Ef_subset(const FSet& x, const FSet& a, const BivariateQuadratic& f) {
  require_same_field(x, a);
  require_nondegenerate(f);
  if (!x.subset_of(a)) throw Error(Errc::InvalidInputs, "extraction needs X contained in A");
  return popular_subset(x);
}

BoundReport extraction_report(const PopularSubset& ps, const FSet& x, const FSet& a, const FSet& y,
                              const BivariateQuadratic& f, double constant) {
  const Count e1 = poly_energy(f, ps.X_star, y).value;
  const Count e2 = poly_energy(f, y, ps.X_star).value;
  const long double ex = static_cast<long double>(additive_energy(x).value);
  const long double xs = ld(ps.X_star.size());
  const long double rhs = xs * xs * xs * xs * std::pow(ld(y.size()), 1.5L) * std::pow(ld(a.size()), 1.5L) / std::pow(ex, 1.5L);
  Digest d;
  d.add("extraction").add(x).add(a).add(y).add(f.to_string());
  BoundReport r = make_report("extraction", Quantity::of(std::max(e1, e2)), Quantity::of_float(rhs), constant, false, d.hex());
  const long double p = x.field().p();
  r.hypothesis_flags["char_constraint"] = std::pow(ld(x.size()), 5.0L) * ld(a.size()) <= p * p * ex;
  r.hypothesis_flags["energy_lower"] = ex >= std::pow(ld(a.size()), 8.0L / 3.0L);
  r.hypothesis_flags["Y_subset_A"] = y.subset_of(a);
  r.hypothesis_flags["Y_large"] = y.size() >= ps.X_star.size();
  r.hypothesis_flags["f_nondegenerate"] = is_nondegenerate_quadratic(f);
  return r;
}

Decomposition balog_wooley_decompose(const FSet& a, const BivariateQuadratic& f, const DecomposeOptions& opt) {
  require_nondegenerate(f);
  if (!(f.field() == a.field())) throw Error(Errc::CtxMismatch, "polynomial and set over different fields");
  const auto& F = a.field();
  Decomposition out{a, FSet(F), 1.0, 0, {}, f};
  const long double n = ld(a.size());
  out.M = opt.M ? *opt.M : static_cast<double>(std::pow(n, 0.2L));
  if (opt.M && !(*opt.M > 0)) throw Error(Errc::InvalidParams, "M must be positive");
  if (opt.M && (*opt.M < 1 || *opt.M > static_cast<double>(std::max<long double>(1, n))))
    out.warnings.push_back("M outside [1, |A|]");
  const long double p = F.p();
  out.p_constraint = std::pow(n, 8.0L) <= std::pow(p, 5.0L);
  if (!out.p_constraint) out.warnings.push_back("|A| > p^{5/8}: size guarantee of the decomposition lapses");
  if (a.size() <= 1) {
    out.threshold = n * n * n / std::max(out.M, 1e-300);
    out.E_S = a.empty() ? 0 : 1;
    return out;
  }
  out.threshold = n * n * n / out.M;

  FSet s = a;
  FSet t(F);
  for (std::size_t i = 0;; ++i) {
    const Count es = additive_energy(s).value;
    if (static_cast<long double>(es) <= out.threshold) break;
    if (i > a.size()) throw Error(Errc::Internal, "decomposition exceeded |A| rounds");
    DecompRound round{i, s.size(), es, 0, false};
    FSet b(F);
    if (s.size() >= 2) {
      PopularSubset ps = extract_low_Ef_subset(s, a, f);
      if (opt.round_reports) out.reports.push_back(extraction_report(ps, s, a, a, f, opt.constant));
      b = ps.X_star;
    }
    if (b.empty()) {
      // fallback: the element of S with the largest column mass sum_y r_{S+S}(x + y)
      const RepHistogram h = rep_function(s, s, SetOp::add);
      std::uint64_t best = s.codes()[0];
      Count best_mass = 0;
      for (auto x : s) {
        Count mass = 0;
        for (auto y : s) mass += h.count(F.add_code(x, y));
        if (mass > best_mass) {
          best_mass = mass;
          best = x;
        }
      }
      b = FSet::from_sorted_unique(F, {best});
      round.safeguard = true;
      ++out.safeguard_events;
    }
    round.B_size = b.size();
    out.rounds.push_back(round);
    s = set_difference(s, b);
    t = set_union(t, b);
    if (round.B_size == 0 || s.size() >= round.S_size) throw Error(Errc::Internal, "decomposition made no progress");
  }

  out.S = s;
  out.T = t;
  if (!set_intersection(s, t).empty() || !(set_union(s, t) == a)) throw Error(Errc::Internal, "S and T do not partition A");
  out.E_S = energy_recheck(s);
  if (static_cast<long double>(out.E_S) > out.threshold) throw Error(Errc::Internal, "E(S) exceeds |A|^3 / M after the loop");
  out.Ef_T = poly_energy(f, t).value;

  Digest d;
  d.add("decomposition").add(a).add(f.to_string()).add(std::to_string(out.M));
  BoundReport r = make_report("decomposition", Quantity::of(std::max(out.E_S, out.Ef_T)),
                              Quantity::of_float(std::pow(n, 2.8L)), opt.constant, false, d.hex());
  r.hypothesis_flags["p_constraint"] = out.p_constraint;
  r.hypothesis_flags["f_nondegenerate"] = true;
  r.hypothesis_flags["default_M"] = !opt.M.has_value();
  out.reports.push_back(r);
  return out;
}

// ---------------------------------------------------------------- large sets

SubsetPair large_set_subsets(const FSet& a, LargeSetMode mode, const std::optional<RationalFunction>& f, double constant) {
  if (a.size() < 2) throw Error(Errc::TooSmall, "large-set subsets need |A| >= 2");
  const auto& F = a.field();
  if (mode == LargeSetMode::image) {
    if (!f) throw Error(Errc::InvalidInputs, "image mode needs a rational function");
    if (!(f->field() == F)) throw Error(Errc::CtxMismatch, "rational function over a different field");
    if (rational_nondeg_sufficient(*f, F) != NondegVerdict::pass)
      throw Error(Errc::InsufficientNondegeneracy, "f = " + f->to_string() + " does not pass the sufficient test");
  }
  SubsetPair out{FSet(F), FSet(F), {}, regularize(a)};
  out.B = out.reg.B;
  out.C = out.reg.C;
  const Count eb = additive_energy(out.B).value;
  out.measured["E(B)"] = eb;
  Count second = 0;
  std::string name;
  if (mode == LargeSetMode::multiplicative) {
    second = mult_energy(out.C).value;
    out.measured["E_mul(C)"] = second;
    name = "large_set_multiplicative";
  } else {
    second = additive_energy(rational_image(*f, out.C)).value;
    out.measured["E(f(C))"] = second;
    name = "large_set_image";
  }
  const long double n = ld(a.size());
  const long double q = static_cast<long double>(F.q());
  const long double lg = std::log(n);
  const long double rhs = std::pow(n, 7.0L) * lg / q + std::pow(n, 4.0L) * lg * lg * q;
  Digest d;
  d.add(name).add(a);
  if (f) d.add(f->to_string());
  BoundReport r = make_report(name, Quantity::of_float(static_cast<long double>(eb) * static_cast<long double>(second)),
                              Quantity::of_float(rhs), constant, false, d.hex());
  const long double log_a = std::log2(n);
  r.hypothesis_flags["large_set"] = n * n >= q;
  r.hypothesis_flags["B_size"] = ld(out.B.size()) * out.reg.c1 >= n;
  r.hypothesis_flags["C_size"] = ld(out.C.size()) * out.reg.c2 * log_a * log_a >= ld(out.B.size());
  r.hypothesis_flags["nonzero_C"] = !out.C.contains(std::uint64_t{0});
  if (mode == LargeSetMode::image) r.hypothesis_flags["f_nondeg_sufficient"] = true;
  r.notes["log"] = "natural";
  out.reports.push_back(r);
  return out;
}

SubsetPair mixed_energy_subsets(const FSet& a, const FSet& v, const FSet& x, const BivariateQuadratic& f,
                                double constant, double size_ratio) {
  require_same_field(a, v);
  require_same_field(a, x);
  require_nondegenerate(f);
  const long double n = ld(a.size());
  if (ld(v.size()) * size_ratio < n || ld(x.size()) * size_ratio < n)
    throw Error(Errc::SizeImbalance, "|V| and |X| must be at least |A| / " + std::to_string(size_ratio));
  const auto& F = a.field();
  SubsetPair out{FSet(F), FSet(F), {}, regularize2(a, v)};
  out.B = out.reg.B;
  out.C = out.reg.C;
  const Count ebv = additive_energy(out.B, v).value;
  const Count efcx = poly_energy(f, out.C, x).value;
  out.measured["E(B,V)"] = ebv;
  out.measured["E_f(C,X)"] = efcx;

  const long double e = static_cast<long double>(ebv);
  const long double nv = ld(v.size()), nx = ld(x.size()), nb = ld(out.B.size());
  const long double p = F.p();
  const long double constraint = nx * nb * nb * nv * nv * nv / e;
  const bool p_ok = constraint <= p * p;
  Digest d;
  d.add("mixed_energy").add(a).add(v).add(x).add(f.to_string());
  const long double lhs = e * e * e * static_cast<long double>(efcx) * static_cast<long double>(efcx);
  const long double rhs = std::pow(n, 6.0L) * nx * nx * nx * std::pow(nv, 5.0L);
  BoundReport r = make_report("mixed_energy", Quantity::of_float(lhs), Quantity::of_float(rhs), constant, false, d.hex());
  r.hypothesis_flags["p_constraint"] = p_ok;
  r.hypothesis_flags["size_balance"] = true;
  r.hypothesis_flags["f_nondegenerate"] = true;
  r.hypothesis_flags["prime_field"] = F.is_prime_field();
  out.reports.push_back(r);

  Digest d2;
  d2.add("mixed_energy_p_constraint").add(a).add(v).add(x);
  BoundReport pc = make_report("mixed_energy_p_constraint", Quantity::of_float(constraint), Quantity::of_float(p * p), 1.0,
                               false, d2.hex());
  out.reports.push_back(pc);
  return out;
}

}  // namespace lowenergy

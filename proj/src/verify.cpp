#include "lowenergy/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lowenergy/energy.hpp"
#include "lowenergy/error.hpp"
#include "lowenergy/expsum.hpp"

namespace lowenergy {

// ---------------------------------------------------------------- incidences

Line PointLineConfig::canonical_line(const FieldCtx& ctx, Line l) {
  for (auto c : l)
    if (c >= ctx.q()) throw Error(Errc::InvalidInputs, "line coefficient outside the field");
  const std::uint64_t lead = l[0] != 0 ? l[0] : l[1];
  if (lead == 0) throw Error(Errc::InvalidInputs, "line with a = b = 0");
  const std::uint64_t inv = ctx.inv_code(lead);
  for (auto& c : l) c = ctx.mul_code(c, inv);
  return l;
}

PointLineConfig::PointLineConfig(FieldCtx ctx, std::vector<Point> points, std::vector<Line> lines)
    : ctx_(std::move(ctx)), points_(std::move(points)) {
  for (const auto& [x, y] : points_)
    if (x >= ctx_.q() || y >= ctx_.q()) throw Error(Errc::InvalidInputs, "point outside the field");
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  lines_.reserve(lines.size());
  for (const auto& l : lines) lines_.push_back(canonical_line(ctx_, l));
  std::sort(lines_.begin(), lines_.end());
  lines_.erase(std::unique(lines_.begin(), lines_.end()), lines_.end());
}

std::uint64_t count_incidences(const PointLineConfig& cfg, std::uint64_t budget) {
  const auto& F = cfg.field();
  if (static_cast<long double>(cfg.points().size()) * cfg.lines().size() > budget)
    throw Error(Errc::TooLarge, "incidence count exceeds the pair budget");
  std::uint64_t count = 0;
  for (const auto& [x, y] : cfg.points())
    for (const auto& l : cfg.lines())
      if (F.add_code(F.mul_code(l[0], x), F.mul_code(l[1], y)) == l[2]) ++count;
  return count;
}

BoundReport vinh_report(const PointLineConfig& cfg) {
  const long double np = cfg.points().size(), nl = cfg.lines().size();
  const long double q = static_cast<long double>(cfg.field().q());
  const long double inc = static_cast<long double>(count_incidences(cfg));
  Digest d;
  d.add("vinh").add(cfg.field());
  for (const auto& [x, y] : cfg.points()) d.add(x).add(y);
  for (const auto& l : cfg.lines()) d.add(l[0]).add(l[1]).add(l[2]);
  BoundReport r = make_report("vinh", Quantity::of_float(std::fabs(inc - np * nl / q)), Quantity::of_float(std::sqrt(q * np * nl)),
                              1.0, true, d.hex());
  return r;
}

// ------------------------------------------------------------- report checks

namespace {

long double ld(std::size_t n) { return static_cast<long double>(n); }

FSet without_zero(const FSet& s) { return set_difference(s, FSet::from_sorted_unique(s.field(), {0})); }

// min over s of r_{Q+R}(s); zero if some element is not represented
std::uint64_t min_representation(const FSet& s, const FSet& q, const FSet& r) {
  if (s.empty()) return 0;
  const RepHistogram h = rep_function(q, r, SetOp::add);
  std::uint64_t m = ~std::uint64_t{0};
  for (auto x : s) m = std::min(m, h.count(x));
  return m;
}

long double dyadic_rhs(long double na, long double nb, long double nq, long double nr, long double t, long double q) {
  const long double lg = na > 1 ? std::log2(na) : 0;
  return na * nb * nb * nq * nr / (t * q) + q * nq * nr * nb * lg / (t * t);
}

}  // namespace

BoundReport multiplicative_dyadic_report(const FSet& a, const FSet& b, const FSet& q, const FSet& r, double constant) {
  const auto& F = a.field();
  const std::uint64_t t = min_representation(a, q, r);
  const long double te = std::max<std::uint64_t>(t, 1);
  const Count e = mult_energy_k(a, b, 2).value;
  Digest d;
  d.add("multiplicative_dyadic").add(a).add(b).add(q).add(r);
  BoundReport rep = make_report("multiplicative_dyadic", Quantity::of(e),
                                Quantity::of_float(dyadic_rhs(ld(a.size()), ld(b.size()), ld(q.size()), ld(r.size()), te,
                                                              static_cast<long double>(F.q()))),
                                constant, false, d.hex());
  rep.hypothesis_flags["T_ge_1"] = t >= 1;
  rep.hypothesis_flags["A_nonzero"] = !a.contains(std::uint64_t{0});
  rep.hypothesis_flags["B_nonzero"] = !b.contains(std::uint64_t{0});
  rep.notes["T"] = std::to_string(t);
  return rep;
}

BoundReport rational_energy_report(const FSet& a, const FSet& b, const FSet& q, const FSet& r, const RationalFunction& f,
                                   double constant) {
  const auto& F = a.field();
  const std::uint64_t t = min_representation(a, q, r);
  const long double te = std::max<std::uint64_t>(t, 1);
  const Count e = additive_energy(rational_image(f, a), b).value;
  Digest d;
  d.add("rational_energy").add(a).add(b).add(q).add(r).add(f.to_string());
  BoundReport rep = make_report("rational_energy", Quantity::of(e),
                                Quantity::of_float(dyadic_rhs(ld(a.size()), ld(b.size()), ld(q.size()), ld(r.size()), te,
                                                              static_cast<long double>(F.q()))),
                                constant, false, d.hex());
  rep.hypothesis_flags["T_ge_1"] = t >= 1;
  rep.hypothesis_flags["A_nonzero"] = !a.contains(std::uint64_t{0});
  rep.hypothesis_flags["B_nonzero"] = !b.contains(std::uint64_t{0});
  rep.hypothesis_flags["f_nondeg_sufficient"] = rational_nondeg_sufficient(f, F) == NondegVerdict::pass;
  rep.notes["T"] = std::to_string(t);
  rep.notes["degree"] = std::to_string(f.degree());
  return rep;
}

BoundReport mirzaei_report(const FSet& a, const FSet& b, const BivariateQuadratic& f, double constant) {
  const Count e4 = additive_energy_k(a, b, 4).value;
  const long double img = ld(poly_image(f, a, a).image.size());
  const long double nb = ld(b.size()), na = ld(a.size());
  const long double p = a.field().p();
  Digest d;
  d.add("mirzaei").add(a).add(b).add(f.to_string());
  BoundReport rep =
      make_report("mirzaei", Quantity::of(e4), Quantity::of_float(img * img * nb * nb * nb / na), constant, false, d.hex());
  rep.hypothesis_flags["p_constraint"] = na * nb * ld(setop(a, b, SetOp::sub).size()) <= p * p;
  rep.hypothesis_flags["f_nondegenerate"] = is_nondegenerate_quadratic(f);
  rep.hypothesis_flags["prime_field"] = a.field().is_prime_field();
  return rep;
}

BoundReport expander_report(const FSet& a, const BivariateQuadratic& f) {
  const long double diff = ld(setop(a, a, SetOp::sub).size());
  const long double img = ld(poly_image(f, a, a).image.size());
  const long double n = ld(a.size());
  const long double exponent = n > 1 ? std::log(std::max(diff, img)) / std::log(n) : 0;
  Digest d;
  d.add("expander").add(a).add(f.to_string());
  BoundReport rep =
      make_report("expander", Quantity::of_float(28.0L / 23.0L), Quantity::of_float(exponent), 1.0, false, d.hex());
  const long double p = a.field().p();
  rep.hypothesis_flags["p_constraint"] = std::pow(n, 52.0L) <= std::pow(p, 23.0L);
  rep.hypothesis_flags["f_nondegenerate"] = is_nondegenerate_quadratic(f);
  rep.hypothesis_flags["prime_field"] = a.field().is_prime_field();
  rep.notes["exponent"] = std::to_string(static_cast<double>(exponent));
  return rep;
}

// -------------------------------------------------------------------- corpus

namespace {

const std::vector<std::uint64_t>& corpus_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> v;
    for (std::uint64_t n = 5; n <= 257; ++n)
      if (is_prime(n)) v.push_back(n);
    return v;
  }();
  return primes;
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {  // inclusive, unbiased
  const std::uint64_t span = hi - lo + 1;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
  std::uint64_t v;
  do v = rng();
  while (v >= limit);
  return lo + v % span;
}

FSet structured_set(const FieldCtx& F, std::mt19937_64& rng, std::size_t size, unsigned kind) {
  const std::uint64_t p = F.p();
  switch (kind % 6) {
    case 0: return random_set(F, size, rng());
    case 1: return arithmetic_progression(F, draw(rng, 0, p - 1), draw(rng, 1, p - 1), size);
    case 2: {
      const std::uint64_t ratio = draw(rng, 2, p - 1);
      const std::size_t len = std::min<std::uint64_t>(size, multiplicative_order(F, ratio));
      return geometric_progression(F, draw(rng, 1, p - 1), ratio, len);
    }
    case 3: {
      // largest divisor of p - 1 not above size
      std::uint64_t order = 1;
      for (std::uint64_t m = 1; m <= std::min<std::uint64_t>(size, p - 1); ++m)
        if ((p - 1) % m == 0) order = m;
      return multiplicative_subgroup(F, order);
    }
    case 4: return interval(F, draw(rng, 0, p - 1), size);
    default: {
      const std::size_t half = std::max<std::size_t>(1, size / 2);
      const std::uint64_t ratio = draw(rng, 2, p - 1);
      const std::size_t len = std::min<std::uint64_t>(half, multiplicative_order(F, ratio));
      return set_union(arithmetic_progression(F, 0, 1, half), geometric_progression(F, 1, ratio, len));
    }
  }
}

BivariateQuadratic random_nondegenerate(const FieldCtx& F, std::mt19937_64& rng) {
  for (;;) {
    BivariateQuadratic::Coeffs k;
    k.q1 = draw(rng, 0, F.p() - 1);
    k.q2 = draw(rng, 0, F.p() - 1);
    k.q3 = draw(rng, 0, F.p() - 1);
    k.l1 = draw(rng, 0, F.p() - 1);
    k.l2 = draw(rng, 0, F.p() - 1);
    k.c = draw(rng, 0, F.p() - 1);
    if (k.q1 == 0 && k.q2 == 0 && k.q3 == 0) continue;
    BivariateQuadratic f(F, k);
    if (is_nondegenerate_quadratic(f)) return f;
  }
}

RationalFunction random_rational(const FieldCtx& F, std::mt19937_64& rng) {
  for (;;) {
    const int dg = static_cast<int>(draw(rng, 0, 3));
    const int dh = static_cast<int>(draw(rng, 0, 2));
    std::vector<std::uint64_t> g(dg + 1), h(dh + 1);
    for (auto& c : g) c = draw(rng, 0, F.p() - 1);
    for (auto& c : h) c = draw(rng, 0, F.p() - 1);
    UnivariatePoly hp(F, h);
    if (hp.is_zero()) continue;
    RationalFunction f(UnivariatePoly(F, g), hp);
    if (rational_nondeg_sufficient(f, F) == NondegVerdict::pass) return f;
  }
}

PointLineConfig random_config(std::mt19937_64& rng) {
  static const std::vector<std::uint64_t> small = {5, 7, 11, 13, 17, 19, 23};
  const std::uint64_t pick = draw(rng, 0, small.size() + 1);
  FieldCtx F = pick < small.size() ? FieldCtx(small[pick]) : FieldCtx::extension(pick == small.size() ? 3 : 5, 2);
  const std::uint64_t q = F.q();
  const std::size_t np = draw(rng, 1, std::min<std::uint64_t>(q * q, 60));
  const std::size_t nl = draw(rng, 1, 60);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < np; ++i) pts.emplace_back(draw(rng, 0, q - 1), draw(rng, 0, q - 1));
  std::vector<Line> lines;
  while (lines.size() < nl) {
    Line l{draw(rng, 0, q - 1), draw(rng, 0, q - 1), draw(rng, 0, q - 1)};
    if (l[0] != 0 || l[1] != 0) lines.push_back(l);
  }
  return PointLineConfig(F, std::move(pts), std::move(lines));
}

}  // namespace

std::vector<CorpusInstance> make_corpus(std::uint64_t seed, std::size_t count) {
  std::vector<CorpusInstance> out;
  out.reserve(count);
  const auto& primes = corpus_primes();
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + i);
    const FieldCtx F(primes[draw(rng, 0, primes.size() - 1)]);
    const std::size_t cap = std::min<std::uint64_t>(64, F.p() - 1);
    const unsigned kind = static_cast<unsigned>(draw(rng, 0, 5));
    FSet a = structured_set(F, rng, draw(rng, 2, cap), kind);
    FSet b = structured_set(F, rng, draw(rng, 1, cap), static_cast<unsigned>(draw(rng, 0, 5)));
    // X1: a random nonempty subset of A
    std::vector<std::uint64_t> x1;
    for (auto c : a)
      if (draw(rng, 0, 1)) x1.push_back(c);
    if (x1.empty()) x1.push_back(a.codes()[0]);
    // a cover of A by up to four pieces
    const std::size_t k = std::min<std::size_t>(draw(rng, 1, 4), a.size());
    std::vector<std::vector<std::uint64_t>> pieces(k);
    for (std::size_t j = 0; j < a.size(); ++j) pieces[j < k ? j : draw(rng, 0, k - 1)].push_back(a.codes()[j]);
    std::vector<FSet> parts;
    for (auto& pc : pieces) parts.emplace_back(F, std::move(pc));
    const std::uint64_t extra = std::min<std::uint64_t>(8, F.p());
    FSet qset = set_union(a, random_set(F, draw(rng, 1, extra), rng()));
    FSet rset = set_union(FSet::from_sorted_unique(F, {0}), random_set(F, draw(rng, 1, extra), rng()));
    BivariateQuadratic f = random_nondegenerate(F, rng);
    RationalFunction g = random_rational(F, rng);
    PointLineConfig cfg = random_config(rng);
    out.push_back(CorpusInstance{i, F, std::move(a), std::move(b), FSet(F, std::move(x1)), std::move(parts), std::move(qset),
                                 std::move(rset), std::move(f), std::move(g), std::move(cfg)});
  }
  return out;
}

// ------------------------------------------------------------------- battery

namespace {

const std::vector<std::string> kHardChecks = {"cauchy_schwarz_sum", "cauchy_schwarz_difference", "first_moment",
                                              "subadditivity",      "vinogradov",                "holder4",
                                              "holder8",            "konshk",                    "vinh"};
const std::vector<std::string> kReportChecks = {"multiplicative_dyadic", "rational_energy", "mirzaei", "expander",
                                                "six_tuple"};

// leading elements of s avoiding zero, at most n of them
FSet head_nonzero(const FSet& s, std::size_t n) {
  std::vector<std::uint64_t> v;
  for (auto c : s) {
    if (v.size() == n) break;
    if (c != 0) v.push_back(c);
  }
  return FSet::from_sorted_unique(s.field(), std::move(v));
}

BoundReport run_check(std::string_view check, const CorpusInstance& in, const BatteryOptions& opt) {
  if (check == "cauchy_schwarz_sum" || check == "cauchy_schwarz_difference") {
    IdentityInputs x{{in.A, in.B}, check == "cauchy_schwarz_sum" ? SetOp::add : SetOp::sub, std::nullopt};
    BoundReport r = check_identity("cauchy_schwarz", x);
    r.name = std::string(check);
    return r;
  }
  if (check == "first_moment") return check_identity("first_moment", IdentityInputs{{in.A, in.B}, SetOp::sub, std::nullopt});
  if (check == "subadditivity") return check_identity("subadditivity", IdentityInputs{in.parts, SetOp::add, in.f});
  if (check == "vinogradov") return check_expsum_bound("vinogradov", {in.A, in.B});
  if (check == "holder4") return check_expsum_bound("holder4", {in.A, in.B});
  if (check == "holder8") return check_expsum_bound("holder8", {in.A, in.B});
  if (check == "konshk") return check_expsum_bound("konshk", {in.X1, in.A});
  if (check == "vinh") return vinh_report(in.incidences);
  if (check == "multiplicative_dyadic")
    return multiplicative_dyadic_report(without_zero(in.A), without_zero(in.B), in.Q, in.R, opt.constant);
  if (check == "rational_energy")
    return rational_energy_report(without_zero(in.A), without_zero(in.B), in.Q, in.R, in.g, opt.constant);
  if (check == "mirzaei") return mirzaei_report(in.A, in.B, in.f, opt.constant);
  if (check == "expander") return expander_report(in.A, in.f);
  if (check == "six_tuple") {
    const std::uint64_t p = in.ctx.p();
    std::size_t side = 8;
    while (side > 1 && side * side * side > p * p) --side;
    return six_tuple_report(in.f, head_nonzero(in.A, side), head_nonzero(in.B, side), head_nonzero(in.X1, side),
                            opt.constant);
  }
  throw Error(Errc::UnknownCheckName, "unknown check '" + std::string(check) + "'");
}

}  // namespace

std::vector<std::string> suite_checks(std::string_view suite) {
  if (suite == "constant-free") return kHardChecks;
  if (suite == "reports") return kReportChecks;
  if (suite == "all") {
    std::vector<std::string> v = kHardChecks;
    v.insert(v.end(), kReportChecks.begin(), kReportChecks.end());
    return v;
  }
  throw Error(Errc::UnknownCheckName, "unknown suite '" + std::string(suite) + "'");
}

bool is_hard_check(std::string_view check) {
  return std::find(kHardChecks.begin(), kHardChecks.end(), check) != kHardChecks.end();
}

BatteryResult run_battery(const std::vector<std::string>& checks, const std::vector<CorpusInstance>& corpus,
                          const BatteryOptions& opt) {
  for (const auto& c : checks)
    if (!is_hard_check(c) && std::find(kReportChecks.begin(), kReportChecks.end(), c) == kReportChecks.end())
      throw Error(Errc::UnknownCheckName, "unknown check '" + c + "'");
  BatteryResult out;
  for (const auto& in : corpus)
    for (const auto& c : checks) {
      BoundReport r = run_check(c, in, opt);
      r.hard = is_hard_check(c);
      out.reports.push_back(r);
      if (r.hard && !r.pass) {
        ++out.hard_failures;
        out.failure = r.to_json_line();
        out.aborted = true;
        return out;
      }
    }
  return out;
}

}  // namespace lowenergy

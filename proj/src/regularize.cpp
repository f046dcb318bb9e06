#include "lowenergy/regularize.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "lowenergy/energy.hpp"
#include "lowenergy/error.hpp"

namespace lowenergy {

unsigned dyadic_class_count(std::uint64_t n) noexcept {
  return n == 0 ? 0 : static_cast<unsigned>(std::bit_width(n));
}

namespace {

unsigned level(std::uint64_t r) { return static_cast<unsigned>(std::bit_width(r)) - 1; }

struct Level {
  std::uint64_t tau = 0;
  std::vector<std::uint64_t> codes;
};

// non-empty dyadic level sets in increasing tau
std::vector<Level> levels_of(const RepHistogram& h) {
  std::vector<Level> by_level(64);
  for (const auto& [code, r] : h.entries) by_level[level(r)].codes.push_back(code);
  std::vector<Level> out;
  for (unsigned i = 0; i < 64; ++i)
    if (!by_level[i].codes.empty()) {
      by_level[i].tau = std::uint64_t{1} << i;
      out.push_back(std::move(by_level[i]));
    }
  return out;
}

DyadicClass make_class(const Level& lv, const FieldCtx& ctx, Count energy, std::uint64_t n) {
  DyadicClass c{FSet::from_sorted_unique(ctx, lv.codes), lv.tau, energy, n, dyadic_class_count(n), false};
  c.sharp_bound = checked_mul(c.mass(), c.class_count) >= energy;
  return c;
}

// pick the index maximizing w(i); ties keep the earliest (smallest level)
template <class W>
std::size_t argmax_first(std::size_t count, W w) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < count; ++i)
    if (w(i) > w(best)) best = i;
  return best;
}

}  // namespace

DyadicClass dyadic_class_of(const RepHistogram& h, const FieldCtx& ctx, std::uint64_t n) {
  if (h.entries.empty()) throw Error(Errc::TooSmall, "dyadic class of an empty histogram");
  const auto levels = levels_of(h);
  const Count energy = moment(h, 2);
  const std::size_t best =
      argmax_first(levels.size(), [&](std::size_t i) { return Count{levels[i].tau} * levels[i].tau * levels[i].codes.size(); });
  DyadicClass c = make_class(levels[best], ctx, energy, n);
  // each level carries less than 4 tau^2 |D_i|, so the best one carries E / (4 #levels)
  const Count mass = c.mass();
  if (mass > energy) throw Error(Errc::Internal, "dyadic class mass exceeds the energy");
  const unsigned max_levels = dyadic_class_count(h.max_count());
  if (checked_mul(checked_mul(mass, 4), max_levels) < energy)
    throw Error(Errc::Internal, "dyadic class below E / (4 (floor(log2 max r) + 1))");
  return c;
}

DyadicClass dyadic_energy_class(const FSet& x, SetOp op) {
  if (x.size() < 2) throw Error(Errc::TooSmall, "dyadic class needs |X| >= 2");
  if (op != SetOp::add && op != SetOp::sub) throw Error(Errc::InvalidParams, "dyadic energy class takes op + or -");
  return dyadic_class_of(rep_function(x, x, op), x.field(), x.size());
}

std::string_view to_string(PopularCase c) noexcept {
  return c == PopularCase::abscissae ? "abscissae" : "ordinates";
}

namespace {

struct Pick {
  std::vector<std::uint64_t> members;  // sorted codes
  std::uint64_t kappa = 0;
};

// dyadic classes of a per-element count, choosing the one maximizing kappa * |class|
Pick pick_popular(const std::vector<std::uint64_t>& elems, const std::vector<std::uint64_t>& counts) {
  std::vector<std::vector<std::uint64_t>> by_level(64);
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (counts[i] > 0) by_level[level(counts[i])].push_back(elems[i]);
  Pick best;
  Count best_w = 0;
  for (unsigned i = 0; i < 64; ++i) {
    if (by_level[i].empty()) continue;
    const Count w = Count{std::uint64_t{1} << i} * by_level[i].size();
    if (w > best_w) {
      best_w = w;
      best.members = by_level[i];
      best.kappa = std::uint64_t{1} << i;
    }
  }
  return best;
}

}  // namespace

PopularSubset popular_subset(const FSet& x) {
  if (x.size() < 2) throw Error(Errc::TooSmall, "popular subset needs |X| >= 2");
  const auto& F = x.field();
  PopularSubset out{FSet(F), 0, PopularCase::abscissae, dyadic_energy_class(x, SetOp::add)};
  const Indicator inD(out.cls.D);
  const auto& xs = x.codes();
  const std::size_t n = xs.size();
  out.class_count = dyadic_class_count(n);

  // P_1 = {(x, y) : x + y in D}; column x has |A_x| = r_{D-X}(x) points
  std::vector<std::uint64_t> col(n, 0);
  std::uint64_t p1 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (inD(F.add_code(xs[i], xs[j]))) ++col[i];
    p1 += col[i];
  }
  Pick v = pick_popular(xs, col);
  out.kappa1 = v.kappa;
  out.V_size = v.members.size();

  const double log_x = std::log2(static_cast<double>(n));
  if (static_cast<double>(v.members.size()) * std::sqrt(log_x) >= static_cast<double>(v.kappa)) {
    out.case_taken = PopularCase::abscissae;
    out.X_star = FSet::from_sorted_unique(F, std::move(v.members));
    out.kappa = v.kappa;
    out.P_size = p1;
  } else {
    // P_2 keeps the points of P_1 in the V columns; row y has |B_y| of them
    std::vector<std::uint64_t> row(n, 0);
    std::uint64_t p2 = 0;
    for (std::size_t j = 0; j < n; ++j) {
      for (auto vx : v.members)
        if (inD(F.add_code(vx, xs[j]))) ++row[j];
      p2 += row[j];
    }
    Pick u = pick_popular(xs, row);
    out.case_taken = PopularCase::ordinates;
    out.X_star = FSet::from_sorted_unique(F, std::move(u.members));
    out.kappa = u.kappa;
    out.P_size = p2;
  }

  // certificate: recount r_{D-X} directly
  const RepHistogram r = rep_function(out.cls.D, x, SetOp::sub);
  for (auto c : out.X_star)
    if (r.count(c) < out.kappa) throw Error(Errc::Internal, "popular subset element below kappa");
  const Count prod = Count{out.kappa} * out.X_star.size();
  if (prod * 2 * out.class_count < out.P_size) throw Error(Errc::Internal, "popular subset below |P| / (2 class count)");
  out.sharp_product_bound = prod * out.class_count >= out.P_size;
  return out;
}

// ------------------------------------------------------------ regularization

namespace {

RegularTriple regularize_impl(const FSet& a, const FSet* fixed_v) {
  if (a.size() < 2) throw Error(Errc::TooSmall, "regularization needs |A| >= 2");
  if (fixed_v && fixed_v->empty()) throw Error(Errc::TooSmall, "regularization needs |V| >= 1");
  if (fixed_v) require_same_field(a, *fixed_v);
  const auto& F = a.field();
  RegularTriple out{a, FSet(F), FSet(F)};
  const double log_a = std::log2(static_cast<double>(a.size()));
  const double c_need = out.c2 * log_a * log_a;

  FSet b = a;
  for (std::size_t round = 0;; ++round) {
    if (static_cast<double>(b.size()) * out.c1 < static_cast<double>(a.size()))
      throw Error(Errc::Internal, "regularization removed more than |A| / c1 elements");
    const FSet& v = fixed_v ? *fixed_v : b;
    const RepHistogram h = rep_function(b, v, SetOp::sub);
    const Count energy = moment(h, 2);
    const unsigned ncl = dyadic_class_count(static_cast<std::uint64_t>(b.size()) * v.size());
    const auto levels = levels_of(h);
    const std::size_t heaviest =
        argmax_first(levels.size(), [&](std::size_t i) { return Count{levels[i].tau} * levels[i].tau * levels[i].codes.size(); });

    std::vector<std::uint64_t> heavy_pop;
    for (std::size_t li = 0; li < levels.size(); ++li) {
      const Level& lv = levels[li];
      const Count mass = Count{lv.tau} * lv.tau * lv.codes.size();
      if (checked_mul(mass, ncl) < energy && li != heaviest) continue;
      const FSet d = FSet::from_sorted_unique(F, lv.codes);
      const Indicator inD(d);
      // pop(c) = r_{D+V}(c) = #{v : c - v in D}
      std::vector<std::uint64_t> pop(b.size(), 0);
      for (std::size_t i = 0; i < b.size(); ++i)
        for (auto y : v)
          if (inD(F.sub_code(b.codes()[i], y))) ++pop[i];
      if (li == heaviest) heavy_pop = pop;
      if (checked_mul(mass, ncl) < energy) continue;
      // c in C iff pop(c) c3 |B| >= |D| t
      const Count need = Count{d.size()} * lv.tau;
      std::vector<std::uint64_t> cs;
      std::uint64_t min_pop = ~std::uint64_t{0};
      for (std::size_t i = 0; i < b.size(); ++i)
        if (Count{pop[i]} * static_cast<std::uint64_t>(out.c3) * b.size() >= need) {
          cs.push_back(b.codes()[i]);
          min_pop = std::min(min_pop, pop[i]);
        }
      if (static_cast<double>(cs.size()) * c_need < static_cast<double>(b.size())) continue;
      out.B = b;
      out.C = FSet::from_sorted_unique(F, std::move(cs));
      out.D = d;
      out.t = lv.tau;
      out.energy = energy;
      out.class_count = ncl;
      out.min_pop = min_pop;
      out.removal_rounds = round;
      // recorded-constant checks
      if (!out.C.subset_of(out.B) || !out.B.subset_of(a)) throw Error(Errc::Internal, "regularization chain broken");
      for (auto x : out.D) {
        const std::uint64_t r = h.count(x);
        if (r < out.t || r >= 2 * out.t) throw Error(Errc::Internal, "regularization class bracket broken");
      }
      return out;
    }
    // strip the least popular elements of the heaviest class and retry
    std::vector<std::size_t> order(b.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return heavy_pop[i] < heavy_pop[j]; });
    const std::size_t drop = std::max<std::size_t>(1, (b.size() + 7) / 8);
    std::vector<std::uint64_t> removed;
    for (std::size_t k = 0; k < drop && k < order.size(); ++k) removed.push_back(b.codes()[order[k]]);
    b = set_difference(b, FSet(F, std::move(removed)));
    if (b.size() < 1) throw Error(Errc::Internal, "regularization exhausted the set");
  }
}

}  // namespace

RegularTriple regularize(const FSet& a) { return regularize_impl(a, nullptr); }

RegularTriple regularize2(const FSet& a, const FSet& v) { return regularize_impl(a, &v); }

}  // namespace lowenergy

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lowenergy/field.hpp"
#include "lowenergy/poly.hpp"
#include "lowenergy/report.hpp"
#include "lowenergy/sets.hpp"

namespace lowenergy {

using Point = std::pair<std::uint64_t, std::uint64_t>;
/// (a, b, c) meaning a x + b y = c.
using Line = std::array<std::uint64_t, 3>;

/// Points and lines in F_q^2. Lines are scaled so the first nonzero of (a, b)
/// is 1; duplicate points and lines are dropped. (a, b) = (0, 0) is InvalidInputs.
class PointLineConfig {
 public:
  PointLineConfig(FieldCtx ctx, std::vector<Point> points, std::vector<Line> lines);

  const FieldCtx& field() const noexcept { return ctx_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  const std::vector<Line>& lines() const noexcept { return lines_; }

  static Line canonical_line(const FieldCtx& ctx, Line l);

 private:
  FieldCtx ctx_;
  std::vector<Point> points_;
  std::vector<Line> lines_;
};

constexpr std::uint64_t kIncidenceBudget = 100'000'000;

/// |{(p, l) : p on l}| by substitution. TooLarge beyond |P||L| = budget.
std::uint64_t count_incidences(const PointLineConfig& cfg, std::uint64_t budget = kIncidenceBudget);

/// | I - |P||L|/q | <= sqrt(q |P||L|). Hard check.
BoundReport vinh_report(const PointLineConfig& cfg);

/// E^x(A, B) against |A||B|^2|Q||R|/(Tq) + q|Q||R||B| log2|A| / T^2, with
/// T = min over a in A of r_{Q+R}(a) (hypothesis flagged T >= 1).
BoundReport multiplicative_dyadic_report(const FSet& a, const FSet& b, const FSet& q, const FSet& r,
                                         double constant = 64.0);
/// E(f(A), B) against the same right side; T is measured on A.
BoundReport rational_energy_report(const FSet& a, const FSet& b, const FSet& q, const FSet& r, const RationalFunction& f,
                                   double constant = 64.0);
/// E_4(A, B) against |f(A, A)|^2 |B|^3 / |A|, hypothesis |A||B||A-B| <= p^2.
BoundReport mirzaei_report(const FSet& a, const FSet& b, const BivariateQuadratic& f, double constant = 64.0);
/// 28/23 against the measured exponent log max{|A-A|, |f(A,A)|} / log|A|.
BoundReport expander_report(const FSet& a, const BivariateQuadratic& f);

/// One generated battery instance.
struct CorpusInstance {
  std::uint64_t index = 0;
  FieldCtx ctx;
  FSet A, B;
  FSet X1;                  // nonempty subset of A
  std::vector<FSet> parts;  // cover of A by 1..4 pieces
  FSet Q, R;
  BivariateQuadratic f;
  RationalFunction g;       // degree 2 <= d < p
  PointLineConfig incidences;
};

std::vector<CorpusInstance> make_corpus(std::uint64_t seed, std::size_t count);

/// Check names of a suite: constant-free, reports, all. UnknownCheckName otherwise.
std::vector<std::string> suite_checks(std::string_view suite);
bool is_hard_check(std::string_view check);

struct BatteryOptions {
  double constant = 64.0;
};

struct BatteryResult {
  std::vector<BoundReport> reports;
  bool aborted = false;
  std::size_t hard_failures = 0;
  std::string failure;  // first failing hard report, as a JSON line
};

/// One report per (check, instance) in instance order. A failing hard check
/// stops the battery; report checks never do.
BatteryResult run_battery(const std::vector<std::string>& checks, const std::vector<CorpusInstance>& corpus,
                          const BatteryOptions& opt = {});

}  // namespace lowenergy

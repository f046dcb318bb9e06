#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lowenergy/field.hpp"
#include "lowenergy/poly.hpp"

namespace lowenergy {

/// Finite subset of a field, kept strictly sorted by element code.
class FSet {
 public:
  explicit FSet(FieldCtx ctx) : ctx_(std::move(ctx)) {}
  /// Sorts and deduplicates; codes must lie in [0, q).
  FSet(FieldCtx ctx, std::vector<std::uint64_t> codes);
  static FSet from_ints(const FieldCtx& ctx, std::initializer_list<std::int64_t> values);
  /// Caller guarantees the codes are strictly increasing and in range.
  static FSet from_sorted_unique(FieldCtx ctx, std::vector<std::uint64_t> codes);
  static FSet full_field(const FieldCtx& ctx);

  const FieldCtx& field() const noexcept { return ctx_; }
  const std::vector<std::uint64_t>& codes() const noexcept { return c_; }
  std::size_t size() const noexcept { return c_.size(); }
  bool empty() const noexcept { return c_.empty(); }
  auto begin() const noexcept { return c_.begin(); }
  auto end() const noexcept { return c_.end(); }
  FElem operator[](std::size_t i) const noexcept { return FElem{c_[i], ctx_.id()}; }

  bool contains(std::uint64_t code) const noexcept;
  bool contains(const FElem& x) const noexcept { return x.ctx == ctx_.id() && contains(x.code); }
  bool subset_of(const FSet& other) const noexcept;

  friend bool operator==(const FSet& a, const FSet& b) noexcept { return a.ctx_ == b.ctx_ && a.c_ == b.c_; }

 private:
  FieldCtx ctx_;
  std::vector<std::uint64_t> c_;
};

/// Constant-time membership for a fixed set: a bitmap over the field when q
/// is small, a hash set otherwise.
class Indicator {
 public:
  explicit Indicator(const FSet& s);
  bool operator()(std::uint64_t code) const noexcept {
    return dense_ ? (code < bits_.size() && bits_[code]) : sparse_.count(code) != 0;
  }

 private:
  bool dense_;
  std::vector<bool> bits_;
  std::unordered_set<std::uint64_t> sparse_;
};

FSet set_union(const FSet& a, const FSet& b);
FSet set_intersection(const FSet& a, const FSet& b);
/// a \ b
FSet set_difference(const FSet& a, const FSet& b);

/// Throws CtxMismatch unless both sets live in the same field.
void require_same_field(const FSet& a, const FSet& b);

/// Representation function: sorted (lambda code, count) pairs, counts >= 1.
struct RepHistogram {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> entries;
  std::uint64_t total = 0;

  std::uint64_t count(std::uint64_t code) const noexcept;
  std::uint64_t max_count() const noexcept;
  std::size_t support_size() const noexcept { return entries.size(); }
  FSet support(const FieldCtx& ctx) const;
};

/// Histogram builder. Dense counting over the whole field when q is small,
/// sort and run-length otherwise; both give the same RepHistogram.
class Tally {
 public:
  Tally(const FieldCtx& ctx, std::size_t expected);
  void add(std::uint64_t code);
  RepHistogram finish();

 private:
  bool dense_;
  std::vector<std::uint32_t> dense_counts_;
  std::vector<std::uint64_t> values_;
  std::uint64_t total_ = 0;
};

enum class SetOp { add, sub, mul, div };

std::string_view to_string(SetOp op) noexcept;
SetOp parse_setop(std::string_view text);

/// a op b on raw codes; div requires b != 0.
std::uint64_t apply_op(const FieldCtx& ctx, SetOp op, std::uint64_t a, std::uint64_t b) noexcept;

/// A op B. Division skips b = 0 and throws EmptyDenominator if B has no nonzero element.
FSet setop(const FSet& a, const FSet& b, SetOp op);
RepHistogram rep_function(const FSet& a, const FSet& b, SetOp op);

struct PolyImage {
  FSet image;
  RepHistogram rep;
};

PolyImage poly_image(const BivariateQuadratic& f, const FSet& a, const FSet& b);
/// {f(a) : a in A}; requires deg f >= 1.
FSet univariate_image(const UnivariatePoly& f, const FSet& a);
/// {f(a) : a in A, a not a pole}.
FSet rational_image(const RationalFunction& f, const FSet& a);

struct Orbit {
  FSet set;
  bool closed = false;
};

/// u, f(u), f(f(u)), ... until a value repeats or `cap` distinct values are held.
Orbit orbit(const UnivariatePoly& f, const FElem& u, std::size_t cap);

FSet arithmetic_progression(const FieldCtx& ctx, std::uint64_t start, std::uint64_t diff, std::size_t len);
FSet geometric_progression(const FieldCtx& ctx, std::uint64_t start, std::uint64_t ratio, std::size_t len);
/// The unique multiplicative subgroup of the given order; order | q - 1.
FSet multiplicative_subgroup(const FieldCtx& ctx, std::uint64_t order);
/// `size` distinct elements drawn with a seeded mt19937_64.
FSet random_set(const FieldCtx& ctx, std::size_t size, std::uint64_t seed);
FSet interval(const FieldCtx& ctx, std::uint64_t start, std::size_t len);

/// Multiplicative order of a nonzero element.
std::uint64_t multiplicative_order(const FieldCtx& ctx, std::uint64_t code);

using GenParams = std::map<std::string, std::string>;

/// `start=0,diff=1,len=10` style parameter lists.
GenParams parse_gen_params(std::string_view text);

/// kind in {ap, gp, subgroup, random, interval, union, orbit}. `union` takes
/// parts=<kind>:<params>;<kind>:<params>... Throws InvalidParams with a reason.
FSet generate(std::string_view kind, const GenParams& params, const FieldCtx& ctx);
FSet generate(std::string_view kind, std::string_view params, const FieldCtx& ctx);

/// Set file: `p=<p>` or `p=<p> q=<p>^<n> mod=<c0,c1,...>` then one code per line.
void write_set(std::ostream& os, const FSet& s);
FSet read_set(std::istream& is);
void write_set_file(const std::string& path, const FSet& s);
FSet read_set_file(const std::string& path);
/// Header line for a field, as written by write_set.
std::string field_header(const FieldCtx& ctx);
FieldCtx parse_field_header(std::string_view line);

}  // namespace lowenergy

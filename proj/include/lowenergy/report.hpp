#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "lowenergy/count.hpp"

namespace lowenergy {

class FSet;
class FieldCtx;

/// Either an exact count or a floating value.
struct Quantity {
  bool exact = false;
  Count n = 0;
  long double x = 0;

  static Quantity of(Count v) { return Quantity{true, v, static_cast<long double>(v)}; }
  static Quantity of_float(long double v) { return Quantity{false, 0, v}; }
  long double value() const noexcept { return exact ? static_cast<long double>(n) : x; }
  std::string str() const;
};

enum class BoundKind {
  upper,     // lhs <= constant * rhs
  equality,  // lhs == rhs
};

/// One evaluated inequality. `hard` marks constant-free statements whose
/// failure is a bug; the rest only illustrate a bound with a chosen constant.
struct BoundReport {
  std::string name;
  Quantity lhs;
  Quantity rhs;
  double constant = 1.0;
  std::map<std::string, bool> hypothesis_flags;
  bool pass = false;
  std::string inputs_digest;
  BoundKind kind = BoundKind::upper;
  bool hard = false;
  double slack = 1e-6;
  /// Free-form extras (measured exponents, log conventions); not part of the JSON line.
  std::map<std::string, std::string> notes;

  /// Recomputes `pass` from lhs, rhs, constant, kind and slack.
  void evaluate();
  std::string to_json_line() const;
};

BoundReport make_report(std::string name, Quantity lhs, Quantity rhs, double constant, bool hard,
                        std::string digest, BoundKind kind = BoundKind::upper, double slack = 1e-6);

/// FNV-1a over a canonical byte stream of the inputs.
class Digest {
 public:
  Digest& add(std::string_view s);
  Digest& add(std::uint64_t v);
  Digest& add(const FieldCtx& ctx);
  Digest& add(const FSet& s);
  std::string hex() const;

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace lowenergy

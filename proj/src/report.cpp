#include "lowenergy/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "lowenergy/sets.hpp"

namespace lowenergy {

std::string Quantity::str() const {
  if (exact) return to_string(n);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lg", x);
  return buf;
}

void BoundReport::evaluate() {
  if (kind == BoundKind::equality) {
    if (lhs.exact && rhs.exact) pass = lhs.n == rhs.n;
    else pass = std::fabs(lhs.value() - rhs.value()) <= slack * std::max<long double>(1, std::fabs(rhs.value()));
    return;
  }
  if (lhs.exact && rhs.exact && constant >= 0 && std::floor(constant) == constant) {
    const Count c = static_cast<Count>(constant);
    if (c == 0 || rhs.n == 0 || rhs.n <= ~Count{0} / c) {
      pass = lhs.n <= c * rhs.n;
      return;
    }
  }
  const long double bound = static_cast<long double>(constant) * rhs.value();
  pass = lhs.value() <= bound + slack * std::fabs(bound);
}

namespace {

nlohmann::json quantity_json(const Quantity& q) {
  if (q.exact) {
    if (q.n <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(q.n);
    return to_string(q.n);
  }
  return static_cast<double>(q.x);
}

}  // namespace

std::string BoundReport::to_json_line() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["lhs"] = quantity_json(lhs);
  j["rhs"] = quantity_json(rhs);
  j["constant"] = constant;
  j["hypothesis_flags"] = hypothesis_flags;
  j["pass"] = pass;
  j["inputs_digest"] = inputs_digest;
  return j.dump();
}

BoundReport make_report(std::string name, Quantity lhs, Quantity rhs, double constant, bool hard, std::string digest,
                        BoundKind kind, double slack) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.constant = constant;
  r.hard = hard;
  r.inputs_digest = std::move(digest);
  r.kind = kind;
  r.slack = slack;
  r.evaluate();
  return r;
}

Digest& Digest::add(std::string_view s) {
  for (unsigned char c : s) {
    h_ ^= c;
    h_ *= 0x100000001b3ULL;
  }
  h_ ^= 0xff;  // separator
  h_ *= 0x100000001b3ULL;
  return *this;
}

Digest& Digest::add(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h_ ^= (v >> (8 * i)) & 0xff;
    h_ *= 0x100000001b3ULL;
  }
  return *this;
}

Digest& Digest::add(const FieldCtx& ctx) { return add(field_header(ctx)); }

Digest& Digest::add(const FSet& s) {
  add(s.field());
  add(static_cast<std::uint64_t>(s.size()));
  for (auto c : s) add(c);
  return *this;
}

std::string Digest::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
  return buf;
}

}  // namespace lowenergy

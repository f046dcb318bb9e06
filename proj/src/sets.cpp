#include "lowenergy/sets.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <optional>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "lowenergy/error.hpp"

namespace lowenergy {

// ---------------------------------------------------------------------- FSet

FSet::FSet(FieldCtx ctx, std::vector<std::uint64_t> codes) : ctx_(std::move(ctx)), c_(std::move(codes)) {
  for (auto c : c_)
    if (c >= ctx_.q()) throw Error(Errc::InvalidParams, "element code " + std::to_string(c) + " outside the field");
  std::sort(c_.begin(), c_.end());
  c_.erase(std::unique(c_.begin(), c_.end()), c_.end());
}

FSet FSet::from_ints(const FieldCtx& ctx, std::initializer_list<std::int64_t> values) {
  std::vector<std::uint64_t> c;
  for (auto v : values) c.push_back(ctx.from_int(v).code);
  return FSet(ctx, std::move(c));
}

FSet FSet::from_sorted_unique(FieldCtx ctx, std::vector<std::uint64_t> codes) {
  FSet s(std::move(ctx));
  s.c_ = std::move(codes);
  return s;
}

FSet FSet::full_field(const FieldCtx& ctx) {
  if (ctx.q() > (std::uint64_t{1} << 26)) throw Error(Errc::TooLarge, "field too large to enumerate");
  std::vector<std::uint64_t> c(ctx.q());
  for (std::uint64_t i = 0; i < ctx.q(); ++i) c[i] = i;
  return from_sorted_unique(ctx, std::move(c));
}

bool FSet::contains(std::uint64_t code) const noexcept { return std::binary_search(c_.begin(), c_.end(), code); }

bool FSet::subset_of(const FSet& other) const noexcept {
  return ctx_ == other.ctx_ && std::includes(other.c_.begin(), other.c_.end(), c_.begin(), c_.end());
}

Indicator::Indicator(const FSet& s) : dense_(s.field().q() <= (std::uint64_t{1} << 26)) {
  if (dense_) {
    bits_.assign(s.field().q(), false);
    for (auto c : s) bits_[c] = true;
  } else {
    sparse_.insert(s.begin(), s.end());
  }
}

void require_same_field(const FSet& a, const FSet& b) {
  if (!(a.field() == b.field()))
    throw Error(Errc::CtxMismatch, "sets over " + a.field().describe() + " and " + b.field().describe());
}

FSet set_union(const FSet& a, const FSet& b) {
  require_same_field(a, b);
  std::vector<std::uint64_t> r;
  r.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return FSet::from_sorted_unique(a.field(), std::move(r));
}

FSet set_intersection(const FSet& a, const FSet& b) {
  require_same_field(a, b);
  std::vector<std::uint64_t> r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return FSet::from_sorted_unique(a.field(), std::move(r));
}

FSet set_difference(const FSet& a, const FSet& b) {
  require_same_field(a, b);
  std::vector<std::uint64_t> r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return FSet::from_sorted_unique(a.field(), std::move(r));
}

// ----------------------------------------------------------------- histogram

std::uint64_t RepHistogram::count(std::uint64_t code) const noexcept {
  auto it = std::lower_bound(entries.begin(), entries.end(), code,
                             [](const auto& e, std::uint64_t c) { return e.first < c; });
  return it != entries.end() && it->first == code ? it->second : 0;
}

std::uint64_t RepHistogram::max_count() const noexcept {
  std::uint64_t m = 0;
  for (const auto& e : entries) m = std::max(m, e.second);
  return m;
}

FSet RepHistogram::support(const FieldCtx& ctx) const {
  std::vector<std::uint64_t> c;
  c.reserve(entries.size());
  for (const auto& e : entries) c.push_back(e.first);
  return FSet::from_sorted_unique(ctx, std::move(c));
}

Tally::Tally(const FieldCtx& ctx, std::size_t expected) {
  const std::uint64_t q = ctx.q();
  dense_ = q <= (std::uint64_t{1} << 26) && q <= 16 * static_cast<std::uint64_t>(expected) + 4096;
  if (dense_) dense_counts_.assign(q, 0);
  else values_.reserve(expected);
}

void Tally::add(std::uint64_t code) {
  ++total_;
  if (dense_) ++dense_counts_[code];
  else values_.push_back(code);
}

RepHistogram Tally::finish() {
  RepHistogram h;
  h.total = total_;
  if (dense_) {
    for (std::size_t i = 0; i < dense_counts_.size(); ++i)
      if (dense_counts_[i] != 0) h.entries.emplace_back(i, dense_counts_[i]);
    return h;
  }
  std::sort(values_.begin(), values_.end());
  for (std::size_t i = 0; i < values_.size();) {
    std::size_t j = i;
    while (j < values_.size() && values_[j] == values_[i]) ++j;
    h.entries.emplace_back(values_[i], j - i);
    i = j;
  }
  return h;
}

// ------------------------------------------------------------------- set ops

std::string_view to_string(SetOp op) noexcept {
  switch (op) {
    case SetOp::add: return "+";
    case SetOp::sub: return "-";
    case SetOp::mul: return "*";
    case SetOp::div: return "/";
  }
  return "?";
}

SetOp parse_setop(std::string_view text) {
  if (text == "+" || text == "add") return SetOp::add;
  if (text == "-" || text == "sub") return SetOp::sub;
  if (text == "*" || text == "x" || text == "mul") return SetOp::mul;
  if (text == "/" || text == "div") return SetOp::div;
  throw Error(Errc::InvalidParams, "unknown set operation '" + std::string(text) + "'");
}

std::uint64_t apply_op(const FieldCtx& ctx, SetOp op, std::uint64_t a, std::uint64_t b) noexcept {
  switch (op) {
    case SetOp::add: return ctx.add_code(a, b);
    case SetOp::sub: return ctx.sub_code(a, b);
    case SetOp::mul: return ctx.mul_code(a, b);
    case SetOp::div: return ctx.mul_code(a, ctx.inv_code(b));
  }
  return 0;
}

namespace {

void require_denominator(const FSet& b, SetOp op) {
  if (op == SetOp::div && (b.empty() || (b.size() == 1 && b.codes()[0] == 0)))
    throw Error(Errc::EmptyDenominator, "ratio set with B contained in {0}");
}

}  // namespace

RepHistogram rep_function(const FSet& a, const FSet& b, SetOp op) {
  require_same_field(a, b);
  require_denominator(b, op);
  const auto& F = a.field();
  Tally t(F, a.size() * b.size());
  if (op == SetOp::div) {
    for (auto y : b) {
      if (y == 0) continue;
      const std::uint64_t inv = F.inv_code(y);
      for (auto x : a) t.add(F.mul_code(x, inv));
    }
  } else {
    for (auto x : a)
      for (auto y : b) t.add(apply_op(F, op, x, y));
  }
  return t.finish();
}

FSet setop(const FSet& a, const FSet& b, SetOp op) { return rep_function(a, b, op).support(a.field()); }

PolyImage poly_image(const BivariateQuadratic& f, const FSet& a, const FSet& b) {
  require_same_field(a, b);
  if (!(f.field() == a.field())) throw Error(Errc::CtxMismatch, "polynomial and sets over different fields");
  Tally t(a.field(), a.size() * b.size());
  for (auto x : a)
    for (auto y : b) t.add(f.eval_code(x, y));
  RepHistogram h = t.finish();
  FSet img = h.support(a.field());
  return {std::move(img), std::move(h)};
}

FSet univariate_image(const UnivariatePoly& f, const FSet& a) {
  if (f.degree() < 1) throw Error(Errc::InvalidParams, "univariate image needs deg f >= 1");
  if (!(f.field() == a.field())) throw Error(Errc::CtxMismatch, "polynomial and set over different fields");
  std::vector<std::uint64_t> r;
  r.reserve(a.size());
  for (auto x : a) r.push_back(f.eval_code(x));
  return FSet(a.field(), std::move(r));
}

FSet rational_image(const RationalFunction& f, const FSet& a) {
  if (!(f.field() == a.field())) throw Error(Errc::CtxMismatch, "rational function and set over different fields");
  std::vector<std::uint64_t> r;
  for (auto x : a)
    if (auto v = f.eval_code(x)) r.push_back(*v);
  return FSet(a.field(), std::move(r));
}

Orbit orbit(const UnivariatePoly& f, const FElem& u, std::size_t cap) {
  if (cap == 0) throw Error(Errc::InvalidParams, "orbit cap must be positive");
  const auto& F = f.field();
  F.check(u);
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> vals;
  std::uint64_t x = u.code;
  bool closed = false;
  while (vals.size() < cap) {
    seen.insert(x);
    vals.push_back(x);
    x = f.eval_code(x);
    if (seen.count(x)) {
      closed = true;
      break;
    }
  }
  return {FSet(F, std::move(vals)), closed};
}

// ---------------------------------------------------------------- generators

std::uint64_t multiplicative_order(const FieldCtx& ctx, std::uint64_t code) {
  if (code == 0 || code >= ctx.q()) throw Error(Errc::InvalidParams, "order of zero or out-of-range element");
  std::uint64_t n = ctx.q() - 1;
  std::uint64_t ord = n;
  // strip prime factors of q - 1 while the power stays 1
  std::uint64_t m = n;
  for (std::uint64_t r = 2; r * r <= m; ++r) {
    if (m % r) continue;
    while (m % r == 0) m /= r;
    while (ord % r == 0 && ctx.pow_code(code, ord / r) == 1) ord /= r;
  }
  if (m > 1)
    while (ord % m == 0 && ctx.pow_code(code, ord / m) == 1) ord /= m;
  return ord;
}

FSet arithmetic_progression(const FieldCtx& ctx, std::uint64_t start, std::uint64_t diff, std::size_t len) {
  if (diff == 0) throw Error(Errc::InvalidParams, "arithmetic progression needs a nonzero difference");
  if (start >= ctx.q() || diff >= ctx.q()) throw Error(Errc::InvalidParams, "progression parameters outside the field");
  if (len > ctx.p()) throw Error(Errc::InvalidParams, "arithmetic progression longer than p repeats");
  std::vector<std::uint64_t> v;
  v.reserve(len);
  std::uint64_t x = start;
  for (std::size_t i = 0; i < len; ++i, x = ctx.add_code(x, diff)) v.push_back(x);
  return FSet(ctx, std::move(v));
}

FSet geometric_progression(const FieldCtx& ctx, std::uint64_t start, std::uint64_t ratio, std::size_t len) {
  if (ratio == 0 || ratio == 1) throw Error(Errc::InvalidParams, "geometric progression ratio must not be 0 or 1");
  if (start == 0) throw Error(Errc::InvalidParams, "geometric progression needs a nonzero start");
  if (start >= ctx.q() || ratio >= ctx.q()) throw Error(Errc::InvalidParams, "progression parameters outside the field");
  if (len > multiplicative_order(ctx, ratio))
    throw Error(Errc::InvalidParams, "geometric progression longer than the order of the ratio repeats");
  std::vector<std::uint64_t> v;
  v.reserve(len);
  std::uint64_t x = start;
  for (std::size_t i = 0; i < len; ++i, x = ctx.mul_code(x, ratio)) v.push_back(x);
  return FSet(ctx, std::move(v));
}

FSet multiplicative_subgroup(const FieldCtx& ctx, std::uint64_t order) {
  const std::uint64_t n = ctx.q() - 1;
  if (order == 0 || n % order != 0)
    throw Error(Errc::InvalidParams, "subgroup order " + std::to_string(order) + " does not divide q - 1 = " + std::to_string(n));
  if (order > (std::uint64_t{1} << 26)) throw Error(Errc::TooLarge, "subgroup too large to enumerate");
  // x^((q-1)/order) generates the subgroup once its order is exactly `order`
  for (std::uint64_t x = 1; x < ctx.q(); ++x) {
    const std::uint64_t g = ctx.pow_code(x, n / order);
    if (multiplicative_order(ctx, g) != order) continue;
    std::vector<std::uint64_t> v;
    v.reserve(order);
    std::uint64_t y = 1;
    for (std::uint64_t i = 0; i < order; ++i, y = ctx.mul_code(y, g)) v.push_back(y);
    return FSet(ctx, std::move(v));
  }
  throw Error(Errc::Internal, "no generator found for the subgroup");
}

FSet random_set(const FieldCtx& ctx, std::size_t size, std::uint64_t seed) {
  const std::uint64_t q = ctx.q();
  if (size > q) throw Error(Errc::InvalidParams, "random set larger than the field");
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do v = rng();
    while (v >= limit);
    return v % bound;
  };
  if (2 * static_cast<std::uint64_t>(size) > q) {
    if (q > (std::uint64_t{1} << 26)) throw Error(Errc::TooLarge, "dense random set over a large field");
    std::vector<std::uint64_t> all(q);
    for (std::uint64_t i = 0; i < q; ++i) all[i] = i;
    for (std::size_t i = 0; i < size; ++i) std::swap(all[i], all[i + uniform(q - i)]);
    all.resize(size);
    return FSet(ctx, std::move(all));
  }
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> v;
  v.reserve(size);
  while (v.size() < size) {
    const std::uint64_t x = uniform(q);
    if (seen.insert(x).second) v.push_back(x);
  }
  return FSet(ctx, std::move(v));
}

FSet interval(const FieldCtx& ctx, std::uint64_t start, std::size_t len) {
  return arithmetic_progression(ctx, start, 1, len);
}

GenParams parse_gen_params(std::string_view text) {
  GenParams out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw Error(Errc::InvalidParams, "parameter '" + std::string(item) + "' lacks '='");
    out[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
  }
  return out;
}

namespace {

std::uint64_t param_u64(const GenParams& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw Error(Errc::InvalidParams, "missing parameter '" + key + "'");
  std::uint64_t v = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(Errc::InvalidParams, "parameter '" + key + "' is not a non-negative integer: " + s);
  return v;
}

std::uint64_t param_elem(const GenParams& p, const std::string& key, const FieldCtx& ctx) {
  auto it = p.find(key);
  if (it == p.end()) throw Error(Errc::InvalidParams, "missing parameter '" + key + "'");
  // integers first, then polynomial literals in t for extension elements
  std::uint64_t v = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && ptr == s.data() + s.size()) {
    if (v >= ctx.q()) throw Error(Errc::InvalidParams, "parameter '" + key + "' outside the field");
    return v;
  }
  return parse_univariate(s, ctx).coeff(0);
}

std::uint64_t param_or(const GenParams& p, const std::string& key, std::uint64_t fallback) {
  return p.count(key) ? param_u64(p, key) : fallback;
}

}  // namespace

FSet generate(std::string_view kind, const GenParams& params, const FieldCtx& ctx) {
  if (kind == "ap")
    return arithmetic_progression(ctx, param_elem(params, "start", ctx), param_elem(params, "diff", ctx),
                                  param_u64(params, "len"));
  if (kind == "gp")
    return geometric_progression(ctx, param_elem(params, "start", ctx), param_elem(params, "ratio", ctx),
                                 param_u64(params, "len"));
  if (kind == "subgroup") return multiplicative_subgroup(ctx, param_u64(params, "order"));
  if (kind == "random") return random_set(ctx, param_u64(params, "size"), param_or(params, "seed", 0));
  if (kind == "interval") return interval(ctx, param_or(params, "start", 0), param_u64(params, "len"));
  if (kind == "orbit") {
    auto it = params.find("f");
    if (it == params.end()) throw Error(Errc::InvalidParams, "orbit needs f=<polynomial>");
    UnivariatePoly f = parse_univariate(it->second, ctx);
    return orbit(f, ctx.elem(param_elem(params, "u", ctx)), param_or(params, "cap", ctx.q())).set;
  }
  if (kind == "union" || kind == "union-of") {
    auto it = params.find("parts");
    if (it == params.end()) throw Error(Errc::InvalidParams, "union needs parts=<kind>:<params>;...");
    FSet acc(ctx);
    std::string_view rest = it->second;
    while (!rest.empty()) {
      std::size_t semi = rest.find(';');
      std::string_view part = rest.substr(0, semi);
      rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
      if (part.empty()) continue;
      const std::size_t colon = part.find(':');
      if (colon == std::string_view::npos) throw Error(Errc::InvalidParams, "union part '" + std::string(part) + "' lacks ':'");
      acc = set_union(acc, generate(part.substr(0, colon), part.substr(colon + 1), ctx));
    }
    return acc;
  }
  throw Error(Errc::InvalidParams, "unknown set kind '" + std::string(kind) + "'");
}

FSet generate(std::string_view kind, std::string_view params, const FieldCtx& ctx) {
  if (kind == "union" || kind == "union-of") {
    std::string_view body = params;
    if (body.substr(0, 6) == "parts=") body = body.substr(6);
    return generate(kind, GenParams{{"parts", std::string(body)}}, ctx);
  }
  return generate(kind, parse_gen_params(params), ctx);
}

// ------------------------------------------------------------------ file I/O

std::string field_header(const FieldCtx& ctx) {
  std::ostringstream os;
  os << "p=" << ctx.p();
  if (!ctx.is_prime_field()) {
    os << " q=" << ctx.p() << "^" << ctx.n() << " mod=";
    const auto& m = ctx.modulus();
    for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
  }
  return os.str();
}

FieldCtx parse_field_header(std::string_view line) {
  std::istringstream is{std::string(line)};
  std::string tok;
  std::uint64_t p = 0;
  unsigned n = 1;
  std::vector<std::uint64_t> mod;
  bool have_p = false, have_q = false;
  while (is >> tok) {
    const std::size_t eq = tok.find('=');
    if (eq == std::string::npos) throw Error(Errc::Parse, "bad header token '" + tok + "'");
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    try {
      if (key == "p") {
        p = std::stoull(val);
        have_p = true;
      } else if (key == "q") {
        const std::size_t caret = val.find('^');
        if (caret == std::string::npos) {
          n = 1;
        } else {
          if (std::stoull(val.substr(0, caret)) != p) throw Error(Errc::Parse, "q base differs from p");
          n = static_cast<unsigned>(std::stoul(val.substr(caret + 1)));
        }
        have_q = true;
      } else if (key == "mod") {
        std::stringstream ms(val);
        std::string c;
        while (std::getline(ms, c, ',')) mod.push_back(std::stoull(c));
      } else {
        throw Error(Errc::Parse, "unknown header key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw Error(Errc::Parse, "bad number in header token '" + tok + "'");
    }
  }
  if (!have_p) throw Error(Errc::Parse, "set header lacks p=<prime>");
  if (have_q && n > 1) {
    if (mod.empty()) return FieldCtx::extension(p, n);
    if (mod.size() != n + 1) throw Error(Errc::Parse, "modulus degree differs from n");
    return FieldCtx(p, mod);
  }
  return FieldCtx(p);
}

void write_set(std::ostream& os, const FSet& s) {
  os << field_header(s.field()) << "\n";
  for (auto c : s) os << c << "\n";
}

FSet read_set(std::istream& is) {
  std::string line;
  std::optional<FieldCtx> ctx;
  std::vector<std::uint64_t> codes;
  while (std::getline(is, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    if (!ctx) {
      ctx = parse_field_header(line);
      continue;
    }
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || ptr != line.data() + line.size()) throw Error(Errc::Parse, "bad element line '" + line + "'");
    codes.push_back(v);
  }
  if (!ctx) throw Error(Errc::Parse, "set file has no header");
  return FSet(*ctx, std::move(codes));
}

void write_set_file(const std::string& path, const FSet& s) {
  std::ofstream os(path);
  if (!os) throw Error(Errc::InvalidInputs, "cannot write " + path);
  write_set(os, s);
}

FSet read_set_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(Errc::InvalidInputs, "cannot open " + path);
  return read_set(is);
}

}  // namespace lowenergy

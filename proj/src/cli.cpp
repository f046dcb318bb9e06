#include "lowenergy/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "lowenergy/decompose.hpp"
#include "lowenergy/energy.hpp"
#include "lowenergy/error.hpp"
#include "lowenergy/expsum.hpp"
#include "lowenergy/verify.hpp"

namespace lowenergy {

namespace {

using json = nlohmann::ordered_json;

struct Globals {
  bool deterministic = false;
  std::uint64_t budget = 100'000'000;
};

json count_json(Count c) {
  if (c <= Count{~std::uint64_t{0}}) return static_cast<std::uint64_t>(c);
  return to_string(c);
}

json report_json(const BoundReport& r) { return json::parse(r.to_json_line()); }

json field_json(const FieldCtx& F) {
  return json{{"p", F.p()}, {"n", F.n()}, {"q", F.q()}, {"modulus", F.modulus()}};
}

std::string set_digest(const FSet& s) {
  Digest d;
  d.add(s);
  return d.hex();
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string utc_timestamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

json experiment(const std::string& command, const std::vector<std::string>& args, const FieldCtx& F, const Globals& g) {
  json j;
  j["schema_version"] = kExperimentSchemaVersion;
  j["command"] = command;
  j["args"] = args;
  j["field"] = field_json(F);
  j["input_digests"] = json::object();
  j["reports"] = json::array();
  j["rounds"] = json::array();
  j["timings"] = json::object();
  if (!g.deterministic) j["timestamp"] = utc_timestamp();
  return j;
}

void set_timing(json& j, const std::string& key, double seconds, const Globals& g) {
  j["timings"][key] = g.deterministic ? 0.0 : seconds;
}

void check_budget(long double pairs, const Globals& g, const char* what) {
  if (pairs > static_cast<long double>(g.budget))
    throw Error(Errc::TooLarge, std::string(what) + " needs more than --budget = " + std::to_string(g.budget) + " pairs");
}

std::string fmt(long double v) {
  std::ostringstream os;
  os << std::setprecision(10) << static_cast<double>(v);
  return os.str();
}

void print_report(std::ostream& out, const BoundReport& r) {
  out << r.name << ": lhs " << r.lhs.str() << " rhs " << r.rhs.str() << " constant " << r.constant << " -> "
      << (r.pass ? "pass" : "fail") << "\n";
  for (const auto& [k, v] : r.hypothesis_flags) out << "  " << k << " = " << (v ? "true" : "false") << "\n";
}

// ------------------------------------------------------------------- gen

struct GenArgs {
  std::uint64_t p = 0;
  unsigned n = 1;
  std::string kind, params, out;
  std::optional<std::uint64_t> seed;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const FieldCtx F = a.n == 1 ? FieldCtx(a.p) : FieldCtx::extension(a.p, a.n);
  FSet s(F);
  if (a.kind == "union" || a.kind == "union-of") {
    s = generate(a.kind, std::string_view(a.params), F);  // part lists carry their own commas
  } else {
    GenParams params = parse_gen_params(a.params);
    if (a.seed && !params.count("seed")) params["seed"] = std::to_string(*a.seed);
    s = generate(a.kind, params, F);
  }
  if (a.out.empty() || a.out == "-") write_set(out, s);
  else write_set_file(a.out, s);
  return 0;
}

// ------------------------------------------------------------- decompose

struct DecomposeArgs {
  std::string set, f;
  std::optional<double> M;
  bool json = false;
};

int cmd_decompose(const DecomposeArgs& a, const std::vector<std::string>& argv, const Globals& g, std::ostream& out,
                  std::ostream& err) {
  const FSet A = read_set_file(a.set);
  const auto& F = A.field();
  check_budget(static_cast<long double>(A.size()) * A.size(), g, "decomposition");
  const BivariateQuadratic f = parse_bivariate_quadratic(a.f, F);
  if (!is_nondegenerate_quadratic(f)) throw Error(Errc::Degenerate, "f = " + f.to_string() + " is degenerate");
  DecomposeOptions opt;
  opt.M = a.M;
  Timer timer;
  const Decomposition d = balog_wooley_decompose(A, f, opt);
  const double secs = timer.seconds();
  const bool post = static_cast<long double>(d.E_S) <= d.threshold;
  for (const auto& w : d.warnings) err << "warning: " << w << "\n";

  if (a.json) {
    json j = experiment("decompose", argv, F, g);
    j["input_digests"]["A"] = set_digest(A);
    j["f"] = f.to_string();
    j["M"] = d.M;
    j["threshold"] = static_cast<double>(d.threshold);
    j["A_size"] = A.size();
    j["S_size"] = d.S.size();
    j["T_size"] = d.T.size();
    j["E_S"] = count_json(d.E_S);
    j["Ef_T"] = count_json(d.Ef_T);
    j["safeguard_events"] = d.safeguard_events;
    j["post_condition"] = post;
    j["warnings"] = d.warnings;
    for (const auto& r : d.rounds)
      j["rounds"].push_back(json{{"index", r.index},
                                 {"S_size", r.S_size},
                                 {"E_S", count_json(r.E_S)},
                                 {"B_size", r.B_size},
                                 {"safeguard", r.safeguard}});
    for (const auto& r : d.reports) j["reports"].push_back(report_json(r));
    set_timing(j, "decompose", secs, g);
    out << j.dump(2) << "\n";
  } else {
    out << "field " << F.describe() << "\n";
    out << "|A| = " << A.size() << "\n";
    out << "f = " << f.to_string() << "\n";
    out << "M = " << fmt(d.M) << "  threshold |A|^3/M = " << fmt(d.threshold) << "\n";
    for (const auto& r : d.rounds)
      out << "round " << r.index << ": |S| = " << r.S_size << " E(S) = " << to_string(r.E_S) << " |B| = " << r.B_size
          << (r.safeguard ? " (safeguard)" : "") << "\n";
    out << "|S| = " << d.S.size() << "  |T| = " << d.T.size() << "\n";
    out << "E(S) = " << to_string(d.E_S) << "  E_f(T) = " << to_string(d.Ef_T) << "\n";
    out << "post-condition E(S) <= |A|^3/M: " << (post ? "pass" : "fail") << "\n";
  }
  return post ? 0 : 3;
}

// ----------------------------------------------------------------- sweep

struct SweepArgs {
  std::vector<std::size_t> sizes;
  std::string kind = "apgp";
  std::uint64_t p = 100003;
  std::string f = "x^2+y";
  std::size_t repeats = 1;
  std::uint64_t seed = 1;
  std::string csv;
};

FSet sweep_set(const FieldCtx& F, const std::string& kind, std::size_t n, std::uint64_t seed) {
  const std::string len = std::to_string(n);
  if (kind == "apgp")
    return set_union(generate("ap", "start=1,diff=1,len=" + len, F), generate("gp", "start=1,ratio=2,len=" + len, F));
  if (kind == "ap") return generate("ap", "start=1,diff=1,len=" + len, F);
  if (kind == "gp") return generate("gp", "start=1,ratio=2,len=" + len, F);
  if (kind == "interval") return generate("interval", "start=0,len=" + len, F);
  if (kind == "random") return random_set(F, n, seed);
  throw Error(Errc::InvalidParams, "unknown sweep kind '" + kind + "' (apgp, ap, gp, interval, random)");
}

std::string csv_quote(const std::string& s) {
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

int cmd_sweep(const SweepArgs& a, const Globals& g, std::ostream& out) {
  if (a.sizes.empty()) throw Error(Errc::InvalidParams, "--sizes is empty");
  for (std::size_t i = 1; i < a.sizes.size(); ++i)
    if (a.sizes[i] <= a.sizes[i - 1]) throw Error(Errc::InvalidParams, "--sizes must be strictly ascending");
  if (a.repeats == 0) throw Error(Errc::InvalidParams, "--repeats must be positive");
  const FieldCtx F(a.p);
  const BivariateQuadratic f = parse_bivariate_quadratic(a.f, F);

  std::ofstream file;
  if (!a.csv.empty() && a.csv != "-") {
    file.open(a.csv);
    if (!file) throw Error(Errc::InvalidParams, "cannot open " + a.csv);
  }
  std::ostream& os = file.is_open() ? static_cast<std::ostream&>(file) : out;
  os << "n,repeat,size,E_S,Ef_T,ratio,seconds,status\n";
  // cells run in (size, repeat) order
  for (std::size_t n : a.sizes)
    for (std::size_t rep = 0; rep < a.repeats; ++rep) {
      try {
        const FSet A = sweep_set(F, a.kind, n, a.seed + rep);
        check_budget(static_cast<long double>(A.size()) * A.size(), g, "decomposition");
        DecomposeOptions opt;
        opt.round_reports = false;
        Timer timer;
        const Decomposition d = balog_wooley_decompose(A, f, opt);
        const double secs = g.deterministic ? 0.0 : timer.seconds();
        const long double m = A.size();
        const long double lg = std::log2(m);
        const long double ratio =
            static_cast<long double>(std::max(d.E_S, d.Ef_T)) / (std::pow(m, 2.8L) * lg * lg * lg * lg);
        os << n << "," << rep << "," << A.size() << "," << to_string(d.E_S) << "," << to_string(d.Ef_T) << ","
           << fmt(ratio) << "," << fmt(secs) << ",ok\n";
      } catch (const Error& e) {
        if (e.code() == Errc::Internal) throw;
        os << n << "," << rep << ",,,,,," << csv_quote(std::string("error: ") + e.what()) << "\n";
      }
    }
  return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite;
  std::uint64_t corpus_seed = 1;
  std::size_t instances = 100;
  double constant = 64.0;
  bool json = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const std::vector<std::string> checks = suite_checks(a.suite);
  const auto corpus = make_corpus(a.corpus_seed, a.instances);
  BatteryOptions opt;
  opt.constant = a.constant;
  const BatteryResult res = run_battery(checks, corpus, opt);
  std::size_t passed = 0;
  for (const auto& r : res.reports) {
    passed += r.pass;
    if (a.json) out << r.to_json_line() << "\n";
    else out << r.name << " " << (r.hard ? "hard" : "report") << " " << (r.pass ? "pass" : "fail") << " lhs " << r.lhs.str()
             << " rhs " << r.rhs.str() << "\n";
  }
  err << res.reports.size() << " reports, " << passed << " pass, " << res.hard_failures << " hard failures\n";
  if (res.aborted) {
    err << "first hard failure: " << res.failure << "\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------- expsum

struct ExpsumArgs {
  std::string S, T, bound = "vinogradov";
  bool json = false;
};

int cmd_expsum(const ExpsumArgs& a, const std::vector<std::string>& argv, const Globals& g, std::ostream& out) {
  const FSet S = read_set_file(a.S);
  const FSet T = read_set_file(a.T);
  require_same_field(S, T);
  check_budget(static_cast<long double>(S.size()) * T.size(), g, "double sum");
  const ExpSumValue v = double_sum(S, T);
  std::optional<BoundReport> rep;
  if (a.bound != "none") rep = check_expsum_bound(a.bound, {S, T});
  if (a.json) {
    json j = experiment("expsum", argv, S.field(), g);
    j["input_digests"]["S"] = set_digest(S);
    j["input_digests"]["T"] = set_digest(T);
    j["sum"] = json{{"re", v.value.real()}, {"im", v.value.imag()}, {"magnitude", v.magnitude}, {"terms", v.terms}};
    if (rep) j["reports"].push_back(report_json(*rep));
    out << j.dump(2) << "\n";
  } else {
    out << "sum = " << fmt(v.value.real()) << (v.value.imag() < 0 ? " - " : " + ") << fmt(std::fabs(v.value.imag()))
        << "i\n";
    out << "|sum| = " << fmt(v.magnitude) << "\n";
    if (rep) print_report(out, *rep);
  }
  return rep && !rep->pass ? 1 : 0;
}

// ------------------------------------------------------------ littlewood

struct LittlewoodArgs {
  std::string set, f;
  bool json = false;
};

int cmd_littlewood(const LittlewoodArgs& a, const std::vector<std::string>& argv, const Globals& g, std::ostream& out) {
  const FSet A = read_set_file(a.set);
  const auto& F = A.field();
  check_budget(static_cast<long double>(F.q()) * std::max<std::size_t>(A.size(), 1), g, "l1 norm");
  const double l1 = littlewood_l1(A);
  const long double n = A.size();
  std::vector<BoundReport> reports;
  if (!a.f.empty()) {
    const UnivariatePoly f = parse_univariate(a.f, F);
    reports.push_back(littlewood_image_report(A, f));
    if (univariate_image(f, A).subset_of(A)) reports.push_back(littlewood_orbit_report(A, f));
  }
  if (a.json) {
    json j = experiment("littlewood", argv, F, g);
    j["input_digests"]["A"] = set_digest(A);
    j["l1"] = l1;
    j["size"] = A.size();
    j["quarter_power"] = static_cast<double>(std::pow(n, 0.25L));
    j["tenth_power"] = static_cast<double>(std::pow(n, 0.1L));
    for (const auto& r : reports) j["reports"].push_back(report_json(r));
    out << j.dump(2) << "\n";
  } else {
    out << "|A| = " << A.size() << "\n";
    out << "l1 = " << fmt(l1) << "\n";
    out << "|A|^(1/4) = " << fmt(std::pow(n, 0.25L)) << "\n";
    out << "|A|^(1/10) = " << fmt(std::pow(n, 0.1L)) << "\n";
    for (const auto& r : reports) {
      print_report(out, r);
      if (auto it = r.notes.find("ratio"); it != r.notes.end()) out << "  ratio = " << it->second << "\n";
    }
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Low-energy decompositions and sum-product experiments over finite fields", "lowenergy"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--deterministic", g.deterministic, "Suppress timestamps and timings");
  app.add_option("--budget", g.budget, "Pair budget for quadratic-cost paths")->capture_default_str();

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Generate a set file");
  gen->add_option("--p", ga.p, "Characteristic")->required();
  gen->add_option("--n", ga.n, "Extension degree")->capture_default_str();
  gen->add_option("--kind", ga.kind, "ap, gp, subgroup, random, interval, orbit, union")->required();
  gen->add_option("--params", ga.params, "key=value list");
  gen->add_option("--seed", ga.seed, "Seed for random sets");
  gen->add_option("--out", ga.out, "Output file (default stdout)");

  DecomposeArgs da;
  auto* dec = app.add_subcommand("decompose", "Run the decomposition algorithm on a set");
  dec->add_option("--set", da.set, "Set file")->required();
  dec->add_option("--f", da.f, "Quadratic polynomial in x, y")->required();
  dec->add_option("--M", da.M, "Energy parameter (default |A|^(1/5))");
  dec->add_flag("--json", da.json, "Emit a JSON experiment report");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Decompose a family of sets and write CSV rows");
  sweep->add_option("--sizes", sa.sizes, "Ascending sizes")->required()->delimiter(',');
  sweep->add_option("--kind", sa.kind, "apgp, ap, gp, interval, random")->capture_default_str();
  sweep->add_option("--p", sa.p, "Prime")->capture_default_str();
  sweep->add_option("--f", sa.f, "Quadratic polynomial in x, y")->capture_default_str();
  sweep->add_option("--repeats", sa.repeats, "Runs per size")->capture_default_str();
  sweep->add_option("--seed", sa.seed, "Base seed for random sets")->capture_default_str();
  sweep->add_option("--csv", sa.csv, "Output file (default stdout)");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Run the inequality battery on a seeded corpus");
  ver->add_option("--suite", va.suite, "constant-free, reports, all")->required();
  ver->add_option("--corpus-seed", va.corpus_seed, "Corpus seed")->capture_default_str();
  ver->add_option("--instances", va.instances, "Corpus size")->capture_default_str();
  ver->add_option("--constant", va.constant, "Constant for reported bounds")->capture_default_str();
  ver->add_flag("--json", va.json, "Emit JSON lines");

  ExpsumArgs ea;
  auto* exs = app.add_subcommand("expsum", "Double exponential sum over two sets");
  exs->add_option("--S", ea.S, "Set file")->required();
  exs->add_option("--T", ea.T, "Set file")->required();
  exs->add_option("--bound", ea.bound, "vinogradov, holder4, holder8, konshk, none")->capture_default_str();
  exs->add_flag("--json", ea.json, "Emit a JSON experiment report");

  LittlewoodArgs la;
  auto* lit = app.add_subcommand("littlewood", "Fourier l1 norm of a set");
  lit->add_option("--set", la.set, "Set file")->required();
  lit->add_option("--f", la.f, "Univariate polynomial for the image comparison");
  lit->add_flag("--json", la.json, "Emit a JSON experiment report");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const bool is_decompose = dec->parsed();
  const bool is_verify = ver->parsed();
  try {
    if (gen->parsed()) return cmd_gen(ga, out);
    if (is_decompose) return cmd_decompose(da, args, g, out, err);
    if (sweep->parsed()) return cmd_sweep(sa, g, out);
    if (is_verify) return cmd_verify(va, out, err);
    if (exs->parsed()) return cmd_expsum(ea, args, g, out);
    if (lit->parsed()) return cmd_littlewood(la, args, g, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.code() == Errc::Internal) return 3;
    if (is_decompose && (e.code() == Errc::Degenerate)) return 2;
    if (is_verify && e.code() == Errc::UnknownCheckName) return 2;
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace lowenergy

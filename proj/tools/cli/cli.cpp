#include "cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "psq/analytic.hpp"
#include "psq/arith.hpp"
#include "psq/counting.hpp"
#include "psq/error.hpp"
#include "psq/report.hpp"
#include "psq/search.hpp"
#include "psq/sieve.hpp"

namespace psq::cli {
namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Argument helpers

// Accepts plain digits or an integral value in scientific notation (4e18).
std::uint64_t parse_count(const std::string& s, const char* name) {
  const auto bad = [&] { return InvalidArgument(std::string("--") + name + ": '" + s + "' is not a positive integer"); };
  if (s.empty()) throw bad();
  if (s.find_first_not_of("0123456789") == std::string::npos) {
    try {
      return std::stoull(s);
    } catch (const std::out_of_range&) {
      throw InvalidArgument(std::string("--") + name + ": " + s + " does not fit in 64 bits");
    }
  }
  char* end = nullptr;
  const Real v = std::strtold(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !(v >= 0) || std::floor(v) != v) throw bad();
  if (v >= 18446744073709551616.0L) throw InvalidArgument(std::string("--") + name + ": " + s + " does not fit in 64 bits");
  return static_cast<std::uint64_t>(v);
}

Real parse_number(const std::string& s, const char* name) {
  char* end = nullptr;
  const Real v = std::strtold(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw InvalidArgument(std::string("--") + name + ": '" + s + "' is not a number");
  return v;
}

std::string show(Real x, int digits = 15) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, x);
  return buf;
}

// Short form for the config echo; reports keep all 21 digits.
std::string brief(Real x) { return show(x, 17); }

std::string join(const std::vector<std::uint64_t>& v, const char* sep = ", ") {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? sep : "") << v[i];
  return out.str();
}

// ---------------------------------------------------------------------------
// Shared settings

struct Globals {
  std::string format = "text";
  std::string ctheta;
  unsigned threads = 1;
  std::string checkpoint;
};

struct TableChoice {
  analytic::CThetaTable table;
  std::string source;
};

TableChoice load_table(const Globals& g) {
  if (!g.ctheta.empty()) return {analytic::CThetaTable::load(g.ctheta), g.ctheta};
  if (const char* env = std::getenv("PSQ_CTHETA"); env && *env)
    return {analytic::CThetaTable::load(env), std::string(env) + " (PSQ_CTHETA)"};
  return {analytic::CThetaTable::bundled(), "bundled"};
}

class Output {
 public:
  Output(std::ostream& out, const Globals& g, std::string command, json config)
      : out_(out), json_(g.format == "json"), command_(std::move(command)), config_(std::move(config)) {
    config_["format"] = g.format;
    config_["threads"] = g.threads;
  }

  bool json_mode() const { return json_; }

  // Text mode: the resolved configuration, one `# key: value` line each.
  void header() {
    if (json_) return;
    out_ << "# psq " << command_ << '\n';
    for (const auto& [key, value] : config_.items())
      out_ << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }

  void emit(const std::string& kind, json result) {
    if (json_) out_ << envelope(kind, config_, std::move(result)).dump(2) << '\n';
  }

  std::ostream& text() { return out_; }

 private:
  std::ostream& out_;
  bool json_;
  std::string command_;
  json config_;
};

Real default_C(bool even_bound, Real n) { return even_bound || n >= 1e25L ? 0.2L : 0.37L; }

int verdict_status(analytic::Verdict v) {
  switch (v) {
    case analytic::Verdict::Positive: return kOk;
    case analytic::Verdict::NotPositive: return kCertificationFailed;
    case analytic::Verdict::InsufficientTable: return kMissingData;
  }
  return kInternal;
}

// ---------------------------------------------------------------------------
// count

struct CountArgs {
  std::string n, k = "1", l = "1";
  bool exclude_one = false;
  std::size_t witnesses = 10;
};

int cmd_count(const CountArgs& a, const Globals& g, std::ostream& os) {
  const std::uint64_t n = parse_count(a.n, "n");
  const std::uint64_t k = parse_count(a.k, "k");
  const std::uint64_t l = parse_count(a.l, "l");
  if (n < 1) throw InvalidArgument("--n must be >= 1");
  if (n > (std::uint64_t{1} << 36)) throw ResourceError("--n above 2^36 needs more memory than a direct count should use");
  arith::require_squarefree(k, "--k");
  arith::require_squarefree(l, "--l");

  Output out(os, g, "count", {{"n", n}, {"k", k}, {"l", l}, {"exclude_one", a.exclude_one}, {"witnesses", a.witnesses}});
  const sieve::NumberTable table(std::max<std::uint64_t>(n, 2));
  counting::WeightedCount count;
  if (l > 1) count = counting::count_coprime_divisible(n, k, l, table);
  else if (a.exclude_one) count = counting::count_coprime_nontrivial(n, k, table);
  else count = counting::count_coprime(n, k, table);

  std::vector<counting::Representation> witnesses;
  if (l == 1) {
    witnesses = counting::enumerate_representations(n, k, a.exclude_one, a.witnesses, table);
  } else {
    for (const auto& r : counting::enumerate_representations(n, k, true, count.terms, table))
      if (r.eta % l == 0 && witnesses.size() < a.witnesses) witnesses.push_back(r);
  }

  out.header();
  if (out.json_mode()) {
    out.emit("count", {{"count", count}, {"witnesses", witnesses}});
  } else {
    auto& t = out.text();
    t << "value  " << show(count.value, 21) << '\n' << "terms  " << count.terms << '\n';
    if (!witnesses.empty()) {
      t << "witnesses (p + eta)\n";
      for (const auto& r : witnesses) t << "  " << r.p << " + " << r.eta << '\n';
    }
  }
  return count.terms == 0 ? kZeroCount : kOk;
}

// ---------------------------------------------------------------------------
// bound

struct BoundArgs {
  std::string n, k = "1", C, N = "1e5", parity, rounding = "conservative";
};

void print_bound(std::ostream& t, const analytic::LowerBoundReport& r) {
  const auto row = [&](const char* name, const std::string& value) {
    t << "  " << name << std::string(34 - std::string(name).size(), ' ') << value << '\n';
  };
  t << "components (divided by n)\n";
  row("main term", show(r.reported_main(), 18));
  row("- explicit c_theta group", show(r.reported_penalty(r.explicit_group), 18));
  row("    of which modulus 1", show(r.reported_penalty(r.explicit_unit_term), 18));
  row("- sieve tail group", show(r.reported_penalty(r.sieve_tail_group), 18));
  row("- large-a group", show(r.reported_penalty(r.large_a_group), 18));
  row("- (log k + log n) / n", show(r.reported_penalty(r.log_group), 18));
  row("total", r.reported_total() ? show(*r.reported_total(), 18) : "n/a");
  t << "certifies positivity: " << analytic::to_string(r.verdict) << '\n';
  if (!r.missing_moduli.empty()) {
    std::vector<std::uint64_t> head(r.missing_moduli.begin(),
                                    r.missing_moduli.begin() + std::min<std::size_t>(20, r.missing_moduli.size()));
    t << "missing c_theta moduli (" << r.missing_moduli.size() << "): " << join(head)
      << (r.missing_moduli.size() > head.size() ? ", ..." : "") << '\n';
  }
  t << "c_theta source: " << r.table_provenance << '\n';
  if (r.verdict == analytic::Verdict::InsufficientTable)
    t << "note: the thresholds 4e18 (even k) and 8e9 (odd k) need c_theta(m) for m >= 3 from an "
         "external table; the bundled data holds modulus 1 only\n";
}

int cmd_bound(const BoundArgs& a, const Globals& g, std::ostream& os) {
  const Real n = parse_number(a.n, "n");
  const std::uint64_t k = parse_count(a.k, "k");
  const Real N = parse_number(a.N, "N");
  std::string parity = a.parity.empty() ? (k % 2 == 0 ? "even" : "odd") : a.parity;
  if (parity != "even" && parity != "odd") throw InvalidArgument("--parity must be 'even' or 'odd'");
  const bool even = parity == "even";
  const Real C = a.C.empty() ? default_C(even, n) : parse_number(a.C, "C");
  analytic::Rounding rounding;
  if (a.rounding == "conservative") rounding = analytic::Rounding::ConservativeDirected;
  else if (a.rounding == "nearest") rounding = analytic::Rounding::Nearest;
  else throw InvalidArgument("--rounding must be 'conservative' or 'nearest'");

  const auto params = analytic::BoundParams::make(C, N, n, rounding);
  const TableChoice table = load_table(g);
  Output out(os, g, "bound",
             {{"n", brief(n)}, {"k", k}, {"C", brief(C)}, {"N", brief(N)},
              {"parity", parity}, {"rounding", a.rounding}, {"ctheta", table.source}});
  const auto report = even ? analytic::evaluate_even_lower_bound(n, k, params, table.table)
                           : analytic::evaluate_odd_lower_bound(n, k, params, table.table);
  out.header();
  if (out.json_mode()) out.emit("bound", report);
  else print_bound(out.text(), report);
  return verdict_status(report.verdict);
}

// ---------------------------------------------------------------------------
// exceptions

struct ExceptionArgs {
  std::string k, limit = "1e5", parity = "even", source, threshold, C, N = "1e5";
};

void print_certificate(std::ostream& t, const search::ExceptionCertificate& c) {
  t << "exceptions  " << (c.exceptions.empty() ? "none" : join(c.exceptions)) << '\n';
  t << "largest     " << (c.largest_exception ? std::to_string(*c.largest_exception) : "none") << '\n';
  if (c.source == search::ThresholdSource::GoldbachExternal)
    t << "two-prime-divisor candidates with zero count: "
      << (c.goldbach_candidates.empty() ? "none" : join(c.goldbach_candidates)) << '\n';
  t << "coverage\n";
  for (const auto& s : c.coverage)
    t << "  [" << show(s.lo, 21) << ", " << (s.hi ? show(*s.hi, 21) : std::string("inf")) << "]  "
      << search::to_string(s.coverage) << "  " << s.note << '\n';
  for (const auto& note : c.notes) t << "note: " << note << '\n';
  t << "gap free: " << (c.gap_free ? "yes" : "no") << '\n';
}

int cmd_exceptions(const ExceptionArgs& a, const Globals& g, std::ostream& os) {
  const std::uint64_t k = parse_count(a.k, "k");
  const std::uint64_t limit = parse_count(a.limit, "limit");
  const auto parity = search::parse_parity(a.parity);
  arith::require_squarefree(k, "--k");

  if (a.source.empty()) {
    if (!a.threshold.empty()) throw InvalidArgument("--threshold needs --threshold-source");
    Output out(os, g, "exceptions", {{"k", k}, {"limit", limit}, {"parity", a.parity}});
    const auto report = search::exception_set(k, limit, parity, g.threads);
    out.header();
    if (out.json_mode()) {
      out.emit("exceptions", report);
    } else {
      out.text() << "S_" << k << " up to " << limit << " (" << search::to_string(parity) << "): "
                 << (report.exceptions.empty() ? "none" : join(report.exceptions)) << '\n';
    }
    return kOk;
  }

  search::CertificateInputs in;
  in.k = k;
  in.parity = parity;
  in.scan_limit = limit;
  in.source = search::parse_threshold_source(a.source);
  in.threads = g.threads;
  if (!a.threshold.empty()) in.threshold = parse_number(a.threshold, "threshold");
  json config = {{"k", k}, {"limit", limit}, {"parity", a.parity}, {"threshold_source", a.source}};

  // Evaluate the explicit bound where the source's range ends.
  std::optional<Real> at;
  if (in.source == search::ThresholdSource::Analytic) at = in.threshold;
  if (in.source == search::ThresholdSource::GoldbachExternal) at = in.threshold.value_or(search::kGoldbachFloor);
  if (in.source == search::ThresholdSource::PublishedComputation) at = in.threshold.value_or(search::kPublishedSearchLimit);
  if (in.source == search::ThresholdSource::Analytic && !at)
    throw InvalidArgument("--threshold-source analytic needs --threshold");
  if (at) {
    const bool even = k % 2 == 0;
    const Real C = a.C.empty() ? default_C(even, *at) : parse_number(a.C, "C");
    const Real N = parse_number(a.N, "N");
    const auto params = analytic::BoundParams::make(C, N, *at);
    const TableChoice table = load_table(g);
    const auto report = even ? analytic::evaluate_even_lower_bound(*at, k, params, table.table)
                             : analytic::evaluate_odd_lower_bound(*at, k, params, table.table);
    in.analytic_verdict = report.verdict;
    config["threshold"] = brief(*at);
    config["C"] = brief(C);
    config["N"] = brief(N);
    config["ctheta"] = table.source;
  }
  Output out(os, g, "exceptions", config);
  const auto cert = search::largest_exception_certificate(in);
  out.header();
  if (out.json_mode()) out.emit("certificate", cert);
  else print_certificate(out.text(), cert);
  return kOk;
}

// ---------------------------------------------------------------------------
// verify, triples

struct VerifyArgs {
  std::string lo = "600", hi, interval = std::to_string(search::kDefaultIntervalLength), max_intervals;
  std::size_t window = 100;
};

int cmd_verify(const VerifyArgs& a, const Globals& g, std::ostream& os) {
  search::VerifyOptions options;
  options.window_size = a.window;
  options.workers = g.threads;
  options.interval_length = parse_count(a.interval, "interval-length");
  if (!g.checkpoint.empty()) options.checkpoint = g.checkpoint;
  if (!a.max_intervals.empty()) options.max_new_intervals = parse_count(a.max_intervals, "max-intervals");
  const std::uint64_t lo = parse_count(a.lo, "lo"), hi = parse_count(a.hi, "hi");
  Output out(os, g, "verify",
             {{"lo", lo}, {"hi", hi}, {"window", a.window}, {"interval_length", options.interval_length},
              {"checkpoint", g.checkpoint.empty() ? json(nullptr) : json(g.checkpoint)}});
  const auto report = search::verify_range(lo, hi, options);
  out.header();
  if (out.json_mode()) {
    out.emit("verify", report);
  } else {
    auto& t = out.text();
    t << "intervals  " << report.intervals_done << " of " << report.intervals_total << " done ("
      << report.intervals_resumed << " from checkpoint)\n";
    t << "checked    " << report.checked << '\n';
    t << "failures   " << (report.failures.empty() ? "none" : join(report.failures)) << '\n';
    t << "complete   " << (report.complete ? "yes" : "no") << '\n';
  }
  return report.failures.empty() ? kOk : kCertificationFailed;
}

struct TripleArgs {
  std::string n;
  std::size_t window = 100;
};

int cmd_triples(const TripleArgs& a, const Globals& g, std::ostream& os) {
  const std::uint64_t n = parse_count(a.n, "n");
  if (n < 5) throw InvalidArgument("--n must be >= 5");
  if (a.window == 0) throw InvalidArgument("--window must be >= 1");
  const auto window = search::prime_window(n, a.window, false);
  Output out(os, g, "triples", {{"n", n}, {"window", a.window}});
  std::optional<search::TripleWitness> witness;
  if (!window.empty()) {
    const auto squarefree = sieve::sieve_squarefree(n - window.back(), n - window.front());
    witness = search::find_triple(n, window, squarefree);
  }
  out.header();
  if (out.json_mode()) {
    out.emit("triples", {{"n", n}, {"window", window}, {"witness", witness ? json(*witness) : json(nullptr)}});
  } else {
    auto& t = out.text();
    t << "window  " << window.size() << " primes";
    if (!window.empty()) t << " in [" << window.front() << ", " << window.back() << "]";
    t << '\n';
    if (!witness) {
      t << "no triple\n";
    } else {
      for (const auto& r : witness->reps) t << "  " << r.p << " + " << r.eta << '\n';
    }
  }
  return witness ? kOk : kZeroCount;
}

// ---------------------------------------------------------------------------
// table1

const std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>>& primorial_table() {
  static const std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> rows = {
      {2, {2, 4}},
      {6, {2, 4, 6}},
      {30, {2, 4, 6, 8}},
      {210, {2, 4, 6, 8, 10, 12}},
      {2310, {2, 4, 6, 8, 10, 12, 14}},
      {30030, {2, 4, 6, 8, 10, 12, 14, 16, 18}},
  };
  return rows;
}

struct Table1Row {
  std::uint64_t k;
  std::vector<std::uint64_t> found;
  std::vector<std::uint64_t> expected;
  bool match;
};

std::vector<Table1Row> compute_table1(std::uint64_t limit, unsigned threads) {
  std::vector<Table1Row> rows;
  for (const auto& [k, expected] : primorial_table()) {
    const auto found = search::exception_set(k, limit, search::Parity::EvenOnly, threads).exceptions;
    std::vector<std::uint64_t> want;
    for (auto n : expected)
      if (n <= limit) want.push_back(n);
    rows.push_back({k, found, want, found == want});
  }
  return rows;
}

int cmd_table1(const std::string& limit_arg, const Globals& g, std::ostream& os) {
  const std::uint64_t limit = parse_count(limit_arg, "limit");
  if (limit < 20) throw InvalidArgument("--limit must be >= 20");
  Output out(os, g, "table1", {{"limit", limit}});
  const auto rows = compute_table1(limit, g.threads);
  const bool ok = std::all_of(rows.begin(), rows.end(), [](const Table1Row& r) { return r.match; });
  out.header();
  if (out.json_mode()) {
    json result = json::array();
    for (const auto& r : rows)
      result.push_back({{"k", r.k}, {"found", r.found}, {"expected", r.expected}, {"match", r.match}});
    out.emit("table1", {{"rows", result}, {"match", ok}});
  } else {
    auto& t = out.text();
    t << "k       exception set (even n <= " << limit << ")\n";
    for (const auto& r : rows) {
      std::string k = std::to_string(r.k);
      t << k << std::string(8 - k.size(), ' ') << "{" << join(r.found) << "}"
        << (r.match ? "" : "  MISMATCH, expected {" + join(r.expected) + "}") << '\n';
    }
    t << (ok ? "matches the published table\n" : "does not match the published table\n");
  }
  return ok ? kOk : kCertificationFailed;
}

// ---------------------------------------------------------------------------
// chen-bound

int cmd_chen(const Globals& g, std::ostream& os) {
  const auto b = analytic::chen_factor_bound();
  Output out(os, g, "chen-bound",
             {{"theta_ratio", brief(b.constants.theta_ratio)}, {"theta_from", b.constants.theta_from},
              {"pi_ratio", brief(b.constants.pi_ratio)}, {"pi_from", b.constants.pi_from}});
  out.header();
  if (out.json_mode()) {
    out.emit("chen-bound", b);
  } else {
    auto& t = out.text();
    const auto iv = [](const Interval& x) { return "[" + show(x.lo(), 18) + ", " + show(x.hi(), 18) + "]"; };
    t << "theta(13)          " << iv(b.theta13) << '\n';
    t << "e^36               " << iv(b.e36) << '\n';
    t << "p_{m+6} below      " << iv(b.prime_upper) << '\n';
    t << "m below            " << iv(b.count_upper) << '\n';
    t << "bound              " << b.bound << '\n';
    t << "e^33               " << iv(b.e33) << '\n';
    t << "bound < e^33       " << (b.below_e33 ? "yes" : "no") << '\n';
  }
  return b.below_e33 ? kOk : kCertificationFailed;
}

// ---------------------------------------------------------------------------
// selftest

int cmd_selftest(const Globals& g, std::ostream& os) {
  Output out(os, g, "selftest", json::object());
  std::vector<std::pair<std::string, bool>> checks;

  {
    const sieve::NumberTable table(400);
    bool ok = true;
    for (std::uint64_t k = 1; k <= 30 && ok; ++k) {
      if (!arith::is_squarefree(k)) continue;
      for (std::uint64_t n = 1; n <= 400 && ok; ++n) {
        const Real direct = counting::count_coprime(n, k, table).value;
        const Real decomposed = counting::count_coprime_by_inclusion_exclusion(n, k, table).value;
        ok = std::fabs(direct - decomposed) <= 1e-9L * (1 + std::fabs(direct));
      }
    }
    checks.emplace_back("decomposition equals direct count (n <= 400, k <= 30)", ok);
  }
  {
    const auto rows = compute_table1(10000, g.threads);
    checks.emplace_back("primorial exception sets to 1e4",
                        std::all_of(rows.begin(), rows.end(), [](const Table1Row& r) { return r.match; }));
  }
  checks.emplace_back("R_bar_24738(38) = 0 and R_bar_24738(40) > 0",
                      counting::count_coprime_nontrivial(38, 24738).terms == 0 &&
                          counting::count_coprime_nontrivial(40, 24738).terms > 0);
  checks.emplace_back("R_bar_33(35) = 0 and R_bar_12369(38) = 0",
                      counting::count_coprime_nontrivial(35, 33).terms == 0 &&
                          counting::count_coprime_nontrivial(38, 12369).terms == 0);
  checks.emplace_back("triple witnesses for 600 <= n <= 20000",
                      search::verify_range(600, 20000, {}).failures.empty());
  checks.emplace_back("prime-factor bound below e^33", analytic::chen_factor_bound().below_e33);
  checks.emplace_back("Euler product enclosure holds zeta(2) zeta(3) / zeta(6)",
                      analytic::zeta_ratio(1'000'000).euler_product.enclosure.contains(
                          analytic::zeta_ratio_closed_form().mid()));

  const bool ok = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
  out.header();
  if (out.json_mode()) {
    json result = json::array();
    for (const auto& [name, pass] : checks) result.push_back({{"check", name}, {"pass", pass}});
    out.emit("selftest", {{"checks", result}, {"pass", ok}});
  } else {
    for (const auto& [name, pass] : checks) out.text() << (pass ? "[PASS] " : "[FAIL] ") << name << '\n';
  }
  return ok ? kOk : kCertificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prime plus squarefree representations: counts, bounds and exception searches", "psq"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--ctheta", g.ctheta, "c_theta table (default: $PSQ_CTHETA, else the bundled rows)");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--checkpoint", g.checkpoint, "Checkpoint journal for verify");

  CountArgs count;
  auto* c = app.add_subcommand("count", "Log-weighted representation count of n");
  c->add_option("--n", count.n)->required();
  c->add_option("--k", count.k, "eta must be coprime to k");
  c->add_option("--l", count.l, "eta must be divisible by l");
  c->add_flag("--exclude-one", count.exclude_one, "Drop the eta = 1 representation");
  c->add_option("--witnesses", count.witnesses, "Witnesses to print");

  BoundArgs bound;
  auto* b = app.add_subcommand("bound", "Explicit lower bound for the nontrivial coprime count");
  b->add_option("--n", bound.n)->required();
  b->add_option("--k", bound.k);
  b->add_option("--C", bound.C, "Exponent in (0, 1/2); default 0.2, or 0.37 for odd k below 1e25");
  b->add_option("--N", bound.N, "Cut between explicit constants and the sieve tail");
  b->add_option("--parity", bound.parity, "even or odd (default: parity of k)");
  b->add_option("--rounding", bound.rounding, "conservative or nearest");

  ExceptionArgs exc;
  auto* e = app.add_subcommand("exceptions", "Exception set of k, optionally as a certificate");
  e->add_option("--k", exc.k)->required();
  e->add_option("--limit", exc.limit);
  e->add_option("--parity", exc.parity, "even or all");
  e->add_option("--threshold-source", exc.source, "none, analytic, goldbach-external or published-computation");
  e->add_option("--threshold", exc.threshold);
  e->add_option("--C", exc.C);
  e->add_option("--N", exc.N);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Three-representation check over a range");
  v->add_option("--lo", verify.lo);
  v->add_option("--hi", verify.hi)->required();
  v->add_option("--window", verify.window);
  v->add_option("--interval-length", verify.interval);
  v->add_option("--max-intervals", verify.max_intervals, "Stop after this many new intervals");

  TripleArgs triple;
  auto* t = app.add_subcommand("triples", "Three-representation witness for one n");
  t->add_option("--n", triple.n)->required();
  t->add_option("--window", triple.window);

  std::string table_limit = "1e5";
  auto* t1 = app.add_subcommand("table1", "Exception sets of the first six primorials");
  t1->add_option("--limit", table_limit);

  auto* chen = app.add_subcommand("chen-bound", "Bound on the number of prime factors");
  auto* self = app.add_subcommand("selftest", "End-to-end consistency checks");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (c->parsed()) return cmd_count(count, g, out);
    if (b->parsed()) return cmd_bound(bound, g, out);
    if (e->parsed()) return cmd_exceptions(exc, g, out);
    if (v->parsed()) return cmd_verify(verify, g, out);
    if (t->parsed()) return cmd_triples(triple, g, out);
    if (t1->parsed()) return cmd_table1(table_limit, g, out);
    if (chen->parsed()) return cmd_chen(g, out);
    if (self->parsed()) return cmd_selftest(g, out);
  } catch (const MissingDataError& ex) {
    err << "psq: missing data: " << ex.what() << '\n';
    return kMissingData;
  } catch (const ParseError& ex) {
    err << "psq: bad data";
    if (ex.line()) err << " at line " << ex.line();
    err << ": " << ex.what() << '\n';
    return kMissingData;
  } catch (const CheckpointError& ex) {
    err << "psq: checkpoint: " << ex.what() << '\n';
    return kInternal;
  } catch (const InvalidArgument& ex) {
    err << "psq: " << ex.what() << '\n';
    return kInvalidInput;
  } catch (const OverflowError& ex) {
    err << "psq: " << ex.what() << '\n';
    return kInvalidInput;
  } catch (const ResourceError& ex) {
    err << "psq: " << ex.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& ex) {
    err << "psq: internal error: " << ex.what() << '\n';
    return kInternal;
  }
  return kInternal;
}

}  // namespace psq::cli

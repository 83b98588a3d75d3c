#include "psq/report.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "psq/error.hpp"

namespace psq {

using nlohmann::json;

std::string format_real(Real x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", x);
  return buf;
}

Real parse_real(const std::string& s) {
  char* end = nullptr;
  errno = 0;
  const Real v = std::strtold(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
    throw ParseError("bad real '" + s + "'", 0);
  return v;
}

namespace {

Real get_real(const json& j, const char* key) { return parse_real(j.at(key).get<std::string>()); }

json optional_real(const std::optional<Real>& x) {
  return x ? json(format_real(*x)) : json(nullptr);
}

std::optional<Real> get_optional_real(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return parse_real(v.get<std::string>());
}

template <class T>
json optional_value(const std::optional<T>& x) {
  return x ? json(*x) : json(nullptr);
}

template <class T>
std::optional<T> get_optional(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

}  // namespace

json envelope(const std::string& kind, json config, json result) {
  return json{{"schema", kReportSchema}, {"kind", kind}, {"config", std::move(config)},
              {"result", std::move(result)}};
}

const json& open_envelope(const json& doc, const std::string& kind) {
  if (doc.value("schema", "") != kReportSchema)
    throw ParseError("not a " + std::string(kReportSchema) + " document", 0);
  if (doc.at("kind").get<std::string>() != kind)
    throw ParseError("expected a '" + kind + "' report, got '" + doc.at("kind").get<std::string>() + "'", 0);
  return doc.at("result");
}

void to_json(json& j, const Interval& x) { j = {{"lo", format_real(x.lo())}, {"hi", format_real(x.hi())}}; }
void from_json(const json& j, Interval& x) { x = Interval(get_real(j, "lo"), get_real(j, "hi")); }

namespace counting {

void to_json(json& j, const WeightedCount& x) {
  j = {{"value", format_real(x.value)}, {"terms", x.terms}};
}
void from_json(const json& j, WeightedCount& x) {
  x.value = get_real(j, "value");
  x.terms = j.at("terms").get<std::uint64_t>();
}

void to_json(json& j, const Representation& x) { j = {{"n", x.n}, {"p", x.p}, {"eta", x.eta}}; }
void from_json(const json& j, Representation& x) {
  x = {j.at("n").get<std::uint64_t>(), j.at("p").get<std::uint64_t>(), j.at("eta").get<std::uint64_t>()};
}

}  // namespace counting

namespace analytic {

void to_json(json& j, const CertifiedValue& x) {
  j = {{"estimate", format_real(x.estimate)},
       {"enclosure", x.enclosure},
       {"truncation", x.truncation},
       {"prime_count", x.prime_count}};
}
void from_json(const json& j, CertifiedValue& x) {
  x.estimate = get_real(j, "estimate");
  x.enclosure = j.at("enclosure").get<Interval>();
  x.truncation = j.at("truncation").get<std::uint64_t>();
  x.prime_count = j.at("prime_count").get<std::uint64_t>();
}

void to_json(json& j, const BoundParams& x) {
  j = {{"C", format_real(x.C)},
       {"N", format_real(x.N)},
       {"n0", format_real(x.n0)},
       {"rounding", to_string(x.rounding)}};
}
void from_json(const json& j, BoundParams& x) {
  x.C = get_real(j, "C");
  x.N = get_real(j, "N");
  x.n0 = get_real(j, "n0");
  const auto r = j.at("rounding").get<std::string>();
  if (r == to_string(Rounding::Nearest)) x.rounding = Rounding::Nearest;
  else if (r == to_string(Rounding::ConservativeDirected)) x.rounding = Rounding::ConservativeDirected;
  else throw ParseError("unknown rounding '" + r + "'", 0);
}

namespace {

Verdict parse_verdict(const std::string& s) {
  for (auto v : {Verdict::Positive, Verdict::NotPositive, Verdict::InsufficientTable})
    if (s == to_string(v)) return v;
  throw ParseError("unknown verdict '" + s + "'", 0);
}

}  // namespace

void to_json(json& j, const LowerBoundReport& x) {
  j = {{"parity", x.parity == BoundParity::Even ? "even" : "odd"},
       {"n", format_real(x.n)},
       {"k", x.k},
       {"params", x.params},
       {"main_term", x.main_term},
       {"explicit_group", x.explicit_group},
       {"explicit_unit_term", x.explicit_unit_term},
       {"sieve_tail_group", x.sieve_tail_group},
       {"large_a_group", x.large_a_group},
       {"log_group", x.log_group},
       {"total", optional_value(x.total)},
       {"verdict", to_string(x.verdict)},
       {"missing_moduli", x.missing_moduli},
       {"table_provenance", x.table_provenance}};
}
void from_json(const json& j, LowerBoundReport& x) {
  const auto parity = j.at("parity").get<std::string>();
  if (parity != "even" && parity != "odd") throw ParseError("unknown parity '" + parity + "'", 0);
  x.parity = parity == "even" ? BoundParity::Even : BoundParity::Odd;
  x.n = get_real(j, "n");
  x.k = j.at("k").get<std::uint64_t>();
  x.params = j.at("params").get<BoundParams>();
  x.main_term = j.at("main_term").get<Interval>();
  x.explicit_group = j.at("explicit_group").get<Interval>();
  x.explicit_unit_term = j.at("explicit_unit_term").get<Interval>();
  x.sieve_tail_group = j.at("sieve_tail_group").get<Interval>();
  x.large_a_group = j.at("large_a_group").get<Interval>();
  x.log_group = j.at("log_group").get<Interval>();
  x.total = get_optional<Interval>(j, "total");
  x.verdict = parse_verdict(j.at("verdict").get<std::string>());
  x.missing_moduli = j.at("missing_moduli").get<std::vector<std::uint64_t>>();
  x.table_provenance = j.at("table_provenance").get<std::string>();
}

void to_json(json& j, const ChebyshevConstants& x) {
  j = {{"theta_ratio", format_real(x.theta_ratio)},
       {"theta_from", x.theta_from},
       {"pi_ratio", format_real(x.pi_ratio)},
       {"pi_from", x.pi_from}};
}
void from_json(const json& j, ChebyshevConstants& x) {
  x.theta_ratio = get_real(j, "theta_ratio");
  x.theta_from = j.at("theta_from").get<std::uint64_t>();
  x.pi_ratio = get_real(j, "pi_ratio");
  x.pi_from = j.at("pi_from").get<std::uint64_t>();
}

void to_json(json& j, const ChenFactorBound& x) {
  j = {{"theta13", x.theta13},         {"e36", x.e36},     {"prime_upper", x.prime_upper},
       {"count_upper", x.count_upper}, {"bound", x.bound}, {"e33", x.e33},
       {"below_e33", x.below_e33},     {"constants", x.constants}};
}
void from_json(const json& j, ChenFactorBound& x) {
  x.theta13 = j.at("theta13").get<Interval>();
  x.e36 = j.at("e36").get<Interval>();
  x.prime_upper = j.at("prime_upper").get<Interval>();
  x.count_upper = j.at("count_upper").get<Interval>();
  x.bound = j.at("bound").get<std::uint64_t>();
  x.e33 = j.at("e33").get<Interval>();
  x.below_e33 = j.at("below_e33").get<bool>();
  x.constants = j.at("constants").get<ChebyshevConstants>();
}

}  // namespace analytic

namespace search {

namespace {

std::chrono::duration<double> seconds(const json& j, const char* key) {
  return std::chrono::duration<double>(j.at(key).get<double>());
}

}  // namespace

void to_json(json& j, const ExceptionReport& x) {
  j = {{"k", x.k},
       {"parity", to_string(x.parity)},
       {"scan_limit", x.scan_limit},
       {"exceptions", x.exceptions},
       {"elapsed_seconds", x.elapsed.count()},
       {"checkpoint_id", optional_value(x.checkpoint_id)}};
}
void from_json(const json& j, ExceptionReport& x) {
  x.k = j.at("k").get<std::uint64_t>();
  x.parity = parse_parity(j.at("parity").get<std::string>());
  x.scan_limit = j.at("scan_limit").get<std::uint64_t>();
  x.exceptions = j.at("exceptions").get<std::vector<std::uint64_t>>();
  x.elapsed = seconds(j, "elapsed_seconds");
  x.checkpoint_id = get_optional<std::string>(j, "checkpoint_id");
}

void to_json(json& j, const TripleWitness& x) { j = {{"n", x.n}, {"reps", x.reps}}; }
void from_json(const json& j, TripleWitness& x) {
  x.n = j.at("n").get<std::uint64_t>();
  x.reps = j.at("reps").get<std::array<counting::Representation, 3>>();
}

void to_json(json& j, const VerifyReport& x) {
  j = {{"lo", x.lo},
       {"hi", x.hi},
       {"window_size", x.window_size},
       {"interval_length", x.interval_length},
       {"intervals_total", x.intervals_total},
       {"intervals_done", x.intervals_done},
       {"intervals_resumed", x.intervals_resumed},
       {"complete", x.complete},
       {"checked", x.checked},
       {"failures", x.failures},
       {"elapsed_seconds", x.elapsed.count()},
       {"checkpoint_id", optional_value(x.checkpoint_id)}};
}
void from_json(const json& j, VerifyReport& x) {
  x.lo = j.at("lo").get<std::uint64_t>();
  x.hi = j.at("hi").get<std::uint64_t>();
  x.window_size = j.at("window_size").get<std::size_t>();
  x.interval_length = j.at("interval_length").get<std::uint64_t>();
  x.intervals_total = j.at("intervals_total").get<std::uint64_t>();
  x.intervals_done = j.at("intervals_done").get<std::uint64_t>();
  x.intervals_resumed = j.at("intervals_resumed").get<std::uint64_t>();
  x.complete = j.at("complete").get<bool>();
  x.checked = j.at("checked").get<std::uint64_t>();
  x.failures = j.at("failures").get<std::vector<std::uint64_t>>();
  x.elapsed = seconds(j, "elapsed_seconds");
  x.checkpoint_id = get_optional<std::string>(j, "checkpoint_id");
}

void to_json(json& j, const CoverageSegment& x) {
  j = {{"lo", format_real(x.lo)},
       {"hi", optional_real(x.hi)},
       {"coverage", to_string(x.coverage)},
       {"note", x.note}};
}
void from_json(const json& j, CoverageSegment& x) {
  x.lo = get_real(j, "lo");
  x.hi = get_optional_real(j, "hi");
  x.coverage = parse_coverage(j.at("coverage").get<std::string>());
  x.note = j.at("note").get<std::string>();
}

void to_json(json& j, const ExceptionCertificate& x) {
  j = {{"k", x.k},
       {"parity", to_string(x.parity)},
       {"scan_limit", x.scan_limit},
       {"source", to_string(x.source)},
       {"threshold", optional_real(x.threshold)},
       {"exceptions", x.exceptions},
       {"largest_exception", optional_value(x.largest_exception)},
       {"goldbach_candidates", x.goldbach_candidates},
       {"coverage", x.coverage},
       {"notes", x.notes},
       {"gap_free", x.gap_free}};
}
void from_json(const json& j, ExceptionCertificate& x) {
  x.k = j.at("k").get<std::uint64_t>();
  x.parity = parse_parity(j.at("parity").get<std::string>());
  x.scan_limit = j.at("scan_limit").get<std::uint64_t>();
  x.source = parse_threshold_source(j.at("source").get<std::string>());
  x.threshold = get_optional_real(j, "threshold");
  x.exceptions = j.at("exceptions").get<std::vector<std::uint64_t>>();
  x.largest_exception = get_optional<std::uint64_t>(j, "largest_exception");
  x.goldbach_candidates = j.at("goldbach_candidates").get<std::vector<std::uint64_t>>();
  x.coverage = j.at("coverage").get<std::vector<CoverageSegment>>();
  x.notes = j.at("notes").get<std::vector<std::string>>();
  x.gap_free = j.at("gap_free").get<bool>();
}

}  // namespace search

}  // namespace psq

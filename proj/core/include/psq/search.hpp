#pragma once

// Exception-set scans, the three-representation check used above 600, and
// resumable parallel range verification.

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psq/analytic.hpp"
#include "psq/counting.hpp"
#include "psq/sieve.hpp"

namespace psq::search {

enum class Parity { EvenOnly, All };

const char* to_string(Parity p);
Parity parse_parity(const std::string& s);

struct ExceptionReport {
  std::uint64_t k;
  Parity parity;
  std::uint64_t scan_limit;
  std::vector<std::uint64_t> exceptions;  // ascending
  std::chrono::duration<double> elapsed{};
  std::optional<std::string> checkpoint_id;

  friend bool operator==(const ExceptionReport&, const ExceptionReport&) = default;
};

/// All n in [2, limit] of the requested parity with no representation
/// n = p + eta, eta > 1 squarefree and coprime to k. For each n the primes
/// are probed descending from n - 2, so eta is tried from 2 upward.
ExceptionReport exception_set(std::uint64_t k, std::uint64_t limit, Parity parity,
                              unsigned threads = 1);

/// Even n <= limit of the form q1 + q2 with primes q1 <= q2 dividing k for
/// which the nontrivial coprime count vanishes, each rechecked by direct
/// counting. These are the only candidates left once every even number up
/// to the Goldbach-verified floor is a sum of two primes.
std::vector<std::uint64_t> goldbach_pair_exceptions(std::uint64_t k, std::uint64_t limit);

struct TripleWitness {
  std::uint64_t n;
  std::array<counting::Representation, 3> reps;

  friend bool operator==(const TripleWitness&, const TripleWitness&) = default;
};

/// Throws InvalidArgument unless the witness has three distinct primes,
/// squarefree eta > 1 summing to n, and pairwise gcd(eta_i, eta_j) <= 2.
void validate(const TripleWitness& w);

/// Probes eta = n - window[j] for j = 0, 1, ... with the window in ascending
/// order (largest eta first). Once three squarefree eta > 1 are in hand,
/// each new one is paired with earlier ones in lexicographic order and the
/// first pairwise-near-coprime triple is returned.
///
/// Requires every window prime below n and the bitmap (Kind::Squarefree)
/// to cover n - window.back() .. n - window.front().
std::optional<TripleWitness> find_triple(std::uint64_t n, std::span<const std::uint64_t> window,
                                         const sieve::SegmentBitmap& squarefree);

/// The window_size largest primes p < below (p <= below when inclusive),
/// ascending. Fewer when not enough primes exist.
std::vector<std::uint64_t> prime_window(std::uint64_t below, std::size_t window_size,
                                        bool inclusive);

inline constexpr std::uint64_t kDefaultIntervalLength = 1 << 16;

struct VerifyOptions {
  std::size_t window_size = 100;
  unsigned workers = 1;
  std::uint64_t interval_length = kDefaultIntervalLength;
  std::optional<std::filesystem::path> checkpoint;
  // Stop after this many newly processed intervals; for interrupted runs.
  std::optional<std::uint64_t> max_new_intervals;
};

struct VerifyReport {
  std::uint64_t lo;
  std::uint64_t hi;
  std::size_t window_size;
  std::uint64_t interval_length;
  std::uint64_t intervals_total;
  std::uint64_t intervals_done;
  std::uint64_t intervals_resumed;  // taken from the checkpoint journal
  bool complete;
  std::uint64_t checked;            // numbers covered by finished intervals
  std::vector<std::uint64_t> failures;
  std::chrono::duration<double> elapsed{};
  std::optional<std::string> checkpoint_id;

  friend bool operator==(const VerifyReport&, const VerifyReport&) = default;
};

/// Splits [lo, hi] into intervals of interval_length. Interval i uses the
/// window_size largest primes below its start (for the first interval,
/// primes <= lo) and looks for a TripleWitness for each n in it. Finished
/// intervals are appended to the checkpoint journal and skipped on resume;
/// a journal that fails its hashes or belongs to another run raises
/// CheckpointError. Results do not depend on the worker count.
VerifyReport verify_range(std::uint64_t lo, std::uint64_t hi, const VerifyOptions& options);

// ---------------------------------------------------------------------------
// Certificates

enum class ThresholdSource {
  None,               // nothing covers n above the scan
  Analytic,           // an explicit lower bound evaluated by this library
  GoldbachExternal,   // even n below 4e18 are sums of two primes (external)
  PublishedComputation,   // the published triple search to 8e9 (not rerun here)
};

const char* to_string(ThresholdSource s);
ThresholdSource parse_threshold_source(const std::string& s);

inline constexpr Real kGoldbachFloor = 4e18L;
inline constexpr Real kPublishedSearchLimit = 8e9L;

enum class Coverage { VerifiedLocally, ExternalFact, AnalyticBound, Uncovered };

const char* to_string(Coverage c);
Coverage parse_coverage(const std::string& s);

struct CoverageSegment {
  Real lo;
  std::optional<Real> hi;  // empty: unbounded
  Coverage coverage;
  std::string note;

  friend bool operator==(const CoverageSegment&, const CoverageSegment&) = default;
};

struct ExceptionCertificate {
  std::uint64_t k;
  Parity parity;
  std::uint64_t scan_limit;
  ThresholdSource source;
  std::optional<Real> threshold;
  std::vector<std::uint64_t> exceptions;
  std::optional<std::uint64_t> largest_exception;
  std::vector<std::uint64_t> goldbach_candidates;
  std::vector<CoverageSegment> coverage;
  std::vector<std::string> notes;
  bool gap_free;  // no segment is Uncovered

  friend bool operator==(const ExceptionCertificate&, const ExceptionCertificate&) = default;
};

struct CertificateInputs {
  std::uint64_t k;
  Parity parity;
  std::uint64_t scan_limit;
  ThresholdSource source = ThresholdSource::None;
  // Required for Analytic; defaults to the named floor for the external sources.
  std::optional<Real> threshold;
  // Verdict of the analytic bound at the threshold, when one was evaluated.
  std::optional<analytic::Verdict> analytic_verdict;
  unsigned threads = 1;
};

/// Scans to scan_limit and lays out which parts of [2, inf) are covered by
/// what. Never reports a stretch as verified unless this run checked it.
ExceptionCertificate largest_exception_certificate(const CertificateInputs& in);

}  // namespace psq::search

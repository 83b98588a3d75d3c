#pragma once

// Explicit constants c(m) in |theta(x; m, a) - x/phi(m)| < c(m) x / log x,
// each valid for x at or above a threshold.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psq/interval.hpp"

namespace psq::analytic {

struct CThetaEntry {
  std::uint64_t modulus;
  Real threshold;  // integer-valued; may exceed 2^64
  Real constant;

  friend bool operator==(const CThetaEntry&, const CThetaEntry&) = default;
};

/// Immutable after construction; safe to share across threads.
///
/// Queries select, among the entries for modulus m, the one with the largest
/// threshold not exceeding x (hence the smallest valid constant). There is no
/// default: a modulus without a valid entry is an error.
class CThetaTable {
 public:
  /// Only the three modulus-1 rows from the Broadbent et al. tables:
  /// (8e9, 9.5913e-4), (4e18, 8.6315e-7), (1e25, 6.3417e-9).
  static CThetaTable bundled();

  /// Parses `modulus, threshold, constant` rows (with `#` comments) and
  /// merges them into the bundled rows. Rows repeating a bundled row exactly
  /// are accepted; any other repeated (modulus, threshold) is rejected.
  static CThetaTable parse(std::istream& in, const std::string& provenance);
  static CThetaTable load(const std::filesystem::path& path);

  std::optional<CThetaEntry> lookup(std::uint64_t modulus, Real x) const;
  /// The selected constant rounded up to enclose the decimal it came from.
  /// Throws MissingDataError when lookup() would return nothing.
  Real require(std::uint64_t modulus, Real x) const;

  bool has_modulus(std::uint64_t modulus) const { return rows_.count(modulus) != 0; }
  std::vector<CThetaEntry> entries() const;
  std::size_t size() const noexcept;
  const std::string& provenance() const noexcept { return provenance_; }

 private:
  CThetaTable() = default;
  // Throws ParseError(line) if the row would break the per-modulus ordering.
  void insert(const CThetaEntry& entry, std::size_t line);
  void validate_ordering() const;

  std::map<std::uint64_t, std::vector<CThetaEntry>> rows_;
  std::string provenance_;
};

/// Writes the table in the same text format parse() accepts.
void write_ctheta(std::ostream& out, const CThetaTable& table);

}  // namespace psq::analytic

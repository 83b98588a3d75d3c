#include "psq/ctheta.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "psq/error.hpp"

namespace psq::analytic {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

Real parse_real(const std::string& field, const char* name, std::size_t line) {
  if (field.empty()) throw ParseError(std::string("empty ") + name, line);
  char* end = nullptr;
  errno = 0;
  const Real v = std::strtold(field.c_str(), &end);
  if (end != field.c_str() + field.size() || errno == ERANGE || !std::isfinite(v))
    throw ParseError(std::string("bad ") + name + " '" + field + "'", line);
  return v;
}

std::uint64_t parse_modulus(const std::string& field, std::size_t line) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || v == 0)
    throw ParseError("bad modulus '" + field + "'", line);
  return v;
}

}  // namespace

CThetaTable CThetaTable::bundled() {
  CThetaTable table;
  table.provenance_ = "bundled modulus-1 rows (Broadbent et al., Table 15)";
  table.insert({1, 8e9L, 9.5913e-4L}, 0);
  table.insert({1, 4e18L, 8.6315e-7L}, 0);
  table.insert({1, 1e25L, 6.3417e-9L}, 0);
  return table;
}

void CThetaTable::insert(const CThetaEntry& entry, std::size_t line) {
  if (!(entry.constant > 0)) throw ParseError("constant must be positive", line);
  if (!(entry.threshold >= 1) || std::floor(entry.threshold) != entry.threshold)
    throw ParseError("threshold must be a positive integer", line);
  auto& list = rows_[entry.modulus];
  const auto pos = std::lower_bound(
      list.begin(), list.end(), entry,
      [](const CThetaEntry& a, const CThetaEntry& b) { return a.threshold < b.threshold; });
  if (pos != list.end() && pos->threshold == entry.threshold) {
    std::ostringstream msg;
    msg << "duplicate row for modulus " << entry.modulus << " at threshold " << std::setprecision(21)
        << entry.threshold;
    throw ParseError(msg.str(), line);
  }
  list.insert(pos, entry);
}

void CThetaTable::validate_ordering() const {
  for (const auto& [m, list] : rows_) {
    for (std::size_t i = 1; i < list.size(); ++i) {
      if (!(list[i].constant < list[i - 1].constant)) {
        std::ostringstream msg;
        msg << "modulus " << m << ": constant " << list[i].constant << " at threshold "
            << std::setprecision(21) << list[i].threshold
            << " does not decrease from the entry below it";
        throw ParseError(msg.str(), 0);
      }
    }
  }
}

CThetaTable CThetaTable::parse(std::istream& in, const std::string& provenance) {
  CThetaTable table = bundled();
  const CThetaTable defaults = bundled();
  table.provenance_ = provenance;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(std::string_view(raw).substr(0, hash));
    if (body.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(body);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(trim(f));
    if (fields.size() != 3)
      throw ParseError("expected 'modulus, threshold, constant', got '" + body + "'", line);
    const CThetaEntry entry{parse_modulus(fields[0], line), parse_real(fields[1], "threshold", line),
                            parse_real(fields[2], "constant", line)};
    const auto& bundled_rows = defaults.rows_;
    if (auto it = bundled_rows.find(entry.modulus); it != bundled_rows.end()) {
      if (std::find(it->second.begin(), it->second.end(), entry) != it->second.end()) {
        // Repeats a bundled row verbatim; count it once.
        continue;
      }
    }
    table.insert(entry, line);
  }
  table.validate_ordering();
  return table;
}

CThetaTable CThetaTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingDataError("cannot open c_theta file " + path.string(), {});
  return parse(in, path.string());
}

std::optional<CThetaEntry> CThetaTable::lookup(std::uint64_t modulus, Real x) const {
  const auto it = rows_.find(modulus);
  if (it == rows_.end()) return std::nullopt;
  std::optional<CThetaEntry> best;
  for (const auto& entry : it->second) {
    if (entry.threshold <= x) best = entry;
  }
  return best;
}

Real CThetaTable::require(std::uint64_t modulus, Real x) const {
  const auto entry = lookup(modulus, x);
  if (!entry) {
    std::ostringstream msg;
    msg << "no c_theta entry for modulus " << modulus;
    if (has_modulus(modulus)) msg << " valid at x = " << std::setprecision(21) << x;
    throw MissingDataError(msg.str(), {modulus});
  }
  return Interval::rounded(entry->constant).hi();
}

std::vector<CThetaEntry> CThetaTable::entries() const {
  std::vector<CThetaEntry> out;
  for (const auto& [m, list] : rows_) out.insert(out.end(), list.begin(), list.end());
  return out;
}

std::size_t CThetaTable::size() const noexcept {
  std::size_t n = 0;
  for (const auto& [m, list] : rows_) n += list.size();
  return n;
}

void write_ctheta(std::ostream& out, const CThetaTable& table) {
  out << "# modulus, threshold, constant\n# source: " << table.provenance() << '\n';
  for (const auto& e : table.entries())
    out << e.modulus << ", " << std::setprecision(21) << e.threshold << ", " << e.constant << '\n';
}

}  // namespace psq::analytic

#pragma once

// JSON encoding of every report type (schema "psq-report/1", described in
// docs/report-schema.md). Reals are written as decimal strings with 21
// significant digits so that long double values survive a round trip.

#include <nlohmann/json.hpp>
#include <string>

#include "psq/analytic.hpp"
#include "psq/counting.hpp"
#include "psq/search.hpp"

namespace psq {

inline constexpr const char* kReportSchema = "psq-report/1";

std::string format_real(Real x);
Real parse_real(const std::string& s);

/// {"schema", "kind", "config", "result"}.
nlohmann::json envelope(const std::string& kind, nlohmann::json config, nlohmann::json result);
/// Checks the schema tag and kind, returns "result".
const nlohmann::json& open_envelope(const nlohmann::json& doc, const std::string& kind);

void to_json(nlohmann::json& j, const Interval& x);
void from_json(const nlohmann::json& j, Interval& x);

namespace counting {
void to_json(nlohmann::json& j, const WeightedCount& x);
void from_json(const nlohmann::json& j, WeightedCount& x);
void to_json(nlohmann::json& j, const Representation& x);
void from_json(const nlohmann::json& j, Representation& x);
}  // namespace counting

namespace analytic {
void to_json(nlohmann::json& j, const CertifiedValue& x);
void from_json(const nlohmann::json& j, CertifiedValue& x);
void to_json(nlohmann::json& j, const BoundParams& x);
void from_json(const nlohmann::json& j, BoundParams& x);
void to_json(nlohmann::json& j, const LowerBoundReport& x);
void from_json(const nlohmann::json& j, LowerBoundReport& x);
void to_json(nlohmann::json& j, const ChebyshevConstants& x);
void from_json(const nlohmann::json& j, ChebyshevConstants& x);
void to_json(nlohmann::json& j, const ChenFactorBound& x);
void from_json(const nlohmann::json& j, ChenFactorBound& x);
}  // namespace analytic

namespace search {
void to_json(nlohmann::json& j, const ExceptionReport& x);
void from_json(const nlohmann::json& j, ExceptionReport& x);
void to_json(nlohmann::json& j, const TripleWitness& x);
void from_json(const nlohmann::json& j, TripleWitness& x);
void to_json(nlohmann::json& j, const VerifyReport& x);
void from_json(const nlohmann::json& j, VerifyReport& x);
void to_json(nlohmann::json& j, const CoverageSegment& x);
void from_json(const nlohmann::json& j, CoverageSegment& x);
void to_json(nlohmann::json& j, const ExceptionCertificate& x);
void from_json(const nlohmann::json& j, ExceptionCertificate& x);
}  // namespace search

}  // namespace psq

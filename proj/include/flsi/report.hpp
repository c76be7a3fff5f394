#pragma once

// JSON and CSV forms of every report type.  Numbers are written in shortest
// round-trip form; output is LF-terminated UTF-8.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "flsi/bbm.hpp"
#include "flsi/constants.hpp"
#include "flsi/inequalities.hpp"
#include "flsi/variational.hpp"

namespace flsi {

using Json = nlohmann::ordered_json;

/// Shortest decimal string that reads back to the same double.
std::string format_double(double x);

Json to_json(const FunctionalValue& v);
Json to_json(const InequalityReport& r, std::uint64_t seed);
Json to_json(const ConstantReport& r);
Json to_json(const ScanResult& r);
Json to_json(const VariationalRecord& r);
Json to_json(const BbmStudy& r);
Json to_json(const KEstimate& r);
Json to_json(const LocalLimitReport& r);

std::string emit_csv(const std::vector<InequalityReport>& reports, std::uint64_t seed);
std::string emit_csv(const std::vector<ConstantReport>& reports);
std::string emit_csv(const ScanResult& r);
/// Candidate trace of the search.
std::string emit_csv(const VariationalRecord& r);
/// Columns profile, s, one_minus_s_times_seminorm_p, K_estimate.
std::string emit_csv(const std::vector<BbmStudy>& studies);

} // namespace flsi

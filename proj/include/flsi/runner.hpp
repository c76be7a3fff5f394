#pragma once

// Executes a RunConfig and renders its output document.

#include <string>

#include "flsi/config.hpp"

namespace flsi {

inline constexpr const char* kToolName = "fraclogsob";
inline constexpr const char* kToolVersion = "1.0.0";

struct RunResult {
  int exit_code = 0;  // 0 pass, 1 an inequality failed, 2 numerical failure, 3 invalid input
  std::string output; // the JSON or CSV document
};

/// Never throws for library errors: they are mapped to an exit code and an
/// error document.  JSON output carries a header whose only run-dependent
/// field is "timestamp".
RunResult run(const RunConfig& cfg);

/// parse_config followed by run; schema errors become exit code 3.
RunResult run_document(const std::string& config_text);

/// Removes header.timestamp from a JSON output document (for comparisons).
std::string strip_timestamp(const std::string& json_text);

} // namespace flsi

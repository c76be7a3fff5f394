#pragma once

// Run configuration: JSON schema, defaults and validation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flsi/profile.hpp"
#include "flsi/quadrature.hpp"

namespace flsi {

enum class Command { Constants, Check, Scan, Optimal, Bbm };
std::string to_string(Command c);
Command command_from_string(const std::string& s);

enum class OutputFormat { Json, Csv };
std::string to_string(OutputFormat f);
OutputFormat output_format_from_string(const std::string& s);

/// Inequality identifiers accepted by `check`.
const std::vector<std::string>& inequality_ids();

struct RunConfig {
  Command command = Command::Constants;
  int d = 3;
  double p = 2.0;
  double s = 0.5;
  std::optional<double> q;      // default: midpoint of the admissible interval
  std::optional<double> alpha1; // weights; both or neither
  std::optional<double> alpha2;
  std::optional<double> c;      // default: the minimising c of the c-dependent checks
  std::vector<RadialProfile> profiles; // empty: built-in family
  QuadratureSpec quad;
  std::optional<double> C_dp;    // default: calibrated
  std::optional<double> C_alpha; // default: calibrated
  std::vector<std::string> inequalities; // check; empty means all applicable
  std::string scan_target = "lemma21";
  int restarts = 20;
  long budget = 20000;
  int grid = 0;                  // optimal: points per axis of a cross-check grid, 0 = none
  std::vector<double> s_list = {0.9, 0.99, 0.999};
  OutputFormat format = OutputFormat::Json;
  std::string out_path;          // empty: stdout
  std::uint64_t seed = 20240917;

  friend bool operator==(const RunConfig&, const RunConfig&);
};

/// Parses and validates a JSON document.  Unknown keys and type errors throw
/// SchemaError with the JSON path; parameter errors are forwarded with the
/// path of the offending field.  The default tolerance may come from the
/// environment variable FLSI_REL_TOL when the document gives none.
RunConfig parse_config(const std::string& text);

/// Full JSON form with every default written out; parse_config inverts it.
std::string serialize_config(const RunConfig& cfg);

/// Profile descriptor JSON, e.g. {"kind":"Gaussian","sigma":1}.
std::string profile_to_json(const RadialProfile& u);

} // namespace flsi

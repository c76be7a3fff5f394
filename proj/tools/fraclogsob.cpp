// fraclogsob: batch front end for the fractional log-Sobolev toolkit.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "flsi/error.hpp"
#include "flsi/runner.hpp"

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string format;
  std::string out;
  std::vector<std::string> ineq;
  std::string target;
};

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--config", opt.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  sub->add_option("--seed", opt.seed, "RNG seed (overrides the config)");
  sub->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", opt.out, "write the report here instead of stdout");
}

int fail(int code, const std::string& message) {
  std::cerr << "fraclogsob: " << message << "\n";
  return code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional Sobolev logarithmic inequalities: constants, checks, scans, "
               "variational and s -> 1 studies"};
  app.set_version_flag("--version", flsi::kToolVersion);
  app.require_subcommand(1);
  Options opt;

  auto* constants = app.add_subcommand("constants", "print every constant for the configured parameters");
  auto* check = app.add_subcommand("check", "verify inequalities over the configured profiles");
  auto* scan = app.add_subcommand("scan", "empirical calibration scan of an unspecified constant");
  auto* optimal = app.add_subcommand("optimal", "estimate the optimal interpolation constant");
  auto* bbm = app.add_subcommand("bbm", "s -> 1 study of (1-s)[u]^p");
  for (auto* sub : {constants, check, scan, optimal, bbm}) add_common(sub, opt);
  check->add_option("--ineq", opt.ineq, "inequality id (repeatable); default: all applicable")
      ->check(CLI::IsMember(flsi::inequality_ids()));
  scan->add_option("--target", opt.target, "lemma21, thm11, thm13 or lemma32")
      ->check(CLI::IsMember({"lemma21", "thm11", "thm13", "lemma32"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  std::ifstream in(opt.config);
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    return fail(3, std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) return fail(3, "config must be a JSON object");
  if (doc.contains("command") && doc["command"] != command)
    return fail(3, "config command '" + doc["command"].dump() + "' does not match subcommand '" + command + "'");
  doc["command"] = command;
  if (opt.seed) doc["seed"] = *opt.seed;
  if (!opt.format.empty()) doc["output"]["format"] = opt.format;
  if (!opt.out.empty()) doc["output"]["path"] = opt.out;
  if (!opt.ineq.empty()) doc["check"]["inequalities"] = opt.ineq;
  if (!opt.target.empty()) doc["scan"]["target"] = opt.target;

  flsi::RunResult res;
  std::string out_path;
  try {
    const auto cfg = flsi::parse_config(doc.dump());
    out_path = cfg.out_path;
    res = flsi::run(cfg);
  } catch (const flsi::Error& e) {
    std::cerr << "fraclogsob: " << e.what() << "\n";
    return flsi::exit_code_for(e.code());
  }
  if (out_path.empty()) {
    std::cout << res.output;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) return fail(3, "cannot write " + out_path);
    out << res.output;
  }
  if (res.exit_code != 0) std::cerr << "fraclogsob: exit status " << res.exit_code << "\n";
  return res.exit_code;
}

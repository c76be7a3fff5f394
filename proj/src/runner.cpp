#include "flsi/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>

#include "flsi/bbm.hpp"
#include "flsi/constants.hpp"
#include "flsi/error.hpp"
#include "flsi/inequalities.hpp"
#include "flsi/report.hpp"
#include "flsi/simd/kernels.hpp"
#include "flsi/variational.hpp"

namespace flsi {

namespace {

struct Outcome {
  Json body = Json::object();
  std::string csv;
  bool failed = false;    // some inequality or comparison failed
  bool numerical = false; // some value missed its tolerance or a budget ran out
};

struct Resolved {
  double value;
  std::string source;
};

Resolved resolve_C_dp(const RunConfig& cfg, const FracParams& params) {
  if (cfg.C_dp) return {*cfg.C_dp, "configured"};
  return {calibrated_C_dp(params, cfg.quad), "calibrated"};
}

std::vector<RadialProfile> profiles_of(const RunConfig& cfg) {
  return cfg.profiles.empty() ? builtin_family(cfg.p) : cfg.profiles;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Outcome run_constants(const RunConfig& cfg) {
  Outcome o;
  const auto params = FracParams::make_seminorm(cfg.d, cfg.p, cfg.s);
  double C_dp = 0.0;
  std::string source = "none";
  if (cfg.C_dp) {
    C_dp = *cfg.C_dp;
    source = "configured";
  } else if (params.subcritical()) {
    const auto r = resolve_C_dp(cfg, params);
    C_dp = r.value;
    source = r.source;
  }
  auto list = all_constants(params, C_dp);
  if (C_dp > 0.0) list.push_back({"C_dp", C_dp, {{"d", double(cfg.d)}, {"p", cfg.p}}, "C(d,p), " + source});
  Json arr = Json::array();
  for (const auto& c : list) arr.push_back(to_json(c));
  o.body["C_dp_source"] = source;
  o.body["constants"] = arr;
  o.csv = emit_csv(list);
  return o;
}

std::vector<std::string> default_inequalities(const RunConfig& cfg) {
  std::vector<std::string> ids;
  if (cfg.p < cfg.d) ids.push_back("classical");
  for (const char* id : {"thm11", "thm12", "lemma21", "thm22", "thm22_holder", "lemma23"}) ids.push_back(id);
  if (cfg.alpha1) ids.push_back("thm13");
  if (cfg.p == 2.0 && cfg.s < cfg.d / 2.0) ids.push_back("liebloss_p2");
  return ids;
}

Outcome run_check(const RunConfig& cfg) {
  Outcome o;
  const auto params = FracParams::make(cfg.d, cfg.p, cfg.s);
  const double q = cfg.q.value_or(default_q(params));
  const auto ex = interpolation_exponents(params, q);
  const auto ids = cfg.inequalities.empty() ? default_inequalities(cfg) : cfg.inequalities;
  const bool needs_C_dp = std::any_of(ids.begin(), ids.end(), [](const std::string& id) {
    return id == "thm11" || id == "thm12" || id == "lemma21" || id == "thm22";
  });
  const bool needs_weights = std::find(ids.begin(), ids.end(), "thm13") != ids.end();
  if (needs_weights && !cfg.alpha1)
    throw Error(ErrorCode::WeightInvalid, "thm13 needs alpha1 and alpha2", "$.params.alpha1");

  Json constants = Json::object();
  Resolved C_dp{0.0, "none"}, C_alpha{0.0, "none"};
  WeightParams w = WeightParams::none();
  if (needs_C_dp) {
    C_dp = resolve_C_dp(cfg, params);
    constants["C_dp"] = C_dp.value;
    constants["C_dp_source"] = C_dp.source;
  }
  if (needs_weights) {
    w = WeightParams::make(params, *cfg.alpha1, *cfg.alpha2);
    C_alpha = cfg.C_alpha ? Resolved{*cfg.C_alpha, "configured"}
                          : Resolved{calibrated_C_alpha(params, w, cfg.quad), "calibrated"};
    constants["C_alpha"] = C_alpha.value;
    constants["C_alpha_source"] = C_alpha.source;
  }
  o.body["q"] = q;
  o.body["constants"] = constants;

  std::vector<InequalityReport> reports;
  for (const auto& u : profiles_of(cfg)) {
    for (const auto& id : ids) {
      const QuadratureSpec& spec = cfg.quad;
      try {
        if (id == "classical") {
          if (!(cfg.p < cfg.d)) continue;
          reports.push_back(check_classical_logsob(u, cfg.d, cfg.p, delpino_dolbeault_Cp(cfg.d, cfg.p), spec));
        } else if (id == "thm11") {
          reports.push_back(check_frac_logsob_thm11(u, params, C_dp.value, spec));
        } else if (id == "thm12") {
          const double c = cfg.c ? *cfg.c : thm12_optimal_c(u, params, C_dp.value, spec);
          reports.push_back(check_frac_logsob_thm12(u, params, c, C_dp.value, spec));
        } else if (id == "thm13") {
          reports.push_back(check_weighted_thm13(u, params, w, C_alpha.value, spec));
        } else if (id == "lemma21") {
          reports.push_back(check_frac_sobolev_lemma21(u, params, C_dp.value, spec));
        } else if (id == "thm22") {
          reports.push_back(check_interpolation_thm22(u, params, q, C_dp.value, spec));
        } else if (id == "thm22_holder") {
          reports.push_back(check_interpolation_holder(u, params, q, spec));
        } else if (id == "lemma23") {
          reports.push_back(check_log_holder_lemma23(u, cfg.p, ex.r, cfg.d, spec));
        } else if (id == "liebloss_p2") {
          if (!std::holds_alternative<Gaussian>(u.shape)) continue;
          const double c = cfg.c ? *cfg.c : liebloss_optimal_c(u, cfg.d, cfg.s, spec);
          reports.push_back(check_liebloss_fractional_p2(u, cfg.d, cfg.s, c, spec));
        }
      } catch (const Error& e) {
        if (exit_code_for(e.code()) != 1) throw;
        // The inequality cannot hold as configured, e.g. the log argument is
        // not positive: record a failing report.
        InequalityReport r;
        r.name = id;
        r.profile = describe(u);
        r.params = {{"d", double(cfg.d)}, {"p", cfg.p}, {"s", cfg.s}};
        r.lhs.value = r.rhs.value = std::nan("");
        r.slack = std::nan("");
        r.pass = false;
        r.notes.push_back(e.what());
        if (C_dp.source != "none") r.constant_used["C_dp"] = C_dp.value;
        reports.push_back(r);
      }
    }
  }
  Json arr = Json::array();
  int passed = 0, unconverged = 0;
  for (const auto& r : reports) {
    arr.push_back(to_json(r, cfg.seed));
    if (r.pass) ++passed;
    else o.failed = true;
    if (!r.converged()) {
      ++unconverged;
      o.numerical = true;
    }
  }
  o.body["reports"] = arr;
  o.body["summary"] = {{"total", reports.size()}, {"passed", passed},
                       {"failed", int(reports.size()) - passed}, {"unconverged", unconverged}};
  o.csv = emit_csv(reports, cfg.seed);
  return o;
}

Outcome run_scan(const RunConfig& cfg) {
  Outcome o;
  const auto params = FracParams::make(cfg.d, cfg.p, cfg.s);
  const auto target = scan_target_from_string(cfg.scan_target);
  WeightParams w = WeightParams::none();
  if (cfg.alpha1) w = WeightParams::make(params, *cfg.alpha1, *cfg.alpha2);
  const auto res = empirical_constant_scan(profiles_of(cfg), params, target, cfg.quad, w);
  o.body["scan"] = to_json(res);
  o.csv = emit_csv(res);
  return o;
}

Outcome run_optimal(const RunConfig& cfg) {
  Outcome o;
  const auto params = FracParams::make(cfg.d, cfg.p, cfg.s);
  const double q = cfg.q.value_or(default_q(params));
  SearchOptions opt;
  opt.restarts = cfg.restarts;
  opt.budget = cfg.budget;
  const auto rec = estimate_eta(params, q, opt, cfg.quad);
  o.body["variational"] = to_json(rec);
  if (rec.budget_exhausted) o.numerical = true;
  if (cfg.grid > 0) {
    const auto grid = grid_scan_eta(params, q, cfg.grid, opt.families, cfg.quad);
    o.body["grid"] = {{"points_per_axis", cfg.grid}, {"eta_hat", grid.eta_hat},
                      {"best_profile", grid.best_profile}, {"evaluations", grid.evaluations}};
  }
  const auto C_dp = resolve_C_dp(cfg, params);
  const auto ex = interpolation_exponents(params, q);
  const double bound = std::pow(mazya_C(cfg.d, cfg.p, cfg.s, C_dp.value), ex.a / cfg.p);
  const bool consistent = rec.L_hat <= bound;
  o.body["consistency"] = {{"C_dp", C_dp.value}, {"C_dp_source", C_dp.source},
                           {"derived_constant", bound}, {"L_hat", rec.L_hat},
                           {"holds", consistent}};
  if (!consistent) o.failed = true;
  o.csv = emit_csv(rec);
  return o;
}

Outcome run_bbm(const RunConfig& cfg) {
  Outcome o;
  (void)FracParams::make_seminorm(cfg.d, cfg.p, cfg.s);
  KEstimate est;
  if (cfg.profiles.empty()) {
    est = estimate_K(cfg.d, cfg.p, cfg.quad, cfg.s_list);
  } else {
    double lo = 0, hi = 0, sum = 0;
    for (const auto& u : cfg.profiles) {
      est.studies.push_back(bbm_curve(u, cfg.d, cfg.p, cfg.s_list, cfg.quad));
      const double k = est.studies.back().K_extrapolated;
      lo = est.studies.size() == 1 ? k : std::min(lo, k);
      hi = est.studies.size() == 1 ? k : std::max(hi, k);
      sum += k;
    }
    est.value = sum / est.studies.size();
    est.spread = (hi - lo) / est.value;
  }
  Json studies = Json::array();
  for (const auto& st : est.studies) {
    studies.push_back(to_json(st));
    for (const auto& v : st.values)
      if (!v.converged) o.numerical = true;
  }
  o.body["studies"] = studies;
  o.body["K"] = to_json(est);
  if (cfg.p > 1.0 && cfg.p < cfg.d) {
    const auto params = FracParams::make_seminorm(cfg.d, cfg.p, cfg.s);
    if (cfg.C_dp || params.subcritical()) {
      const auto C_dp = resolve_C_dp(cfg, FracParams::make(cfg.d, cfg.p, cfg.s));
      const auto lim = local_limit_report(cfg.d, cfg.p, C_dp.value, est);
      o.body["local_limit"] = to_json(lim);
      o.body["local_limit"]["C_dp_source"] = C_dp.source;
    }
  }
  o.csv = emit_csv(est.studies);
  return o;
}

Json header_of(const RunConfig& cfg) {
  return Json{{"tool", kToolName},
              {"version", kToolVersion},
              {"command", to_string(cfg.command)},
              {"seed", cfg.seed},
              {"simd", simd::to_string(simd::active_isa())},
              {"config", Json::parse(serialize_config(cfg))}};
}

std::string render_error(const RunConfig* cfg, const Error& e) {
  Json doc;
  if (cfg) doc["header"] = header_of(*cfg);
  doc["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.message()},
                  {"path", e.path()}, {"exit_code", exit_code_for(e.code())}};
  return doc.dump(2) + "\n";
}

} // namespace

RunResult run(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    switch (cfg.command) {
    case Command::Constants: o = run_constants(cfg); break;
    case Command::Check: o = run_check(cfg); break;
    case Command::Scan: o = run_scan(cfg); break;
    case Command::Optimal: o = run_optimal(cfg); break;
    case Command::Bbm: o = run_bbm(cfg); break;
    }
  } catch (const Error& e) {
    return {exit_code_for(e.code()), render_error(&cfg, e)};
  } catch (const std::exception& e) {
    return {2, render_error(&cfg, Error(ErrorCode::NonFiniteIntegrand, e.what()))};
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  RunResult res;
  res.exit_code = o.numerical ? 2 : o.failed ? 1 : 0;
  if (cfg.format == OutputFormat::Csv) {
    res.output = o.csv;
    return res;
  }
  Json doc;
  doc["header"] = header_of(cfg);
  doc["header"]["timestamp"] = {{"utc", utc_now()}, {"wall_time_s", wall}};
  doc["exit_code"] = res.exit_code;
  for (auto it = o.body.begin(); it != o.body.end(); ++it) doc[it.key()] = it.value();
  res.output = doc.dump(2) + "\n";
  return res;
}

RunResult run_document(const std::string& config_text) {
  RunConfig cfg;
  try {
    cfg = parse_config(config_text);
  } catch (const Error& e) {
    return {exit_code_for(e.code()), render_error(nullptr, e)};
  }
  return run(cfg);
}

std::string strip_timestamp(const std::string& json_text) {
  Json doc = Json::parse(json_text);
  if (doc.contains("header")) doc["header"].erase("timestamp");
  return doc.dump(2);
}

} // namespace flsi

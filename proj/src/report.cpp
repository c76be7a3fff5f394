#include "flsi/report.hpp"

#include <charconv>
#include <cmath>

namespace flsi {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

/// JSON has no non-finite numbers; they become null.
Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json num_map(const std::map<std::string, double>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = num(v);
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string map_field(const std::map<std::string, double>& m) {
  std::string out;
  for (const auto& [k, v] : m) out += (out.empty() ? "" : ";") + k + "=" + format_double(v);
  return out;
}

} // namespace

Json to_json(const FunctionalValue& v) {
  return Json{{"value", num(v.value)}, {"err", num(v.err)}, {"method", v.method},
              {"work", v.work}, {"converged", v.converged}};
}

Json to_json(const InequalityReport& r, std::uint64_t seed) {
  Json j;
  j["name"] = r.name;
  j["profile"] = r.profile;
  j["params"] = num_map(r.params);
  j["lhs"] = to_json(r.lhs);
  j["rhs"] = to_json(r.rhs);
  j["slack"] = num(r.slack);
  j["pass"] = r.pass;
  j["errors"] = {{"lhs", num(r.lhs.err)}, {"rhs", num(r.rhs.err)}, {"budget", num(r.lhs.err + r.rhs.err)}};
  j["constant_used"] = num_map(r.constant_used);
  j["seed"] = seed;
  j["notes"] = r.notes;
  return j;
}

Json to_json(const ConstantReport& r) {
  return Json{{"name", r.name}, {"value", num(r.value)}, {"inputs", num_map(r.inputs)},
              {"formula", r.formula}};
}

Json to_json(const ScanResult& r) {
  Json members = Json::array();
  for (std::size_t i = 0; i < r.ratios.size(); ++i)
    members.push_back({{"profile", r.profiles[i]}, {"ratio", num(r.ratios[i])}});
  return Json{{"target", to_string(r.target)},
              {"value", num(r.value)},
              {"calibrated", num(kCalibrationFactor * r.value)},
              {"safety_factor", kCalibrationFactor},
              {"max_rel_err", num(r.max_rel_err)},
              {"members", members}};
}

Json to_json(const VariationalRecord& r) {
  Json cands = Json::array();
  for (const auto& c : r.candidates)
    cands.push_back({{"profile", c.profile}, {"quotient", num(c.quotient)}, {"eta", num(c.eta)}});
  Json trace = Json::array();
  for (const auto& t : r.trace)
    trace.push_back({{"family", t.family}, {"restart", t.restart}, {"evaluations", t.evaluations},
                     {"best_eta", num(t.best_eta)}});
  return Json{{"params", {{"d", r.params.d()}, {"p", r.params.p()}, {"s", r.params.s()}}},
              {"q", r.q},
              {"K", num(r.K)},
              {"c_tilde", num(r.c_tilde)},
              {"eta_hat", num(r.eta_hat)},
              {"L_hat", num(r.L_hat)},
              {"L_hat_label", "family-optimal lower bound"},
              {"L_direct", num(r.L_direct)},
              {"best_profile", r.best_profile},
              {"candidates", cands},
              {"evaluations", r.evaluations},
              {"budget_exhausted", r.budget_exhausted},
              {"seed", r.seed},
              {"optimizer_trace", trace}};
}

Json to_json(const BbmStudy& r) {
  Json pts = Json::array();
  for (std::size_t i = 0; i < r.s_list.size(); ++i)
    pts.push_back({{"s", r.s_list[i]},
                   {"one_minus_s_times_seminorm_p", to_json(r.values[i])},
                   {"K_estimate", num(r.K_estimates[i])},
                   {"K_err", num(r.K_errors[i])}});
  return Json{{"profile", r.profile}, {"d", r.d}, {"p", r.p}, {"grad_value", to_json(r.grad_value)},
              {"points", pts}, {"K_extrapolated", num(r.K_extrapolated)}};
}

Json to_json(const KEstimate& r) {
  return Json{{"K_hat", num(r.value)}, {"spread", num(r.spread)}, {"profiles", r.studies.size()},
              {"label", "empirical estimate"}};
}

Json to_json(const LocalLimitReport& r) {
  return Json{{"d", r.d},           {"p", r.p},
              {"C_dp", num(r.C_dp)}, {"K_hat", num(r.K_hat)},
              {"K_spread", num(r.K_spread)}, {"limit_constant", num(r.limit_constant)},
              {"C_p", num(r.C_p)},   {"D_p", num(r.D_p)},
              {"margin", num(r.margin)}, {"holds", r.holds}};
}

std::string emit_csv(const std::vector<InequalityReport>& reports, std::uint64_t seed) {
  std::string out = "name,profile,lhs,lhs_err,rhs,rhs_err,slack,pass,constant_used,params,seed\n";
  for (const auto& r : reports) {
    out += csv_field(r.name) + "," + csv_field(r.profile) + "," + format_double(r.lhs.value) + "," +
           format_double(r.lhs.err) + "," + format_double(r.rhs.value) + "," +
           format_double(r.rhs.err) + "," + format_double(r.slack) + "," +
           (r.pass ? "true" : "false") + "," + csv_field(map_field(r.constant_used)) + "," +
           csv_field(map_field(r.params)) + "," + std::to_string(seed) + "\n";
  }
  return out;
}

std::string emit_csv(const std::vector<ConstantReport>& reports) {
  std::string out = "name,value,inputs,formula\n";
  for (const auto& r : reports)
    out += csv_field(r.name) + "," + format_double(r.value) + "," + csv_field(map_field(r.inputs)) +
           "," + csv_field(r.formula) + "\n";
  return out;
}

std::string emit_csv(const ScanResult& r) {
  std::string out = "target,profile,ratio\n";
  for (std::size_t i = 0; i < r.ratios.size(); ++i)
    out += to_string(r.target) + "," + csv_field(r.profiles[i]) + "," + format_double(r.ratios[i]) + "\n";
  return out;
}

std::string emit_csv(const VariationalRecord& r) {
  std::string out = "family,restart,evaluations,best_eta\n";
  for (const auto& t : r.trace)
    out += t.family + "," + std::to_string(t.restart) + "," + std::to_string(t.evaluations) + "," +
           format_double(t.best_eta) + "\n";
  return out;
}

std::string emit_csv(const std::vector<BbmStudy>& studies) {
  std::string out = "profile,s,one_minus_s_times_seminorm_p,K_estimate\n";
  for (const auto& st : studies)
    for (std::size_t i = 0; i < st.s_list.size(); ++i)
      out += csv_field(st.profile) + "," + format_double(st.s_list[i]) + "," +
             format_double(st.values[i].value) + "," + format_double(st.K_estimates[i]) + "\n";
  return out;
}

} // namespace flsi

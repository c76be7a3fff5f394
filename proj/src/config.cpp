#include "flsi/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <tuple>
#include <type_traits>

#include <json.hpp>

#include "flsi/core.hpp"
#include "flsi/error.hpp"

namespace flsi {

using json = nlohmann::ordered_json;

std::string to_string(Command c) {
  switch (c) {
  case Command::Constants: return "constants";
  case Command::Check: return "check";
  case Command::Scan: return "scan";
  case Command::Optimal: return "optimal";
  case Command::Bbm: return "bbm";
  }
  return "?";
}

Command command_from_string(const std::string& s) {
  for (auto c : {Command::Constants, Command::Check, Command::Scan, Command::Optimal, Command::Bbm})
    if (to_string(c) == s) return c;
  throw Error(ErrorCode::SchemaError, "unknown command '" + s + "'", "$.command");
}

std::string to_string(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

OutputFormat output_format_from_string(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw Error(ErrorCode::SchemaError, "format must be json or csv", "$.output.format");
}

const std::vector<std::string>& inequality_ids() {
  static const std::vector<std::string> ids = {"classical", "thm11", "thm12", "thm13", "lemma21",
                                               "thm22", "thm22_holder", "lemma23", "liebloss_p2"};
  return ids;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  if (a.profiles.size() != b.profiles.size()) return false;
  for (std::size_t i = 0; i < a.profiles.size(); ++i)
    if (exact_key(a.profiles[i]) != exact_key(b.profiles[i])) return false;
  const auto qa = std::tie(a.quad.rel_tol, a.quad.abs_tol, a.quad.truncation_radius,
                           a.quad.mc_samples, a.quad.seed, a.quad.method);
  const auto qb = std::tie(b.quad.rel_tol, b.quad.abs_tol, b.quad.truncation_radius,
                           b.quad.mc_samples, b.quad.seed, b.quad.method);
  return a.command == b.command && a.d == b.d && a.p == b.p && a.s == b.s && a.q == b.q &&
         a.alpha1 == b.alpha1 && a.alpha2 == b.alpha2 && a.c == b.c && qa == qb &&
         a.C_dp == b.C_dp && a.C_alpha == b.C_alpha && a.inequalities == b.inequalities &&
         a.scan_target == b.scan_target && a.restarts == b.restarts && a.budget == b.budget &&
         a.grid == b.grid && a.s_list == b.s_list && a.format == b.format &&
         a.out_path == b.out_path && a.seed == b.seed;
}

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaError, what, path);
}

/// Object view that records which keys were read and rejects the rest.
class Reader {
public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) schema(path_, "expected an object");
  }

  std::string at(const std::string& key) const { return path_ + "." + key; }
  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  std::optional<double> number(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) return std::nullopt;
    const auto& v = j_.at(key);
    if (!v.is_number()) schema(at(key), "expected a number");
    return v.get<double>();
  }

  std::optional<long long> integer(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) return std::nullopt;
    const auto& v = j_.at(key);
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
      const double x = v.get<double>();
      if (x == static_cast<double>(static_cast<long long>(x))) return static_cast<long long>(x);
    }
    schema(at(key), "expected an integer");
  }

  std::optional<std::uint64_t> unsigned_integer(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) return std::nullopt;
    const auto& v = j_.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
    schema(at(key), "expected a non-negative integer");
  }

  std::optional<std::string> string(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) return std::nullopt;
    const auto& v = j_.at(key);
    if (!v.is_string()) schema(at(key), "expected a string");
    return v.get<std::string>();
  }

  std::optional<Reader> object(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) return std::nullopt;
    return Reader(j_.at(key), at(key));
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) schema(at(it.key()), "unknown key");
  }

private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

template <class F>
auto forward_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (!e.path().empty()) throw;
    throw Error(e.code(), e.message(), path);
  }
}

RadialProfile parse_profile(const json& j, const std::string& path) {
  Reader r(j, path);
  const auto kind = r.string("kind");
  if (!kind) schema(r.at("kind"), "missing profile kind");
  const double amp = r.number("amplitude").value_or(1.0);
  auto need = [&](const char* key) {
    const auto v = r.number(key);
    if (!v) schema(r.at(key), std::string("missing ") + key);
    return *v;
  };
  RadialProfile u;
  forward_path(path, [&] {
    if (*kind == "Gaussian") u = make_gaussian(need("sigma"), amp);
    else if (*kind == "ExtremalDPD") u = make_extremal(need("sigma"), need("p"), amp);
    else if (*kind == "ExpPower") u = make_exp_power(need("c"), need("beta"), amp);
    else if (*kind == "Bump") u = make_bump(need("R"), need("k"), amp);
    else schema(r.at("kind"), "unknown profile kind '" + *kind + "'");
    return 0;
  });
  if (r.has("center")) {
    const auto& c = r.raw("center");
    if (!c.is_array()) schema(r.at("center"), "expected an array");
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c[i].is_number()) schema(r.at("center") + "[" + std::to_string(i) + "]", "expected a number");
      u.center.push_back(c[i].get<double>());
    }
  } else {
    (void)r.number("center");
  }
  forward_path(path, [&] {
    validate(u);
    return 0;
  });
  r.finish();
  return u;
}

json profile_json(const RadialProfile& u) {
  json j;
  j["kind"] = kind_name(u);
  std::visit([&](const auto& sh) {
    using T = std::decay_t<decltype(sh)>;
    if constexpr (std::is_same_v<T, Gaussian>) j["sigma"] = sh.sigma;
    else if constexpr (std::is_same_v<T, ExtremalDPD>) { j["sigma"] = sh.sigma; j["p"] = sh.p; }
    else if constexpr (std::is_same_v<T, ExpPower>) { j["c"] = sh.c; j["beta"] = sh.beta; }
    else { j["R"] = sh.R; j["k"] = sh.k; }
  }, u.shape);
  j["amplitude"] = u.amplitude;
  if (!u.center.empty()) j["center"] = u.center;
  return j;
}

std::vector<double> number_list(Reader& r, const std::string& key) {
  const auto& v = r.raw(key);
  if (!v.is_array()) schema(r.at(key), "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) schema(r.at(key) + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

void validate_config(const RunConfig& cfg) {
  const auto params = forward_path("$.params", [&] {
    return cfg.command == Command::Bbm || cfg.command == Command::Constants
               ? FracParams::make_seminorm(cfg.d, cfg.p, cfg.s)
               : FracParams::make(cfg.d, cfg.p, cfg.s);
  });
  if (cfg.alpha1.has_value() != cfg.alpha2.has_value())
    throw Error(ErrorCode::WeightInvalid, "give both alpha1 and alpha2",
                cfg.alpha1 ? "$.params.alpha2" : "$.params.alpha1");
  if (cfg.alpha1) {
    forward_path("$.params.alpha1", [&] {
      if (!params.subcritical())
        throw Error(ErrorCode::SubcriticalityViolated, "weights need sp < d");
      return WeightParams::make(params, *cfg.alpha1, *cfg.alpha2);
    });
  }
  if (cfg.q) forward_path("$.params.q", [&] {
      if (!params.subcritical()) throw Error(ErrorCode::SubcriticalityViolated, "q needs sp < d");
      return interpolation_exponents(params, *cfg.q);
    });
  if (cfg.c && !(*cfg.c > 0.0))
    throw Error(ErrorCode::NonPositiveArgument, "c must be > 0", "$.params.c");
  if (cfg.C_dp && !(*cfg.C_dp >= 0.0))
    throw Error(ErrorCode::NonPositiveArgument, "C_dp must be >= 0", "$.constants.C_dp");
  if (cfg.C_alpha && !(*cfg.C_alpha >= 0.0))
    throw Error(ErrorCode::NonPositiveArgument, "C_alpha must be >= 0", "$.constants.C_alpha");
  forward_path("$.quad", [&] {
    validate(cfg.quad);
    return 0;
  });
  for (std::size_t i = 0; i < cfg.inequalities.size(); ++i) {
    const auto& ids = inequality_ids();
    if (std::find(ids.begin(), ids.end(), cfg.inequalities[i]) == ids.end())
      throw Error(ErrorCode::InputInvalid, "unknown inequality '" + cfg.inequalities[i] + "'",
                  "$.check.inequalities[" + std::to_string(i) + "]");
  }
  const std::vector<std::string> targets = {"lemma21", "thm11", "thm13", "lemma32"};
  if (std::find(targets.begin(), targets.end(), cfg.scan_target) == targets.end())
    throw Error(ErrorCode::InputInvalid, "unknown scan target '" + cfg.scan_target + "'", "$.scan.target");
  if ((cfg.scan_target == "thm13" || cfg.scan_target == "lemma32") && cfg.command == Command::Scan && !cfg.alpha1)
    throw Error(ErrorCode::WeightInvalid, "weighted scan targets need alpha1 and alpha2", "$.params.alpha1");
  if (cfg.restarts < 1) throw Error(ErrorCode::InputInvalid, "restarts must be >= 1", "$.optimal.restarts");
  if (cfg.budget < 1) throw Error(ErrorCode::InputInvalid, "budget must be >= 1", "$.optimal.budget");
  if (cfg.grid != 0 && cfg.grid < 2) throw Error(ErrorCode::InputInvalid, "grid must be 0 or >= 2", "$.optimal.grid");
  for (std::size_t i = 0; i < cfg.s_list.size(); ++i) {
    const double s = cfg.s_list[i];
    if (!(s > 0.0 && s < 1.0) || (i > 0 && !(s > cfg.s_list[i - 1])))
      throw Error(ErrorCode::InputInvalid, "s_list must be strictly increasing in (0, 1)",
                  "$.bbm.s_list[" + std::to_string(i) + "]");
  }
  if (cfg.s_list.empty()) throw Error(ErrorCode::InputInvalid, "s_list is empty", "$.bbm.s_list");
}

} // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    schema("$", std::string("malformed JSON: ") + e.what());
  }
  RunConfig cfg;
  if (const char* env = std::getenv("FLSI_REL_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0))
      throw Error(ErrorCode::InputInvalid, "FLSI_REL_TOL must be a positive number", "env:FLSI_REL_TOL");
    cfg.quad.rel_tol = v;
  }

  Reader root(doc, "$");
  if (const auto c = root.string("command")) cfg.command = command_from_string(*c);
  else schema("$.command", "missing command");

  if (auto pr = root.object("params")) {
    if (const auto d = pr->integer("d")) cfg.d = static_cast<int>(*d);
    if (const auto p = pr->number("p")) cfg.p = *p;
    if (const auto s = pr->number("s")) cfg.s = *s;
    cfg.q = pr->number("q");
    cfg.alpha1 = pr->number("alpha1");
    cfg.alpha2 = pr->number("alpha2");
    cfg.c = pr->number("c");
    pr->finish();
  } else {
    schema("$.params", "missing params");
  }

  if (root.has("profiles")) {
    const auto& arr = root.raw("profiles");
    if (arr.is_string()) {
      if (arr.get<std::string>() != "builtin") schema("$.profiles", "expected an array or \"builtin\"");
    } else if (arr.is_array()) {
      for (std::size_t i = 0; i < arr.size(); ++i)
        cfg.profiles.push_back(parse_profile(arr[i], "$.profiles[" + std::to_string(i) + "]"));
    } else {
      schema("$.profiles", "expected an array or \"builtin\"");
    }
  } else {
    (void)root.number("profiles");
  }

  if (auto q = root.object("quad")) {
    if (const auto v = q->number("rel_tol")) cfg.quad.rel_tol = *v;
    if (const auto v = q->number("abs_tol")) cfg.quad.abs_tol = *v;
    if (const auto v = q->number("truncation_radius")) cfg.quad.truncation_radius = *v;
    if (const auto v = q->integer("mc_samples")) cfg.quad.mc_samples = static_cast<long>(*v);
    if (const auto m = q->string("method")) {
      try {
        cfg.quad.method = quad_method_from_string(*m);
      } catch (const Error& e) {
        schema(q->at("method"), e.message());
      }
    }
    q->finish();
  }

  if (auto c = root.object("constants")) {
    cfg.C_dp = c->number("C_dp");
    cfg.C_alpha = c->number("C_alpha");
    c->finish();
  }

  if (auto c = root.object("check")) {
    if (c->has("inequalities")) {
      const auto& arr = c->raw("inequalities");
      if (!arr.is_array()) schema(c->at("inequalities"), "expected an array");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_string())
          schema(c->at("inequalities") + "[" + std::to_string(i) + "]", "expected a string");
        cfg.inequalities.push_back(arr[i].get<std::string>());
      }
    } else {
      (void)c->number("inequalities");
    }
    c->finish();
  }

  if (auto s = root.object("scan")) {
    if (const auto t = s->string("target")) cfg.scan_target = *t;
    s->finish();
  }

  if (auto o = root.object("optimal")) {
    if (const auto v = o->integer("restarts")) cfg.restarts = static_cast<int>(*v);
    if (const auto v = o->integer("budget")) cfg.budget = static_cast<long>(*v);
    if (const auto v = o->integer("grid")) cfg.grid = static_cast<int>(*v);
    o->finish();
  }

  if (auto b = root.object("bbm")) {
    if (b->has("s_list")) cfg.s_list = number_list(*b, "s_list");
    else (void)b->number("s_list");
    b->finish();
  }

  if (auto o = root.object("output")) {
    if (const auto f = o->string("format")) cfg.format = output_format_from_string(*f);
    if (const auto pth = o->string("path")) cfg.out_path = *pth;
    o->finish();
  }

  if (const auto seed = root.unsigned_integer("seed")) cfg.seed = *seed;
  cfg.quad.seed = cfg.seed;
  root.finish();
  validate_config(cfg);
  return cfg;
}

std::string profile_to_json(const RadialProfile& u) { return profile_json(u).dump(); }

std::string serialize_config(const RunConfig& cfg) {
  json j;
  j["command"] = to_string(cfg.command);
  json params;
  params["d"] = cfg.d;
  params["p"] = cfg.p;
  params["s"] = cfg.s;
  if (cfg.q) params["q"] = *cfg.q;
  if (cfg.alpha1) params["alpha1"] = *cfg.alpha1;
  if (cfg.alpha2) params["alpha2"] = *cfg.alpha2;
  if (cfg.c) params["c"] = *cfg.c;
  j["params"] = params;
  if (cfg.profiles.empty()) {
    j["profiles"] = "builtin";
  } else {
    json arr = json::array();
    for (const auto& u : cfg.profiles) arr.push_back(profile_json(u));
    j["profiles"] = arr;
  }
  j["quad"] = {{"rel_tol", cfg.quad.rel_tol},
               {"abs_tol", cfg.quad.abs_tol},
               {"truncation_radius", cfg.quad.truncation_radius},
               {"mc_samples", cfg.quad.mc_samples},
               {"method", to_string(cfg.quad.method)}};
  json consts = json::object();
  if (cfg.C_dp) consts["C_dp"] = *cfg.C_dp;
  if (cfg.C_alpha) consts["C_alpha"] = *cfg.C_alpha;
  j["constants"] = consts;
  j["check"] = {{"inequalities", cfg.inequalities}};
  j["scan"] = {{"target", cfg.scan_target}};
  j["optimal"] = {{"restarts", cfg.restarts}, {"budget", cfg.budget}, {"grid", cfg.grid}};
  j["bbm"] = {{"s_list", cfg.s_list}};
  j["output"] = {{"format", to_string(cfg.format)}, {"path", cfg.out_path}};
  j["seed"] = cfg.seed;
  return j.dump(2);
}

} // namespace flsi

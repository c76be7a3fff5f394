#include "flsi/inequalities.hpp"

#include <algorithm>
#include <cmath>

#include "flsi/constants.hpp"
#include "flsi/error.hpp"
#include "flsi/functionals.hpp"
#include "flsi/special.hpp"

namespace flsi {

namespace {

FunctionalValue exact(double v) { return {v, 0.0, "closed", 0, true}; }

FunctionalValue sum(const FunctionalValue& a, const FunctionalValue& b) {
  FunctionalValue out = a;
  out.value = a.value + b.value;
  out.err = a.err + b.err;
  out.work = a.work + b.work;
  out.converged = a.converged && b.converged;
  if (a.method != b.method) out.method = a.method + "+" + b.method;
  return out;
}

FunctionalValue product(const FunctionalValue& a, const FunctionalValue& b) {
  FunctionalValue out = sum(a, b);
  out.value = a.value * b.value;
  out.err = std::abs(a.value) * b.err + std::abs(b.value) * a.err;
  return out;
}

/// k log(x); LogDomain unless x > 0.
FunctionalValue scaled_log(double k, const FunctionalValue& x, const std::string& what) {
  if (!(x.value > 0.0) || !std::isfinite(x.value))
    throw Error(ErrorCode::LogDomain, "log argument " + std::to_string(x.value) + " in " + what +
                                          " is not positive (constant too small or seminorm underflow)");
  FunctionalValue out = x;
  out.value = k * std::log(x.value);
  out.err = std::abs(k) * x.err / x.value;
  return out;
}

struct Normalized {
  RadialProfile u;
  double factor;
};

Normalized normalize(const RadialProfile& u, double p, int d) {
  try {
    RadialProfile v = normalize_unit_lp(u, p, d);
    return {v, v.amplitude / u.amplitude};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ZeroFunction)
      throw Error(ErrorCode::NormalizationMissing, "cannot normalise: " + std::string(e.what()));
    throw;
  }
}

InequalityReport start(const std::string& name, const RadialProfile& u) {
  InequalityReport r;
  r.name = name;
  r.profile = describe(u);
  return r;
}

void echo_params(InequalityReport& r, const FracParams& params) {
  r.params["d"] = params.d();
  r.params["p"] = params.p();
  r.params["s"] = params.s();
}

/// int |u|^p log(|u|^p / ||u||_p^p) = p E - N log N.
FunctionalValue relative_entropy(const RadialProfile& u, double p, int d, const QuadratureSpec& spec) {
  const auto E = entropy(u, p, d, spec);
  const auto N = lp_power_value(u, p, d, spec);
  FunctionalValue out = sum(E, N);
  if (N.value <= 0.0) {
    out.value = 0.0;
    out.err = p * E.err;
    return out;
  }
  out.value = p * E.value - N.value * std::log(N.value);
  out.err = p * E.err + std::abs(std::log(N.value) + 1.0) * N.err;
  return out;
}

} // namespace

void finalize(InequalityReport& r) {
  r.slack = r.rhs.value - r.lhs.value;
  r.pass = r.slack >= -(r.lhs.err + r.rhs.err);
  if (!r.lhs.converged) r.notes.push_back("lhs did not reach the requested tolerance");
  if (!r.rhs.converged) r.notes.push_back("rhs did not reach the requested tolerance");
}

InequalityReport check_classical_logsob(const RadialProfile& u, int d, double p, double constant,
                                        const QuadratureSpec& spec) {
  if (d < 1) throw Error(ErrorCode::DimensionInvalid, "d must be >= 1");
  if (!(p > 1.0 && p < d)) throw Error(ErrorCode::ExponentInvalid, "need 1 < p < d");
  auto r = start("classical", u);
  const auto n = normalize(u, p, d);
  r.params = {{"d", double(d)}, {"p", p}, {"normalization", n.factor}};
  r.constant_used["constant"] = constant;
  r.lhs = entropy(n.u, p, d, spec);
  const auto G = grad_power(n.u, p, d, spec);
  r.rhs = scaled_log(d / (p * p), scaled(G, constant), r.name);
  finalize(r);
  return r;
}

InequalityReport check_frac_logsob_thm11(const RadialProfile& u, const FracParams& params,
                                         double C_dp, const QuadratureSpec& spec) {
  const int d = params.d();
  const double p = params.p(), s = params.s();
  auto r = start("thm11", u);
  const double C = mazya_C(d, p, s, C_dp);
  const auto n = normalize(u, p, d);
  echo_params(r, params);
  r.params["normalization"] = n.factor;
  r.constant_used = {{"C_dp", C_dp}, {"mazya_C", C}};
  r.lhs = entropy(n.u, p, d, spec);
  r.rhs = scaled_log(d / (s * p * p), scaled(gagliardo_power(n.u, params, spec), C), r.name);
  finalize(r);
  return r;
}

double thm12_optimal_c(const RadialProfile& u, const FracParams& params, double C_dp,
                       const QuadratureSpec& spec) {
  const double p = params.p();
  const double C = mazya_C(params.d(), p, params.s(), C_dp);
  const double N = lp_power_value(u, p, params.d(), spec).value;
  const double G = gagliardo_power(u, params, spec).value;
  if (!(N > 0.0) || !(G > 0.0)) throw Error(ErrorCode::ZeroFunction, "optimal c needs u != 0");
  return std::pow(N / (std::pow(kE, p - 1.0) * C * G), 1.0 / p);
}

InequalityReport check_frac_logsob_thm12(const RadialProfile& u, const FracParams& params,
                                         double c, double C_dp, const QuadratureSpec& spec) {
  const int d = params.d();
  const double p = params.p(), s = params.s();
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::NonPositiveArgument, "c must be > 0");
  auto r = start("thm12", u);
  const double C = mazya_C(d, p, s, C_dp);
  echo_params(r, params);
  r.params["c"] = c;
  r.constant_used = {{"C_dp", C_dp}, {"mazya_C", C}};
  const auto N = lp_power_value(u, p, d, spec);
  r.lhs = sum(relative_entropy(u, p, d, spec), scaled(N, (d / s) * (1.0 + std::log(c))));
  const double k = d * std::pow(kE, p - 1.0) * std::pow(c, p) * C / (s * p);
  r.rhs = scaled(gagliardo_power(u, params, spec), k);
  finalize(r);
  return r;
}

InequalityReport check_weighted_thm13(const RadialProfile& u, const FracParams& params,
                                      const WeightParams& w, double C_alpha,
                                      const QuadratureSpec& spec) {
  const int d = params.d();
  const double p = params.p(), s = params.s();
  const auto wv = WeightParams::make(params, w.alpha1(), w.alpha2());
  if (!(C_alpha > 0.0)) throw Error(ErrorCode::NonPositiveArgument, "C_alpha must be > 0");
  auto r = start("thm13", u);
  const auto n = normalize(u, p, d);
  echo_params(r, params);
  r.params["alpha1"] = wv.alpha1();
  r.params["alpha2"] = wv.alpha2();
  r.params["normalization"] = n.factor;
  r.constant_used = {{"C_alpha", C_alpha}};
  r.lhs = entropy(n.u, p, d, spec);
  const auto G = weighted_gagliardo_power(n.u, params, wv, spec);
  r.rhs = scaled_log(d / ((s - wv.alpha()) * p * p), scaled(G, C_alpha), r.name);
  finalize(r);
  return r;
}

InequalityReport check_frac_sobolev_lemma21(const RadialProfile& u, const FracParams& params,
                                            double C_dp, const QuadratureSpec& spec) {
  const double p = params.p();
  auto r = start("lemma21", u);
  const double C = mazya_C(params.d(), p, params.s(), C_dp);
  echo_params(r, params);
  r.params["p_star"] = critical_exponent(params);
  r.constant_used = {{"C_dp", C_dp}, {"mazya_C", C}};
  r.lhs = lp_norm(u, critical_exponent(params), params.d(), spec);
  r.rhs = scaled(gagliardo_seminorm(u, params, spec), std::pow(C, 1.0 / p));
  finalize(r);
  return r;
}

InequalityReport check_interpolation_thm22(const RadialProfile& u, const FracParams& params,
                                           double q, double C_dp, const QuadratureSpec& spec) {
  const auto ex = interpolation_exponents(params, q);
  if (u.amplitude == 0.0)
    throw Error(ErrorCode::InputInvalid, "the interpolation inequality excludes u = 0");
  const double p = params.p();
  auto r = start("thm22", u);
  const double C = mazya_C(params.d(), p, params.s(), C_dp);
  echo_params(r, params);
  r.params["q"] = q;
  r.params["r"] = ex.r;
  r.params["a"] = ex.a;
  r.constant_used = {{"C_dp", C_dp}, {"mazya_C", C}};
  r.lhs = lp_norm(u, ex.r, params.d(), spec);
  const auto semi = power_of(gagliardo_seminorm(u, params, spec), ex.a);
  const auto nq = power_of(lp_norm(u, q, params.d(), spec), 1.0 - ex.a);
  r.rhs = scaled(product(semi, nq), std::pow(C, ex.a / p));
  finalize(r);
  return r;
}

InequalityReport check_interpolation_holder(const RadialProfile& u, const FracParams& params,
                                            double q, const QuadratureSpec& spec) {
  const auto ex = interpolation_exponents(params, q);
  auto r = start("thm22_holder", u);
  echo_params(r, params);
  r.params["q"] = q;
  r.params["r"] = ex.r;
  r.params["a"] = ex.a;
  r.lhs = lp_norm(u, ex.r, params.d(), spec);
  r.rhs = product(power_of(lp_norm(u, ex.p_star, params.d(), spec), ex.a),
                  power_of(lp_norm(u, q, params.d(), spec), 1.0 - ex.a));
  finalize(r);
  return r;
}

InequalityReport check_log_holder_lemma23(const RadialProfile& u, double q, double r_exp, int d,
                                          const QuadratureSpec& spec) {
  if (d < 1) throw Error(ErrorCode::DimensionInvalid, "d must be >= 1");
  if (!(q >= 1.0 && q < r_exp && std::isfinite(r_exp)))
    throw Error(ErrorCode::ExponentOrderInvalid, "need 1 <= q < r < infinity");
  auto r = start("lemma23", u);
  r.params = {{"d", double(d)}, {"q", q}, {"r", r_exp}};
  const auto Eq = entropy(u, q, d, spec);
  const auto Nq = lp_power_value(u, q, d, spec);
  const auto Nr = lp_power_value(u, r_exp, d, spec);
  if (Nq.value <= 0.0) {
    r.lhs = exact(0.0);
    r.rhs = exact(0.0);
    finalize(r);
    return r;
  }
  const double lq = std::log(Nq.value) / q;
  r.lhs = sum(Eq, Nq);
  r.lhs.value = Eq.value - Nq.value * lq;
  r.lhs.err = Eq.err + std::abs(lq + 1.0 / q) * Nq.err;
  const double k = r_exp / (r_exp - q);
  const double gap = std::log(Nr.value) / r_exp - lq;
  r.rhs = sum(Nq, Nr);
  r.rhs.value = k * Nq.value * gap;
  // d/dNq of Nq*gap is gap - 1/q; d/dNr is Nq/(r Nr).
  r.rhs.err = k * (std::abs(gap - 1.0 / q) * Nq.err + Nq.value * Nr.err / (r_exp * Nr.value));
  finalize(r);
  return r;
}

InequalityReport check_liebloss_fractional_p2(const RadialProfile& u, int d, double s, double c,
                                              const QuadratureSpec& spec) {
  const double Cds = chatzakou_ruzhansky_Cds(d, s);
  if (!std::holds_alternative<Gaussian>(u.shape))
    throw Error(ErrorCode::UnsupportedProfile, "the p = 2 spectral check needs a Gaussian");
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::NonPositiveArgument, "c must be > 0");
  auto r = start("liebloss_p2", u);
  r.params = {{"d", double(d)}, {"p", 2.0}, {"s", s}, {"c", c}};
  r.constant_used = {{"C_ds", Cds}};
  const auto N = lp_power_value(u, 2.0, d, spec);
  r.lhs = sum(relative_entropy(u, 2.0, d, spec), scaled(N, (d / s) * (1.0 + std::log(c))));
  r.rhs = scaled(spectral_seminorm_p2(u, d, s, spec), d * kE * c * c / (2.0 * s) * Cds);
  finalize(r);
  return r;
}

double liebloss_optimal_c(const RadialProfile& u, int d, double s, const QuadratureSpec& spec) {
  const double Cds = chatzakou_ruzhansky_Cds(d, s);
  const double N = lp_power_value(u, 2.0, d, spec).value;
  const double S = spectral_seminorm_p2(u, d, s, spec).value;
  if (!(N > 0.0) || !(S > 0.0)) throw Error(ErrorCode::ZeroFunction, "optimal c needs u != 0");
  return std::sqrt(N / (kE * Cds * S));
}

std::string to_string(ScanTarget t) {
  switch (t) {
  case ScanTarget::Lemma21: return "lemma21";
  case ScanTarget::Thm11: return "thm11";
  case ScanTarget::Thm13: return "thm13";
  case ScanTarget::Lemma32: return "lemma32";
  }
  return "?";
}

ScanTarget scan_target_from_string(const std::string& s) {
  for (auto t : {ScanTarget::Lemma21, ScanTarget::Thm11, ScanTarget::Thm13, ScanTarget::Lemma32})
    if (to_string(t) == s) return t;
  throw Error(ErrorCode::InputInvalid, "unknown scan target '" + s + "'");
}

ScanResult empirical_constant_scan(const std::vector<RadialProfile>& family,
                                   const FracParams& params, ScanTarget target,
                                   const QuadratureSpec& spec, const WeightParams& w) {
  if (family.empty()) throw Error(ErrorCode::InputInvalid, "scan needs a nonempty family");
  const int d = params.d();
  const double p = params.p(), s = params.s();
  const bool weighted = target == ScanTarget::Thm13 || target == ScanTarget::Lemma32;
  const auto wv = weighted ? WeightParams::make(params, w.alpha1(), w.alpha2()) : WeightParams::none();
  const double alpha = wv.alpha();
  const double factor = s * (1.0 - s) / std::pow(d - s * p, p - 1.0);

  ScanResult res;
  res.target = target;
  for (const auto& u0 : family) {
    const auto u = normalize(u0, p, d).u;
    const auto G = weighted ? weighted_gagliardo_power(u, params, wv, spec) : gagliardo_power(u, params, spec);
    if (!(G.value > 0.0)) throw Error(ErrorCode::ZeroFunction, "seminorm vanished for " + describe(u0));
    double ratio = 0.0, rel = G.err / G.value;
    switch (target) {
    case ScanTarget::Lemma21:
    case ScanTarget::Lemma32: {
      const double ps = d * p / (d - s * p + alpha * p);
      const auto N = lp_power_value(u, ps, d, spec);
      ratio = std::pow(N.value, p / ps) / G.value;
      rel += (p / ps) * N.err / N.value;
      break;
    }
    case ScanTarget::Thm11:
    case ScanTarget::Thm13: {
      const auto E = entropy(u, p, d, spec);
      const double k = (s - alpha) * p * p / d;
      ratio = std::exp(k * E.value) / G.value;
      rel += k * E.err;
      break;
    }
    }
    if (!weighted) ratio /= factor;
    res.ratios.push_back(ratio);
    res.profiles.push_back(describe(u0));
    res.value = std::max(res.value, ratio);
    res.max_rel_err = std::max(res.max_rel_err, rel);
  }
  return res;
}

double calibrated_C_dp(const FracParams& params, const QuadratureSpec& spec) {
  return kCalibrationFactor *
         empirical_constant_scan(builtin_family(params.p()), params, ScanTarget::Lemma21, spec).value;
}

double calibrated_C_alpha(const FracParams& params, const WeightParams& w, const QuadratureSpec& spec) {
  return kCalibrationFactor *
         empirical_constant_scan(builtin_family(params.p()), params, ScanTarget::Lemma32, spec, w).value;
}

} // namespace flsi

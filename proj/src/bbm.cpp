#include "flsi/bbm.hpp"

#include <algorithm>
#include <cmath>

#include "flsi/constants.hpp"
#include "flsi/error.hpp"
#include "flsi/functionals.hpp"

namespace flsi {

namespace {

// Least-squares line through (x_i, y_i); returns the intercept.
double intercept(const double* x, const double* y, int n) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) return sy / n;
  return (sxx * sy - sx * sxy) / det;
}

} // namespace

std::vector<double> default_bbm_s_list() { return {0.9, 0.99, 0.999}; }

BbmStudy bbm_curve(const RadialProfile& u, int d, double p, const std::vector<double>& s_list,
                   const QuadratureSpec& spec) {
  if (s_list.empty()) throw Error(ErrorCode::InputInvalid, "s_list is empty");
  for (std::size_t i = 0; i < s_list.size(); ++i) {
    if (!(s_list[i] > 0.0 && s_list[i] < 1.0))
      throw Error(ErrorCode::InputInvalid, "s values must lie in (0, 1)");
    if (i > 0 && !(s_list[i] > s_list[i - 1]))
      throw Error(ErrorCode::InputInvalid, "s_list must be strictly increasing");
  }
  double grad;
  try {
    grad = grad_lp_power_closed(u, p, d);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unavailable) throw;
    throw Error(ErrorCode::GradientUnavailable, "no gradient closed form for " + describe(u));
  }
  if (!(grad > 0.0)) throw Error(ErrorCode::ZeroFunction, "gradient energy vanished");

  BbmStudy st;
  st.profile = describe(u);
  st.d = d;
  st.p = p;
  st.s_list = s_list;
  st.grad_value = {grad, 1e-13 * grad, "closed", 0, true};
  for (double s : s_list) {
    const auto params = FracParams::make_seminorm(d, p, s);
    QuadratureSpec sp = spec;
    if (s > 0.99) sp.rel_tol = spec.rel_tol / 10.0;
    const auto v = scaled(gagliardo_power(u, params, sp), 1.0 - s);
    st.values.push_back(v);
    st.K_estimates.push_back(v.value / grad);
    st.K_errors.push_back(v.err / grad + v.value * st.grad_value.err / (grad * grad));
  }
  const int n = std::min<int>(3, static_cast<int>(s_list.size()));
  std::vector<double> x, y;
  for (std::size_t i = s_list.size() - n; i < s_list.size(); ++i) {
    x.push_back(1.0 - s_list[i]);
    y.push_back(st.K_estimates[i]);
  }
  st.K_extrapolated = intercept(x.data(), y.data(), n);
  return st;
}

KEstimate estimate_K(int d, double p, const QuadratureSpec& spec, const std::vector<double>& s_list) {
  KEstimate est;
  for (const auto& u : builtin_family(p)) {
    try {
      (void)grad_lp_power_closed(u, p, d);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Unavailable) continue;
      throw;
    }
    est.studies.push_back(bbm_curve(u, d, p, s_list, spec));
  }
  if (est.studies.empty()) throw Error(ErrorCode::GradientUnavailable, "no differentiable profiles");
  double lo = est.studies.front().K_extrapolated, hi = lo, sum = 0.0;
  for (const auto& st : est.studies) {
    lo = std::min(lo, st.K_extrapolated);
    hi = std::max(hi, st.K_extrapolated);
    sum += st.K_extrapolated;
  }
  est.value = sum / est.studies.size();
  est.spread = (hi - lo) / est.value;
  return est;
}

LocalLimitReport local_limit_report(int d, double p, double C_dp, const KEstimate& K) {
  LocalLimitReport r;
  r.d = d;
  r.p = p;
  r.C_dp = C_dp;
  r.C_p = delpino_dolbeault_Cp(d, p);
  r.D_p = talenti_Dp(d, p);
  r.K_hat = K.value;
  r.K_spread = K.spread;
  const auto c = ckn_consistency(d, p, C_dp, K.value);
  r.limit_constant = c.bound;
  r.margin = c.margin;
  r.holds = c.holds;
  return r;
}

LocalLimitReport local_limit_report(int d, double p, double C_dp, const QuadratureSpec& spec) {
  (void)delpino_dolbeault_Cp(d, p);
  return local_limit_report(d, p, C_dp, estimate_K(d, p, spec));
}

} // namespace flsi

#include "flsi/constants.hpp"

#include <cmath>

#include "flsi/error.hpp"
#include "flsi/special.hpp"

namespace flsi {

namespace {

void require_exponent(int d, double p) {
  if (d < 1) throw Error(ErrorCode::DimensionInvalid, "d must be >= 1");
  if (!(p > 1.0 && p < d))
    throw Error(ErrorCode::ExponentInvalid, "need 1 < p < d, got p = " + std::to_string(p));
}

} // namespace

double delpino_dolbeault_Cp(int d, double p) {
  require_exponent(d, p);
  const double ratio = log_gamma(d / 2.0 + 1.0) - log_gamma(d * (p - 1.0) / p + 1.0);
  return (p / d) * std::pow((p - 1.0) / kE, p - 1.0) * std::pow(kPi, -p / 2.0) *
         std::exp(ratio * p / d);
}

double talenti_Dp(int d, double p) {
  require_exponent(d, p);
  const double ratio = log_gamma(d) + log_gamma(d / 2.0 + 1.0) - log_gamma(d / p) -
                       log_gamma(d * (p - 1.0) / p + 1.0);
  return (1.0 / d) * std::pow((p - 1.0) / (d - p), p - 1.0) * std::pow(kPi, -p / 2.0) *
         std::exp(ratio * p / d);
}

double chatzakou_ruzhansky_Cds(int d, double s) {
  if (d < 1) throw Error(ErrorCode::DimensionInvalid, "d must be >= 1");
  if (!(s > 0.0 && s < d / 2.0))
    throw Error(ErrorCode::OrderInvalid, "need 0 < s < d/2, got s = " + std::to_string(s));
  const double head = log_gamma((d - 2.0 * s) / 2.0) - log_gamma((d + 2.0 * s) / 2.0);
  const double tail = (2.0 * s / d) * (log_gamma(d) - log_gamma(d / 2.0));
  return std::exp(head + tail) / (std::pow(4.0, s) * std::pow(kPi, s));
}

double mazya_C(int d, double p, double s, double C_dp) {
  (void)FracParams::make(d, p, s);
  if (!(C_dp > 0.0) || !std::isfinite(C_dp))
    throw Error(ErrorCode::NonPositiveArgument, "C(d,p) must be a positive finite number");
  return C_dp * s * (1.0 - s) / std::pow(d - s * p, p - 1.0);
}

ConsistencyReport ckn_consistency(int d, double p, double C_dp, double K_hat) {
  ConsistencyReport r;
  r.C_p = delpino_dolbeault_Cp(d, p);
  r.bound = C_dp * K_hat / std::pow(d - p, p - 1.0);
  r.margin = r.bound - r.C_p;
  r.holds = r.margin >= 0.0;
  return r;
}

std::vector<ConstantReport> all_constants(const FracParams& params, double C_dp) {
  const int d = params.d();
  const double p = params.p();
  const double s = params.s();
  std::vector<ConstantReport> out;
  if (p < d) {
    out.push_back({"C_p", delpino_dolbeault_Cp(d, p), {{"d", double(d)}, {"p", p}},
                   "(p/d)((p-1)/e)^(p-1) pi^(-p/2) [G(d/2+1)/G(d(p-1)/p+1)]^(p/d)"});
    out.push_back({"D_p", talenti_Dp(d, p), {{"d", double(d)}, {"p", p}},
                   "(1/d)((p-1)/(d-p))^(p-1) pi^(-p/2) [G(d)G(d/2+1)/(G(d/p)G(d(p-1)/p+1))]^(p/d)"});
  }
  if (s < d / 2.0)
    out.push_back({"C_ds", chatzakou_ruzhansky_Cds(d, s), {{"d", double(d)}, {"s", s}},
                   "G((d-2s)/2)/(2^(2s) pi^s G((d+2s)/2)) (G(d)/G(d/2))^(2s/d)"});
  if (params.subcritical() && C_dp > 0.0)
    out.push_back({"mazya_C", mazya_C(d, p, s, C_dp),
                   {{"d", double(d)}, {"p", p}, {"s", s}, {"C_dp", C_dp}},
                   "C(d,p) s(1-s)/(d-sp)^(p-1)"});
  return out;
}

} // namespace flsi

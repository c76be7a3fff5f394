#include "flsi/core.hpp"

#include <cmath>
#include <sstream>

#include "flsi/error.hpp"

namespace flsi {

namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

} // namespace

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::DimensionInvalid: return "DimensionInvalid";
  case ErrorCode::ExponentInvalid: return "ExponentInvalid";
  case ErrorCode::OrderInvalid: return "OrderInvalid";
  case ErrorCode::SubcriticalityViolated: return "SubcriticalityViolated";
  case ErrorCode::QOutOfRange: return "QOutOfRange";
  case ErrorCode::WeightInvalid: return "WeightInvalid";
  case ErrorCode::NonPositiveArgument: return "NonPositiveArgument";
  case ErrorCode::Unavailable: return "Unavailable";
  case ErrorCode::ZeroFunction: return "ZeroFunction";
  case ErrorCode::NonFiniteIntegrand: return "NonFiniteIntegrand";
  case ErrorCode::ToleranceNotReached: return "ToleranceNotReached";
  case ErrorCode::BudgetExhausted: return "BudgetExhausted";
  case ErrorCode::WeightSingularityUnresolved: return "WeightSingularityUnresolved";
  case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
  case ErrorCode::UnsupportedExponent: return "UnsupportedExponent";
  case ErrorCode::UnsupportedProfile: return "UnsupportedProfile";
  case ErrorCode::NormalizationMissing: return "NormalizationMissing";
  case ErrorCode::GradientUnavailable: return "GradientUnavailable";
  case ErrorCode::LogDomain: return "LogDomain";
  case ErrorCode::InputInvalid: return "InputInvalid";
  case ErrorCode::ExponentOrderInvalid: return "ExponentOrderInvalid";
  case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::LogDomain:
    return 1;
  case ErrorCode::NonFiniteIntegrand:
  case ErrorCode::ToleranceNotReached:
  case ErrorCode::BudgetExhausted:
  case ErrorCode::WeightSingularityUnresolved:
    return 2;
  case ErrorCode::DimensionInvalid:
  case ErrorCode::ExponentInvalid:
  case ErrorCode::OrderInvalid:
  case ErrorCode::SubcriticalityViolated:
  case ErrorCode::QOutOfRange:
  case ErrorCode::WeightInvalid:
  case ErrorCode::NonPositiveArgument:
  case ErrorCode::Unavailable:
  case ErrorCode::ZeroFunction:
  case ErrorCode::UnsupportedDimension:
  case ErrorCode::UnsupportedExponent:
  case ErrorCode::UnsupportedProfile:
  case ErrorCode::NormalizationMissing:
  case ErrorCode::GradientUnavailable:
  case ErrorCode::InputInvalid:
  case ErrorCode::ExponentOrderInvalid:
  case ErrorCode::SchemaError:
    return 3;
  }
  return 3;
}

std::string Error::compose(ErrorCode code, const std::string& message,
                           const std::string& path) {
  std::string out(to_string(code));
  if (!path.empty()) out += " at " + path;
  if (!message.empty()) out += ": " + message;
  return out;
}

FracParams FracParams::make(int d, double p, double s) {
  const FracParams fp = make_seminorm(d, p, s);
  if (!(s * p < d))
    throw Error(ErrorCode::SubcriticalityViolated,
                "sp = " + fmt_num(s * p) + " must be < d = " + std::to_string(d));
  return fp;
}

FracParams FracParams::make_seminorm(int d, double p, double s) {
  if (d < 1)
    throw Error(ErrorCode::DimensionInvalid, "d must be >= 1, got " + std::to_string(d));
  if (!(p > 1.0) || !std::isfinite(p))
    throw Error(ErrorCode::ExponentInvalid, "p must be > 1, got " + fmt_num(p));
  if (!(s > 0.0 && s < 1.0))
    throw Error(ErrorCode::OrderInvalid, "s must lie in (0,1), got " + fmt_num(s));
  return FracParams(d, p, s);
}

WeightParams WeightParams::make(const FracParams& params, double alpha1, double alpha2) {
  const double d = params.d();
  const double p = params.p();
  const double sp = params.s() * p;
  const double a1p = alpha1 * p;
  const double a2p = alpha2 * p;
  const double ap = a1p + a2p;
  if (!std::isfinite(alpha1) || !std::isfinite(alpha2))
    throw Error(ErrorCode::WeightInvalid, "weights must be finite");
  if (!(a1p > -d && a1p < sp))
    throw Error(ErrorCode::WeightInvalid,
                "alpha1 p = " + fmt_num(a1p) + " must lie in (-d, sp) = (" + fmt_num(-d) + ", " +
                    fmt_num(sp) + ")");
  if (!(a2p > -d && a2p < sp))
    throw Error(ErrorCode::WeightInvalid,
                "alpha2 p = " + fmt_num(a2p) + " must lie in (-d, sp) = (" + fmt_num(-d) + ", " +
                    fmt_num(sp) + ")");
  if (!(ap >= 0.0 && ap < sp))
    throw Error(ErrorCode::WeightInvalid,
                "alpha p = " + fmt_num(ap) + " must lie in [0, sp)");
  if (!(sp - ap < d))
    throw Error(ErrorCode::WeightInvalid, "sp - alpha p must be < d");
  return WeightParams(alpha1, alpha2);
}

double critical_exponent(const FracParams& params) noexcept {
  const long double d = params.d();
  const long double p = params.p();
  const long double s = params.s();
  return static_cast<double>(d * p / (d - s * p));
}

double q_upper_bound(const FracParams& params) noexcept {
  return q_upper_bound(params, WeightParams::none());
}

double q_upper_bound(const FracParams& params, const WeightParams& w) noexcept {
  const long double d = params.d();
  const long double p = params.p();
  const long double s = params.s();
  const long double al = w.alpha();
  return static_cast<double>(p * (d - s + al) / (d - s * p + al * p));
}

double default_q(const FracParams& params) noexcept {
  return 0.5 * (params.p() + q_upper_bound(params));
}

double default_q(const FracParams& params, const WeightParams& w) noexcept {
  return 0.5 * (params.p() + q_upper_bound(params, w));
}

ExponentSet interpolation_exponents(const FracParams& params, double q) {
  const double qmax = q_upper_bound(params);
  if (!(q > params.p() && q < qmax))
    throw Error(ErrorCode::QOutOfRange, "q = " + fmt_num(q) + " must lie in (" +
                                            fmt_num(params.p()) + ", " + fmt_num(qmax) + ")");
  const long double d = params.d();
  const long double p = params.p();
  const long double s = params.s();
  const long double Q = q;
  const long double r = p * (Q - 1) / (p - 1);
  const long double pstar = d * p / (d - s * p);
  const long double delta = d * p - (d - s * p) * Q;
  const long double a = d * (Q - p) / ((Q - 1) * delta);
  const long double al = d * (p - 1) / (p * (Q - 1));
  ExponentSet e{};
  e.q = q;
  e.r = static_cast<double>(r);
  e.p_star = static_cast<double>(pstar);
  e.a = static_cast<double>(a);
  e.delta = static_cast<double>(delta);
  e.alpha_scale = static_cast<double>(al);
  e.exp_plus = static_cast<double>(al * p - (d - s * p));
  e.exp_minus = static_cast<double>(d - al * Q);
  return e;
}

WeightedExponentSet weighted_exponents(const FracParams& params, const WeightParams& w,
                                       double q) {
  // Re-validate: a default-constructed "none" is always admissible, anything else
  // must satisfy the bounds for these params.
  if (!w.trivial()) (void)WeightParams::make(params, w.alpha1(), w.alpha2());
  const double qmax = q_upper_bound(params, w);
  if (!(q > params.p() && q < qmax))
    throw Error(ErrorCode::QOutOfRange, "q = " + fmt_num(q) + " must lie in (" +
                                            fmt_num(params.p()) + ", " + fmt_num(qmax) + ")");
  const long double d = params.d();
  const long double p = params.p();
  const long double s = params.s();
  const long double al = w.alpha();
  const long double Q = q;
  const long double delta = d * p - (d - s * p + al * p) * Q;
  WeightedExponentSet e{};
  e.q = q;
  e.r = static_cast<double>(p * (Q - 1) / (p - 1));
  e.p_star_alpha = static_cast<double>(d * p / (d - s * p + al * p));
  e.delta_alpha = static_cast<double>(delta);
  e.a_alpha = static_cast<double>(d * (Q - p) / ((Q - 1) * delta));
  return e;
}

} // namespace flsi

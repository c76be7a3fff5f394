#pragma once

// The s -> 1 limit (1-s)[u]^p -> K int |grad u|^p and the resulting limiting
// log-Sobolev constant.

#include <string>
#include <vector>

#include "flsi/profile.hpp"
#include "flsi/quadrature.hpp"

namespace flsi {

struct BbmStudy {
  std::string profile;
  int d = 0;
  double p = 0.0;
  std::vector<double> s_list;
  std::vector<FunctionalValue> values; // (1-s)[u]^p
  FunctionalValue grad_value;          // int |grad u|^p
  std::vector<double> K_estimates;     // values / grad_value
  std::vector<double> K_errors;
  double K_extrapolated = 0.0;         // linear fit in (1-s) over the last three points, at 1-s = 0
};

/// Requires a gradient closed form (GradientUnavailable otherwise) and a
/// strictly increasing s_list in (0, 1) (InputInvalid otherwise).  Points with
/// s > 0.99 run at a tenfold tighter tolerance.
BbmStudy bbm_curve(const RadialProfile& u, int d, double p, const std::vector<double>& s_list,
                   const QuadratureSpec& spec = {});

/// Default s values of the study.
std::vector<double> default_bbm_s_list();

struct KEstimate {
  double value = 0.0;  // mean of the extrapolated K over the profiles used
  double spread = 0.0; // (max - min) / mean
  std::vector<BbmStudy> studies;
};

/// Averages K_extrapolated over the built-in profiles that have a gradient
/// closed form.
KEstimate estimate_K(int d, double p, const QuadratureSpec& spec = {},
                     const std::vector<double>& s_list = default_bbm_s_list());

struct LocalLimitReport {
  int d = 0;
  double p = 0.0;
  double C_dp = 0.0;
  double K_hat = 0.0;
  double K_spread = 0.0;
  double limit_constant = 0.0; // C_dp K / (d-p)^{p-1}
  double C_p = 0.0;
  double D_p = 0.0;
  double margin = 0.0;         // limit_constant - C_p
  bool holds = false;          // C_p <= limit_constant
};

/// Throws ExponentInvalid unless 1 < p < d.
LocalLimitReport local_limit_report(int d, double p, double C_dp, const QuadratureSpec& spec = {});

/// Same with a K estimate already at hand.
LocalLimitReport local_limit_report(int d, double p, double C_dp, const KEstimate& K);

} // namespace flsi

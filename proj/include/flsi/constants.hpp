#pragma once

// Named constants of the log-Sobolev family and the relations among them.

#include <map>
#include <string>
#include <vector>

#include "flsi/core.hpp"

namespace flsi {

struct ConstantReport {
  std::string name;
  double value = 0.0;
  std::map<std::string, double> inputs;
  std::string formula;
};

/// Sharp Lp log-Sobolev constant
///   (p/d)((p-1)/e)^{p-1} pi^{-p/2} [Gamma(d/2+1)/Gamma(d(p-1)/p+1)]^{p/d}.
/// Throws ExponentInvalid unless 1 < p < d.
double delpino_dolbeault_Cp(int d, double p);

/// Log-Sobolev constant obtained from the sharp Sobolev inequality
///   (1/d)((p-1)/(d-p))^{p-1} pi^{-p/2}
///   [Gamma(d) Gamma(d/2+1) / (Gamma(d/p) Gamma(d(p-1)/p+1))]^{p/d}.
double talenti_Dp(int d, double p);

/// Constant of the p = 2 fractional log-Sobolev inequality,
///   Gamma((d-2s)/2) / (2^{2s} pi^s Gamma((d+2s)/2)) (Gamma(d)/Gamma(d/2))^{2s/d}.
/// Throws OrderInvalid unless 0 < s < d/2.
double chatzakou_ruzhansky_Cds(int d, double s);

/// C(d,p) s(1-s) / (d-sp)^{p-1}.  Throws SubcriticalityViolated when sp >= d
/// and NonPositiveArgument when C_dp <= 0.
double mazya_C(int d, double p, double s, double C_dp);

/// Compares C_p with the bound C_dp K / (d-p)^{p-1} that follows from the
/// s -> 1 limit of the fractional inequality.
struct ConsistencyReport {
  double C_p = 0.0;
  double bound = 0.0;
  double margin = 0.0; // bound - C_p
  bool holds = false;
};
ConsistencyReport ckn_consistency(int d, double p, double C_dp, double K_hat);

/// Every constant defined at (d, p, s); entries whose preconditions fail are skipped.
std::vector<ConstantReport> all_constants(const FracParams& params, double C_dp);

} // namespace flsi

#pragma once

// Checkers for each inequality: both sides with error budgets, signed slack and
// the pass rule slack >= -(lhs.err + rhs.err).

#include <map>
#include <string>
#include <vector>

#include "flsi/core.hpp"
#include "flsi/profile.hpp"
#include "flsi/quadrature.hpp"

namespace flsi {

struct InequalityReport {
  std::string name;
  std::string profile;                       // descriptor of the profile as supplied
  FunctionalValue lhs;
  FunctionalValue rhs;
  double slack = 0.0;                        // rhs - lhs
  bool pass = false;
  std::map<std::string, double> constant_used;
  std::map<std::string, double> params;      // parameter echo, incl. any normalisation factor
  std::vector<std::string> notes;            // non-converged terms and similar remarks

  /// Both sides converged to their tolerance.
  bool converged() const noexcept { return lhs.converged && rhs.converged; }
};

/// Fills slack and pass from lhs and rhs.
void finalize(InequalityReport& r);

/// int |u|^p log|u| <= (d/p^2) log(constant * int |grad u|^p) for ||u||_p = 1.
/// The profile is renormalised first; the factor is echoed as "normalization".
InequalityReport check_classical_logsob(const RadialProfile& u, int d, double p, double constant,
                                        const QuadratureSpec& spec = {});

/// int |u|^p log|u| <= (d/(s p^2)) log(C [u]^p), C = mazya_C(d,p,s,C_dp).
InequalityReport check_frac_logsob_thm11(const RadialProfile& u, const FracParams& params,
                                         double C_dp, const QuadratureSpec& spec = {});

/// int |u|^p log(|u|^p/||u||_p^p) + (d/s)(1 + log c)||u||_p^p
///   <= (d e^{p-1} c^p C/(s p)) [u]^p, any c > 0, no normalisation.
InequalityReport check_frac_logsob_thm12(const RadialProfile& u, const FracParams& params,
                                         double c, double C_dp, const QuadratureSpec& spec = {});

/// The c minimising rhs - lhs above: c^p = ||u||_p^p / (e^{p-1} C [u]^p).
double thm12_optimal_c(const RadialProfile& u, const FracParams& params, double C_dp,
                       const QuadratureSpec& spec = {});

/// int |u|^p log|u| <= (d/((s-alpha) p^2)) log(C_alpha [u]_alpha^p) for ||u||_p = 1.
InequalityReport check_weighted_thm13(const RadialProfile& u, const FracParams& params,
                                      const WeightParams& w, double C_alpha,
                                      const QuadratureSpec& spec = {});

/// ||u||_{p*} <= C^{1/p} [u].
InequalityReport check_frac_sobolev_lemma21(const RadialProfile& u, const FracParams& params,
                                            double C_dp, const QuadratureSpec& spec = {});

/// ||u||_r <= C^{a/p} [u]^a ||u||_q^{1-a}.  Throws InputInvalid for u = 0.
InequalityReport check_interpolation_thm22(const RadialProfile& u, const FracParams& params,
                                           double q, double C_dp, const QuadratureSpec& spec = {});

/// The Hoelder step ||u||_r <= ||u||_{p*}^a ||u||_q^{1-a} on its own.
InequalityReport check_interpolation_holder(const RadialProfile& u, const FracParams& params,
                                            double q, const QuadratureSpec& spec = {});

/// int |u|^q log(|u|/||u||_q) <= (r/(r-q)) ||u||_q^q log(||u||_r/||u||_q), 1 <= q < r.
InequalityReport check_log_holder_lemma23(const RadialProfile& u, double q, double r, int d,
                                          const QuadratureSpec& spec = {});

/// p = 2 fractional log-Sobolev inequality with the spectral energy,
///   int u^2 log(u^2/||u||^2) + (d/s)(1 + log c)||u||^2 <= (d e c^2/(2s)) C_{d,s} ||(-Lap)^{s/2}u||^2.
/// Gaussians only (UnsupportedProfile otherwise).
InequalityReport check_liebloss_fractional_p2(const RadialProfile& u, int d, double s, double c,
                                              const QuadratureSpec& spec = {});

/// The c minimising rhs - lhs above: c^2 = ||u||_2^2 / (e C_{d,s} ||(-Lap)^{s/2}u||^2).
double liebloss_optimal_c(const RadialProfile& u, int d, double s, const QuadratureSpec& spec = {});

enum class ScanTarget { Lemma21, Thm11, Thm13, Lemma32 };
std::string to_string(ScanTarget t);
ScanTarget scan_target_from_string(const std::string& s);

struct ScanResult {
  ScanTarget target;
  double value = 0.0;           // max ratio over the family
  std::vector<double> ratios;   // per member, family order
  std::vector<std::string> profiles;
  double max_rel_err = 0.0;     // largest relative quadrature error among the ratios
};

/// Smallest constant making the target hold on every family member:
///   Lemma21 -> C(d,p) for ||u||_{p*} <= C^{1/p}[u],
///   Thm11   -> C(d,p) for the fractional log-Sobolev inequality,
///   Thm13   -> C_alpha for the weighted log-Sobolev inequality,
///   Lemma32 -> C_alpha for the weighted Sobolev inequality ||u||_{p*_alpha}^p <= C_alpha [u]_alpha^p.
/// The weights are only read for Thm13 and Lemma32.  Throws InputInvalid on an empty family.
ScanResult empirical_constant_scan(const std::vector<RadialProfile>& family,
                                   const FracParams& params, ScanTarget target,
                                   const QuadratureSpec& spec = {},
                                   const WeightParams& w = WeightParams::none());

/// Safety factor applied to scanned constants to obtain the defaults.
inline constexpr double kCalibrationFactor = 1.1;

/// kCalibrationFactor * scan(builtin_family(p), Lemma21) and the Lemma32 analogue.
double calibrated_C_dp(const FracParams& params, const QuadratureSpec& spec = {});
double calibrated_C_alpha(const FracParams& params, const WeightParams& w,
                          const QuadratureSpec& spec = {});

} // namespace flsi

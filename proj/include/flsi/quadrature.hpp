#pragma once

// Integrals over R^d of radial profiles, the Gagliardo double integral and the
// p = 2 spectral energy.

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "flsi/core.hpp"
#include "flsi/profile.hpp"

namespace flsi {

enum class QuadMethod { Deterministic, MonteCarlo, Both };

std::string to_string(QuadMethod m);
QuadMethod quad_method_from_string(const std::string& s);

struct QuadratureSpec {
  double rel_tol = 1e-6;
  double abs_tol = 0.0;
  double truncation_radius = 0.0; // 0 selects the radius from the profile tail bound
  long mc_samples = 1'000'000;
  std::uint64_t seed = 20240917;
  QuadMethod method = QuadMethod::Deterministic;
};

/// Throws InputInvalid when rel_tol <= 0, abs_tol < 0, truncation_radius < 0,
/// or mc_samples < 10^4 with a Monte Carlo method selected.
void validate(const QuadratureSpec& spec);

struct FunctionalValue {
  double value = 0.0;
  double err = 0.0;      // estimated absolute error, >= 0
  std::string method;    // "closed", "deterministic", "montecarlo", ...
  long work = 0;         // integrand evaluations or samples
  bool converged = true; // false when the tolerance was not reached
};

/// |S^{d-1}| int_0^inf g(r) r^{d-1} dr.  With spec.truncation_radius > 0 the
/// range is [0, R]; otherwise [0, inf) is mapped onto [0, 1).
/// Throws NonFiniteIntegrand; a missed tolerance is reported via converged.
FunctionalValue radial_integral(const std::function<double(double)>& g, int d,
                                const QuadratureSpec& spec);

/// Same over [breaks.front(), breaks.back()] with panels at the breakpoints;
/// tail_err is added to the error budget.
FunctionalValue radial_integral(const std::function<double(double)>& g, int d,
                                std::span<const double> breaks, double tail_err,
                                const QuadratureSpec& spec);

/// Numerical int |u|^p, int |grad u|^p and int |u|^p log|u| (0 log 0 = 0),
/// each with a tail bound derived from the profile family.
FunctionalValue lp_power(const RadialProfile& u, double p, int d, const QuadratureSpec& spec);
FunctionalValue grad_lp_power(const RadialProfile& u, double p, int d, const QuadratureSpec& spec);
FunctionalValue entropy_integral(const RadialProfile& u, double p, int d,
                                 const QuadratureSpec& spec);

/// [u]^p = int int |u(x)-u(y)|^p / |x-y|^{d+sp} dx dy.
FunctionalValue gagliardo(const RadialProfile& u, const FracParams& params,
                          const QuadratureSpec& spec);

/// The same with the extra factor |x|^{alpha1 p} |y|^{alpha2 p}.  The
/// deterministic path needs a centred profile (UnsupportedProfile otherwise).
FunctionalValue weighted_gagliardo(const RadialProfile& u, const FracParams& params,
                                   const WeightParams& w, const QuadratureSpec& spec);

/// int |u^(xi)|^2 (4 pi^2 |xi|^2)^s dxi.  Closed form for Gaussians in any d;
/// other profiles through a numerical radial Fourier transform for d in {1, 3}.
FunctionalValue spectral_seminorm_p2(const RadialProfile& u, int d, double s,
                                     const QuadratureSpec& spec);

/// Combines two independent estimates: value of the more precise one, error
/// covering both.  Used for Both mode and in reports.
FunctionalValue combine_agreeing(const FunctionalValue& a, const FunctionalValue& b);

} // namespace flsi

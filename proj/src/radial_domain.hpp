#pragma once

// Integration domains and analytic tail bounds for the profile families.

#include <vector>

#include "flsi/profile.hpp"

namespace flsi::detail {

/// Upper bound on Gamma(a, x) = int_x^inf v^{a-1} e^{-v} dv for x > 0.
double upper_gamma_bound(double a, double x);

/// int_{|x| > R} r^m e^{-kappa r^beta} dx in R^d, bounded from above.
double moment_tail(int d, double m, double kappa, double beta, double R);

struct RadialDomain {
  std::vector<double> breaks; // 0 = breaks.front() < ... < breaks.back() = truncation radius
  double radius = 0.0;
};

/// Panels for integrands behaving like u^power r^m: geometric breakpoints from
/// a quarter of the effective length scale out to the radius where
/// power * c * R^beta reaches `decay`.  Bump domains end at R.
/// A positive `manual_radius` overrides the automatic radius.
RadialDomain profile_domain(const RadialProfile& u, double power, double decay,
                            double manual_radius = 0.0);

} // namespace flsi::detail

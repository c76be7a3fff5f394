#pragma once

// Radial test functions u(x) = amplitude * phi(|x - center|).

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace flsi {

struct Gaussian {
  double sigma; // exp(-r^2 / (2 sigma^2))
};

struct ExtremalDPD {
  double sigma; // exp(-r^{p/(p-1)} / sigma)
  double p;
};

struct ExpPower {
  double c;    // exp(-c r^beta)
  double beta; // >= 1
};

struct Bump {
  double R; // (1 - r^2/R^2)_+^k
  double k; // >= 2
};

using ProfileShape = std::variant<Gaussian, ExtremalDPD, ExpPower, Bump>;

struct RadialProfile {
  ProfileShape shape;
  double amplitude = 1.0;
  std::vector<double> center; // empty means the origin

  bool centered() const noexcept;
};

/// Validating constructors; throw InputInvalid on bad shape parameters.
RadialProfile make_gaussian(double sigma, double amplitude = 1.0);
RadialProfile make_extremal(double sigma, double p, double amplitude = 1.0);
RadialProfile make_exp_power(double c, double beta, double amplitude = 1.0);
RadialProfile make_bump(double R, double k, double amplitude = 1.0);

void validate(const RadialProfile& u);

/// "Gaussian", "ExtremalDPD", "ExpPower" or "Bump".
std::string kind_name(const RadialProfile& u);
/// Short human-readable descriptor, e.g. "ExpPower(c=1,beta=1.5,amp=2)".
std::string describe(const RadialProfile& u);
/// Round-trip precise identifier; equal keys mean identical profiles.
std::string exact_key(const RadialProfile& u);

/// Exponential families written as exp(-c r^beta); empty for Bump.
struct ExpForm {
  double c;
  double beta;
};
std::optional<ExpForm> exp_form(const RadialProfile& u);

/// u at a point of R^d (x.size() is the dimension).
double evaluate(const RadialProfile& u, std::span<const double> x);
/// u at distance r from the center.
double evaluate_radial(const RadialProfile& u, double r);
/// log u at distance r; -infinity outside the support.
double log_radial(const RadialProfile& u, double r);
/// |d phi / dr| * amplitude.
double radial_slope(const RadialProfile& u, double r);

/// Characteristic length: sigma, c^{-1/beta}, sigma^{(p-1)/p} or R.
double length_scale(const RadialProfile& u);
/// Radius beyond which amplitude^-1 u < exp(-decay); exactly R for Bump.
double decay_radius(const RadialProfile& u, double decay);
bool compact_support(const RadialProfile& u) noexcept;

/// Closed forms through the radial gamma integral
///   int_{R^d} e^{-c r^beta} r^k dx = |S^{d-1}| Gamma((d+k)/beta) / (beta c^{(d+k)/beta}).
/// All throw Unavailable for Bump.
double lp_norm_closed(const RadialProfile& u, double p, int d);
double lp_power_closed(const RadialProfile& u, double p, int d);
/// int |grad u|^p; Unavailable for Bump and for ExpPower with beta = 1.
double grad_lp_power_closed(const RadialProfile& u, double p, int d);
/// int |u|^p log|u|.
double entropy_closed(const RadialProfile& u, double p, int d);
bool has_closed_forms(const RadialProfile& u) noexcept;

RadialProfile with_amplitude(RadialProfile u, double amplitude);
RadialProfile translated(RadialProfile u, std::vector<double> center);

/// u_lambda(x) = lambda^alpha u(lambda x); every family is closed under this map.
RadialProfile scale_transform(const RadialProfile& u, double lambda, double alpha);

/// Rescales the amplitude so that ||u||_p = 1 (closed form, else quadrature).
/// Throws ZeroFunction for a zero amplitude.
RadialProfile normalize_unit_lp(const RadialProfile& u, double p, int d);

/// The twelve-member family every checker and calibration scan runs over.
/// ExtremalDPD members use the exponent p.
std::vector<RadialProfile> builtin_family(double p);

} // namespace flsi

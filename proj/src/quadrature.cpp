#include "flsi/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flsi/error.hpp"
#include "flsi/gauss_kronrod.hpp"
#include "flsi/special.hpp"
#include "radial_domain.hpp"

namespace flsi {

namespace detail {

double upper_gamma_bound(double a, double x) {
  // v^{a-1} is decreasing for a <= 1; otherwise bound the ratio of successive
  // terms of the asymptotic series by (a-1)/x.
  const double lead = std::exp((a - 1.0) * std::log(x) - x);
  if (a <= 1.0) return lead;
  if (x > 2.0 * (a - 1.0)) return lead / (1.0 - (a - 1.0) / x);
  return std::exp(log_gamma(a)); // trivial bound
}

double moment_tail(int d, double m, double kappa, double beta, double R) {
  const double a = (d + m) / beta;
  const double x = kappa * std::pow(R, beta);
  return sphere_area(d) * upper_gamma_bound(a, x) / (beta * std::pow(kappa, a));
}

RadialDomain profile_domain(const RadialProfile& u, double power, double decay,
                            double manual_radius) {
  RadialDomain dom;
  double ell;
  if (const auto f = exp_form(u)) {
    ell = std::pow(power * f->c, -1.0 / f->beta);
    dom.radius = manual_radius > 0.0 ? manual_radius : std::pow(decay / (power * f->c), 1.0 / f->beta);
  } else {
    ell = std::get<Bump>(u.shape).R;
    dom.radius = manual_radius > 0.0 ? std::min(manual_radius, ell) : ell;
    dom.breaks = {0.0, 0.25 * ell, 0.5 * ell, 0.75 * ell, ell};
    std::erase_if(dom.breaks, [&](double b) { return b > dom.radius; });
    if (dom.breaks.back() < dom.radius) dom.breaks.push_back(dom.radius);
    return dom;
  }
  dom.breaks.push_back(0.0);
  for (double b = 0.25 * ell; b < dom.radius; b *= 2.0) dom.breaks.push_back(b);
  dom.breaks.push_back(dom.radius);
  return dom;
}

} // namespace detail

namespace {

constexpr double kDecay = 60.0;

QuadOptions options_from(const QuadratureSpec& spec) {
  QuadOptions opt;
  opt.rel_tol = spec.rel_tol;
  opt.abs_tol = spec.abs_tol;
  opt.max_panels = 4000;
  return opt;
}

FunctionalValue finish(const QuadResult& res, double tail, double scale, const char* method) {
  if (!std::isfinite(res.value)) throw Error(ErrorCode::NonFiniteIntegrand, "radial integrand is not finite");
  FunctionalValue out;
  out.value = scale * res.value;
  out.err = std::abs(scale) * res.err + tail;
  out.method = method;
  out.work = res.evals;
  out.converged = res.converged;
  return out;
}

BatchIntegrand radial_batch(const std::function<double(double)>& g, int d) {
  return [&g, d](std::span<const double> x, std::span<double> fx, std::span<double>) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = x[i];
      const double v = g(r);
      fx[i] = v == 0.0 ? 0.0 : v * std::pow(r, d - 1);
    }
  };
}

} // namespace

std::string to_string(QuadMethod m) {
  switch (m) {
  case QuadMethod::Deterministic: return "deterministic";
  case QuadMethod::MonteCarlo: return "montecarlo";
  case QuadMethod::Both: return "both";
  }
  return "deterministic";
}

QuadMethod quad_method_from_string(const std::string& s) {
  if (s == "deterministic") return QuadMethod::Deterministic;
  if (s == "montecarlo") return QuadMethod::MonteCarlo;
  if (s == "both") return QuadMethod::Both;
  throw Error(ErrorCode::InputInvalid, "unknown quadrature method '" + s + "'");
}

void validate(const QuadratureSpec& spec) {
  if (!(spec.rel_tol > 0.0)) throw Error(ErrorCode::InputInvalid, "rel_tol must be > 0");
  if (!(spec.abs_tol >= 0.0)) throw Error(ErrorCode::InputInvalid, "abs_tol must be >= 0");
  if (!(spec.truncation_radius >= 0.0))
    throw Error(ErrorCode::InputInvalid, "truncation_radius must be >= 0");
  if (spec.method != QuadMethod::Deterministic && spec.mc_samples < 10'000)
    throw Error(ErrorCode::InputInvalid, "mc_samples must be >= 10000 for Monte Carlo");
}

FunctionalValue radial_integral(const std::function<double(double)>& g, int d,
                                const QuadratureSpec& spec) {
  if (d < 1) throw Error(ErrorCode::DimensionInvalid, "dimension must be >= 1");
  validate(spec);
  const QuadOptions opt = options_from(spec);
  if (spec.truncation_radius > 0.0) {
    const double R = spec.truncation_radius;
    const double br[] = {0.0, 0.25 * R, 0.5 * R, R};
    return finish(integrate(radial_batch(g, d), br, opt), 0.0, sphere_area(d), "deterministic");
  }
  // r = x / (1 - x) maps [0, 1) onto [0, inf).
  BatchIntegrand f = [&g, d](std::span<const double> x, std::span<double> fx, std::span<double>) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double om = 1.0 - x[i];
      const double r = x[i] / om;
      const double v = g(r);
      fx[i] = v == 0.0 ? 0.0 : v * std::pow(r, d - 1) / (om * om);
    }
  };
  const double br[] = {0.0, 0.2, 0.5, 0.75, 0.9, 0.95, 0.98, 0.99, 0.995, 0.999, 1.0};
  return finish(integrate(f, br, opt), 0.0, sphere_area(d), "deterministic");
}

FunctionalValue radial_integral(const std::function<double(double)>& g, int d,
                                std::span<const double> breaks, double tail_err,
                                const QuadratureSpec& spec) {
  if (d < 1) throw Error(ErrorCode::DimensionInvalid, "dimension must be >= 1");
  validate(spec);
  return finish(integrate(radial_batch(g, d), breaks, options_from(spec)), tail_err,
                sphere_area(d), "deterministic");
}

FunctionalValue lp_power(const RadialProfile& u, double p, int d, const QuadratureSpec& spec) {
  validate(u);
  if (u.amplitude == 0.0) return {0.0, 0.0, "deterministic", 0, true};
  const auto dom = detail::profile_domain(u, p, kDecay, spec.truncation_radius);
  double tail = 0.0;
  if (const auto f = exp_form(u))
    tail = std::pow(u.amplitude, p) * detail::moment_tail(d, 0.0, p * f->c, f->beta, dom.radius);
  auto g = [&](double r) {
    const double l = log_radial(u, r);
    return l == -HUGE_VAL ? 0.0 : std::exp(p * l);
  };
  return radial_integral(g, d, dom.breaks, tail, spec);
}

FunctionalValue grad_lp_power(const RadialProfile& u, double p, int d, const QuadratureSpec& spec) {
  validate(u);
  if (u.amplitude == 0.0) return {0.0, 0.0, "deterministic", 0, true};
  const auto dom = detail::profile_domain(u, p, kDecay, spec.truncation_radius);
  double tail = 0.0;
  if (const auto f = exp_form(u))
    tail = std::pow(u.amplitude * f->c * f->beta, p) *
           detail::moment_tail(d, p * (f->beta - 1.0), p * f->c, f->beta, dom.radius);
  auto g = [&](double r) { return std::pow(radial_slope(u, r), p); };
  return radial_integral(g, d, dom.breaks, tail, spec);
}

FunctionalValue entropy_integral(const RadialProfile& u, double p, int d,
                                 const QuadratureSpec& spec) {
  validate(u);
  if (u.amplitude == 0.0) return {0.0, 0.0, "deterministic", 0, true};
  const auto dom = detail::profile_domain(u, p, kDecay, spec.truncation_radius);
  double tail = 0.0;
  if (const auto f = exp_form(u)) {
    // |log u| <= |log A| + c r^beta
    const double ap = std::pow(u.amplitude, p);
    tail = ap * (std::abs(std::log(u.amplitude)) *
                     detail::moment_tail(d, 0.0, p * f->c, f->beta, dom.radius) +
                 f->c * detail::moment_tail(d, f->beta, p * f->c, f->beta, dom.radius));
  }
  auto g = [&](double r) {
    const double l = log_radial(u, r);
    return l == -HUGE_VAL ? 0.0 : std::exp(p * l) * l;
  };
  return radial_integral(g, d, dom.breaks, tail, spec);
}

FunctionalValue combine_agreeing(const FunctionalValue& a, const FunctionalValue& b) {
  const FunctionalValue& best = a.err <= b.err ? a : b;
  FunctionalValue out = best;
  out.err = std::max(best.err, std::abs(a.value - b.value));
  out.method = a.method + "+" + b.method;
  out.work = a.work + b.work;
  out.converged = a.converged && b.converged && std::abs(a.value - b.value) <= a.err + b.err;
  return out;
}

} // namespace flsi

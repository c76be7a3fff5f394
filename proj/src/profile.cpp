#include "flsi/profile.hpp"

#include <cmath>
#include <sstream>

#include "flsi/error.hpp"
#include "flsi/quadrature.hpp"
#include "flsi/special.hpp"

namespace flsi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InputInvalid, what);
}

// int_{R^d} e^{-kappa r^beta} r^m dx
double gamma_moment(int d, double m, double kappa, double beta) {
  const double a = (d + m) / beta;
  return sphere_area(d) * std::exp(log_gamma(a) - a * std::log(kappa)) / beta;
}

ExpForm exp_form_or_throw(const RadialProfile& u) {
  auto f = exp_form(u);
  if (!f) throw Error(ErrorCode::Unavailable, "no closed form for " + kind_name(u));
  return *f;
}

} // namespace

bool RadialProfile::centered() const noexcept {
  for (double c : center)
    if (c != 0.0) return false;
  return true;
}

RadialProfile make_gaussian(double sigma, double amplitude) {
  RadialProfile u{Gaussian{sigma}, amplitude, {}};
  validate(u);
  return u;
}

RadialProfile make_extremal(double sigma, double p, double amplitude) {
  RadialProfile u{ExtremalDPD{sigma, p}, amplitude, {}};
  validate(u);
  return u;
}

RadialProfile make_exp_power(double c, double beta, double amplitude) {
  RadialProfile u{ExpPower{c, beta}, amplitude, {}};
  validate(u);
  return u;
}

RadialProfile make_bump(double R, double k, double amplitude) {
  RadialProfile u{Bump{R, k}, amplitude, {}};
  validate(u);
  return u;
}

void validate(const RadialProfile& u) {
  require(std::isfinite(u.amplitude) && u.amplitude >= 0.0, "amplitude must be finite and >= 0");
  for (double c : u.center) require(std::isfinite(c), "center must be finite");
  std::visit(overloaded{
                 [](const Gaussian& g) { require(g.sigma > 0.0 && std::isfinite(g.sigma), "Gaussian sigma must be > 0"); },
                 [](const ExtremalDPD& e) {
                   require(e.sigma > 0.0 && std::isfinite(e.sigma), "ExtremalDPD sigma must be > 0");
                   require(e.p > 1.0 && std::isfinite(e.p), "ExtremalDPD p must be > 1");
                 },
                 [](const ExpPower& e) {
                   require(e.c > 0.0 && std::isfinite(e.c), "ExpPower c must be > 0");
                   require(e.beta >= 1.0 && std::isfinite(e.beta), "ExpPower beta must be >= 1");
                 },
                 [](const Bump& b) {
                   require(b.R > 0.0 && std::isfinite(b.R), "Bump R must be > 0");
                   require(b.k >= 2.0 && std::isfinite(b.k), "Bump k must be >= 2");
                 },
             },
             u.shape);
}

std::string kind_name(const RadialProfile& u) {
  return std::visit(overloaded{
                        [](const Gaussian&) { return std::string("Gaussian"); },
                        [](const ExtremalDPD&) { return std::string("ExtremalDPD"); },
                        [](const ExpPower&) { return std::string("ExpPower"); },
                        [](const Bump&) { return std::string("Bump"); },
                    },
                    u.shape);
}

std::string describe(const RadialProfile& u) {
  std::ostringstream os;
  os.precision(6);
  std::visit(overloaded{
                 [&](const Gaussian& g) { os << "Gaussian(sigma=" << g.sigma; },
                 [&](const ExtremalDPD& e) { os << "ExtremalDPD(sigma=" << e.sigma << ",p=" << e.p; },
                 [&](const ExpPower& e) { os << "ExpPower(c=" << e.c << ",beta=" << e.beta; },
                 [&](const Bump& b) { os << "Bump(R=" << b.R << ",k=" << b.k; },
             },
             u.shape);
  os << ",amp=" << u.amplitude;
  if (!u.centered()) {
    os << ",center=[";
    for (std::size_t i = 0; i < u.center.size(); ++i) os << (i ? "," : "") << u.center[i];
    os << "]";
  }
  os << ")";
  return os.str();
}

std::string exact_key(const RadialProfile& u) {
  std::ostringstream os;
  os.precision(17);
  os << u.shape.index();
  std::visit(overloaded{
                 [&](const Gaussian& g) { os << '|' << g.sigma; },
                 [&](const ExtremalDPD& e) { os << '|' << e.sigma << '|' << e.p; },
                 [&](const ExpPower& e) { os << '|' << e.c << '|' << e.beta; },
                 [&](const Bump& b) { os << '|' << b.R << '|' << b.k; },
             },
             u.shape);
  os << '|' << u.amplitude;
  for (double c : u.center) os << '|' << c;
  return os.str();
}

std::optional<ExpForm> exp_form(const RadialProfile& u) {
  return std::visit(overloaded{
                        [](const Gaussian& g) -> std::optional<ExpForm> {
                          return ExpForm{0.5 / (g.sigma * g.sigma), 2.0};
                        },
                        [](const ExtremalDPD& e) -> std::optional<ExpForm> {
                          return ExpForm{1.0 / e.sigma, e.p / (e.p - 1.0)};
                        },
                        [](const ExpPower& e) -> std::optional<ExpForm> {
                          return ExpForm{e.c, e.beta};
                        },
                        [](const Bump&) -> std::optional<ExpForm> { return std::nullopt; },
                    },
                    u.shape);
}

double evaluate_radial(const RadialProfile& u, double r) {
  if (auto f = exp_form(u)) return u.amplitude * std::exp(-f->c * std::pow(r, f->beta));
  const auto& b = std::get<Bump>(u.shape);
  const double x = 1.0 - (r / b.R) * (r / b.R);
  return x > 0.0 ? u.amplitude * std::pow(x, b.k) : 0.0;
}

double evaluate(const RadialProfile& u, std::span<const double> x) {
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double c = i < u.center.size() ? u.center[i] : 0.0;
    r2 += (x[i] - c) * (x[i] - c);
  }
  return evaluate_radial(u, std::sqrt(r2));
}

double log_radial(const RadialProfile& u, double r) {
  const double la = std::log(u.amplitude);
  if (auto f = exp_form(u)) return la - f->c * std::pow(r, f->beta);
  const auto& b = std::get<Bump>(u.shape);
  const double x = 1.0 - (r / b.R) * (r / b.R);
  return x > 0.0 ? la + b.k * std::log(x) : -HUGE_VAL;
}

double radial_slope(const RadialProfile& u, double r) {
  if (auto f = exp_form(u)) {
    const double rb1 = f->beta == 1.0 ? 1.0 : std::pow(r, f->beta - 1.0);
    return u.amplitude * f->c * f->beta * rb1 * std::exp(-f->c * std::pow(r, f->beta));
  }
  const auto& b = std::get<Bump>(u.shape);
  const double x = 1.0 - (r / b.R) * (r / b.R);
  if (!(x > 0.0)) return 0.0;
  return u.amplitude * b.k * std::pow(x, b.k - 1.0) * 2.0 * r / (b.R * b.R);
}

double length_scale(const RadialProfile& u) {
  if (const auto* b = std::get_if<Bump>(&u.shape)) return b->R;
  const auto f = *exp_form(u);
  return std::pow(f.c, -1.0 / f.beta);
}

double decay_radius(const RadialProfile& u, double decay) {
  if (const auto* b = std::get_if<Bump>(&u.shape)) return b->R;
  const auto f = *exp_form(u);
  return std::pow(decay / f.c, 1.0 / f.beta);
}

bool compact_support(const RadialProfile& u) noexcept {
  return std::holds_alternative<Bump>(u.shape);
}

bool has_closed_forms(const RadialProfile& u) noexcept {
  return !std::holds_alternative<Bump>(u.shape);
}

double lp_power_closed(const RadialProfile& u, double p, int d) {
  const auto f = exp_form_or_throw(u);
  if (u.amplitude == 0.0) return 0.0;
  return std::pow(u.amplitude, p) * gamma_moment(d, 0.0, p * f.c, f.beta);
}

double lp_norm_closed(const RadialProfile& u, double p, int d) {
  return std::pow(lp_power_closed(u, p, d), 1.0 / p);
}

double grad_lp_power_closed(const RadialProfile& u, double p, int d) {
  const auto f = exp_form_or_throw(u);
  if (f.beta == 1.0)
    throw Error(ErrorCode::Unavailable, "gradient closed form needs beta > 1");
  if (u.amplitude == 0.0) return 0.0;
  return std::pow(u.amplitude * f.c * f.beta, p) *
         gamma_moment(d, p * (f.beta - 1.0), p * f.c, f.beta);
}

double entropy_closed(const RadialProfile& u, double p, int d) {
  const auto f = exp_form_or_throw(u);
  if (u.amplitude == 0.0) return 0.0;
  const double ap = std::pow(u.amplitude, p);
  return std::log(u.amplitude) * ap * gamma_moment(d, 0.0, p * f.c, f.beta) -
         f.c * ap * gamma_moment(d, f.beta, p * f.c, f.beta);
}

RadialProfile with_amplitude(RadialProfile u, double amplitude) {
  u.amplitude = amplitude;
  validate(u);
  return u;
}

RadialProfile translated(RadialProfile u, std::vector<double> center) {
  u.center = std::move(center);
  validate(u);
  return u;
}

RadialProfile scale_transform(const RadialProfile& u, double lambda, double alpha) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::NonPositiveArgument, "lambda must be > 0");
  RadialProfile v = u;
  v.amplitude = u.amplitude * std::pow(lambda, alpha);
  std::visit(overloaded{
                 [&](Gaussian& g) { g.sigma /= lambda; },
                 [&](ExtremalDPD& e) { e.sigma /= std::pow(lambda, e.p / (e.p - 1.0)); },
                 [&](ExpPower& e) { e.c *= std::pow(lambda, e.beta); },
                 [&](Bump& b) { b.R /= lambda; },
             },
             v.shape);
  for (double& c : v.center) c /= lambda;
  return v;
}

RadialProfile normalize_unit_lp(const RadialProfile& u, double p, int d) {
  if (u.amplitude == 0.0) throw Error(ErrorCode::ZeroFunction, "cannot normalize the zero function");
  double norm_p;
  if (has_closed_forms(u)) {
    norm_p = lp_power_closed(u, p, d);
  } else {
    QuadratureSpec spec;
    spec.rel_tol = 1e-13;
    norm_p = lp_power(u, p, d, spec).value;
  }
  if (!(norm_p > 0.0)) throw Error(ErrorCode::ZeroFunction, "L^p norm vanished");
  RadialProfile v = u;
  v.amplitude = u.amplitude / std::pow(norm_p, 1.0 / p);
  return v;
}

std::vector<RadialProfile> builtin_family(double p) {
  return {
      make_gaussian(1.0),
      make_gaussian(0.5, 2.0),
      make_gaussian(2.0, 0.5),
      make_extremal(1.0, p),
      make_extremal(0.5, p, 1.5),
      make_exp_power(1.0, 1.0),
      make_exp_power(1.0, 1.5, 0.7),
      make_exp_power(0.5, 3.0),
      make_exp_power(1.0, 4.0, 1.2),
      make_bump(1.0, 2.0),
      make_bump(2.0, 3.0, 0.8),
      make_bump(1.5, 6.0, 1.3),
  };
}

} // namespace flsi

// Gagliardo double integral.
//
// Both paths use the symmetrisation over the half region |y - c| >= |x - c|
// (c the profile centre), with the weight W = w(x, y) + w(y, x).
//
// Deterministic (centred profiles): x = r e_1, y = x + t theta,
//   [u]^p = |S^{d-1}| int_0^inf r^{d-1} dr int_0^inf t^{p-1-sp} A(r, t) dt,
//   A(r, t) = int_{theta . e_1 >= -t/(2r)} W ((u(x) - u(y)) / t)^p dtheta.
// The t range is split into [0, eps] (substitution tau = t^{p(1-s)}, which
// removes the diagonal singularity exactly), [eps, T] and [T, inf)
// (t = T xi^{-1/kappa}).  For r past the decay radius the integrand is below
// the tail bound.
//
// Monte Carlo: x from a proposal adapted to u^p, w = y - x from a mixture of
// a power law on [0, eps] and a Pareto tail, both matched to the kernel.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "flsi/error.hpp"
#include "flsi/gauss_kronrod.hpp"
#include "flsi/quadrature.hpp"
#include "flsi/rng.hpp"
#include "flsi/simd/kernels.hpp"
#include "flsi/special.hpp"
#include "radial_domain.hpp"

namespace flsi {

namespace {

constexpr double kDecay = 60.0;

simd::KernelShape kernel_shape(const RadialProfile& u) {
  simd::KernelShape ks;
  ks.amp = u.amplitude;
  if (const auto f = exp_form(u)) {
    ks.c = f->c;
    ks.beta = f->beta;
  } else {
    const auto& b = std::get<Bump>(u.shape);
    ks.bump = true;
    ks.R = b.R;
    ks.k = b.k;
  }
  return ks;
}

struct Weights {
  bool on = false;
  double a1p = 0.0;
  double a2p = 0.0;
};

struct Setup {
  int d;
  double p;
  double s;
  double gamma;   // p(1 - s)
  double kappa_t; // far-field decay exponent in t
  double ell;
  double radius;  // outer truncation radius
  simd::KernelShape ks;
  Weights w;
  double tol;
};

struct Acc {
  double value = 0.0;
  double err = 0.0;
  long evals = 0;
  bool converged = true;
  void add(const QuadResult& r) {
    value += r.value;
    err += r.err;
    evals += r.evals;
    converged = converged && r.converged;
  }
};

// A(r, t) for one t.
class CapIntegrator {
public:
  CapIntegrator(const Setup& su, double r)
      : su_(su), r_(r),
        ker_(simd::make_cap_kernel(su.ks, r, su.p, su.w.a1p, su.w.a2p, su.w.on)) {
    opt_.rel_tol = 0.05 * su.tol;
    opt_.max_panels = 200;
    if (su.d >= 4) lower_sphere_ = sphere_area(su.d - 1);
  }

  const simd::CapKernel& kernel() const { return ker_; }

  void operator()(double t, double& value, double& err, long& evals, bool& conv) const {
    value = err = 0.0;
    if (!(ker_.phi_r > 0.0)) return;
    const double r = r_;
    if (su_.d == 1) {
      std::array<double, 2> tt{t, t};
      std::array<double, 2> gg{t + 2.0 * r, t - 2.0 * r};
      std::array<double, 2> out{};
      const std::size_t n = t >= 2.0 * r ? 2 : 1;
      simd::cap_values(ker_, std::span(tt.data(), n), std::span(gg.data(), n), std::span(out.data(), n));
      value = out[0] + (n == 2 ? out[1] : 0.0);
      evals += static_cast<long>(n);
      return;
    }
    QuadResult res;
    // Near the cap boundary the integrand vanishes like g^p; when the boundary
    // is inside the sphere, a quadratic substitution w^2 = distance to it
    // smooths this to w^{2p+1}.
    if (su_.d == 3) {
      // g = 2 r v with v = mu - mu*, mu* = -t/(2r).
      const double half = t / (2.0 * r);
      const bool inside = half < 1.0;
      const double vlo = inside ? 0.0 : half - 1.0;
      const double vhi = half + 1.0;
      const double vR = su_.ks.bump ? (su_.ks.R * su_.ks.R - r * r) / (2.0 * r * t) : -1.0;
      std::array<double, 3> brs{};
      std::size_t nb = 0;
      brs[nb++] = inside ? 0.0 : vlo;
      if (vR > vlo && vR < vhi) brs[nb++] = inside ? std::sqrt(vR) : vR;
      brs[nb++] = inside ? std::sqrt(vhi) : vhi;
      BatchIntegrand f = [&](std::span<const double> x, std::span<double> fx, std::span<double>) {
        std::array<double, kGkNodes> tt, gg;
        for (std::size_t i = 0; i < x.size(); ++i) {
          tt[i] = t;
          gg[i] = 2.0 * r * (inside ? x[i] * x[i] : x[i]);
        }
        simd::cap_values(ker_, std::span(tt.data(), x.size()), std::span(gg.data(), x.size()), fx);
        for (std::size_t i = 0; i < x.size(); ++i) fx[i] *= inside ? 4.0 * kPi * x[i] : 2.0 * kPi;
      };
      res = integrate(f, std::span(brs.data(), nb), opt_);
    } else {
      // theta in [0, theta*], cos theta* = max(-1, -t/(2r)); inside the sphere
      // theta = theta* - w^2.
      const double mu_star = -t / (2.0 * r);
      const bool full = mu_star <= -1.0;
      const double th_star = full ? kPi : std::acos(mu_star);
      double thR = -1.0;
      if (su_.ks.bump) {
        const double mu_r = ((su_.ks.R * su_.ks.R - r * r) / t - t) / (2.0 * r);
        if (mu_r > -1.0 && mu_r < 1.0) thR = std::acos(mu_r);
      }
      std::array<double, 3> brs{};
      std::size_t nb = 0;
      brs[nb++] = 0.0;
      if (thR > 0.0 && thR < th_star) brs[nb++] = full ? thR : std::sqrt(th_star - thR);
      brs[nb++] = full ? th_star : std::sqrt(th_star);
      if (!full) std::sort(brs.begin(), brs.begin() + nb);
      const int d = su_.d;
      const double lower = lower_sphere_;
      BatchIntegrand f = [&](std::span<const double> x, std::span<double> fx, std::span<double>) {
        std::array<double, kGkNodes> tt, gg, th;
        for (std::size_t i = 0; i < x.size(); ++i) {
          tt[i] = t;
          if (full) {
            th[i] = x[i];
            gg[i] = t + 2.0 * r * std::cos(th[i]);
          } else {
            const double w2 = x[i] * x[i];
            th[i] = th_star - w2;
            gg[i] = 4.0 * r * std::sin(th_star - 0.5 * w2) * std::sin(0.5 * w2);
          }
        }
        simd::cap_values(ker_, std::span(tt.data(), x.size()), std::span(gg.data(), x.size()), fx);
        for (std::size_t i = 0; i < x.size(); ++i) {
          double m = d == 2 ? 2.0 : lower * std::pow(std::sin(th[i]), d - 2);
          if (!full) m *= 2.0 * x[i];
          fx[i] *= m;
        }
      };
      res = integrate(f, std::span(brs.data(), nb), opt_);
    }
    value = res.value;
    err = res.err;
    evals += res.evals;
    conv = conv && res.converged;
  }

private:
  const Setup& su_;
  double r_;
  simd::CapKernel ker_;
  QuadOptions opt_;
  double lower_sphere_ = 0.0;
};

void sorted_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// int_0^inf t^{p-1-sp} A(r, t) dt.
Acc t_integral(const Setup& su, double r) {
  const CapIntegrator cap(su, r);
  Acc acc;
  if (!(cap.kernel().phi_r > 0.0)) return acc;

  QuadOptions opt;
  opt.rel_tol = 0.2 * su.tol;
  opt.max_panels = 400;

  const double eps = 0.5 * su.ell;
  const double T = su.radius + r;
  std::vector<double> kinks{2.0 * r};
  if (su.ks.bump) {
    kinks.push_back(su.ks.R - r);
    kinks.push_back(su.ks.R + r);
  }

  bool conv = true;
  long evals = 0;
  auto eval_caps = [&](std::span<const double> t, std::span<double> a, std::span<double> ea) {
    for (std::size_t i = 0; i < t.size(); ++i) cap(t[i], a[i], ea[i], evals, conv);
  };

  // [0, eps] in tau = t^gamma: the weight t^{p-1-sp} dt becomes dtau / gamma.
  {
    const double g = su.gamma;
    std::vector<double> br{0.0, std::pow(eps, g)};
    for (double k : kinks)
      if (k > 0.0 && k < eps) br.push_back(std::pow(k, g));
    if (g < 0.5)
      for (int j = 1; j <= 8; ++j) br.push_back(std::pow(eps * std::ldexp(1.0, -j), g));
    sorted_unique(br);
    BatchIntegrand f = [&](std::span<const double> tau, std::span<double> fx, std::span<double> ex) {
      std::array<double, kGkNodes> t;
      for (std::size_t i = 0; i < tau.size(); ++i) t[i] = std::pow(tau[i], 1.0 / g);
      eval_caps(std::span(t.data(), tau.size()), fx, ex);
      for (std::size_t i = 0; i < tau.size(); ++i) {
        fx[i] /= g;
        ex[i] /= g;
      }
    };
    acc.add(integrate(f, br, opt));
  }

  // [eps, T].
  if (T > eps) {
    const double e = su.p - 1.0 - su.p * su.s;
    std::vector<double> br{eps, T};
    for (double k : kinks)
      if (k > eps && k < T) br.push_back(k);
    for (double b = 2.0 * eps; b < T; b *= 2.0) br.push_back(b);
    sorted_unique(br);
    BatchIntegrand f = [&](std::span<const double> t, std::span<double> fx, std::span<double> ex) {
      eval_caps(t, fx, ex);
      for (std::size_t i = 0; i < t.size(); ++i) {
        const double w = std::pow(t[i], e);
        fx[i] *= w;
        ex[i] *= w;
      }
    };
    acc.add(integrate(f, br, opt));
  }

  // [T, inf) with t = T xi^{-1/kappa}.
  {
    const double Tc = std::max(T, eps);
    const double kap = su.kappa_t;
    const double e = su.p - 1.0 - su.p * su.s;
    BatchIntegrand f = [&](std::span<const double> xi, std::span<double> fx, std::span<double> ex) {
      std::array<double, kGkNodes> t;
      for (std::size_t i = 0; i < xi.size(); ++i) t[i] = Tc * std::pow(xi[i], -1.0 / kap);
      eval_caps(std::span(t.data(), xi.size()), fx, ex);
      for (std::size_t i = 0; i < xi.size(); ++i) {
        // t^e dt/dxi = t^e * t / (kappa xi)
        const double w = std::exp((e + 1.0) * std::log(t[i])) / (kap * xi[i]);
        fx[i] *= w;
        ex[i] *= w;
      }
    };
    acc.add(integrate(f, 0.0, 1.0, opt));
  }
  acc.evals += evals;
  acc.converged = acc.converged && conv;
  return acc;
}

// Rough upper bound for the part of the integral with |x| beyond the radius:
// there |u(x) - u(y)| <= min(u(x), L t) with L the local slope.
double outer_tail(const RadialProfile& u, const Setup& su) {
  const auto f = exp_form(u);
  if (!f) return 0.0;
  const int d = su.d;
  const double R = su.radius;
  const double rel_slope = f->c * f->beta * std::pow(R, f->beta - 1.0);
  const double eps = std::min(su.ell, 1.0 / rel_slope);
  const double up = std::pow(u.amplitude, su.p) * detail::moment_tail(d, 0.0, su.p * f->c, f->beta, R);
  const double kern = sphere_area(d) * (1.0 / (su.p - su.p * su.s) + 1.0 / (su.p * su.s)) *
                      std::pow(eps, -su.p * su.s);
  double wfac = 2.0;
  if (su.w.on) wfac *= std::pow(std::max(1.0, 2.0 * R + 1.0), std::abs(su.w.a1p) + std::abs(su.w.a2p));
  return wfac * up * kern;
}

FunctionalValue gagliardo_deterministic(const RadialProfile& u, const FracParams& params,
                                        const Weights& w, const QuadratureSpec& spec) {
  Setup su;
  su.d = params.d();
  su.p = params.p();
  su.s = params.s();
  su.gamma = su.p * (1.0 - su.s);
  su.kappa_t = su.p * su.s - std::max({0.0, w.a1p, w.a2p});
  su.ell = length_scale(u);
  su.ks = kernel_shape(u);
  su.w = w;
  su.tol = spec.rel_tol;
  const auto dom = detail::profile_domain(u, su.p, kDecay, spec.truncation_radius);
  su.radius = dom.radius;

  QuadOptions opt;
  opt.rel_tol = spec.rel_tol;
  opt.abs_tol = spec.abs_tol;
  opt.max_panels = 400;

  const int d = su.d;
  // Inner panel [0, b] in v with r = b v^{1/kr}, absorbing r^{d-1+min(a)}.
  const double kr = d + std::min({0.0, w.a1p, w.a2p});
  const double b = dom.breaks.size() > 1 ? dom.breaks[1] : dom.radius;
  Acc acc;
  bool inner_conv = true;
  auto radial_value = [&](double r, double& fx, double& ex) {
    const Acc a = t_integral(su, r);
    const double rw = std::pow(r, d - 1);
    fx = rw * a.value;
    ex = rw * a.err;
    acc.evals += a.evals;
    inner_conv = inner_conv && a.converged;
  };

  BatchIntegrand origin = [&](std::span<const double> v, std::span<double> fx, std::span<double> ex) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double r = b * std::pow(v[i], 1.0 / kr);
      radial_value(r, fx[i], ex[i]);
      const double jac = r / (kr * v[i]);
      fx[i] *= jac;
      ex[i] *= jac;
    }
  };
  const QuadResult r0 = integrate(origin, 0.0, 1.0, opt);
  if (w.on && (w.a1p < 0.0 || w.a2p < 0.0) && !r0.converged)
    throw Error(ErrorCode::WeightSingularityUnresolved,
                "origin panel of the weighted seminorm did not reach tolerance");
  acc.value += r0.value;
  acc.err += r0.err;
  acc.converged = r0.converged;

  if (dom.breaks.size() > 2) {
    BatchIntegrand rest = [&](std::span<const double> r, std::span<double> fx, std::span<double> ex) {
      for (std::size_t i = 0; i < r.size(); ++i) radial_value(r[i], fx[i], ex[i]);
    };
    const QuadResult r1 = integrate(rest, std::span(dom.breaks).subspan(1), opt);
    acc.value += r1.value;
    acc.err += r1.err;
    acc.converged = acc.converged && r1.converged;
  }

  const double omega = sphere_area(d);
  if (!std::isfinite(acc.value))
    throw Error(ErrorCode::NonFiniteIntegrand, "Gagliardo integrand is not finite");
  FunctionalValue out;
  out.value = omega * acc.value;
  out.err = omega * acc.err + outer_tail(u, su);
  out.method = "deterministic";
  out.work = acc.evals;
  out.converged = acc.converged && out.err <= std::max(spec.rel_tol * std::abs(out.value), spec.abs_tol) * 2.0;
  (void)inner_conv;
  return out;
}

// ---- Monte Carlo -------------------------------------------------------------

constexpr int kStreams = 16;

struct StreamSum {
  double sum = 0.0;
  double sum2 = 0.0;
  long n = 0;
};

FunctionalValue gagliardo_montecarlo(const RadialProfile& u, const FracParams& params,
                                     const Weights& w, const QuadratureSpec& spec) {
  const int d = params.d();
  const double p = params.p();
  const double s = params.s();
  const double gamma = p * (1.0 - s);
  const double kap = p * s - std::max({0.0, w.a1p, w.a2p});
  const double eps = 0.5 * length_scale(u);
  const double omega = sphere_area(d);
  const auto ef = exp_form(u);
  const double R = ef ? 0.0 : std::get<Bump>(u.shape).R;

  // x proposal: density exp(-k r^beta) / Z with k = p c / 2, or uniform on the ball.
  double kx = 0.0, log_px_norm = 0.0;
  if (ef) {
    kx = 0.5 * p * ef->c;
    const double a = d / ef->beta;
    log_px_norm = -(std::log(omega) + log_gamma(a) - std::log(ef->beta) - a * std::log(kx));
  } else {
    log_px_norm = -std::log(omega * std::pow(R, d) / d);
  }
  const double pi_in = 0.5;
  std::vector<double> center(d, 0.0);
  for (int i = 0; i < d && i < static_cast<int>(u.center.size()); ++i) center[i] = u.center[i];

  const long total = spec.mc_samples;
  std::array<StreamSum, kStreams> sums{};
  for (int st = 0; st < kStreams; ++st) {
    Philox4x32 rng(spec.seed, static_cast<std::uint64_t>(st));
    const long n = total / kStreams + (st < total % kStreams ? 1 : 0);
    std::vector<double> dir(d), xr(d), x(d), y(d);
    auto unit = [&](std::vector<double>& v) {
      double n2 = 0.0;
      do {
        n2 = 0.0;
        for (int i = 0; i < d; ++i) {
          v[i] = rng.normal();
          n2 += v[i] * v[i];
        }
      } while (n2 == 0.0);
      const double inv = 1.0 / std::sqrt(n2);
      for (int i = 0; i < d; ++i) v[i] *= inv;
    };
    StreamSum acc;
    for (long k = 0; k < n; ++k) {
      double rx, log_px;
      if (ef) {
        rx = std::pow(rng.gamma(d / ef->beta) / kx, 1.0 / ef->beta);
        log_px = log_px_norm - kx * std::pow(rx, ef->beta);
      } else {
        rx = R * std::pow(rng.uniform(), 1.0 / d);
        log_px = log_px_norm;
      }
      unit(xr);
      unit(dir);
      double t;
      if (rng.uniform() < pi_in)
        t = eps * std::pow(rng.uniform(), 1.0 / gamma);
      else
        t = eps * std::pow(rng.uniform(), -1.0 / kap);
      const double pt = t <= eps ? pi_in * gamma * std::pow(t / eps, gamma) / t
                                 : (1.0 - pi_in) * kap * std::pow(eps / t, kap) / t;
      double ry2 = 0.0;
      for (int i = 0; i < d; ++i) {
        const double xi = rx * xr[i];
        const double yi = xi + t * dir[i];
        x[i] = xi + center[i];
        y[i] = yi + center[i];
        ry2 += yi * yi;
      }
      double val = 0.0;
      if (ry2 >= rx * rx) {
        const double du = std::abs(evaluate(u, x) - evaluate(u, y));
        if (du > 0.0) {
          double wt = 2.0;
          if (w.on) {
            double nx = 0.0, ny = 0.0;
            for (int i = 0; i < d; ++i) {
              nx += x[i] * x[i];
              ny += y[i] * y[i];
            }
            const double lx = 0.5 * std::log(nx), ly = 0.5 * std::log(ny);
            wt = std::exp(w.a1p * lx + w.a2p * ly) + std::exp(w.a2p * lx + w.a1p * ly);
          }
          // f / (p_x * p_w) with p_w = p_t / (|S^{d-1}| t^{d-1}).
          const double f = wt * std::pow(du, p) * std::pow(t, -d - p * s);
          val = f * omega * std::pow(t, d - 1) / pt * std::exp(-log_px);
        }
      }
      acc.sum += val;
      acc.sum2 += val * val;
      ++acc.n;
    }
    sums[st] = acc;
  }
  StreamSum all;
  for (const auto& st : sums) {
    all.sum += st.sum;
    all.sum2 += st.sum2;
    all.n += st.n;
  }
  const double mean = all.sum / all.n;
  const double var = std::max(0.0, all.sum2 / all.n - mean * mean);
  FunctionalValue out;
  out.value = mean;
  out.err = 3.0 * std::sqrt(var / all.n);
  out.method = "montecarlo";
  out.work = all.n;
  out.converged = std::isfinite(mean);
  if (!std::isfinite(mean)) throw Error(ErrorCode::NonFiniteIntegrand, "Monte Carlo estimate is not finite");
  return out;
}

FunctionalValue dispatch(const RadialProfile& u, const FracParams& params, const Weights& w,
                         const QuadratureSpec& spec) {
  validate(u);
  validate(spec);
  if (u.amplitude == 0.0) return {0.0, 0.0, to_string(spec.method), 0, true};
  const bool det_ok = !w.on || u.centered();
  switch (spec.method) {
  case QuadMethod::Deterministic:
    if (!det_ok)
      throw Error(ErrorCode::UnsupportedProfile,
                  "deterministic weighted seminorm needs a centred profile; use Monte Carlo");
    return gagliardo_deterministic(u, params, w, spec);
  case QuadMethod::MonteCarlo:
    return gagliardo_montecarlo(u, params, w, spec);
  case QuadMethod::Both: {
    if (!det_ok)
      throw Error(ErrorCode::UnsupportedProfile,
                  "deterministic weighted seminorm needs a centred profile; use Monte Carlo");
    const auto a = gagliardo_deterministic(u, params, w, spec);
    const auto b = gagliardo_montecarlo(u, params, w, spec);
    return combine_agreeing(a, b);
  }
  }
  return {};
}

} // namespace

FunctionalValue gagliardo(const RadialProfile& u, const FracParams& params,
                          const QuadratureSpec& spec) {
  return dispatch(u, params, Weights{}, spec);
}

FunctionalValue weighted_gagliardo(const RadialProfile& u, const FracParams& params,
                                   const WeightParams& w, const QuadratureSpec& spec) {
  if (w.trivial()) return gagliardo(u, params, spec);
  Weights wt;
  wt.on = true;
  wt.a1p = w.alpha1() * params.p();
  wt.a2p = w.alpha2() * params.p();
  return dispatch(u, params, wt, spec);
}

} // namespace flsi

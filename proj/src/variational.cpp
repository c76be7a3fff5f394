#include "flsi/variational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "flsi/error.hpp"
#include "flsi/functionals.hpp"
#include "flsi/nelder_mead.hpp"
#include "flsi/rng.hpp"

namespace flsi {

PowerSumMin minimize_power_sum(double a, double b, double M, double N) {
  for (double v : {a, b, M, N})
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::NonPositiveArgument, "power-sum arguments must be positive and finite");
  const double D = a + b;
  const double s_star = std::pow(b * N / (a * M), 1.0 / D);
  const double f_min = (D / a) * std::pow(b / a, -b / D) * std::pow(M, b / D) * std::pow(N, a / D);
  return {s_star, f_min};
}

double power_sum(double a, double b, double M, double N, double s) noexcept {
  return M * std::pow(s, a) + N * std::pow(s, -b);
}

double c_tilde(const FracParams& params, double q) {
  const auto ex = interpolation_exponents(params, q);
  const double a = ex.exp_plus, b = ex.exp_minus, D = a + b;
  if (!(a > 0.0) || !(b > 0.0))
    throw Error(ErrorCode::QOutOfRange, "dilation exponents must be positive");
  return (D / a) * std::pow(b / a, -b / D) * std::pow(params.p(), -b / D) * std::pow(q, -a / D);
}

double fixed_K(const FracParams& params, double q) {
  const auto ex = interpolation_exponents(params, q);
  const double D = ex.exp_plus + ex.exp_minus;
  return std::pow(1.0 / c_tilde(params, q), ex.r * D / ex.delta);
}

FunctionalValue constrained_energy(const RadialProfile& u, const FracParams& params, double q,
                                   const QuadratureSpec& spec, double K) {
  const auto ex = interpolation_exponents(params, q);
  if (K <= 0.0) K = fixed_K(params, q);
  const int d = params.d();
  const double p = params.p();
  const auto nr = lp_norm(u, ex.r, d, spec);
  if (!(nr.value > 0.0)) throw Error(ErrorCode::ZeroFunction, "constraint needs u != 0");
  const auto u0 = with_amplitude(u, u.amplitude * std::pow(K, 1.0 / ex.r) / nr.value);
  const auto G = gagliardo_power(u0, params, spec);
  const auto Nq = lp_power_value(u0, q, d, spec);
  const double a = ex.exp_plus, b = ex.exp_minus, D = a + b;
  const auto m = minimize_power_sum(a, b, G.value / p, Nq.value / q);
  FunctionalValue out;
  out.value = m.f_min;
  out.err = m.f_min * ((b / D) * G.err / G.value + (a / D) * Nq.err / Nq.value +
                       (ex.delta / D) * nr.err / nr.value);
  out.method = G.method;
  out.work = G.work + Nq.work + nr.work;
  out.converged = G.converged && Nq.converged && nr.converged;
  return out;
}

FunctionalValue scaled_quotient(const RadialProfile& u, const FracParams& params, double q,
                                const QuadratureSpec& spec, double K) {
  const auto ex = interpolation_exponents(params, q);
  if (K <= 0.0) K = fixed_K(params, q);
  const double D = ex.exp_plus + ex.exp_minus;
  const auto e = constrained_energy(u, params, q, spec, K);
  const double base = e.value / (c_tilde(params, q) * std::pow(K, ex.delta / (ex.r * D)));
  FunctionalValue out = e;
  out.value = std::pow(base, D / ex.delta);
  out.err = out.value * (D / ex.delta) * e.err / e.value;
  return out;
}

FunctionalValue direct_quotient(const RadialProfile& u, const FracParams& params, double q,
                                const QuadratureSpec& spec) {
  const auto ex = interpolation_exponents(params, q);
  const int d = params.d();
  const auto semi = gagliardo_seminorm(u, params, spec);
  const auto nq = lp_norm(u, q, d, spec);
  const auto nr = lp_norm(u, ex.r, d, spec);
  if (!(nr.value > 0.0)) throw Error(ErrorCode::ZeroFunction, "quotient needs u != 0");
  FunctionalValue out = semi;
  out.value = std::pow(semi.value, ex.a) * std::pow(nq.value, 1.0 - ex.a) / nr.value;
  out.err = out.value * (ex.a * semi.err / semi.value + (1.0 - ex.a) * nq.err / nq.value +
                         nr.err / nr.value);
  out.converged = semi.converged && nq.converged && nr.converged;
  return out;
}

double optimal_constant_from_eta(double eta, const FracParams& params, double q) {
  if (!(eta > 0.0)) throw Error(ErrorCode::NonPositiveArgument, "eta must be > 0");
  const auto ex = interpolation_exponents(params, q);
  const double p = params.p(), s = params.s();
  const double num = ex.alpha_scale * (p - q) + s * p;
  const double den = params.d() * (p - q) + s * p * q;
  return std::pow(1.0 / eta, num / den);
}

std::string to_string(SearchFamily f) {
  switch (f) {
  case SearchFamily::Gaussian: return "Gaussian";
  case SearchFamily::ExtremalDPD: return "ExtremalDPD";
  case SearchFamily::ExpPower: return "ExpPower";
  case SearchFamily::Bump: return "Bump";
  }
  return "?";
}

std::vector<SearchFamily> all_search_families() {
  return {SearchFamily::Gaussian, SearchFamily::ExtremalDPD, SearchFamily::ExpPower, SearchFamily::Bump};
}

namespace {

struct Box {
  std::vector<double> lo, hi; // log coordinates
};

Box box_of(SearchFamily f) {
  const double l4 = std::log(0.25), h4 = std::log(4.0);
  switch (f) {
  case SearchFamily::Gaussian:
  case SearchFamily::ExtremalDPD: return {{l4}, {h4}};
  case SearchFamily::ExpPower: return {{l4, 0.0}, {h4, std::log(4.0)}};
  case SearchFamily::Bump: return {{std::log(0.5), std::log(2.0)}, {std::log(2.0), std::log(8.0)}};
  }
  return {};
}

RadialProfile profile_at(SearchFamily f, std::span<const double> z, double p) {
  switch (f) {
  case SearchFamily::Gaussian: return make_gaussian(std::exp(z[0]));
  case SearchFamily::ExtremalDPD: return make_extremal(std::exp(z[0]), p);
  case SearchFamily::ExpPower: return make_exp_power(std::exp(z[0]), std::max(1.0, std::exp(z[1])));
  case SearchFamily::Bump: return make_bump(std::exp(z[0]), std::max(2.0, std::exp(z[1])));
  }
  throw Error(ErrorCode::InputInvalid, "unknown family");
}

/// The quotient is invariant under amplitude and dilation, so every member is
/// evaluated on the representative with unit length parameter.
RadialProfile representative(const RadialProfile& u) {
  RadialProfile v = with_amplitude(u, 1.0);
  if (auto* g = std::get_if<Gaussian>(&v.shape)) g->sigma = 1.0;
  else if (auto* e = std::get_if<ExtremalDPD>(&v.shape)) e->sigma = 1.0;
  else if (auto* x = std::get_if<ExpPower>(&v.shape)) x->c = 1.0;
  else std::get<Bump>(v.shape).R = 1.0;
  return v;
}

struct BudgetOut {};

class Evaluator {
public:
  Evaluator(const FracParams& params, double q, const QuadratureSpec& spec, long budget)
      : params_(params), q_(q), spec_(spec), budget_(budget) {}

  /// Constrained energy of u's orbit.
  double eta(const RadialProfile& u) {
    if (evaluations_ >= budget_) throw BudgetOut{};
    ++evaluations_;
    const auto rep = representative(u);
    const std::string key = exact_key(rep);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const double v = constrained_energy(rep, params_, q_, spec_).value;
    memo_.emplace(key, v);
    return v;
  }
  long evaluations() const noexcept { return evaluations_; }

private:
  FracParams params_;
  double q_;
  QuadratureSpec spec_;
  long budget_;
  long evaluations_ = 0;
  std::map<std::string, double> memo_;
};

std::vector<double> clamp_to(const Box& box, std::span<const double> z) {
  std::vector<double> out(z.begin(), z.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(out[i], box.lo[i], box.hi[i]);
  return out;
}

struct Best {
  double eta = std::numeric_limits<double>::infinity();
  std::vector<double> z;
};

VariationalRecord make_record(const FracParams& params, double q, std::uint64_t seed) {
  VariationalRecord rec;
  rec.params = params;
  rec.q = q;
  rec.K = fixed_K(params, q);
  rec.c_tilde = c_tilde(params, q);
  rec.seed = seed;
  return rec;
}

void finish_record(VariationalRecord& rec, const std::vector<std::pair<SearchFamily, Best>>& best,
                   const QuadratureSpec& spec) {
  const auto ex = interpolation_exponents(rec.params, rec.q);
  const double D = ex.exp_plus + ex.exp_minus;
  rec.eta_hat = std::numeric_limits<double>::infinity();
  for (const auto& [fam, b] : best) {
    if (b.z.empty()) continue;
    const auto u = profile_at(fam, b.z, rec.params.p());
    rec.candidates.push_back({describe(u), std::pow(b.eta, D / ex.delta), b.eta});
    if (b.eta < rec.eta_hat) {
      rec.eta_hat = b.eta;
      rec.best_profile = describe(u);
    }
    // Second route to the constant: the quotient straight from the norms.
    const double dq = direct_quotient(representative(u), rec.params, rec.q, spec).value;
    rec.L_direct = std::max(rec.L_direct, 1.0 / dq);
  }
  if (std::isfinite(rec.eta_hat)) rec.L_hat = optimal_constant_from_eta(rec.eta_hat, rec.params, rec.q);
}

} // namespace

VariationalRecord estimate_eta(const FracParams& params, double q, const SearchOptions& opt,
                               const QuadratureSpec& spec) {
  auto rec = make_record(params, q, spec.seed);
  Evaluator ev(params, q, spec, opt.budget);
  std::vector<std::pair<SearchFamily, Best>> best;
  double overall = std::numeric_limits<double>::infinity();

  for (std::size_t fi = 0; fi < opt.families.size(); ++fi) {
    const auto fam = opt.families[fi];
    const Box box = box_of(fam);
    Best b;
    Philox4x32 rng(spec.seed, 0x5EA2C400u + fi);
    try {
      for (int restart = 0; restart < opt.restarts; ++restart) {
        std::vector<double> z0(box.lo.size()), step(box.lo.size());
        for (std::size_t i = 0; i < z0.size(); ++i) {
          z0[i] = box.lo[i] + rng.uniform() * (box.hi[i] - box.lo[i]);
          step[i] = 0.25 * (box.hi[i] - box.lo[i]);
        }
        auto objective = [&](std::span<const double> z) {
          const auto zc = clamp_to(box, z);
          const double v = ev.eta(profile_at(fam, zc, params.p()));
          if (v < b.eta) {
            b.eta = v;
            b.z = zc;
          }
          return v;
        };
        (void)minimize_simplex(objective, z0, step, {200, 1e-7});
        overall = std::min(overall, b.eta);
        rec.trace.push_back({to_string(fam), restart, ev.evaluations(), overall});
      }
    } catch (const BudgetOut&) {
      rec.budget_exhausted = true;
    }
    best.emplace_back(fam, b);
    if (rec.budget_exhausted) break;
  }
  rec.evaluations = ev.evaluations();
  finish_record(rec, best, spec);
  return rec;
}

VariationalRecord grid_scan_eta(const FracParams& params, double q, int n,
                                const std::vector<SearchFamily>& families,
                                const QuadratureSpec& spec) {
  if (n < 2) throw Error(ErrorCode::InputInvalid, "grid needs at least two points per axis");
  auto rec = make_record(params, q, spec.seed);
  Evaluator ev(params, q, spec, std::numeric_limits<long>::max());
  std::vector<std::pair<SearchFamily, Best>> best;
  for (const auto fam : families) {
    const Box box = box_of(fam);
    const std::size_t dim = box.lo.size();
    Best b;
    std::vector<int> idx(dim, 0);
    while (true) {
      std::vector<double> z(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        // Endpoints exactly, so box corners are hit bit-for-bit.
        z[i] = idx[i] == n - 1 ? box.hi[i] : box.lo[i] + (box.hi[i] - box.lo[i]) * idx[i] / (n - 1);
      }
      const double v = ev.eta(profile_at(fam, z, params.p()));
      if (v < b.eta) {
        b.eta = v;
        b.z = z;
      }
      std::size_t k = 0;
      while (k < dim && ++idx[k] == n) idx[k++] = 0;
      if (k == dim) break;
    }
    rec.trace.push_back({to_string(fam), 0, ev.evaluations(), b.eta});
    best.emplace_back(fam, b);
  }
  rec.evaluations = ev.evaluations();
  finish_record(rec, best, spec);
  return rec;
}

} // namespace flsi

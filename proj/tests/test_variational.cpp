#include <doctest.h>

#include <cmath>
#include <random>

#include "flsi/error.hpp"
#include "flsi/functionals.hpp"
#include "flsi/inequalities.hpp"
#include "flsi/nelder_mead.hpp"
#include "flsi/variational.hpp"

using namespace flsi;

namespace {

const FracParams kP = FracParams::make(3, 2.0, 0.5);
constexpr double kQ = 2.25;

// Brute-force oracle: minimum of M s^a + N s^-b on a uniform grid.
double grid_min(double a, double b, double M, double N, double lo, double hi, int n) {
  double best = INFINITY;
  for (int i = 0; i <= n; ++i) best = std::min(best, power_sum(a, b, M, N, lo + (hi - lo) * i / n));
  return best;
}

} // namespace

TEST_SUITE("variational") {

TEST_CASE("power-sum minimum") {
  auto m = minimize_power_sum(1, 1, 1, 1);
  CHECK(m.s_star == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.f_min == doctest::Approx(2.0).epsilon(1e-15));
  m = minimize_power_sum(1, 1, 1, 4);
  CHECK(m.s_star == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(m.f_min == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(grid_min(1, 1, 1, 4, 1e-5, 10.0, 999'999) == doctest::Approx(4.0).epsilon(1e-9));
  m = minimize_power_sum(0.4, 0.3, 1, 1);
  CHECK(m.s_star == doctest::Approx(0.6629).epsilon(1e-4));
  CHECK(m.f_min == doctest::Approx(1.9796).epsilon(1e-4));
  CHECK(m.f_min == doctest::Approx(grid_min(0.4, 0.3, 1, 1, 1e-5, 10.0, 999'999)).epsilon(1e-9));
  CHECK(power_sum(0.4, 0.3, 1, 1, m.s_star) == doctest::Approx(m.f_min).epsilon(1e-12));
  CHECK_THROWS_AS(minimize_power_sum(0, 1, 1, 1), Error);
  CHECK_THROWS_AS(minimize_power_sum(1, 1, -1, 1), Error);
}

TEST_CASE("closed-form minimum beats every grid point") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double a = 0.05 + 3 * U(rng), b = 0.05 + 3 * U(rng);
    const double M = std::exp(4 * U(rng) - 2), N = std::exp(4 * U(rng) - 2);
    const auto m = minimize_power_sum(a, b, M, N);
    CHECK(std::abs(power_sum(a, b, M, N, m.s_star) - m.f_min) <= 1e-12 * m.f_min);
    const double lo = std::log(m.s_star) - 5, hi = std::log(m.s_star) + 5;
    double worst = INFINITY;
    for (int i = 0; i < 100'000; ++i) {
      const double s = std::exp(lo + (hi - lo) * i / 99'999.0);
      worst = std::min(worst, power_sum(a, b, M, N, s) - m.f_min);
    }
    CHECK(worst >= -1e-12 * m.f_min);
  }
}

TEST_CASE("constants of the constrained problem") {
  const auto e = interpolation_exponents(kP, kQ);
  const double D = e.exp_plus + e.exp_minus;
  const double a = e.exp_plus, b = e.exp_minus;
  const double ct = (D / a) * std::pow(b / a, -b / D) * std::pow(2.0, -b / D) * std::pow(kQ, -a / D);
  CHECK(c_tilde(kP, kQ) == doctest::Approx(ct).epsilon(1e-14));
  const double K = fixed_K(kP, kQ);
  CHECK(K > 0.0);
  CHECK(std::isfinite(K));
  CHECK(K == doctest::Approx(std::pow(1.0 / ct, e.r * D / e.delta)).epsilon(1e-13));
  CHECK_THROWS_AS(fixed_K(kP, q_upper_bound(kP)), Error);
  CHECK_THROWS_AS(fixed_K(kP, 2.0), Error);

  CHECK(optimal_constant_from_eta(1.0, kP, kQ) == 1.0);
  CHECK(optimal_constant_from_eta(2.0, kP, kQ) == doctest::Approx(std::pow(0.5, 0.7 / 1.5)).epsilon(1e-14));
  CHECK(optimal_constant_from_eta(3.0, kP, kQ) < optimal_constant_from_eta(2.0, kP, kQ));
  CHECK_THROWS_AS(optimal_constant_from_eta(0.0, kP, kQ), Error);
}

TEST_CASE("quotient: both routes, invariances, constrained energy") {
  QuadratureSpec spec;
  const auto e = interpolation_exponents(kP, kQ);
  for (const auto& u : {make_gaussian(1.0), make_bump(1.0, 3.0), make_exp_power(2.0, 1.5, 0.3)}) {
    const auto direct = direct_quotient(u, kP, kQ, spec);
    const auto scaled_q = scaled_quotient(u, kP, kQ, spec);
    CHECK(std::isfinite(direct.value));
    CHECK(direct.value > 0.0);
    CHECK(scaled_q.value == doctest::Approx(direct.value).epsilon(1e-12));
    // independent of the constraint level
    CHECK(scaled_quotient(u, kP, kQ, spec, 3.7).value == doctest::Approx(direct.value).epsilon(1e-12));
    CHECK(direct_quotient(with_amplitude(u, 2.0 * u.amplitude), kP, kQ, spec).value ==
          doctest::Approx(direct.value).epsilon(1e-12));
    const auto dil = direct_quotient(scale_transform(u, 2.0, e.alpha_scale), kP, kQ, spec);
    CHECK(std::abs(dil.value - direct.value) <= dil.err + direct.err);
    CHECK(dil.value == doctest::Approx(direct.value).epsilon(1e-6));

    // the constrained energy at the fixed level is the quotient to the power delta/D
    const double D = e.exp_plus + e.exp_minus;
    const auto eta = constrained_energy(u, kP, kQ, spec);
    CHECK(eta.value == doctest::Approx(std::pow(direct.value, e.delta / D)).epsilon(1e-10));
    // and it is a minimum of I over dilations on the constraint set
    const double K = fixed_K(kP, kQ);
    const double nr = lp_norm(u, e.r, 3, spec).value;
    const auto v = with_amplitude(u, u.amplitude * std::pow(K, 1 / e.r) / nr);
    for (double lam : {0.7, 1.0, 1.4}) {
      const auto vl = scale_transform(v, lam, e.alpha_scale);
      CHECK(lp_power_value(vl, e.r, 3, spec).value == doctest::Approx(K).epsilon(1e-8));
      CHECK(functional_I(vl, kP, kQ, spec).value >= eta.value * (1 - 1e-8));
    }
  }
}

TEST_CASE("simplex wrapper") {
  auto rosen = [](std::span<const double> x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  SimplexOptions opt;
  opt.max_iterations = 5000;
  opt.size_tol = 1e-10;
  const auto r = minimize_simplex(rosen, {-1.2, 1.0}, {0.5, 0.5}, opt);
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK_THROWS_AS(minimize_simplex([](std::span<const double>) -> double { throw Error(ErrorCode::InputInvalid, "x"); },
                                   {0.0}, {1.0}),
                  Error);
}

TEST_CASE("search is deterministic and monotone in the family set") {
  QuadratureSpec spec;
  SearchOptions opt;
  opt.families = {SearchFamily::Gaussian};
  opt.restarts = 3;
  const auto a = estimate_eta(kP, kQ, opt, spec);
  const auto b = estimate_eta(kP, kQ, opt, spec);
  CHECK(a.eta_hat == b.eta_hat);
  CHECK(a.L_hat == b.L_hat);
  CHECK(a.best_profile == b.best_profile);
  CHECK(a.L_hat == doctest::Approx(optimal_constant_from_eta(a.eta_hat, kP, kQ)).epsilon(1e-15));
  REQUIRE(a.candidates.size() == 1);
  CHECK(a.candidates[0].eta == a.eta_hat);
  CHECK_FALSE(a.trace.empty());

  opt.families = {SearchFamily::Gaussian, SearchFamily::ExpPower};
  const auto c = estimate_eta(kP, kQ, opt, spec);
  CHECK(c.eta_hat <= a.eta_hat);
  CHECK(c.candidates.size() == 2);
  // every candidate obeys the interpolation inequality with L_hat
  for (const auto& cand : c.candidates) CHECK(1.0 / cand.quotient <= c.L_direct * (1 + 1e-12));
  CHECK(c.L_direct == doctest::Approx(c.L_hat).epsilon(1e-8));

  spec.seed = 99;
  const auto d = estimate_eta(kP, kQ, opt, spec);
  CHECK(d.seed == 99);
}

TEST_CASE("budget exhaustion keeps the best point") {
  QuadratureSpec spec;
  SearchOptions opt;
  opt.restarts = 20;
  opt.budget = 30;
  const auto r = estimate_eta(kP, kQ, opt, spec);
  CHECK(r.budget_exhausted);
  CHECK(r.evaluations <= 30);
  CHECK(r.eta_hat > 0.0);
  CHECK(std::isfinite(r.L_hat));
}

TEST_CASE("grid scan") {
  QuadratureSpec spec;
  const auto g1 = grid_scan_eta(kP, kQ, 5, {SearchFamily::Gaussian}, spec);
  const auto g2 = grid_scan_eta(kP, kQ, 5, {SearchFamily::Gaussian, SearchFamily::ExpPower}, spec);
  CHECK(g2.eta_hat <= g1.eta_hat);
  // Gaussian quotients are dilation invariant, so every sigma gives the same value
  CHECK(g1.eta_hat == doctest::Approx(constrained_energy(make_gaussian(1.0), kP, kQ, spec).value).epsilon(1e-10));
  CHECK(to_string(SearchFamily::Bump) == "Bump");
  CHECK(all_search_families().size() == 4);
}

}

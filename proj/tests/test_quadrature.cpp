#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/special_functions/gamma.hpp>

#include "flsi/error.hpp"
#include "flsi/profile.hpp"
#include "flsi/quadrature.hpp"
#include "flsi/special.hpp"
#include "oracles.hpp"

using namespace flsi;

TEST_SUITE("quadrature") {

TEST_CASE("radial integrals") {
  QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  const auto a = radial_integral([](double r) { return std::exp(-r * r); }, 3, spec);
  CHECK(a.value == doctest::Approx(std::pow(kPi, 1.5)).epsilon(1e-10));
  CHECK(a.value == doctest::Approx(5.5683).epsilon(1e-4));
  const auto b = radial_integral([](double r) { return std::exp(-r); }, 2, spec);
  CHECK(b.value == doctest::Approx(2 * kPi).epsilon(1e-10));
  const auto z = radial_integral([](double) { return 0.0; }, 3, spec);
  CHECK(z.value == 0.0);
  CHECK_THROWS_AS(radial_integral([](double) { return NAN; }, 2, spec), Error);
}

TEST_CASE("radial integrals reproduce gamma integrals") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  QuadratureSpec spec;
  spec.rel_tol = 1e-11;
  for (int i = 0; i < 50; ++i) {
    const double c = 0.3 + 3 * U(rng), beta = 0.8 + 3 * U(rng), k = 3 * U(rng);
    const int d = 1 + i % 4;
    const auto v = radial_integral([&](double r) { return std::exp(-c * std::pow(r, beta)) * std::pow(r, k); }, d, spec);
    const double exact = oracle::sphere(d) * boost::math::tgamma((d + k) / beta) / (beta * std::pow(c, (d + k) / beta));
    CHECK(v.value == doctest::Approx(exact).epsilon(1e-9));
    CHECK(v.converged);
  }
}

TEST_CASE("numerical Lp, gradient and entropy integrals") {
  QuadratureSpec spec;
  spec.rel_tol = 1e-9;
  const auto g = make_gaussian(1.0, std::pow(kPi, -0.25));
  CHECK(lp_power(g, 2.0, 1, spec).value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(grad_lp_power(g, 2.0, 1, spec).value == doctest::Approx(0.5).epsilon(1e-8));
  const auto e = entropy_integral(g, 2.0, 1, spec);
  CHECK(e.value == doctest::Approx(-0.25 * (1 + std::log(kPi))).epsilon(1e-6));
  

  // entropy(lambda u) = lambda^p entropy(u) + lambda^p log(lambda) ||u||_p^p
  for (double lam : {0.5, 3.0}) {
    const auto v = entropy_integral(with_amplitude(g, lam * g.amplitude), 2.0, 1, spec);
    CHECK(v.value == doctest::Approx(lam * lam * e.value + lam * lam * std::log(lam)).epsilon(1e-7));
  }
  // Bump with amplitude 1: the integrand vanishes at the centre and outside the support
  const auto b = make_bump(1.0, 2.0);
  const double ent = oracle::radial_finite([](double r) {
    const double v = std::pow(1 - r * r, 2.0);
    return v > 0 ? v * v * std::log(v) : 0.0;
  }, 3, 1.0);
  CHECK(entropy_integral(b, 2.0, 3, spec).value == doctest::Approx(ent).epsilon(1e-7));
  CHECK(lp_power(b, 2.0, 2, spec).value ==
        doctest::Approx(oracle::radial_finite([](double r) { return std::pow(1 - r * r, 4.0); }, 2, 1.0)).epsilon(1e-8));
}

TEST_CASE("spectral energy of Gaussians") {
  QuadratureSpec spec;
  const auto g = make_gaussian(1.0, std::pow(kPi, -0.25));
  CHECK(spectral_seminorm_p2(g, 1, 0.5, spec).value == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-6));
  CHECK(spectral_seminorm_p2(g, 1, 1e-9, spec).value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(spectral_seminorm_p2(g, 1, 1.0 - 1e-9, spec).value == doctest::Approx(0.5).epsilon(1e-6));
  for (int d : {1, 2, 3, 5}) {
    for (double s : {0.2, 0.7}) {
      const double sig = 1.3, A = 0.8;
      const double want = A * A * std::pow(sig, d - 2 * s) * (oracle::sphere(d) / 2) * boost::math::tgamma(s + d / 2.0);
      CHECK(spectral_seminorm_p2(make_gaussian(sig, A), d, s, spec).value == doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("numerical spectral energy for non-Gaussian profiles") {
  QuadratureSpec spec;
  // ExpPower with beta = 2 is a Gaussian; the numerical transform path must agree with the closed form
  const auto e = make_exp_power(0.5, 2.0 + 1e-12);
  const auto g = make_gaussian(1.0);
  for (int d : {1, 3}) {
    const auto a = spectral_seminorm_p2(e, d, 0.4, spec);
    const auto b = spectral_seminorm_p2(g, d, 0.4, spec);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-5));
  }
  CHECK_THROWS_AS(spectral_seminorm_p2(make_bump(1.0, 2.0), 2, 0.4, spec), Error);
}

TEST_CASE("specification validation") {
  QuadratureSpec bad;
  bad.rel_tol = 0;
  CHECK_THROWS_AS(validate(bad), Error);
  QuadratureSpec mc;
  mc.method = QuadMethod::MonteCarlo;
  mc.mc_samples = 100;
  CHECK_THROWS_AS(validate(mc), Error);
  CHECK(quad_method_from_string(to_string(QuadMethod::Both)) == QuadMethod::Both);
}

}

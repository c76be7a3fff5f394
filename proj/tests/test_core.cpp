#include <doctest.h>

#include <cmath>
#include <random>

#include "flsi/core.hpp"
#include "flsi/error.hpp"

using namespace flsi;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InputInvalid;
}

} // namespace

TEST_SUITE("core") {

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(FracParams::make(3, 2.0, 0.5));
  CHECK(code_of([] { FracParams::make(1, 2.0, 0.7); }) == ErrorCode::SubcriticalityViolated);
  CHECK(code_of([] { FracParams::make(3, 2.0, 1.0); }) == ErrorCode::OrderInvalid);
  CHECK(code_of([] { FracParams::make(3, 2.0, 0.0); }) == ErrorCode::OrderInvalid);
  CHECK(code_of([] { FracParams::make(0, 2.0, 0.5); }) == ErrorCode::DimensionInvalid);
  CHECK(code_of([] { FracParams::make(3, 1.0, 0.5); }) == ErrorCode::ExponentInvalid);
  // the seminorm-only constructor drops sp < d
  CHECK(FracParams::make_seminorm(1, 2.0, 0.9).s() == 0.9);
}

TEST_CASE("critical exponent") {
  CHECK(critical_exponent(FracParams::make(3, 2.0, 0.5)) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(critical_exponent(FracParams::make(2, 1.5, 0.5)) == doctest::Approx(2.4).epsilon(1e-15));
}

TEST_CASE("interpolation exponents at the worked examples") {
  const auto e = interpolation_exponents(FracParams::make(3, 2.0, 0.5), 2.25);
  CHECK(e.r == 2.5);
  CHECK(e.a == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(e.delta == 1.5);
  CHECK(e.alpha_scale == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(e.exp_plus == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(e.exp_minus == doctest::Approx(0.3).epsilon(1e-14));

  const auto f = interpolation_exponents(FracParams::make(2, 2.0, 0.5), 2.5);
  CHECK(f.r == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(f.a == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
  CHECK(f.delta == doctest::Approx(1.5).epsilon(1e-15));

  const auto near = interpolation_exponents(FracParams::make(3, 2.0, 0.5), 2.0 + 1e-9);
  CHECK(near.a < 1e-8);
}

TEST_CASE("q outside the open interval is rejected") {
  const auto prm = FracParams::make(3, 2.0, 0.5);
  CHECK(code_of([&] { interpolation_exponents(prm, 2.0); }) == ErrorCode::QOutOfRange);
  CHECK(code_of([&] { interpolation_exponents(prm, q_upper_bound(prm)); }) == ErrorCode::QOutOfRange);
}

TEST_CASE("random admissible exponents satisfy the Hoelder identity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int tested = 0;
  for (int i = 0; i < 1000; ++i) {
    const int d = 1 + static_cast<int>(U(rng) * 5);
    const double p = 1.05 + 3.0 * U(rng);
    const double smax = std::min(0.99, 0.99 * d / p);
    const double s = 0.01 + (smax - 0.01) * U(rng);
    const auto prm = FracParams::make(d, p, s);
    const double lo = p, hi = q_upper_bound(prm);
    const double q = lo + (hi - lo) * (0.001 + 0.998 * U(rng));
    const auto e = interpolation_exponents(prm, q);
    const double ps = critical_exponent(prm);
    CHECK(std::abs(1.0 / e.r - e.a / ps - (1.0 - e.a) / q) <= 1e-12);
    CHECK(std::abs(e.exp_plus + e.exp_minus - (s * p + e.alpha_scale * (p - q))) <= 1e-12);
    CHECK(e.p_star > p);
    ++tested;
  }
  CHECK(tested == 1000);
}

TEST_CASE("weighted exponents") {
  const auto prm = FracParams::make(3, 2.0, 0.5);
  const auto w = WeightParams::make(prm, 0.05, 0.05);
  const auto e = weighted_exponents(prm, w, 2.2);
  CHECK(e.p_star_alpha == doctest::Approx(6.0 / 2.2).epsilon(1e-14));
  CHECK(e.r == doctest::Approx(2.4).epsilon(1e-14));
  CHECK(e.a_alpha == doctest::Approx(0.43103448275862).epsilon(1e-10));
  CHECK(e.delta_alpha == doctest::Approx(1.16).epsilon(1e-14));

  const auto z = weighted_exponents(prm, WeightParams::none(), 2.25);
  const auto u = interpolation_exponents(prm, 2.25);
  CHECK(std::abs(z.a_alpha - u.a) <= 1e-15);
  CHECK(std::abs(z.delta_alpha - u.delta) <= 1e-15);
  CHECK(std::abs(z.r - u.r) <= 1e-15);
  CHECK(std::abs(z.p_star_alpha - u.p_star) <= 1e-15);

  CHECK(code_of([&] { WeightParams::make(prm, 0.6, 0.0); }) == ErrorCode::WeightInvalid);
}

TEST_CASE("every error code maps to one exit code") {
  for (int c = 0; c <= static_cast<int>(ErrorCode::SchemaError); ++c) {
    const int x = exit_code_for(static_cast<ErrorCode>(c));
    CHECK((x == 1 || x == 2 || x == 3));
    CHECK(!to_string(static_cast<ErrorCode>(c)).empty());
  }
  CHECK(exit_code_for(ErrorCode::ToleranceNotReached) == 2);
  CHECK(exit_code_for(ErrorCode::BudgetExhausted) == 2);
  CHECK(exit_code_for(ErrorCode::SchemaError) == 3);
}

}

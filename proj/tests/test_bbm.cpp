#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "flsi/bbm.hpp"
#include "flsi/constants.hpp"
#include "flsi/error.hpp"
#include "flsi/special.hpp"

using namespace flsi;

namespace {

// (1/p) int_{S^{d-1}} |w . e|^p dw, the known limit constant.
double K_oracle(int d, double p) {
  using boost::math::tgamma;
  return (1.0 / p) * 2.0 * std::pow(kPi, (d - 1) / 2.0) * tgamma((p + 1) / 2) / tgamma((d + p) / 2);
}

} // namespace

TEST_SUITE("bbm") {

TEST_CASE("one-dimensional quadratic limit") {
  CHECK(K_oracle(1, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  const auto st = bbm_curve(make_gaussian(1.0), 1, 2.0, default_bbm_s_list());
  REQUIRE(st.K_estimates.size() == 3);
  CHECK(st.values.size() == 3);
  // monotone approach from above
  CHECK(st.K_estimates[0] > st.K_estimates[1]);
  CHECK(st.K_estimates[1] > st.K_estimates[2]);
  CHECK(st.K_estimates[2] == doctest::Approx(1.0).epsilon(0.01));
  CHECK(st.K_extrapolated == doctest::Approx(1.0).epsilon(0.01));
  for (const auto& v : st.values) {
    CHECK(std::isfinite(v.value));
    CHECK(v.value > 0.0);
  }
  // amplitude cancels in the ratio
  const auto twice = bbm_curve(make_gaussian(1.0, 2.0), 1, 2.0, default_bbm_s_list());
  for (std::size_t i = 0; i < 3; ++i) CHECK(twice.K_estimates[i] == doctest::Approx(st.K_estimates[i]).epsilon(1e-12));

  const auto other = bbm_curve(make_extremal(1.5, 2.0), 1, 2.0, default_bbm_s_list());
  CHECK(other.K_extrapolated == doctest::Approx(st.K_extrapolated).epsilon(0.02));
}

TEST_CASE("limit constant in higher dimension and other exponents") {
  const std::vector<double> sl = {0.99, 0.995, 0.999};
  const auto a = bbm_curve(make_gaussian(1.0), 2, 2.0, sl);
  CHECK(a.K_extrapolated == doctest::Approx(K_oracle(2, 2.0)).epsilon(0.02));
  const auto b = bbm_curve(make_gaussian(1.0), 1, 2.5, sl);
  CHECK(b.K_extrapolated == doctest::Approx(K_oracle(1, 2.5)).epsilon(0.02));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(bbm_curve(make_bump(1.0, 2.0), 1, 2.0, default_bbm_s_list()), Error);
  CHECK_THROWS_AS(bbm_curve(make_exp_power(1.0, 1.0), 1, 2.0, default_bbm_s_list()), Error);
  CHECK_THROWS_AS(bbm_curve(make_gaussian(1.0), 1, 2.0, {0.99, 0.9}), Error);
  CHECK_THROWS_AS(bbm_curve(make_gaussian(1.0), 1, 2.0, {0.9, 1.0}), Error);
}

TEST_CASE("K estimate and the limiting constant report") {
  const auto K = estimate_K(1, 2.0);
  CHECK(K.value > 0.0);
  CHECK(K.value == doctest::Approx(1.0).epsilon(0.02));
  CHECK(K.spread < 0.05);
  CHECK(K.studies.size() >= 2);
  const auto again = estimate_K(1, 2.0);
  CHECK(again.value == K.value);

  KEstimate k3;
  k3.value = K_oracle(3, 2.0);
  const auto big = local_limit_report(3, 2.0, 1e6, k3);
  CHECK(big.holds);
  const auto r1 = local_limit_report(3, 2.0, 0.1, k3);
  const auto r2 = local_limit_report(3, 2.0, 0.2, k3);
  CHECK(r2.limit_constant > r1.limit_constant);
  CHECK(r1.limit_constant == doctest::Approx(0.1 * k3.value).epsilon(1e-15));
  CHECK(r1.C_p == doctest::Approx(delpino_dolbeault_Cp(3, 2.0)));
  CHECK(r1.D_p == doctest::Approx(talenti_Dp(3, 2.0)));
  CHECK_THROWS_AS(local_limit_report(2, 2.0, 1.0, k3), Error);
}

}

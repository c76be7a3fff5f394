#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "flsi/functionals.hpp"
#include "flsi/quadrature.hpp"
#include "flsi/simd/kernels.hpp"

using namespace flsi;
using namespace flsi::simd;

namespace {

struct Batch {
  std::vector<double> t, g;
};

Batch random_batch(std::mt19937_64& rng, double r, int n) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Batch b;
  for (int i = 0; i < n; ++i) {
    // t spans many decades so the small-t cancellation path is exercised
    const double t = std::pow(10.0, -8.0 + 9.0 * U(rng));
    const double cos_th = -1.0 + 2.0 * U(rng);
    const double g = std::max(0.0, t + 2.0 * r * cos_th);
    b.t.push_back(t);
    b.g.push_back(g);
  }
  return b;
}

} // namespace

TEST_SUITE("simd") {

TEST_CASE("AVX2 cap kernel matches the scalar reference") {
  if (!isa_available(Isa::Avx2)) {
    MESSAGE("AVX2 not available on this machine; equivalence not exercised");
    return;
  }
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  long compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    KernelShape sh;
    sh.bump = trial % 3 == 0;
    sh.amp = 0.3 + 2 * U(rng);
    sh.c = 0.3 + 2 * U(rng);
    sh.beta = 1.0 + 3 * U(rng);
    sh.R = 0.5 + 2 * U(rng);
    sh.k = 2.0 + 6 * U(rng);
    const double r = (sh.bump ? sh.R : 3.0) * U(rng);
    const double p = 1.1 + 2.5 * U(rng);
    const bool weighted = trial % 2 == 1;
    const double a1p = weighted ? -0.3 + 0.6 * U(rng) : 0.0;
    const double a2p = weighted ? -0.3 + 0.6 * U(rng) : 0.0;
    const auto k = make_cap_kernel(sh, r, p, a1p, a2p, weighted);
    const int n = 1 + trial % 37; // odd lengths cover the remainder lanes
    auto b = random_batch(rng, r, n);
    std::vector<double> ref(n), vec(n);
    cap_values_scalar(k, b.t, b.g, ref);
    cap_values_avx2(k, b.t, b.g, vec);
    for (int i = 0; i < n; ++i) {
      const double scale = std::max(std::abs(ref[i]), 1e-300);
      CHECK_MESSAGE(std::abs(ref[i] - vec[i]) <= 1e-12 * scale, "trial ", trial, " i ", i, " ref ", ref[i], " avx ", vec[i]);
      ++compared;
    }
  }
  CHECK(compared > 1000);
}

TEST_CASE("vector math accuracy") {
  if (!isa_available(Isa::Avx2)) return;
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int n = 4099;
  std::vector<double> x(n), out(n);

  for (int i = 0; i < n; ++i) x[i] = -700.0 + 1400.0 * U(rng);
  REQUIRE(vexp_avx2(x, out));
  for (int i = 0; i < n; ++i) CHECK(out[i] == doctest::Approx(std::exp(x[i])).epsilon(2e-15));

  for (int i = 0; i < n; ++i) x[i] = std::pow(10.0, -300.0 + 600.0 * U(rng));
  REQUIRE(vlog_avx2(x, out));
  for (int i = 0; i < n; ++i) CHECK(std::abs(out[i] - std::log(x[i])) <= 2e-15 * std::max(1.0, std::abs(std::log(x[i]))));

  for (int i = 0; i < n; ++i) x[i] = (U(rng) < 0.5 ? -1.0 : 1.0) * std::pow(10.0, -15.0 + 15.0 * U(rng)) * 0.999;
  REQUIRE(vlog1p_avx2(x, out));
  for (int i = 0; i < n; ++i) CHECK(out[i] == doctest::Approx(std::log1p(x[i])).epsilon(4e-15));

  for (int i = 0; i < n; ++i) x[i] = (U(rng) < 0.5 ? -1.0 : 1.0) * std::pow(10.0, -15.0 + 17.0 * U(rng));
  REQUIRE(vexpm1_avx2(x, out));
  for (int i = 0; i < n; ++i) CHECK(out[i] == doctest::Approx(std::expm1(x[i])).epsilon(4e-15));
}

TEST_CASE("seminorms agree across forced ISAs") {
  if (!isa_available(Isa::Avx2)) return;
  const auto prm = FracParams::make(3, 2.5, 0.3);
  QuadratureSpec spec;
  spec.rel_tol = 1e-8;
  const RadialProfile fam[] = {make_gaussian(1.0), make_bump(1.0, 2.5), make_exp_power(1.0, 1.3)};
  const auto w = WeightParams::make(prm, 0.15, -0.1);
  for (const auto& u : fam) {
    force_isa(Isa::Scalar);
    const auto a = gagliardo(u, prm, spec);
    const auto aw = weighted_gagliardo(u, prm, w, spec);
    force_isa(Isa::Avx2);
    const auto b = gagliardo(u, prm, spec);
    const auto bw = weighted_gagliardo(u, prm, w, spec);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
    CHECK(aw.value == doctest::Approx(bw.value).epsilon(1e-12));
  }
  CHECK(active_isa() == Isa::Avx2);
  CHECK(to_string(Isa::Scalar) != to_string(Isa::Avx2));
}

}

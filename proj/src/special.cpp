#include "flsi/special.hpp"

#include <array>
#include <cmath>
#include <string>

#include "flsi/error.hpp"

namespace flsi {

namespace {

constexpr double kLanczosG = 607.0 / 128.0;

// Godfrey's coefficients for g = 607/128.
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5};

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

double lanczos_sum(double z) {
  double sum = 0.0;
  for (std::size_t i = kLanczos.size() - 1; i > 0; --i) sum += kLanczos[i] / (z + static_cast<double>(i));
  return sum + kLanczos[0];
}

void require_positive(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw Error(ErrorCode::NonPositiveArgument, "gamma argument must be finite and > 0");
}

} // namespace

double log_gamma(double x) {
  require_positive(x);
  if (x < 0.5) {
    // Reflection keeps the Lanczos sum in its accurate range.
    return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

double gamma(double x) {
  require_positive(x);
  if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma(1.0 - x));
  if (x > 171.0) return std::exp(log_gamma(x));
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  // Split the power so t^{z+1/2} e^{-t} does not overflow before the product.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return 2.5066282746310005024 * half * (half * std::exp(-t)) * lanczos_sum(z);
}

double sphere_area(int d) {
  if (d < 1) throw Error(ErrorCode::DimensionInvalid, "d must be >= 1, got " + std::to_string(d));
  const double h = 0.5 * d;
  if (d == 1) return 2.0;
  return 2.0 * std::pow(kPi, h) / gamma(h);
}

} // namespace flsi

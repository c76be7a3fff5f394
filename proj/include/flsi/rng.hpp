#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).  A stream is
// fully determined by (seed, stream index), so parallel streams reproduce
// bit-for-bit regardless of scheduling.

#include <array>
#include <cmath>
#include <cstdint>

namespace flsi {

class Philox4x32 {
public:
  Philox4x32(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        ctr_{0, 0, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

  std::array<std::uint32_t, 4> next_block() noexcept {
    std::array<std::uint32_t, 4> x = ctr_;
    std::array<std::uint32_t, 2> k = key_;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * x[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * x[2];
      x = {static_cast<std::uint32_t>(p1 >> 32) ^ x[1] ^ k[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ x[3] ^ k[1], static_cast<std::uint32_t>(p0)};
      k[0] += 0x9E3779B9u;
      k[1] += 0xBB67AE85u;
    }
    if (++ctr_[0] == 0) ++ctr_[1];
    return x;
  }

  std::uint64_t next_u64() noexcept {
    if (pos_ >= 2) {
      buf_ = next_block();
      pos_ = 0;
    }
    const std::uint64_t v = (std::uint64_t{buf_[2 * pos_]} << 32) | buf_[2 * pos_ + 1];
    ++pos_;
    return v;
  }

  /// Uniform on (0, 1), never 0 or 1.
  double uniform() noexcept { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    spare_ = rad * std::sin(2.0 * 3.141592653589793 * u2);
    has_spare_ = true;
    return rad * std::cos(2.0 * 3.141592653589793 * u2);
  }

  /// Gamma(shape, 1) by Marsaglia-Tsang; shape < 1 through U^{1/shape} boosting.
  double gamma(double shape) noexcept {
    if (shape < 1.0) return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

private:
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 2;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

} // namespace flsi

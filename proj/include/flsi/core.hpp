#pragma once

// Parameter bundles and exponent algebra shared by every inequality.

#include <optional>

namespace flsi {

/// Validated (d, p, s) with d >= 1, p > 1, 0 < s < 1 and sp < d.
class FracParams {
public:
  static FracParams make(int d, double p, double s);
  /// Same checks without sp < d.  The seminorm itself is defined for every
  /// s in (0,1); the s -> 1 study in one dimension needs sp >= d.
  static FracParams make_seminorm(int d, double p, double s);
  bool subcritical() const noexcept { return s_ * p_ < d_; }

  int d() const noexcept { return d_; }
  double p() const noexcept { return p_; }
  double s() const noexcept { return s_; }

  friend bool operator==(const FracParams&, const FracParams&) = default;

private:
  FracParams(int d, double p, double s) : d_(d), p_(p), s_(s) {}
  int d_;
  double p_;
  double s_;
};

inline FracParams validate_frac_params(int d, double p, double s) {
  return FracParams::make(d, p, s);
}

/// Weight exponents of |x|^{alpha1 p} |y|^{alpha2 p}; validated against a FracParams.
class WeightParams {
public:
  static WeightParams make(const FracParams& params, double alpha1, double alpha2);
  /// The unweighted case alpha1 = alpha2 = 0.
  static WeightParams none() noexcept { return WeightParams(0.0, 0.0); }

  double alpha1() const noexcept { return alpha1_; }
  double alpha2() const noexcept { return alpha2_; }
  double alpha() const noexcept { return alpha1_ + alpha2_; }
  bool trivial() const noexcept { return alpha1_ == 0.0 && alpha2_ == 0.0; }

  friend bool operator==(const WeightParams&, const WeightParams&) = default;

private:
  WeightParams(double a1, double a2) : alpha1_(a1), alpha2_(a2) {}
  double alpha1_;
  double alpha2_;
};

struct ExponentSet {
  double q;
  double r;           // p(q-1)/(p-1)
  double p_star;      // dp/(d-sp)
  double a;           // interpolation weight
  double delta;       // dp - (d-sp)q
  double alpha_scale; // d(p-1)/(p(q-1)), exponent of the dilation u -> l^alpha u(l x)
  double exp_plus;    // alpha p - (d-sp)
  double exp_minus;   // d - alpha q
};

struct WeightedExponentSet {
  double q;
  double r;
  double p_star_alpha; // dp/(d-sp+alpha p)
  double a_alpha;
  double delta_alpha;  // dp - (d-sp+alpha p)q
};

/// dp/(d-sp), the fractional Sobolev critical exponent.
double critical_exponent(const FracParams& params) noexcept;

/// Open interval (p, p(d-s)/(d-sp)) of admissible q.
double q_upper_bound(const FracParams& params) noexcept;
double q_upper_bound(const FracParams& params, const WeightParams& w) noexcept;

/// Throws QOutOfRange unless p < q < p(d-s)/(d-sp).
ExponentSet interpolation_exponents(const FracParams& params, double q);

WeightedExponentSet weighted_exponents(const FracParams& params,
                                       const WeightParams& w, double q);

/// Midpoint of the admissible q interval; used when a config gives no q.
double default_q(const FracParams& params) noexcept;
double default_q(const FracParams& params, const WeightParams& w) noexcept;

} // namespace flsi

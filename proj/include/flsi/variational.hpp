#pragma once

// The constrained minimisation behind the optimal interpolation constant:
// I(u) = (1/p)[u]^p + (1/q)||u||_q^q over ||u||_r^r = K, reduced by dilation
// to a scale-invariant quotient.

#include <cstdint>
#include <string>
#include <vector>

#include "flsi/core.hpp"
#include "flsi/profile.hpp"
#include "flsi/quadrature.hpp"

namespace flsi {

struct PowerSumMin {
  double s_star;
  double f_min;
};

/// Minimum over s > 0 of f(s) = M s^a + N s^{-b}.  Throws NonPositiveArgument.
PowerSumMin minimize_power_sum(double a, double b, double M, double N);
double power_sum(double a, double b, double M, double N, double s) noexcept;

/// (D/a)(b/a)^{-b/D} p^{-b/D} q^{-a/D} with a = exp_plus, b = exp_minus, D = a + b.
double c_tilde(const FracParams& params, double q);

/// Constraint level (1/C~)^{rD/delta} at which the constrained infimum of I
/// equals the quotient infimum raised to delta/D.
double fixed_K(const FracParams& params, double q);

/// min over dilations of I(K^{1/r} u/||u||_r), i.e. the constrained energy of
/// the orbit of u.  Uses fixed_K unless K > 0 is given.
FunctionalValue constrained_energy(const RadialProfile& u, const FracParams& params, double q,
                                   const QuadratureSpec& spec, double K = 0.0);

/// [u]^a ||u||_q^{1-a} / ||u||_r through the power-sum route: the constrained
/// energy at level K, divided by C~ K^{delta/(rD)} and raised to D/delta.
FunctionalValue scaled_quotient(const RadialProfile& u, const FracParams& params, double q,
                                const QuadratureSpec& spec, double K = 0.0);

/// The same quotient evaluated directly from the three norms.
FunctionalValue direct_quotient(const RadialProfile& u, const FracParams& params, double q,
                                const QuadratureSpec& spec);

/// (1/eta)^{(alpha(p-q)+sp)/(d(p-q)+spq)}.  Throws NonPositiveArgument for eta <= 0.
double optimal_constant_from_eta(double eta, const FracParams& params, double q);

struct Candidate {
  std::string profile;
  double quotient; // scale-invariant quotient
  double eta;      // constrained energy at fixed_K
};

struct TraceEntry {
  std::string family;
  int restart;
  long evaluations; // cumulative
  double best_eta;  // best so far over all families
};

struct VariationalRecord {
  FracParams params = FracParams::make(3, 2.0, 0.5);
  double q = 0.0;
  double K = 0.0;
  double c_tilde = 0.0;
  std::vector<Candidate> candidates; // one per family: the best point found
  std::string best_profile;
  double eta_hat = 0.0;
  double L_hat = 0.0;           // family-optimal lower bound of the optimal constant
  double L_direct = 0.0;        // max over candidates of 1/quotient
  std::vector<TraceEntry> trace;
  long evaluations = 0;
  bool budget_exhausted = false;
  std::uint64_t seed = 0;
};

/// Profile families searched and their boxes (log coordinates inside the search):
/// Gaussian sigma, ExtremalDPD sigma in [0.25, 4]; ExpPower c in [0.25, 4],
/// beta in [1, 4]; Bump R in [0.5, 2], k in [2, 8].
enum class SearchFamily { Gaussian, ExtremalDPD, ExpPower, Bump };
std::string to_string(SearchFamily f);
std::vector<SearchFamily> all_search_families();

struct SearchOptions {
  std::vector<SearchFamily> families = all_search_families();
  int restarts = 20;
  long budget = 20000; // total quotient evaluations (cache hits included)
};

/// Simplex search with random restarts per family; eta_hat is the best
/// constrained energy found.  When the budget runs out the best-so-far record
/// is returned with budget_exhausted set.
VariationalRecord estimate_eta(const FracParams& params, double q, const SearchOptions& opt,
                               const QuadratureSpec& spec);

/// Tensor grid of n points per box coordinate (endpoints included), minimum
/// over all families.
VariationalRecord grid_scan_eta(const FracParams& params, double q, int n,
                                const std::vector<SearchFamily>& families,
                                const QuadratureSpec& spec);

} // namespace flsi

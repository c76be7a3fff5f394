#pragma once

// Globally adaptive 21-point Gauss-Kronrod integration with batched integrands.
//
// The integrand receives all 21 abscissae of a panel at once, which lets the
// Gagliardo kernels evaluate a whole panel in one SIMD sweep.  An integrand may
// also report a per-node error (the error of an inner integral it computed);
// those errors are integrated with the Kronrod weights and added to the panel's
// own error so nested integrals carry an honest budget.

#include <cstddef>
#include <functional>
#include <span>

namespace flsi {

inline constexpr std::size_t kGkNodes = 21;

struct QuadOptions {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  int max_panels = 2000;
};

struct QuadResult {
  double value = 0.0;
  double err = 0.0;
  long evals = 0;
  bool converged = true;
};

/// fx[i] = f(x[i]); ex[i] = error already committed at x[i] (zero-filled on entry).
using BatchIntegrand =
    std::function<void(std::span<const double> x, std::span<double> fx, std::span<double> ex)>;

/// Integrates over [breaks.front(), breaks.back()], starting from the panels the
/// breakpoints define.  Breakpoints must be non-decreasing; empty panels are skipped.
QuadResult integrate(const BatchIntegrand& f, std::span<const double> breaks,
                     const QuadOptions& opt);

QuadResult integrate(const BatchIntegrand& f, double a, double b, const QuadOptions& opt);

/// Convenience for scalar integrands.
QuadResult integrate_scalar(const std::function<double(double)>& f, double a, double b,
                            const QuadOptions& opt);

/// Single fixed GK21 panel; exposed for tests.
QuadResult gk21_panel(const BatchIntegrand& f, double a, double b);

} // namespace flsi

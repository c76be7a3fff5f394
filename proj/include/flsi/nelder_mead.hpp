#pragma once

// Derivative-free simplex minimisation (GSL nmsimplex2 underneath).

#include <functional>
#include <span>
#include <vector>

namespace flsi {

struct SimplexOptions {
  int max_iterations = 200;
  double size_tol = 1e-7; // stop when the simplex characteristic size drops below this
};

struct SimplexResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
};

/// Minimises f from x0 with initial simplex steps `step`.  Exceptions thrown by
/// f are rethrown after the GSL state is released.
SimplexResult minimize_simplex(const std::function<double(std::span<const double>)>& f,
                               std::vector<double> x0, std::vector<double> step,
                               const SimplexOptions& opt = {});

} // namespace flsi

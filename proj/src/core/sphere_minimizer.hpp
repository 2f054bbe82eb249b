#pragma once

// Multi-start projected gradient descent on the unit sphere S^{n-1}.
//
// Each start takes tangent-space gradient steps x <- normalize(x - t g_T) with
// Armijo backtracking; the step length doubles after every accepted step. The
// starts are independent and the result is reduced by minimum value, ties
// broken by start index, so the outcome does not depend on evaluation order.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace su2lqu::lqu {

// Fills `gradient` (same length as x) and returns f(x).
using SphereObjective =
    std::function<double(std::span<const double> x, std::span<double> gradient)>;

struct SphereMinimizerOptions {
  double value_tolerance = 1e-12;
  double gradient_tolerance = 1e-9;
  int max_iterations = 10000;
};

struct SphereMinimum {
  double value = 0.0;
  std::vector<double> point;
  std::size_t start_index = 0;
  int iterations = 0;
  bool converged = false;
};

// Local descent from one start (need not be normalised, must be nonzero).
SphereMinimum descend_on_sphere(const SphereObjective& objective,
                                std::vector<double> start,
                                const SphereMinimizerOptions& options = {});

// Best local minimum over all starts. Throws NumericalError (residual = best
// value found) if the winning start ran out of iterations.
SphereMinimum minimize_on_sphere(const SphereObjective& objective,
                                 const std::vector<std::vector<double>>& starts,
                                 const SphereMinimizerOptions& options = {});

// Deterministic start points: the Halton sequence in `dim` dimensions (one
// prime base per coordinate, indices 1..count) mapped from [0,1]^dim to
// [-1,1]^dim and projected onto the sphere.
std::vector<std::vector<double>> halton_sphere_points(std::size_t dim, std::size_t count);

}  // namespace su2lqu::lqu

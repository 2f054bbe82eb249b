#include "sphere_minimizer.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace su2lqu::lqu {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void normalize(std::vector<double>& x) {
  const double norm = std::sqrt(dot(x, x));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DomainError("sphere minimizer: start point must be nonzero and finite");
  }
  for (double& v : x) v /= norm;
}

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-20;

double radical_inverse(std::size_t index, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

std::vector<unsigned> first_primes(std::size_t count) {
  std::vector<unsigned> primes;
  for (unsigned candidate = 2; primes.size() < count; ++candidate) {
    bool prime = true;
    for (unsigned p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(candidate);
  }
  return primes;
}

}  // namespace

SphereMinimum descend_on_sphere(const SphereObjective& objective, std::vector<double> start,
                                const SphereMinimizerOptions& options) {
  const std::size_t n = start.size();
  std::vector<double> x = std::move(start);
  normalize(x);
  std::vector<double> grad(n), trial(n), trial_grad(n);

  double f = objective(x, grad);
  double step = 1.0;
  SphereMinimum out;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double radial = dot(grad, x);
    for (std::size_t i = 0; i < n; ++i) grad[i] -= radial * x[i];
    const double g2 = dot(grad, grad);
    if (std::sqrt(g2) <= options.gradient_tolerance) {
      out.converged = true;
      out.iterations = iter;
      break;
    }

    bool accepted = false;
    double f_trial = f;
    while (step >= kMinStep) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] - step * grad[i];
      normalize(trial);
      f_trial = objective(trial, trial_grad);
      if (f_trial <= f - kArmijo * step * g2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No representable descent left along the tangent direction.
      out.converged = true;
      out.iterations = iter;
      break;
    }

    const double decrease = f - f_trial;
    x.swap(trial);
    grad.swap(trial_grad);
    f = f_trial;
    step *= 2.0;
    if (decrease <= options.value_tolerance) {
      out.converged = true;
      out.iterations = iter + 1;
      break;
    }
    out.iterations = iter + 1;
  }
  out.value = f;
  out.point = std::move(x);
  return out;
}

SphereMinimum minimize_on_sphere(const SphereObjective& objective,
                                 const std::vector<std::vector<double>>& starts,
                                 const SphereMinimizerOptions& options) {
  if (starts.empty()) throw DomainError("sphere minimizer: no start points");
  SphereMinimum best;
  bool have_best = false;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    auto local = descend_on_sphere(objective, starts[k], options);
    local.start_index = k;
    if (!have_best || local.value < best.value) {
      best = std::move(local);
      have_best = true;
    }
  }
  if (!best.converged) {
    std::ostringstream msg;
    msg << "sphere minimizer: best start did not converge within "
        << options.max_iterations << " iterations (best value " << best.value << ")";
    throw NumericalError(msg.str(), best.value);
  }
  return best;
}

std::vector<std::vector<double>> halton_sphere_points(std::size_t dim, std::size_t count) {
  const auto bases = first_primes(dim);
  std::vector<std::vector<double>> points;
  points.reserve(count);
  for (std::size_t k = 1; points.size() < count; ++k) {
    std::vector<double> x(dim);
    for (std::size_t i = 0; i < dim; ++i) x[i] = 2.0 * radical_inverse(k, bases[i]) - 1.0;
    if (dot(x, x) < 1e-12) continue;  // the cube centre has no direction
    normalize(x);
    points.push_back(std::move(x));
  }
  return points;
}

}  // namespace su2lqu::lqu

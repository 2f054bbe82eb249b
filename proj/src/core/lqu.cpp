#include "lqu.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"

namespace su2lqu::lqu {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;

const char* method_name(Method m) noexcept {
  switch (m) {
    case Method::closed_formula:
      return "closed";
    case Method::w_matrix:
      return "wmatrix";
    case Method::numeric_min:
      return "numeric";
  }
  return "unknown";
}

namespace {

std::size_t require_local_split(std::size_t full, std::size_t local) {
  if (local == 0 || full % local != 0) {
    std::ostringstream msg;
    msg << "local operator of dimension " << local
        << " does not divide the full dimension " << full;
    throw DomainError(msg.str());
  }
  return full / local;
}

ComplexMatrix local_commutator(const ComplexMatrix& sqrt_rho, const ComplexMatrix& local) {
  return multiply_local_right(sqrt_rho, local) - multiply_local_left(local, sqrt_rho);
}

double half_negative_trace_square(const ComplexMatrix& c) {
  return -0.5 * linalg::trace_of_product(c, c).real();
}

void require_partner(const SU2InvariantState& state, Spin partner, const char* who) {
  if (state.jB() != partner) {
    throw DomainError(std::string(who) + ": requires a spin-" +
                      (partner == Spin::half() ? "1/2" : "1") + " partner");
  }
}

// (sum u1^2, sum u2^2, sum u3^2) over M in [-j, j]. Outside that range every
// u_i multiplies a nonexistent ket; at the edges the CG factors vanish.
std::array<double, 3> spin_one_u_sums(Spin j, double p, double q) {
  std::array<double, 3> sums{};
  for (int mt = -j.twice(); mt <= j.twice(); mt += 2) {
    const auto c = states::spin_one_sqrt_coefficients(j, angmom::MagneticIndex(mt), p, q);
    const bool bottom = mt == -j.twice();
    const bool top = mt == j.twice();
    if ((bottom && c.u1 != 0.0) || (top && c.u2 != 0.0) ||
        ((bottom || top) && c.u3 != 0.0)) {
      throw std::logic_error("spin_one_u_sums: boundary coefficient does not vanish");
    }
    sums[0] += c.u1 * c.u1;
    sums[1] += c.u2 * c.u2;
    sums[2] += c.u3 * c.u3;
  }
  return sums;
}

}  // namespace

ComplexMatrix multiply_local_right(const ComplexMatrix& m, const ComplexMatrix& local) {
  const std::size_t n = m.dim();
  const std::size_t d = local.dim();
  const std::size_t blocks = require_local_split(n, d);
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t a = 0; a < blocks; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < d; ++k) s += m(r, a * d + k) * local(k, b);
        out(r, a * d + b) = s;
      }
  return out;
}

ComplexMatrix multiply_local_left(const ComplexMatrix& local, const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  const std::size_t d = local.dim();
  const std::size_t blocks = require_local_split(n, d);
  ComplexMatrix out(n);
  for (std::size_t a = 0; a < blocks; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t k = 0; k < d; ++k) {
        const Complex kb = local(b, k);
        if (kb == Complex{}) continue;
        for (std::size_t c = 0; c < n; ++c) out(a * d + b, c) += kb * m(a * d + k, c);
      }
  return out;
}

double skew_information(const HermitianMatrix& sqrt_rho, const HermitianMatrix& K) {
  return half_negative_trace_square(linalg::commutator(sqrt_rho, K));
}

double local_skew_information(const HermitianMatrix& sqrt_rho, const HermitianMatrix& local) {
  return half_negative_trace_square(local_commutator(sqrt_rho.matrix(), local.matrix()));
}

WMatrix::WMatrix(const linalg::RealMatrix3& w) : w_(w) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(w_[i][j] - w_[j][i]) > linalg::kHermitianTolerance) {
        throw DomainError("W matrix is not symmetric");
      }
}

double WMatrix::isotropy_residual() const noexcept {
  const double mean = trace() / 3.0;
  double r = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r = std::max(r, std::abs(w_[i][j] - (i == j ? mean : 0.0)));
  return r;
}

WMatrix w_matrix(const HermitianMatrix& sqrt_rho, Spin jA) {
  const std::size_t expected = 2 * jA.dim();
  if (sqrt_rho.dim() != expected) {
    std::ostringstream msg;
    msg << "w_matrix: sqrt(rho) has dimension " << sqrt_rho.dim() << ", expected "
        << expected << " for a spin-1/2 partner";
    throw DomainError(msg.str());
  }
  const auto pauli = GeneratorBasis::pauli();
  std::array<ComplexMatrix, 3> x;
  for (std::size_t i = 0; i < 3; ++i)
    x[i] = multiply_local_right(sqrt_rho.matrix(), pauli[i].matrix());
  linalg::RealMatrix3 w{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k) w[i][k] = linalg::trace_of_product(x[i], x[k]).real();
  return WMatrix(w);
}

LquResult lqu_w_matrix(const SU2InvariantState& state) {
  require_partner(state, Spin::half(), "lqu_w_matrix");
  const auto w = w_matrix(states::sqrt_density_matrix(state), state.jA());
  return {1.0 - w.max_eigenvalue(), Method::w_matrix, std::nullopt};
}

double lqu_formula_spin_half(Spin j, double p) {
  const auto state = states::build_state_spin_half(j, p);  // validates (j, P)
  p = state.probability(Spin::from_twice(j.twice() - 1));
  const double jv = j.value();
  const double diff = std::sqrt(p / (2.0 * jv)) - std::sqrt((1.0 - p) / (2.0 * (jv + 1.0)));
  return 8.0 * jv * (jv + 1.0) * diff * diff / (3.0 * (2.0 * jv + 1.0));
}

double lqu_formula_spin_one(Spin j, double p, double q) {
  const auto state = states::build_state_spin_one(j, p, q);  // validates (j, P, Q)
  const auto s = spin_one_u_sums(j, state.probability(Spin::from_twice(j.twice() - 2)),
                                 state.probability(j));
  return std::min(s[0] + s[1] + 4.0 * s[2], 3.0 * (s[0] + s[1]));
}

LquResult lqu_closed(const SU2InvariantState& state) {
  const Spin j = state.jA();
  if (state.jB() == Spin::half()) {
    return {lqu_formula_spin_half(j, state.probability(Spin::from_twice(j.twice() - 1))),
            Method::closed_formula, std::nullopt};
  }
  return {lqu_formula_spin_one(j, state.probability(Spin::from_twice(j.twice() - 2)),
                               state.probability(j)),
          Method::closed_formula, std::nullopt};
}

ObservableDirection stationary_direction(int branch) {
  const double r3 = std::sqrt(3.0) / 2.0;
  std::vector<double> n(8, 0.0);
  if (branch == 1) {
    n[2] = 0.5;
    n[7] = r3;
  } else if (branch == 2) {
    n[2] = -r3;
    n[7] = 0.5;
  } else {
    throw DomainError("stationary direction branch must be 1 or 2");
  }
  return ObservableDirection(std::move(n));
}

StationaryValues stationary_direction_values(const SU2InvariantState& state) {
  require_partner(state, Spin::one(), "stationary_direction_values");
  const Spin j = state.jA();
  const auto s = spin_one_u_sums(j, state.probability(Spin::from_twice(j.twice() - 2)),
                                 state.probability(j));
  StationaryValues out{};
  out.branch1 = s[0] + s[1] + 4.0 * s[2];
  out.branch2 = 3.0 * (s[0] + s[1]);

  const auto sqrt_rho = states::sqrt_density_matrix(state);
  const auto basis = GeneratorBasis::gell_mann();
  out.branch1_direct =
      local_skew_information(sqrt_rho, observable_from_direction(basis, stationary_direction(1)));
  out.branch2_direct =
      local_skew_information(sqrt_rho, observable_from_direction(basis, stationary_direction(2)));

  const double mismatch = std::max(std::abs(out.branch1 - out.branch1_direct),
                                   std::abs(out.branch2 - out.branch2_direct));
  if (mismatch > 1e-12) {
    std::ostringstream msg;
    msg << "stationary_direction_values: formula and direct evaluation differ by "
        << mismatch;
    throw NumericalError(msg.str(), mismatch);
  }
  return out;
}

LquResult lqu_numeric(const SU2InvariantState& state, const NumericOptions& options) {
  if (options.seeds == 0) throw DomainError("lqu_numeric: seeds must be positive");
  const auto basis = GeneratorBasis::for_local_dim(state.jB().dim());
  const auto sqrt_rho = states::sqrt_density_matrix(state);
  const std::size_t n = basis.size();

  // I(n) = n^T G n with G_ik = -1/2 Re Tr(C_i C_k), C_i = [sqrt(rho), I (x) g_i].
  std::vector<ComplexMatrix> commutators;
  commutators.reserve(n);
  for (const auto& g : basis.generators())
    commutators.push_back(local_commutator(sqrt_rho.matrix(), g.matrix()));
  std::vector<double> gram(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i; k < n; ++k) {
      const double v = -0.5 * linalg::trace_of_product(commutators[i], commutators[k]).real();
      gram[i * n + k] = v;
      gram[k * n + i] = v;
    }

  const SphereObjective objective = [&](std::span<const double> x, std::span<double> grad) {
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double gx = 0.0;
      for (std::size_t k = 0; k < n; ++k) gx += gram[i * n + k] * x[k];
      grad[i] = 2.0 * gx;
      f += x[i] * gx;
    }
    return f;
  };

  auto starts = halton_sphere_points(n, options.seeds);
  if (options.stationary_warm_starts && state.jB() == Spin::one()) {
    for (int branch : {1, 2}) {
      const auto d = stationary_direction(branch);
      starts.emplace_back(d.components().begin(), d.components().end());
    }
  }
  const auto best = minimize_on_sphere(objective, starts, options.minimizer);

  auto direction = ObservableDirection::normalized(best.point);
  const double value =
      local_skew_information(sqrt_rho, observable_from_direction(basis, direction));
  return {value, Method::numeric_min, std::move(direction)};
}

}  // namespace su2lqu::lqu

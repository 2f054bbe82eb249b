#pragma once

// Local quantum uncertainty of SU(2)-invariant states, measured on the B side
// (the spin-1/2 or spin-1 partner) with K = I_A (x) (n . g).
//
//   skew information  I(rho, K) = -1/2 Tr([sqrt(rho), K]^2)  (>= 0)
//   LQU               min over unit n of I(rho, I_A (x) n.g)
//
// Three routes are provided and cross-checked in the tests:
//   * closed formulas in (j, P) and (j, P, Q),
//   * 1 - lambda_max(W) for a qubit partner,
//   * multi-start descent on the sphere of generator coefficients.

#include <array>
#include <optional>

#include "generators.hpp"
#include "linalg.hpp"
#include "sphere_minimizer.hpp"
#include "states.hpp"

namespace su2lqu::lqu {

using angmom::Spin;
using states::SU2InvariantState;

enum class Method { closed_formula, w_matrix, numeric_min };

const char* method_name(Method m) noexcept;

struct LquResult {
  double value = 0.0;
  Method method = Method::closed_formula;
  std::optional<ObservableDirection> direction;  // numeric route only
};

// General dense form; K acts on the full space.
double skew_information(const linalg::HermitianMatrix& sqrt_rho,
                        const linalg::HermitianMatrix& K);

// K = I_A (x) local, evaluated without forming the Kronecker product.
double local_skew_information(const linalg::HermitianMatrix& sqrt_rho,
                              const linalg::HermitianMatrix& local);

// M (I_A (x) K) and (I_A (x) K) M for a local operator K on the last factor.
linalg::ComplexMatrix multiply_local_right(const linalg::ComplexMatrix& m,
                                           const linalg::ComplexMatrix& local);
linalg::ComplexMatrix multiply_local_left(const linalg::ComplexMatrix& local,
                                          const linalg::ComplexMatrix& m);

class WMatrix {
public:
  // Throws DomainError if not symmetric within 1e-12.
  explicit WMatrix(const linalg::RealMatrix3& w);

  const linalg::RealMatrix3& values() const noexcept { return w_; }
  double operator()(int i, int j) const noexcept { return w_[i][j]; }
  double trace() const noexcept { return w_[0][0] + w_[1][1] + w_[2][2]; }
  double max_eigenvalue() const { return linalg::sym3_max_eigenvalue(w_); }
  // ||W - (Tr W / 3) I||_max
  double isotropy_residual() const noexcept;

private:
  linalg::RealMatrix3 w_;
};

// W_ij = Tr{sqrt(rho) (I (x) sigma_i) sqrt(rho) (I (x) sigma_j)}; sqrt_rho must
// have dimension 2 (2 jA + 1).
WMatrix w_matrix(const linalg::HermitianMatrix& sqrt_rho, Spin jA);

LquResult lqu_w_matrix(const SU2InvariantState& state);

double lqu_formula_spin_half(Spin j, double p);
double lqu_formula_spin_one(Spin j, double p, double q);

// Closed formula for whichever partner the state has.
LquResult lqu_closed(const SU2InvariantState& state);

// The two stationary directions for a spin-1 partner:
//   n3 = 1/2,        n8 = sqrt(3)/2  ->  K = S_z
//   n3 = -sqrt(3)/2, n8 = 1/2        ->  K = diag(-1, 2, -1) / sqrt(3)
ObservableDirection stationary_direction(int branch);

struct StationaryValues {
  double branch1;         // sum_M (u1^2 + u2^2 + 4 u3^2)
  double branch2;         // 3 sum_M (u1^2 + u2^2)
  double branch1_direct;  // skew information at the first direction
  double branch2_direct;  // skew information at the second direction
};

// Throws NumericalError if a formula and its direct evaluation differ by more
// than 1e-12.
StationaryValues stationary_direction_values(const SU2InvariantState& state);

struct NumericOptions {
  std::size_t seeds = 64;
  bool stationary_warm_starts = true;  // spin-1 partner only
  SphereMinimizerOptions minimizer{};
};

LquResult lqu_numeric(const SU2InvariantState& state, const NumericOptions& options = {});

}  // namespace su2lqu::lqu

#pragma once

// SU(2)-invariant bipartite states rho = sum_J p_J / (2J + 1) Pi_J of a spin-j
// (subsystem A) and a spin-1/2 or spin-1 (subsystem B).
//
// The spectral sums over sector projectors are the primary route to rho and
// sqrt(rho). The product-basis coefficient formulas (u, v, w for a spin-1/2
// partner; v1..3, u1..3 for a spin-1 partner) are an independent second route
// kept for cross-validation.

#include <map>

#include "angular_momentum.hpp"
#include "linalg.hpp"

namespace su2lqu::states {

using angmom::MagneticIndex;
using angmom::Spin;

inline constexpr double kSimplexTolerance = 1e-12;

class SU2InvariantState {
public:
  // Keys are twice-J values and must be exactly the triangle-allowed totals.
  // Probabilities must be >= 0 and sum to 1 within 1e-12 (no renormalisation
  // beyond clamping round-off negatives in that band).
  SU2InvariantState(Spin jA, Spin jB, std::map<int, double> sector_probs);

  Spin jA() const noexcept { return jA_; }
  Spin jB() const noexcept { return jB_; }
  const std::map<int, double>& sector_probs() const noexcept { return probs_; }
  double probability(Spin total) const;
  std::size_t dim() const noexcept { return angmom::product_dim(jA_, jB_); }

private:
  Spin jA_;
  Spin jB_;
  std::map<int, double> probs_;
};

// {J = j - 1/2: P, J = j + 1/2: 1 - P}
SU2InvariantState build_state_spin_half(Spin j, double p);
// {J = j - 1: P, J = j: Q, J = j + 1: 1 - P - Q}; requires j >= 1.
SU2InvariantState build_state_spin_one(Spin j, double p, double q);

linalg::HermitianMatrix to_density_matrix(const SU2InvariantState& s);
linalg::HermitianMatrix sqrt_density_matrix(const SU2InvariantState& s);

// Tr(rho Pi_J)
double sector_probability(const linalg::HermitianMatrix& rho, Spin jA, Spin jB,
                          Spin total);

// Product-basis entries of rho for a spin-1/2 partner, indexed by the A-side m:
//   u = <m, up|rho|m, up>, v = <m, down|rho|m, down>,
//   w = <m, up|rho|m + 1, down>.
struct SpinHalfCoefficients {
  double u;
  double v;
  double w;
};

SpinHalfCoefficients spin_half_coefficients(Spin j, MagneticIndex m, double p);

// rho assembled entrywise from spin_half_coefficients.
linalg::HermitianMatrix density_from_spin_half_coefficients(Spin j, double p);

// Product-basis entries of sqrt(rho) for a spin-1 partner at total M:
//   v1 = <M-1, 1|.|M-1, 1>, v2 = <M, 0|.|M, 0>, v3 = <M+1, -1|.|M+1, -1>,
//   u1 = <M-1, 1|.|M, 0>,  u2 = <M+1, -1|.|M, 0>, u3 = <M-1, 1|.|M+1, -1>.
// Sectors that do not contain M contribute nothing.
struct SpinOneSqrtCoefficients {
  double v1, v2, v3;
  double u1, u2, u3;
};

// Requires |M| <= j + 1.
SpinOneSqrtCoefficients spin_one_sqrt_coefficients(Spin j, MagneticIndex m,
                                                   double p, double q);

// sqrt(rho) assembled entrywise from spin_one_sqrt_coefficients.
linalg::HermitianMatrix sqrt_from_spin_one_coefficients(Spin j, double p, double q);

// max over k of ||[rho, S_k (x) I + I (x) S_k]||_max. Zero iff invariant.
double check_su2_invariance(const linalg::HermitianMatrix& rho, Spin j1, Spin j2);

}  // namespace su2lqu::states

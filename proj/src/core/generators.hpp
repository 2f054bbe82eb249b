#pragma once

// Local observables K_B = n . g built from an ordered generator basis:
// Pauli (sigma_x, sigma_y, sigma_z) for a qubit, Gell-Mann lambda_1..lambda_8
// for a qutrit. Both use the m-descending basis (|1/2>, |-1/2>) and
// (|1>, |0>, |-1>), so the qutrit direction n3 = 1/2, n8 = sqrt(3)/2 gives
// diag(1, 0, -1) = S_z. Tr(g_i g_j) = 2 delta_ij.

#include <cstddef>
#include <span>
#include <vector>

#include "linalg.hpp"

namespace su2lqu::lqu {

class GeneratorBasis {
public:
  static GeneratorBasis pauli();
  static GeneratorBasis gell_mann();
  // local_dim must be 2 or 3.
  static GeneratorBasis for_local_dim(std::size_t local_dim);

  std::size_t local_dim() const noexcept { return local_dim_; }
  std::size_t size() const noexcept { return generators_.size(); }
  const linalg::HermitianMatrix& operator[](std::size_t i) const { return generators_[i]; }
  const std::vector<linalg::HermitianMatrix>& generators() const noexcept {
    return generators_;
  }

private:
  GeneratorBasis(std::size_t local_dim, std::vector<linalg::HermitianMatrix> generators);

  std::size_t local_dim_;
  std::vector<linalg::HermitianMatrix> generators_;
};

inline constexpr double kUnitNormTolerance = 1e-12;

// A unit vector of generator coefficients.
class ObservableDirection {
public:
  // Throws DomainError unless | ||n|| - 1 | <= 1e-12.
  explicit ObservableDirection(std::vector<double> n);
  // Rescales any nonzero vector onto the sphere.
  static ObservableDirection normalized(std::vector<double> n);

  std::span<const double> components() const noexcept { return n_; }
  std::size_t size() const noexcept { return n_.size(); }
  double operator[](std::size_t i) const { return n_[i]; }

private:
  std::vector<double> n_;
};

// K_B = sum_i n_i g_i. Throws DomainError if the lengths differ.
linalg::HermitianMatrix observable_from_direction(const GeneratorBasis& basis,
                                                  const ObservableDirection& n);

}  // namespace su2lqu::lqu

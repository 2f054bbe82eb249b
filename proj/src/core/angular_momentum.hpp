#pragma once

// Half-integer spin bookkeeping, Clebsch-Gordan coefficients for coupling a
// spin j to spin-1/2 or spin-1, coupled basis vectors and sector projectors.
//
// Product basis ordering: |j1, m> (x) |j2, m'> with m descending from j1 and
// m' descending from j2, row-major, so index = (j1 - m) * (2 j2 + 1) + (j2 - m').
// All spin quantities are carried as twice their value.

#include <array>
#include <cstddef>
#include <vector>

#include "linalg.hpp"

namespace su2lqu::angmom {

class Spin {
public:
  // Throws DomainError for negative input.
  static Spin from_twice(int twice_value);
  static constexpr Spin half() { return Spin(1); }
  static constexpr Spin one() { return Spin(2); }

  constexpr int twice() const noexcept { return twice_; }
  constexpr double value() const noexcept { return twice_ / 2.0; }
  constexpr std::size_t dim() const noexcept {
    return static_cast<std::size_t>(twice_) + 1;
  }

  friend constexpr bool operator==(Spin, Spin) = default;
  friend constexpr auto operator<=>(Spin, Spin) = default;

private:
  constexpr explicit Spin(int twice_value) : twice_(twice_value) {}
  int twice_;
};

class MagneticIndex {
public:
  constexpr explicit MagneticIndex(int twice_value) : twice_(twice_value) {}

  constexpr int twice() const noexcept { return twice_; }
  constexpr double value() const noexcept { return twice_ / 2.0; }

  // |m| <= j and m - j integer.
  constexpr bool valid_for(Spin j) const noexcept {
    return (twice_ <= j.twice()) && (-twice_ <= j.twice()) &&
           ((j.twice() - twice_) % 2 == 0);
  }

  friend constexpr bool operator==(MagneticIndex, MagneticIndex) = default;

private:
  int twice_;
};

// Coupled sectors J = j +- 1/2.
enum class HalfBranch { plus, minus };

// Coupled sectors J = j + 1, j, j - 1.
enum class SpinOneSector { raised, same, lowered };

// |j +- 1/2, M> = a |j, M - 1/2> (x) |up> + b |j, M + 1/2> (x) |down>
struct SpinHalfCg {
  double a;
  double b;
};

// |J, M> = x1 |M - 1> (x) |1> + x2 |M> (x) |0> + x3 |M + 1> (x) |-1>
struct SpinOneCg {
  double x1;
  double x2;
  double x3;
};

Spin coupled_spin(Spin j, HalfBranch branch);
Spin coupled_spin(Spin j, SpinOneSector sector);

// M is the total magnetic number. Throws DomainError if |M| > J for the
// requested sector or if M has the wrong half-integer parity.
SpinHalfCg cg_spin_half(Spin j, MagneticIndex m, HalfBranch branch);
SpinOneCg cg_spin_one(Spin j, MagneticIndex m, SpinOneSector sector);

struct BasisAmplitude {
  std::size_t index;  // position in the product basis
  double amplitude;
};

struct CoupledVector {
  Spin j1;
  Spin j2;
  Spin total;
  MagneticIndex m;
  std::vector<BasisAmplitude> amplitudes;  // only nonzero-support product kets

  std::vector<double> dense() const;
};

std::size_t product_dim(Spin j1, Spin j2);
std::size_t product_index(Spin j1, MagneticIndex m1, Spin j2, MagneticIndex m2);

bool triangle_allowed(Spin j1, Spin j2, Spin total);
// |j1 - j2|, ..., j1 + j2 ascending.
std::vector<Spin> allowed_totals(Spin j1, Spin j2);

// j2 must be 1/2 or 1. Throws DomainError on triangle violation or |M| > J.
CoupledVector coupled_vector(Spin j1, Spin j2, Spin total, MagneticIndex m);

// Pi_J = sum_M |J, M><J, M| in the product basis.
linalg::HermitianMatrix projector(Spin j1, Spin j2, Spin total);

// S_x, S_y, S_z for a single spin in the |j, m> basis, m descending.
std::array<linalg::HermitianMatrix, 3> spin_operators(Spin j);

}  // namespace su2lqu::angmom

#pragma once

// Dense complex linear algebra for small (d <= a few hundred) matrices.
//
// Storage is row-major. HermitianMatrix is a thin wrapper that checks the
// Hermiticity contract once at construction; every routine that needs a
// Hermitian argument takes one, so the check never has to be repeated.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace su2lqu::linalg {

using Complex = std::complex<double>;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPsdClampThreshold = 1e-10;

class ComplexMatrix {
public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> row_major);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) noexcept {
    return data_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  // max_{a,b} |M_ab|
  double max_abs() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs += rhs;
  }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs -= rhs;
  }
  friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scale) {
    return lhs *= scale;
  }
  friend ComplexMatrix operator*(Complex scale, ComplexMatrix rhs) {
    return rhs *= scale;
  }
  friend ComplexMatrix operator-(ComplexMatrix m) { return m *= -1.0; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs,
                                 const ComplexMatrix& rhs);

private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

class HermitianMatrix {
public:
  // Throws DomainError if max_{a,b} |M_ab - conj(M_ba)| > tolerance.
  explicit HermitianMatrix(ComplexMatrix m,
                           double tolerance = kHermitianTolerance);

  static HermitianMatrix identity(std::size_t dim) {
    return HermitianMatrix(ComplexMatrix::identity(dim));
  }

  std::size_t dim() const noexcept { return m_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return m_(row, col);
  }

private:
  ComplexMatrix m_;
};

// max_{a,b} |M_ab - conj(M_ba)|
double hermiticity_residual(const ComplexMatrix& m);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns
};

struct JacobiOptions {
  int max_sweeps = 100;
  // Convergence when ||offdiag||_F < relative_tolerance * ||M||_F.
  double relative_tolerance = 1e-14;
};

// Cyclic complex Jacobi. Throws NumericalError (residual = off-diagonal
// Frobenius norm) if the sweep budget runs out.
EigenDecomposition eigh(const HermitianMatrix& m, const JacobiOptions& options = {});

// Principal square root of a PSD matrix. Eigenvalues in (-1e-10, 0) are
// clamped to zero; anything below throws NumericalError.
HermitianMatrix matrix_sqrt_psd(const HermitianMatrix& m);

// ab - ba. Throws DomainError on dimension mismatch.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const HermitianMatrix& a, const HermitianMatrix& b);

// Tr(AB) without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

using RealMatrix3 = std::array<std::array<double, 3>, 3>;

// Largest eigenvalue of a real symmetric 3x3 matrix (real Jacobi).
// Throws DomainError if |w_ij - w_ji| > 1e-12.
double sym3_max_eigenvalue(const RealMatrix3& w);

}  // namespace su2lqu::linalg

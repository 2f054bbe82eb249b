#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace su2lqu::linalg {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (data_.size() != dim_ * dim_) {
    throw DomainError("ComplexMatrix: expected " + std::to_string(dim_ * dim_) +
                      " entries, got " + std::to_string(data_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* op) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << op << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw DomainError(msg.str());
  }
}

}  // namespace

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs, "operator*");
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

double hermiticity_residual(const ComplexMatrix& m) {
  double r = 0.0;
  for (std::size_t a = 0; a < m.dim(); ++a)
    for (std::size_t b = a; b < m.dim(); ++b)
      r = std::max(r, std::abs(m(a, b) - std::conj(m(b, a))));
  return r;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m, double tolerance)
    : m_(std::move(m)) {
  const double r = hermiticity_residual(m_);
  if (r > tolerance) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: residual " << r << " > " << tolerance;
    throw DomainError(msg.str());
  }
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.dim(); ++p)
    for (std::size_t q = 0; q < a.dim(); ++q)
      if (p != q) s += std::norm(a(p, q));
  return std::sqrt(s);
}

// One two-sided rotation A <- J^H A J, V <- V J zeroing A(p,q).
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex g = a(p, q);
  const double mag = std::abs(g);
  if (mag == 0.0) return;
  const Complex phase = g / mag;
  const double alpha = a(p, p).real();
  const double beta = a(q, q).real();

  const double tau = (beta - alpha) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const Complex s_phase = s * phase;              // s e^{i phi}
  const Complex s_phase_conj = s * std::conj(phase);  // s e^{-i phi}

  const std::size_t n = a.dim();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s_phase_conj * akq;
    a(k, q) = s_phase * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s_phase * aqk;
    a(q, k) = s_phase_conj * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - s_phase_conj * vkq;
    v(k, q) = s_phase * vkp + c * vkq;
  }
}

}  // namespace

EigenDecomposition eigh(const HermitianMatrix& m, const JacobiOptions& options) {
  const std::size_t n = m.dim();
  // Work on the exactly Hermitian part.
  ComplexMatrix a(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = a.frobenius_norm();
  const double target = options.relative_tolerance * scale;
  double off = off_diagonal_norm(a);
  int sweep = 0;
  while (off >= target && off > 0.0) {
    if (sweep == options.max_sweeps) {
      std::ostringstream msg;
      msg << "eigh: Jacobi did not converge in " << options.max_sweeps
          << " sweeps (off-diagonal norm " << off << ")";
      throw NumericalError(msg.str(), off);
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    off = off_diagonal_norm(a);
    ++sweep;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

HermitianMatrix matrix_sqrt_psd(const HermitianMatrix& m) {
  const auto eig = eigh(m);
  const std::size_t n = m.dim();
  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues[k];
    if (lambda < -kPsdClampThreshold) {
      std::ostringstream msg;
      msg << "matrix_sqrt_psd: matrix is not positive semidefinite (eigenvalue "
          << lambda << ")";
      throw NumericalError(msg.str(), lambda);
    }
    roots[k] = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  }
  ComplexMatrix r(n);
  const auto& vecs = eig.eigenvectors;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += roots[k] * vecs(a, k) * std::conj(vecs(b, k));
      r(a, b) = s;
      r(b, a) = std::conj(s);
    }
    r(a, a) = r(a, a).real();
  }
  return HermitianMatrix(std::move(r));
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

ComplexMatrix commutator(const HermitianMatrix& a, const HermitianMatrix& b) {
  return commutator(a.matrix(), b.matrix());
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "trace_of_product");
  Complex t = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) t += a(i, k) * b(k, i);
  return t;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          out(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return out;
}

double sym3_max_eigenvalue(const RealMatrix3& w) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(w[i][j] - w[j][i]) > kHermitianTolerance) {
        std::ostringstream msg;
        msg << "sym3_max_eigenvalue: matrix is not symmetric (|w" << i << j
            << " - w" << j << i << "| = " << std::abs(w[i][j] - w[j][i]) << ")";
        throw DomainError(msg.str());
      }
  ComplexMatrix m(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = 0.5 * (w[i][j] + w[j][i]);
  return eigh(HermitianMatrix(std::move(m))).eigenvalues.back();
}

}  // namespace su2lqu::linalg

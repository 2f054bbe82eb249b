#include "generators.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace su2lqu::lqu {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;

namespace {

HermitianMatrix from_rows(std::size_t dim, std::vector<Complex> entries) {
  return HermitianMatrix(ComplexMatrix(dim, std::move(entries)));
}

}  // namespace

GeneratorBasis::GeneratorBasis(std::size_t local_dim, std::vector<HermitianMatrix> generators)
    : local_dim_(local_dim), generators_(std::move(generators)) {}

GeneratorBasis GeneratorBasis::pauli() {
  const Complex i(0.0, 1.0);
  std::vector<HermitianMatrix> g;
  g.push_back(from_rows(2, {0.0, 1.0, 1.0, 0.0}));
  g.push_back(from_rows(2, {0.0, -i, i, 0.0}));
  g.push_back(from_rows(2, {1.0, 0.0, 0.0, -1.0}));
  return GeneratorBasis(2, std::move(g));
}

GeneratorBasis GeneratorBasis::gell_mann() {
  const Complex i(0.0, 1.0);
  const double r3 = 1.0 / std::sqrt(3.0);
  std::vector<HermitianMatrix> g;
  // clang-format off
  g.push_back(from_rows(3, {0.0, 1.0, 0.0,
                            1.0, 0.0, 0.0,
                            0.0, 0.0, 0.0}));
  g.push_back(from_rows(3, {0.0,  -i, 0.0,
                              i, 0.0, 0.0,
                            0.0, 0.0, 0.0}));
  g.push_back(from_rows(3, {1.0,  0.0, 0.0,
                            0.0, -1.0, 0.0,
                            0.0,  0.0, 0.0}));
  g.push_back(from_rows(3, {0.0, 0.0, 1.0,
                            0.0, 0.0, 0.0,
                            1.0, 0.0, 0.0}));
  g.push_back(from_rows(3, {0.0, 0.0,  -i,
                            0.0, 0.0, 0.0,
                              i, 0.0, 0.0}));
  g.push_back(from_rows(3, {0.0, 0.0, 0.0,
                            0.0, 0.0, 1.0,
                            0.0, 1.0, 0.0}));
  g.push_back(from_rows(3, {0.0, 0.0, 0.0,
                            0.0, 0.0,  -i,
                            0.0,   i, 0.0}));
  g.push_back(from_rows(3, { r3, 0.0,       0.0,
                            0.0,  r3,       0.0,
                            0.0, 0.0, -2.0 * r3}));
  // clang-format on
  return GeneratorBasis(3, std::move(g));
}

GeneratorBasis GeneratorBasis::for_local_dim(std::size_t local_dim) {
  if (local_dim == 2) return pauli();
  if (local_dim == 3) return gell_mann();
  throw DomainError("no generator basis for local dimension " + std::to_string(local_dim));
}

ObservableDirection::ObservableDirection(std::vector<double> n) : n_(std::move(n)) {
  double s = 0.0;
  for (double x : n_) s += x * x;
  const double norm = std::sqrt(s);
  if (std::abs(norm - 1.0) > kUnitNormTolerance) {
    std::ostringstream msg;
    msg << "observable direction must have unit norm (got " << norm << ")";
    throw DomainError(msg.str());
  }
}

ObservableDirection ObservableDirection::normalized(std::vector<double> n) {
  double s = 0.0;
  for (double x : n) s += x * x;
  const double norm = std::sqrt(s);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DomainError("cannot normalise a zero or non-finite direction");
  }
  for (double& x : n) x /= norm;
  return ObservableDirection(std::move(n));
}

HermitianMatrix observable_from_direction(const GeneratorBasis& basis,
                                          const ObservableDirection& n) {
  if (n.size() != basis.size()) {
    std::ostringstream msg;
    msg << "direction has " << n.size() << " components, basis has " << basis.size()
        << " generators";
    throw DomainError(msg.str());
  }
  ComplexMatrix k(basis.local_dim());
  for (std::size_t i = 0; i < basis.size(); ++i) k += basis[i].matrix() * Complex(n[i]);
  return HermitianMatrix(std::move(k));
}

}  // namespace su2lqu::lqu

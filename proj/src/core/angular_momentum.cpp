#include "angular_momentum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>

#include "errors.hpp"

namespace su2lqu::angmom {

namespace {

std::string half_string(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

// sqrt(num / den) for exact integer ratios; tiny negatives are analytic zeros.
double sqrt_ratio(long long num, long long den) {
  if (num <= 0) return 0.0;
  return std::sqrt(static_cast<double>(num) / static_cast<double>(den));
}

void require_in_sector(Spin total, MagneticIndex m, const char* who) {
  if (!m.valid_for(total)) {
    std::ostringstream msg;
    msg << who << ": M = " << half_string(m.twice())
        << " is out of range for the J = " << half_string(total.twice()) << " sector";
    throw DomainError(msg.str());
  }
}

bool ket_exists(Spin j, int m_twice) {
  return std::abs(m_twice) <= j.twice();
}

// A coefficient on a product ket that does not exist must vanish exactly;
// anything else is an indexing bug.
void require_zero_outside(bool exists, double coefficient, const char* who) {
  if (!exists && coefficient != 0.0) {
    throw std::logic_error(std::string(who) +
                           ": nonzero coefficient on a nonexistent product ket");
  }
}

}  // namespace

Spin Spin::from_twice(int twice_value) {
  if (twice_value < 0) {
    throw DomainError("spin must be non-negative, got twice-value " +
                      std::to_string(twice_value));
  }
  return Spin(twice_value);
}

Spin coupled_spin(Spin j, HalfBranch branch) {
  if (branch == HalfBranch::plus) return Spin::from_twice(j.twice() + 1);
  if (j.twice() < 1) throw DomainError("J = j - 1/2 requires j >= 1/2");
  return Spin::from_twice(j.twice() - 1);
}

Spin coupled_spin(Spin j, SpinOneSector sector) {
  switch (sector) {
    case SpinOneSector::raised:
      return Spin::from_twice(j.twice() + 2);
    case SpinOneSector::same:
      if (j.twice() < 1) throw DomainError("J = j with a spin-1 partner requires j >= 1/2");
      return j;
    case SpinOneSector::lowered:
      if (j.twice() < 2) throw DomainError("J = j - 1 requires j >= 1");
      return Spin::from_twice(j.twice() - 2);
  }
  throw std::logic_error("unknown SpinOneSector");
}

SpinHalfCg cg_spin_half(Spin j, MagneticIndex m, HalfBranch branch) {
  const Spin total = coupled_spin(j, branch);
  require_in_sector(total, m, "cg_spin_half");

  // (j + 1/2 +- m) / (2j + 1) = (2j + 1 +- 2m) / (2 (2j + 1))
  const long long jt = j.twice();
  const long long mt = m.twice();
  const long long den = 2 * (jt + 1);
  SpinHalfCg cg{};
  if (branch == HalfBranch::plus) {
    cg.a = sqrt_ratio(jt + 1 + mt, den);
    cg.b = sqrt_ratio(jt + 1 - mt, den);
  } else {
    cg.a = -sqrt_ratio(jt + 1 - mt, den);
    cg.b = sqrt_ratio(jt + 1 + mt, den);
  }
  require_zero_outside(ket_exists(j, m.twice() - 1), cg.a, "cg_spin_half");
  require_zero_outside(ket_exists(j, m.twice() + 1), cg.b, "cg_spin_half");
  return cg;
}

SpinOneCg cg_spin_one(Spin j, MagneticIndex m, SpinOneSector sector) {
  const Spin total = coupled_spin(j, sector);
  require_in_sector(total, m, "cg_spin_one");

  const long long jt = j.twice();
  const long long mt = m.twice();
  SpinOneCg cg{};
  switch (sector) {
    case SpinOneSector::raised: {
      const long long den = (jt + 1) * (jt + 2);
      cg.x1 = sqrt_ratio((jt + mt) * (jt + mt + 2), 4 * den);
      cg.x2 = sqrt_ratio((jt - mt + 2) * (jt + mt + 2), 2 * den);
      cg.x3 = sqrt_ratio((jt - mt) * (jt - mt + 2), 4 * den);
      break;
    }
    case SpinOneSector::same: {
      const long long den = 2 * jt * (jt + 2);
      cg.x1 = -sqrt_ratio((jt + mt) * (jt - mt + 2), den);
      cg.x2 = static_cast<double>(mt) / std::sqrt(static_cast<double>(jt * (jt + 2)));
      cg.x3 = sqrt_ratio((jt - mt) * (jt + mt + 2), den);
      break;
    }
    case SpinOneSector::lowered: {
      const long long den = jt * (jt + 1);
      cg.x1 = sqrt_ratio((jt - mt) * (jt - mt + 2), 4 * den);
      cg.x2 = -sqrt_ratio((jt - mt) * (jt + mt), 2 * den);
      cg.x3 = sqrt_ratio((jt + mt) * (jt + mt + 2), 4 * den);
      break;
    }
  }
  require_zero_outside(ket_exists(j, m.twice() - 2), cg.x1, "cg_spin_one");
  require_zero_outside(ket_exists(j, m.twice()), cg.x2, "cg_spin_one");
  require_zero_outside(ket_exists(j, m.twice() + 2), cg.x3, "cg_spin_one");
  return cg;
}

std::vector<double> CoupledVector::dense() const {
  std::vector<double> out(product_dim(j1, j2), 0.0);
  for (const auto& [index, amplitude] : amplitudes) out[index] = amplitude;
  return out;
}

std::size_t product_dim(Spin j1, Spin j2) { return j1.dim() * j2.dim(); }

std::size_t product_index(Spin j1, MagneticIndex m1, Spin j2, MagneticIndex m2) {
  const auto row = static_cast<std::size_t>((j1.twice() - m1.twice()) / 2);
  const auto col = static_cast<std::size_t>((j2.twice() - m2.twice()) / 2);
  return row * j2.dim() + col;
}

bool triangle_allowed(Spin j1, Spin j2, Spin total) {
  const int lo = std::abs(j1.twice() - j2.twice());
  const int hi = j1.twice() + j2.twice();
  return total.twice() >= lo && total.twice() <= hi && (hi - total.twice()) % 2 == 0;
}

std::vector<Spin> allowed_totals(Spin j1, Spin j2) {
  std::vector<Spin> out;
  for (int t = std::abs(j1.twice() - j2.twice()); t <= j1.twice() + j2.twice(); t += 2)
    out.push_back(Spin::from_twice(t));
  return out;
}

namespace {

void require_triangle(Spin j1, Spin j2, Spin total, const char* who) {
  if (!triangle_allowed(j1, j2, total)) {
    std::ostringstream msg;
    msg << who << ": J = " << half_string(total.twice())
        << " violates the triangle rule for j1 = " << half_string(j1.twice())
        << ", j2 = " << half_string(j2.twice());
    throw DomainError(msg.str());
  }
}

}  // namespace

CoupledVector coupled_vector(Spin j1, Spin j2, Spin total, MagneticIndex m) {
  require_triangle(j1, j2, total, "coupled_vector");
  require_in_sector(total, m, "coupled_vector");

  CoupledVector out{j1, j2, total, m, {}};
  auto place = [&](int m1_twice, int m2_twice, double amplitude) {
    if (!ket_exists(j1, m1_twice)) return;
    out.amplitudes.push_back(
        {product_index(j1, MagneticIndex(m1_twice), j2, MagneticIndex(m2_twice)),
         amplitude});
  };

  if (j2 == Spin::half()) {
    const auto branch =
        total.twice() > j1.twice() ? HalfBranch::plus : HalfBranch::minus;
    const auto cg = cg_spin_half(j1, m, branch);
    place(m.twice() - 1, 1, cg.a);
    place(m.twice() + 1, -1, cg.b);
  } else if (j2 == Spin::one()) {
    const int shift = total.twice() - j1.twice();
    const auto sector = shift > 0   ? SpinOneSector::raised
                        : shift < 0 ? SpinOneSector::lowered
                                    : SpinOneSector::same;
    const auto cg = cg_spin_one(j1, m, sector);
    place(m.twice() - 2, 2, cg.x1);
    place(m.twice(), 0, cg.x2);
    place(m.twice() + 2, -2, cg.x3);
  } else {
    throw DomainError("coupled_vector: j2 must be 1/2 or 1, got " +
                      half_string(j2.twice()));
  }
  return out;
}

linalg::HermitianMatrix projector(Spin j1, Spin j2, Spin total) {
  require_triangle(j1, j2, total, "projector");
  linalg::ComplexMatrix p(product_dim(j1, j2));
  for (int mt = -total.twice(); mt <= total.twice(); mt += 2) {
    const auto v = coupled_vector(j1, j2, total, MagneticIndex(mt));
    for (const auto& row : v.amplitudes)
      for (const auto& col : v.amplitudes)
        p(row.index, col.index) += row.amplitude * col.amplitude;
  }
  return linalg::HermitianMatrix(std::move(p));
}

std::array<linalg::HermitianMatrix, 3> spin_operators(Spin j) {
  const std::size_t d = j.dim();
  const double jj = j.value() * (j.value() + 1.0);
  linalg::ComplexMatrix sx(d), sy(d), sz(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double m = j.value() - static_cast<double>(k);
    sz(k, k) = m;
    if (k == 0) continue;
    // S+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits at index k-1.
    const double raise = std::sqrt(std::max(0.0, jj - m * (m + 1.0)));
    sx(k - 1, k) = 0.5 * raise;
    sx(k, k - 1) = 0.5 * raise;
    sy(k - 1, k) = linalg::Complex(0.0, -0.5 * raise);
    sy(k, k - 1) = linalg::Complex(0.0, 0.5 * raise);
  }
  return {linalg::HermitianMatrix(std::move(sx)), linalg::HermitianMatrix(std::move(sy)),
          linalg::HermitianMatrix(std::move(sz))};
}

}  // namespace su2lqu::angmom

#include "states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"

namespace su2lqu::states {

namespace {

using linalg::ComplexMatrix;
using linalg::HermitianMatrix;

std::string half_string(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

// Values within the simplex tolerance below 0 are round-off; clamp them.
double clamp_probability(double p, const char* name) {
  if (!std::isfinite(p)) {
    throw DomainError(std::string(name) + " must be a finite number");
  }
  if (p < -kSimplexTolerance) {
    std::ostringstream msg;
    msg << name << " must be >= 0 (got " << p << ")";
    throw DomainError(msg.str());
  }
  return std::max(p, 0.0);
}

// sum_J f(J) Pi_J, accumulated straight from the sparse coupled vectors.
HermitianMatrix spectral_sum(const SU2InvariantState& s,
                             const std::function<double(Spin, double)>& weight) {
  ComplexMatrix out(s.dim());
  for (const auto& [total_twice, p] : s.sector_probs()) {
    const Spin total = Spin::from_twice(total_twice);
    const double w = weight(total, p);
    if (w == 0.0) continue;
    for (int mt = -total_twice; mt <= total_twice; mt += 2) {
      const auto v = angmom::coupled_vector(s.jA(), s.jB(), total, MagneticIndex(mt));
      for (const auto& row : v.amplitudes)
        for (const auto& col : v.amplitudes)
          out(row.index, col.index) += w * row.amplitude * col.amplitude;
    }
  }
  return HermitianMatrix(std::move(out));
}

void require_local_m(Spin j, MagneticIndex m, const char* who) {
  if (!m.valid_for(j)) {
    std::ostringstream msg;
    msg << who << ": m = " << half_string(m.twice()) << " is out of range for j = "
        << half_string(j.twice());
    throw DomainError(msg.str());
  }
}

}  // namespace

SU2InvariantState::SU2InvariantState(Spin jA, Spin jB, std::map<int, double> sector_probs)
    : jA_(jA), jB_(jB), probs_(std::move(sector_probs)) {
  if (jB_ != Spin::half() && jB_ != Spin::one()) {
    throw DomainError("SU2InvariantState: jB must be 1/2 or 1, got " +
                      half_string(jB_.twice()));
  }
  const auto totals = angmom::allowed_totals(jA_, jB_);
  if (totals.size() != probs_.size()) {
    throw DomainError("SU2InvariantState: expected " + std::to_string(totals.size()) +
                      " sector probabilities, got " + std::to_string(probs_.size()));
  }
  double sum = 0.0;
  for (const Spin total : totals) {
    auto it = probs_.find(total.twice());
    if (it == probs_.end()) {
      throw DomainError("SU2InvariantState: missing probability for J = " +
                        half_string(total.twice()));
    }
    it->second = clamp_probability(it->second, "sector probability");
    sum += it->second;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    std::ostringstream msg;
    msg << "SU2InvariantState: sector probabilities must sum to 1 (got " << sum << ")";
    throw DomainError(msg.str());
  }
}

double SU2InvariantState::probability(Spin total) const {
  const auto it = probs_.find(total.twice());
  if (it == probs_.end()) {
    throw DomainError("no sector J = " + half_string(total.twice()) + " in this state");
  }
  return it->second;
}

SU2InvariantState build_state_spin_half(Spin j, double p) {
  if (j.twice() < 1) throw DomainError("spin-1/2 partner state requires j >= 1/2");
  p = clamp_probability(p, "P");
  if (p > 1.0 + kSimplexTolerance) {
    std::ostringstream msg;
    msg << "P must be <= 1 (got " << p << ")";
    throw DomainError(msg.str());
  }
  p = std::min(p, 1.0);
  return SU2InvariantState(j, Spin::half(),
                           {{j.twice() - 1, p}, {j.twice() + 1, 1.0 - p}});
}

SU2InvariantState build_state_spin_one(Spin j, double p, double q) {
  if (j.twice() < 2) throw DomainError("spin-1 partner state requires j >= 1");
  p = clamp_probability(p, "P");
  q = clamp_probability(q, "Q");
  const double rest = 1.0 - p - q;
  if (rest < -kSimplexTolerance) {
    std::ostringstream msg;
    msg << "P + Q must be <= 1 (got " << p + q << ")";
    throw DomainError(msg.str());
  }
  return SU2InvariantState(
      j, Spin::one(),
      {{j.twice() - 2, p}, {j.twice(), q}, {j.twice() + 2, std::max(rest, 0.0)}});
}

HermitianMatrix to_density_matrix(const SU2InvariantState& s) {
  return spectral_sum(s, [](Spin total, double p) {
    return p / static_cast<double>(total.dim());
  });
}

HermitianMatrix sqrt_density_matrix(const SU2InvariantState& s) {
  return spectral_sum(s, [](Spin total, double p) {
    return std::sqrt(p / static_cast<double>(total.dim()));
  });
}

double sector_probability(const HermitianMatrix& rho, Spin jA, Spin jB, Spin total) {
  if (rho.dim() != angmom::product_dim(jA, jB)) {
    throw DomainError("sector_probability: dimension mismatch");
  }
  linalg::Complex t = 0.0;
  for (int mt = -total.twice(); mt <= total.twice(); mt += 2) {
    const auto v = angmom::coupled_vector(jA, jB, total, MagneticIndex(mt));
    for (const auto& row : v.amplitudes)
      for (const auto& col : v.amplitudes)
        t += row.amplitude * rho(row.index, col.index) * col.amplitude;
  }
  return t.real();
}

SpinHalfCoefficients spin_half_coefficients(Spin j, MagneticIndex m, double p) {
  require_local_m(j, m, "spin_half_coefficients");
  p = build_state_spin_half(j, p).probability(Spin::from_twice(j.twice() - 1));
  const double jv = j.value();
  const double mv = m.value();
  const double lower = p / (2.0 * jv);                  // J = j - 1/2 weight
  const double upper = (1.0 - p) / (2.0 * (jv + 1.0));  // J = j + 1/2 weight
  const double norm = 2.0 * jv + 1.0;
  SpinHalfCoefficients c{};
  c.u = lower * ((jv - mv) / norm) + upper * ((jv + mv + 1.0) / norm);
  c.v = lower * ((jv + mv) / norm) + upper * ((jv - mv + 1.0) / norm);
  c.w = -std::sqrt(std::max(0.0, (jv - mv) * (jv + mv + 1.0))) / norm * (lower - upper);
  return c;
}

HermitianMatrix density_from_spin_half_coefficients(Spin j, double p) {
  const Spin half = Spin::half();
  ComplexMatrix rho(angmom::product_dim(j, half));
  const MagneticIndex up(1), down(-1);
  for (int mt = j.twice(); mt >= -j.twice(); mt -= 2) {
    const MagneticIndex m(mt);
    const auto c = spin_half_coefficients(j, m, p);
    const auto m_up = angmom::product_index(j, m, half, up);
    rho(m_up, m_up) = c.u;
    const auto m_down = angmom::product_index(j, m, half, down);
    rho(m_down, m_down) = c.v;
    if (mt == j.twice()) {
      if (c.w != 0.0) throw std::logic_error("w must vanish at m = j");
      continue;
    }
    const auto next_down = angmom::product_index(j, MagneticIndex(mt + 2), half, down);
    rho(m_up, next_down) = c.w;
    rho(next_down, m_up) = c.w;
  }
  return HermitianMatrix(std::move(rho));
}

SpinOneSqrtCoefficients spin_one_sqrt_coefficients(Spin j, MagneticIndex m, double p,
                                                   double q) {
  if (j.twice() < 2) throw DomainError("spin_one_sqrt_coefficients: requires j >= 1");
  require_local_m(Spin::from_twice(j.twice() + 2), m, "spin_one_sqrt_coefficients");
  const auto state = build_state_spin_one(j, p, q);
  p = state.probability(Spin::from_twice(j.twice() - 2));
  q = state.probability(j);
  const double rest = state.probability(Spin::from_twice(j.twice() + 2));
  const double jv = j.value();

  struct Term {
    angmom::SpinOneSector sector;
    double weight;
  };
  const Term terms[] = {
      {angmom::SpinOneSector::lowered, std::sqrt(p / (2.0 * jv - 1.0))},
      {angmom::SpinOneSector::same, std::sqrt(q / (2.0 * jv + 1.0))},
      {angmom::SpinOneSector::raised, std::sqrt(rest / (2.0 * jv + 3.0))},
  };

  SpinOneSqrtCoefficients c{};
  for (const auto& [sector, w] : terms) {
    if (!m.valid_for(angmom::coupled_spin(j, sector))) continue;
    const auto cg = angmom::cg_spin_one(j, m, sector);
    c.v1 += w * cg.x1 * cg.x1;
    c.v2 += w * cg.x2 * cg.x2;
    c.v3 += w * cg.x3 * cg.x3;
    c.u1 += w * cg.x1 * cg.x2;
    c.u2 += w * cg.x3 * cg.x2;
    c.u3 += w * cg.x1 * cg.x3;
  }
  return c;
}

HermitianMatrix sqrt_from_spin_one_coefficients(Spin j, double p, double q) {
  const Spin one = Spin::one();
  ComplexMatrix out(angmom::product_dim(j, one));
  const MagneticIndex plus(2), zero(0), minus(-2);

  auto index = [&](int m_twice, MagneticIndex mb) -> std::optional<std::size_t> {
    if (std::abs(m_twice) > j.twice()) return std::nullopt;
    return angmom::product_index(j, MagneticIndex(m_twice), one, mb);
  };
  auto put_diagonal = [&](std::optional<std::size_t> at, double value) {
    if (!at) {
      if (value != 0.0) throw std::logic_error("nonzero weight on a nonexistent ket");
      return;
    }
    out(*at, *at) = value;
  };
  auto put_pair = [&](std::optional<std::size_t> a, std::optional<std::size_t> b,
                      double value) {
    if (!a || !b) {
      if (value != 0.0) throw std::logic_error("nonzero weight on a nonexistent ket");
      return;
    }
    out(*a, *b) = value;
    out(*b, *a) = value;
  };

  const int top = j.twice() + 2;
  for (int mt = -top; mt <= top; mt += 2) {
    const auto c = spin_one_sqrt_coefficients(j, MagneticIndex(mt), p, q);
    const auto k1 = index(mt - 2, plus);  // |M-1> (x) |1>
    const auto k2 = index(mt, zero);      // |M>   (x) |0>
    const auto k3 = index(mt + 2, minus); // |M+1> (x) |-1>
    put_diagonal(k1, c.v1);
    put_diagonal(k2, c.v2);
    put_diagonal(k3, c.v3);
    put_pair(k1, k2, c.u1);
    put_pair(k3, k2, c.u2);
    put_pair(k1, k3, c.u3);
  }
  return HermitianMatrix(std::move(out));
}

double check_su2_invariance(const HermitianMatrix& rho, Spin j1, Spin j2) {
  if (rho.dim() != angmom::product_dim(j1, j2)) {
    std::ostringstream msg;
    msg << "check_su2_invariance: rho has dimension " << rho.dim() << ", expected "
        << angmom::product_dim(j1, j2);
    throw DomainError(msg.str());
  }
  const auto s1 = angmom::spin_operators(j1);
  const auto s2 = angmom::spin_operators(j2);
  const auto id1 = ComplexMatrix::identity(j1.dim());
  const auto id2 = ComplexMatrix::identity(j2.dim());
  double worst = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto total = linalg::kron(s1[k].matrix(), id2) + linalg::kron(id1, s2[k].matrix());
    worst = std::max(worst, linalg::commutator(rho.matrix(), total).max_abs());
  }
  return worst;
}

}  // namespace su2lqu::states

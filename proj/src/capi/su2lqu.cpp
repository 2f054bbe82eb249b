#include "su2lqu/su2lqu.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "errors.hpp"
#include "lqu.hpp"
#include "states.hpp"

struct su2lqu_state {
  su2lqu::states::SU2InvariantState state;
};

namespace {

using su2lqu::angmom::Spin;
namespace linalg = su2lqu::linalg;
namespace states = su2lqu::states;
namespace lqu = su2lqu::lqu;

thread_local std::string last_error;

su2lqu_status fail(su2lqu_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class Body>
su2lqu_status guarded(Body&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const su2lqu::DomainError& e) {
    return fail(SU2LQU_ERR_DOMAIN, e.what());
  } catch (const su2lqu::NumericalError& e) {
    return fail(SU2LQU_ERR_NUMERIC, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SU2LQU_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SU2LQU_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SU2LQU_ERR_INTERNAL, "unknown error");
  }
}

su2lqu_status null_argument(const char* who) {
  return fail(SU2LQU_ERR_ARGUMENT, std::string(who) + ": null argument");
}

su2lqu_status copy_matrix(const linalg::ComplexMatrix& m, double* re, double* im,
                          size_t capacity) {
  const size_t n = m.dim() * m.dim();
  if (capacity < n) {
    return fail(SU2LQU_ERR_ARGUMENT, "matrix buffer too small: need " + std::to_string(n) +
                                         " entries, got " + std::to_string(capacity));
  }
  const auto data = m.data();
  for (size_t i = 0; i < n; ++i) {
    re[i] = data[i].real();
    im[i] = data[i].imag();
  }
  return SU2LQU_OK;
}

}  // namespace

extern "C" {

const char* su2lqu_status_string(su2lqu_status status) {
  switch (status) {
    case SU2LQU_OK:
      return "ok";
    case SU2LQU_ERR_DOMAIN:
      return "domain error";
    case SU2LQU_ERR_NUMERIC:
      return "numerical failure";
    case SU2LQU_ERR_ARGUMENT:
      return "invalid argument";
    case SU2LQU_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* su2lqu_last_error(void) { return last_error.c_str(); }

su2lqu_status su2lqu_state_spin_half(int j_twice, double p, su2lqu_state** out) {
  if (!out) return null_argument("su2lqu_state_spin_half");
  *out = nullptr;
  return guarded([&] {
    auto s = states::build_state_spin_half(Spin::from_twice(j_twice), p);
    *out = new su2lqu_state{std::move(s)};
    return SU2LQU_OK;
  });
}

su2lqu_status su2lqu_state_spin_one(int j_twice, double p, double q, su2lqu_state** out) {
  if (!out) return null_argument("su2lqu_state_spin_one");
  *out = nullptr;
  return guarded([&] {
    auto s = states::build_state_spin_one(Spin::from_twice(j_twice), p, q);
    *out = new su2lqu_state{std::move(s)};
    return SU2LQU_OK;
  });
}

void su2lqu_state_free(su2lqu_state* state) { delete state; }

int su2lqu_state_j_twice(const su2lqu_state* state) {
  return state ? state->state.jA().twice() : -1;
}

int su2lqu_state_partner_twice(const su2lqu_state* state) {
  return state ? state->state.jB().twice() : -1;
}

size_t su2lqu_state_dim(const su2lqu_state* state) { return state ? state->state.dim() : 0; }

su2lqu_status su2lqu_density_matrix(const su2lqu_state* state, double* re, double* im,
                                    size_t capacity) {
  if (!state || !re || !im) return null_argument("su2lqu_density_matrix");
  return guarded([&] {
    return copy_matrix(states::to_density_matrix(state->state).matrix(), re, im, capacity);
  });
}

su2lqu_status su2lqu_sqrt_density_matrix(const su2lqu_state* state, double* re, double* im,
                                         size_t capacity) {
  if (!state || !re || !im) return null_argument("su2lqu_sqrt_density_matrix");
  return guarded([&] {
    return copy_matrix(states::sqrt_density_matrix(state->state).matrix(), re, im, capacity);
  });
}

su2lqu_status su2lqu_lqu_closed(const su2lqu_state* state, double* value) {
  if (!state || !value) return null_argument("su2lqu_lqu_closed");
  return guarded([&] {
    *value = lqu::lqu_closed(state->state).value;
    return SU2LQU_OK;
  });
}

su2lqu_status su2lqu_lqu_wmatrix(const su2lqu_state* state, double* value) {
  if (!state || !value) return null_argument("su2lqu_lqu_wmatrix");
  return guarded([&] {
    *value = lqu::lqu_w_matrix(state->state).value;
    return SU2LQU_OK;
  });
}

su2lqu_status su2lqu_lqu_numeric(const su2lqu_state* state, int seeds, double* value,
                                 double* direction, size_t direction_capacity,
                                 size_t* direction_len) {
  if (!state || !value) return null_argument("su2lqu_lqu_numeric");
  if (seeds <= 0) {
    return fail(SU2LQU_ERR_DOMAIN, "seeds must be positive (got " + std::to_string(seeds) + ")");
  }
  return guarded([&] {
    lqu::NumericOptions options;
    options.seeds = static_cast<std::size_t>(seeds);
    const auto result = lqu::lqu_numeric(state->state, options);
    *value = result.value;
    if (direction) {
      const auto n = result.direction->components();
      if (direction_capacity < n.size()) {
        return fail(SU2LQU_ERR_ARGUMENT, "direction buffer too small: need " +
                                             std::to_string(n.size()) + " entries");
      }
      std::copy(n.begin(), n.end(), direction);
      if (direction_len) *direction_len = n.size();
    } else if (direction_len) {
      *direction_len = result.direction->size();
    }
    return SU2LQU_OK;
  });
}

su2lqu_status su2lqu_stationary_values(const su2lqu_state* state, double* branch1,
                                       double* branch2) {
  if (!state || !branch1 || !branch2) return null_argument("su2lqu_stationary_values");
  return guarded([&] {
    const auto v = lqu::stationary_direction_values(state->state);
    *branch1 = v.branch1;
    *branch2 = v.branch2;
    return SU2LQU_OK;
  });
}

su2lqu_status su2lqu_validate(const su2lqu_state* state, su2lqu_validation* out) {
  if (!state || !out) return null_argument("su2lqu_validate");
  return guarded([&] {
    const auto& s = state->state;
    const auto rho = states::to_density_matrix(s);
    const auto sqrt_rho = states::sqrt_density_matrix(s);

    su2lqu_validation v{};
    v.hermiticity = linalg::hermiticity_residual(rho.matrix());
    v.trace_error = std::abs(rho.matrix().trace() - 1.0);
    const auto eig = linalg::eigh(rho);
    v.negativity = std::max(0.0, -eig.eigenvalues.front());
    v.invariance = states::check_su2_invariance(rho, s.jA(), s.jB());
    for (const auto& [total_twice, p] : s.sector_probs()) {
      const double back =
          states::sector_probability(rho, s.jA(), s.jB(), Spin::from_twice(total_twice));
      v.sector_roundtrip = std::max(v.sector_roundtrip, std::abs(back - p));
    }
    v.sqrt_square = (sqrt_rho.matrix() * sqrt_rho.matrix() - rho.matrix()).max_abs();
    v.sqrt_agreement = (linalg::matrix_sqrt_psd(rho).matrix() - sqrt_rho.matrix()).max_abs();

    const Spin j = s.jA();
    if (s.jB() == Spin::half()) {
      const double p = s.probability(Spin::from_twice(j.twice() - 1));
      v.coefficients =
          (states::density_from_spin_half_coefficients(j, p).matrix() - rho.matrix()).max_abs();
    } else {
      const double p = s.probability(Spin::from_twice(j.twice() - 2));
      const double q = s.probability(j);
      v.coefficients =
          (states::sqrt_from_spin_one_coefficients(j, p, q).matrix() - sqrt_rho.matrix())
              .max_abs();
    }
    *out = v;
    return SU2LQU_OK;
  });
}

}  // extern "C"

#ifndef SU2LQU_H
#define SU2LQU_H

/*
 * su2lqu: local quantum uncertainty of SU(2)-invariant states of a spin-j
 * (subsystem A) coupled to a spin-1/2 or spin-1 (subsystem B).
 *
 * Spins are passed as twice their value (j = 5/2 -> 5). States are opaque
 * handles created by su2lqu_state_spin_half / su2lqu_state_spin_one and
 * released with su2lqu_state_free. Every fallible call returns a status code;
 * su2lqu_last_error() gives the message of the last failure on the calling
 * thread.
 *
 * Product basis ordering for matrix dumps: |j, m> (x) |jB, m'> with m
 * descending from j, then m' descending from jB, row-major.
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(SU2LQU_BUILDING)
#    define SU2LQU_API __declspec(dllexport)
#  else
#    define SU2LQU_API __declspec(dllimport)
#  endif
#else
#  define SU2LQU_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum su2lqu_status {
  SU2LQU_OK = 0,
  SU2LQU_ERR_DOMAIN = 1,   /* invalid spin, probability, method or range */
  SU2LQU_ERR_NUMERIC = 2,  /* non-convergence or residual breach */
  SU2LQU_ERR_ARGUMENT = 3, /* null pointer or undersized buffer */
  SU2LQU_ERR_INTERNAL = 4
} su2lqu_status;

typedef struct su2lqu_state su2lqu_state;

SU2LQU_API const char* su2lqu_status_string(su2lqu_status status);
/* Message of the last failed call on this thread ("" if none). */
SU2LQU_API const char* su2lqu_last_error(void);

/* Sector weights {J = j - 1/2: p, J = j + 1/2: 1 - p}; j >= 1/2. */
SU2LQU_API su2lqu_status su2lqu_state_spin_half(int j_twice, double p,
                                                su2lqu_state** out);
/* Sector weights {J = j - 1: p, J = j: q, J = j + 1: 1 - p - q}; j >= 1. */
SU2LQU_API su2lqu_status su2lqu_state_spin_one(int j_twice, double p, double q,
                                               su2lqu_state** out);
SU2LQU_API void su2lqu_state_free(su2lqu_state* state);

SU2LQU_API int su2lqu_state_j_twice(const su2lqu_state* state);
SU2LQU_API int su2lqu_state_partner_twice(const su2lqu_state* state);
SU2LQU_API size_t su2lqu_state_dim(const su2lqu_state* state);

/* Copies rho (or sqrt(rho)) row-major into re/im, each of length dim*dim. */
SU2LQU_API su2lqu_status su2lqu_density_matrix(const su2lqu_state* state, double* re,
                                               double* im, size_t capacity);
SU2LQU_API su2lqu_status su2lqu_sqrt_density_matrix(const su2lqu_state* state,
                                                    double* re, double* im,
                                                    size_t capacity);

/* Closed formula for the state's partner. */
SU2LQU_API su2lqu_status su2lqu_lqu_closed(const su2lqu_state* state, double* value);
/* 1 - lambda_max(W); spin-1/2 partner only. */
SU2LQU_API su2lqu_status su2lqu_lqu_wmatrix(const su2lqu_state* state, double* value);
/*
 * Multi-start minimisation of the skew information over unit generator
 * coefficient vectors (3 for spin-1/2, 8 for spin-1). `direction` may be NULL;
 * otherwise it receives the minimising direction and *direction_len its length
 * (direction_capacity must be at least 8 to be safe for either partner).
 */
SU2LQU_API su2lqu_status su2lqu_lqu_numeric(const su2lqu_state* state, int seeds,
                                            double* value, double* direction,
                                            size_t direction_capacity,
                                            size_t* direction_len);

/* Skew information at the two stationary directions; spin-1 partner only. */
SU2LQU_API su2lqu_status su2lqu_stationary_values(const su2lqu_state* state,
                                                  double* branch1, double* branch2);

typedef struct su2lqu_validation {
  double hermiticity;      /* max |rho_ab - conj(rho_ba)| */
  double trace_error;      /* |Tr rho - 1| */
  double negativity;       /* max(0, -lambda_min(rho)) */
  double invariance;       /* max_k ||[rho, S_k total]||_max */
  double sector_roundtrip; /* max_J |Tr(rho Pi_J) - p_J| */
  double sqrt_square;      /* ||sqrt(rho)^2 - rho||_max */
  double sqrt_agreement;   /* ||spectral sqrt - eigen sqrt||_max */
  double coefficients;     /* product-basis coefficient route vs spectral route */
} su2lqu_validation;

SU2LQU_API su2lqu_status su2lqu_validate(const su2lqu_state* state,
                                         su2lqu_validation* out);

#ifdef __cplusplus
}
#endif

#endif /* SU2LQU_H */

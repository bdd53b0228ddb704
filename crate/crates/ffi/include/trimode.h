/* C interface for the trimode three-qubit entanglement/squeezing library. */

#ifndef TRIMODE_H
#define TRIMODE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum TrimodeStatus {
  TRIMODE_STATUS_OK = 0,
  TRIMODE_STATUS_NULL_POINTER = 1,
  TRIMODE_STATUS_INVALID_ARGUMENT = 2,
  TRIMODE_STATUS_NOT_NORMALIZED = 3,
  TRIMODE_STATUS_UNSUPPORTED_FAMILY = 4,
  TRIMODE_STATUS_INTERNAL_ERROR = 5,
} TrimodeStatus;

/**
 * Parametric state family selector.
 */
typedef enum TrimodeFamily {
  TRIMODE_FAMILY_III0 = 0,
  TRIMODE_FAMILY_III1_A = 1,
  TRIMODE_FAMILY_III1_B = 2,
  TRIMODE_FAMILY_III2 = 3,
  TRIMODE_FAMILY_III3 = 4,
  TRIMODE_FAMILY_GENERAL = 5,
} TrimodeFamily;

/**
 * Mode selector (i is the most significant qubit).
 */
typedef enum TrimodeMode {
  TRIMODE_MODE_I = 0,
  TRIMODE_MODE_J = 1,
  TRIMODE_MODE_K = 2,
} TrimodeMode;

/**
 * Opaque three-qubit pure state.
 */
typedef struct TrimodeState TrimodeState;

/**
 * Classification result. `major` is 1, 2, or 3 for types I/II/III;
 * `subtype` is 0..3 for III-n and -1 otherwise; `pattern_*` flag which
 * qubit pairs are entangled; `pivot` is 0/1/2 for modes i/j/k and -1 when
 * no pivot applies.
 */
typedef struct TrimodeClass {
  int32_t major;
  int32_t subtype;
  uint8_t pattern_ij;
  uint8_t pattern_ik;
  uint8_t pattern_jk;
  int32_t pivot;
} TrimodeClass;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build a state from 8 complex amplitudes (basis order |000> .. |111>,
 * index 4a + 2b + c). The amplitudes must be normalized.
 *
 * # Safety
 * `re` and `im` must point to 8 readable doubles; `out` must be a valid
 * location for one pointer. On success `*out` owns the state.
 */
enum TrimodeStatus trimode_state_new(const double *re, const double *im, struct TrimodeState **out);

/**
 * Build a family member from probabilities (positive square roots become
 * the amplitudes). `probs` must hold `len` entries matching the family's
 * support size and summing to 1.
 *
 * # Safety
 * `probs` must point to `len` readable doubles; `out` must be a valid
 * location for one pointer. On success `*out` owns the state.
 */
enum TrimodeStatus trimode_state_from_family(enum TrimodeFamily family,
                                             enum TrimodeMode pivot,
                                             const double *probs,
                                             size_t len,
                                             struct TrimodeState **out);

/**
 * (|000> + |111>)/sqrt(2).
 *
 * # Safety
 * `out` must be a valid location for one pointer.
 */
enum TrimodeStatus trimode_state_ghz(struct TrimodeState **out);

/**
 * (|001> + |010> + |100>)/sqrt(3).
 *
 * # Safety
 * `out` must be a valid location for one pointer.
 */
enum TrimodeStatus trimode_state_w(struct TrimodeState **out);

/**
 * Release a state created by one of the constructors. NULL is ignored.
 *
 * # Safety
 * `state` must be NULL or a pointer previously returned by a constructor
 * and not yet freed.
 */
void trimode_state_free(struct TrimodeState *state);

/**
 * All seven negativities in the order N_ij, N_ik, N_jk, N_i-jk, N_j-ik,
 * N_k-ij, N_ijk.
 *
 * # Safety
 * `state` must be a live state handle; `out` must point to 7 writable
 * doubles.
 */
enum TrimodeStatus trimode_entanglement(const struct TrimodeState *state, double *out);

/**
 * The four principal squeeze variances, numerically from operator moments,
 * in the order lambda_ij, lambda_ik, lambda_jk, lambda_ijk.
 *
 * # Safety
 * `state` must be a live state handle; `out` must point to 4 writable
 * doubles.
 */
enum TrimodeStatus trimode_squeezing(const struct TrimodeState *state, double *out);

/**
 * Closed-form principal squeeze variances of a family member described by
 * probabilities, in the order lambda_ij, lambda_ik, lambda_jk, lambda_ijk.
 * GENERAL is not supported.
 *
 * # Safety
 * `probs` must point to `len` readable doubles; `out` must point to 4
 * writable doubles.
 */
enum TrimodeStatus trimode_closed_form_squeezing(enum TrimodeFamily family,
                                                 enum TrimodeMode pivot,
                                                 const double *probs,
                                                 size_t len,
                                                 double *out);

/**
 * Classify a state at the given zero threshold (pass 0 for the default).
 *
 * # Safety
 * `state` must be a live state handle; `out` must point to a writable
 * `TrimodeClass`.
 */
enum TrimodeStatus trimode_classify(const struct TrimodeState *state,
                                    double epsilon,
                                    struct TrimodeClass *out);

/**
 * Library version as a static null-terminated string.
 */
const char *trimode_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRIMODE_H */

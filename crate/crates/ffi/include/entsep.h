#ifndef ENTSEP_H
#define ENTSEP_H

/* Generated by cbindgen from entsep-ffi. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every C-ABI call.
 */
typedef enum EntsepStatus {
  ENTSEP_STATUS_OK = 0,
  ENTSEP_STATUS_NULL_POINTER = 1,
  ENTSEP_STATUS_INVALID_ARGUMENT = 2,
  ENTSEP_STATUS_DIMENSION_ERROR = 3,
  ENTSEP_STATUS_DOMAIN_ERROR = 4,
  ENTSEP_STATUS_VALIDATION_ERROR = 5,
  ENTSEP_STATUS_NUMERICAL_ERROR = 6,
  ENTSEP_STATUS_UNSUPPORTED_DIMENSION = 7,
  ENTSEP_STATUS_INTERNAL_ERROR = 8,
} EntsepStatus;

/**
 * The four Bell states.
 */
typedef enum EntsepBell {
  ENTSEP_BELL_PSI_PLUS = 0,
  ENTSEP_BELL_PSI_MINUS = 1,
  ENTSEP_BELL_PHI_PLUS = 2,
  ENTSEP_BELL_PHI_MINUS = 3,
} EntsepBell;

/**
 * Shell labels of the dense-coding classification.
 */
typedef enum EntsepClass {
  ENTSEP_CLASS_SEP = 0,
  ENTSEP_CLASS_SEP_OR_BOUND = 1,
  ENTSEP_CLASS_PPT_ENT = 2,
  ENTSEP_CLASS_NPT_NON_DC = 3,
  ENTSEP_CLASS_DC = 4,
} EntsepClass;

/**
 * Opaque handle to a validated bipartite density matrix.
 */
typedef struct EntsepState EntsepState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *entsep_version(void);

/**
 * Builds a state from an interleaved row-major complex matrix of side
 * `d_a * d_b` (so `2 * (d_a*d_b)^2` doubles). Validates hermiticity, unit
 * trace, and positivity.
 */
enum EntsepStatus entsep_state_from_dense(const double *re_im,
                                          size_t d_a,
                                          size_t d_b,
                                          struct EntsepState **out);

/**
 * Werner state p·|ψ⁻⟩⟨ψ⁻| + (1−p)/4·I.
 */
enum EntsepStatus entsep_state_werner(double p, struct EntsepState **out);

/**
 * Projector onto one of the four Bell states.
 */
enum EntsepStatus entsep_state_bell(enum EntsepBell kind, struct EntsepState **out);

/**
 * Seeded random density matrix of the given rank (Wishart construction).
 */
enum EntsepStatus entsep_state_random(size_t d_a,
                                      size_t d_b,
                                      size_t rank,
                                      uint64_t seed,
                                      struct EntsepState **out);

/**
 * Seeded random separable state with `k` product terms (`k = 0` picks the
 * default (d_A·d_B)²).
 */
enum EntsepStatus entsep_state_random_separable(size_t d_a,
                                                size_t d_b,
                                                size_t k,
                                                uint64_t seed,
                                                struct EntsepState **out);

/**
 * Frees a state handle. Null is a no-op.
 */
void entsep_state_free(struct EntsepState *state);

/**
 * Bipartite dimensions of a state.
 */
enum EntsepStatus entsep_state_dims(const struct EntsepState *state,
                                    size_t *out_d_a,
                                    size_t *out_d_b);

/**
 * Copies the density matrix into an interleaved buffer of `len` doubles;
 * `len` must be exactly `2 * (d_a*d_b)^2`.
 */
enum EntsepStatus entsep_state_copy_dense(const struct EntsepState *state, double *buf, size_t len);

/**
 * Partial transposition criterion: margin is the smallest eigenvalue of
 * ρ^{T_A}; `violated` certifies entanglement.
 */
enum EntsepStatus entsep_ppt_test(const struct EntsepState *state,
                                  double tol,
                                  double *out_margin,
                                  bool *out_violated);

/**
 * Majorization criterion; margin is the most negative partial-sum gap.
 */
enum EntsepStatus entsep_majorization_test(const struct EntsepState *state,
                                           double tol,
                                           double *out_margin,
                                           bool *out_violated);

/**
 * Entropy criterion; margin is min(S(ρ)−S(ρ_A), S(ρ)−S(ρ_B)) in bits.
 */
enum EntsepStatus entsep_entropy_test(const struct EntsepState *state,
                                      double tol,
                                      double *out_margin,
                                      bool *out_violated);

/**
 * Von Neumann entropy of the state, in bits.
 */
enum EntsepStatus entsep_entropy(const struct EntsepState *state, double *out_bits);

/**
 * Dense-coding figures: raw one-capacity log₂d_A + S(ρ_B) − S(ρ), the
 * reported capacity floored at log₂d_A, and the advantage S(ρ_B) − S(ρ).
 * Null out-pointers are skipped.
 */
enum EntsepStatus entsep_dc_capacity(const struct EntsepState *state,
                                     double *out_one_capacity,
                                     double *out_reported,
                                     double *out_advantage);

/**
 * Whether the state is dense-codeable.
 */
enum EntsepStatus entsep_is_dc(const struct EntsepState *state, bool *out);

/**
 * Maximizes the CHSH violation of a two-qubit state; `restarts = 0` means
 * the default 32.
 */
enum EntsepStatus entsep_chsh_maximize(const struct EntsepState *state,
                                       size_t restarts,
                                       uint64_t seed,
                                       double *out_value);

/**
 * Assigns the dense-coding shell label.
 */
enum EntsepStatus entsep_classify(const struct EntsepState *state, enum EntsepClass *out_class);

/**
 * Static name of a class label ("SEP", "SEP_or_BOUND", "PPT_ENT",
 * "NPT_NONDC", "DC").
 */
const char *entsep_class_name(enum EntsepClass class_);

/**
 * Full classification report as a JSON string (criterion margins, capacity,
 * label). Free with [`entsep_string_free`].
 */
enum EntsepStatus entsep_classify_json(const struct EntsepState *state, char **out);

/**
 * Frees a string returned by this library. Null is a no-op.
 */
void entsep_string_free(char *s);

/**
 * Schmidt coefficients of a pure state given as an interleaved amplitude
 * buffer of `2 * d_a * d_b` doubles. Writes up to `cap` coefficients and
 * the actual count.
 */
enum EntsepStatus entsep_schmidt(const double *amps_re_im,
                                 size_t d_a,
                                 size_t d_b,
                                 double cutoff,
                                 double *out_coeffs,
                                 size_t cap,
                                 size_t *out_count);

/**
 * One round of the ideal dense-coding protocol on a fresh singlet;
 * `message` in 0..=3 decodes back to itself.
 */
enum EntsepStatus entsep_simulate_protocol(size_t message, size_t *out_decoded);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENTSEP_H */

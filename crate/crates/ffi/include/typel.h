#ifndef TYPEL_H
#define TYPEL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TypelStatus {
  TYPEL_STATUS_OK = 0,
  TYPEL_STATUS_NULL_POINTER = 1,
  TYPEL_STATUS_INVALID_ARGUMENT = 2,
  TYPEL_STATUS_PARSE = 3,
  TYPEL_STATUS_CAP_EXCEEDED = 4,
  TYPEL_STATUS_PRECISION_EXHAUSTED = 5,
  TYPEL_STATUS_INTERNAL = 6,
} TypelStatus;

typedef enum TypelOverall {
  TYPEL_OVERALL_CERTIFIED = 0,
  TYPEL_OVERALL_REFUTED = 1,
  TYPEL_OVERALL_INCONCLUSIVE = 2,
} TypelOverall;

typedef enum TypelVerdict {
  TYPEL_VERDICT_HOLDS = 0,
  TYPEL_VERDICT_FAILS = 1,
  TYPEL_VERDICT_NA = 2,
  TYPEL_VERDICT_INCONCLUSIVE = 3,
} TypelVerdict;

/**
 * Symmetric distribution on `{-n, ..., n}`.
 */
typedef struct TypelLattice TypelLattice;

/**
 * Exact even moments `m_0, m_2, ..., m_{2N}`.
 */
typedef struct TypelMoments TypelMoments;

/**
 * Finite ferromagnetic spin system.
 */
typedef struct TypelSpinSystem TypelSpinSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the next call.
 */
const char *typel_last_error(void);

/**
 * Static version string.
 */
const char *typel_version(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void typel_string_free(char *s);

/**
 * Builds a lattice distribution from `p_0, ..., p_n` given as rational strings.
 *
 * # Safety
 * `p` points to `len` NUL-terminated strings; `out` is writable.
 */
enum TypelStatus typel_lattice_new(const char *const *p, size_t len, struct TypelLattice **out);

/**
 * # Safety
 * `d` must come from [`typel_lattice_new`] or be null.
 */
void typel_lattice_free(struct TypelLattice *d);

/**
 * Combined unit-circle certificate for a lattice distribution.
 *
 * # Safety
 * `d` is a valid handle; `alphas` points to `n_alpha` strings; `out` is writable.
 */
enum TypelStatus typel_classify(const struct TypelLattice *d,
                                const char *const *alphas,
                                size_t n_alpha,
                                double tol,
                                enum TypelOverall *out);

/**
 * Even moments of a lattice distribution up to order `2 n_max`.
 *
 * # Safety
 * `d` is a valid handle; `out` is writable.
 */
enum TypelStatus typel_moments_lattice(const struct TypelLattice *d,
                                       size_t n_max,
                                       struct TypelMoments **out);

/**
 * Even moments of the law with MGF `e^{a z^2/2} ∏ (1 + b_j z^2)`.
 *
 * # Safety
 * `a` is a NUL-terminated string, `b` points to `nb` strings; `out` is writable.
 */
enum TypelStatus typel_moments_gausspoly(const char *a,
                                         const char *const *b,
                                         size_t nb,
                                         size_t n_max,
                                         struct TypelMoments **out);

/**
 * # Safety
 * `m` must come from this library or be null.
 */
void typel_moments_free(struct TypelMoments *m);

/**
 * Number of stored even moments, `N + 1`.
 *
 * # Safety
 * `m` is a valid handle or null (returns 0).
 */
size_t typel_moments_len(const struct TypelMoments *m);

/**
 * `r_n` as a rational string.
 *
 * # Safety
 * `m` is a valid handle; `out` is writable.
 */
enum TypelStatus typel_moments_r(const struct TypelMoments *m, size_t n, char **out);

/**
 * Log-concavity of the r-sequence. `fail_index` receives the first failing index, or `SIZE_MAX`.
 *
 * # Safety
 * `m` is a valid handle; `verdict` is writable; `fail_index` may be null.
 */
enum TypelStatus typel_r_logconcave(const struct TypelMoments *m,
                                    enum TypelVerdict *verdict,
                                    size_t *fail_index);

/**
 * Exact moment comparison `r_{q/2}^{p/2} <= r_{p/2}^{q/2}`; `slack` (optional) receives the difference.
 *
 * # Safety
 * `m` is a valid handle; `verdict` is writable; `slack` may be null.
 */
enum TypelStatus typel_moment_comparison(const struct TypelMoments *m,
                                         uint32_t p,
                                         uint32_t q,
                                         enum TypelVerdict *verdict,
                                         char **slack);

/**
 * Parses a `spin-system` JSON spec.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is writable.
 */
enum TypelStatus typel_spin_system_from_json(const char *json, struct TypelSpinSystem **out);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void typel_spin_system_free(struct TypelSpinSystem *s);

/**
 * Moment comparison for `Σ a_j X_j` at `digits` significant digits. The
 * spec's weights are used, or all ones.
 *
 * # Safety
 * `s` is a valid handle; `verdict` is writable.
 */
enum TypelStatus typel_ferro_comparison(const struct TypelSpinSystem *s,
                                        uint32_t p,
                                        uint32_t q,
                                        uint32_t digits,
                                        enum TypelVerdict *verdict);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TYPEL_H */

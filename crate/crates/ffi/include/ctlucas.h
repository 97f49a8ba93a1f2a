#ifndef CTLUCAS_H
#define CTLUCAS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes shared by every function.
 */
typedef enum CtlStatus {
  CTL_STATUS_OK = 0,
  /**
   * The check ran and found a counterexample; the report is still returned.
   */
  CTL_STATUS_COUNTEREXAMPLE = 1,
  CTL_STATUS_NULL_POINTER = 2,
  CTL_STATUS_INVALID_UTF8 = 3,
  CTL_STATUS_PARSE = 4,
  CTL_STATUS_INVALID_ARGUMENT = 5,
  CTL_STATUS_HYPOTHESIS = 6,
  CTL_STATUS_LIMIT_EXCEEDED = 7,
  CTL_STATUS_BUFFER_TOO_SMALL = 8,
  CTL_STATUS_INTERNAL = 9,
} CtlStatus;

/**
 * A Laurent polynomial with integer coefficients.
 */
typedef struct CtlPoly CtlPoly;

/**
 * A linear p-scheme.
 */
typedef struct CtlScheme CtlScheme;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next call into the library from the same thread.
 */
const char *ctl_last_error_message(void);

/**
 * Parses `text` over the comma-separated variable list `vars`.
 *
 * # Safety
 * `text` and `vars` must be NUL-terminated strings; `out` must be writable.
 */
enum CtlStatus ctl_poly_parse(const char *text, const char *vars, struct CtlPoly **out);

/**
 * # Safety
 * `poly` must come from [`ctl_poly_parse`] and not be freed twice. NULL is
 * ignored.
 */
void ctl_poly_free(struct CtlPoly *poly);

/**
 * Canonical text form (standard variable names), or NULL on failure.
 *
 * # Safety
 * `poly` must be a live handle.
 */
char *ctl_poly_to_string(const struct CtlPoly *poly);

/**
 * # Safety
 * `s` must be a string returned by this library, or NULL.
 */
void ctl_string_free(char *s);

/**
 * Whether the origin is the only lattice point in the interior of the
 * Newton polytope of `poly`.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be writable.
 */
enum CtlStatus ctl_poly_origin_only_interior(const struct CtlPoly *poly, bool *out);

/**
 * Writes `ct[P^n Q] mod prime^r` for `n = 0..len` into `out`. `q` may be
 * NULL for `Q = 1`.
 *
 * # Safety
 * `p` (and `q` if non-NULL) must be live handles; `out` must hold `len`
 * values.
 */
enum CtlStatus ctl_ct_sequence_mod(const struct CtlPoly *p,
                                   const struct CtlPoly *q,
                                   uint64_t prime,
                                   uint32_t r,
                                   uint64_t *out,
                                   size_t len);

/**
 * Lucas check for `ct[P^n Q]` up to `n_max`. On `Ok` or `Counterexample`
 * the JSON report is stored in `out_json`.
 *
 * # Safety
 * Handles must be live (`q` may be NULL); `out_json` must be writable.
 */
enum CtlStatus ctl_lucas_verify(const struct CtlPoly *p,
                                const struct CtlPoly *q,
                                uint64_t prime,
                                uint64_t n_max,
                                char **out_json);

/**
 * Generalized Lucas check; same conventions as [`ctl_lucas_verify`].
 *
 * # Safety
 * Handles must be live (`q` may be NULL); `out_json` must be writable.
 */
enum CtlStatus ctl_glc_verify(const struct CtlPoly *p,
                              const struct CtlPoly *q,
                              uint64_t prime,
                              uint64_t n_max,
                              char **out_json);

/**
 * Builds a scheme for `ct[P^n Q] mod prime^r`. `max_states = 0` selects the
 * default bound.
 *
 * # Safety
 * Handles must be live (`q` may be NULL); `out` must be writable.
 */
enum CtlStatus ctl_scheme_synthesize(const struct CtlPoly *p,
                                     const struct CtlPoly *q,
                                     uint64_t prime,
                                     uint32_t r,
                                     size_t max_states,
                                     struct CtlScheme **out);

/**
 * Loads a scheme from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum CtlStatus ctl_scheme_from_json(const char *json, struct CtlScheme **out);

/**
 * # Safety
 * `scheme` must be a live handle; `out` must be writable.
 */
enum CtlStatus ctl_scheme_evaluate(const struct CtlScheme *scheme, uint64_t n, uint64_t *out);

/**
 * Number of states, or 0 for NULL.
 *
 * # Safety
 * `scheme` must be a live handle or NULL.
 */
size_t ctl_scheme_states(const struct CtlScheme *scheme);

/**
 * JSON form of the scheme, or NULL on failure.
 *
 * # Safety
 * `scheme` must be a live handle.
 */
char *ctl_scheme_to_json(const struct CtlScheme *scheme);

/**
 * # Safety
 * `scheme` must come from this library and not be freed twice. NULL is
 * ignored.
 */
void ctl_scheme_free(struct CtlScheme *scheme);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CTLUCAS_H */

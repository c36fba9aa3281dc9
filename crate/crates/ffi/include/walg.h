/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef WALG_H
#define WALG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every function.
 */
typedef enum WalgStatus {
  WALG_STATUS_OK = 0,
  WALG_STATUS_NULL_POINTER = 1,
  WALG_STATUS_INVALID_ARGUMENT = 2,
  WALG_STATUS_TOO_LARGE = 3,
  WALG_STATUS_UNSUPPORTED = 4,
  WALG_STATUS_PARSE = 5,
  WALG_STATUS_WEIGHT_BOUND = 6,
  WALG_STATUS_INTERNAL = 7,
} WalgStatus;

/**
 * Output syntax for rendered elements.
 */
typedef enum WalgFormat {
  WALG_FORMAT_TEXT = 0,
  WALG_FORMAT_LATEX = 1,
  WALG_FORMAT_JSON = 2,
} WalgFormat;

/**
 * Verification suites over a generator set.
 */
typedef enum WalgSuite {
  WALG_SUITE_RECONSTRUCTION = 0,
  WALG_SUITE_CLOSURE = 1,
  WALG_SUITE_MIURA = 2,
  WALG_SUITE_LEADING = 3,
} WalgSuite;

/**
 * All `W_ij^(r)` of one shape.
 */
typedef struct WalgGenerators WalgGenerators;

/**
 * A state of the vertex algebra `V^k(b)` for a fixed shape.
 */
typedef struct WalgState WalgState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next call on the same thread.
 */
const char *walg_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void walg_string_free(char *s);

/**
 * Extracts every generator of shape `(n, l)`.
 *
 * # Safety
 * `out` is a valid pointer.
 */
enum WalgStatus walg_generators_new(size_t n, size_t l, struct WalgGenerators **out);

/**
 * # Safety
 * `h` is null or a live handle from [`walg_generators_new`].
 */
void walg_generators_free(struct WalgGenerators *h);

/**
 * Number of generators, `l·n²`.
 *
 * # Safety
 * `h` is a live handle, `out` a valid pointer.
 */
enum WalgStatus walg_generators_count(const struct WalgGenerators *h, size_t *out);

/**
 * Renders `W_ij^(r)` in `U(b[t⁻¹]t⁻¹)`, or its Miura image when `miura` is set.
 *
 * # Safety
 * `h` is a live handle, `out` a valid pointer. Free the result with
 * [`walg_string_free`].
 */
enum WalgStatus walg_generator_render(const struct WalgGenerators *h,
                                      size_t i,
                                      size_t j,
                                      size_t r,
                                      bool miura,
                                      enum WalgFormat format,
                                      char **out);

/**
 * `W_ij^(r)` as a vertex algebra state.
 *
 * # Safety
 * `h` is a live handle, `out` a valid pointer.
 */
enum WalgStatus walg_generator_state(const struct WalgGenerators *h,
                                     size_t i,
                                     size_t j,
                                     size_t r,
                                     struct WalgState **out);

/**
 * Runs one suite; `passed` receives the verdict.
 *
 * # Safety
 * `h` is a live handle, `passed` a valid pointer.
 */
enum WalgStatus walg_generators_verify(const struct WalgGenerators *h,
                                       enum WalgSuite suite,
                                       bool *passed);

/**
 * κ_b of shape `(n, l)` as JSON `{"basis": [...], "rows": [[...]]}`.
 *
 * # Safety
 * `out` is a valid pointer. Free the result with [`walg_string_free`].
 */
enum WalgStatus walg_kappa_table_json(size_t n, size_t l, bool full, char **out);

/**
 * Parses a state of shape `(n, l)` from its JSON form.
 *
 * # Safety
 * `json` is a NUL-terminated string, `out` a valid pointer.
 */
enum WalgStatus walg_state_from_json(size_t n, size_t l, const char *json, struct WalgState **out);

/**
 * # Safety
 * `s` is null or a live state handle.
 */
void walg_state_free(struct WalgState *s);

/**
 * # Safety
 * `s` is a live handle, `out` a valid pointer. Free the result with
 * [`walg_string_free`].
 */
enum WalgStatus walg_state_render(const struct WalgState *s, enum WalgFormat format, char **out);

/**
 * # Safety
 * `s` is a live handle, `out` a valid pointer.
 */
enum WalgStatus walg_state_is_zero(const struct WalgState *s, bool *out);

/**
 * # Safety
 * `a`, `b` are live handles, `out` a valid pointer.
 */
enum WalgStatus walg_state_equal(const struct WalgState *a, const struct WalgState *b, bool *out);

/**
 * `a_(n)b` within the default weight bound.
 *
 * # Safety
 * `a`, `b` are live handles of the same shape, `out` a valid pointer.
 */
enum WalgStatus walg_state_product(const struct WalgState *a,
                                   int32_t n,
                                   const struct WalgState *b,
                                   struct WalgState **out);

/**
 * Applies the translation operator `D`.
 *
 * # Safety
 * `s` is a live handle, `out` a valid pointer.
 */
enum WalgStatus walg_state_translate(const struct WalgState *s, struct WalgState **out);

/**
 * The conformal vector of shape `(2, 2)`.
 *
 * # Safety
 * `out` is a valid pointer.
 */
enum WalgStatus walg_conformal_vector(struct WalgState **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WALG_H */

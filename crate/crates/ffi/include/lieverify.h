#ifndef LIEVERIFY_H
#define LIEVERIFY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LvStatus {
  LV_STATUS_OK = 0,
  LV_STATUS_NULL_POINTER = 1,
  LV_STATUS_UTF8 = 2,
  LV_STATUS_PARSE = 3,
  LV_STATUS_UNSUPPORTED = 4,
  LV_STATUS_INVALID_INPUT = 5,
  LV_STATUS_OVERFLOW = 6,
  LV_STATUS_VERIFICATION_FAILED = 7,
  LV_STATUS_INTERNAL = 8,
} LvStatus;

/**
 * Opaque root datum handle.
 */
typedef struct LvDatum LvDatum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *lv_last_error(void);

/**
 * Library version as a static string.
 */
const char *lv_version(void);

/**
 * Builds a root datum from a descriptor such as `"E7:sc"` or `"GL4xGL2"`.
 *
 * # Safety
 * `descriptor` must be a NUL-terminated string and `out` a writable pointer.
 */
enum LvStatus lv_datum_new(const char *descriptor, struct LvDatum **out);

/**
 * # Safety
 * `datum` must come from `lv_datum_new` and not have been freed. NULL is ignored.
 */
void lv_datum_free(struct LvDatum *datum);

/**
 * Rank of the ambient lattice, or 0 for NULL.
 *
 * # Safety
 * `datum` must be NULL or a live handle.
 */
size_t lv_datum_rank(const struct LvDatum *datum);

/**
 * Number of roots, or 0 for NULL.
 *
 * # Safety
 * `datum` must be NULL or a live handle.
 */
size_t lv_datum_num_roots(const struct LvDatum *datum);

/**
 * Dimension of the irreducible representation with highest weight `w`, in
 * ambient coordinates, written as a decimal string to `out`.
 *
 * # Safety
 * `w` must point to `len` integers; `out` must be writable.
 */
enum LvStatus lv_dim(const struct LvDatum *datum, const int64_t *w, size_t len, char **out);

/**
 * Frobenius-Schur indicator (1, -1 or 0) of the irreducible representation
 * with highest weight `w`.
 *
 * # Safety
 * `w` must point to `len` integers; `out` must be writable.
 */
enum LvStatus lv_indicator(const struct LvDatum *datum, const int64_t *w, size_t len, int32_t *out);

/**
 * Runs the full built-in verification and writes the JSON report to `out`.
 * Returns `VerificationFailed` (with the report still written) if any check fails.
 *
 * # Safety
 * `out` must be writable.
 */
enum LvStatus lv_verify_all(char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void lv_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIEVERIFY_H */

#ifndef SKCL_H
#define SKCL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call. Values 2 to 4 match the `skcl` exit codes.
 */
typedef enum skcl_status {
  SKCL_STATUS_OK = 0,
  SKCL_STATUS_NULL_POINTER = 1,
  SKCL_STATUS_VALIDATION = 2,
  SKCL_STATUS_PRECONDITION = 3,
  SKCL_STATUS_INTERNAL = 4,
  SKCL_STATUS_INVALID_INPUT = 5,
  SKCL_STATUS_INVALID_UTF8 = 6,
  SKCL_STATUS_PANIC = 7,
} skcl_status;

/**
 * A completed algebra with its normal-word basis.
 */
typedef struct skcl_algebra skcl_algebra;

/**
 * A validated presentation `(μ, B)`.
 */
typedef struct skcl_presentation skcl_presentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a presentation JSON object `{"n", "mu", "b"}`.
 *
 * # Safety
 * `json` must be NUL-terminated; `out` must be writable.
 */
enum skcl_status skcl_presentation_from_json(const char *json, struct skcl_presentation **out);

/**
 * # Safety
 * `p` must come from [`skcl_presentation_from_json`] or be NULL.
 */
void skcl_presentation_free(struct skcl_presentation *p);

/**
 * Number of generators, or 0 for NULL.
 *
 * # Safety
 * `p` must be a live handle or NULL.
 */
size_t skcl_presentation_n(const struct skcl_presentation *p);

/**
 * Completes the rewriting system of `p`. The handle does not borrow `p`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum skcl_status skcl_algebra_new(const struct skcl_presentation *p, struct skcl_algebra **out);

/**
 * # Safety
 * `a` must come from [`skcl_algebra_new`] or be NULL.
 */
void skcl_algebra_free(struct skcl_algebra *a);

/**
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum skcl_status skcl_algebra_dimension(const struct skcl_algebra *a, size_t *out);

/**
 * Normal form of an element given as JSON `[{"word": [1, 2], "coeff": "3/2"}, ...]`.
 *
 * # Safety
 * `a` must be a live handle, `element` NUL-terminated, `out` writable.
 */
enum skcl_status skcl_algebra_normal_form(const struct skcl_algebra *a,
                                          const char *element,
                                          char **out);

/**
 * Product `x·y` in normal form, same JSON encoding as the inputs.
 *
 * # Safety
 * `a` must be a live handle, `x` and `y` NUL-terminated, `out` writable.
 */
enum skcl_status skcl_algebra_multiply(const struct skcl_algebra *a,
                                       const char *x,
                                       const char *y,
                                       char **out);

/**
 * Runs a CLI command, e.g. `{"command": "hilbert", "target": "lambda", "degree": 3}`,
 * on a presentation and writes the report JSON to `out`.
 *
 * # Safety
 * Both strings NUL-terminated; `out` writable.
 */
enum skcl_status skcl_run_command(const char *command, const char *presentation, char **out);

/**
 * # Safety
 * `s` must come from this library or be NULL.
 */
void skcl_string_free(char *s);

/**
 * Message for the last failure on this thread, or NULL. Valid until the
 * next call into the library from the same thread.
 */
const char *skcl_last_error_message(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SKCL_H */

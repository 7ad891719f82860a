#ifndef OPIAL_H
#define OPIAL_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum opial_status {
  OPIAL_OK = 0,
  OPIAL_ERR_INVALID_ARGUMENT = 1,
  OPIAL_ERR_DIMENSION_MISMATCH = 2,
  OPIAL_ERR_NON_FINITE = 3,
  OPIAL_ERR_INFEASIBLE = 4,
  OPIAL_ERR_UNSUPPORTED = 5,
  OPIAL_ERR_IO = 6,
  OPIAL_ERR_PARSE = 7,
  OPIAL_ERR_NULL_POINTER = 8,
  OPIAL_ERR_CHECK_FAILED = 9,
} opial_status;

/**
 * Opaque handle to a sequence prefix.
 */
typedef struct opial_sequence opial_sequence;

/**
 * Opaque handle to a convex set descriptor.
 */
typedef struct opial_set opial_set;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread. Valid until the next
 * failing call on the same thread.
 */
const char *opial_last_error_message(void);

/**
 * Build a sequence from a row-major buffer of `len` points of dimension
 * `dim`. `tail_start` marks where tail-based estimates begin.
 *
 * # Safety
 * `data` must point to `len * dim` readable doubles; `out` must be a valid
 * destination pointer.
 */
enum opial_status opial_sequence_create(const double *data,
                                        uintptr_t len,
                                        uintptr_t dim,
                                        uintptr_t tail_start,
                                        struct opial_sequence **out);

/**
 * Parse a sequence from its JSONL representation.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be valid.
 */
enum opial_status opial_sequence_from_jsonl(const char *text, struct opial_sequence **out);

/**
 * Build one of the reference examples by name (e.g. "two_bump_drift").
 *
 * # Safety
 * `name` must be a valid NUL-terminated string; `out` must be valid.
 */
enum opial_status opial_sequence_example(const char *name,
                                         uintptr_t horizon,
                                         struct opial_sequence **out);

uintptr_t opial_sequence_len(const struct opial_sequence *seq);

uintptr_t opial_sequence_dim(const struct opial_sequence *seq);

/**
 * # Safety
 * `seq` must be a handle from this library or null.
 */
void opial_sequence_free(struct opial_sequence *seq);

/**
 * Parse a convex set from its JSON descriptor.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be valid.
 */
enum opial_status opial_set_from_json(const char *text, struct opial_set **out);

/**
 * # Safety
 * `set` must be a handle from this library or null.
 */
void opial_set_free(struct opial_set *set);

/**
 * Project `point` (length `dim`) onto the set, writing the result into
 * `out_point` (length `dim`) and the distance into `out_distance`.
 *
 * # Safety
 * Buffers must be readable/writable with length `dim`.
 */
enum opial_status opial_set_project(const struct opial_set *set,
                                    const double *point,
                                    uintptr_t dim,
                                    double *out_point,
                                    double *out_distance);

/**
 * Distance trace from the sequence to `point`, written into `out`
 * (length `opial_sequence_len`).
 *
 * # Safety
 * Buffers must match the advertised lengths.
 */
enum opial_status opial_distance_trace(const struct opial_sequence *seq,
                                       const double *point,
                                       uintptr_t dim,
                                       double *out);

/**
 * Classify the sequence against test points sampled from the set.
 * On success `*out_json` holds a report; free it with `opial_string_free`.
 *
 * # Safety
 * `seq` and `set` must be live handles; `out_json` must be valid.
 */
enum opial_status opial_classify_json(const struct opial_sequence *seq,
                                      const struct opial_set *set,
                                      char **out_json);

/**
 * Asymptotic center of the sequence tail within the set, as JSON.
 *
 * # Safety
 * `seq` and `set` must be live handles; `out_json` must be valid.
 */
enum opial_status opial_asymptotic_center_json(const struct opial_sequence *seq,
                                               const struct opial_set *set,
                                               double solver_tol,
                                               char **out_json);

/**
 * Run the verification suite (all scenarios). The JSON report lands in
 * `*out_json`; the return value is OPIAL_ERR_CHECK_FAILED when any
 * scenario fails, OPIAL_OK otherwise.
 *
 * # Safety
 * `out_json` must be valid.
 */
enum opial_status opial_verify_json(char **out_json);

/**
 * Free a string returned by this library.
 *
 * # Safety
 * `s` must originate from this library or be null.
 */
void opial_string_free(char *s);

const char *opial_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OPIAL_H */

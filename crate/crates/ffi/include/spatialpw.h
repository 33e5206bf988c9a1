#ifndef SPATIALPW_H
#define SPATIALPW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum SpwStatus {
  SPW_STATUS_OK = 0,
  SPW_STATUS_NULL_POINTER = 1,
  SPW_STATUS_INVALID_UTF8 = 2,
  SPW_STATUS_PARSE = 3,
  SPW_STATUS_INVALID_INPUT = 4,
  SPW_STATUS_UNSUPPORTED = 5,
  SPW_STATUS_TOO_LARGE = 6,
  SPW_STATUS_INTERNAL = 7,
} SpwStatus;

/**
 * Solver selection, mirroring the command line's `--algorithm`.
 */
typedef enum SpwAlgorithm {
  SPW_ALGORITHM_AUTO = 0,
  SPW_ALGORITHM_PW1 = 1,
  SPW_ALGORITHM_FPT = 2,
  SPW_ALGORITHM_WEIGHTED = 3,
  SPW_ALGORITHM_ORACLE = 4,
} SpwAlgorithm;

/**
 * Opaque parsed instance.
 */
typedef struct SpwInstance SpwInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a document into a new instance stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SpwStatus spw_instance_parse(const char *text, struct SpwInstance **out);

/**
 * Releases an instance. Null is ignored.
 *
 * # Safety
 * `instance` must come from [`spw_instance_parse`] and not be used afterwards.
 */
void spw_instance_free(struct SpwInstance *instance);

/**
 * Number of candidates, or 0 for a null handle.
 *
 * # Safety
 * `instance` must be null or a live handle.
 */
size_t spw_instance_candidates(const struct SpwInstance *instance);

/**
 * Number of voters, or 0 for a null handle.
 *
 * # Safety
 * `instance` must be null or a live handle.
 */
size_t spw_instance_voters(const struct SpwInstance *instance);

/**
 * Changes the query candidate (1-based).
 *
 * # Safety
 * `instance` must be a live handle.
 */
enum SpwStatus spw_instance_set_query(struct SpwInstance *instance, size_t query);

/**
 * Canonical document text for the instance, stored in `*out`.
 *
 * # Safety
 * `instance` must be a live handle and `out` a valid pointer.
 */
enum SpwStatus spw_instance_serialize(const struct SpwInstance *instance, char **out);

/**
 * Possible-winner decision; the answer is stored in `*answer`.
 *
 * # Safety
 * `instance` must be a live handle and `answer` a valid pointer.
 */
enum SpwStatus spw_solve_pw(const struct SpwInstance *instance,
                            enum SpwAlgorithm algorithm,
                            uint64_t cap,
                            bool *answer);

/**
 * Necessary-winner decision; the answer is stored in `*answer`.
 *
 * # Safety
 * `instance` must be a live handle and `answer` a valid pointer.
 */
enum SpwStatus spw_solve_nw(const struct SpwInstance *instance,
                            enum SpwAlgorithm algorithm,
                            uint64_t cap,
                            bool *answer);

/**
 * Full verdict as JSON (`answer`, `algorithm`, `exact`, optional `witness`) stored in `*out`.
 * A witness is re-verified before it is returned.
 *
 * # Safety
 * `instance` must be a live handle and `out` a valid pointer.
 */
enum SpwStatus spw_solve_json(const struct SpwInstance *instance,
                              bool necessary,
                              enum SpwAlgorithm algorithm,
                              uint64_t cap,
                              bool witness,
                              char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void spw_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until the next failing call.
 */
const char *spw_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *spw_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPATIALPW_H */

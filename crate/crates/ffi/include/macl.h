#ifndef MACL_H
#define MACL_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The first four match the command-line exit codes.
 */
typedef enum MaclStatus {
  MACL_STATUS_OK = 0,
  MACL_STATUS_PARSE_ERROR = 1,
  MACL_STATUS_VALIDATION_ERROR = 2,
  MACL_STATUS_MISMATCH = 3,
  MACL_STATUS_NULL_ARGUMENT = 4,
  MACL_STATUS_INVALID_UTF8 = 5,
  MACL_STATUS_PANIC = 6,
} MaclStatus;

typedef enum MaclStrategy {
  MACL_STRATEGY_AUTO = 0,
  MACL_STRATEGY_BRUTE = 1,
  MACL_STRATEGY_GENERATORS = 2,
  MACL_STRATEGY_BOTH = 3,
} MaclStrategy;

/**
 * A context read against a particular frame.
 */
typedef struct MaclContext MaclContext;

/**
 * A validated multi-adjoint frame.
 */
typedef struct MaclFrame MaclFrame;

/**
 * A computed concept lattice.
 */
typedef struct MaclLattice MaclLattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and validates a frame. On success `*out` owns a new frame.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum MaclStatus macl_frame_from_json(const char *json, struct MaclFrame **out);

/**
 * # Safety
 * `frame` must come from `macl_frame_from_json` and not be freed twice.
 */
void macl_frame_free(struct MaclFrame *frame);

/**
 * Number of adjoint triples in the frame, or 0 for a null handle.
 *
 * # Safety
 * `frame` must be null or a live frame handle.
 */
size_t macl_frame_triples(const struct MaclFrame *frame);

/**
 * Parses a context whose cells name elements of the frame's `P`.
 *
 * # Safety
 * `frame` must be a live frame handle, `json` a nul-terminated string and
 * `out` a valid pointer.
 */
enum MaclStatus macl_context_from_json(const struct MaclFrame *frame,
                                       const char *json,
                                       struct MaclContext **out);

/**
 * # Safety
 * `context` must come from `macl_context_from_json` and not be freed twice.
 */
void macl_context_free(struct MaclContext *context);

/**
 * Computes the concept lattice of the frame's mode. A `limit` of 0 uses
 * the default fibre limit. With `check_oracle` set the result is compared
 * against direct enumeration and `MACL_STATUS_MISMATCH` returned on any
 * difference.
 *
 * # Safety
 * `frame` and `context` must be live handles and `out` a valid pointer.
 */
enum MaclStatus macl_lattice_compute(const struct MaclFrame *frame,
                                     const struct MaclContext *context,
                                     enum MaclStrategy strategy,
                                     size_t limit,
                                     bool check_oracle,
                                     struct MaclLattice **out);

/**
 * # Safety
 * `lattice` must come from `macl_lattice_compute` and not be freed twice.
 */
void macl_lattice_free(struct MaclLattice *lattice);

/**
 * Number of concepts, or 0 for a null handle.
 *
 * # Safety
 * `lattice` must be null or a live lattice handle.
 */
size_t macl_lattice_len(const struct MaclLattice *lattice);

/**
 * Whether concept `i` lies below concept `j`; false when out of range.
 *
 * # Safety
 * `lattice` must be null or a live lattice handle.
 */
bool macl_lattice_leq(const struct MaclLattice *lattice, size_t i, size_t j);

/**
 * Writes the lattice as JSON into a new string owned by the caller.
 *
 * # Safety
 * `lattice` must be a live handle and `out` a valid pointer.
 */
enum MaclStatus macl_lattice_to_json(const struct MaclLattice *lattice, char **out);

/**
 * Writes the Hasse diagram in DOT syntax into a new string.
 *
 * # Safety
 * `lattice` must be a live handle and `out` a valid pointer.
 */
enum MaclStatus macl_lattice_to_dot(const struct MaclLattice *lattice, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void macl_string_free(char *s);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next call into the library from the same thread.
 */
const char *macl_last_error(void);

/**
 * Library version as a static string.
 */
const char *macl_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MACL_H */

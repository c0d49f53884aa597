#ifndef QLOOP_H
#define QLOOP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum QloopStatus {
  QLOOP_STATUS_OK = 0,
  QLOOP_STATUS_NULL_ARGUMENT = 1,
  QLOOP_STATUS_INVALID_UTF8 = 2,
  QLOOP_STATUS_PARSE = 3,
  QLOOP_STATUS_UNKNOWN_NODE = 4,
  QLOOP_STATUS_INVALID_CARTAN = 5,
  QLOOP_STATUS_INVALID_WINDOW = 6,
  /**
   * A computation could not complete (window too small, wrong input shape, ...).
   */
  QLOOP_STATUS_COMPUTATION = 7,
  /**
   * A verification suite ran and reported at least one failing check.
   */
  QLOOP_STATUS_VERIFY_FAILED = 8,
  /**
   * An internal panic was caught at the boundary.
   */
  QLOOP_STATUS_INTERNAL = 9,
} QloopStatus;

/**
 * Opaque handle; create with `qloop_context_new*`, release with `qloop_context_free`.
 */
typedef struct QloopContext QloopContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a context from Cartan configuration text (`rank`, `row`, `sym` lines).
 *
 * # Safety
 * `config` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QloopStatus qloop_context_new(const char *config,
                                   int64_t dmin,
                                   int64_t dmax,
                                   struct QloopContext **out);

/**
 * Builds a context for type `A_rank`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum QloopStatus qloop_context_new_type_a(size_t rank,
                                          int64_t dmin,
                                          int64_t dmax,
                                          struct QloopContext **out);

/**
 * Releases a context. Null is ignored.
 *
 * # Safety
 * `ctx` must come from `qloop_context_new*` and not be used afterwards.
 */
void qloop_context_free(struct QloopContext *ctx);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void qloop_string_free(char *s);

/**
 * Message of the last failure on this thread; valid until the next call.
 */
const char *qloop_last_error(void);

/**
 * Hopf pairing of two elements.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum QloopStatus qloop_pair(const struct QloopContext *ctx,
                            const char *x,
                            const char *y,
                            char **out);

/**
 * `F'(i,n) x`.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum QloopStatus qloop_fprime(const struct QloopContext *ctx,
                              size_t i,
                              int64_t n,
                              const char *x,
                              char **out);

/**
 * Normal order: E-letters first, H-letters sorted after them.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum QloopStatus qloop_normal_order(const struct QloopContext *ctx, const char *x, char **out);

/**
 * Straightening of a single-node element at node `i`.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum QloopStatus qloop_straighten(const struct QloopContext *ctx,
                                  size_t i,
                                  const char *x,
                                  char **out);

/**
 * Kashiwara operator: `raise != 0` applies E~(i,n), otherwise F~(i,n).
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum QloopStatus qloop_kashiwara(const struct QloopContext *ctx,
                                 int32_t raise,
                                 size_t i,
                                 int64_t n,
                                 const char *x,
                                 char **out);

/**
 * Bar-involution truncated at the window's lower end.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum QloopStatus qloop_bar(const struct QloopContext *ctx, const char *x, char **out);

/**
 * Jet at level `num/den`, rendered with its header line.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum QloopStatus qloop_jet(const struct QloopContext *ctx,
                           int64_t num,
                           int64_t den,
                           const char *x,
                           char **out);

/**
 * Windowed zero test: `*out` is 1 when `x` pairs to zero with every window word.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum QloopStatus qloop_is_zero(const struct QloopContext *ctx, const char *x, int32_t *out);

/**
 * Runs a verification suite. The report is written to `*out` in both the
 * `Ok` and `VerifyFailed` cases.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum QloopStatus qloop_verify(const struct QloopContext *ctx, const char *suite, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QLOOP_H */

#ifndef DYCONVEX_H
#define DYCONVEX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DyStatus {
  DY_STATUS_OK = 0,
  DY_STATUS_NULL_POINTER = 1,
  DY_STATUS_UTF8 = 2,
  DY_STATUS_PARSE = 3,
  DY_STATUS_INVALID = 4,
  DY_STATUS_DEGENERATE = 5,
  DY_STATUS_POINT_LIMIT = 6,
  DY_STATUS_SEARCH_EXHAUSTED = 7,
  DY_STATUS_PANIC = 8,
} DyStatus;

// A set of generators together with its hull and face subspaces.
typedef struct DyGeneratorSet DyGeneratorSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *dy_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void dy_string_free(char *s);

// Library version as a static string.
const char *dy_version(void);

// Parses a point file (`dim N` header, one point per line) into a new handle.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum DyStatus dy_generator_set_new(const char *text, struct DyGeneratorSet **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `h` must come from [`dy_generator_set_new`] and not have been freed.
void dy_generator_set_free(struct DyGeneratorSet *h);

// # Safety
// `h` must be a live handle and `out` a valid pointer.
enum DyStatus dy_generator_set_len(const struct DyGeneratorSet *h, size_t *out);

// Ambient dimension.
//
// # Safety
// `h` must be a live handle and `out` a valid pointer.
enum DyStatus dy_generator_set_dim(const struct DyGeneratorSet *h, size_t *out);

// Whether `point` lies in the groupoid generated by `h`.
//
// # Safety
// `h` must be a live handle, `point` a NUL-terminated string and `out` a valid pointer.
enum DyStatus dy_member(const struct DyGeneratorSet *h, const char *point, bool *out);

// Whether two sets generate the same groupoid.
//
// # Safety
// `a`, `b` must be live handles and `out` a valid pointer.
enum DyStatus dy_equals_groupoid(const struct DyGeneratorSet *a,
                                 const struct DyGeneratorSet *b,
                                 bool *out);

// Type `k` of a collinear set, in decimal.
//
// # Safety
// `h` must be a live handle and `out` a valid pointer.
enum DyStatus dy_interval_type(const struct DyGeneratorSet *h, char **out);

// JSON report for the representative triangle `T_{i,j,m,n}`.
//
// # Safety
// `out` must be a valid pointer.
enum DyStatus dy_classify_params_json(uint64_t i, uint64_t j, uint64_t m, uint64_t n, char **out);

// JSON report normalizing the triangle whose three vertices are in `h`.
// A `depth` of 0 selects the default.
//
// # Safety
// `h` must be a live handle and `out` a valid pointer.
enum DyStatus dy_classify_triangle_json(const struct DyGeneratorSet *h, uint32_t depth, char **out);

// JSON report of the generated points with denominator exponent at most `exp_cap`.
//
// # Safety
// `h` must be a live handle and `out` a valid pointer.
enum DyStatus dy_closure_json(const struct DyGeneratorSet *h,
                              uint32_t exp_cap,
                              uint32_t slack,
                              char **out);

// JSON report with a generating set and its certificate.
//
// With `semipolytope` false the target is the convex hull of `h` as a full
// dyadic polytope, otherwise it is the groupoid generated by `h`.
//
// # Safety
// `h` must be a live handle and `out` a valid pointer.
enum DyStatus dy_gens_json(const struct DyGeneratorSet *h,
                           bool semipolytope,
                           bool reduce,
                           char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DYCONVEX_H */

#ifndef TOROIDAL_H
#define TOROIDAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TorStatus {
  TOR_STATUS_OK = 0,
  TOR_STATUS_NULL_POINTER = 1,
  TOR_STATUS_INVALID_UTF8 = 2,
  TOR_STATUS_DIMENSION = 3,
  TOR_STATUS_DOMAIN = 4,
  TOR_STATUS_FLAVOR_MISMATCH = 5,
  TOR_STATUS_UNSUPPORTED = 6,
  TOR_STATUS_COVERAGE = 7,
  TOR_STATUS_PARSE = 8,
  // The call succeeded but a checked identity failed.
  TOR_STATUS_VIOLATION = 9,
  TOR_STATUS_PANIC = 10,
} TorStatus;

// An algebra instance.
typedef struct TorAlgebra TorAlgebra;

// An element together with the algebra it lives in.
typedef struct TorElement TorElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null.
// The pointer stays valid until the next library call on this thread.
const char *tor_last_error(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void tor_string_free(char *s);

// Builds an algebra. `flavor` is one of `tau`, `tau_tilde`, `tau_hat`,
// `dera_hat`; `rank` is ignored for `dera_hat`.
//
// # Safety
// `flavor` must be a valid C string and `out` a writable pointer.
enum TorStatus tor_algebra_new(const char *flavor,
                               uint32_t rank,
                               uint32_t n,
                               struct TorAlgebra **out);

// # Safety
// `a` must be null or a handle from [`tor_algebra_new`], not yet freed.
void tor_algebra_free(struct TorAlgebra *a);

// Number of Laurent variables of the algebra, 0 for a null handle.
//
// # Safety
// `a` must be null or a live handle.
uint32_t tor_algebra_variables(const struct TorAlgebra *a);

// Zero element of `a`.
//
// # Safety
// `a` must be a live handle and `out` writable.
enum TorStatus tor_algebra_zero(const struct TorAlgebra *a, struct TorElement **out);

// Parses an element document (JSON).
//
// # Safety
// `json` must be a valid C string and `out` writable.
enum TorStatus tor_element_parse(const char *json, struct TorElement **out);

// Serializes an element document. Free the result with [`tor_string_free`].
//
// # Safety
// `x` must be a live handle and `out` writable.
enum TorStatus tor_element_to_json(const struct TorElement *x, char **out);

// 1 if zero, 0 if not, -1 for a null handle.
//
// # Safety
// `x` must be null or a live handle.
int32_t tor_element_is_zero(const struct TorElement *x);

// # Safety
// `x` must be null or a live element handle, not yet freed.
void tor_element_free(struct TorElement *x);

// Lie bracket `[x, y]`. Both elements must belong to the same algebra.
//
// # Safety
// `x`, `y` must be live handles and `out` writable.
enum TorStatus tor_bracket(const struct TorElement *x,
                           const struct TorElement *y,
                           struct TorElement **out);

// Applies the automorphism induced by an `n x n` unimodular integer matrix,
// given row-major in `entries` (length `n * n`).
//
// # Safety
// `x` must be a live handle, `entries` must point at `n * n` integers and
// `out` must be writable.
enum TorStatus tor_twist(const struct TorElement *x,
                         const int64_t *entries,
                         uintptr_t n,
                         struct TorElement **out);

// Runs a randomized verification suite and writes its JSON report.
// Returns [`TorStatus::Violation`] (with the report still written) when a
// check fails.
//
// # Safety
// `suite` must be a valid C string and `out` writable.
enum TorStatus tor_verify(const char *suite,
                          uint64_t seed,
                          uint32_t size,
                          uint32_t rank,
                          int64_t modes,
                          char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOROIDAL_H */

/* C interface to schwarzfn: curves, Schwarz branches, rational maps and Blaschke quotients. */

#ifndef SCHWARZFN_H
#define SCHWARZFN_H

/* Generated by cbindgen from the schwarzfn-ffi crate. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum SfStatus {
  SF_OK = 0,
  // A required pointer argument was null.
  SF_NULL_POINTER = 1,
  // Input text was not valid UTF-8.
  SF_INVALID_UTF8 = 2,
  // Input text did not parse.
  SF_PARSE_ERROR = 3,
  // An argument was outside its domain.
  SF_INVALID_ARGUMENT = 4,
  // A numeric procedure failed; a higher precision may help.
  SF_NUMERIC_FAILURE = 5,
  // The mathematical precondition of the operation does not hold.
  SF_DOMAIN_ERROR = 6,
  // Unexpected internal failure.
  SF_INTERNAL = 7,
} SfStatus;

// A real algebraic curve `P(x, y) = 0`.
typedef struct SfCurve SfCurve;

// A rational map `num(z)/den(z)`.
typedef struct SfMap SfMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on this thread, or null.
// The pointer stays valid until the next failing call on the thread.
const char *sf_last_error(void);

// Library version as a static NUL-terminated string.
const char *sf_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void sf_string_free(char *s);

// Parses a real curve such as `"x^2+y^2-1"`.
//
// # Safety
// `text` must be a NUL-terminated string and `out` writable.
enum SfStatus sf_curve_parse(const char *text, struct SfCurve **out);

// Releases a curve. Null is ignored.
//
// # Safety
// `c` must come from this library and not have been freed already.
void sf_curve_free(struct SfCurve *c);

// Canonical text of the curve polynomial.
//
// # Safety
// `c` must be a live curve handle and `out` writable.
enum SfStatus sf_curve_to_string(const struct SfCurve *c, char **out);

// The Schwarz defining form `Q(z, w)` of the curve as text.
//
// # Safety
// `c` must be a live curve handle and `out` writable.
enum SfStatus sf_curve_complexify(const struct SfCurve *c, char **out);

// Whether some Schwarz branch has a finite limit at infinity. When it
// does, the limit is written to `limit_re`/`limit_im`, which may be null.
//
// # Safety
// `c` must be a live curve handle; `holds` must be writable; the limit
// pointers must be null or writable.
enum SfStatus sf_condition_a(const struct SfCurve *c,
                             size_t order,
                             size_t prec,
                             bool *holds,
                             double *limit_re,
                             double *limit_im);

// Parses a rational map in `z` such as `"(z-1/2)/(1-z/2)"`.
//
// # Safety
// `text` must be a NUL-terminated string and `out` writable.
enum SfStatus sf_map_parse(const char *text, struct SfMap **out);

// Releases a map. Null is ignored.
//
// # Safety
// `m` must come from this library and not have been freed already.
void sf_map_free(struct SfMap *m);

// Canonical text of the normalized map.
//
// # Safety
// `m` must be a live map handle and `out` writable.
enum SfStatus sf_map_to_string(const struct SfMap *m, char **out);

// Evaluates the map at `re + i·im`. At a pole `is_infinite` is set and the
// outputs are left untouched.
//
// # Safety
// `m` must be a live map handle and every output pointer writable.
enum SfStatus sf_map_eval(const struct SfMap *m,
                          double re,
                          double im,
                          size_t prec,
                          double *out_re,
                          double *out_im,
                          bool *is_infinite);

// The real curve containing the image of `c` under `m`.
//
// # Safety
// `m` and `c` must be live handles and `out` writable.
enum SfStatus sf_image_curve(const struct SfMap *m, const struct SfCurve *c, struct SfCurve **out);

// Whether `m` maps curve `a` into curve `b`.
//
// # Safety
// `m`, `a` and `b` must be live handles and `out` writable.
enum SfStatus sf_maps_into(const struct SfMap *m,
                           const struct SfCurve *a,
                           const struct SfCurve *b,
                           bool *out);

// Exact test of `|m| = 1` on the unit circle.
//
// # Safety
// `m` must be a live map handle and `out` writable.
enum SfStatus sf_is_circle_preserving(const struct SfMap *m, bool *out);

// Blaschke factorization of a circle-preserving map as a JSON document
// `{"lambda", "zeros", "inverse_factors", "residual"}`.
//
// # Safety
// `m` must be a live map handle and `out` writable.
enum SfStatus sf_blaschke_factor_json(const struct SfMap *m, size_t prec, char **out);

// Sampled check of the Schwarz involution near an on-curve base point.
//
// # Safety
// `c` must be a live curve handle and both outputs writable.
enum SfStatus sf_verify_involution(const struct SfCurve *c,
                                   double base_re,
                                   double base_im,
                                   size_t samples,
                                   double tol,
                                   bool *passed,
                                   double *max_residual);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHWARZFN_H */

#ifndef FLOER_H
#define FLOER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

enum FloerStatus
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  FLOER_STATUS_OK = 0,
  FLOER_STATUS_NULL_ARGUMENT = 1,
  FLOER_STATUS_INVALID_UTF8 = 2,
  // Malformed text or JSON, or an unknown fixture name.
  FLOER_STATUS_PARSE_ERROR = 3,
  // The operation is undefined for these arguments, e.g. an inexact
  // division or a regrading that does not divide the grading.
  FLOER_STATUS_MATH_ERROR = 4,
  // A validation ran and found violations; the message lists them.
  FLOER_STATUS_CHECK_FAILED = 5,
  FLOER_STATUS_PANIC = 6,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum FloerStatus FloerStatus;
#else
typedef int32_t FloerStatus;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

// Validated flow-category data.
typedef struct FloerFlowCategory FloerFlowCategory;

// A Novikov series.
typedef struct FloerSeries FloerSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null after a success.
// Valid until the next call into this library on the same thread.
const char *floer_last_error_message(void);

// # Safety
// `s` is null or a string returned by this library, not yet freed.
void floer_string_free(char *s);

// Parses the text form, e.g. `"2 + T - 3*T^-1"` or `"1 + T @ 8"`.
//
// # Safety
// `text` is a nul-terminated string; `out` is writable.
FloerStatus floer_series_parse(const char *text_ptr, struct FloerSeries **out);

// The constant series `c`.
//
// # Safety
// `out` is writable.
FloerStatus floer_series_from_int(int64_t c, struct FloerSeries **out);

// # Safety
// `s` is null or a handle from this library, not yet freed.
void floer_series_free(struct FloerSeries *s);

// # Safety
// `s` is a live handle; `out` is writable.
FloerStatus floer_series_to_string(const struct FloerSeries *s, char **out);

// # Safety
// `a`, `b` are live handles; `out` is writable.
FloerStatus floer_series_add(const struct FloerSeries *a,
                             const struct FloerSeries *b,
                             struct FloerSeries **out);

// # Safety
// `a`, `b` are live handles; `out` is writable.
FloerStatus floer_series_mul(const struct FloerSeries *a,
                             const struct FloerSeries *b,
                             struct FloerSeries **out);

// `a / b` to `precision` orders past the quotient's leading term;
// `MathError` when `b` does not divide `a`.
//
// # Safety
// `a`, `b` are live handles; `out` is writable.
FloerStatus floer_series_divide(const struct FloerSeries *a,
                                const struct FloerSeries *b,
                                int64_t precision,
                                struct FloerSeries **out);

// Writes the valuation and `true`, or `false` when no nonzero coefficient
// is known (the valuation is then left untouched).
//
// # Safety
// `s` is a live handle; `valuation` and `is_finite` are writable.
FloerStatus floer_series_valuation(const struct FloerSeries *s,
                                   int64_t *valuation,
                                   bool *is_finite);

// Whether the two series agree on every exponent below `k`.
//
// # Safety
// `a`, `b` are live handles; `out` is writable.
FloerStatus floer_series_agrees_below(const struct FloerSeries *a,
                                      const struct FloerSeries *b,
                                      int64_t k,
                                      bool *out);

// Canonical generator of the ideal spanned by `gens[0..count]`.
//
// # Safety
// `gens` points to `count` live handles; `out` is writable.
FloerStatus floer_ideal_generator(const struct FloerSeries *const *gens,
                                  size_t count,
                                  int64_t precision,
                                  struct FloerSeries **out);

// Parses and validates a flow-category document. Validation failures
// return `CheckFailed` with one violation per line.
//
// # Safety
// `json` is a nul-terminated string; `out` is writable.
FloerStatus floer_flow_category_from_json(const char *json, struct FloerFlowCategory **out);

// Loads a bundled fixture such as `"rp2"`.
//
// # Safety
// `name` is a nul-terminated string; `out` is writable.
FloerStatus floer_flow_category_from_fixture(const char *name, struct FloerFlowCategory **out);

// # Safety
// `fc` is null or a handle from this library, not yet freed.
void floer_flow_category_free(struct FloerFlowCategory *fc);

// # Safety
// `fc` is a live handle; `out` is writable.
FloerStatus floer_flow_category_generator_count(const struct FloerFlowCategory *fc, size_t *out);

// A copy graded mod `two_n`. `two_n` must be even and divide the current
// period; any even `two_n` works for `Z`-graded data.
//
// # Safety
// `fc` is a live handle; `out` is writable.
FloerStatus floer_flow_category_regrade(const struct FloerFlowCategory *fc,
                                        int64_t two_n,
                                        struct FloerFlowCategory **out);

// Homology over Λ as a JSON object keyed by grading class. `CheckFailed`
// when d² ≠ 0.
//
// # Safety
// `fc` is a live handle; `out` is writable.
FloerStatus floer_flow_category_homology_json(const struct FloerFlowCategory *fc,
                                              int64_t precision,
                                              char **out);

// Arnold bound of an integral homology document with its minimal Chern
// number.
//
// # Safety
// `json` is a nul-terminated string; `out` is writable.
FloerStatus floer_arnold_bound(const char *json, uint64_t *out);

// Runs the `floer` command line with `argv[0..argc]` (the program name
// first). Writes the report and the process exit code (0, 1 or 2); the
// status is `Ok` whenever the command ran, whatever its exit code.
//
// # Safety
// `argv` points to `argc` nul-terminated strings; `output` and
// `exit_code` are writable.
FloerStatus floer_cli_run(size_t argc, const char *const *argv, char **output, int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FLOER_H */

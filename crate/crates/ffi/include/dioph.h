#ifndef DIOPH_H
#define DIOPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes; the first four match the command-line exit codes.
 */
enum DiophStatus
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  DIOPH_STATUS_OK = 0,
  DIOPH_STATUS_CHECK_FAILED = 1,
  DIOPH_STATUS_BAD_INPUT = 2,
  DIOPH_STATUS_RESOURCE_GUARD = 3,
  DIOPH_STATUS_NULL_POINTER = 4,
  DIOPH_STATUS_INTERNAL = 5,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum DiophStatus DiophStatus;
#else
typedef int32_t DiophStatus;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

enum DiophWhich
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  /*
   The linear form `|x·α + y·β + z|`.
   */
  DIOPH_WHICH_L = 0,
  /*
   Simultaneous approximation `max(|zα − x|, |zβ − y|)`.
   */
  DIOPH_WHICH_M = 1,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum DiophWhich DiophWhich;
#else
typedef int32_t DiophWhich;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/*
 A certified construction run.
 */
typedef struct DiophRun DiophRun;

/*
 A target point with its certified radius.
 */
typedef struct DiophTarget DiophTarget;

/*
 Best approximations of a target with their exponents.
 */
typedef struct DiophTrace DiophTrace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Builds a run. `params_json` is the `params` object of a run file, e.g.
 `{"mode":"finite","w":"3","tau0":"1/2","tau1":"1","sigma":"3/2"}`;
 `h1` is a decimal integer. `digit_limit` caps the decimal digits of any
 coordinate; 0 keeps the default.

 # Safety
 String arguments must be NUL-terminated; `out` must be writable.
 */
DiophStatus dioph_construct(const char *params_json,
                            const char *h1,
                            uint32_t depth,
                            uint64_t digit_limit,
                            struct DiophRun **out);

/*
 Parses a run file's contents.

 # Safety
 `json` must be NUL-terminated; `out` must be writable.
 */
DiophStatus dioph_run_from_json(const char *json, struct DiophRun **out);

/*
 Serializes a run exactly as the command line writes it.

 # Safety
 `run` must come from this library; `out` must be writable.
 */
DiophStatus dioph_run_to_json(const struct DiophRun *run, char **out);

/*
 Re-derives all certificates and writes the report JSON. Returns
 `CheckFailed` when any certificate fails.

 # Safety
 `run` must come from this library; `report_json` must be writable.
 */
DiophStatus dioph_run_verify(const struct DiophRun *run, uint64_t scan_hmax, char **report_json);

/*
 # Safety
 `run` must come from this library and not be used afterwards.
 */
void dioph_run_free(struct DiophRun *run);

/*
 Predicted `(v, v', w, w')` for a parameter object, as `"(6, 4/3, 3, 2/3)"`.

 # Safety
 `params_json` must be NUL-terminated; `out` must be writable.
 */
DiophStatus dioph_predict_quadruple(const char *params_json, char **out);

/*
 Checks `"v,v',w,w'"` against the transference inequalities and writes
 the report JSON. Returns `CheckFailed` if any inequality fails.

 # Safety
 `quad` must be NUL-terminated; `report_json` must be writable.
 */
DiophStatus dioph_verify_quadruple(const char *quad, char **report_json);

/*
 Parses `sqrt:p,q`, `fib:depth`, `run:<file>#n,k` or `lit:a,b,radius`.

 # Safety
 `spec` must be NUL-terminated; `out` must be writable.
 */
DiophStatus dioph_target_parse(const char *spec, uint32_t digits, struct DiophTarget **out);

/*
 # Safety
 `target` must come from this library and not be used afterwards.
 */
void dioph_target_free(struct DiophTarget *target);

/*
 Best approximations of `target` with norm at most `hmax`; `which` is a
 [`DiophWhich`] value.

 # Safety
 `target` must come from this library; `out` must be writable.
 */
DiophStatus dioph_analyze(const struct DiophTarget *target,
                          uint64_t hmax,
                          int32_t which,
                          struct DiophTrace **out);

/*
 Number of records, or 0 for a null handle.

 # Safety
 `trace` must be null or come from this library.
 */
size_t dioph_trace_len(const struct DiophTrace *trace);

/*
 # Safety
 `trace` must come from this library; `out` must be writable.
 */
DiophStatus dioph_trace_to_csv(const struct DiophTrace *trace, char **out);

/*
 `(ω, ω̂)` estimates over the last `window` certified records, as JSON.

 # Safety
 `trace` must come from this library; `out` must be writable.
 */
DiophStatus dioph_trace_summary(const struct DiophTrace *trace, size_t window, char **out);

/*
 # Safety
 `trace` must come from this library and not be used afterwards.
 */
void dioph_trace_free(struct DiophTrace *trace);

/*
 # Safety
 `s` must be null or a string returned by this library.
 */
void dioph_string_free(char *s);

/*
 Message of the last failed call on this thread, empty after a success.
 Valid until the next call into the library on the same thread.
 */
const char *dioph_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIOPH_H */

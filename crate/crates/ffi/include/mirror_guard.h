#ifndef MIRROR_GUARD_H
#define MIRROR_GUARD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  MG_STATUS_OK = 0,
  MG_STATUS_NULL_POINTER = 1,
  MG_STATUS_INVALID_UTF8 = 2,
  MG_STATUS_INVALID_INSTANCE = 3,
  MG_STATUS_LINE_BUDGET_EXCEEDED = 4,
  MG_STATUS_OUT_OF_RANGE = 5,
  MG_STATUS_FAILED = 6,
  MG_STATUS_PANIC = 7,
} MgStatus;

typedef enum {
  MG_LINE_LEVEL_FULL = 0,
  MG_LINE_LEVEL_PAIRS = 1,
  MG_LINE_LEVEL_VISIBLE = 2,
  MG_LINE_LEVEL_EDGES = 3,
} MgLineLevel;

/**
 * A polygon with mirrors plus solver options.
 */
typedef struct MgInstance MgInstance;

/**
 * The result of [`mg_solve`].
 */
typedef struct MgRun MgRun;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty if none. Valid
 * until the next failing call on the same thread.
 */
const char *mg_last_error(void);

/**
 * Parses a JSON instance: `{"vertices": [[x, y], ...], "mirrors": [...],
 * "options": {...}}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
MgStatus mg_instance_from_json(const char *json, MgInstance **out);

/**
 * Builds an instance from `n` integer vertices given as `xy[2 * i]`,
 * `xy[2 * i + 1]` and `n_mirrors` mirror edge indices (edge `i` runs
 * from vertex `i` to vertex `i + 1`). Options start at their defaults.
 *
 * # Safety
 * `xy` must hold `2 * n` values, `mirrors` `n_mirrors` values (it may be
 * null when `n_mirrors` is 0), and `out` must be valid.
 */
MgStatus mg_instance_new(const int64_t *xy,
                         size_t n,
                         const size_t *mirrors,
                         size_t n_mirrors,
                         MgInstance **out);

/**
 * # Safety
 * `inst` must come from this library and not be used afterwards.
 */
void mg_instance_free(MgInstance *inst);

/**
 * Non-zero `direct_only` ignores the mirrors.
 *
 * # Safety
 * `inst` must be a valid handle.
 */
MgStatus mg_instance_set_direct_only(MgInstance *inst, int direct_only);

/**
 * # Safety
 * `inst` must be a valid handle.
 */
MgStatus mg_instance_set_line_level(MgInstance *inst, MgLineLevel level, size_t cap);

/**
 * Exact cover with at most `cap` candidate subsets; 0 disables it.
 *
 * # Safety
 * `inst` must be a valid handle.
 */
MgStatus mg_instance_set_exact_cover(MgInstance *inst, size_t cap);

/**
 * Sampled coverage check after solving; 0 samples skips it.
 *
 * # Safety
 * `inst` must be a valid handle.
 */
MgStatus mg_instance_set_verify(MgInstance *inst, size_t samples, uint64_t seed);

/**
 * Runs the solver. The instance stays owned by the caller.
 *
 * # Safety
 * `inst` must be a valid handle and `out` a valid pointer.
 */
MgStatus mg_solve(const MgInstance *inst, MgRun **out);

/**
 * # Safety
 * `run` must come from [`mg_solve`] and not be used afterwards.
 */
void mg_run_free(MgRun *run);

/**
 * Number of chosen guards; 0 for a null handle.
 *
 * # Safety
 * `run` must be a valid handle or null.
 */
size_t mg_run_guard_count(const MgRun *run);

/**
 * Guard `i` rounded to doubles.
 *
 * # Safety
 * `run` must be a valid handle; `x` and `y` valid pointers.
 */
MgStatus mg_run_guard(const MgRun *run, size_t i, double *x, double *y);

/**
 * 1 if verification ran and passed, 0 if it failed, -1 if it did not run.
 *
 * # Safety
 * `run` must be a valid handle.
 */
int mg_run_verified(const MgRun *run);

/**
 * The run report as JSON. Free the string with [`mg_string_free`].
 *
 * # Safety
 * `run` must be a valid handle and `out` a valid pointer.
 */
MgStatus mg_run_report_json(const MgRun *run, int with_timings, char **out);

/**
 * SVG drawing of the run; a negative `cell` draws no guarding-regions.
 *
 * # Safety
 * `run` must be a valid handle and `out` a valid pointer.
 */
MgStatus mg_run_svg(const MgRun *run, int64_t cell, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void mg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIRROR_GUARD_H */

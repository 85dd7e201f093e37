#ifndef POLAR_MORSE_H
#define POLAR_MORSE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PmStatus {
  PM_STATUS_OK = 0,
  PM_STATUS_NULL_POINTER = 1,
  PM_STATUS_INVALID_UTF8 = 2,
  /**
   * Syntax error in the germ description.
   */
  PM_STATUS_PARSE = 3,
  /**
   * Well-formed text describing an invalid germ or job.
   */
  PM_STATUS_INVALID_INPUT = 4,
  PM_STATUS_NO_ADMISSIBLE_LINEAR_FORM = 5,
  /**
   * The pipeline failed for reasons other than the input.
   */
  PM_STATUS_COMPUTATION = 6,
  PM_STATUS_NOT_FOUND = 7,
  /**
   * A Rust panic was caught at the boundary.
   */
  PM_STATUS_INTERNAL = 8,
} PmStatus;

/**
 * Parsed germ description plus run options.
 */
typedef struct PmJob PmJob;

/**
 * Result of running a job.
 */
typedef struct PmReport PmReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. Valid until
 * the next library call on the same thread.
 */
const char *pm_last_error(void);

/**
 * Library version as a static string.
 */
const char *pm_version(void);

/**
 * Parses a germ description.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PmStatus pm_job_parse(const char *text, struct PmJob **out);

/**
 * # Safety
 * `job` must come from [`pm_job_parse`] and not be used afterwards.
 */
void pm_job_free(struct PmJob *job);

/**
 * Seed for random linear forms.
 *
 * # Safety
 * `job` must be a live handle.
 */
enum PmStatus pm_job_set_seed(struct PmJob *job, uint64_t seed);

/**
 * Discards any given linear form and searches `attempts` seeded random
 * ones with coefficients in `[-bound, bound]` instead.
 *
 * # Safety
 * `job` must be a live handle.
 */
enum PmStatus pm_job_use_random_l(struct PmJob *job, uint32_t attempts, uint32_t bound);

/**
 * Runs the full pipeline. A report is produced even when some stratum
 * fails; check [`pm_report_success`].
 *
 * # Safety
 * `job` must be a live handle and `out` a valid pointer.
 */
enum PmStatus pm_job_run(const struct PmJob *job, struct PmReport **out);

/**
 * # Safety
 * `report` must come from [`pm_job_run`] and not be used afterwards.
 */
void pm_report_free(struct PmReport *report);

/**
 * True when every stratum has a Morse number and all checks passed.
 *
 * # Safety
 * `report` must be a live handle or null.
 */
bool pm_report_success(const struct PmReport *report);

/**
 * Number of positive-dimensional strata in the report.
 *
 * # Safety
 * `report` must be a live handle or null.
 */
size_t pm_report_stratum_count(const struct PmReport *report);

/**
 * Morse number of the named stratum.
 *
 * # Safety
 * `report` must be a live handle, `stratum` a NUL-terminated string and
 * `out` a valid pointer.
 */
enum PmStatus pm_report_morse_number(const struct PmReport *report,
                                     const char *stratum,
                                     uint64_t *out);

/**
 * Structured (JSON) report; free with [`pm_string_free`].
 *
 * # Safety
 * `report` must be a live handle.
 */
char *pm_report_to_json(const struct PmReport *report);

/**
 * Text table report; free with [`pm_string_free`].
 *
 * # Safety
 * `report` must be a live handle.
 */
char *pm_report_to_text(const struct PmReport *report);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void pm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLAR_MORSE_H */

#ifndef QGEO_H
#define QGEO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Report output format for [`qgeo_reports_export`].
 */
typedef enum QgeoFormat {
  QGEO_FORMAT_JSON = 0,
  QGEO_FORMAT_TEXT = 1,
} QgeoFormat;

/**
 * Result codes. `QGEO_STATUS_OK` is zero.
 */
typedef enum QgeoStatus {
  QGEO_STATUS_OK = 0,
  QGEO_STATUS_NULL_POINTER = 1,
  QGEO_STATUS_INVALID_UTF8 = 2,
  QGEO_STATUS_PARSE = 3,
  QGEO_STATUS_UNKNOWN_MODEL = 4,
  QGEO_STATUS_UNKNOWN_CHECK = 5,
  QGEO_STATUS_USAGE = 6,
  QGEO_STATUS_ALGEBRA = 7,
  QGEO_STATUS_PANIC = 8,
} QgeoStatus;

/**
 * Opaque model handle.
 */
typedef struct QgeoModel QgeoModel;

/**
 * Opaque list of check reports.
 */
typedef struct QgeoReports QgeoReports;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the next
 * failing call on the same thread; do not free.
 */
const char *qgeo_last_error_message(void);

/**
 * Library version as a static string; do not free.
 */
const char *qgeo_version(void);

/**
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void qgeo_string_free(char *s);

/**
 * Built-in model by registry name.
 *
 * # Safety
 * `name` is a NUL-terminated string; `out` points to writable storage.
 */
enum QgeoStatus qgeo_model_lookup(const char *name, struct QgeoModel **out);

/**
 * First model declared in DSL source text.
 *
 * # Safety
 * `src` is a NUL-terminated string; `out` points to writable storage.
 */
enum QgeoStatus qgeo_model_from_dsl(const char *src, struct QgeoModel **out);

/**
 * # Safety
 * `m` is null or a live handle from this library.
 */
void qgeo_model_free(struct QgeoModel *m);

/**
 * # Safety
 * `m` is a live handle; `out` points to writable storage.
 */
enum QgeoStatus qgeo_model_name(const struct QgeoModel *m, char **out);

/**
 * Normal form of `expr`, written in DSL syntax.
 *
 * # Safety
 * `m` is a live handle; `expr` is a NUL-terminated string; `out` is writable.
 */
enum QgeoStatus qgeo_normal_form(const struct QgeoModel *m, const char *expr, char **out);

/**
 * `ab - ba` in normal form, written in DSL syntax.
 *
 * # Safety
 * `m` is a live handle; `a`, `b` are NUL-terminated strings; `out` is writable.
 */
enum QgeoStatus qgeo_commutator(const struct QgeoModel *m,
                                const char *a,
                                const char *b,
                                char **out);

/**
 * Run comma-separated checks (or `all`). `degree == 0` selects the model default.
 *
 * # Safety
 * `m` is a live handle; `checks` is a NUL-terminated string; `out` is writable.
 */
enum QgeoStatus qgeo_run_suite(const struct QgeoModel *m,
                               const char *checks,
                               uint32_t degree,
                               struct QgeoReports **out);

/**
 * Number of reports, 0 for null.
 *
 * # Safety
 * `r` is null or a live handle.
 */
size_t qgeo_reports_len(const struct QgeoReports *r);

/**
 * 1 if no report failed, 0 otherwise (including null).
 *
 * # Safety
 * `r` is null or a live handle.
 */
int32_t qgeo_reports_all_passed(const struct QgeoReports *r);

/**
 * # Safety
 * `r` is a live handle; `out` is writable.
 */
enum QgeoStatus qgeo_reports_export(const struct QgeoReports *r,
                                    enum QgeoFormat format,
                                    char **out);

/**
 * # Safety
 * `r` is null or a live handle from this library.
 */
void qgeo_reports_free(struct QgeoReports *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QGEO_H */

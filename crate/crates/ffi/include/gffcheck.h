#ifndef GFFCHECK_H
#define GFFCHECK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every call.
 */
typedef enum GffStatus {
  GFF_STATUS_OK = 0,
  GFF_STATUS_NULL_ARGUMENT = 1,
  GFF_STATUS_INVALID_UTF8 = 2,
  /*
   Parse, fixture or usage error in the input.
   */
  GFF_STATUS_INPUT_ERROR = 3,
  /*
   Vectors spanning the plane are dependent or the plane is degenerate.
   */
  GFF_STATUS_DEGENERATE_PLANE = 4,
  /*
   A vector is lightlike or not in Im(phi) where that is required.
   */
  GFF_STATUS_INVALID_VECTOR = 5,
  GFF_STATUS_RECONSTRUCTION_INAPPLICABLE = 6,
  /*
   Any other failure of the computation.
   */
  GFF_STATUS_MATH_ERROR = 7,
  GFF_STATUS_PANIC = 8,
} GffStatus;

typedef enum GffClass {
  GFF_CLASS_NOT_GFF = 0,
  GFF_CLASS_METRIC_GFF = 1,
  GFF_CLASS_K = 2,
  GFF_CLASS_C = 3,
  GFF_CLASS_ALMOST_S = 4,
  GFF_CLASS_S = 5,
  GFF_CLASS_S_SPACE_FORM = 6,
} GffClass;

typedef enum GffReportKind {
  GFF_REPORT_KIND_CLASSIFY = 0,
  GFF_REPORT_KIND_VERIFY = 1,
} GffReportKind;

/*
 A parsed structure with lazily computed analysis and curvature.
 */
typedef struct GffHandle GffHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or "" after a success.
 The pointer stays valid until the next call on the same thread.
 */
const char *gff_last_error(void);

/*
 Opens a built-in structure (`example1`, `example2`, `example3`).

 # Safety
 `name` must be a NUL-terminated string and `out` a writable pointer.
 */
enum GffStatus gff_open_fixture(const char *name, struct GffHandle **out);

/*
 Opens a structure from definition-file text.

 # Safety
 `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum GffStatus gff_open_text(const char *text, struct GffHandle **out);

/*
 # Safety
 `h` must come from one of the open functions and not be used afterwards.
 */
void gff_free(struct GffHandle *h);

/*
 # Safety
 `s` must be NULL or a string returned by this library, freed only once.
 */
void gff_string_free(char *s);

/*
 # Safety
 `h` must be a live handle and `out` writable.
 */
enum GffStatus gff_dim(const struct GffHandle *h, size_t *out);

/*
 Writes the class, including `S_SPACE_FORM` when R = S(c).

 # Safety
 `h` must be a live handle and `out` writable.
 */
enum GffStatus gff_classify(const struct GffHandle *h, enum GffClass *out);

/*
 Writes the space-form constant as a rational string, or NULL when the
 structure is not a space form.

 # Safety
 `h` must be a live handle and `out` writable.
 */
enum GffStatus gff_space_form_c(const struct GffHandle *h, char **out);

/*
 Sectional curvature of span{X, Y} at a point, as a rational string.
 `point` is `0` or `name=value,...`; `x` and `y` are vector expressions
 over `d<coord>` and `Z1..Zr`.

 # Safety
 All strings must be NUL-terminated, `h` live and `out` writable.
 */
enum GffStatus gff_sectional_curvature(const struct GffHandle *h,
                                       const char *point,
                                       const char *x,
                                       const char *y,
                                       char **out);

/*
 φ-sectional curvature H(X) at a point, as a rational string.

 # Safety
 All strings must be NUL-terminated, `h` live and `out` writable.
 */
enum GffStatus gff_phi_sectional_curvature(const struct GffHandle *h,
                                           const char *point,
                                           const char *x,
                                           char **out);

/*
 Runs every identity suite and writes the number of failed verdicts.

 # Safety
 `h` must be a live handle and `failures` writable.
 */
enum GffStatus gff_verify(const struct GffHandle *h, size_t *failures);

/*
 The JSON report of `classify` or `verify`.

 # Safety
 `h` must be a live handle and `out` writable.
 */
enum GffStatus gff_report_json(const struct GffHandle *h, enum GffReportKind kind, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GFFCHECK_H */

#ifndef CYCLAT_H
#define CYCLAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes.
 */
typedef enum CyclatStatus {
  CYCLAT_STATUS_OK = 0,
  CYCLAT_STATUS_NULL_POINTER = 1,
  CYCLAT_STATUS_INVALID_UTF8 = 2,
  CYCLAT_STATUS_PARSE = 3,
  CYCLAT_STATUS_INVALID_PARAMETER = 4,
  CYCLAT_STATUS_NOT_WELL_ROUNDED = 5,
  CYCLAT_STATUS_NOT_CYCLIC = 6,
  CYCLAT_STATUS_WRONG_RANK = 7,
  CYCLAT_STATUS_SCALE_LIMIT = 8,
  CYCLAT_STATUS_DOMAIN = 9,
  CYCLAT_STATUS_INTERNAL = 10,
} CyclatStatus;

/*
 Opaque lattice handle.
 */
typedef struct CyclatLattice CyclatLattice;

typedef struct CyclatWrFlags {
  bool is_wr;
  bool generated_by_min;
  bool basis_of_min;
} CyclatWrFlags;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses a JSON lattice document into a new handle.

 # Safety
 `json` must be a nul-terminated string; `out` must be writable.
 */
enum CyclatStatus cyclat_lattice_from_json(const char *json, struct CyclatLattice **out);

/*
 Lattice spanned by `cols` integer columns of length `dim`, stored column after column.

 # Safety
 `entries` must point to `dim * cols` values; `out` must be writable.
 */
enum CyclatStatus cyclat_lattice_from_int_columns(const int64_t *entries,
                                                  size_t dim,
                                                  size_t cols,
                                                  struct CyclatLattice **out);

/*
 # Safety
 `l` must come from this library and not be used afterwards; null is ignored.
 */
void cyclat_lattice_free(struct CyclatLattice *l);

/*
 # Safety
 `l` must be a live handle; `out` must be writable.
 */
enum CyclatStatus cyclat_lattice_rank(const struct CyclatLattice *l, size_t *out);

/*
 Canonical JSON document of the lattice.

 # Safety
 `l` must be a live handle; `out` must be writable.
 */
enum CyclatStatus cyclat_lattice_to_json(const struct CyclatLattice *l, char **out);

/*
 The parameter `x` of a planar WR lattice, as an exact entry string.

 # Safety
 `l` must be a live handle; `out` must be writable.
 */
enum CyclatStatus cyclat_canonical_x(const struct CyclatLattice *l, char **out);

/*
 # Safety
 `l` must be a live handle; `out` must be writable.
 */
enum CyclatStatus cyclat_wr_flags(const struct CyclatLattice *l, struct CyclatWrFlags *out);

/*
 # Safety
 `l` must be a live handle; `out` must be writable.
 */
enum CyclatStatus cyclat_is_cyclic(const struct CyclatLattice *l, bool *out);

/*
 `det P(c)` as a decimal string, computed from the values of `c` at the roots of unity.

 # Safety
 `c` must point to `n` values; `out` must be writable.
 */
enum CyclatStatus cyclat_det_via_roots(const int64_t *c, size_t n, char **out);

/*
 Enclosure `[lo, hi]` of the Weil height of an exact entry such as `"2-1*sqrt(3)"`.

 # Safety
 `entry` must be a nul-terminated string; `lo` and `hi` must be writable.
 */
enum CyclatStatus cyclat_weil_height(const char *entry, double *lo, double *hi);

/*
 CSV report on the root lattices of rank at most `max_n`.

 # Safety
 `out` must be writable.
 */
enum CyclatStatus cyclat_root_report_csv(size_t max_n, char **out);

/*
 Message of the last failed call on this thread, or null. Free with `cyclat_string_free`.
 */
char *cyclat_last_error_message(void);

/*
 # Safety
 `s` must come from this library and not be used afterwards; null is ignored.
 */
void cyclat_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CYCLAT_H */

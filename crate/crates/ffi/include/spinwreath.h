#ifndef SPINWREATH_H
#define SPINWREATH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SwStatus {
  SW_OK = 0,
  SW_NULL_POINTER = 1,
  SW_INVALID_ARGUMENT = 2,
  SW_PARSE_ERROR = 3,
  SW_VALIDATION_ERROR = 4,
  SW_OUT_OF_RANGE = 5,
  SW_BUFFER_TOO_SMALL = 6,
  SW_INTERNAL = 7,
  SW_PANIC = 8,
} SwStatus;

// Opaque handle to a finite group given by its character table.
typedef struct SwGroup SwGroup;

// Opaque handle to a computed spin character table.
typedef struct SwTable SwTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *sw_version(void);

// Copies the last error message of this thread.
//
// # Safety
// `buf` must be valid for `len` bytes; `required` may be null.
enum SwStatus sw_last_error(char *buf, size_t len, size_t *required);

// Looks up a builtin group: trivial, z2, z3, z4, klein4, s3, d4.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum SwStatus sw_group_builtin(const char *name, struct SwGroup **out);

// Parses and validates a group from its JSON description.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum SwStatus sw_group_from_json(const char *json, struct SwGroup **out);

// # Safety
// `g` must come from this library and not be freed twice. Null is ignored.
void sw_group_free(struct SwGroup *g);

// Computes the spin character table of Γ̃_n.
//
// # Safety
// `group` must be a live handle; `out` must be writable.
enum SwStatus sw_table_compute(const struct SwGroup *group, uint32_t n, struct SwTable **out);

// # Safety
// `t` must come from this library and not be freed twice. Null is ignored.
void sw_table_free(struct SwTable *t);

// # Safety
// `t` must be a live handle; `out` must be writable.
enum SwStatus sw_table_rows(const struct SwTable *t, size_t *out);

// # Safety
// `t` must be a live handle; `out` must be writable.
enum SwStatus sw_table_cols(const struct SwTable *t, size_t *out);

// Floating-point value of one cell at D⁺.
//
// # Safety
// `t` must be a live handle; `re` and `im` must be writable.
enum SwStatus sw_table_cell_complex(const struct SwTable *t,
                                    size_t row,
                                    size_t col,
                                    double *re,
                                    double *im);

// Exact value of one cell at D⁺, e.g. `(1/2)*sqrt(2)`.
//
// # Safety
// `t` must be a live handle; `buf` must be valid for `len` bytes.
enum SwStatus sw_table_cell_string(const struct SwTable *t,
                                   size_t row,
                                   size_t col,
                                   char *buf,
                                   size_t len,
                                   size_t *required);

// Row label λ, with a trailing `'` for the associate.
//
// # Safety
// `t` must be a live handle; `buf` must be valid for `len` bytes.
enum SwStatus sw_table_row_label(const struct SwTable *t,
                                 size_t row,
                                 char *buf,
                                 size_t len,
                                 size_t *required);

// Column label ρ.
//
// # Safety
// `t` must be a live handle; `buf` must be valid for `len` bytes.
enum SwStatus sw_table_col_label(const struct SwTable *t,
                                 size_t col,
                                 char *buf,
                                 size_t len,
                                 size_t *required);

// The table as a JSON document. Free the result with [`sw_string_free`].
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum SwStatus sw_table_to_json(const struct SwTable *t, char **out);

// # Safety
// `s` must come from [`sw_table_to_json`] and not be freed twice. Null is ignored.
void sw_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPINWREATH_H */

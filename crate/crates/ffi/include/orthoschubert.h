#ifndef ORTHOSCHUBERT_H
#define ORTHOSCHUBERT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes. `Ok` is zero; everything else is a failure.
 */
typedef enum OsStatus {
  OS_STATUS_OK = 0,
  OS_STATUS_NULL_POINTER = 1,
  OS_STATUS_INVALID_UTF8 = 2,
  /*
   Malformed input or violated precondition.
   */
  OS_STATUS_USAGE = 3,
  /*
   The mathematics refuses the request.
   */
  OS_STATUS_DOMAIN = 4,
  /*
   A Bott-Chern component must be supplied through a plugin.
   */
  OS_STATUS_MISSING_BOTT_CHERN = 5,
  /*
   A panic was caught at the boundary.
   */
  OS_STATUS_INTERNAL = 6,
} OsStatus;

/*
 Opaque set of Bott-Chern inputs.
 */
typedef struct OsPlugin OsPlugin;

/*
 Opaque polynomial with rational coefficients.
 */
typedef struct OsPolynomial OsPolynomial;

/*
 Opaque signed permutation.
 */
typedef struct OsSignedPerm OsSignedPerm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failure on this thread, or NULL. The pointer stays
 valid until the next call into the library on this thread.
 */
const char *os_last_error(void);

/*
 Frees a string returned by the library. NULL is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void os_string_free(char *s);

/*
 Parses a signed permutation such as `"-3,-1,2"`.

 # Safety
 `text` must be a NUL-terminated string; `out` must be writable.
 */
enum OsStatus os_perm_parse(const char *text, struct OsSignedPerm **out);

/*
 # Safety
 `p` must come from [`os_perm_parse`] and not have been freed. NULL is ignored.
 */
void os_perm_free(struct OsSignedPerm *p);

/*
 Rank `n` and Coxeter length of `p`.

 # Safety
 `p` must be a live handle; out-pointers must be writable.
 */
enum OsStatus os_perm_info(const struct OsSignedPerm *p, size_t *n, size_t *length);

/*
 The orthogonal Schubert polynomial `D_w`.

 # Safety
 `w` must be a live handle; `out` must be writable.
 */
enum OsStatus os_schubert(const struct OsSignedPerm *w, struct OsPolynomial **out);

/*
 # Safety
 `p` must come from this library and not have been freed. NULL is ignored.
 */
void os_poly_free(struct OsPolynomial *p);

/*
 Wire JSON `{"n": .., "terms": [{"exp": [..], "coef": "p/q"}]}`.

 # Safety
 `p` must be a live handle; `out` must be writable.
 */
enum OsStatus os_poly_to_json(const struct OsPolynomial *p, char **out);

/*
 The `P~_lambda S_pi` rendering of `D_w`, as in the table.

 # Safety
 `w` must be a live handle; `out` must be writable.
 */
enum OsStatus os_render(const struct OsSignedPerm *w, char **out);

/*
 The full table for `W~_n`, header included.

 # Safety
 `out` must be writable.
 */
enum OsStatus os_table(size_t n, char **out);

/*
 `f^w_{lambda, pi}`; `lambda` holds its parts, `pi` its one-line entries.

 # Safety
 Array pointers must be valid for their lengths; `out` must be writable.
 */
enum OsStatus os_f_coeff(const struct OsSignedPerm *w,
                         const size_t *lambda,
                         size_t lambda_len,
                         const size_t *pi,
                         size_t pi_len,
                         uint64_t *out);

/*
 Structure constants of `D_u D_v` as JSON.

 # Safety
 Handles must be live; `out` must be writable.
 */
enum OsStatus os_structure_constants(const struct OsSignedPerm *u,
                                     const struct OsSignedPerm *v,
                                     char **out);

/*
 Loads Bott-Chern inputs from plugin JSON.

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum OsStatus os_plugin_from_json(const char *json, struct OsPlugin **out);

/*
 # Safety
 `p` must come from [`os_plugin_from_json`] and not have been freed. NULL is ignored.
 */
void os_plugin_free(struct OsPlugin *p);

/*
 Arithmetic degree of `x^_1^{e_1} ... x^_n^{e_n}` as an exact rational
 string `"p/q"` (or `"p"`). `plugin` may be NULL.

 # Safety
 `exps` must be valid for `n` entries; `plugin` must be NULL or live;
 `out` must be writable.
 */
enum OsStatus os_arith_degree(const uint32_t *exps,
                              size_t n,
                              const struct OsPlugin *plugin,
                              char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORTHOSCHUBERT_H */

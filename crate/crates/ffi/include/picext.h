#ifndef PICEXT_H
#define PICEXT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes. The values 2, 3 and 4 agree with the exit codes of the
// `picext` binary.
typedef enum PicextStatus {
  PICEXT_STATUS_OK = 0,
  PICEXT_STATUS_NULL_POINTER = 1,
  PICEXT_STATUS_PARSE = 2,
  PICEXT_STATUS_VALIDATION = 3,
  PICEXT_STATUS_PRECONDITION = 4,
  PICEXT_STATUS_INVALID_UTF8 = 6,
  PICEXT_STATUS_UNKNOWN_ENTITY = 7,
  PICEXT_STATUS_OVERFLOW = 8,
  PICEXT_STATUS_BUFFER_TOO_SMALL = 9,
  PICEXT_STATUS_PANIC = 10,
} PicextStatus;

// An element of a [`PicextExtGroup`].
typedef struct PicextClass PicextClass;

// A bounded complex of finitely presented abelian groups.
typedef struct PicextComplex PicextComplex;

// A parsed document.
typedef struct PicextDocument PicextDocument;

// The group `Hom_D(A, B[i])` with its canonical coordinates.
typedef struct PicextExtGroup PicextExtGroup;

// An extension `B -> E -> A` of length-3 complexes.
typedef struct PicextExtension PicextExtension;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread; empty after a success.
// Valid until the next call on the same thread.
const char *picext_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` is null or was returned by this library and not yet freed.
void picext_string_free(char *s);

// Parses and validates a document.
//
// # Safety
// `text` is a nul-terminated string; `out` is writable.
enum PicextStatus picext_document_parse(const char *text, struct PicextDocument **out);

// # Safety
// `doc` is null or a live document handle.
void picext_document_free(struct PicextDocument *doc);

// Canonical text of a document; free with [`picext_string_free`].
//
// # Safety
// `doc` is a live document handle; `out` is writable.
enum PicextStatus picext_document_emit(const struct PicextDocument *doc, char **out);

// Copies the complex `name` out of a document.
//
// # Safety
// `doc` is a live handle, `name` a nul-terminated string, `out` writable.
enum PicextStatus picext_document_complex(const struct PicextDocument *doc,
                                          const char *name,
                                          struct PicextComplex **out);

// Copies the extension `name` out of a document.
//
// # Safety
// `doc` is a live handle, `name` a nul-terminated string, `out` writable.
enum PicextStatus picext_document_extension(const struct PicextDocument *doc,
                                            const char *name,
                                            struct PicextExtension **out);

// Runs a command of the `picext` binary on `input` (which may be null).
// `out` receives standard output, `err` the diagnostics and `code` the exit
// code; either string pointer may be null when not wanted.
//
// # Safety
// `input` is null or nul-terminated; `command` and the `argc` entries of
// `argv` are nul-terminated; non-null out-pointers are writable.
enum PicextStatus picext_run(const char *input,
                             const char *command,
                             const char *const *argv,
                             size_t argc,
                             uint64_t seed,
                             size_t count,
                             char **out,
                             char **err,
                             int32_t *code);

// `Z/m` concentrated in degree `n`; `m = 0` gives `Z`.
struct PicextComplex *picext_complex_cyclic(int64_t m, int32_t n);

// # Safety
// `c` is null or a live complex handle.
void picext_complex_free(struct PicextComplex *c);

// Elementary divisors of `H^n`, zeros for free summands.
//
// # Safety
// `c` is a live handle; `buf` has room for `cap` entries; `len` is writable.
enum PicextStatus picext_complex_cohomology(const struct PicextComplex *c,
                                            int32_t n,
                                            int64_t *buf,
                                            size_t cap,
                                            size_t *len);

// `Hom_D(A, B[i])`.
//
// # Safety
// `a`, `b` are live complex handles; `out` is writable.
enum PicextStatus picext_ext_group(const struct PicextComplex *a,
                                   const struct PicextComplex *b,
                                   int32_t i,
                                   struct PicextExtGroup **out);

// # Safety
// `g` is null or a live handle.
void picext_ext_group_free(struct PicextExtGroup *g);

// Elementary divisors of the group; a coordinate vector has this length.
//
// # Safety
// `g` is a live handle; `buf` has room for `cap` entries; `len` is writable.
enum PicextStatus picext_ext_group_divisors(const struct PicextExtGroup *g,
                                            int64_t *buf,
                                            size_t cap,
                                            size_t *len);

// The class with canonical coordinates `coords[0..len]`.
//
// # Safety
// `g` is a live handle; `coords` has `len` entries; `out` is writable.
enum PicextStatus picext_ext_group_class(const struct PicextExtGroup *g,
                                         const int64_t *coords,
                                         size_t len,
                                         struct PicextClass **out);

// # Safety
// `c` is null or a live handle.
void picext_class_free(struct PicextClass *c);

// Canonical coordinates of a class.
//
// # Safety
// `c` is a live handle; `buf` has room for `cap` entries; `len` is writable.
enum PicextStatus picext_class_coords(const struct PicextClass *c,
                                      int64_t *buf,
                                      size_t cap,
                                      size_t *len);

// The extension `Ψ(x)` realising a degree-1 class.
//
// # Safety
// `x` is a live handle; `out` is writable.
enum PicextStatus picext_class_realize(const struct PicextClass *x, struct PicextExtension **out);

// The split extension `B -> A ⊕ B -> A`.
//
// # Safety
// `a`, `b` are live handles of complexes in degrees -2..0; `out` is writable.
enum PicextStatus picext_extension_neutral(const struct PicextComplex *a,
                                           const struct PicextComplex *b,
                                           struct PicextExtension **out);

// # Safety
// `e` is null or a live handle.
void picext_extension_free(struct PicextExtension *e);

// Writes the two exactness conditions; returns `PICEXT_STATUS_OK` either way.
//
// # Safety
// `e` is a live handle; `cond_a`, `cond_b` are writable.
enum PicextStatus picext_extension_validate(const struct PicextExtension *e,
                                            bool *cond_a,
                                            bool *cond_b);

// The class `Θ(e)` in `Hom_D(A, B[1])`.
//
// # Safety
// `e` is a live handle; `out` is writable.
enum PicextStatus picext_extension_theta(const struct PicextExtension *e, struct PicextClass **out);

// Baer sum of two extensions of `A` by `B`.
//
// # Safety
// `e1`, `e2` are live handles; `out` is writable.
enum PicextStatus picext_extension_baer_sum(const struct PicextExtension *e1,
                                            const struct PicextExtension *e2,
                                            struct PicextExtension **out);

// Whether `e1` and `e2` are equivalent, by a validated witness.
//
// # Safety
// `e1`, `e2` are live handles; `equivalent` is writable.
enum PicextStatus picext_extension_equivalent(const struct PicextExtension *e1,
                                              const struct PicextExtension *e2,
                                              bool *equivalent);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PICEXT_H */

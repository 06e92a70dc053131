/* C ABI for the weilcat library. See the crate docs for conventions. */

#ifndef WEILCAT_H
#define WEILCAT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call in this ABI.
typedef enum WcStatus {
  // The call succeeded and all out-pointers were written.
  WC_STATUS_OK = 0,
  // A required pointer argument was null.
  WC_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  WC_STATUS_INVALID_UTF8 = 2,
  // A textual argument did not parse; see `wc_last_error_message`.
  WC_STATUS_PARSE_ERROR = 3,
  // Inputs parsed but the operation is undefined on them (boundary or
  // parameter mismatch); see `wc_last_error_message`.
  WC_STATUS_DOMAIN_ERROR = 4,
  // The checked generator images do not define a morphism.
  WC_STATUS_NOT_HOM = 5,
  // The result does not fit the requested fixed-width type.
  WC_STATUS_OVERFLOW = 6,
  // An internal invariant failed; see `wc_last_error_message`.
  WC_STATUS_INTERNAL = 7,
} WcStatus;

// Opaque handle to a Weil ℕ-algebra.
typedef struct WcAlgebra WcAlgebra;

// Opaque handle to a morphism of Weil ℕ-algebras.
typedef struct WcMorphism WcMorphism;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns a static name for a status code. Never fails; never free the
// result.
const char *wc_status_name(enum WcStatus status);

// Returns a copy of the current thread's last error message, or null if the
// last call on this thread succeeded. The caller frees it with
// [`wc_string_free`].
char *wc_last_error_message(void);

// Frees a string returned by this library.
//
// # Safety
// `text` must be null or a pointer previously returned through a `char**`
// out-parameter or [`wc_last_error_message`], not yet freed.
void wc_string_free(char *text);

// Parses an algebra like `N` or `W^2@W` into a new handle.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be a valid pointer.
enum WcStatus wc_algebra_parse(const char *text, struct WcAlgebra **out);

// Renders an algebra handle back to its textual form.
//
// # Safety
// `algebra` must be a live handle; `out` must be a valid pointer.
enum WcStatus wc_algebra_to_string(const struct WcAlgebra *algebra, char **out);

// Writes the number of generators of an algebra.
//
// # Safety
// `algebra` must be a live handle; `out` must be a valid pointer.
enum WcStatus wc_algebra_generator_count(const struct WcAlgebra *algebra, uint32_t *out);

// Writes the size of the monomial basis, `∏ (nᵢ + 1)`.
//
// # Safety
// `algebra` must be a live handle; `out` must be a valid pointer.
enum WcStatus wc_algebra_basis_size(const struct WcAlgebra *algebra, uint64_t *out);

// Writes 1 if the algebras are equal (same block widths), else 0.
//
// # Safety
// `left` and `right` must be live handles; `out` must be a valid pointer.
enum WcStatus wc_algebra_equal(const struct WcAlgebra *left,
                               const struct WcAlgebra *right,
                               int *out);

// Tensors two algebras into a new handle.
//
// # Safety
// `left` and `right` must be live handles; `out` must be a valid pointer.
enum WcStatus wc_algebra_tensor(const struct WcAlgebra *left,
                                const struct WcAlgebra *right,
                                struct WcAlgebra **out);

// Frees an algebra handle. Null is ignored.
//
// # Safety
// `algebra` must be null or a live handle from this library, not yet freed.
void wc_algebra_free(struct WcAlgebra *algebra);

// Parses a morphism like `[W -> W@W]{ x1 -> x1*x2 }` into a new handle.
// The images are hom-checked; a violation is a parse-level rejection here
// (use [`wc_check_hom`] to obtain the witness).
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be a valid pointer.
enum WcStatus wc_morphism_parse(const char *text, struct WcMorphism **out);

// Renders a morphism handle back to its textual form.
//
// # Safety
// `morphism` must be a live handle; `out` must be a valid pointer.
enum WcStatus wc_morphism_to_string(const struct WcMorphism *morphism, char **out);

// Clones a morphism's source algebra into a new handle.
//
// # Safety
// `morphism` must be a live handle; `out` must be a valid pointer.
enum WcStatus wc_morphism_source(const struct WcMorphism *morphism, struct WcAlgebra **out);

// Clones a morphism's target algebra into a new handle.
//
// # Safety
// `morphism` must be a live handle; `out` must be a valid pointer.
enum WcStatus wc_morphism_target(const struct WcMorphism *morphism, struct WcAlgebra **out);

// Composes two morphisms, outer after inner. Fails with
// `WC_STATUS_DOMAIN_ERROR` if the endpoints do not match.
//
// # Safety
// `outer` and `inner` must be live handles; `out` must be a valid pointer.
enum WcStatus wc_morphism_compose(const struct WcMorphism *outer,
                                  const struct WcMorphism *inner,
                                  struct WcMorphism **out);

// Tensors two morphisms into a new handle.
//
// # Safety
// `left` and `right` must be live handles; `out` must be a valid pointer.
enum WcStatus wc_morphism_tensor(const struct WcMorphism *left,
                                 const struct WcMorphism *right,
                                 struct WcMorphism **out);

// Frees a morphism handle. Null is ignored.
//
// # Safety
// `morphism` must be null or a live handle from this library, not yet freed.
void wc_morphism_free(struct WcMorphism *morphism);

// Checks whether the generator images in `text` define a morphism.
// Returns `WC_STATUS_OK` for a morphism. For a violation, returns
// `WC_STATUS_NOT_HOM` and, if `witness` is non-null, writes a description
// of the offending pair of generators and their image product.
//
// # Safety
// `text` must be a NUL-terminated string; `witness` must be null or a valid
// pointer.
enum WcStatus wc_check_hom(const char *text, char **witness);

// Parses `element` in `algebra` and writes its normal form.
//
// # Safety
// `algebra` and `element` must be NUL-terminated strings; `out` must be a
// valid pointer.
enum WcStatus wc_normalize(const char *algebra, const char *element, char **out);

// Verifies the vertical-lift square against `budget` seeded cones. Writes 1
// to `passed` if certification and every lift check succeed, else 0; writes
// the full JSON report if `report_json` is non-null.
//
// # Safety
// `passed` and `report_json` must each be null or valid pointers.
enum WcStatus wc_verify_vertical(uint64_t seed, size_t budget, int *passed, char **report_json);

// Verifies the foundational square on `base ⊗ W^{m+n}` against `budget`
// seeded cones; see [`wc_verify_vertical`] for the outputs. Fails with
// `WC_STATUS_DOMAIN_ERROR` if `m` or `n` is zero.
//
// # Safety
// `base` must be a NUL-terminated string; `passed` and `report_json` must
// each be null or valid pointers.
enum WcStatus wc_verify_foundational(const char *base,
                                     uint32_t m,
                                     uint32_t n,
                                     uint64_t seed,
                                     size_t budget,
                                     int *passed,
                                     char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEILCAT_H */

#ifndef ALPHA_TRAVERSAL_H
#define ALPHA_TRAVERSAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AlphaStatus {
  ALPHA_STATUS_OK = 0,
  ALPHA_STATUS_NULL_POINTER = 1,
  ALPHA_STATUS_INVALID_UTF8 = 2,
  ALPHA_STATUS_PARSE_ERROR = 3,
  ALPHA_STATUS_INVALID_ARGUMENT = 4,
  ALPHA_STATUS_BOUND_VIOLATION = 5,
  ALPHA_STATUS_IO_ERROR = 6,
  ALPHA_STATUS_PANIC = 7,
} AlphaStatus;

/**
 * Opaque certified-digits handle.
 */
typedef struct AlphaDigits AlphaDigits;

/**
 * Opaque tree handle.
 */
typedef struct AlphaTree AlphaTree;

/**
 * Traversal statistics of one fetch-and-discard traversal.
 */
typedef struct AlphaStats {
  uint64_t size;
  uint64_t tsl;
  /**
   * Splay-to-root rotations, `tsl - 1` (0 for the empty tree).
   */
  uint64_t cost;
  uint64_t rp;
  uint64_t irp;
} AlphaStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call into this library on the same thread.
 */
const char *alpha_last_error(void);

/**
 * Parse a tree in text form (`.`, `(L R)`, `M h`).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum AlphaStatus alpha_tree_parse(const char *text, struct AlphaTree **out);

/**
 * The maximal tree of height `h` (`h >= -1`, at most 40).
 *
 * # Safety
 * `out` must be writable.
 */
enum AlphaStatus alpha_tree_maximal(int32_t h, struct AlphaTree **out);

/**
 * A new tree: `tree` with `k` nodes chained above it as rightmost ancestors.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum AlphaStatus alpha_tree_extend(const struct AlphaTree *tree, size_t k, struct AlphaTree **out);

/**
 * A new tree with a fresh root whose left subtree is `left` and right
 * subtree is `right`.
 *
 * # Safety
 * `left` and `right` must be live handles; `out` must be writable.
 */
enum AlphaStatus alpha_tree_join(const struct AlphaTree *left,
                                 const struct AlphaTree *right,
                                 struct AlphaTree **out);

/**
 * A new tree: the result of `k` fetch-and-discard steps on `tree`.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum AlphaStatus alpha_tree_fetch(const struct AlphaTree *tree, size_t k, struct AlphaTree **out);

/**
 * Release a tree handle. Null is ignored.
 *
 * # Safety
 * `tree` must be null or a handle not yet freed.
 */
void alpha_tree_free(struct AlphaTree *tree);

/**
 * Number of nodes, or 0 for a null handle.
 *
 * # Safety
 * `tree` must be null or a live handle.
 */
size_t alpha_tree_size(const struct AlphaTree *tree);

/**
 * Traverse a copy of `tree` by fetch-and-discard.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum AlphaStatus alpha_tree_stats(const struct AlphaTree *tree, struct AlphaStats *out);

/**
 * Canonical text form of `tree`; free with [`alpha_string_free`].
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum AlphaStatus alpha_tree_format(const struct AlphaTree *tree, char **out);

/**
 * Root persistence of `M_h` doubly extended, from the lazy engine.
 *
 * # Safety
 * `out` must be writable.
 */
enum AlphaStatus alpha_rp_m2(uint32_t h, uint64_t *out);

/**
 * Initial root persistence of `M_h` doubly extended, from the lazy engine.
 *
 * # Safety
 * `out` must be writable.
 */
enum AlphaStatus alpha_irp_m2(uint32_t h, uint64_t *out);

/**
 * Certify digits of alpha at level `n` (> 1).
 *
 * # Safety
 * `out` must be writable.
 */
enum AlphaStatus alpha_certify(uint64_t n, struct AlphaDigits **out);

/**
 * Number of certified fraction digits, or 0 for a null handle.
 *
 * # Safety
 * `digits` must be null or a live handle.
 */
size_t alpha_digits_certified_count(const struct AlphaDigits *digits);

/**
 * The level the digits were certified at, or 0 for a null handle.
 *
 * # Safety
 * `digits` must be null or a live handle.
 */
uint64_t alpha_digits_level(const struct AlphaDigits *digits);

/**
 * Certified integer digits (empty if none); borrowed from the handle.
 *
 * # Safety
 * `digits` must be null or a live handle.
 */
const char *alpha_digits_integer_part(const struct AlphaDigits *digits);

/**
 * Certified fraction digits; borrowed from the handle.
 *
 * # Safety
 * `digits` must be null or a live handle.
 */
const char *alpha_digits_fraction(const struct AlphaDigits *digits);

/**
 * The digit file text; free with [`alpha_string_free`].
 *
 * # Safety
 * `digits` must be a live handle; `out` must be writable.
 */
enum AlphaStatus alpha_digits_file(const struct AlphaDigits *digits, bool annotated, char **out);

/**
 * Release a digits handle. Null is ignored.
 *
 * # Safety
 * `digits` must be null or a handle not yet freed.
 */
void alpha_digits_free(struct AlphaDigits *digits);

/**
 * Maximum self-overlap of a digit string.
 *
 * # Safety
 * `digits` must be a NUL-terminated string; `out` must be writable.
 */
enum AlphaStatus alpha_max_self_overlap(const char *digits, size_t *out);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void alpha_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ALPHA_TRAVERSAL_H */

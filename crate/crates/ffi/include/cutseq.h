#ifndef CUTSEQ_H
#define CUTSEQ_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CutseqRelation {
  CUTSEQ_RELATION_ADJACENT = 0,
  CUTSEQ_RELATION_SEPARATED = 1,
  CUTSEQ_RELATION_OVERLAPPED = 2,
} CutseqRelation;

typedef enum CutseqStatus {
  CUTSEQ_STATUS_OK = 0,
  CUTSEQ_STATUS_NULL_POINTER = 1,
  CUTSEQ_STATUS_INVALID_ARGUMENT = 2,
  CUTSEQ_STATUS_NOT_A_FACTOR = 3,
  CUTSEQ_STATUS_OVERFLOW = 4,
  CUTSEQ_STATUS_INTERNAL = 5,
} CutseqStatus;

/**
 * Opaque handle for one sequence `F_{d,∞}` together with its length cap.
 */
typedef struct CutseqSeq CutseqSeq;

/**
 * Star coordinates of a factor: kernel `K_{d,m,i}` and `(x, y)`.
 */
typedef struct CutseqStar {
  uint32_t m;
  uint32_t i;
  uint64_t x;
  uint64_t y;
} CutseqStar;

/**
 * A signed gap word: `sign` is -1 (inverse word), 0 (empty) or 1.
 */
typedef struct CutseqGap {
  int8_t sign;
  char *letters;
} CutseqGap;

/**
 * The two gaps of a factor and the index `B` of the first `G_B`.
 * Release with [`cutseq_gaps_free`].
 */
typedef struct CutseqGaps {
  struct CutseqGap ga;
  struct CutseqGap gb;
  uint32_t b;
} CutseqGaps;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a handle for `F_{d,∞}`. `cap` bounds the length of any word the
 * handle builds; 0 selects the default (2^20 letters).
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle pointer.
 */
enum CutseqStatus cutseq_seq_new(uint32_t d, size_t cap, struct CutseqSeq **out);

/**
 * # Safety
 * `handle` must be null or come from [`cutseq_seq_new`] and not be freed twice.
 */
void cutseq_seq_free(struct CutseqSeq *handle);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void cutseq_string_free(char *s);

/**
 * Message for the last failed call on this thread (empty after success).
 * The pointer stays valid until the next call into the library on this thread.
 */
const char *cutseq_last_error(void);

/**
 * The first `n` letters of `F_{d,∞}`.
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for writing.
 */
enum CutseqStatus cutseq_prefix(const struct CutseqSeq *handle, uint64_t n, char **out);

/**
 * The kernel word `K_{d,m,i}`.
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for writing.
 */
enum CutseqStatus cutseq_kernel_word(const struct CutseqSeq *handle,
                                     uint32_t m,
                                     uint32_t i,
                                     char **out);

/**
 * The envelope word `E_{d,m,i}`.
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for writing.
 */
enum CutseqStatus cutseq_envelope_word(const struct CutseqSeq *handle,
                                       uint32_t m,
                                       uint32_t i,
                                       char **out);

/**
 * Whether `word` (over `a`, `b`) is a factor of `F_{d,∞}`.
 *
 * # Safety
 * `handle` must be a live handle, `word` a NUL-terminated string and `out`
 * valid for writing.
 */
enum CutseqStatus cutseq_is_factor(const struct CutseqSeq *handle, const char *word, bool *out);

/**
 * Kernel and star coordinates of a factor.
 *
 * # Safety
 * As for [`cutseq_is_factor`].
 */
enum CutseqStatus cutseq_star_decompose(const struct CutseqSeq *handle,
                                        const char *word,
                                        struct CutseqStar *out);

/**
 * 1-based position of the `p`-th occurrence (`p >= 1`) of a factor.
 *
 * # Safety
 * As for [`cutseq_is_factor`].
 */
enum CutseqStatus cutseq_factor_position(const struct CutseqSeq *handle,
                                         const char *word,
                                         uint64_t p,
                                         uint64_t *out);

/**
 * The two gaps of a factor. Free the result with [`cutseq_gaps_free`].
 *
 * # Safety
 * As for [`cutseq_is_factor`].
 */
enum CutseqStatus cutseq_factor_gaps(const struct CutseqSeq *handle,
                                     const char *word,
                                     struct CutseqGaps *out);

/**
 * Release the strings inside a [`CutseqGaps`] filled by [`cutseq_factor_gaps`].
 *
 * # Safety
 * `gaps` must be null or point to a value filled by this library, freed once.
 */
void cutseq_gaps_free(struct CutseqGaps *gaps);

/**
 * The first `count` gap labels (`A`/`B`) for kernel type `i`.
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for writing.
 */
enum CutseqStatus cutseq_gap_labels(const struct CutseqSeq *handle,
                                    uint32_t i,
                                    size_t count,
                                    char **out);

/**
 * How the `p`-th and `(p+1)`-th occurrences of a factor sit relative to each other.
 *
 * # Safety
 * As for [`cutseq_is_factor`].
 */
enum CutseqStatus cutseq_relation_at(const struct CutseqSeq *handle,
                                     const char *word,
                                     uint64_t p,
                                     enum CutseqRelation *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUTSEQ_H */

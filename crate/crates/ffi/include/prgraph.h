/* Generated by cbindgen; do not edit. */

#ifndef PRGRAPH_H
#define PRGRAPH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by all functions.
 */
typedef enum PrgStatus {
  PRG_STATUS_OK = 0,
  PRG_STATUS_NULL_POINTER = 1,
  PRG_STATUS_INVALID_ARGUMENT = 2,
  PRG_STATUS_CAP_EXCEEDED = 3,
  PRG_STATUS_NOT_GENERATING = 4,
  PRG_STATUS_NOT_CONNECTED = 5,
  PRG_STATUS_INTERNAL = 6,
} PrgStatus;

/**
 * Opaque finite group handle.
 */
typedef struct PrgGroup PrgGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *prg_version(void);

/**
 * Message of the last failed call on this thread, or NULL. The pointer is
 * valid until the next library call on the same thread.
 */
const char *prg_last_error(void);

/**
 * Releases a string returned by the library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void prg_string_free(char *s);

/**
 * Builds a group from a spec such as `"psl2:5"` or `"ab:5,5"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` writable.
 */
enum PrgStatus prg_group_new(const char *spec, struct PrgGroup **out_group);

/**
 * Releases a group. NULL is ignored.
 *
 * # Safety
 * `g` must come from [`prg_group_new`] and not have been freed.
 */
void prg_group_free(struct PrgGroup *g);

/**
 * # Safety
 * `g` must be a live handle and `out_order` writable.
 */
enum PrgStatus prg_group_order(const struct PrgGroup *g, uint64_t *out_order);

/**
 * # Safety
 * `g` must be a live handle and `out_id` writable.
 */
enum PrgStatus prg_group_mul(const struct PrgGroup *g, uint32_t x, uint32_t y, uint32_t *out_id);

/**
 * # Safety
 * `g` must be a live handle and `out_id` writable.
 */
enum PrgStatus prg_group_inv(const struct PrgGroup *g, uint32_t x, uint32_t *out_id);

/**
 * Parses a tuple literal into `out_ids`. `out_len` receives the tuple
 * length even when `capacity` is too small (then InvalidArgument).
 *
 * # Safety
 * `out_ids` must hold `capacity` ids; `out_len` must be writable.
 */
enum PrgStatus prg_parse_tuple(const struct PrgGroup *g,
                               const char *literal,
                               uint32_t *out_ids,
                               size_t capacity,
                               size_t *out_len);

/**
 * # Safety
 * `ids` must hold `k` ids; `out_result` must be writable.
 */
enum PrgStatus prg_is_generating(const struct PrgGroup *g,
                                 const uint32_t *ids,
                                 size_t k,
                                 bool *out_result);

/**
 * Number of connected components of the graph on generating `k`-tuples.
 *
 * # Safety
 * `g` must be a live handle and `out_count` writable.
 */
enum PrgStatus prg_components(const struct PrgGroup *g,
                              size_t k,
                              bool extended,
                              uint64_t *out_count);

/**
 * Number of T-systems of generating `k`-tuples.
 *
 * # Safety
 * `g` must be a live handle and `out_count` writable.
 */
enum PrgStatus prg_tsystem_count(const struct PrgGroup *g, size_t k, uint64_t *out_count);

/**
 * One element drawn by the product replacement walk after `burn_in` steps.
 *
 * # Safety
 * `g` must be a live handle and `out_id` writable.
 */
enum PrgStatus prg_walk_sample(const struct PrgGroup *g,
                               size_t k,
                               uint64_t burn_in,
                               uint64_t seed,
                               uint32_t *out_id);

/**
 * Applies a move word (`"R+ 1 2 P 1 3 I 2"`, 1-based) to a tuple.
 *
 * # Safety
 * `ids` and `out_ids` must each hold `k` ids.
 */
enum PrgStatus prg_apply_word(const struct PrgGroup *g,
                              const uint32_t *ids,
                              size_t k,
                              const char *word,
                              uint32_t *out_ids);

/**
 * Shortest move word taking a generating tuple to one containing the
 * identity. `max_visited` of 0 means unlimited. On success `out_word`
 * receives a string to release with [`prg_string_free`].
 *
 * # Safety
 * `ids` must hold `k` ids; `out_word` must be writable.
 */
enum PrgStatus prg_to_redundant(const struct PrgGroup *g,
                                const uint32_t *ids,
                                size_t k,
                                bool extended,
                                uint64_t max_visited,
                                char **out_word);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRGRAPH_H */

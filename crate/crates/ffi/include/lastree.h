#ifndef LASTREE_H
#define LASTREE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LastreeStatus {
  LASTREE_STATUS_OK = 0,
  LASTREE_STATUS_NULL_POINTER = 1,
  LASTREE_STATUS_INVALID_ARGUMENT = 2,
  LASTREE_STATUS_PARSE = 3,
  LASTREE_STATUS_NOT_CONNECTED = 4,
  LASTREE_STATUS_INEXACT_WEIGHTS = 5,
  LASTREE_STATUS_TOO_LARGE = 6,
  LASTREE_STATUS_BUFFER_TOO_SMALL = 7,
  LASTREE_STATUS_INTERNAL = 8,
} LastreeStatus;

/**
 * A parsed graph.
 */
typedef struct LastreeGraph LastreeGraph;

/**
 * A rooted spanning tree.
 */
typedef struct LastreeTree LastreeTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *lastree_last_error_message(void);

/**
 * Parses a graph in the text format of the `lastree` CLI.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum LastreeStatus lastree_graph_parse(const char *text, struct LastreeGraph **out);

/**
 * # Safety
 * `g` must be null or a handle not yet freed.
 */
void lastree_graph_free(struct LastreeGraph *g);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
uintptr_t lastree_graph_vertex_count(const struct LastreeGraph *g);

/**
 * Builds an (α, 1 + 2/(α-1))-LAST with `α = alpha_num / alpha_den > 1`.
 * A negative `root` selects the graph's recorded root (or 0).
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum LastreeStatus lastree_find_last(const struct LastreeGraph *g,
                                     int64_t root,
                                     int64_t alpha_num,
                                     int64_t alpha_den,
                                     struct LastreeTree **out);

/**
 * Same contract as [`lastree_find_last`], using the emulation of the
 * parallel construction.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum LastreeStatus lastree_parallel_last(const struct LastreeGraph *g,
                                         int64_t root,
                                         int64_t alpha_num,
                                         int64_t alpha_den,
                                         struct LastreeTree **out);

/**
 * Minimum-weight shortest-path tree; exact-weight graphs only.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum LastreeStatus lastree_min_spt(const struct LastreeGraph *g,
                                   int64_t root,
                                   struct LastreeTree **out);

/**
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum LastreeStatus lastree_mst(const struct LastreeGraph *g,
                               int64_t root,
                               struct LastreeTree **out);

/**
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum LastreeStatus lastree_spt(const struct LastreeGraph *g,
                               int64_t root,
                               struct LastreeTree **out);

/**
 * # Safety
 * `t` must be null or a handle not yet freed.
 */
void lastree_tree_free(struct LastreeTree *t);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `t` must be null or a live tree handle.
 */
uintptr_t lastree_tree_vertex_count(const struct LastreeTree *t);

/**
 * Copies parent ids into `buf` (`-1` at the root). `len` must be at least
 * the vertex count.
 *
 * # Safety
 * `buf` must point to `len` writable `int64_t`.
 */
enum LastreeStatus lastree_tree_parents(const struct LastreeTree *t, int64_t *buf, uintptr_t len);

/**
 * Total tree weight as a double (exact weights are converted).
 *
 * # Safety
 * `t` must be a live tree handle; `out` must be writable.
 */
enum LastreeStatus lastree_tree_weight(const struct LastreeTree *t, double *out);

/**
 * Total tree weight of an exact-weight tree.
 *
 * # Safety
 * `t` must be a live tree handle; `out` must be writable.
 */
enum LastreeStatus lastree_tree_weight_exact(const struct LastreeTree *t, uint64_t *out);

/**
 * Tree as JSON (`root`, `parent`, `dist`, `weight`). Release the string with
 * [`lastree_string_free`].
 *
 * # Safety
 * `t` must be a live tree handle; `out` must be writable.
 */
enum LastreeStatus lastree_tree_to_json(const struct LastreeTree *t, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void lastree_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LASTREE_H */

#ifndef DISTINGUISH_H
#define DISTINGUISH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Distinguishing checks on a truncation consider only automorphisms that
 * fix the boundary sphere vertex by vertex.
 */
#define DG_MODE_POINTWISE 0

/**
 * Distinguishing checks on a truncation consider all automorphisms that map
 * the boundary sphere onto itself.
 */
#define DG_MODE_SETWISE 1

/**
 * Result of a call.
 */
typedef enum DgStatus {
  DG_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  DG_STATUS_NULL_POINTER = -1,
  /**
   * A string argument was not valid UTF-8.
   */
  DG_STATUS_INVALID_UTF8 = -2,
  /**
   * Malformed input: unparsable JSON or family string, or a colouring
   * that does not fit its graph.
   */
  DG_STATUS_INVALID_INPUT = -3,
  /**
   * The input is well formed but outside what the operation accepts.
   */
  DG_STATUS_PRECONDITION = -4,
  /**
   * A construction produced output that failed its own check.
   */
  DG_STATUS_CERTIFICATION = -5,
  /**
   * A size bound or time budget was exceeded.
   */
  DG_STATUS_LIMIT = -6,
  /**
   * An internal panic was caught at the boundary.
   */
  DG_STATUS_PANIC = -7,
} DgStatus;

/**
 * A vertex, edge or total colouring.
 */
typedef struct DgColouring DgColouring;

/**
 * A finite graph or a truncation.
 */
typedef struct DgGraph DgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses graph JSON (`{"n": .., "edges": [[u, v], ..]}`), or truncation JSON
 * when `root` and `radius` are present.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` valid for a write.
 */
enum DgStatus dg_graph_from_json(const char *json, struct DgGraph **out);

/**
 * Builds a named family member such as `cycle(6)` or
 * `family:regular_tree(3,20)`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` valid for a write.
 */
enum DgStatus dg_graph_from_family(const char *spec, struct DgGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library not yet freed.
 */
void dg_graph_free(struct DgGraph *g);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t dg_graph_vertex_count(const struct DgGraph *g);

/**
 * Number of edges, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t dg_graph_edge_count(const struct DgGraph *g);

/**
 * Whether the graph is a truncation (a ball with a root and a radius).
 *
 * # Safety
 * `g` must be null or a live handle.
 */
bool dg_graph_is_truncation(const struct DgGraph *g);

/**
 * Parses colouring JSON such as `{"kind": "vertex", "vertex_colours": [1, 2]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` valid for a write.
 */
enum DgStatus dg_colouring_from_json(const char *json, struct DgColouring **out);

/**
 * Serialises a colouring to JSON.
 *
 * # Safety
 * `c` must be a live handle and `out` valid for a write.
 */
enum DgStatus dg_colouring_to_json(const struct DgColouring *c, char **out);

/**
 * Number of distinct colours used, or 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live handle.
 */
size_t dg_colouring_num_colours(const struct DgColouring *c);

/**
 * # Safety
 * `c` must be null or a handle from this library not yet freed.
 */
void dg_colouring_free(struct DgColouring *c);

/**
 * Exact invariants of the graph as a JSON report. `budget_ms` bounds each
 * computation; 0 means no budget. Entries that run out of budget are
 * reported as missing rather than failing the call.
 *
 * # Safety
 * `g` must be a live handle and `out` valid for a write.
 */
enum DgStatus dg_invariants_json(const struct DgGraph *g, uint64_t budget_ms, char **out);

/**
 * Runs a construction by name (`2d1`, `tree3`, `subcubic4`, ...) and
 * returns its certified colouring. `input` may be null; constructions that
 * transform a colouring then build their own starting point. When `audit`
 * is non-null it receives the construction's audit record as JSON.
 *
 * # Safety
 * `g` must be a live handle, `algorithm` a NUL-terminated string, `input`
 * null or a live handle, `out` valid for a write and `audit` null or valid
 * for a write.
 */
enum DgStatus dg_construct(const struct DgGraph *g,
                           const char *algorithm,
                           const struct DgColouring *input,
                           struct DgColouring **out,
                           char **audit);

/**
 * Whether no non-identity automorphism preserves the colouring. On a
 * truncation, `mode` selects [`DG_MODE_POINTWISE`] or [`DG_MODE_SETWISE`];
 * it is ignored for finite graphs.
 *
 * # Safety
 * `g` and `c` must be live handles and `out` valid for a write.
 */
enum DgStatus dg_is_distinguishing(const struct DgGraph *g,
                                   const struct DgColouring *c,
                                   int32_t mode,
                                   bool *out);

/**
 * Whether adjacent or incident elements always get different colours.
 *
 * # Safety
 * `g` and `c` must be live handles and `out` valid for a write.
 */
enum DgStatus dg_is_proper(const struct DgGraph *g, const struct DgColouring *c, bool *out);

/**
 * Message for the last failed call on this thread, or an empty string. The
 * pointer stays valid until the next call into the library on this thread.
 */
const char *dg_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void dg_string_free(char *s);

/**
 * Library version, statically allocated.
 */
const char *dg_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DISTINGUISH_H */

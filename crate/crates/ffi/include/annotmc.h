#ifndef ANNOTMC_H
#define ANNOTMC_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum AnnotmcStatus {
  ANNOTMC_STATUS_OK = 0,
  ANNOTMC_STATUS_NULL_POINTER = 1,
  ANNOTMC_STATUS_INVALID_UTF8 = 2,
  ANNOTMC_STATUS_PARSE = 3,
  ANNOTMC_STATUS_SYNTAX = 4,
  ANNOTMC_STATUS_SCOPE = 5,
  ANNOTMC_STATUS_SEMANTIC = 6,
  ANNOTMC_STATUS_ENVELOPE = 7,
  ANNOTMC_STATUS_PRECONDITION = 8,
  ANNOTMC_STATUS_CONTRACT = 9,
  ANNOTMC_STATUS_PANIC = 10,
} AnnotmcStatus;

/**
 * Opaque formula handle.
 */
typedef struct AnnotmcFormula AnnotmcFormula;

/**
 * Opaque graph handle.
 */
typedef struct AnnotmcGraph AnnotmcGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *annotmc_last_error(void);

/**
 * Static name of a status code.
 */
const char *annotmc_status_name(enum AnnotmcStatus status);

/**
 * Parses a graph file.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum AnnotmcStatus annotmc_graph_parse(const char *text_ptr, struct AnnotmcGraph **out);

/**
 * Generates a graph family member, e.g. `"outer_grid"` with `k = 3`.
 *
 * # Safety
 * `family` must be a NUL-terminated string and `out` a valid pointer.
 */
enum AnnotmcStatus annotmc_graph_generate(const char *family, size_t k, struct AnnotmcGraph **out);

/**
 * Releases a graph. NULL is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void annotmc_graph_free(struct AnnotmcGraph *g);

/**
 * Number of vertices, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live graph handle.
 */
size_t annotmc_graph_vertex_count(const struct AnnotmcGraph *g);

/**
 * Number of edges, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live graph handle.
 */
size_t annotmc_graph_edge_count(const struct AnnotmcGraph *g);

/**
 * Replaces the annotation by the vertices with the given ids.
 *
 * # Safety
 * `g` must be a live graph handle and `ids` must point to `len` values
 * (it may be NULL when `len` is 0).
 */
enum AnnotmcStatus annotmc_graph_set_annotation(struct AnnotmcGraph *g,
                                                const uint32_t *ids,
                                                size_t len);

/**
 * The graph in file form; release with [`annotmc_string_free`]. NULL on failure.
 *
 * # Safety
 * `g` must be NULL or a live graph handle.
 */
char *annotmc_graph_print(const struct AnnotmcGraph *g);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void annotmc_string_free(char *s);

/**
 * Parses a formula. Free variables must be listed in `free`, a
 * space-separated list of names that may be NULL for closed formulas.
 *
 * # Safety
 * `text` must be a NUL-terminated string, `free` NULL or a NUL-terminated
 * string, and `out` a valid pointer.
 */
enum AnnotmcStatus annotmc_formula_parse(const char *text_ptr,
                                         const char *free,
                                         struct AnnotmcFormula **out);

/**
 * Releases a formula. NULL is ignored.
 *
 * # Safety
 * `f` must come from this library and not be used afterwards.
 */
void annotmc_formula_free(struct AnnotmcFormula *f);

/**
 * Evaluates `f` on `g`. The annotation is visible as the color `annot`;
 * `env` holds bindings such as `"x=3 X=1,2"` and may be NULL.
 *
 * # Safety
 * `g` and `f` must be live handles, `env` NULL or a NUL-terminated string,
 * and `verdict` a valid pointer.
 */
enum AnnotmcStatus annotmc_evaluate(const struct AnnotmcGraph *g,
                                    const struct AnnotmcFormula *f,
                                    const char *env,
                                    bool *verdict);

/**
 * Computes a parameter (`"ttw"`, `"bog"`, ...) of the annotated graph.
 *
 * # Safety
 * `g` must be a live handle, `kind` a NUL-terminated string and `value` a
 * valid pointer.
 */
enum AnnotmcStatus annotmc_param(const struct AnnotmcGraph *g, const char *kind, size_t *value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ANNOTMC_H */

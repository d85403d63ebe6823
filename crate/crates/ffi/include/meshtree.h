#ifndef MESHTREE_H
#define MESHTREE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>
#include <stdbool.h>

// Identities available through [`mt_complex_check_json`].
typedef enum MtCwCheck {
  MT_CW_CHECK_STAR = 0,
  MT_CW_CHECK_HIGHER = 1,
  MT_CW_CHECK_INTEGRAL = 2,
} MtCwCheck;

// Reports available through [`mt_graph_report_json`].
typedef enum MtReport {
  MT_REPORT_MESH = 0,
  MT_REPORT_CHARPOLY = 1,
  MT_REPORT_VERIFY = 2,
  MT_REPORT_KIRCHHOFF = 3,
  MT_REPORT_ALLMINORS = 4,
  MT_REPORT_TORSION = 5,
  MT_REPORT_FLUX = 6,
  MT_REPORT_COUNT_TREES = 7,
} MtReport;

// Status codes returned by every fallible function.
typedef enum MtStatus {
  MT_STATUS_OK = 0,
  MT_STATUS_NULL_POINTER = 1,
  MT_STATUS_INVALID_UTF8 = 2,
  MT_STATUS_PARSE = 3,
  MT_STATUS_INVALID_INPUT = 4,
  MT_STATUS_NOT_CONNECTED = 5,
  MT_STATUS_INVALID_TREE = 6,
  // The report was produced but an identity it checks failed.
  MT_STATUS_VERIFICATION_FAILED = 7,
  MT_STATUS_TOO_LARGE = 8,
  MT_STATUS_INTERNAL = 9,
} MtStatus;

// Opaque CW complex handle.
typedef struct MtComplex MtComplex;

// Opaque multigraph handle.
typedef struct MtGraph MtGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a graph in the `v n` / `e tail head` text format.
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
enum MtStatus mt_graph_parse(const char *text, struct MtGraph **out);

// Builds a graph from parallel arrays of tails and heads; edge `i` gets id `i`.
//
// # Safety
// `tails` and `heads` must hold `edge_count` elements; `out` must be valid.
enum MtStatus mt_graph_new(uintptr_t vertex_count,
                           const uintptr_t *tails,
                           const uintptr_t *heads,
                           uintptr_t edge_count,
                           struct MtGraph **out);

// # Safety
// `g` must be null or a handle from this library not yet freed.
void mt_graph_free(struct MtGraph *g);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
uintptr_t mt_graph_vertex_count(const struct MtGraph *g);

// Number of edges, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
uintptr_t mt_graph_edge_count(const struct MtGraph *g);

// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum MtStatus mt_count_spanning_trees(const struct MtGraph *g, uint64_t *out);

// `det Mesh(G, T₀)` as a decimal string. A null `tree` selects the
// canonical spanning tree.
//
// # Safety
// `g` must be live, `tree` null or `tree_len` readable ids, `out` valid.
enum MtStatus mt_mesh_determinant(const struct MtGraph *g,
                                  const uintptr_t *tree,
                                  uintptr_t tree_len,
                                  char **out);

// Order of the lattice quotient as a decimal string.
//
// # Safety
// As for [`mt_mesh_determinant`].
enum MtStatus mt_lattice_index(const struct MtGraph *g,
                               const uintptr_t *tree,
                               uintptr_t tree_len,
                               char **out);

// The same JSON report the command line prints, without the `command` and
// `input` keys. Returns `VerificationFailed` (with `out` set) when a checked
// identity fails.
//
// # Safety
// As for [`mt_mesh_determinant`].
enum MtStatus mt_graph_report_json(const struct MtGraph *g,
                                   enum MtReport report,
                                   const uintptr_t *tree,
                                   uintptr_t tree_len,
                                   char **out);

// `ST(G, H)` report for the subgraph with the given edge ids.
//
// # Safety
// `g` must be live, `subgraph` null or `len` readable ids, `out` valid.
enum MtStatus mt_stpoly_json(const struct MtGraph *g,
                             const uintptr_t *subgraph,
                             uintptr_t len,
                             char **out);

// Parses a complex in the `dim d` / `boundary k rows cols` text format.
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
enum MtStatus mt_complex_parse(const char *text, struct MtComplex **out);

// # Safety
// `x` must be null or a handle from this library not yet freed.
void mt_complex_free(struct MtComplex *x);

// Torsion order of `H_{d−1}` of the subcomplex keeping the listed top
// cells, as a decimal string. A null `cells` keeps every top cell.
//
// # Safety
// `x` must be live, `cells` null or `len` readable indices, `out` valid.
enum MtStatus mt_complex_torsion(const struct MtComplex *x,
                                 const uintptr_t *cells,
                                 uintptr_t len,
                                 char **out);

// JSON report of a forest identity relative to the spanning forest `forest`.
//
// # Safety
// `x` must be live, `forest` null or `len` readable indices, `out` valid.
enum MtStatus mt_complex_check_json(const struct MtComplex *x,
                                    const uintptr_t *forest,
                                    uintptr_t len,
                                    enum MtCwCheck check,
                                    char **out);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a string from this library not yet freed.
void mt_string_free(char *s);

// Message for the last failure on this thread; empty if none. Valid until
// the next call into this library on the same thread.
const char *mt_last_error_message(void);

// Library version, statically allocated.
const char *mt_version(void);

// Clears the last error message.
void mt_clear_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MESHTREE_H */

#ifndef GNI_H
#define GNI_H

/* Generated with cbindgen:0.29.4 */

/* Generated by cbindgen from the gni-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call in this API.
typedef enum GniStatus {
  GNI_STATUS_OK = 0,
  GNI_STATUS_NULL_POINTER = 1,
  GNI_STATUS_INVALID_ARGUMENT = 2,
  GNI_STATUS_NUMERIC_FAILURE = 3,
  GNI_STATUS_PANIC = 4,
} GniStatus;

// An observation matrix (rows are observations, columns are variables).
typedef struct GniDataset GniDataset;

// A symmetric binary adjacency matrix with zero diagonal.
typedef struct GniGraph GniGraph;

// A glasso candidate path plus the grid and sample size that produced it.
typedef struct GniPath GniPath;

// Message describing the most recent failure on this thread. The pointer
// stays valid until the next failing call on the same thread.
const char *gni_last_error_message(void);

// Wraps a row-major n x p buffer of finite values into a dataset handle.
//
// # Safety
// `values` must point to `n * p` readable doubles and `out` to a writable
// pointer slot.
enum GniStatus gni_dataset_create(const double *values,
                                  size_t n,
                                  size_t p,
                                  struct GniDataset **out);

// Generates a synthetic dataset and its ground-truth graph, mirroring the
// CLI `generate` command. `edge_prob <= 0` and `hub_count == 0` select the
// defaults (3/p and ceil(p/20)).
//
// # Safety
// `out_data` and `out_truth` must be writable pointer slots.
enum GniStatus gni_dataset_generate(bool hub,
                                    size_t p,
                                    size_t n,
                                    uint64_t seed,
                                    double edge_prob,
                                    size_t hub_count,
                                    struct GniDataset **out_data,
                                    struct GniGraph **out_truth);

// # Safety
// `dataset` must be a live handle from this library or null.
void gni_dataset_free(struct GniDataset *dataset);

size_t gni_dataset_rows(const struct GniDataset *dataset);

size_t gni_dataset_cols(const struct GniDataset *dataset);

// Wraps a row-major p x p 0/1 buffer into a graph handle, validating
// symmetry and the zero diagonal.
//
// # Safety
// `entries` must point to `p * p` readable bytes and `out` to a writable
// pointer slot.
enum GniStatus gni_graph_create(const uint8_t *entries, size_t p, struct GniGraph **out);

// # Safety
// `graph` must be a live handle from this library or null.
void gni_graph_free(struct GniGraph *graph);

size_t gni_graph_vertex_count(const struct GniGraph *graph);

size_t gni_graph_edge_count(const struct GniGraph *graph);

// Copies the adjacency matrix into a caller-provided row-major p x p
// buffer of 0/1 bytes.
//
// # Safety
// `out` must point to `p * p` writable bytes.
enum GniStatus gni_graph_entries(const struct GniGraph *graph, uint8_t *out);

// GNI of one graph on one dataset: builds the bootstrap difference matrix
// (`m == 0` selects the default min(n^2, 10000)) and scores the graph.
//
// # Safety
// All handles must be live; `out_score` must be writable.
enum GniStatus gni_score_graph(const struct GniDataset *dataset,
                               const struct GniGraph *graph,
                               size_t m,
                               uint64_t seed,
                               double *out_score);

// Fits a glasso candidate path over a log-spaced lambda grid.
//
// # Safety
// `dataset` must be live and `out` writable.
enum GniStatus gni_path_fit(const struct GniDataset *dataset,
                            size_t nlambda,
                            double lambda_ratio,
                            struct GniPath **out);

// # Safety
// `path` must be a live handle from this library or null.
void gni_path_free(struct GniPath *path);

size_t gni_path_len(const struct GniPath *path);

// Lambda of one candidate; NaN for an out-of-range index.
double gni_path_lambda(const struct GniPath *path, size_t index);

// Clones one candidate adjacency out of the path.
//
// # Safety
// `path` must be live and `out` writable.
enum GniStatus gni_path_adjacency(const struct GniPath *path, size_t index, struct GniGraph **out);

// GNI selection over the path (`m == 0` selects the default).
//
// # Safety
// Handles must be live; `out_index` must be writable.
enum GniStatus gni_select_gni(const struct GniDataset *dataset,
                              const struct GniPath *path,
                              size_t m,
                              uint64_t seed,
                              size_t *out_index);

// EBIC selection over the path.
//
// # Safety
// `path` must be live; `out_index` must be writable.
enum GniStatus gni_select_ebic(const struct GniPath *path, double gamma, size_t *out_index);

// StARS selection over the grid the path was fitted on. `subsample_size ==
// 0` selects the default rule.
//
// # Safety
// Handles must be live; `out_index` must be writable.
enum GniStatus gni_select_stars(const struct GniDataset *dataset,
                                const struct GniPath *path,
                                double beta,
                                size_t num_subsamples,
                                size_t subsample_size,
                                uint64_t seed,
                                size_t *out_index);

// RIC selection: a single fit at the permutation-calibrated lambda, which
// bypasses the candidate path.
//
// # Safety
// `dataset` must be live; `out_graph` and `out_lambda` must be writable.
enum GniStatus gni_select_ric(const struct GniDataset *dataset,
                              size_t num_permutations,
                              uint64_t seed,
                              struct GniGraph **out_graph,
                              double *out_lambda);

// Edge-recovery metrics of an estimated graph against a reference graph.
//
// # Safety
// Handles must be live; out pointers may be null to skip a field.
enum GniStatus gni_graph_compare(const struct GniGraph *estimated,
                                 const struct GniGraph *truth,
                                 double *out_precision,
                                 double *out_recall,
                                 double *out_f1,
                                 size_t *out_shd);

#endif  /* GNI_H */

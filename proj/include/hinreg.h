/* SPDX-License-Identifier: Apache-2.0
 *
 * C API of the hinreg shared library.
 *
 * Link-weight recovery in typed weighted digraphs: meta-path constrained
 * random walks supply regressor tables, a forward stepwise linear model
 * recovers the weights of a chosen target link type.
 *
 * All objects are opaque handles created and released by the library.
 * Functions return HINREG_OK on success or an error code; the message for
 * the most recent failure on the calling thread is available through
 * hinreg_last_error().
 */
#ifndef HINREG_H
#define HINREG_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hinreg_status {
  HINREG_OK = 0,
  HINREG_ERR_INVALID_ARGUMENT = 1,
  HINREG_ERR_UNKNOWN_TYPE = 2,
  HINREG_ERR_TYPE_MISMATCH = 3,
  HINREG_ERR_NEGATIVE_WEIGHT = 4,
  HINREG_ERR_ALREADY_AUGMENTED = 5,
  HINREG_ERR_NOT_AUGMENTED = 6,
  HINREG_ERR_NO_SUCH_PAIR = 7,
  HINREG_ERR_PARSE = 8,
  HINREG_ERR_CHAIN_MISMATCH = 9,
  HINREG_ERR_BAD_EXCLUSION = 10,
  HINREG_ERR_SCHEMA_MISMATCH = 11,
  HINREG_ERR_PATH_EXPLOSION = 12,
  HINREG_ERR_SHAPE_MISMATCH = 13,
  HINREG_ERR_EMPTY_SUBSET = 14,
  HINREG_ERR_SINGULAR = 15,
  HINREG_ERR_UNDERDETERMINED = 16,
  HINREG_ERR_DEGENERATE_SPLIT = 17,
  HINREG_ERR_TOO_FEW_EDGES = 18,
  HINREG_ERR_UNCATEGORIZED_NODE = 19,
  HINREG_ERR_PIVOT_NOT_ON_PATH = 20,
  HINREG_ERR_IO = 21,
  HINREG_ERR_INTERNAL = 22
} hinreg_status;

/* Short name of a status code, e.g. "type-mismatch". */
const char* hinreg_status_name(hinreg_status status);

/* Message of the most recent error on this thread; empty string if none. */
const char* hinreg_last_error(void);

typedef struct hinreg_graph hinreg_graph;
typedef struct hinreg_metapath hinreg_metapath;
typedef struct hinreg_pcrw hinreg_pcrw;
typedef struct hinreg_config hinreg_config;

/* ------------------------------------------------------------------ graph */

/* Loads a tab-separated edge list:
 *   src_type TAB src_id TAB link_type TAB dst_type TAB dst_id TAB weight
 * '#' lines are comments; has_header skips the first data line. */
hinreg_status hinreg_graph_load(const char* path, int has_header,
                                hinreg_graph** out);

/* Writes the graph back in the same format (real nodes and edges only). */
hinreg_status hinreg_graph_dump(const hinreg_graph* g, const char* path);

void hinreg_graph_free(hinreg_graph* g);

/* Adds one hole node per node type so every transition row normalizes. */
hinreg_status hinreg_graph_augment(const hinreg_graph* g, hinreg_graph** out);

int hinreg_graph_is_augmented(const hinreg_graph* g);

size_t hinreg_graph_node_type_count(const hinreg_graph* g);
const char* hinreg_graph_node_type_name(const hinreg_graph* g, size_t type);
/* Real node count; holes are never included. */
size_t hinreg_graph_node_count(const hinreg_graph* g, size_t type);

size_t hinreg_graph_link_type_count(const hinreg_graph* g);
const char* hinreg_graph_link_type_name(const hinreg_graph* g, size_t link);
hinreg_status hinreg_graph_link_type_endpoints(const hinreg_graph* g, size_t link,
                                               size_t* src_type, size_t* dst_type);
size_t hinreg_graph_edge_count(const hinreg_graph* g, size_t link);

/* Dense index of a node given its string id; HINREG_ERR_UNKNOWN_TYPE if the
 * type is out of range, HINREG_ERR_INVALID_ARGUMENT if the id is unknown. */
hinreg_status hinreg_graph_node_index(const hinreg_graph* g, size_t type,
                                      const char* name, size_t* out);
/* String id of a node; "__hole__" for the hole index. NULL if out of range. */
const char* hinreg_graph_node_name(const hinreg_graph* g, size_t type,
                                   size_t index);

/* --------------------------------------------------------------- metapath */

/* Parses "Name(-Name)*" with optional "!(a,b)" exclusion clauses; standard
 * revisit exclusions are attached unless auto_exclusions is 0. */
hinreg_status hinreg_metapath_parse(const hinreg_graph* g, const char* text,
                                    int auto_exclusions, hinreg_metapath** out);
void hinreg_metapath_free(hinreg_metapath* mp);

size_t hinreg_metapath_length(const hinreg_metapath* mp);
hinreg_status hinreg_metapath_source_type(const hinreg_metapath* mp, size_t* out);
hinreg_status hinreg_metapath_target_type(const hinreg_metapath* mp, size_t* out);

/* Canonical text. Writes up to cap bytes including the terminator; *needed
 * receives the full length excluding the terminator. */
hinreg_status hinreg_metapath_format(const hinreg_metapath* mp, char* buf,
                                     size_t cap, size_t* needed);

/* ------------------------------------------------------------------- pcrw */

/* Endpoint distribution table of the walk constrained by the meta-path.
 * Rows: sources of the path's first node type (hole last); columns: targets
 * of its last node type (hole last). Rows sum to 1 within 1e-9. */
hinreg_status hinreg_pcrw_compute(const hinreg_graph* g,
                                  const hinreg_metapath* mp, hinreg_pcrw** out);
void hinreg_pcrw_free(hinreg_pcrw* p);

size_t hinreg_pcrw_rows(const hinreg_pcrw* p);
size_t hinreg_pcrw_cols(const hinreg_pcrw* p);
double hinreg_pcrw_at(const hinreg_pcrw* p, size_t row, size_t col);
size_t hinreg_pcrw_row_nnz(const hinreg_pcrw* p, size_t row);

/* Copies one row's sparse entries into caller buffers of capacity cap;
 * *written receives the entry count. */
hinreg_status hinreg_pcrw_row_entries(const hinreg_pcrw* p, size_t row,
                                      size_t* cols, double* probs, size_t cap,
                                      size_t* written);

/* Writes the table as CSV triples "src,dst,prob" using the graph's node
 * ids; source < 0 dumps every row. path NULL writes to stdout. */
hinreg_status hinreg_pcrw_dump_csv(const hinreg_pcrw* p, const hinreg_graph* g,
                                   const char* path, long source);

/* ------------------------------------------------- experiment commands */

/* Loads a JSON experiment config. Relative data paths resolve against the
 * config file's directory. */
hinreg_status hinreg_config_load(const char* path, hinreg_config** out);
void hinreg_config_free(hinreg_config* cfg);

hinreg_status hinreg_config_set_seed(hinreg_config* cfg, unsigned long long seed);
hinreg_status hinreg_config_set_alpha(hinreg_config* cfg, double alpha);
hinreg_status hinreg_config_set_out_dir(hinreg_config* cfg, const char* dir);
hinreg_status hinreg_config_set_keep_holes(hinreg_config* cfg, int keep);
/* agg is "mean" or "sum". */
hinreg_status hinreg_config_set_feature_agg(hinreg_config* cfg, const char* agg);

/* Full-data forward selection; writes selection_trace.{csv,json} and
 * observed_vs_fitted.csv into the config's out_dir. */
hinreg_status hinreg_run_describe(const hinreg_config* cfg);

/* Monte Carlo cross-validation; writes cv_report.{csv,json}. per_category
 * divides the graph first and writes one report per category plus
 * cv_summary.json. */
hinreg_status hinreg_run_recover(const hinreg_config* cfg, int per_category);

/* Real pipeline against degree-preserving reshuffles; writes
 * nullcheck.{csv,json}. replicates < 0 keeps the configured count. */
hinreg_status hinreg_run_nullcheck(const hinreg_config* cfg, long replicates);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HINREG_H */

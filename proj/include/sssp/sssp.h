/* C interface to the parallel stepping SSSP library.
 *
 * Objects are opaque handles created by the library and released with the
 * matching *_free function. Every fallible call returns an sssp_status;
 * details of the most recent failure on the calling thread are available
 * from sssp_last_error_message(). */
#ifndef SSSP_SSSP_H
#define SSSP_SSSP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(SSSP_BUILDING_LIBRARY)
#define SSSP_API __attribute__((visibility("default")))
#else
#define SSSP_API
#endif

#define SSSP_INF_DISTANCE UINT64_MAX

typedef enum sssp_status {
  SSSP_OK = 0,
  SSSP_ERR_INVALID_ARGUMENT = 1,
  SSSP_ERR_PARSE = 2,
  SSSP_ERR_RANGE = 3,
  SSSP_ERR_IO = 4,
  SSSP_ERR_FORMAT = 5,
  SSSP_ERR_INFEASIBLE = 6,
  SSSP_ERR_CONFIG = 7,
  SSSP_ERR_CAPACITY = 8,
  SSSP_ERR_OUT_OF_MEMORY = 9,
  SSSP_ERR_INTERNAL = 10
} sssp_status;

typedef enum sssp_algorithm {
  SSSP_ALGO_DIJKSTRA = 0,
  SSSP_ALGO_BELLMAN_FORD = 1,
  SSSP_ALGO_DELTA = 2,
  SSSP_ALGO_DELTA_STAR = 3,
  SSSP_ALGO_RHO = 4,
  SSSP_ALGO_RADIUS = 5
} sssp_algorithm;

typedef enum sssp_backend { SSSP_BACKEND_TREE = 0, SSSP_BACKEND_ARRAY = 1 } sssp_backend;

typedef enum sssp_mode {
  SSSP_MODE_DENSE = 0,
  SSSP_MODE_SPARSE = 1,
  SSSP_MODE_SUPER_SPARSE = 2
} sssp_mode;

typedef enum sssp_krho_mode {
  SSSP_KRHO_NONE = 0,
  SSSP_KRHO_SAMPLED = 1,
  SSSP_KRHO_EXACT = 2
} sssp_krho_mode;

typedef struct sssp_graph sssp_graph;
typedef struct sssp_result sssp_result;
typedef struct sssp_oracle sssp_oracle;

SSSP_API const char* sssp_status_string(sssp_status status);
/* Message of the last failed call on this thread; "" if none. */
SSSP_API const char* sssp_last_error_message(void);

/* ---- graphs ------------------------------------------------------------ */

/* m distinct random pairs with weights uniform in [wmin, wmax_exclusive). */
SSSP_API sssp_status sssp_graph_generate(uint64_t n, uint64_t m, uint64_t seed,
                                         uint32_t wmin, uint32_t wmax_exclusive,
                                         int directed, sssp_graph** out);
SSSP_API sssp_status sssp_graph_from_edges(uint64_t n, const uint32_t* src,
                                           const uint32_t* dst, const uint32_t* weight,
                                           uint64_t m, int directed, sssp_graph** out);
SSSP_API sssp_status sssp_graph_chain(uint64_t n, uint32_t weight, int directed,
                                      sssp_graph** out);
SSSP_API sssp_status sssp_graph_star(uint64_t leaves, uint32_t weight, sssp_graph** out);
SSSP_API sssp_status sssp_graph_grid(uint64_t rows, uint64_t cols, uint64_t seed,
                                     sssp_graph** out);
/* Binary or text edge list, detected from the file contents. */
SSSP_API sssp_status sssp_graph_load(const char* path, int directed_if_text,
                                     sssp_graph** out);
SSSP_API sssp_status sssp_graph_save_binary(const sssp_graph* g, const char* path);
SSSP_API sssp_status sssp_graph_save_text(const sssp_graph* g, const char* path);
SSSP_API void sssp_graph_free(sssp_graph* g);

SSSP_API uint64_t sssp_graph_num_vertices(const sssp_graph* g);
/* Stored arcs: twice the edge count for undirected graphs. */
SSSP_API uint64_t sssp_graph_num_arcs(const sssp_graph* g);
SSSP_API int sssp_graph_directed(const sssp_graph* g);
SSSP_API uint32_t sssp_graph_max_weight(const sssp_graph* g);
SSSP_API uint64_t sssp_graph_fingerprint(const sssp_graph* g);

/* ---- running ----------------------------------------------------------- */

typedef struct sssp_options {
  sssp_algorithm algorithm;
  sssp_backend backend;
  uint64_t delta;       /* delta, delta-star */
  uint64_t rho;         /* rho, radius */
  int exact_rho;        /* rho: exact rho-th key instead of sampling */
  double sparse_dense_threshold;
  double super_sparse_degree;
  int fusion;
  uint64_t fusion_budget;
  int bidirectional;
  uint64_t rho_sample_constant;
  int rho_warmup;
  int threads;          /* 0: library default */
  uint64_t seed;
  const uint64_t* radii; /* radius: r_rho per vertex, or NULL to compute */
  uint64_t radii_len;
} sssp_options;

/* Fills the defaults (dijkstra, tree backend). */
SSSP_API void sssp_options_init(sssp_options* opts);

typedef struct sssp_round_info {
  sssp_mode mode;
  uint64_t theta;
  uint64_t visited_v;
  uint64_t visited_e;
  int substep;
} sssp_round_info;

SSSP_API sssp_status sssp_run(const sssp_graph* g, uint32_t source,
                              const sssp_options* opts, sssp_result** out);
SSSP_API void sssp_result_free(sssp_result* r);

SSSP_API const uint64_t* sssp_result_distances(const sssp_result* r, uint64_t* len);
/* Sum of distances mod 2^64. */
SSSP_API uint64_t sssp_result_checksum(const sssp_result* r);
SSSP_API uint64_t sssp_result_steps(const sssp_result* r);
SSSP_API uint64_t sssp_result_substeps(const sssp_result* r);
SSSP_API uint64_t sssp_result_num_rounds(const sssp_result* r);
SSSP_API sssp_status sssp_result_round(const sssp_result* r, uint64_t index,
                                       sssp_round_info* out);
SSSP_API uint64_t sssp_result_relaxations_attempted(const sssp_result* r);
SSSP_API uint64_t sssp_result_relaxations_succeeded(const sssp_result* r);
SSSP_API uint64_t sssp_result_total_extractions(const sssp_result* r);
SSSP_API uint32_t sssp_result_max_extractions(const sssp_result* r);
SSSP_API uint64_t sssp_result_visited_edges(const sssp_result* r);
SSSP_API double sssp_result_wall_seconds(const sssp_result* r);
SSSP_API int sssp_result_bidirectional_ignored(const sssp_result* r);

/* Test hook: overwrites one distance so harnesses can prove they catch
 * mismatches. */
SSSP_API sssp_status sssp_result_debug_corrupt(sssp_result* r, uint32_t vertex,
                                               uint64_t value);

/* ---- analysis ---------------------------------------------------------- */

SSSP_API sssp_status sssp_oracle_run(const sssp_graph* g, uint32_t source,
                                     sssp_oracle** out);
SSSP_API void sssp_oracle_free(sssp_oracle* o);
SSSP_API const uint64_t* sssp_oracle_distances(const sssp_oracle* o, uint64_t* len);
SSSP_API const uint32_t* sssp_oracle_hops(const sssp_oracle* o, uint64_t* len);
SSSP_API uint32_t sssp_oracle_k_n(const sssp_oracle* o);

typedef struct sssp_mismatch {
  uint32_t vertex;
  uint64_t got;
  uint64_t want;
} sssp_mismatch;

/* *match = 1 when every distance agrees; otherwise *first (if non-NULL)
 * receives the lowest mismatching vertex. */
SSSP_API sssp_status sssp_verify(const sssp_result* r, const sssp_oracle* o, int* match,
                                 sssp_mismatch* first);

/* out must hold n entries. */
SSSP_API sssp_status sssp_compute_radii(const sssp_graph* g, uint64_t rho, int threads,
                                        uint64_t* out);

/* per_sample may be NULL; otherwise it must hold `samples` entries (n when
 * exact). */
SSSP_API sssp_status sssp_estimate_k_rho(const sssp_graph* g, uint64_t rho,
                                         uint64_t samples, uint64_t seed, int exact,
                                         int threads, uint32_t* k_hat,
                                         uint32_t* per_sample);

/* JSON bound report for a run; free the string with sssp_string_free. For
 * rho runs, krho_mode selects how k_rho is obtained. */
SSSP_API sssp_status sssp_bounds_report(const sssp_graph* g, const sssp_result* r,
                                        const sssp_oracle* o, sssp_krho_mode krho_mode,
                                        uint64_t krho_samples, uint64_t seed,
                                        char** json_out);
SSSP_API void sssp_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SSSP_SSSP_H */

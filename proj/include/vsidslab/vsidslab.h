/* C interface of the vsidslab shared library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Functions returning vl_status report failures
 * through the code and a thread-local message readable with vl_last_error().
 */
#ifndef VSIDSLAB_H
#define VSIDSLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(VSIDSLAB_BUILDING)
#define VL_API __attribute__((visibility("default")))
#else
#define VL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  VL_OK = 0,
  VL_ERR_INVALID_ARGUMENT = 1,
  VL_ERR_PARSE = 2,
  VL_ERR_IO = 3,
  VL_ERR_TIMEOUT = 4,
  VL_ERR_INTERNAL = 5
} vl_status;

/* Solve outcomes use the competition exit codes. */
typedef enum { VL_UNKNOWN = 0, VL_SAT = 10, VL_UNSAT = 20 } vl_outcome;

typedef enum { VL_CVSIDS = 0, VL_MVSIDS = 1, VL_ADAPTVSIDS = 2, VL_RANDOM = 3 } vl_heuristic;

typedef enum { VL_REPORT_JSON = 0, VL_REPORT_CSV = 1, VL_REPORT_CACTUS = 2 } vl_report_format;

typedef struct vl_formula vl_formula;
typedef struct vl_communities vl_communities;
typedef struct vl_result vl_result;
typedef struct vl_report vl_report;

typedef struct {
  vl_heuristic heuristic;
  double decay;
  double fast_decay;
  double slow_decay;
  double lbd_smoothing;
  uint64_t seed;
  int restarts;
  uint64_t restart_base;
  int clause_deletion;
  int phase_saving;
  uint64_t sample_interval;
  double time_limit_seconds; /* 0 = unlimited */
  uint64_t conflict_limit;   /* 0 = unlimited */
} vl_solver_options;

typedef struct {
  uint64_t decisions;
  uint64_t conflicts;
  uint64_t propagations;
  uint64_t restarts;
  uint64_t reductions;
  uint64_t learnt_clauses;
  double seconds;
} vl_stats;

typedef struct {
  uint32_t num_vars;
  uint32_t num_communities;
  uint32_t clause_len;
  uint32_t num_clauses;
  double intra_probability;
  uint64_t seed;
} vl_planted_options;

typedef struct {
  const char* experiment; /* bridge, spatial, temporal, correlation, adapt-compare, theorem */
  const char* instances_dir;
  const char* communities_dir; /* may be NULL: communities computed with Louvain */
  const char* heuristics;      /* comma separated; NULL or "" = experiment default */
  double timeout_seconds;
  unsigned workers;
  uint64_t louvain_seed;
  double louvain_time_limit;
  int record_timing;
  vl_solver_options solver;
} vl_experiment_options;

VL_API const char* vl_version(void);
/* Message of the last failure on the calling thread. */
VL_API const char* vl_last_error(void);

VL_API void vl_solver_options_init(vl_solver_options* options);
VL_API void vl_planted_options_init(vl_planted_options* options);
VL_API void vl_experiment_options_init(vl_experiment_options* options);
VL_API vl_status vl_parse_heuristic(const char* name, vl_heuristic* out);

VL_API vl_status vl_formula_parse(const char* text, size_t length, vl_formula** out);
VL_API vl_status vl_formula_read(const char* path, vl_formula** out);
VL_API vl_status vl_formula_write(const vl_formula* formula, const char* path);
/* Writes the variable incidence graph as var1,var2,weight rows. */
VL_API vl_status vl_formula_write_vig(const vl_formula* formula, const char* path);
VL_API uint32_t vl_formula_num_vars(const vl_formula* formula);
VL_API size_t vl_formula_num_clauses(const vl_formula* formula);
VL_API size_t vl_formula_num_warnings(const vl_formula* formula);
VL_API const char* vl_formula_warning(const vl_formula* formula, size_t index);
VL_API void vl_formula_free(vl_formula* formula);

VL_API vl_status vl_gen_random(uint32_t num_vars, uint32_t num_clauses, uint32_t clause_len, uint64_t seed,
                               vl_formula** out);
VL_API vl_status vl_gen_planted(const vl_planted_options* options, vl_formula** formula,
                                vl_communities** planted);

/* VL_ERR_TIMEOUT when the time limit (seconds, 0 = none) is exceeded. */
VL_API vl_status vl_louvain(const vl_formula* formula, uint64_t seed, double time_limit, vl_communities** out);
VL_API vl_status vl_modularity(const vl_formula* formula, const vl_communities* communities, double* out);
VL_API vl_status vl_communities_read(const char* path, uint32_t num_vars, vl_communities** out);
VL_API vl_status vl_communities_write(const vl_communities* communities, const char* path);
VL_API uint32_t vl_communities_count(const vl_communities* communities);
/* Community of DIMACS variable var (1-based); UINT32_MAX when out of range. */
VL_API uint32_t vl_communities_of(const vl_communities* communities, uint32_t var);
VL_API void vl_communities_free(vl_communities* communities);

VL_API vl_status vl_solve(const vl_formula* formula, const vl_solver_options* options, vl_result** out);
VL_API vl_outcome vl_result_outcome(const vl_result* result);
/* 1 true, 0 false, -1 no model or var out of range. */
VL_API int vl_result_value(const vl_result* result, uint32_t var);
VL_API void vl_result_stats(const vl_result* result, vl_stats* out);
VL_API void vl_result_free(vl_result* result);

VL_API vl_status vl_run_experiment(const vl_experiment_options* options, vl_report** out);
VL_API size_t vl_report_num_records(const vl_report* report);
VL_API vl_status vl_report_write(const vl_report* report, vl_report_format format, const char* path);
VL_API void vl_report_free(vl_report* report);

#ifdef __cplusplus
}
#endif

#endif

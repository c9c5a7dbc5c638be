/* C interface to the label propagation clustering library.
 *
 * All functions that can fail return a labelprop_status_t and describe the
 * failure in the caller-provided labelprop_error_t. Objects returned through
 * out-parameters are owned by the caller and released with the matching
 * *_free function. Handles are opaque; the library never exposes internals.
 */
#ifndef LABELPROP_H
#define LABELPROP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    LABELPROP_OK = 0,
    LABELPROP_ERROR_USAGE = 1, /* invalid arguments or configuration */
    LABELPROP_ERROR_DATA = 2,  /* malformed files or infeasible inputs */
} labelprop_status_t;

typedef struct {
    labelprop_status_t status;
    char message[256];
} labelprop_error_t;

typedef struct labelprop_graph labelprop_graph_t;
typedef struct labelprop_partition labelprop_partition_t;
typedef struct labelprop_cover labelprop_cover_t;
typedef struct labelprop_hierarchy labelprop_hierarchy_t;
typedef struct labelprop_result labelprop_result_t;

typedef enum {
    LABELPROP_RULE_STANDARD = 0,
    LABELPROP_RULE_CPM = 1,        /* uses lambda */
    LABELPROP_RULE_MODULARITY = 2, /* uses lambda */
    LABELPROP_RULE_DEFENSIVE = 3,
    LABELPROP_RULE_OFFENSIVE = 4,
    LABELPROP_RULE_BALANCED = 5,     /* uses gamma */
    LABELPROP_RULE_NEIGHBORHOOD = 6, /* shared-neighbor strengths */
    LABELPROP_RULE_TAU = 7,          /* uses tau */
    LABELPROP_RULE_COCITATION = 8,   /* directed graphs */
    LABELPROP_RULE_BIBCOUPLING = 9,  /* directed graphs */
} labelprop_rule_kind_t;

typedef struct {
    labelprop_rule_kind_t kind;
    double lambda;
    double gamma;
    double tau;
} labelprop_rule_t;

typedef enum {
    LABELPROP_SCHEDULE_ASYNC = 0,
    LABELPROP_SCHEDULE_SYNC = 1,
    LABELPROP_SCHEDULE_SEMISYNC = 2,
    LABELPROP_SCHEDULE_BIPARTITE = 3,
} labelprop_schedule_t;

typedef enum {
    LABELPROP_TIE_RANDOM = 0,
    LABELPROP_TIE_RETENTION = 1,
    LABELPROP_TIE_INCLUSION = 2,
    LABELPROP_TIE_SMALLEST = 3,
} labelprop_tie_t;

typedef enum {
    LABELPROP_CONVERGE_NO_CHANGE = 0,
    LABELPROP_CONVERGE_EQUILIBRIUM = 1,
    LABELPROP_CONVERGE_MAX_ITERS = 2,
} labelprop_convergence_t;

typedef struct {
    labelprop_schedule_t schedule;
    labelprop_tie_t tie_policy;
    labelprop_convergence_t convergence;
    uint32_t max_iters;
    uint64_t seed;
    int probabilistic_sync; /* sampled updates; requires the sync schedule */
    int active_passive;     /* skip settled nodes; async only */
} labelprop_config_t;

/* Fill a struct with the library defaults. */
void labelprop_rule_init(labelprop_rule_t* rule);
void labelprop_config_init(labelprop_config_t* config);

const char* labelprop_version(void);

/* ---- graphs ------------------------------------------------------------ */

/* node_count 0 means "infer from the largest endpoint". weights may be NULL
 * (all edges weigh 1). node_types may be NULL (untyped). */
labelprop_status_t labelprop_graph_build(uint32_t node_count, int directed,
                                         int signed_values, size_t edge_count,
                                         const uint32_t* u, const uint32_t* v,
                                         const double* w, const int* node_types,
                                         labelprop_graph_t** out,
                                         labelprop_error_t* error);

labelprop_status_t labelprop_graph_read(const char* path, labelprop_graph_t** out,
                                        labelprop_error_t* error);
labelprop_status_t labelprop_graph_write(const labelprop_graph_t* graph,
                                         const char* path, labelprop_error_t* error);

uint32_t labelprop_graph_node_count(const labelprop_graph_t* graph);
double labelprop_graph_total_weight(const labelprop_graph_t* graph);
int labelprop_graph_is_directed(const labelprop_graph_t* graph);

/* equal_total != 0 rebalances to total weight +1 / -1; otherwise every unit
 * of positive (negative) multiplicity becomes w_pos (w_neg). */
labelprop_status_t labelprop_graph_signed_reweight(const labelprop_graph_t* graph,
                                                   int equal_total, double w_pos,
                                                   double w_neg,
                                                   labelprop_graph_t** out,
                                                   labelprop_error_t* error);

void labelprop_graph_free(labelprop_graph_t* graph);

/* ---- generators --------------------------------------------------------- */

labelprop_status_t labelprop_generate_erdos_renyi(uint32_t n, double avg_degree,
                                                  uint64_t seed,
                                                  labelprop_graph_t** out,
                                                  labelprop_error_t* error);

/* truth_out may be NULL when the reference grouping is not needed. */
labelprop_status_t labelprop_generate_planted(uint32_t n, uint32_t groups,
                                              double avg_degree, double mu,
                                              uint64_t seed,
                                              labelprop_graph_t** graph_out,
                                              labelprop_partition_t** truth_out,
                                              labelprop_error_t* error);

labelprop_status_t labelprop_generate_grid(uint32_t rows, uint32_t cols,
                                           size_t removed_count,
                                           const uint32_t* removed_u,
                                           const uint32_t* removed_v,
                                           labelprop_graph_t** out,
                                           labelprop_error_t* error);

labelprop_status_t labelprop_generate_cliques(uint32_t clique_size, uint32_t shared,
                                              labelprop_graph_t** graph_out,
                                              labelprop_cover_t** truth_out,
                                              labelprop_error_t* error);

/* ---- propagation runs --------------------------------------------------- */

labelprop_status_t labelprop_run(const labelprop_graph_t* graph,
                                 const labelprop_rule_t* rule,
                                 const labelprop_config_t* config,
                                 labelprop_result_t** out, labelprop_error_t* error);

/* Borrowed reference, valid while the result lives. */
const labelprop_partition_t* labelprop_result_partition(const labelprop_result_t* r);
uint32_t labelprop_result_iterations(const labelprop_result_t* r);
int labelprop_result_converged(const labelprop_result_t* r);
/* Relabel count of iteration `index` in [0, iterations). */
uint32_t labelprop_result_relabels(const labelprop_result_t* r, uint32_t index);
labelprop_status_t labelprop_result_write_report(const labelprop_result_t* r,
                                                 const labelprop_graph_t* graph,
                                                 const char* path,
                                                 labelprop_error_t* error);
void labelprop_result_free(labelprop_result_t* r);

/* Sets *out to 1 when every node carries a maximal label. */
labelprop_status_t labelprop_check_equilibrium(const labelprop_graph_t* graph,
                                               const labelprop_rule_t* rule,
                                               const labelprop_partition_t* partition,
                                               int* out, labelprop_error_t* error);

/* ---- multi-run pipelines ------------------------------------------------ */

labelprop_status_t labelprop_consensus(const labelprop_graph_t* graph,
                                       const labelprop_rule_t* rule,
                                       const labelprop_config_t* config,
                                       uint32_t runs, double threshold,
                                       uint32_t max_rounds,
                                       labelprop_partition_t** out, int* converged,
                                       labelprop_error_t* error);

labelprop_status_t labelprop_hierarchy_detect(const labelprop_graph_t* graph,
                                       const labelprop_rule_t* rule,
                                       const labelprop_config_t* config, int refine,
                                       labelprop_hierarchy_t** out,
                                       labelprop_error_t* error);
size_t labelprop_hierarchy_levels(const labelprop_hierarchy_t* h);
/* Level partition lifted onto the original nodes; borrowed reference. */
const labelprop_partition_t* labelprop_hierarchy_level(const labelprop_hierarchy_t* h,
                                                       size_t level);
labelprop_status_t labelprop_hierarchy_write(const labelprop_hierarchy_t* h,
                                             const labelprop_graph_t* graph,
                                             const char* prefix,
                                             labelprop_error_t* error);
void labelprop_hierarchy_free(labelprop_hierarchy_t* h);

/* Exactly one of nu (>= 1) and rho (in (0,1]) must be active; pass 0 for the
 * other. */
labelprop_status_t labelprop_copra(const labelprop_graph_t* graph, uint32_t nu,
                                   double rho, uint32_t max_iters, uint64_t seed,
                                   labelprop_cover_t** out, labelprop_error_t* error);

labelprop_status_t labelprop_memory_lpa(const labelprop_graph_t* graph,
                                        uint32_t iterations, double min_frequency,
                                        uint64_t seed, labelprop_cover_t** out,
                                        labelprop_error_t* error);

labelprop_status_t labelprop_two_step(const labelprop_graph_t* graph,
                                      const labelprop_config_t* config,
                                      labelprop_partition_t** out,
                                      labelprop_error_t* error);

labelprop_status_t labelprop_defensive_offensive(const labelprop_graph_t* graph,
                                                 const labelprop_config_t* config,
                                                 labelprop_partition_t** out,
                                                 labelprop_error_t* error);

/* ---- partitions, covers, measures --------------------------------------- */

uint32_t labelprop_partition_node_count(const labelprop_partition_t* p);
uint32_t labelprop_partition_group_count(const labelprop_partition_t* p);
uint32_t labelprop_partition_label(const labelprop_partition_t* p, uint32_t node);
labelprop_status_t labelprop_partition_read(const char* path,
                                            const labelprop_graph_t* graph,
                                            labelprop_partition_t** out,
                                            labelprop_error_t* error);
labelprop_status_t labelprop_partition_write(const labelprop_partition_t* p,
                                             const labelprop_graph_t* graph,
                                             const char* path,
                                             labelprop_error_t* error);
void labelprop_partition_free(labelprop_partition_t* p);

uint32_t labelprop_cover_node_count(const labelprop_cover_t* c);
size_t labelprop_cover_entry_count(const labelprop_cover_t* c, uint32_t node);
labelprop_status_t labelprop_cover_entry(const labelprop_cover_t* c, uint32_t node,
                                         size_t index, uint32_t* label,
                                         double* weight, labelprop_error_t* error);
labelprop_status_t labelprop_cover_write(const labelprop_cover_t* c,
                                         const labelprop_graph_t* graph,
                                         const char* path, labelprop_error_t* error);
void labelprop_cover_free(labelprop_cover_t* c);

labelprop_status_t labelprop_objective_f(const labelprop_graph_t* graph,
                                         const labelprop_partition_t* p, double* out,
                                         labelprop_error_t* error);

/* which: 0 = squared group sizes, 1 = squared group degrees. */
labelprop_status_t labelprop_penalty(const labelprop_graph_t* graph,
                                     const labelprop_partition_t* p, int which,
                                     double* out, labelprop_error_t* error);

/* variant: 0 plain, 1 constant-penalty, 2 degree-penalty, 3 absolute. */
labelprop_status_t labelprop_hamiltonian(const labelprop_graph_t* graph,
                                         const labelprop_partition_t* p, int variant,
                                         double lambda, double* out,
                                         labelprop_error_t* error);

labelprop_status_t labelprop_modularity(const labelprop_graph_t* graph,
                                        const labelprop_partition_t* p, double* out,
                                        labelprop_error_t* error);

labelprop_status_t labelprop_nmi(const labelprop_partition_t* a,
                                 const labelprop_partition_t* b, double* out,
                                 labelprop_error_t* error);

/* Compare two label files by node name; the node sets must match. */
labelprop_status_t labelprop_nmi_files(const char* path_a, const char* path_b,
                                       double* out, labelprop_error_t* error);

labelprop_status_t labelprop_degeneracy(const labelprop_partition_t* p,
                                        double* tiny_fraction,
                                        double* largest_fraction,
                                        labelprop_error_t* error);

#ifdef __cplusplus
}
#endif

#endif /* LABELPROP_H */

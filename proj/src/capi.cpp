#include "labelprop.h"

#include <cstdio>
#include <cstring>
#include <string>

#include "labelprop/engine.hpp"
#include "labelprop/generators.hpp"
#include "labelprop/graph.hpp"
#include "labelprop/io.hpp"
#include "labelprop/objectives.hpp"
#include "labelprop/partition.hpp"
#include "labelprop/pipelines.hpp"

using namespace labelprop;

// Handles own the core objects plus whatever naming context they need.
struct labelprop_graph {
    NamedGraph named;
};
struct labelprop_partition {
    Partition partition;
};
struct labelprop_cover {
    Cover cover;
};
struct labelprop_hierarchy {
    Hierarchy hierarchy;
    // stable views handed out by labelprop_hierarchy_level
    std::vector<labelprop_partition> views;
};
struct labelprop_result {
    RunResult result;
    labelprop_partition partition_view;
};

namespace {

void set_error(labelprop_error_t* error, labelprop_status_t status, const char* what) {
    if (!error) return;
    error->status = status;
    std::snprintf(error->message, sizeof error->message, "%s", what);
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
labelprop_status_t guarded(labelprop_error_t* error, F&& body) {
    try {
        set_error(error, LABELPROP_OK, "");
        body();
        return LABELPROP_OK;
    } catch (const UsageError& e) {
        set_error(error, LABELPROP_ERROR_USAGE, e.what());
        return LABELPROP_ERROR_USAGE;
    } catch (const std::exception& e) {
        set_error(error, LABELPROP_ERROR_DATA, e.what());
        return LABELPROP_ERROR_DATA;
    }
}

RuleSpec to_rule(const labelprop_rule_t* rule) {
    if (!rule) throw UsageError("rule must not be null");
    switch (rule->kind) {
    case LABELPROP_RULE_STANDARD:
        return RuleSpec::standard();
    case LABELPROP_RULE_CPM:
        return RuleSpec::cpm(rule->lambda);
    case LABELPROP_RULE_MODULARITY:
        return RuleSpec::modularity(rule->lambda);
    case LABELPROP_RULE_DEFENSIVE:
        return RuleSpec::defensive_rule();
    case LABELPROP_RULE_OFFENSIVE:
        return RuleSpec::offensive_rule();
    case LABELPROP_RULE_BALANCED:
        return RuleSpec::balanced_rule(rule->gamma);
    case LABELPROP_RULE_NEIGHBORHOOD:
        return RuleSpec::neighborhood();
    case LABELPROP_RULE_TAU:
        return RuleSpec::with_tau(rule->tau);
    case LABELPROP_RULE_COCITATION:
        return RuleSpec::citation(true);
    case LABELPROP_RULE_BIBCOUPLING:
        return RuleSpec::citation(false);
    }
    throw UsageError("unknown rule kind");
}

RunConfig to_config(const labelprop_config_t* config) {
    if (!config) throw UsageError("config must not be null");
    RunConfig cfg;
    switch (config->schedule) {
    case LABELPROP_SCHEDULE_ASYNC:
        cfg.schedule = Schedule::async;
        break;
    case LABELPROP_SCHEDULE_SYNC:
        cfg.schedule = Schedule::sync;
        break;
    case LABELPROP_SCHEDULE_SEMISYNC:
        cfg.schedule = Schedule::semisync;
        break;
    case LABELPROP_SCHEDULE_BIPARTITE:
        cfg.schedule = Schedule::bipartite_alternating;
        break;
    default:
        throw UsageError("unknown schedule");
    }
    switch (config->tie_policy) {
    case LABELPROP_TIE_RANDOM:
        cfg.tie = TiePolicy::random_choice;
        break;
    case LABELPROP_TIE_RETENTION:
        cfg.tie = TiePolicy::retention;
        break;
    case LABELPROP_TIE_INCLUSION:
        cfg.tie = TiePolicy::inclusion;
        break;
    case LABELPROP_TIE_SMALLEST:
        cfg.tie = TiePolicy::smallest_label;
        break;
    default:
        throw UsageError("unknown tie policy");
    }
    switch (config->convergence) {
    case LABELPROP_CONVERGE_NO_CHANGE:
        cfg.convergence = Convergence::no_change;
        break;
    case LABELPROP_CONVERGE_EQUILIBRIUM:
        cfg.convergence = Convergence::equilibrium;
        break;
    case LABELPROP_CONVERGE_MAX_ITERS:
        cfg.convergence = Convergence::max_iters;
        break;
    default:
        throw UsageError("unknown convergence criterion");
    }
    cfg.max_iters = config->max_iters;
    cfg.seed = config->seed;
    cfg.probabilistic_sync = config->probabilistic_sync != 0;
    return cfg;
}

const NamedGraph& named_of(const labelprop_graph_t* graph) {
    if (!graph) throw UsageError("graph must not be null");
    return graph->named;
}

const Partition& partition_of(const labelprop_partition_t* p) {
    if (!p) throw UsageError("partition must not be null");
    return p->partition;
}

std::vector<label_id> labels_of(const labelprop_partition_t* p) {
    const auto span = partition_of(p).labels();
    return {span.begin(), span.end()};
}

} // namespace

extern "C" {

void labelprop_rule_init(labelprop_rule_t* rule) {
    if (!rule) return;
    rule->kind = LABELPROP_RULE_STANDARD;
    rule->lambda = 0.0;
    rule->gamma = 0.0;
    rule->tau = 1.0;
}

void labelprop_config_init(labelprop_config_t* config) {
    if (!config) return;
    config->schedule = LABELPROP_SCHEDULE_ASYNC;
    config->tie_policy = LABELPROP_TIE_RETENTION;
    config->convergence = LABELPROP_CONVERGE_NO_CHANGE;
    config->max_iters = 100;
    config->seed = 0;
    config->probabilistic_sync = 0;
    config->active_passive = 0;
}

const char* labelprop_version(void) { return "1.0.0"; }

labelprop_status_t labelprop_graph_build(uint32_t node_count, int directed,
                                         int signed_values, size_t edge_count,
                                         const uint32_t* u, const uint32_t* v,
                                         const double* w, const int* node_types,
                                         labelprop_graph_t** out,
                                         labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!out || (edge_count > 0 && (!u || !v))) throw UsageError("null argument");
        std::vector<EdgeInput> edges(edge_count);
        for (size_t e = 0; e < edge_count; ++e)
            edges[e] = {u[e], v[e], w ? w[e] : 1.0};
        BuildOptions opt;
        if (node_count > 0) opt.node_count = node_count;
        opt.directed = directed != 0;
        opt.signed_values = signed_values != 0;
        if (node_types) {
            node_id n = node_count;
            if (n == 0)
                for (const auto& e : edges) n = std::max({n, e.u + 1, e.v + 1});
            opt.node_types.assign(node_types, node_types + n);
        }
        Graph g = build_graph(edges, opt);
        auto names = default_names(g.node_count());
        *out = new labelprop_graph{{std::move(g), std::move(names)}};
    });
}

labelprop_status_t labelprop_graph_read(const char* path, labelprop_graph_t** out,
                                        labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!path || !out) throw UsageError("null argument");
        *out = new labelprop_graph{read_edge_list(path)};
    });
}

labelprop_status_t labelprop_graph_write(const labelprop_graph_t* graph,
                                         const char* path, labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!path) throw UsageError("null argument");
        write_edge_list(named_of(graph), path);
    });
}

uint32_t labelprop_graph_node_count(const labelprop_graph_t* graph) {
    return graph ? graph->named.graph.node_count() : 0;
}

double labelprop_graph_total_weight(const labelprop_graph_t* graph) {
    return graph ? graph->named.graph.total_weight() : 0.0;
}

int labelprop_graph_is_directed(const labelprop_graph_t* graph) {
    return graph && graph->named.graph.directed() ? 1 : 0;
}

labelprop_status_t labelprop_graph_signed_reweight(const labelprop_graph_t* graph,
                                                   int equal_total, double w_pos,
                                                   double w_neg,
                                                   labelprop_graph_t** out,
                                                   labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!out) throw UsageError("null argument");
        const auto& named = named_of(graph);
        Graph g = signed_reweight(named.graph,
                                  equal_total ? SignedScheme::equal_total
                                              : SignedScheme::fixed,
                                  w_pos, w_neg);
        *out = new labelprop_graph{{std::move(g), named.names}};
    });
}

void labelprop_graph_free(labelprop_graph_t* graph) { delete graph; }

labelprop_status_t labelprop_generate_erdos_renyi(uint32_t n, double avg_degree,
                                                  uint64_t seed,
                                                  labelprop_graph_t** out,
                                                  labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!out) throw UsageError("null argument");
        Graph g = erdos_renyi(n, avg_degree, seed);
        *out = new labelprop_graph{{std::move(g), default_names(n)}};
    });
}

labelprop_status_t labelprop_generate_planted(uint32_t n, uint32_t groups,
                                              double avg_degree, double mu,
                                              uint64_t seed,
                                              labelprop_graph_t** graph_out,
                                              labelprop_partition_t** truth_out,
                                              labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!graph_out) throw UsageError("null argument");
        PlantedResult r = planted_partition({n, groups, avg_degree, mu, seed});
        *graph_out = new labelprop_graph{{std::move(r.graph), default_names(n)}};
        if (truth_out) *truth_out = new labelprop_partition{std::move(r.truth)};
    });
}

labelprop_status_t labelprop_generate_grid(uint32_t rows, uint32_t cols,
                                           size_t removed_count,
                                           const uint32_t* removed_u,
                                           const uint32_t* removed_v,
                                           labelprop_graph_t** out,
                                           labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!out || (removed_count > 0 && (!removed_u || !removed_v)))
            throw UsageError("null argument");
        std::vector<std::pair<node_id, node_id>> removed(removed_count);
        for (size_t k = 0; k < removed_count; ++k)
            removed[k] = {removed_u[k], removed_v[k]};
        Graph g = triangular_grid(rows, cols, removed);
        const node_id n = g.node_count();
        *out = new labelprop_graph{{std::move(g), default_names(n)}};
    });
}

labelprop_status_t labelprop_generate_cliques(uint32_t clique_size, uint32_t shared,
                                              labelprop_graph_t** graph_out,
                                              labelprop_cover_t** truth_out,
                                              labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!graph_out) throw UsageError("null argument");
        CliquePair r = overlapping_cliques(clique_size, shared);
        const node_id n = r.graph.node_count();
        *graph_out = new labelprop_graph{{std::move(r.graph), default_names(n)}};
        if (truth_out) *truth_out = new labelprop_cover{std::move(r.truth)};
    });
}

labelprop_status_t labelprop_run(const labelprop_graph_t* graph,
                                 const labelprop_rule_t* rule,
                                 const labelprop_config_t* config,
                                 labelprop_result_t** out, labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!out) throw UsageError("null argument");
        const Graph& g = named_of(graph).graph;
        const RuleSpec spec = to_rule(rule);
        const RunConfig cfg = to_config(config);
        RunResult r = config->active_passive ? active_passive_run(g, spec, cfg)
                                             : run(g, spec, cfg);
        auto* result = new labelprop_result{std::move(r), {}};
        result->partition_view.partition = result->result.partition;
        *out = result;
    });
}

const labelprop_partition_t* labelprop_result_partition(const labelprop_result_t* r) {
    return r ? &r->partition_view : nullptr;
}

uint32_t labelprop_result_iterations(const labelprop_result_t* r) {
    return r ? r->result.iterations : 0;
}

int labelprop_result_converged(const labelprop_result_t* r) {
    return r && r->result.converged ? 1 : 0;
}

uint32_t labelprop_result_relabels(const labelprop_result_t* r, uint32_t index) {
    if (!r || index >= r->result.relabel_counts.size()) return 0;
    return r->result.relabel_counts[index];
}

labelprop_status_t labelprop_result_write_report(const labelprop_result_t* r,
                                                 const labelprop_graph_t* graph,
                                                 const char* path,
                                                 labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!r || !path) throw UsageError("null argument");
        const auto& g = named_of(graph).graph;
        write_run_report(r->result, evaluate_partition(g, r->result.partition), path);
    });
}

void labelprop_result_free(labelprop_result_t* r) { delete r; }

labelprop_status_t labelprop_check_equilibrium(const labelprop_graph_t* graph,
                                               const labelprop_rule_t* rule,
                                               const labelprop_partition_t* partition,
                                               int* out, labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!out) throw UsageError("null argument");
        *out = check_equilibrium(named_of(graph).graph, to_rule(rule),
                                 labels_of(partition))
                   ? 1
                   : 0;
    });
}

labelprop_status_t labelprop_consensus(const labelprop_graph_t* graph,
                                       const labelprop_rule_t* rule,
                                       const labelprop_config_t* config,
                                       uint32_t runs, double threshold,
                                       uint32_t max_rounds,
                                       labelprop_partition_t** out, int* converged,
                                       labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!out) throw UsageError("null argument");
        MethodSpec base{to_rule(rule), to_config(config)};
        ConsensusResult r =
            consensus(named_of(graph).graph, base, runs, threshold, max_rounds);
        *out = new labelprop_partition{std::move(r.partition)};
        if (converged) *converged = r.converged ? 1 : 0;
    });
}

labelprop_status_t labelprop_hierarchy_detect(const labelprop_graph_t* graph,
                                       const labelprop_rule_t* rule,
                                       const labelprop_config_t* config, int refine,
                                       labelprop_hierarchy_t** out,
                                       labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!out) throw UsageError("null argument");
        const Graph& g = named_of(graph).graph;
        MethodSpec base{to_rule(rule), to_config(config)};
        Hierarchy h = hierarchy_agglomerate(g, base);
        if (refine) h = hierarchy_refine(g, h, base);
        auto* handle = new labelprop_hierarchy{std::move(h), {}};
        handle->views.resize(handle->hierarchy.lifted.size());
        for (size_t t = 0; t < handle->hierarchy.lifted.size(); ++t)
            handle->views[t].partition = handle->hierarchy.lifted[t];
        *out = handle;
    });
}

size_t labelprop_hierarchy_levels(const labelprop_hierarchy_t* h) {
    return h ? h->hierarchy.level_count() : 0;
}

const labelprop_partition_t* labelprop_hierarchy_level(const labelprop_hierarchy_t* h,
                                                       size_t level) {
    if (!h || level >= h->views.size()) return nullptr;
    return &h->views[level];
}

labelprop_status_t labelprop_hierarchy_write(const labelprop_hierarchy_t* h,
                                             const labelprop_graph_t* graph,
                                             const char* prefix,
                                             labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!h || !prefix) throw UsageError("null argument");
        write_hierarchy(h->hierarchy, named_of(graph).names, prefix);
    });
}

void labelprop_hierarchy_free(labelprop_hierarchy_t* h) { delete h; }

labelprop_status_t labelprop_copra(const labelprop_graph_t* graph, uint32_t nu,
                                   double rho, uint32_t max_iters, uint64_t seed,
                                   labelprop_cover_t** out, labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!out) throw UsageError("null argument");
        CopraConfig cfg;
        cfg.nu = nu;
        cfg.rho = rho;
        cfg.max_iters = max_iters;
        cfg.seed = seed;
        *out = new labelprop_cover{copra(named_of(graph).graph, cfg)};
    });
}

labelprop_status_t labelprop_memory_lpa(const labelprop_graph_t* graph,
                                        uint32_t iterations, double min_frequency,
                                        uint64_t seed, labelprop_cover_t** out,
                                        labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!out) throw UsageError("null argument");
        *out = new labelprop_cover{
            memory_lpa(named_of(graph).graph, iterations, min_frequency, seed)};
    });
}

labelprop_status_t labelprop_two_step(const labelprop_graph_t* graph,
                                      const labelprop_config_t* config,
                                      labelprop_partition_t** out,
                                      labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!out) throw UsageError("null argument");
        *out = new labelprop_partition{
            two_step_equivalence(named_of(graph).graph, to_config(config))};
    });
}

labelprop_status_t labelprop_defensive_offensive(const labelprop_graph_t* graph,
                                                 const labelprop_config_t* config,
                                                 labelprop_partition_t** out,
                                                 labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!out) throw UsageError("null argument");
        *out = new labelprop_partition{
            defensive_then_offensive(named_of(graph).graph, to_config(config))};
    });
}

uint32_t labelprop_partition_node_count(const labelprop_partition_t* p) {
    return p ? p->partition.node_count() : 0;
}

uint32_t labelprop_partition_group_count(const labelprop_partition_t* p) {
    return p ? p->partition.group_count() : 0;
}

uint32_t labelprop_partition_label(const labelprop_partition_t* p, uint32_t node) {
    return p && node < p->partition.node_count() ? p->partition.label(node) : UINT32_MAX;
}

labelprop_status_t labelprop_partition_read(const char* path,
                                            const labelprop_graph_t* graph,
                                            labelprop_partition_t** out,
                                            labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!path || !out) throw UsageError("null argument");
        *out = new labelprop_partition{read_partition(path, named_of(graph).names)};
    });
}

labelprop_status_t labelprop_partition_write(const labelprop_partition_t* p,
                                             const labelprop_graph_t* graph,
                                             const char* path,
                                             labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!path) throw UsageError("null argument");
        write_partition(partition_of(p), named_of(graph).names, path);
    });
}

void labelprop_partition_free(labelprop_partition_t* p) { delete p; }

uint32_t labelprop_cover_node_count(const labelprop_cover_t* c) {
    return c ? c->cover.node_count() : 0;
}

size_t labelprop_cover_entry_count(const labelprop_cover_t* c, uint32_t node) {
    if (!c || node >= c->cover.node_count()) return 0;
    return c->cover.affiliations(node).size();
}

labelprop_status_t labelprop_cover_entry(const labelprop_cover_t* c, uint32_t node,
                                         size_t index, uint32_t* label,
                                         double* weight, labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!c || !label || !weight) throw UsageError("null argument");
        if (node >= c->cover.node_count()) throw UsageError("node out of range");
        const auto aff = c->cover.affiliations(node);
        if (index >= aff.size()) throw UsageError("affiliation index out of range");
        *label = aff[index].first;
        *weight = aff[index].second;
    });
}

labelprop_status_t labelprop_cover_write(const labelprop_cover_t* c,
                                         const labelprop_graph_t* graph,
                                         const char* path, labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!c || !path) throw UsageError("null argument");
        write_cover(c->cover, named_of(graph).names, path);
    });
}

void labelprop_cover_free(labelprop_cover_t* c) { delete c; }

labelprop_status_t labelprop_objective_f(const labelprop_graph_t* graph,
                                         const labelprop_partition_t* p, double* out,
                                         labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!out) throw UsageError("null argument");
        *out = objective_f(named_of(graph).graph, partition_of(p));
    });
}

labelprop_status_t labelprop_penalty(const labelprop_graph_t* graph,
                                     const labelprop_partition_t* p, int which,
                                     double* out, labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!out) throw UsageError("null argument");
        *out = penalty(named_of(graph).graph, partition_of(p),
                       which == 0 ? PenaltyKind::group_sizes
                                  : PenaltyKind::group_degrees);
    });
}

labelprop_status_t labelprop_hamiltonian(const labelprop_graph_t* graph,
                                         const labelprop_partition_t* p, int variant,
                                         double lambda, double* out,
                                         labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!out) throw UsageError("null argument");
        HamiltonianVariant v;
        switch (variant) {
        case 0:
            v = HamiltonianVariant::plain;
            break;
        case 1:
            v = HamiltonianVariant::cpm;
            break;
        case 2:
            v = HamiltonianVariant::degree;
            break;
        case 3:
            v = HamiltonianVariant::apm;
            break;
        default:
            throw UsageError("unknown hamiltonian variant");
        }
        *out = hamiltonian(named_of(graph).graph, partition_of(p), v, lambda);
    });
}

labelprop_status_t labelprop_modularity(const labelprop_graph_t* graph,
                                        const labelprop_partition_t* p, double* out,
                                        labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!out) throw UsageError("null argument");
        *out = modularity_q(named_of(graph).graph, partition_of(p));
    });
}

labelprop_status_t labelprop_nmi(const labelprop_partition_t* a,
                                 const labelprop_partition_t* b, double* out,
                                 labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!out) throw UsageError("null argument");
        *out = nmi(partition_of(a), partition_of(b));
    });
}

labelprop_status_t labelprop_nmi_files(const char* path_a, const char* path_b,
                                       double* out, labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!path_a || !path_b || !out) throw UsageError("null argument");
        *out = nmi_between_files(path_a, path_b);
    });
}

labelprop_status_t labelprop_degeneracy(const labelprop_partition_t* p,
                                        double* tiny_fraction,
                                        double* largest_fraction,
                                        labelprop_error_t* error) {
    return guarded(error, [&] {
        if (!tiny_fraction || !largest_fraction) throw UsageError("null argument");
        const DegeneracyStats s = degeneracy_stats(partition_of(p));
        *tiny_fraction = s.tiny_fraction;
        *largest_fraction = s.largest_fraction;
    });
}

} // extern "C"

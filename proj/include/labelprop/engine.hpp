#pragma once

#include <functional>
#include <span>
#include <vector>

#include "labelprop/graph.hpp"
#include "labelprop/partition.hpp"
#include "labelprop/rng.hpp"
#include "labelprop/rules.hpp"

namespace labelprop {

enum class Schedule { async, sync, semisync, bipartite_alternating };

enum class TiePolicy {
    random_choice,   // uniform over the maximal labels
    retention,       // keep the current label when it is maximal
    inclusion,       // own label gets one extra unit of score, then random
    smallest_label,  // deterministic: smallest maximal label id
};

enum class Convergence {
    no_change,   // stop after a full pass with zero relabels
    equilibrium, // stop once every node carries a maximal label
    max_iters,   // run the full iteration budget
};

struct RunConfig {
    Schedule schedule = Schedule::async;
    TiePolicy tie = TiePolicy::retention;
    Convergence convergence = Convergence::no_change;
    std::uint32_t max_iters = 100;
    std::uint64_t seed = 0;
    bool probabilistic_sync = false;  // sampled label choice under sync
    // Test hook, called after every iteration with the raw (pre-split) labels.
    std::function<void(std::uint32_t, std::span<const label_id>)> observer;
};

struct RunResult {
    Partition partition;  // split by the rule's transport, canonical labels
    std::uint32_t iterations = 0;
    std::vector<std::uint32_t> relabel_counts;  // one entry per iteration
    bool converged = false;
    std::uint64_t seed = 0;
    std::vector<double> final_preferences;  // defensive/offensive runs only
};

// Propagation from all-singleton labels (g_i = i).
RunResult run(const Graph& g, const RuleSpec& rule, const RunConfig& cfg);

// Propagation from a caller-supplied labeling.
RunResult run_from(const Graph& g, const RuleSpec& rule, const RunConfig& cfg,
                   std::span<const label_id> initial);

// True when every node's own label attains the maximal score in its
// candidate set, evaluated on freshly initialized rule state.
bool check_equilibrium(const Graph& g, const RuleSpec& rule,
                       std::span<const label_id> labels);

// Selects from the sorted maximal-label set. Draws from `rng` only when the
// choice is genuinely random.
label_id resolve_tie(std::span<const label_id> maximal, label_id current,
                     TiePolicy policy, Rng& rng);

// Asynchronous propagation that visits only active nodes; a node turns
// passive when its label is maximal and wakes when label mass around it
// changes. Requires a rule whose scores are determined by the transport
// neighborhood (standard, static preferences, defensive, neighborhood
// strength, tau mixtures, citation).
RunResult active_passive_run(const Graph& g, const RuleSpec& rule, const RunConfig& cfg);

} // namespace labelprop

#pragma once

#include <functional>

#include "labelprop/engine.hpp"
#include "labelprop/graph.hpp"
#include "labelprop/partition.hpp"

namespace labelprop {

// A base method: rule plus run configuration. Pipelines derive per-run seeds
// from cfg.seed, so a method descriptor stays reproducible as a whole.
struct MethodSpec {
    RuleSpec rule;
    RunConfig cfg;
};

struct ConsensusResult {
    Partition partition;
    bool converged = false;
    std::uint32_t rounds = 0;
};

// Repeated runs vote on co-classification; pairs adjacent in the round's
// input graph whose agreement reaches `threshold` form the next round's
// weighted graph. Stops when all runs of a round agree.
ConsensusResult consensus(const Graph& g, const MethodSpec& base, std::uint32_t runs,
                          double threshold = 0.5, std::uint32_t max_rounds = 10);

struct Hierarchy {
    std::vector<Partition> levels;  // levels[t] groups the nodes of level t-1
    std::vector<Partition> lifted;  // the same levels over the original nodes

    std::size_t level_count() const { return levels.size(); }
};

// Bottom-up agglomeration: run, quotient, repeat until a pass merges nothing.
Hierarchy hierarchy_agglomerate(const Graph& g, const MethodSpec& base);

// Re-runs the method inside every group of every level and splits the groups
// the rerun breaks apart. The result is again a nested hierarchy.
Hierarchy hierarchy_refine(const Graph& g, const Hierarchy& h, const MethodSpec& base);

struct CopraConfig {
    std::uint32_t nu = 0;     // keep affiliations >= 1/nu (0 = mode off)
    double rho = 0.0;         // keep affiliations >= rho * max (0 = mode off)
    std::uint32_t max_iters = 100;
    std::uint64_t seed = 0;
    // Test hook, called with the affiliations after every iteration.
    std::function<void(std::uint32_t, const Cover&)> observer;
};

// Affiliation propagation: each node averages its neighbors' affiliation
// vectors, then thresholds and renormalizes. Exactly one of nu/rho active.
Cover copra(const Graph& g, const CopraConfig& cfg);

// Speaker/listener propagation with per-node label memories; labels heard
// with relative frequency >= min_frequency form the cover.
Cover memory_lpa(const Graph& g, std::uint32_t iterations, double min_frequency,
                 std::uint64_t seed);

inline constexpr std::uint32_t kMemoryDefaultIterations = 25;

inline Cover memory_lpa(const Graph& g, double min_frequency, std::uint64_t seed) {
    return memory_lpa(g, kMemoryDefaultIterations, min_frequency, seed);
}

// Direct-transport run first, then a common-neighbor-transport rerun inside
// each detected group; separates structurally equivalent subsets that the
// first pass merges.
Partition two_step_equivalence(const Graph& g, const RunConfig& cfg);

// Defensive run, then offensive reruns seeded with the current groups and
// strengths until the degeneracy statistics stabilize (both fractions moving
// less than 0.01) or 10 rounds pass.
Partition defensive_then_offensive(const Graph& g, const RunConfig& cfg);

} // namespace labelprop

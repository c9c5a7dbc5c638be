#pragma once

#include <cstdint>
#include <utility>

#include "labelprop/graph.hpp"
#include "labelprop/partition.hpp"

namespace labelprop {

// G(n,p) with p = avg_degree/(n-1); simple, loop-free. Same seed, same graph.
Graph erdos_renyi(node_id n, double avg_degree, std::uint64_t seed);

struct PlantedSpec {
    node_id n = 0;
    std::uint32_t groups = 1;      // n must be divisible by groups
    double avg_degree = 0.0;
    double mu = 0.0;               // expected fraction of a node's edges leaving its group
    std::uint64_t seed = 0;
};

struct PlantedResult {
    Graph graph;
    Partition truth;
};

// Equal blocks with within/between edge probabilities chosen so the expected
// degree is avg_degree and the expected external fraction is mu.
PlantedResult planted_partition(const PlantedSpec& spec);

// rows x cols lattice with horizontal, vertical and down-right diagonal edges.
// Listed edges are removed; removing a non-existent edge is an error.
Graph triangular_grid(std::uint32_t rows, std::uint32_t cols,
                      std::span<const std::pair<node_id, node_id>> removed = {});

inline node_id grid_node(std::uint32_t cols, std::uint32_t r, std::uint32_t c) {
    return r * cols + c;
}

struct CliquePair {
    Graph graph;
    Cover truth;  // shared nodes carry 0.5/0.5, the rest 1.0 in their clique
};

// Two k-cliques sharing s nodes (0 <= s < k).
CliquePair overlapping_cliques(std::uint32_t k, std::uint32_t s);

} // namespace labelprop

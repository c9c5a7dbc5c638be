#pragma once

#include <utility>
#include <vector>

#include "labelprop/engine.hpp"
#include "labelprop/generators.hpp"
#include "labelprop/graph.hpp"
#include "labelprop/objectives.hpp"
#include "labelprop/partition.hpp"
#include "labelprop/pipelines.hpp"
#include "labelprop/rng.hpp"
#include "labelprop/rules.hpp"

namespace test_helpers {

using namespace labelprop;

inline Graph from_pairs(std::vector<std::pair<node_id, node_id>> pairs,
                        std::optional<node_id> n = std::nullopt) {
    std::vector<EdgeInput> edges;
    for (auto [u, v] : pairs) edges.push_back({u, v, 1.0});
    BuildOptions opt;
    opt.node_count = n;
    return build_graph(edges, opt);
}

inline Graph path_graph(node_id n) {
    std::vector<std::pair<node_id, node_id>> pairs;
    for (node_id i = 0; i + 1 < n; ++i) pairs.push_back({i, i + 1});
    return from_pairs(std::move(pairs), n);
}

inline Graph complete_graph(node_id n) {
    std::vector<std::pair<node_id, node_id>> pairs;
    for (node_id i = 0; i < n; ++i)
        for (node_id j = i + 1; j < n; ++j) pairs.push_back({i, j});
    return from_pairs(std::move(pairs), n);
}

inline Graph cycle_graph(node_id n) {
    std::vector<std::pair<node_id, node_id>> pairs;
    for (node_id i = 0; i < n; ++i) pairs.push_back({i, (i + 1) % n});
    return from_pairs(std::move(pairs), n);
}

// Complete bipartite graph with node types 0 (first a nodes) and 1.
inline Graph complete_bipartite(node_id a, node_id b) {
    std::vector<EdgeInput> edges;
    for (node_id i = 0; i < a; ++i)
        for (node_id j = 0; j < b; ++j) edges.push_back({i, a + j, 1.0});
    BuildOptions opt;
    opt.node_count = a + b;
    opt.node_types.assign(a + b, 1);
    for (node_id i = 0; i < a; ++i) opt.node_types[i] = 0;
    return build_graph(edges, opt);
}

// Two triangles joined by one bridge edge (2-3).
inline Graph barbell_graph() {
    return from_pairs({{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}});
}

// Erdos-Renyi-style random test graph with integer weights in [1, max_w].
inline Graph random_graph(Rng& rng, node_id n, double p, int max_w = 1) {
    std::vector<EdgeInput> edges;
    for (node_id i = 0; i < n; ++i)
        for (node_id j = i + 1; j < n; ++j)
            if (rng.next_real() < p)
                edges.push_back({i, j, static_cast<double>(1 + rng.next_below(max_w))});
    BuildOptions opt;
    opt.node_count = n;
    return build_graph(edges, opt);
}

inline std::vector<label_id> random_labels(Rng& rng, node_id n, std::uint32_t max_labels) {
    std::vector<label_id> labels(n);
    for (auto& l : labels) l = rng.next_below(max_labels);
    return labels;
}

inline Partition random_labeling(Rng& rng, node_id n, std::uint32_t max_labels) {
    return Partition(random_labels(rng, n, max_labels));
}

inline std::vector<label_id> labels_vec(std::initializer_list<label_id> l) { return l; }

inline bool same_labels(std::span<const label_id> a, std::span<const label_id> b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

// The classic 6x12 grid fixture: four middle horizontal edges removed so the
// left and right halves stay only weakly joined.
inline Graph bisected_grid() {
    const std::uint32_t rows = 6, cols = 12;
    std::vector<std::pair<node_id, node_id>> removed;
    for (std::uint32_t r = 1; r <= 4; ++r)
        removed.push_back({grid_node(cols, r, 5), grid_node(cols, r, 6)});
    return triangular_grid(rows, cols, removed);
}

} // namespace test_helpers

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace labelprop {

using node_id = std::uint32_t;
using label_id = std::uint32_t;

// Thrown on malformed inputs (bad files, inconsistent data).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown on invalid arguments / incompatible configurations.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct EdgeInput {
    node_id u = 0;
    node_id v = 0;
    double w = 1.0;
};

struct BuildOptions {
    std::optional<node_id> node_count;   // inferred from max id when absent
    bool directed = false;
    std::vector<int> node_types;         // empty = untyped
    bool signed_values = false;          // permit negative weights
};

// Immutable weighted multigraph in CSR form. Parallel edges accumulate into
// a single adjacency entry; self-edges are kept apart as per-node loop
// weights. A loop of weight w counts 2w towards its node's degree and 2w on
// the matrix diagonal, but only w towards the node's own-label score in the
// propagation rules.
class Graph {
public:
    Graph() = default;

    node_id node_count() const { return n_; }
    double total_weight() const { return m_; }  // loops counted once
    bool directed() const { return directed_; }
    bool signed_values() const { return signed_; }

    // Out-adjacency (the only adjacency for undirected graphs).
    std::span<const node_id> neighbors(node_id i) const {
        return {nbr_.data() + offsets_[i], nbr_.data() + offsets_[i + 1]};
    }
    std::span<const double> weights(node_id i) const {
        return {w_.data() + offsets_[i], w_.data() + offsets_[i + 1]};
    }
    // In-adjacency; identical to out-adjacency for undirected graphs.
    std::span<const node_id> in_neighbors(node_id i) const {
        if (!directed_) return neighbors(i);
        return {in_nbr_.data() + in_offsets_[i], in_nbr_.data() + in_offsets_[i + 1]};
    }
    std::span<const double> in_weights(node_id i) const {
        if (!directed_) return weights(i);
        return {in_w_.data() + in_offsets_[i], in_w_.data() + in_offsets_[i + 1]};
    }

    double loop(node_id i) const { return loops_.empty() ? 0.0 : loops_[i]; }
    bool has_loops() const { return !loops_.empty(); }

    // Weighted degree: out + in weights plus twice the loop weight.
    double degree(node_id i) const { return degree_[i]; }
    // Number of distinct (non-loop) out-neighbors.
    std::uint32_t neighbor_count(node_id i) const { return offsets_[i + 1] - offsets_[i]; }
    std::uint32_t max_neighbor_count() const;

    bool has_types() const { return !types_.empty(); }
    int type(node_id i) const { return types_[i]; }
    int type_count() const { return type_count_; }
    std::span<const int> types() const { return types_; }

    double weight_between(node_id i, node_id j) const;  // 0 when not adjacent

    // Enumerates each stored entry once: (u,v,w) with u<=v for undirected.
    template <typename F>
    void for_each_entry(F&& f) const {
        for (node_id i = 0; i < n_; ++i) {
            if (loop(i) != 0.0) f(i, i, loop(i));
            for (std::size_t e = offsets_[i]; e < offsets_[i + 1]; ++e) {
                const node_id j = nbr_[e];
                if (directed_ || i <= j) f(i, j, w_[e]);
            }
        }
    }

    bool same_structure(const Graph& o) const;

    friend Graph build_graph(std::span<const EdgeInput>, const BuildOptions&);

private:
    node_id n_ = 0;
    double m_ = 0.0;
    bool directed_ = false;
    bool signed_ = false;
    int type_count_ = 0;
    std::vector<std::size_t> offsets_;
    std::vector<node_id> nbr_;
    std::vector<double> w_;
    std::vector<std::size_t> in_offsets_;
    std::vector<node_id> in_nbr_;
    std::vector<double> in_w_;
    std::vector<double> loops_;
    std::vector<double> degree_;
    std::vector<int> types_;
};

Graph build_graph(std::span<const EdgeInput> edges, const BuildOptions& opt = {});

struct Coloring {
    std::vector<std::uint32_t> colors;
    std::uint32_t color_count = 0;
};

// Greedy first-fit coloring in node order; uses at most max_degree+1 colors.
Coloring greedy_coloring(const Graph& g);

enum class SignedScheme { fixed, equal_total };

// Reinterprets edge signs as weights: `fixed` maps each unit of positive
// (negative) multiplicity to w_pos (w_neg); `equal_total` spreads weight
// 1/m_p over positive and -1/m_n over negative multiplicity so both sides
// total +-1.
Graph signed_reweight(const Graph& g, SignedScheme scheme, double w_pos = 1.0,
                      double w_neg = -1.0);

struct Subgraph {
    Graph graph;
    std::vector<node_id> to_original;               // new id -> old id
    std::vector<std::int64_t> from_original;        // old id -> new id, -1 outside
};

Subgraph induced_subgraph(const Graph& g, std::span<const node_id> nodes);

} // namespace labelprop

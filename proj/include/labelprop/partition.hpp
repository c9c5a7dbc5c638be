#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "labelprop/graph.hpp"

namespace labelprop {

// A disjoint node grouping: one label per node. Labels are opaque ids;
// canonical form relabels every group with its smallest member id, which is
// what all deterministic operations return.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<label_id> labels) : labels_(std::move(labels)) {}

    static Partition singletons(node_id n);

    node_id node_count() const { return static_cast<node_id>(labels_.size()); }
    label_id label(node_id i) const { return labels_[i]; }
    std::span<const label_id> labels() const { return labels_; }

    // Smallest-member-id labels; equal canonical vectors <=> same grouping.
    Partition canonical() const;

    std::uint32_t group_count() const;
    // Members per group, ordered by smallest member id.
    std::vector<std::vector<node_id>> groups() const;
    std::vector<std::uint32_t> group_sizes() const;

    bool same_grouping(const Partition& o) const;

private:
    std::vector<label_id> labels_;
};

// Overlapping grouping: per-node affiliation weights, normalized to sum 1.
class Cover {
public:
    using Entry = std::pair<label_id, double>;  // label -> affiliation

    Cover() = default;
    explicit Cover(std::vector<std::vector<Entry>> affiliations)
        : aff_(std::move(affiliations)) {}

    node_id node_count() const { return static_cast<node_id>(aff_.size()); }
    std::span<const Entry> affiliations(node_id i) const { return aff_[i]; }
    std::size_t max_affiliation_count() const;
    double affiliation(node_id i, label_id g) const;

    // Support set of every label, split into connected pieces.
    std::vector<std::vector<node_id>> groups(const Graph& g) const;

private:
    std::vector<std::vector<Entry>> aff_;
};

// Dense re-indexing of a partition's groups, ordered by smallest member id.
struct DenseGroups {
    std::vector<std::uint32_t> index_of;  // node -> group index
    std::uint32_t count = 0;
};
DenseGroups dense_groups(const Partition& p);

// Maximal connected node sets (edge direction ignored).
Partition connected_components(const Graph& g);

// Refines `labels`: nodes share an output group iff they share an input label
// and are connected inside that label's induced subgraph.
Partition split_into_components(const Graph& g, std::span<const label_id> labels);

// Meta-network of a partition: one node per group, edge weights total the
// original weight between groups, loop weights total the weight within them.
// Total weight is preserved.
Graph quotient_graph(const Graph& g, const Partition& p);

// Per-group total weighted degree.
std::vector<double> group_degrees(const Graph& g, const Partition& p);

} // namespace labelprop

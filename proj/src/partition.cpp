#include "labelprop/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace labelprop {

Partition Partition::singletons(node_id n) {
    std::vector<label_id> labels(n);
    std::iota(labels.begin(), labels.end(), 0u);
    return Partition(std::move(labels));
}

Partition Partition::canonical() const {
    std::map<label_id, label_id> smallest;
    for (node_id i = 0; i < labels_.size(); ++i) {
        auto [it, inserted] = smallest.try_emplace(labels_[i], i);
        if (!inserted) it->second = std::min(it->second, i);
    }
    std::vector<label_id> out(labels_.size());
    for (node_id i = 0; i < labels_.size(); ++i) out[i] = smallest.at(labels_[i]);
    return Partition(std::move(out));
}

std::uint32_t Partition::group_count() const { return dense_groups(*this).count; }

std::vector<std::vector<node_id>> Partition::groups() const {
    const auto d = dense_groups(*this);
    std::vector<std::vector<node_id>> out(d.count);
    for (node_id i = 0; i < labels_.size(); ++i) out[d.index_of[i]].push_back(i);
    return out;
}

std::vector<std::uint32_t> Partition::group_sizes() const {
    const auto d = dense_groups(*this);
    std::vector<std::uint32_t> sizes(d.count, 0);
    for (node_id i = 0; i < labels_.size(); ++i) ++sizes[d.index_of[i]];
    return sizes;
}

bool Partition::same_grouping(const Partition& o) const {
    if (labels_.size() != o.labels_.size()) return false;
    return canonical().labels_ == o.canonical().labels_;
}

DenseGroups dense_groups(const Partition& p) {
    // Group order follows smallest member id.
    DenseGroups d;
    const auto labels = p.labels();
    d.index_of.assign(labels.size(), 0);
    std::map<label_id, std::uint32_t> index;
    for (node_id i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = index.try_emplace(labels[i], 0);
        if (inserted) it->second = d.count++;
        d.index_of[i] = it->second;
    }
    return d;
}

std::size_t Cover::max_affiliation_count() const {
    std::size_t best = 0;
    for (const auto& a : aff_) best = std::max(best, a.size());
    return best;
}

double Cover::affiliation(node_id i, label_id g) const {
    for (const auto& [label, w] : aff_[i])
        if (label == g) return w;
    return 0.0;
}

std::vector<std::vector<node_id>> Cover::groups(const Graph& g) const {
    std::map<label_id, std::vector<node_id>> support;
    for (node_id i = 0; i < aff_.size(); ++i)
        for (const auto& [label, w] : aff_[i])
            if (w > 0) support[label].push_back(i);

    std::vector<std::vector<node_id>> out;
    for (const auto& [label, nodes] : support) {
        // Split each support set into connected pieces.
        const auto sub = induced_subgraph(g, nodes);
        const auto comps = connected_components(sub.graph).groups();
        for (const auto& comp : comps) {
            std::vector<node_id> piece;
            piece.reserve(comp.size());
            for (node_id local : comp) piece.push_back(sub.to_original[local]);
            out.push_back(std::move(piece));
        }
    }
    return out;
}

namespace {

// Flood fill over neighbors accepted by `admit(i, j)`.
template <typename Admit>
Partition components_where(const Graph& g, Admit&& admit) {
    const node_id n = g.node_count();
    std::vector<label_id> out(n, UINT32_MAX);
    std::vector<node_id> stack;
    for (node_id s = 0; s < n; ++s) {
        if (out[s] != UINT32_MAX) continue;
        out[s] = s;
        stack.push_back(s);
        while (!stack.empty()) {
            const node_id i = stack.back();
            stack.pop_back();
            auto visit = [&](node_id j) {
                if (out[j] == UINT32_MAX && admit(i, j)) {
                    out[j] = s;
                    stack.push_back(j);
                }
            };
            for (node_id j : g.neighbors(i)) visit(j);
            if (g.directed())
                for (node_id j : g.in_neighbors(i)) visit(j);
        }
    }
    return Partition(std::move(out));
}

} // namespace

Partition connected_components(const Graph& g) {
    return components_where(g, [](node_id, node_id) { return true; });
}

Partition split_into_components(const Graph& g, std::span<const label_id> labels) {
    if (labels.size() != g.node_count())
        throw UsageError("label vector size does not match node count");
    return components_where(g, [&](node_id i, node_id j) { return labels[i] == labels[j]; });
}

Graph quotient_graph(const Graph& g, const Partition& p) {
    if (p.node_count() != g.node_count())
        throw UsageError("partition does not cover the graph");
    const auto d = dense_groups(p);

    std::vector<EdgeInput> meta;
    g.for_each_entry([&](node_id u, node_id v, double w) {
        meta.push_back({d.index_of[u], d.index_of[v], w});
    });
    BuildOptions opt;
    opt.node_count = d.count;
    opt.directed = g.directed();
    opt.signed_values = g.signed_values();
    return build_graph(meta, opt);
}

std::vector<double> group_degrees(const Graph& g, const Partition& p) {
    const auto d = dense_groups(p);
    std::vector<double> out(d.count, 0.0);
    for (node_id i = 0; i < g.node_count(); ++i) out[d.index_of[i]] += g.degree(i);
    return out;
}

} // namespace labelprop

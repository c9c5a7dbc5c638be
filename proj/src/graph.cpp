#include "labelprop/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace labelprop {

namespace {

// Sorts (u,v,w) triples by (u,v) and accumulates duplicates in place.
void sort_and_accumulate(std::vector<EdgeInput>& entries) {
    std::sort(entries.begin(), entries.end(), [](const EdgeInput& a, const EdgeInput& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    std::size_t out = 0;
    for (std::size_t i = 0; i < entries.size();) {
        EdgeInput acc = entries[i];
        std::size_t j = i + 1;
        while (j < entries.size() && entries[j].u == acc.u && entries[j].v == acc.v) {
            acc.w += entries[j].w;
            ++j;
        }
        entries[out++] = acc;
        i = j;
    }
    entries.resize(out);
}

void fill_csr(const std::vector<EdgeInput>& entries, node_id n,
              std::vector<std::size_t>& offsets, std::vector<node_id>& nbr,
              std::vector<double>& w) {
    offsets.assign(n + 1, 0);
    for (const auto& e : entries) ++offsets[e.u + 1];
    for (node_id i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    nbr.resize(entries.size());
    w.resize(entries.size());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& e : entries) {
        nbr[cursor[e.u]] = e.v;
        w[cursor[e.u]] = e.w;
        ++cursor[e.u];
    }
}

} // namespace

Graph build_graph(std::span<const EdgeInput> edges, const BuildOptions& opt) {
    if (edges.empty() && !opt.node_count)
        throw UsageError("empty edge list requires an explicit node count");

    node_id n = opt.node_count.value_or(0);
    for (const auto& e : edges) {
        if (!std::isfinite(e.w)) throw DataError("non-finite edge weight");
        if (e.w < 0 && !opt.signed_values)
            throw DataError("negative edge weight on a graph not flagged signed");
        if (opt.node_count) {
            if (e.u >= n || e.v >= n) throw DataError("node id out of range");
        } else {
            n = std::max({n, e.u + 1, e.v + 1});
        }
    }
    if (!opt.node_types.empty() && opt.node_types.size() != n)
        throw UsageError("node type vector size does not match node count");

    Graph g;
    g.n_ = n;
    g.directed_ = opt.directed;
    g.signed_ = opt.signed_values;
    g.types_ = opt.node_types;
    if (!g.types_.empty()) {
        std::set<int> distinct(g.types_.begin(), g.types_.end());
        g.type_count_ = static_cast<int>(distinct.size());
    }

    std::vector<EdgeInput> entries;
    entries.reserve(edges.size() * (opt.directed ? 1 : 2));
    double loop_total = 0.0;
    for (const auto& e : edges) {
        if (e.u == e.v) {
            if (g.loops_.empty()) g.loops_.assign(n, 0.0);
            g.loops_[e.u] += e.w;
            loop_total += e.w;
            continue;
        }
        entries.push_back(e);
        if (!opt.directed) entries.push_back({e.v, e.u, e.w});
    }
    sort_and_accumulate(entries);
    fill_csr(entries, n, g.offsets_, g.nbr_, g.w_);

    if (opt.directed) {
        std::vector<EdgeInput> reversed;
        reversed.reserve(entries.size());
        for (const auto& e : entries) reversed.push_back({e.v, e.u, e.w});
        sort_and_accumulate(reversed);
        fill_csr(reversed, n, g.in_offsets_, g.in_nbr_, g.in_w_);
    }

    g.degree_.assign(n, 0.0);
    double adjacency_total = 0.0;
    for (node_id i = 0; i < n; ++i) {
        double d = 2.0 * g.loop(i);
        for (double w : g.weights(i)) {
            d += w;
            adjacency_total += w;
        }
        if (opt.directed)
            for (double w : g.in_weights(i)) d += w;
        g.degree_[i] = d;
    }
    g.m_ = (opt.directed ? adjacency_total : adjacency_total / 2.0) + loop_total;
    return g;
}

std::uint32_t Graph::max_neighbor_count() const {
    std::uint32_t best = 0;
    for (node_id i = 0; i < n_; ++i) best = std::max(best, neighbor_count(i));
    return best;
}

double Graph::weight_between(node_id i, node_id j) const {
    if (i == j) return loop(i);
    const auto nb = neighbors(i);
    const auto it = std::lower_bound(nb.begin(), nb.end(), j);
    if (it == nb.end() || *it != j) return 0.0;
    return weights(i)[static_cast<std::size_t>(it - nb.begin())];
}

bool Graph::same_structure(const Graph& o) const {
    return n_ == o.n_ && directed_ == o.directed_ && offsets_ == o.offsets_ &&
           nbr_ == o.nbr_ && w_ == o.w_ && loops_ == o.loops_ && types_ == o.types_;
}

Coloring greedy_coloring(const Graph& g) {
    const node_id n = g.node_count();
    Coloring c;
    c.colors.assign(n, 0);
    if (n == 0) return c;
    std::size_t bound = 1;
    for (node_id i = 0; i < n; ++i) {
        std::size_t d = g.neighbors(i).size();
        if (g.directed()) d += g.in_neighbors(i).size();
        bound = std::max(bound, d + 2);
    }
    // taken_by[color] == i marks colors already used around node i.
    std::vector<node_id> taken_by(bound, UINT32_MAX);
    for (node_id i = 0; i < n; ++i) {
        for (node_id j : g.neighbors(i))
            if (j < i) taken_by[c.colors[j]] = i;
        if (g.directed())
            for (node_id j : g.in_neighbors(i))
                if (j < i) taken_by[c.colors[j]] = i;
        std::uint32_t color = 0;
        while (taken_by[color] == i) ++color;
        c.colors[i] = color;
        c.color_count = std::max(c.color_count, color + 1);
    }
    return c;
}

Graph signed_reweight(const Graph& g, SignedScheme scheme, double w_pos, double w_neg) {
    if (scheme == SignedScheme::fixed && (w_pos <= 0 || w_neg >= 0))
        throw UsageError("fixed scheme requires w_pos > 0 and w_neg < 0");

    double m_p = 0.0, m_n = 0.0;
    g.for_each_entry([&](node_id, node_id, double w) {
        if (w >= 0)
            m_p += w;
        else
            m_n += -w;
    });
    if (scheme == SignedScheme::equal_total && (m_p == 0.0 || m_n == 0.0))
        throw DataError("equal_total requires both positive and negative edges");

    std::vector<EdgeInput> edges;
    g.for_each_entry([&](node_id u, node_id v, double w) {
        double nw;
        if (scheme == SignedScheme::fixed)
            nw = w >= 0 ? w_pos * w : w_neg * (-w);
        else
            nw = w >= 0 ? w / m_p : w / m_n;
        edges.push_back({u, v, nw});
    });

    BuildOptions opt;
    opt.node_count = g.node_count();
    opt.directed = g.directed();
    opt.node_types.assign(g.types().begin(), g.types().end());
    opt.signed_values = true;
    return build_graph(edges, opt);
}

Subgraph induced_subgraph(const Graph& g, std::span<const node_id> nodes) {
    Subgraph s;
    s.from_original.assign(g.node_count(), -1);
    s.to_original.assign(nodes.begin(), nodes.end());
    std::sort(s.to_original.begin(), s.to_original.end());
    s.to_original.erase(std::unique(s.to_original.begin(), s.to_original.end()),
                        s.to_original.end());
    for (std::size_t k = 0; k < s.to_original.size(); ++k) {
        if (s.to_original[k] >= g.node_count()) throw UsageError("node id out of range");
        s.from_original[s.to_original[k]] = static_cast<std::int64_t>(k);
    }

    std::vector<EdgeInput> edges;
    for (node_id u_new = 0; u_new < s.to_original.size(); ++u_new) {
        const node_id u = s.to_original[u_new];
        if (g.loop(u) != 0.0) edges.push_back({u_new, u_new, g.loop(u)});
        const auto nb = g.neighbors(u);
        const auto ws = g.weights(u);
        for (std::size_t e = 0; e < nb.size(); ++e) {
            const std::int64_t v_new = s.from_original[nb[e]];
            if (v_new < 0) continue;
            if (g.directed() || u < nb[e])
                edges.push_back({u_new, static_cast<node_id>(v_new), ws[e]});
        }
    }

    BuildOptions opt;
    opt.node_count = static_cast<node_id>(s.to_original.size());
    opt.directed = g.directed();
    opt.signed_values = g.signed_values();
    if (g.has_types()) {
        opt.node_types.resize(s.to_original.size());
        for (std::size_t k = 0; k < s.to_original.size(); ++k)
            opt.node_types[k] = g.type(s.to_original[k]);
    }
    s.graph = build_graph(edges, opt);
    return s;
}

} // namespace labelprop

#include "labelprop/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "labelprop/rng.hpp"

namespace labelprop {

namespace {

// Visits each index of an implicit list of `count` slots independently with
// probability p, via geometric gaps (linear in the number of hits).
template <typename F>
void sample_bernoulli_indices(std::uint64_t count, double p, Rng& rng, F&& hit) {
    if (count == 0 || p <= 0.0) return;
    if (p >= 1.0) {
        for (std::uint64_t idx = 0; idx < count; ++idx) hit(idx);
        return;
    }
    const double log_q = std::log1p(-p);
    std::uint64_t idx = 0;
    while (true) {
        const double u = 1.0 - rng.next_real();  // (0,1]
        const double gap = std::floor(std::log(u) / log_q);
        if (gap >= static_cast<double>(count - idx)) return;
        idx += static_cast<std::uint64_t>(gap);
        if (idx >= count) return;
        hit(idx);
        ++idx;
        if (idx >= count) return;
    }
}

// Unranks index -> (i,j), i<j, over the n*(n-1)/2 ascending pairs.
std::pair<node_id, node_id> unrank_pair(std::uint64_t idx, std::uint64_t n) {
    // Row i starts at offset(i) = i*n - i*(i+1)/2; a sqrt guess is corrected
    // locally so the result stays exact for large n.
    const double nd = static_cast<double>(n);
    double guess = nd - 0.5 - std::sqrt(std::max(0.0, (nd - 0.5) * (nd - 0.5) - 2.0 * static_cast<double>(idx)));
    std::uint64_t i = static_cast<std::uint64_t>(std::max(0.0, guess));
    if (i >= n - 1) i = n - 2;
    auto row_offset = [n](std::uint64_t r) { return r * n - r * (r + 1) / 2; };
    while (i > 0 && row_offset(i) > idx) --i;
    while (row_offset(i + 1) <= idx && i + 2 < n) ++i;
    const std::uint64_t j = i + 1 + (idx - row_offset(i));
    return {static_cast<node_id>(i), static_cast<node_id>(j)};
}

} // namespace

Graph erdos_renyi(node_id n, double avg_degree, std::uint64_t seed) {
    if (avg_degree < 0) throw UsageError("average degree must be non-negative");
    if (avg_degree >= n) throw UsageError("average degree must be below the node count");
    const double p = n > 1 ? std::min(1.0, avg_degree / (n - 1)) : 0.0;

    Rng rng(seed);
    std::vector<EdgeInput> edges;
    const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    sample_bernoulli_indices(pairs, p, rng, [&](std::uint64_t idx) {
        const auto [i, j] = unrank_pair(idx, n);
        edges.push_back({i, j, 1.0});
    });

    BuildOptions opt;
    opt.node_count = n;
    return build_graph(edges, opt);
}

PlantedResult planted_partition(const PlantedSpec& spec) {
    if (spec.groups == 0 || spec.n == 0 || spec.n % spec.groups != 0)
        throw UsageError("node count must be a positive multiple of the group count");
    if (spec.mu < 0.0 || spec.mu > 1.0) throw UsageError("mu must lie in [0,1]");
    if (spec.avg_degree < 0.0 || spec.avg_degree >= spec.n)
        throw UsageError("average degree must lie in [0, n)");

    const node_id size = spec.n / spec.groups;
    const double internal = spec.avg_degree * (1.0 - spec.mu);
    const double external = spec.avg_degree * spec.mu;

    double p_in = 0.0;
    if (internal > 0.0) {
        if (size < 2) throw DataError("infeasible: internal edges need blocks of size >= 2");
        p_in = internal / (size - 1);
    }
    double p_out = 0.0;
    if (external > 0.0) {
        if (spec.groups < 2) throw DataError("infeasible: external edges need >= 2 groups");
        p_out = external / (spec.n - size);
    }
    if (p_in > 1.0 || p_out > 1.0) throw DataError("infeasible edge probabilities");

    Rng rng(spec.seed);
    std::vector<EdgeInput> edges;
    const std::uint64_t within_pairs = static_cast<std::uint64_t>(size) * (size - 1) / 2;
    for (std::uint32_t b = 0; b < spec.groups; ++b) {
        const node_id base = b * size;
        sample_bernoulli_indices(within_pairs, p_in, rng, [&](std::uint64_t idx) {
            const auto [i, j] = unrank_pair(idx, size);
            edges.push_back({base + i, base + j, 1.0});
        });
    }
    const std::uint64_t cross_pairs = static_cast<std::uint64_t>(size) * size;
    for (std::uint32_t a = 0; a + 1 < spec.groups; ++a) {
        for (std::uint32_t b = a + 1; b < spec.groups; ++b) {
            const node_id base_a = a * size, base_b = b * size;
            sample_bernoulli_indices(cross_pairs, p_out, rng, [&](std::uint64_t idx) {
                edges.push_back({base_a + static_cast<node_id>(idx / size),
                                 base_b + static_cast<node_id>(idx % size), 1.0});
            });
        }
    }

    BuildOptions opt;
    opt.node_count = spec.n;
    PlantedResult out{build_graph(edges, opt), Partition()};
    std::vector<label_id> truth(spec.n);
    for (node_id i = 0; i < spec.n; ++i) truth[i] = (i / size) * size;
    out.truth = Partition(std::move(truth));
    return out;
}

Graph triangular_grid(std::uint32_t rows, std::uint32_t cols,
                      std::span<const std::pair<node_id, node_id>> removed) {
    if (rows == 0 || cols == 0) throw UsageError("grid needs positive dimensions");
    std::set<std::pair<node_id, node_id>> edge_set;
    auto add = [&](node_id u, node_id v) { edge_set.insert({std::min(u, v), std::max(u, v)}); };
    for (std::uint32_t r = 0; r < rows; ++r) {
        for (std::uint32_t c = 0; c < cols; ++c) {
            const node_id u = grid_node(cols, r, c);
            if (c + 1 < cols) add(u, grid_node(cols, r, c + 1));
            if (r + 1 < rows) add(u, grid_node(cols, r + 1, c));
            if (r + 1 < rows && c + 1 < cols) add(u, grid_node(cols, r + 1, c + 1));
        }
    }
    for (const auto& [u, v] : removed) {
        const auto key = std::make_pair(std::min(u, v), std::max(u, v));
        if (edge_set.erase(key) == 0) throw UsageError("removal of a non-existent grid edge");
    }

    std::vector<EdgeInput> edges;
    edges.reserve(edge_set.size());
    for (const auto& [u, v] : edge_set) edges.push_back({u, v, 1.0});
    BuildOptions opt;
    opt.node_count = rows * cols;
    return build_graph(edges, opt);
}

CliquePair overlapping_cliques(std::uint32_t k, std::uint32_t s) {
    if (s >= k) throw UsageError("shared node count must be below the clique size");
    const node_id n = 2 * k - s;
    std::set<std::pair<node_id, node_id>> edge_set;
    auto add_clique = [&](auto&& members) {
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b)
                edge_set.insert({std::min(members[a], members[b]),
                                 std::max(members[a], members[b])});
    };
    std::vector<node_id> clique_a, clique_b;
    for (node_id i = 0; i < k; ++i) clique_a.push_back(i);
    for (node_id i = 0; i < s; ++i) clique_b.push_back(i);
    for (node_id i = k; i < n; ++i) clique_b.push_back(i);
    add_clique(clique_a);
    add_clique(clique_b);

    std::vector<EdgeInput> edges;
    for (const auto& [u, v] : edge_set) edges.push_back({u, v, 1.0});
    BuildOptions opt;
    opt.node_count = n;

    std::vector<std::vector<Cover::Entry>> aff(n);
    for (node_id i = 0; i < n; ++i) {
        if (i < s)
            aff[i] = {{0, 0.5}, {1, 0.5}};
        else if (i < k)
            aff[i] = {{0, 1.0}};
        else
            aff[i] = {{1, 1.0}};
    }
    return {build_graph(edges, opt), Cover(std::move(aff))};
}

} // namespace labelprop

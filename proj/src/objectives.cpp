#include "labelprop/objectives.hpp"

#include <cmath>
#include <map>

namespace labelprop {

double objective_f(const Graph& g, const Partition& p) {
    if (p.node_count() != g.node_count()) throw UsageError("partition/graph size mismatch");
    const auto labels = p.labels();
    double f = 0.0;
    g.for_each_entry([&](node_id u, node_id v, double w) {
        if (labels[u] != labels[v]) return;
        // Undirected entries appear once per unordered pair; loops once.
        f += (g.directed() && u != v) ? w : 2.0 * w;
    });
    return f;
}

double cut_weight(const Graph& g, const Partition& p) {
    const auto labels = p.labels();
    double cut = 0.0;
    g.for_each_entry([&](node_id u, node_id v, double w) {
        if (labels[u] != labels[v]) cut += w;
    });
    return cut;
}

double penalty(const Graph& g, const Partition& p, PenaltyKind which) {
    double total = 0.0;
    if (which == PenaltyKind::group_sizes) {
        for (auto s : p.group_sizes()) total += static_cast<double>(s) * s;
    } else {
        for (double k : group_degrees(g, p)) total += k * k;
    }
    return total;
}

double hamiltonian(const Graph& g, const Partition& p, HamiltonianVariant v, double lambda) {
    const double f = objective_f(g, p);
    switch (v) {
    case HamiltonianVariant::plain:
        return -f;
    case HamiltonianVariant::cpm:
        return -f + lambda * penalty(g, p, PenaltyKind::group_sizes);
    case HamiltonianVariant::degree:
        return -f + lambda * penalty(g, p, PenaltyKind::group_degrees);
    case HamiltonianVariant::apm:
        return -(lambda + 1.0) * f + lambda * penalty(g, p, PenaltyKind::group_sizes);
    }
    throw UsageError("unknown hamiltonian variant");
}

double apm_lambda(double lambda3) {
    if (lambda3 == -1.0) throw UsageError("lambda3 = -1 has no constant-Potts equivalent");
    return lambda3 / (lambda3 + 1.0);
}

double modularity_q(const Graph& g, const Partition& p) {
    const double m = g.total_weight();
    if (m <= 0.0) throw UsageError("modularity undefined for total weight 0");
    const auto d = dense_groups(p);
    const auto labels = p.labels();

    // Per-group route: Q = sum_g [ w_in(g)/m - (k_g/2m)^2 ].
    std::vector<double> internal(d.count, 0.0);
    g.for_each_entry([&](node_id u, node_id v, double w) {
        if (labels[u] == labels[v]) internal[d.index_of[u]] += w;
    });
    std::vector<double> k_g(d.count, 0.0);
    for (node_id i = 0; i < g.node_count(); ++i) k_g[d.index_of[i]] += g.degree(i);

    double q = 0.0;
    for (std::uint32_t gi = 0; gi < d.count; ++gi) {
        const double kg = k_g[gi] / (2.0 * m);
        q += internal[gi] / m - kg * kg;
    }
    return q;
}

double nmi(const Partition& a, const Partition& b) {
    if (a.node_count() != b.node_count())
        throw UsageError("nmi requires partitions over the same node set");
    const node_id n = a.node_count();
    if (n == 0) throw UsageError("nmi undefined on empty partitions");

    const auto da = dense_groups(a);
    const auto db = dense_groups(b);
    if (da.count == 1 && db.count == 1) return 1.0;  // 0/0 case by convention
    if (da.index_of == db.index_of) return 1.0;      // identical up to relabeling

    std::vector<double> pa(da.count, 0.0), pb(db.count, 0.0);
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> joint;
    const double inv = 1.0 / n;
    for (node_id i = 0; i < n; ++i) {
        pa[da.index_of[i]] += inv;
        pb[db.index_of[i]] += inv;
        joint[{da.index_of[i], db.index_of[i]}] += inv;
    }

    auto entropy = [](const std::vector<double>& p) {
        double h = 0.0;
        for (double x : p)
            if (x > 0) h -= x * std::log(x);
        return h;
    };
    double info = 0.0;
    for (const auto& [cell, pab] : joint)
        if (pab > 0) info += pab * std::log(pab / (pa[cell.first] * pb[cell.second]));

    const double denom = entropy(pa) + entropy(pb);
    if (denom <= 0.0) return 1.0;
    const double value = 2.0 * info / denom;
    return std::min(1.0, std::max(0.0, value));
}

DegeneracyStats degeneracy_stats(const Partition& p) {
    DegeneracyStats s;
    const node_id n = p.node_count();
    if (n == 0) return s;
    std::uint32_t tiny = 0, largest = 0;
    for (auto size : p.group_sizes()) {
        if (size <= 3) tiny += size;
        largest = std::max(largest, size);
    }
    s.tiny_fraction = static_cast<double>(tiny) / n;
    s.largest_fraction = static_cast<double>(largest) / n;
    return s;
}

ObjectiveReport evaluate_partition(const Graph& g, const Partition& p) {
    ObjectiveReport r;
    r.f = objective_f(g, p);
    r.hamiltonian_plain = -r.f;
    r.cut = cut_weight(g, p);
    r.groups = p.group_count();
    r.modularity = g.total_weight() > 0 ? modularity_q(g, p) : 0.0;
    return r;
}

} // namespace labelprop

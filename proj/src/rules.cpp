#include "labelprop/rules.hpp"

#include <algorithm>
#include <cmath>

namespace labelprop {

RuleSpec RuleSpec::cpm(double lambda1) {
    RuleSpec r;
    r.kind = RuleKind::cpm;
    r.lambda = lambda1;
    return r;
}

RuleSpec RuleSpec::modularity(double lambda2) {
    RuleSpec r;
    r.kind = RuleKind::modularity;
    r.lambda = lambda2;
    return r;
}

RuleSpec RuleSpec::preference_rule(std::vector<double> p, PreferenceMode mode) {
    RuleSpec r;
    r.kind = RuleKind::preference;
    r.preferences = std::move(p);
    r.preference_mode = mode;
    return r;
}

RuleSpec RuleSpec::defensive_rule() {
    RuleSpec r;
    r.kind = RuleKind::defensive;
    return r;
}

RuleSpec RuleSpec::offensive_rule() {
    RuleSpec r;
    r.kind = RuleKind::offensive;
    return r;
}

RuleSpec RuleSpec::balanced_rule(double gamma) {
    RuleSpec r;
    r.kind = RuleKind::balanced;
    r.gamma = gamma;
    return r;
}

RuleSpec RuleSpec::neighborhood() {
    RuleSpec r;
    r.kind = RuleKind::neighborhood_strength;
    return r;
}

RuleSpec RuleSpec::with_tau(double tau) {
    RuleSpec r;
    r.kind = RuleKind::general_tau;
    r.tau = tau;
    return r;
}

RuleSpec RuleSpec::citation(bool cocitation) {
    RuleSpec r;
    r.kind = cocitation ? RuleKind::cocitation : RuleKind::bibcoupling;
    return r;
}

void validate_rule(const Graph& g, const RuleSpec& rule) {
    const bool citation =
        rule.kind == RuleKind::cocitation || rule.kind == RuleKind::bibcoupling;
    if (citation && !g.directed())
        throw UsageError("citation rules require a directed graph");
    if (!citation && g.directed())
        throw UsageError("this rule requires an undirected graph");
    switch (rule.kind) {
    case RuleKind::cpm:
    case RuleKind::modularity:
        if (rule.lambda < 0) throw UsageError("penalty weight must be non-negative");
        break;
    case RuleKind::general_tau:
        if (rule.tau < 0 || rule.tau > 1) throw UsageError("tau must lie in [0,1]");
        break;
    case RuleKind::preference: {
        if (rule.preferences.size() != g.node_count())
            throw UsageError("preference vector size does not match node count");
        for (double p : rule.preferences) {
            if (!std::isfinite(p)) throw UsageError("non-finite preference");
            if (rule.preference_mode == PreferenceMode::promote && p < 0)
                throw UsageError("promote preferences must be non-negative");
            if (rule.preference_mode == PreferenceMode::suppress && p > 1)
                throw UsageError("suppress preferences must not exceed 1");
        }
        break;
    }
    default:
        break;
    }
    if (!rule.initial_preferences.empty() &&
        rule.initial_preferences.size() != g.node_count())
        throw UsageError("initial preference vector size does not match node count");
}

Transport transport_of(const RuleSpec& rule) {
    switch (rule.kind) {
    case RuleKind::cocitation:
        return Transport::cocitation;
    case RuleKind::bibcoupling:
        return Transport::bibcoupling;
    case RuleKind::general_tau:
        if (rule.tau >= 1.0) return Transport::direct;
        if (rule.tau <= 0.0) return Transport::two_hop;
        return Transport::direct_and_two_hop;
    default:
        return Transport::direct;
    }
}

Partition split_by_transport(const Graph& g, const RuleSpec& rule,
                             std::span<const label_id> labels) {
    const Transport t = transport_of(rule);
    if (t == Transport::direct) return split_into_components(g, labels);

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
            for_each_transport_source(g, t, i, [&](node_id j) {
                if (out[j] == UINT32_MAX && labels[j] == labels[i]) {
                    out[j] = s;
                    stack.push_back(j);
                }
            });
        }
    }
    return Partition(std::move(out));
}

double balanced_weight(double t, double gamma) {
    return 1.0 / (1.0 + std::exp(-gamma * (2.0 * t - 1.0)));
}

Scorer::Scorer(const Graph& g, const RuleSpec& rule, std::vector<label_id> initial_labels)
    : g_(g), rule_(rule), labels_(std::move(initial_labels)) {
    validate_rule(g, rule_);
    const node_id n = g.node_count();
    if (labels_.size() != n) throw UsageError("initial label vector size mismatch");
    for (label_id l : labels_)
        if (l >= n) throw UsageError("scorer labels must be dense in [0,n)");

    track_aggregates_ = !g.directed();
    n_g_.assign(n, 0);
    k_g_.assign(n, 0.0);
    own_w_.assign(n, 0.0);
    for (node_id i = 0; i < n; ++i) {
        ++n_g_[labels_[i]];
        k_g_[labels_[i]] += g.degree(i);
    }
    if (track_aggregates_) {
        for (node_id i = 0; i < n; ++i) {
            double w_own = g.loop(i);
            const auto nb = g.neighbors(i);
            const auto ws = g.weights(i);
            for (std::size_t e = 0; e < nb.size(); ++e)
                if (labels_[nb[e]] == labels_[i]) w_own += ws[e];
            own_w_[i] = w_own;
        }
    }

    switch (rule_.kind) {
    case RuleKind::preference:
        prefs_ = rule_.preferences;
        break;
    case RuleKind::defensive:
    case RuleKind::offensive:
        prefs_ = rule_.initial_preferences.empty() ? std::vector<double>(n, 1.0)
                                                   : rule_.initial_preferences;
        if (rule_.kind == RuleKind::offensive) {
            group_max_pref_.assign(n, 0.0);
            for (node_id i = 0; i < n; ++i)
                group_max_pref_[labels_[i]] =
                    std::max(group_max_pref_[labels_[i]], prefs_[i]);
        }
        break;
    case RuleKind::balanced:
        prefs_.assign(n, balanced_weight(1.0, rule_.gamma));
        break;
    default:
        break;
    }

    score_of_.assign(n, 0.0);
    stamp_.assign(n, 0);
    touched_.reserve(64);
}

double Scorer::strength(node_id j) const {
    switch (rule_.kind) {
    case RuleKind::preference:
        return rule_.preference_mode == PreferenceMode::promote ? prefs_[j]
                                                                : 1.0 - prefs_[j];
    case RuleKind::defensive:
    case RuleKind::balanced:
        return prefs_[j];
    case RuleKind::offensive: {
        const double top = group_max_pref_[labels_[j]];
        return top > 0.0 ? 1.0 - prefs_[j] / top : 1.0;
    }
    default:
        return 1.0;
    }
}

void Scorer::bump(label_id g, double amount) {
    if (stamp_[g] != stamp_token_) {
        stamp_[g] = stamp_token_;
        score_of_[g] = 0.0;
        touched_.push_back(g);
    }
    score_of_[g] += amount;
}

void Scorer::one_hop_scores(node_id i) {
    const auto nb = g_.neighbors(i);
    const auto ws = g_.weights(i);
    for (std::size_t e = 0; e < nb.size(); ++e)
        bump(labels_[nb[e]], ws[e] * strength(nb[e]));
    if (rule_.loops_as_votes && g_.loop(i) != 0.0)
        bump(labels_[i], g_.loop(i) * strength(i));
}

void Scorer::two_hop_scores(node_id i, double factor) {
    const auto nb = g_.neighbors(i);
    const auto ws = g_.weights(i);
    for (std::size_t e = 0; e < nb.size(); ++e) {
        const node_id k = nb[e];
        const std::uint32_t deg_k = g_.neighbor_count(k);
        if (deg_k < 2) continue;  // no second neighbor to relay through
        const double scale = factor * ws[e] / (deg_k - 1);
        const auto nb2 = g_.neighbors(k);
        const auto ws2 = g_.weights(k);
        for (std::size_t f = 0; f < nb2.size(); ++f)
            if (nb2[f] != i) bump(labels_[nb2[f]], scale * ws2[f]);
    }
}

void Scorer::citation_scores(node_id i) {
    const bool shared_targets = rule_.kind == RuleKind::cocitation;
    const auto mid = shared_targets ? g_.neighbors(i) : g_.in_neighbors(i);
    const auto mid_w = shared_targets ? g_.weights(i) : g_.in_weights(i);
    for (std::size_t e = 0; e < mid.size(); ++e) {
        const node_id k = mid[e];
        const auto ends = shared_targets ? g_.in_neighbors(k) : g_.neighbors(k);
        const auto ends_w = shared_targets ? g_.in_weights(k) : g_.weights(k);
        for (std::size_t f = 0; f < ends.size(); ++f)
            if (ends[f] != i) bump(labels_[ends[f]], mid_w[e] * ends_w[f]);
    }
}

void Scorer::score_node(node_id i, std::vector<LabelScore>& out) {
    touched_.clear();
    ++stamp_token_;
    switch (rule_.kind) {
    case RuleKind::standard:
    case RuleKind::preference:
    case RuleKind::defensive:
    case RuleKind::offensive:
    case RuleKind::balanced:
    case RuleKind::cpm:
    case RuleKind::modularity:
        one_hop_scores(i);
        break;
    case RuleKind::neighborhood_strength: {
        const auto nb = g_.neighbors(i);
        const auto ws = g_.weights(i);
        for (std::size_t e = 0; e < nb.size(); ++e) {
            const node_id j = nb[e];
            // Weighted shared-neighbor mass via sorted intersection.
            double common = 0.0;
            const auto nb_j = g_.neighbors(j);
            const auto ws_j = g_.weights(j);
            std::size_t a = 0, b = 0;
            while (a < nb.size() && b < nb_j.size()) {
                if (nb[a] < nb_j[b])
                    ++a;
                else if (nb[a] > nb_j[b])
                    ++b;
                else {
                    common += ws[a] * ws_j[b];
                    ++a;
                    ++b;
                }
            }
            bump(labels_[j], (1.0 + common) * ws[e]);
        }
        if (rule_.loops_as_votes && g_.loop(i) != 0.0) bump(labels_[i], g_.loop(i));
        break;
    }
    case RuleKind::general_tau:
        if (rule_.tau > 0.0) {
            const auto nb = g_.neighbors(i);
            const auto ws = g_.weights(i);
            for (std::size_t e = 0; e < nb.size(); ++e)
                bump(labels_[nb[e]], rule_.tau * ws[e]);
            if (rule_.loops_as_votes && g_.loop(i) != 0.0)
                bump(labels_[i], rule_.tau * g_.loop(i));
        }
        if (rule_.tau < 1.0) two_hop_scores(i, 1.0 - rule_.tau);
        break;
    case RuleKind::cocitation:
    case RuleKind::bibcoupling:
        citation_scores(i);
        break;
    }

    // Penalties and the guaranteed own-label candidate.
    const label_id own = labels_[i];
    bump(own, 0.0);
    if (rule_.kind == RuleKind::cpm) {
        for (label_id g : touched_) {
            const double excl = g == own ? 1.0 : 0.0;
            score_of_[g] -= rule_.lambda * (static_cast<double>(n_g_[g]) - excl);
        }
    } else if (rule_.kind == RuleKind::modularity) {
        const double k_i = g_.degree(i);
        for (label_id g : touched_) {
            const double excl = g == own ? k_i : 0.0;
            score_of_[g] -= rule_.lambda * k_i * (k_g_[g] - excl);
        }
    }

    std::sort(touched_.begin(), touched_.end());
    out.clear();
    for (label_id g : touched_) out.push_back({g, score_of_[g]});
}

void Scorer::move(node_id i, label_id to) {
    const label_id from = labels_[i];
    if (from == to) return;
    --n_g_[from];
    ++n_g_[to];
    k_g_[from] -= g_.degree(i);
    k_g_[to] += g_.degree(i);
    labels_[i] = to;

    if (track_aggregates_) {
        const auto nb = g_.neighbors(i);
        const auto ws = g_.weights(i);
        double w_own = g_.loop(i);
        for (std::size_t e = 0; e < nb.size(); ++e) {
            const node_id j = nb[e];
            if (labels_[j] == from) own_w_[j] -= ws[e];
            if (labels_[j] == to) {
                own_w_[j] += ws[e];
                w_own += ws[e];
            }
        }
        own_w_[i] = w_own;
    }

    if (rule_.kind == RuleKind::defensive || rule_.kind == RuleKind::offensive) {
        prefs_[i] = defensive_update_value(i);
        if (rule_.kind == RuleKind::offensive)
            group_max_pref_[to] = std::max(group_max_pref_[to], prefs_[i]);
    }
}

double Scorer::defensive_update_value(node_id i) const {
    const auto nb = g_.neighbors(i);
    const auto ws = g_.weights(i);
    double p = 0.0;
    for (std::size_t e = 0; e < nb.size(); ++e) {
        const node_id j = nb[e];
        if (labels_[j] != labels_[i]) continue;
        if (own_w_[j] <= 0.0) continue;  // guard; in-group neighbors have own_w >= w_ij
        p += prefs_[j] / own_w_[j] * ws[e];
    }
    return p;
}

void Scorer::set_update_time(node_id j, double t) {
    if (rule_.kind == RuleKind::balanced) prefs_[j] = balanced_weight(t, rule_.gamma);
}

bool Scorer::state_consistent() const {
    const node_id n = g_.node_count();
    std::vector<std::uint32_t> n_g(n, 0);
    std::vector<double> k_g(n, 0.0);
    for (node_id i = 0; i < n; ++i) {
        ++n_g[labels_[i]];
        k_g[labels_[i]] += g_.degree(i);
    }
    if (n_g != n_g_) return false;
    for (node_id g = 0; g < n; ++g)
        if (k_g[g] != k_g_[g]) return false;
    if (track_aggregates_) {
        for (node_id i = 0; i < n; ++i) {
            double w_own = g_.loop(i);
            const auto nb = g_.neighbors(i);
            const auto ws = g_.weights(i);
            for (std::size_t e = 0; e < nb.size(); ++e)
                if (labels_[nb[e]] == labels_[i]) w_own += ws[e];
            if (w_own != own_w_[i]) return false;
        }
    }
    return true;
}

EigenPrefs eigenvector_prefs(const Graph& g, const Partition& p) {
    EigenPrefs out;
    out.values.assign(g.node_count(), 1.0);
    for (const auto& members : p.groups()) {
        if (members.empty()) continue;
        const auto sub = induced_subgraph(g, members);
        const node_id n = sub.graph.node_count();
        std::vector<double> v(n, 1.0), next(n, 0.0);
        bool converged = false;
        for (int round = 0; round < 1000 && !converged; ++round) {
            // Power iteration on A + I; the shift breaks the sign flip on
            // bipartite groups without moving the leading eigenvector.
            double top = 0.0;
            for (node_id i = 0; i < n; ++i) {
                double acc = v[i] + sub.graph.loop(i) * v[i];
                const auto nb = sub.graph.neighbors(i);
                const auto ws = sub.graph.weights(i);
                for (std::size_t e = 0; e < nb.size(); ++e) acc += ws[e] * v[nb[e]];
                next[i] = acc;
                top = std::max(top, std::abs(acc));
            }
            if (top == 0.0) break;
            converged = true;
            for (node_id i = 0; i < n; ++i) {
                next[i] /= top;
                if (std::abs(next[i] - v[i]) > 1e-10 * std::max(1.0, std::abs(v[i])))
                    converged = false;
            }
            v.swap(next);
        }
        if (!converged) out.converged = false;
        double top = 0.0;
        for (double x : v) top = std::max(top, std::abs(x));
        for (node_id i = 0; i < n; ++i)
            out.values[members[i]] = top > 0.0 ? v[i] / top : 1.0;
    }
    return out;
}

} // namespace labelprop

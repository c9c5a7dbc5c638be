#include "labelprop/engine.hpp"

#include <algorithm>
#include <unordered_map>

namespace labelprop {

namespace {

std::vector<label_id> densify(std::span<const label_id> initial, node_id n) {
    if (initial.size() != n) throw UsageError("initial label vector size mismatch");
    std::unordered_map<label_id, label_id> remap;
    remap.reserve(n);
    std::vector<label_id> dense(n);
    for (node_id i = 0; i < n; ++i) {
        const auto it = remap.try_emplace(initial[i], static_cast<label_id>(remap.size())).first;
        dense[i] = it->second;
    }
    return dense;
}

void validate_config(const Graph& g, const RuleSpec& rule, const RunConfig& cfg) {
    if (cfg.max_iters < 1) throw UsageError("iteration cap must be at least 1");
    if (cfg.schedule == Schedule::bipartite_alternating) {
        if (!g.has_types() || g.type_count() != 2)
            throw UsageError("bipartite schedule needs exactly two node types");
    }
    if (cfg.probabilistic_sync && cfg.schedule != Schedule::sync)
        throw UsageError("probabilistic updates require the synchronous schedule");
    if (rule.kind == RuleKind::balanced && cfg.schedule != Schedule::async)
        throw UsageError("the balanced rule requires the asynchronous schedule");
}

struct Stepper {
    Scorer& scorer;
    const RunConfig& cfg;
    Rng& rng;
    std::vector<LabelScore> buf;
    std::vector<label_id> maximal;

    // Maximal-label set for node i under the current state, sorted by label.
    void gather_maximal(node_id i) {
        scorer.score_node(i, buf);
        if (cfg.tie == TiePolicy::inclusion) {
            const label_id own = scorer.label(i);
            for (auto& ls : buf)
                if (ls.label == own) ls.score += 1.0;
        }
        double best = buf.front().score;
        for (const auto& ls : buf) best = std::max(best, ls.score);
        maximal.clear();
        for (const auto& ls : buf)
            if (ls.score == best) maximal.push_back(ls.label);
    }

    label_id target(node_id i) {
        if (cfg.probabilistic_sync) return sampled_target(i);
        gather_maximal(i);
        return resolve_tie(maximal, scorer.label(i), cfg.tie, rng);
    }

    // Label sampled proportionally to positive score mass, the current label
    // counting one extra unit.
    label_id sampled_target(node_id i) {
        scorer.score_node(i, buf);
        const label_id own = scorer.label(i);
        double total = 0.0;
        bool own_seen = false;
        for (auto& ls : buf) {
            if (ls.label == own) {
                ls.score += 1.0;
                own_seen = true;
            }
            if (ls.score > 0.0) total += ls.score;
        }
        if (!own_seen || total <= 0.0) return own;
        double r = rng.next_real() * total;
        for (const auto& ls : buf) {
            if (ls.score <= 0.0) continue;
            if (r < ls.score) return ls.label;
            r -= ls.score;
        }
        return buf.back().label;
    }

    // One sequential in-place pass over `order`.
    std::uint32_t async_pass(std::span<const node_id> order) {
        std::uint32_t changes = 0;
        for (node_id i : order) {
            const label_id next = target(i);
            if (next != scorer.label(i)) {
                scorer.move(i, next);
                ++changes;
            }
        }
        return changes;
    }

    // Simultaneous update of `members`: all targets read the current state.
    std::uint32_t sync_pass(std::span<const node_id> members,
                            std::vector<label_id>& targets) {
        targets.resize(members.size());
        for (std::size_t k = 0; k < members.size(); ++k) targets[k] = target(members[k]);
        std::uint32_t changes = 0;
        for (std::size_t k = 0; k < members.size(); ++k) {
            if (targets[k] != scorer.label(members[k])) {
                scorer.move(members[k], targets[k]);
                ++changes;
            }
        }
        return changes;
    }
};

bool at_equilibrium(Scorer& scorer, std::vector<LabelScore>& buf) {
    const Graph& g = scorer.graph();
    for (node_id i = 0; i < g.node_count(); ++i) {
        scorer.score_node(i, buf);
        double own_score = 0.0, best = 0.0;
        bool first = true;
        for (const auto& ls : buf) {
            if (ls.label == scorer.label(i)) own_score = ls.score;
            best = first ? ls.score : std::max(best, ls.score);
            first = false;
        }
        if (own_score < best) return false;
    }
    return true;
}

RunResult run_impl(const Graph& g, const RuleSpec& rule, const RunConfig& cfg,
                   std::span<const label_id> initial) {
    validate_config(g, rule, cfg);
    const node_id n = g.node_count();
    Scorer scorer(g, rule, densify(initial, n));
    Rng rng(cfg.seed);
    Stepper stepper{scorer, cfg, rng, {}, {}};

    RunResult result;
    result.seed = cfg.seed;
    if (n == 0) {
        result.converged = true;
        result.partition = Partition();
        return result;
    }

    Coloring coloring;
    std::vector<std::vector<node_id>> classes;
    if (cfg.schedule == Schedule::semisync) {
        coloring = greedy_coloring(g);
        classes.resize(coloring.color_count);
        for (node_id i = 0; i < n; ++i) classes[coloring.colors[i]].push_back(i);
    } else if (cfg.schedule == Schedule::bipartite_alternating) {
        classes.resize(2);
        int first_type = g.type(0);
        for (node_id i = 0; i < n; ++i)
            classes[g.type(i) == first_type ? 0 : 1].push_back(i);
    }

    std::vector<node_id> all(n);
    for (node_id i = 0; i < n; ++i) all[i] = i;
    std::vector<label_id> targets;

    for (std::uint32_t iter = 1; iter <= cfg.max_iters; ++iter) {
        std::uint32_t changes = 0;
        switch (cfg.schedule) {
        case Schedule::async: {
            const auto perm = rng.permutation(n);
            if (rule.kind == RuleKind::balanced)
                for (node_id pos = 0; pos < n; ++pos)
                    scorer.set_update_time(perm[pos], static_cast<double>(pos + 1) / n);
            changes = stepper.async_pass(perm);
            break;
        }
        case Schedule::sync:
            changes = stepper.sync_pass(all, targets);
            break;
        case Schedule::semisync: {
            const auto order = rng.permutation(static_cast<std::uint32_t>(classes.size()));
            for (std::uint32_t c : order) changes += stepper.sync_pass(classes[c], targets);
            break;
        }
        case Schedule::bipartite_alternating:
            changes += stepper.sync_pass(classes[0], targets);
            changes += stepper.sync_pass(classes[1], targets);
            break;
        }

        result.relabel_counts.push_back(changes);
        result.iterations = iter;
        if (cfg.observer) cfg.observer(iter, scorer.labels());

        if (cfg.convergence == Convergence::no_change && changes == 0) {
            result.converged = true;
            break;
        }
        if (cfg.convergence == Convergence::equilibrium &&
            at_equilibrium(scorer, stepper.buf)) {
            result.converged = true;
            break;
        }
    }

    result.partition = split_by_transport(g, rule, scorer.labels()).canonical();
    if (rule.kind == RuleKind::defensive || rule.kind == RuleKind::offensive)
        result.final_preferences.assign(scorer.preferences().begin(),
                                        scorer.preferences().end());
    return result;
}

} // namespace

RunResult run(const Graph& g, const RuleSpec& rule, const RunConfig& cfg) {
    std::vector<label_id> initial(g.node_count());
    for (node_id i = 0; i < g.node_count(); ++i) initial[i] = i;
    return run_impl(g, rule, cfg, initial);
}

RunResult run_from(const Graph& g, const RuleSpec& rule, const RunConfig& cfg,
                   std::span<const label_id> initial) {
    return run_impl(g, rule, cfg, initial);
}

bool check_equilibrium(const Graph& g, const RuleSpec& rule,
                       std::span<const label_id> labels) {
    Scorer scorer(g, rule, densify(labels, g.node_count()));
    std::vector<LabelScore> buf;
    return at_equilibrium(scorer, buf);
}

label_id resolve_tie(std::span<const label_id> maximal, label_id current,
                     TiePolicy policy, Rng& rng) {
    if (maximal.empty()) throw UsageError("empty candidate set");
    if (maximal.size() == 1) return maximal.front();
    switch (policy) {
    case TiePolicy::smallest_label:
        return maximal.front();  // sorted
    case TiePolicy::retention:
        for (label_id l : maximal)
            if (l == current) return current;
        [[fallthrough]];
    case TiePolicy::random_choice:
    case TiePolicy::inclusion:
        return maximal[rng.next_below(static_cast<std::uint32_t>(maximal.size()))];
    }
    throw UsageError("unknown tie policy");
}

RunResult active_passive_run(const Graph& g, const RuleSpec& rule, const RunConfig& cfg) {
    if (cfg.schedule != Schedule::async)
        throw UsageError("active/passive propagation is asynchronous only");
    switch (rule.kind) {
    case RuleKind::cpm:
    case RuleKind::modularity:
    case RuleKind::offensive:
    case RuleKind::balanced:
        throw UsageError("active/passive propagation needs neighborhood-local scores");
    default:
        break;
    }
    validate_config(g, rule, cfg);

    const node_id n = g.node_count();
    std::vector<label_id> initial(n);
    for (node_id i = 0; i < n; ++i) initial[i] = i;
    Scorer scorer(g, rule, std::move(initial));
    Rng rng(cfg.seed);
    Stepper stepper{scorer, cfg, rng, {}, {}};
    const Transport transport = transport_of(rule);

    RunResult result;
    result.seed = cfg.seed;

    std::vector<node_id> active(n);
    for (node_id i = 0; i < n; ++i) active[i] = i;
    std::vector<char> queued(n, 1);

    for (std::uint32_t iter = 1; iter <= cfg.max_iters && !active.empty(); ++iter) {
        // Shuffle the active list in place for this round's visit order.
        for (std::size_t k = active.size(); k > 1; --k)
            std::swap(active[k - 1], active[rng.next_below(static_cast<std::uint32_t>(k))]);

        std::vector<node_id> next_round;
        std::uint32_t changes = 0;
        for (node_id i : active) queued[i] = 0;
        for (node_id i : active) {
            stepper.gather_maximal(i);
            const label_id cur = scorer.label(i);
            bool cur_maximal = false;
            for (label_id l : stepper.maximal)
                if (l == cur) cur_maximal = true;
            if (cur_maximal) continue;  // passive
            const label_id next = resolve_tie(stepper.maximal, cur, cfg.tie, rng);
            if (next == cur) continue;
            scorer.move(i, next);
            ++changes;
            for_each_transport_source(g, transport, i, [&](node_id j) {
                if (!queued[j]) {
                    queued[j] = 1;
                    next_round.push_back(j);
                }
            });
        }
        result.relabel_counts.push_back(changes);
        result.iterations = iter;
        if (cfg.observer) cfg.observer(iter, scorer.labels());
        active = std::move(next_round);
        if (active.empty()) result.converged = true;
    }

    result.partition = split_by_transport(g, rule, scorer.labels()).canonical();
    if (rule.kind == RuleKind::defensive)
        result.final_preferences.assign(scorer.preferences().begin(),
                                        scorer.preferences().end());
    return result;
}

} // namespace labelprop

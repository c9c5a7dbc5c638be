#include "labelprop/pipelines.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <set>
#include <thread>

#include "labelprop/objectives.hpp"

namespace labelprop {

namespace {

constexpr double kTieTolerance = 1e-12;

template <typename F>
void parallel_for_index(std::size_t count, F&& f) {
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t workers = std::min<std::size_t>({hw ? hw : 1, count, 8});
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

Partition majority_partition(const std::vector<Partition>& parts) {
    std::map<std::vector<label_id>, std::uint32_t> votes;
    for (const auto& p : parts) {
        const auto canon = p.canonical();
        ++votes[{canon.labels().begin(), canon.labels().end()}];
    }
    const auto best = std::max_element(votes.begin(), votes.end(),
                                       [](const auto& a, const auto& b) {
                                           return a.second < b.second;
                                       });
    return Partition(best->first);
}

} // namespace

ConsensusResult consensus(const Graph& g, const MethodSpec& base, std::uint32_t runs,
                          double threshold, std::uint32_t max_rounds) {
    if (runs < 2) throw UsageError("consensus needs at least two runs");
    if (threshold <= 0.0 || threshold > 1.0) throw UsageError("threshold must lie in (0,1]");
    if (max_rounds < 1) throw UsageError("max_rounds must be at least 1");

    Graph current = g;
    std::vector<Partition> parts(runs);
    ConsensusResult result;

    for (std::uint32_t round = 1; round <= max_rounds; ++round) {
        result.rounds = round;
        parallel_for_index(runs, [&](std::size_t r) {
            RunConfig cfg = base.cfg;
            cfg.observer = nullptr;
            cfg.seed = derive_seed(base.cfg.seed,
                                   static_cast<std::uint64_t>(round - 1) * runs + r);
            parts[r] = run(current, base.rule, cfg).partition;
        });

        bool agreed = true;
        for (std::uint32_t r = 1; r < runs && agreed; ++r)
            agreed = parts[0].same_grouping(parts[r]);
        if (agreed) {
            result.partition = parts[0].canonical();
            result.converged = true;
            return result;
        }

        // Vote on every pair adjacent in this round's input graph.
        std::vector<std::span<const label_id>> labels(runs);
        for (std::uint32_t r = 0; r < runs; ++r) labels[r] = parts[r].labels();
        std::vector<EdgeInput> kept;
        std::vector<EdgeInput> strongest(g.node_count(), EdgeInput{0, 0, 0.0});
        std::vector<char> attached(g.node_count(), 0);
        current.for_each_entry([&](node_id u, node_id v, double) {
            if (u == v) return;
            std::uint32_t together = 0;
            for (std::uint32_t r = 0; r < runs; ++r)
                if (labels[r][u] == labels[r][v]) ++together;
            const double weight = static_cast<double>(together) / runs;
            if (weight >= threshold - kTieTolerance) {
                kept.push_back({u, v, weight});
                attached[u] = attached[v] = 1;
            } else if (weight > 0.0) {
                for (node_id x : {u, v})
                    if (weight > strongest[x].w) strongest[x] = {u, v, weight};
            }
        });
        // A node whose every pair fell below the threshold keeps its single
        // strongest one, so thresholding never strands nodes.
        std::set<std::pair<node_id, node_id>> fallback;
        for (node_id x = 0; x < g.node_count(); ++x)
            if (!attached[x] && strongest[x].w > 0.0)
                fallback.insert({strongest[x].u, strongest[x].v});
        for (const auto& [u, v] : fallback) {
            std::uint32_t together = 0;
            for (std::uint32_t r = 0; r < runs; ++r)
                if (labels[r][u] == labels[r][v]) ++together;
            kept.push_back({u, v, static_cast<double>(together) / runs});
        }

        BuildOptions opt;
        opt.node_count = g.node_count();
        current = build_graph(kept, opt);
    }

    result.partition = majority_partition(parts).canonical();
    result.converged = false;
    return result;
}

Hierarchy hierarchy_agglomerate(const Graph& g, const MethodSpec& base) {
    Hierarchy h;
    Graph current = g;
    RuleSpec meta_rule = base.rule;
    meta_rule.loops_as_votes = false;  // loop mass is constant under relabeling
    for (std::uint32_t level = 0;; ++level) {
        RunConfig cfg = base.cfg;
        cfg.observer = nullptr;
        cfg.seed = derive_seed(base.cfg.seed, level);
        const RuleSpec& level_rule = level == 0 ? base.rule : meta_rule;
        const Partition part = run(current, level_rule, cfg).partition;
        if (part.group_count() == current.node_count()) break;  // nothing merged
        h.levels.push_back(part);
        current = quotient_graph(current, part);
        if (current.node_count() <= 1) break;
    }

    // Lift every level onto the original nodes.
    std::vector<std::uint32_t> meta_of(g.node_count());
    for (std::size_t t = 0; t < h.levels.size(); ++t) {
        const auto dense = dense_groups(h.levels[t]);
        if (t == 0) {
            meta_of = dense.index_of;
        } else {
            for (auto& m : meta_of) m = dense.index_of[m];
        }
        std::vector<label_id> lifted(meta_of.begin(), meta_of.end());
        h.lifted.push_back(Partition(std::move(lifted)).canonical());
    }
    return h;
}

Hierarchy hierarchy_refine(const Graph& g, const Hierarchy& h, const MethodSpec& base) {
    Hierarchy out;
    Graph current = g;
    RuleSpec meta_rule = base.rule;
    meta_rule.loops_as_votes = false;
    // old_of maps nodes of the refined chain onto nodes of the original one.
    std::vector<node_id> old_of(g.node_count());
    for (node_id i = 0; i < g.node_count(); ++i) old_of[i] = i;

    for (std::size_t t = 0; t < h.levels.size(); ++t) {
        const node_id n = current.node_count();
        std::vector<label_id> labels(n);
        for (node_id i = 0; i < n; ++i) labels[i] = h.levels[t].label(old_of[i]);

        // Rerun inside each group; adopt any strictly finer outcome.
        const Partition grouped(labels);
        const auto members_by_group = grouped.groups();
        std::vector<label_id> refined(n);
        label_id next_label = 0;
        std::uint64_t salt = 0;
        for (const auto& members : members_by_group) {
            if (members.size() <= 1) {
                for (node_id m : members) refined[m] = next_label;
                ++next_label;
                continue;
            }
            const auto sub = induced_subgraph(current, members);
            RunConfig cfg = base.cfg;
            cfg.observer = nullptr;
            cfg.seed = derive_seed(base.cfg.seed, (t + 1) * 1000003u + salt++);
            const Partition part =
                run(sub.graph, t == 0 ? base.rule : meta_rule, cfg).partition;
            const auto dense = dense_groups(part);
            for (node_id local = 0; local < members.size(); ++local)
                refined[members[local]] = next_label + dense.index_of[local];
            next_label += dense.count;
        }

        const Partition level = Partition(std::move(refined)).canonical();
        out.levels.push_back(level);
        const auto dense_old = dense_groups(grouped);
        const auto dense_new = dense_groups(level);
        // Each refined group inherits the coarse assignment of its parent.
        std::vector<node_id> next_old(dense_new.count);
        for (node_id i = 0; i < n; ++i) next_old[dense_new.index_of[i]] = dense_old.index_of[i];
        current = quotient_graph(current, level);
        old_of = std::move(next_old);
    }

    std::vector<std::uint32_t> meta_of(g.node_count());
    for (std::size_t t = 0; t < out.levels.size(); ++t) {
        const auto dense = dense_groups(out.levels[t]);
        if (t == 0) {
            meta_of = dense.index_of;
        } else {
            for (auto& m : meta_of) m = dense.index_of[m];
        }
        std::vector<label_id> lifted(meta_of.begin(), meta_of.end());
        out.lifted.push_back(Partition(std::move(lifted)).canonical());
    }
    return out;
}

namespace {

using Affiliations = std::vector<std::vector<Cover::Entry>>;

double max_affiliation_change(const Affiliations& a, const Affiliations& b) {
    double change = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        // Entries are sorted by label; walk both sides of the union.
        std::size_t x = 0, y = 0;
        while (x < a[i].size() || y < b[i].size()) {
            if (y >= b[i].size() || (x < a[i].size() && a[i][x].first < b[i][y].first)) {
                change = std::max(change, std::abs(a[i][x].second));
                ++x;
            } else if (x >= a[i].size() || b[i][y].first < a[i][x].first) {
                change = std::max(change, std::abs(b[i][y].second));
                ++y;
            } else {
                change = std::max(change, std::abs(a[i][x].second - b[i][y].second));
                ++x;
                ++y;
            }
        }
    }
    return change;
}

} // namespace

Cover copra(const Graph& g, const CopraConfig& cfg) {
    const bool nu_mode = cfg.nu >= 1;
    const bool rho_mode = cfg.rho > 0.0;
    if (nu_mode == rho_mode)
        throw UsageError("exactly one of nu / rho must be active");
    if (rho_mode && cfg.rho > 1.0) throw UsageError("rho must lie in (0,1]");
    if (g.signed_values() || g.directed())
        throw UsageError("affiliation propagation needs undirected non-negative weights");

    const node_id n = g.node_count();
    Rng rng(cfg.seed);
    Affiliations aff(n);
    for (node_id i = 0; i < n; ++i) aff[i] = {{i, 1.0}};

    std::vector<double> acc(n, 0.0);
    std::vector<label_id> touched;

    Affiliations next(n);
    for (std::uint32_t iter = 1; iter <= cfg.max_iters; ++iter) {
        for (node_id i = 0; i < n; ++i) {
            touched.clear();
            auto add = [&](label_id l, double w) {
                if (acc[l] == 0.0) touched.push_back(l);
                acc[l] += w;
            };
            const auto nb = g.neighbors(i);
            const auto ws = g.weights(i);
            for (std::size_t e = 0; e < nb.size(); ++e)
                for (const auto& [l, v] : aff[nb[e]]) add(l, ws[e] * v);
            if (g.loop(i) != 0.0)
                for (const auto& [l, v] : aff[i]) add(l, g.loop(i) * v);

            auto& out = next[i];
            out.clear();
            if (touched.empty()) {  // isolated node keeps its affiliation
                out = aff[i];
                continue;
            }
            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
            double total = 0.0;
            for (label_id l : touched) total += acc[l];
            double top = 0.0;
            for (label_id l : touched) top = std::max(top, acc[l] / total);

            const double min_keep =
                nu_mode ? 1.0 / cfg.nu : cfg.rho * top;
            for (label_id l : touched) {
                const double v = acc[l] / total;
                if (v >= min_keep - kTieTolerance) out.push_back({l, v});
            }
            if (out.empty()) {
                // Everything fell below the threshold: keep one of the
                // strongest labels, chosen uniformly.
                std::vector<label_id> best;
                for (label_id l : touched)
                    if (acc[l] / total >= top * (1.0 - kTieTolerance)) best.push_back(l);
                out.push_back({best[rng.next_below(static_cast<std::uint32_t>(best.size()))], 1.0});
            }
            if (nu_mode && out.size() > cfg.nu) {
                std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
                    return a.second != b.second ? a.second > b.second : a.first < b.first;
                });
                out.resize(cfg.nu);
                std::sort(out.begin(), out.end());
            }
            double kept = 0.0;
            for (const auto& [l, v] : out) kept += v;
            for (auto& [l, v] : out) v /= kept;
            for (label_id l : touched) acc[l] = 0.0;
        }

        const double change = max_affiliation_change(aff, next);
        aff.swap(next);
        if (cfg.observer) cfg.observer(iter, Cover(aff));
        if (change < 1e-6) break;
    }
    return Cover(std::move(aff));
}

Cover memory_lpa(const Graph& g, std::uint32_t iterations, double min_frequency,
                 std::uint64_t seed) {
    if (iterations < 1) throw UsageError("memory propagation needs at least one iteration");
    if (min_frequency <= 0.0 || min_frequency > 1.0)
        throw UsageError("frequency threshold must lie in (0,1]");
    if (g.signed_values() || g.directed())
        throw UsageError("memory propagation needs undirected non-negative weights");

    const node_id n = g.node_count();
    Rng rng(seed);
    // Per-node memory: sorted (label, count) plus the entry total; speakers
    // sampled at visit time, so earlier listeners already speak differently.
    std::vector<std::vector<std::pair<label_id, std::uint32_t>>> memory(n);
    std::vector<std::uint32_t> memory_total(n, 1);
    for (node_id i = 0; i < n; ++i) memory[i] = {{i, 1}};

    auto sample = [&](node_id j) {
        std::uint32_t r = rng.next_below(memory_total[j]);
        for (const auto& [l, c] : memory[j]) {
            if (r < c) return l;
            r -= c;
        }
        return memory[j].back().first;
    };
    auto remember = [&](node_id i, label_id l) {
        auto& mem = memory[i];
        const auto it = std::lower_bound(mem.begin(), mem.end(), l,
                                         [](const auto& e, label_id x) { return e.first < x; });
        if (it != mem.end() && it->first == l)
            ++it->second;
        else
            mem.insert(it, {l, 1});
        ++memory_total[i];
    };

    std::vector<double> votes(n, 0.0);
    std::vector<label_id> touched;
    for (std::uint32_t iter = 1; iter <= iterations; ++iter) {
        const auto perm = rng.permutation(n);
        for (node_id i : perm) {
            touched.clear();
            const auto nb = g.neighbors(i);
            const auto ws = g.weights(i);
            for (std::size_t e = 0; e < nb.size(); ++e) {
                const label_id heard = sample(nb[e]);
                if (votes[heard] == 0.0) touched.push_back(heard);
                votes[heard] += ws[e];
            }
            if (touched.empty()) {  // isolated node repeats its own top label
                remember(i, memory[i].front().first);
                continue;
            }
            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
            double top = 0.0;
            for (label_id l : touched) top = std::max(top, votes[l]);
            std::vector<label_id> best;
            for (label_id l : touched)
                if (votes[l] >= top * (1.0 - kTieTolerance)) best.push_back(l);
            remember(i, best.size() == 1
                            ? best.front()
                            : best[rng.next_below(static_cast<std::uint32_t>(best.size()))]);
            for (label_id l : touched) votes[l] = 0.0;
        }
    }

    const double total_entries = iterations + 1.0;
    Affiliations aff(n);
    for (node_id i = 0; i < n; ++i) {
        double kept = 0.0;
        for (const auto& [l, c] : memory[i]) {
            if (c / total_entries >= min_frequency - 1e-9) {
                aff[i].push_back({l, static_cast<double>(c)});
                kept += c;
            }
        }
        if (aff[i].empty()) {  // keep the most frequent label
            std::uint32_t top = 0;
            for (const auto& [l, c] : memory[i]) top = std::max(top, c);
            for (const auto& [l, c] : memory[i])
                if (c == top) {
                    aff[i].push_back({l, static_cast<double>(c)});
                    kept += c;
                    break;
                }
        }
        for (auto& [l, v] : aff[i]) v /= kept;
    }
    return Cover(std::move(aff));
}

Partition two_step_equivalence(const Graph& g, const RunConfig& cfg) {
    const RunResult first = run(g, RuleSpec::with_tau(1.0), cfg);
    const auto groups = first.partition.groups();

    std::vector<label_id> labels(g.node_count(), 0);
    label_id next_label = 0;
    std::uint64_t salt = 0;
    for (const auto& members : groups) {
        if (members.size() <= 1) {
            for (node_id m : members) labels[m] = next_label;
            ++next_label;
            continue;
        }
        const auto sub = induced_subgraph(g, members);
        RunConfig sub_cfg = cfg;
        sub_cfg.observer = nullptr;
        sub_cfg.seed = derive_seed(cfg.seed, 1000003u + salt++);
        const Partition refined = run(sub.graph, RuleSpec::with_tau(0.0), sub_cfg).partition;
        const auto dense = dense_groups(refined);
        for (node_id local = 0; local < members.size(); ++local)
            labels[members[local]] = next_label + dense.index_of[local];
        next_label += dense.count;
    }
    return Partition(std::move(labels)).canonical();
}

Partition defensive_then_offensive(const Graph& g, const RunConfig& cfg) {
    RunResult current = run(g, RuleSpec::defensive_rule(), cfg);
    DegeneracyStats stats = degeneracy_stats(current.partition);

    for (std::uint32_t round = 1; round <= 10; ++round) {
        RuleSpec offensive = RuleSpec::offensive_rule();
        offensive.initial_preferences = current.final_preferences;
        RunConfig round_cfg = cfg;
        round_cfg.seed = derive_seed(cfg.seed, round);
        RunResult next =
            run_from(g, offensive, round_cfg, current.partition.labels());
        const DegeneracyStats next_stats = degeneracy_stats(next.partition);
        const bool stable =
            std::abs(next_stats.tiny_fraction - stats.tiny_fraction) < 0.01 &&
            std::abs(next_stats.largest_fraction - stats.largest_fraction) < 0.01;
        current = std::move(next);
        stats = next_stats;
        if (stable) break;
    }
    return current.partition;
}

} // namespace labelprop

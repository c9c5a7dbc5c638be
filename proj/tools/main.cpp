// Command-line front end for the label propagation clustering library.
// Talks to the shared library exclusively through the C interface.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "labelprop.h"

namespace {

int status_to_exit(labelprop_status_t status) {
    switch (status) {
    case LABELPROP_OK:
        return 0;
    case LABELPROP_ERROR_USAGE:
        return 1;
    case LABELPROP_ERROR_DATA:
        return 2;
    }
    return 2;
}

// Exits the process on failure; library messages go to stderr.
void require_ok(labelprop_status_t status, const labelprop_error_t& error) {
    if (status == LABELPROP_OK) return;
    std::fprintf(stderr, "error: %s\n", error.message);
    std::exit(status_to_exit(status));
}

[[noreturn]] void usage_fail(const std::string& message) {
    std::fprintf(stderr, "error: %s\n", message.c_str());
    std::exit(1);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

using GraphPtr = std::unique_ptr<labelprop_graph_t, decltype(&labelprop_graph_free)>;
using PartitionPtr =
    std::unique_ptr<labelprop_partition_t, decltype(&labelprop_partition_free)>;
using CoverPtr = std::unique_ptr<labelprop_cover_t, decltype(&labelprop_cover_free)>;
using ResultPtr = std::unique_ptr<labelprop_result_t, decltype(&labelprop_result_free)>;
using HierarchyPtr =
    std::unique_ptr<labelprop_hierarchy_t, decltype(&labelprop_hierarchy_free)>;

GraphPtr load_graph(const std::string& path) {
    labelprop_graph_t* g = nullptr;
    labelprop_error_t error;
    require_ok(labelprop_graph_read(path.c_str(), &g, &error), error);
    return {g, labelprop_graph_free};
}

// Method selection shared by the propagation-style subcommands.
struct MethodOptions {
    std::string rule = "standard";
    std::string schedule = "async";
    std::string tie = "retention";
    std::string convergence = "no-change";
    std::uint32_t max_iters = 100;
    double lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0, gamma = 0.0, tau = 1.0;
    bool probabilistic = false;
    bool active_passive = false;
    std::uint64_t seed = 0;

    void attach(CLI::App* cmd, bool with_rule = true) {
        if (with_rule)
            cmd->add_option("--rule", rule,
                            "standard|cpm|modularity|apm|defensive|offensive|"
                            "balanced|neighborhood|tau|cocitation|bibcoupling")
                ->capture_default_str();
        cmd->add_option("--schedule", schedule, "async|sync|semisync|bipartite")
            ->capture_default_str();
        cmd->add_option("--tie", tie, "random|retention|inclusion|smallest")
            ->capture_default_str();
        cmd->add_option("--convergence", convergence, "no-change|equilibrium|max-iters")
            ->capture_default_str();
        cmd->add_option("--max-iters", max_iters)->capture_default_str();
        cmd->add_option("--lambda1", lambda1, "constant-penalty weight");
        cmd->add_option("--lambda2", lambda2, "degree-penalty weight");
        cmd->add_option("--lambda3", lambda3, "absolute-model weight (maps onto cpm)");
        cmd->add_option("--gamma", gamma, "balanced-rule steepness");
        cmd->add_option("--tau", tau, "direct/two-hop mixture");
        cmd->add_flag("--probabilistic-sync", probabilistic,
                      "sampled updates (sync schedule)");
        cmd->add_flag("--active-passive", active_passive, "skip settled nodes");
        cmd->add_option("--seed", seed, "rng seed")->required();
    }

    labelprop_rule_t to_rule() const {
        labelprop_rule_t r;
        labelprop_rule_init(&r);
        if (rule == "standard") {
            r.kind = LABELPROP_RULE_STANDARD;
        } else if (rule == "cpm") {
            r.kind = LABELPROP_RULE_CPM;
            r.lambda = lambda1;
        } else if (rule == "modularity") {
            r.kind = LABELPROP_RULE_MODULARITY;
            r.lambda = lambda2;
        } else if (rule == "apm") {
            if (lambda3 == -1.0) usage_fail("--lambda3 must differ from -1");
            r.kind = LABELPROP_RULE_CPM;
            r.lambda = lambda3 / (lambda3 + 1.0);
        } else if (rule == "defensive") {
            r.kind = LABELPROP_RULE_DEFENSIVE;
        } else if (rule == "offensive") {
            r.kind = LABELPROP_RULE_OFFENSIVE;
        } else if (rule == "balanced") {
            r.kind = LABELPROP_RULE_BALANCED;
            r.gamma = gamma;
        } else if (rule == "neighborhood") {
            r.kind = LABELPROP_RULE_NEIGHBORHOOD;
        } else if (rule == "tau") {
            r.kind = LABELPROP_RULE_TAU;
            r.tau = tau;
        } else if (rule == "cocitation") {
            r.kind = LABELPROP_RULE_COCITATION;
        } else if (rule == "bibcoupling") {
            r.kind = LABELPROP_RULE_BIBCOUPLING;
        } else {
            usage_fail("unknown rule '" + rule + "'");
        }
        return r;
    }

    labelprop_config_t to_config() const {
        labelprop_config_t c;
        labelprop_config_init(&c);
        if (schedule == "async")
            c.schedule = LABELPROP_SCHEDULE_ASYNC;
        else if (schedule == "sync")
            c.schedule = LABELPROP_SCHEDULE_SYNC;
        else if (schedule == "semisync")
            c.schedule = LABELPROP_SCHEDULE_SEMISYNC;
        else if (schedule == "bipartite")
            c.schedule = LABELPROP_SCHEDULE_BIPARTITE;
        else
            usage_fail("unknown schedule '" + schedule + "'");
        if (tie == "random")
            c.tie_policy = LABELPROP_TIE_RANDOM;
        else if (tie == "retention")
            c.tie_policy = LABELPROP_TIE_RETENTION;
        else if (tie == "inclusion")
            c.tie_policy = LABELPROP_TIE_INCLUSION;
        else if (tie == "smallest")
            c.tie_policy = LABELPROP_TIE_SMALLEST;
        else
            usage_fail("unknown tie policy '" + tie + "'");
        if (convergence == "no-change")
            c.convergence = LABELPROP_CONVERGE_NO_CHANGE;
        else if (convergence == "equilibrium")
            c.convergence = LABELPROP_CONVERGE_EQUILIBRIUM;
        else if (convergence == "max-iters")
            c.convergence = LABELPROP_CONVERGE_MAX_ITERS;
        else
            usage_fail("unknown convergence '" + convergence + "'");
        c.max_iters = max_iters;
        c.seed = seed;
        c.probabilistic_sync = probabilistic ? 1 : 0;
        c.active_passive = active_passive ? 1 : 0;
        return c;
    }
};

void write_partition_outputs(const labelprop_graph_t* g, const labelprop_partition_t* p,
                             const std::string& prefix) {
    labelprop_error_t error;
    require_ok(labelprop_partition_write(p, g, (prefix + ".partition.tsv").c_str(),
                                         &error),
               error);
}

int run_detect(const std::string& input, const MethodOptions& opt,
               const std::string& prefix, bool signed_equal_total = false) {
    GraphPtr g = load_graph(input);
    if (signed_equal_total) {
        labelprop_graph_t* balanced = nullptr;
        labelprop_error_t error;
        require_ok(labelprop_graph_signed_reweight(g.get(), 1, 0, 0, &balanced, &error),
                   error);
        g.reset(balanced);
    }
    const labelprop_rule_t rule = opt.to_rule();
    const labelprop_config_t cfg = opt.to_config();
    labelprop_result_t* raw = nullptr;
    labelprop_error_t error;
    require_ok(labelprop_run(g.get(), &rule, &cfg, &raw, &error), error);
    const ResultPtr result(raw, labelprop_result_free);
    write_partition_outputs(g.get(), labelprop_result_partition(result.get()), prefix);
    require_ok(labelprop_result_write_report(result.get(), g.get(),
                                             (prefix + ".report.txt").c_str(), &error),
               error);
    return 0;
}

int run_consensus(const std::string& input, const MethodOptions& opt,
                  std::uint32_t runs, double threshold, std::uint32_t max_rounds,
                  const std::string& prefix) {
    const GraphPtr g = load_graph(input);
    const labelprop_rule_t rule = opt.to_rule();
    const labelprop_config_t cfg = opt.to_config();
    labelprop_partition_t* raw = nullptr;
    int converged = 0;
    labelprop_error_t error;
    require_ok(labelprop_consensus(g.get(), &rule, &cfg, runs, threshold, max_rounds,
                                   &raw, &converged, &error),
               error);
    const PartitionPtr part(raw, labelprop_partition_free);
    write_partition_outputs(g.get(), part.get(), prefix);
    std::FILE* report = std::fopen((prefix + ".report.txt").c_str(), "w");
    if (!report) usage_fail("cannot write " + prefix + ".report.txt");
    std::fprintf(report, "seed\t%llu\nconverged\t%s\ngroups\t%u\nruns\t%u\nthreshold\t%g\n",
                 static_cast<unsigned long long>(opt.seed),
                 converged ? "true" : "false",
                 labelprop_partition_group_count(part.get()), runs, threshold);
    std::fclose(report);
    return 0;
}

int run_hierarchy(const std::string& input, const MethodOptions& opt, bool refine,
                  const std::string& prefix) {
    const GraphPtr g = load_graph(input);
    const labelprop_rule_t rule = opt.to_rule();
    const labelprop_config_t cfg = opt.to_config();
    labelprop_hierarchy_t* raw = nullptr;
    labelprop_error_t error;
    require_ok(labelprop_hierarchy_detect(g.get(), &rule, &cfg, refine ? 1 : 0, &raw, &error),
               error);
    const HierarchyPtr h(raw, labelprop_hierarchy_free);
    require_ok(labelprop_hierarchy_write(h.get(), g.get(), prefix.c_str(), &error),
               error);
    return 0;
}

int run_overlap(const std::string& input, std::uint32_t nu, double rho,
                const std::vector<double>& memory, std::uint32_t max_iters,
                std::uint64_t seed, const std::string& prefix) {
    const GraphPtr g = load_graph(input);
    labelprop_cover_t* raw = nullptr;
    labelprop_error_t error;
    if (!memory.empty()) {
        if (nu != 0 || rho != 0.0) usage_fail("--memory excludes the copra modes");
        require_ok(labelprop_memory_lpa(g.get(),
                                        static_cast<std::uint32_t>(memory[0]),
                                        memory[1], seed, &raw, &error),
                   error);
    } else {
        require_ok(labelprop_copra(g.get(), nu, rho, max_iters, seed, &raw, &error),
                   error);
    }
    const CoverPtr cover(raw, labelprop_cover_free);
    require_ok(labelprop_cover_write(cover.get(), g.get(),
                                     (prefix + ".cover.tsv").c_str(), &error),
               error);
    return 0;
}

int run_equivalence(const std::string& input, const MethodOptions& opt, bool two_step,
                    bool cocitation, const std::string& prefix) {
    if (two_step) {
        const GraphPtr g = load_graph(input);
        labelprop_error_t error;
        const labelprop_config_t cfg = opt.to_config();
        labelprop_partition_t* raw = nullptr;
        require_ok(labelprop_two_step(g.get(), &cfg, &raw, &error), error);
        const PartitionPtr part(raw, labelprop_partition_free);
        write_partition_outputs(g.get(), part.get(), prefix);
        return 0;
    }
    MethodOptions citation = opt;
    citation.rule = cocitation ? "cocitation" : "bibcoupling";
    return run_detect(input, citation, prefix);
}

int run_generate(const std::string& kind, std::uint32_t n, std::uint32_t groups,
                 double degree, double mu, std::uint32_t rows, std::uint32_t cols,
                 const std::vector<std::string>& removals, std::uint32_t clique_size,
                 std::uint32_t shared, std::uint64_t seed, const std::string& out) {
    labelprop_error_t error;
    if (kind == "er") {
        labelprop_graph_t* g = nullptr;
        require_ok(labelprop_generate_erdos_renyi(n, degree, seed, &g, &error), error);
        const GraphPtr graph(g, labelprop_graph_free);
        require_ok(labelprop_graph_write(graph.get(), out.c_str(), &error), error);
        return 0;
    }
    if (kind == "planted") {
        labelprop_graph_t* g = nullptr;
        labelprop_partition_t* truth = nullptr;
        require_ok(labelprop_generate_planted(n, groups, degree, mu, seed, &g, &truth,
                                              &error),
                   error);
        const GraphPtr graph(g, labelprop_graph_free);
        const PartitionPtr truth_ptr(truth, labelprop_partition_free);
        require_ok(labelprop_graph_write(graph.get(), out.c_str(), &error), error);
        require_ok(labelprop_partition_write(truth_ptr.get(), graph.get(),
                                             (out + ".truth.tsv").c_str(), &error),
                   error);
        return 0;
    }
    if (kind == "grid") {
        std::vector<std::uint32_t> ru, rv;
        for (const auto& spec : removals) {
            const auto comma = spec.find(',');
            if (comma == std::string::npos) usage_fail("--remove expects 'u,v'");
            try {
                ru.push_back(static_cast<std::uint32_t>(std::stoul(spec.substr(0, comma))));
                rv.push_back(static_cast<std::uint32_t>(std::stoul(spec.substr(comma + 1))));
            } catch (const std::exception&) {
                usage_fail("--remove expects 'u,v'");
            }
        }
        labelprop_graph_t* g = nullptr;
        require_ok(labelprop_generate_grid(rows, cols, ru.size(), ru.data(), rv.data(),
                                           &g, &error),
                   error);
        const GraphPtr graph(g, labelprop_graph_free);
        require_ok(labelprop_graph_write(graph.get(), out.c_str(), &error), error);
        return 0;
    }
    if (kind == "cliques") {
        labelprop_graph_t* g = nullptr;
        labelprop_cover_t* truth = nullptr;
        require_ok(labelprop_generate_cliques(clique_size, shared, &g, &truth, &error),
                   error);
        const GraphPtr graph(g, labelprop_graph_free);
        const CoverPtr truth_ptr(truth, labelprop_cover_free);
        require_ok(labelprop_graph_write(graph.get(), out.c_str(), &error), error);
        require_ok(labelprop_cover_write(truth_ptr.get(), graph.get(),
                                         (out + ".truth.tsv").c_str(), &error),
                   error);
        return 0;
    }
    usage_fail("unknown generator '" + kind + "'");
}

labelprop_rule_t parse_method(const std::string& spec) {
    labelprop_rule_t r;
    labelprop_rule_init(&r);
    std::string name = spec;
    double param = 0.0;
    bool has_param = false;
    if (const auto colon = spec.find(':'); colon != std::string::npos) {
        name = spec.substr(0, colon);
        try {
            param = std::stod(spec.substr(colon + 1));
        } catch (const std::exception&) {
            usage_fail("bad method parameter in '" + spec + "'");
        }
        has_param = true;
    }
    if (name == "standard") {
        r.kind = LABELPROP_RULE_STANDARD;
    } else if (name == "cpm") {
        r.kind = LABELPROP_RULE_CPM;
        r.lambda = param;
    } else if (name == "modularity") {
        r.kind = LABELPROP_RULE_MODULARITY;
        r.lambda = param;
    } else if (name == "defensive") {
        r.kind = LABELPROP_RULE_DEFENSIVE;
    } else if (name == "offensive") {
        r.kind = LABELPROP_RULE_OFFENSIVE;
    } else if (name == "balanced") {
        r.kind = LABELPROP_RULE_BALANCED;
        r.gamma = has_param ? param : 1.0;
    } else if (name == "neighborhood") {
        r.kind = LABELPROP_RULE_NEIGHBORHOOD;
    } else if (name == "tau") {
        r.kind = LABELPROP_RULE_TAU;
        r.tau = has_param ? param : 0.5;
    } else {
        usage_fail("unknown method '" + spec + "'");
    }
    return r;
}

int run_benchmark(const std::string& sweep, std::uint32_t n, std::uint32_t groups,
                  double degree, std::uint32_t runs, std::uint64_t seed,
                  const std::vector<std::string>& methods, double mu_min,
                  double mu_max, double mu_step,
                  const std::vector<std::uint64_t>& edge_targets,
                  const std::string& tie, const std::string& out) {
    labelprop_error_t error;
    std::FILE* csv = out.empty() ? stdout : std::fopen(out.c_str(), "w");
    if (!csv) usage_fail("cannot write " + out);

    labelprop_config_t cfg;
    labelprop_config_init(&cfg);
    if (tie == "random")
        cfg.tie_policy = LABELPROP_TIE_RANDOM;
    else if (tie != "retention")
        usage_fail("benchmark tie must be retention or random");

    const auto method_specs = methods.empty() ? std::vector<std::string>{"standard"}
                                              : methods;

    if (sweep == "mu") {
        std::fprintf(csv, "mu,method,mean_nmi,stderr\n");
        std::uint64_t point = 0;
        for (double mu = mu_min; mu <= mu_max + 1e-9; mu += mu_step, ++point) {
            for (const auto& spec : method_specs) {
                const labelprop_rule_t rule = parse_method(spec);
                double sum = 0.0, sum_sq = 0.0;
                for (std::uint32_t r = 0; r < runs; ++r) {
                    labelprop_graph_t* g = nullptr;
                    labelprop_partition_t* truth = nullptr;
                    require_ok(labelprop_generate_planted(
                                   n, groups, degree, mu,
                                   mix_seed(seed, point * 1000 + r), &g, &truth,
                                   &error),
                               error);
                    const GraphPtr graph(g, labelprop_graph_free);
                    const PartitionPtr truth_ptr(truth, labelprop_partition_free);
                    cfg.seed = mix_seed(seed ^ 0x5bd1e995, point * 1000 + r);
                    labelprop_result_t* raw = nullptr;
                    require_ok(labelprop_run(graph.get(), &rule, &cfg, &raw, &error),
                               error);
                    const ResultPtr result(raw, labelprop_result_free);
                    double value = 0.0;
                    require_ok(labelprop_nmi(labelprop_result_partition(result.get()),
                                             truth_ptr.get(), &value, &error),
                               error);
                    sum += value;
                    sum_sq += value * value;
                }
                const double mean = sum / runs;
                const double variance =
                    runs > 1 ? std::max(0.0, (sum_sq - runs * mean * mean) / (runs - 1))
                             : 0.0;
                std::fprintf(csv, "%.4f,%s,%.6f,%.6f\n", mu, spec.c_str(), mean,
                             std::sqrt(variance / runs));
            }
        }
    } else if (sweep == "size") {
        std::fprintf(csv, "m,method,mean_iterations,stderr\n");
        std::uint64_t point = 0;
        for (const std::uint64_t m : edge_targets) {
            ++point;
            // Node count hitting the edge target at the requested degree.
            std::uint64_t nodes = static_cast<std::uint64_t>(2.0 * m / degree);
            nodes = (nodes + groups - 1) / groups * groups;
            for (const auto& spec : method_specs) {
                const labelprop_rule_t rule = parse_method(spec);
                double sum = 0.0, sum_sq = 0.0;
                for (std::uint32_t r = 0; r < runs; ++r) {
                    labelprop_graph_t* g = nullptr;
                    require_ok(labelprop_generate_planted(
                                   static_cast<std::uint32_t>(nodes), groups, degree,
                                   0.1, mix_seed(seed, point * 1000 + r), &g, nullptr,
                                   &error),
                               error);
                    const GraphPtr graph(g, labelprop_graph_free);
                    cfg.seed = mix_seed(seed ^ 0x5bd1e995, point * 1000 + r);
                    labelprop_result_t* raw = nullptr;
                    require_ok(labelprop_run(graph.get(), &rule, &cfg, &raw, &error),
                               error);
                    const ResultPtr result(raw, labelprop_result_free);
                    const double iters = labelprop_result_iterations(result.get());
                    sum += iters;
                    sum_sq += iters * iters;
                }
                const double mean = sum / runs;
                const double variance =
                    runs > 1 ? std::max(0.0, (sum_sq - runs * mean * mean) / (runs - 1))
                             : 0.0;
                std::fprintf(csv, "%llu,%s,%.4f,%.4f\n",
                             static_cast<unsigned long long>(m), spec.c_str(), mean,
                             std::sqrt(variance / runs));
            }
        }
    } else {
        usage_fail("unknown sweep '" + sweep + "'");
    }
    if (csv != stdout) std::fclose(csv);
    return 0;
}

int run_eval(const std::string& graph_path, const std::string& partition_path,
             bool show_f, bool show_q, bool show_hplain, bool has_h1, double l1,
             bool has_h2, double l2, bool has_h3, double l3, bool show_g1,
             bool show_g2, bool show_degeneracy, const std::vector<std::string>& nmi_files) {
    labelprop_error_t error;
    if (!nmi_files.empty()) {
        double value = 0.0;
        require_ok(labelprop_nmi_files(nmi_files[0].c_str(), nmi_files[1].c_str(),
                                       &value, &error),
                   error);
        std::printf("nmi\t%.12g\n", value);
    }
    const bool needs_graph = show_f || show_q || show_hplain || has_h1 || has_h2 ||
                             has_h3 || show_g1 || show_g2 || show_degeneracy;
    if (!needs_graph) return 0;
    if (graph_path.empty() || partition_path.empty())
        usage_fail("these measures need --graph and --partition");

    const GraphPtr g = load_graph(graph_path);
    labelprop_partition_t* raw = nullptr;
    require_ok(labelprop_partition_read(partition_path.c_str(), g.get(), &raw, &error),
               error);
    const PartitionPtr p(raw, labelprop_partition_free);

    double value = 0.0;
    if (show_f) {
        require_ok(labelprop_objective_f(g.get(), p.get(), &value, &error), error);
        std::printf("f\t%.12g\n", value);
    }
    if (show_q) {
        require_ok(labelprop_modularity(g.get(), p.get(), &value, &error), error);
        std::printf("q\t%.12g\n", value);
    }
    if (show_hplain) {
        require_ok(labelprop_hamiltonian(g.get(), p.get(), 0, 0.0, &value, &error),
                   error);
        std::printf("h\t%.12g\n", value);
    }
    if (has_h1) {
        require_ok(labelprop_hamiltonian(g.get(), p.get(), 1, l1, &value, &error),
                   error);
        std::printf("h1\t%.12g\n", value);
    }
    if (has_h2) {
        require_ok(labelprop_hamiltonian(g.get(), p.get(), 2, l2, &value, &error),
                   error);
        std::printf("h2\t%.12g\n", value);
    }
    if (has_h3) {
        require_ok(labelprop_hamiltonian(g.get(), p.get(), 3, l3, &value, &error),
                   error);
        std::printf("h3\t%.12g\n", value);
    }
    if (show_g1) {
        require_ok(labelprop_penalty(g.get(), p.get(), 0, &value, &error), error);
        std::printf("g1\t%.12g\n", value);
    }
    if (show_g2) {
        require_ok(labelprop_penalty(g.get(), p.get(), 1, &value, &error), error);
        std::printf("g2\t%.12g\n", value);
    }
    if (show_degeneracy) {
        double tiny = 0.0, largest = 0.0;
        require_ok(labelprop_degeneracy(p.get(), &tiny, &largest, &error), error);
        std::printf("tiny_fraction\t%.12g\nlargest_fraction\t%.12g\n", tiny, largest);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"label propagation graph clustering"};
    app.require_subcommand(1);

    // detect
    auto* detect = app.add_subcommand("detect", "single propagation run");
    MethodOptions detect_opt;
    std::string detect_input, detect_prefix = "out";
    bool detect_equal_total = false;
    detect_opt.attach(detect);
    detect->add_flag("--signed-equal-total", detect_equal_total,
                     "rebalance signed weights to total +1 / -1 before running");
    detect->add_option("--out", detect_prefix, "output prefix")->capture_default_str();
    detect->add_option("input", detect_input, "edge list file")->required();

    // consensus
    auto* cons = app.add_subcommand("consensus", "repeated runs vote on pairs");
    MethodOptions cons_opt;
    std::string cons_input, cons_prefix = "out";
    std::uint32_t cons_runs = 25, cons_rounds = 10;
    double cons_threshold = 0.5;
    cons_opt.attach(cons);
    cons->add_option("--runs", cons_runs)->capture_default_str();
    cons->add_option("--threshold", cons_threshold)->capture_default_str();
    cons->add_option("--max-rounds", cons_rounds)->capture_default_str();
    cons->add_option("--out", cons_prefix)->capture_default_str();
    cons->add_option("input", cons_input)->required();

    // hierarchy
    auto* hier = app.add_subcommand("hierarchy", "bottom-up agglomeration");
    MethodOptions hier_opt;
    std::string hier_input, hier_prefix = "out";
    bool hier_refine = false;
    hier_opt.attach(hier);
    hier->add_flag("--refine", hier_refine, "re-run inside every group");
    hier->add_option("--out", hier_prefix)->capture_default_str();
    hier->add_option("input", hier_input)->required();

    // overlap
    auto* overlap = app.add_subcommand("overlap", "overlapping group detection");
    std::string overlap_input, overlap_prefix = "out";
    std::uint32_t overlap_nu = 0, overlap_iters = 100;
    double overlap_rho = 0.0;
    std::vector<double> overlap_memory;
    std::uint64_t overlap_seed = 0;
    overlap->add_option("--copra-nu", overlap_nu, "max groups per node");
    overlap->add_option("--copra-rho", overlap_rho, "relative affiliation threshold");
    overlap->add_option("--memory", overlap_memory,
                        "speaker/listener: iterations and frequency threshold")
        ->expected(2);
    overlap->add_option("--max-iters", overlap_iters)->capture_default_str();
    overlap->add_option("--seed", overlap_seed)->required();
    overlap->add_option("--out", overlap_prefix)->capture_default_str();
    overlap->add_option("input", overlap_input)->required();

    // equivalence
    auto* equiv = app.add_subcommand("equivalence", "structural-equivalence detection");
    MethodOptions equiv_opt;
    std::string equiv_input, equiv_prefix = "out";
    bool equiv_two = false, equiv_cocit = false, equiv_bib = false;
    equiv_opt.attach(equiv, /*with_rule=*/false);
    equiv->add_flag("--two-step", equiv_two, "direct run then two-hop refinement");
    equiv->add_flag("--cocitation", equiv_cocit, "shared out-neighbors (directed)");
    equiv->add_flag("--bibcoupling", equiv_bib, "shared in-neighbors (directed)");
    equiv->add_option("--out", equiv_prefix)->capture_default_str();
    equiv->add_option("input", equiv_input)->required();

    // generate
    auto* gen = app.add_subcommand("generate", "benchmark graph generators");
    std::string gen_kind, gen_out;
    std::uint32_t gen_n = 128, gen_groups = 4, gen_rows = 6, gen_cols = 12,
                  gen_k = 5, gen_shared = 1;
    double gen_degree = 16.0, gen_mu = 0.1;
    std::vector<std::string> gen_remove;
    std::uint64_t gen_seed = 0;
    gen->add_option("kind", gen_kind, "er|planted|grid|cliques")->required();
    gen->add_option("--n", gen_n)->capture_default_str();
    gen->add_option("--groups", gen_groups)->capture_default_str();
    gen->add_option("--degree", gen_degree)->capture_default_str();
    gen->add_option("--mu", gen_mu)->capture_default_str();
    gen->add_option("--rows", gen_rows)->capture_default_str();
    gen->add_option("--cols", gen_cols)->capture_default_str();
    gen->add_option("--remove", gen_remove, "grid edge 'u,v' to drop (repeatable)");
    gen->add_option("--k", gen_k, "clique size")->capture_default_str();
    gen->add_option("--shared", gen_shared, "shared clique nodes")->capture_default_str();
    gen->add_option("--seed", gen_seed)->required();
    gen->add_option("--out", gen_out, "output edge list")->required();

    // eval
    auto* eval = app.add_subcommand("eval", "measures over partitions");
    std::string eval_graph, eval_partition;
    bool eval_f = false, eval_q = false, eval_h = false, eval_g1 = false,
         eval_g2 = false, eval_deg = false;
    double eval_l1 = 0.0, eval_l2 = 0.0, eval_l3 = 0.0;
    std::vector<std::string> eval_nmi;
    eval->add_option("--graph", eval_graph, "edge list file");
    eval->add_option("--partition", eval_partition, "partition file");
    eval->add_flag("--f", eval_f, "same-label weight");
    eval->add_flag("--q", eval_q, "modularity");
    eval->add_flag("--hplain", eval_h, "plain hamiltonian");
    auto* h1_opt = eval->add_option("--h1", eval_l1, "constant-penalty hamiltonian");
    auto* h2_opt = eval->add_option("--h2", eval_l2, "degree-penalty hamiltonian");
    auto* h3_opt = eval->add_option("--h3", eval_l3, "absolute-model hamiltonian");
    eval->add_flag("--g1", eval_g1, "squared group sizes");
    eval->add_flag("--g2", eval_g2, "squared group degrees");
    eval->add_flag("--degeneracy", eval_deg, "tiny/largest group fractions");
    eval->add_option("--nmi", eval_nmi, "two partition files to compare")->expected(2);

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "sweeps over planted graphs (CSV)");
    std::string bench_sweep = "mu", bench_out, bench_tie = "retention";
    std::uint32_t bench_n = 128, bench_groups = 4, bench_runs = 25;
    double bench_degree = 16.0, bench_mu_min = 0.05, bench_mu_max = 0.6,
           bench_mu_step = 0.05;
    std::vector<std::uint64_t> bench_sizes{10000, 100000, 1000000};
    std::vector<std::string> bench_methods;
    std::uint64_t bench_seed = 0;
    bench->add_option("--sweep", bench_sweep, "mu|size")->capture_default_str();
    bench->add_option("--n", bench_n)->capture_default_str();
    bench->add_option("--groups", bench_groups)->capture_default_str();
    bench->add_option("--degree", bench_degree)->capture_default_str();
    bench->add_option("--runs", bench_runs)->capture_default_str();
    bench->add_option("--method", bench_methods,
                      "rule spec like standard, cpm:0.05, balanced:1 (repeatable)");
    bench->add_option("--mu-min", bench_mu_min)->capture_default_str();
    bench->add_option("--mu-max", bench_mu_max)->capture_default_str();
    bench->add_option("--mu-step", bench_mu_step)->capture_default_str();
    bench->add_option("--sizes", bench_sizes, "edge targets for --sweep size");
    bench->add_option("--tie", bench_tie, "retention|random")->capture_default_str();
    bench->add_option("--seed", bench_seed)->required();
    bench->add_option("--out", bench_out, "CSV path (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (*detect)
        return run_detect(detect_input, detect_opt, detect_prefix, detect_equal_total);
    if (*cons)
        return run_consensus(cons_input, cons_opt, cons_runs, cons_threshold,
                             cons_rounds, cons_prefix);
    if (*hier) return run_hierarchy(hier_input, hier_opt, hier_refine, hier_prefix);
    if (*overlap)
        return run_overlap(overlap_input, overlap_nu, overlap_rho, overlap_memory,
                           overlap_iters, overlap_seed, overlap_prefix);
    if (*equiv) {
        if (static_cast<int>(equiv_two) + static_cast<int>(equiv_cocit) +
                static_cast<int>(equiv_bib) != 1)
            usage_fail("pick exactly one of --two-step / --cocitation / --bibcoupling");
        return run_equivalence(equiv_input, equiv_opt, equiv_two, equiv_cocit,
                               equiv_prefix);
    }
    if (*gen)
        return run_generate(gen_kind, gen_n, gen_groups, gen_degree, gen_mu, gen_rows,
                            gen_cols, gen_remove, gen_k, gen_shared, gen_seed, gen_out);
    if (*eval) {
        if (!eval_nmi.empty() && eval_nmi.size() != 2) usage_fail("--nmi needs two files");
        return run_eval(eval_graph, eval_partition, eval_f, eval_q, eval_h,
                        h1_opt->count() > 0, eval_l1, h2_opt->count() > 0, eval_l2,
                        h3_opt->count() > 0, eval_l3, eval_g1, eval_g2, eval_deg,
                        eval_nmi);
    }
    if (*bench)
        return run_benchmark(bench_sweep, bench_n, bench_groups, bench_degree,
                             bench_runs, bench_seed, bench_methods, bench_mu_min,
                             bench_mu_max, bench_mu_step, bench_sizes, bench_tie,
                             bench_out);
    return 1;
}

#pragma once

#include <span>
#include <vector>

#include "labelprop/graph.hpp"
#include "labelprop/partition.hpp"

namespace labelprop {

enum class RuleKind {
    standard,               // score(g) = sum_j W_ij [g_j = g]
    cpm,                    // standard - lambda * n_g (own membership excluded)
    modularity,             // standard - lambda * k_i * k_g (own degree excluded)
    preference,             // static per-node propagation strengths
    defensive,              // strengths follow an in-group random-walk estimate
    offensive,              // suppressed strengths (1 - p) from the same estimate
    balanced,               // strengths from a logistic ramp over update times
    neighborhood_strength,  // edges boosted by shared-neighbor counts
    general_tau,            // mix of direct and common-neighbor transport
    cocitation,             // directed: shared out-neighbors
    bibcoupling,            // directed: shared in-neighbors
};

enum class PreferenceMode { promote, suppress };

struct RuleSpec {
    RuleKind kind = RuleKind::standard;
    double lambda = 0.0;
    double gamma = 0.0;
    double tau = 1.0;
    PreferenceMode preference_mode = PreferenceMode::promote;
    std::vector<double> preferences;          // kind == preference
    std::vector<double> initial_preferences;  // optional warm start (defensive/offensive)
    // Loops vote for the node's own label with their (single) weight. The
    // agglomeration pipeline turns this off for meta-graph passes: loop mass
    // is invariant under relabeling, and counting it would let dense groups
    // veto every merge.
    bool loops_as_votes = true;

    static RuleSpec standard() { return {}; }
    static RuleSpec cpm(double lambda1);
    static RuleSpec modularity(double lambda2);
    static RuleSpec preference_rule(std::vector<double> p, PreferenceMode mode);
    static RuleSpec defensive_rule();
    static RuleSpec offensive_rule();
    static RuleSpec balanced_rule(double gamma);
    static RuleSpec neighborhood();
    static RuleSpec with_tau(double tau);
    static RuleSpec citation(bool cocitation);
};

// Throws UsageError when the rule cannot run on the graph.
void validate_rule(const Graph& g, const RuleSpec& rule);

// How labels travel; reported groups must be connected under this relation.
enum class Transport { direct, two_hop, direct_and_two_hop, cocitation, bibcoupling };
Transport transport_of(const RuleSpec& rule);

// Enumerates the nodes label mass can arrive from at node i (with repeats).
template <typename F>
void for_each_transport_source(const Graph& g, Transport t, node_id i, F&& f) {
    switch (t) {
    case Transport::direct:
        for (node_id j : g.neighbors(i)) f(j);
        break;
    case Transport::two_hop:
    case Transport::direct_and_two_hop:
        for (node_id k : g.neighbors(i)) {
            if (t == Transport::direct_and_two_hop) f(k);
            if (g.neighbor_count(k) < 2) continue;
            for (node_id j : g.neighbors(k))
                if (j != i) f(j);
        }
        break;
    case Transport::cocitation:
        for (node_id k : g.neighbors(i))
            for (node_id j : g.in_neighbors(k))
                if (j != i) f(j);
        break;
    case Transport::bibcoupling:
        for (node_id k : g.in_neighbors(i))
            for (node_id j : g.neighbors(k))
                if (j != i) f(j);
        break;
    }
}

// Component split of same-label nodes under the rule's transport relation.
Partition split_by_transport(const Graph& g, const RuleSpec& rule,
                             std::span<const label_id> labels);

struct LabelScore {
    label_id label;
    double score;
};

// Scoring engine state for one run: current labels plus the incrementally
// maintained aggregates the constrained and preference rules read (group
// sizes n_g, group degrees k_g, own-group weights k_i^{g_i}, strengths p_i).
// Labels must be dense in [0, n).
class Scorer {
public:
    Scorer(const Graph& g, const RuleSpec& rule, std::vector<label_id> initial_labels);

    const Graph& graph() const { return g_; }
    const RuleSpec& rule() const { return rule_; }
    std::span<const label_id> labels() const { return labels_; }
    label_id label(node_id i) const { return labels_[i]; }

    // Candidate scores for node i: every contacted label plus the node's own,
    // sorted by label id. Scratch-buffer based; single-owner use only.
    void score_node(node_id i, std::vector<LabelScore>& out);

    void move(node_id i, label_id to);

    // Balanced rule: normalized position of j in the iteration's visit order.
    void set_update_time(node_id j, double t);

    std::uint32_t group_size(label_id group) const { return n_g_[group]; }
    double group_degree(label_id group) const { return k_g_[group]; }
    double own_group_weight(node_id i) const { return own_w_[i]; }
    std::span<const double> preferences() const { return prefs_; }

    // Value the random-walk estimate would take for node i in its current
    // group; the live update applies exactly this on every group change.
    double defensive_update_value(node_id i) const;

    // Full recount of n_g / k_g / k_i^{g_i}; true when it matches the
    // incremental state exactly.
    bool state_consistent() const;

private:
    void one_hop_scores(node_id i);
    void two_hop_scores(node_id i, double factor);
    void citation_scores(node_id i);
    void bump(label_id g, double amount);
    double strength(node_id j) const;

    const Graph& g_;
    RuleSpec rule_;
    std::vector<label_id> labels_;
    std::vector<std::uint32_t> n_g_;
    std::vector<double> k_g_;
    std::vector<double> own_w_;
    std::vector<double> prefs_;
    std::vector<double> group_max_pref_;  // offensive; monotone upper bound
    bool track_aggregates_ = true;
    // scratch
    std::vector<double> score_of_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t stamp_token_ = 0;
    std::vector<label_id> touched_;
};

// Logistic balancing weight for a normalized update time t in (0,1].
double balanced_weight(double t, double gamma);

struct EigenPrefs {
    std::vector<double> values;  // per node, unit maximum inside each group
    bool converged = true;
};

// Leading-eigenvector strengths of each group's induced adjacency, by power
// iteration (relative change < 1e-10, at most 1000 rounds). Nodes in
// singleton groups without loops get 1.
EigenPrefs eigenvector_prefs(const Graph& g, const Partition& p);

} // namespace labelprop

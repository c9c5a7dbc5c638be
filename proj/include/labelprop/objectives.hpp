#pragma once

#include "labelprop/graph.hpp"
#include "labelprop/partition.hpp"

namespace labelprop {

// All pair sums below run over ordered node pairs with the diagonal taken as
// twice the loop weight, so a grouping's score is invariant under quotienting.

// Total same-label weight: sum_ij W_ij delta(g_i, g_j). Equals 2(m - cut).
double objective_f(const Graph& g, const Partition& p);

// Weight of edges whose endpoints carry different labels.
double cut_weight(const Graph& g, const Partition& p);

enum class PenaltyKind { group_sizes, group_degrees };

// group_sizes: sum_g n_g^2; group_degrees: sum_g k_g^2.
double penalty(const Graph& g, const Partition& p, PenaltyKind which);

enum class HamiltonianVariant { plain, cpm, degree, apm };

// plain: -F; cpm: -sum (W_ij - lambda) delta; degree: -sum (W_ij - lambda k_i k_j) delta;
// apm: -sum (W_ij (lambda+1) - lambda) delta.
double hamiltonian(const Graph& g, const Partition& p, HamiltonianVariant v,
                   double lambda = 0.0);

// Resolution mapping between the absolute and constant Potts parameters.
double apm_lambda(double lambda3);

double modularity_q(const Graph& g, const Partition& p);

// Mutual information normalized by the arithmetic mean of the entropies.
// 1 for identical groupings (and for the single-group/single-group case),
// 0 for independent ones.
double nmi(const Partition& a, const Partition& b);

struct DegeneracyStats {
    double tiny_fraction = 0.0;     // nodes in groups of size <= 3
    double largest_fraction = 0.0;  // nodes in the largest group
};

DegeneracyStats degeneracy_stats(const Partition& p);

struct ObjectiveReport {
    double f = 0.0;
    double hamiltonian_plain = 0.0;
    double modularity = 0.0;
    double cut = 0.0;
    std::uint32_t groups = 0;
};

ObjectiveReport evaluate_partition(const Graph& g, const Partition& p);

} // namespace labelprop

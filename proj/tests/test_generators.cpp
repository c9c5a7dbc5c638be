#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

using namespace labelprop;
using namespace test_helpers;

namespace {

// Fraction of edge weight crossing the reference grouping.
double external_fraction(const Graph& g, const Partition& truth) {
    return cut_weight(g, truth) / g.total_weight();
}

} // namespace

TEST_CASE("random graph generator") {
    SUBCASE("degenerate cases") {
        CHECK(erdos_renyi(10, 0.0, 1).total_weight() == 0.0);
        CHECK(erdos_renyi(2, 1.0, 1).total_weight() == 1.0);  // p = 1
    }
    SUBCASE("seed determinism") {
        CHECK(erdos_renyi(200, 6, 42).same_structure(erdos_renyi(200, 6, 42)));
        CHECK_FALSE(erdos_renyi(200, 6, 42).same_structure(erdos_renyi(200, 6, 43)));
    }
    SUBCASE("mean degree close to the target") {
        double mean = 0.0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Graph g = erdos_renyi(10000, 10.0, seed);
            mean += 2.0 * g.total_weight() / g.node_count();
        }
        mean /= 10.0;
        CHECK(mean == doctest::Approx(10.0).epsilon(0.05));
    }
    SUBCASE("edge count within three standard deviations") {
        const node_id n = 500;
        const double p = 8.0 / (n - 1);
        const double pairs = n * (n - 1) / 2.0;
        const double sigma = std::sqrt(pairs * p * (1 - p));
        for (std::uint64_t seed = 100; seed < 110; ++seed) {
            const Graph g = erdos_renyi(n, 8.0, seed);
            CHECK(std::abs(g.total_weight() - pairs * p) < 3.0 * sigma);
        }
    }
    SUBCASE("rejects infeasible degrees") {
        CHECK_THROWS_AS(erdos_renyi(10, 10.0, 1), UsageError);
        CHECK_THROWS_AS(erdos_renyi(10, -1.0, 1), UsageError);
    }
}

TEST_CASE("planted partition benchmark") {
    SUBCASE("mu = 0 gives disconnected dense blocks") {
        const auto [g, truth] = planted_partition({128, 4, 16.0, 0.0, 7});
        CHECK(cut_weight(g, truth) == 0.0);
        CHECK(connected_components(g).group_count() == 4);
    }
    SUBCASE("external fraction tracks mu") {
        double mean = 0.0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto [g, truth] = planted_partition({128, 4, 16.0, 0.1, seed});
            mean += external_fraction(g, truth);
        }
        CHECK(std::abs(mean / 10.0 - 0.1) < 0.03);
    }
    SUBCASE("mu = 1 leaves almost nothing inside") {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto [g, truth] = planted_partition({128, 4, 16.0, 1.0, seed});
            CHECK(1.0 - external_fraction(g, truth) < 0.02);
        }
    }
    SUBCASE("larger instances concentrate") {
        double mean = 0.0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto [g, truth] = planted_partition({1024, 4, 16.0, 0.3, seed});
            mean += external_fraction(g, truth);
        }
        CHECK(std::abs(mean / 10.0 - 0.3) < 0.02);
    }
    SUBCASE("determinism and validation") {
        const auto a = planted_partition({64, 4, 8.0, 0.2, 5});
        const auto b = planted_partition({64, 4, 8.0, 0.2, 5});
        CHECK(a.graph.same_structure(b.graph));
        CHECK_THROWS_AS(planted_partition({10, 4, 4.0, 0.1, 1}), UsageError);
        CHECK_THROWS_AS(planted_partition({128, 4, 16.0, 1.5, 1}), UsageError);
        CHECK_THROWS_AS(planted_partition({8, 4, 6.0, 0.0, 1}), DataError);
    }
}

TEST_CASE("triangular grid") {
    SUBCASE("full 2x2 lattice") {
        const Graph g = triangular_grid(2, 2);
        CHECK(g.node_count() == 4);
        CHECK(g.total_weight() == 5.0);  // 2 horizontal + 2 vertical + 1 diagonal
    }
    SUBCASE("removing every crossing edge splits the grid") {
        std::vector<std::pair<node_id, node_id>> crossing;
        for (std::uint32_t r = 0; r < 3; ++r) {
            crossing.push_back({grid_node(4, r, 1), grid_node(4, r, 2)});
            if (r + 1 < 3) crossing.push_back({grid_node(4, r, 1), grid_node(4, r + 1, 2)});
        }
        const Graph g = triangular_grid(3, 4, crossing);
        CHECK(connected_components(g).group_count() == 2);
    }
    SUBCASE("bisected 6x12 fixture keeps the expected cut") {
        const Graph g = bisected_grid();
        CHECK(g.node_count() == 72);
        std::vector<label_id> halves(72);
        for (std::uint32_t r = 0; r < 6; ++r)
            for (std::uint32_t c = 0; c < 12; ++c)
                halves[grid_node(12, r, c)] = c < 6 ? 0 : 1;
        // 6 horizontal + 5 diagonal crossings minus the 4 removed.
        CHECK(cut_weight(g, Partition(halves)) == 7.0);
        CHECK(connected_components(g).group_count() == 1);
    }
    SUBCASE("rejects unknown removals") {
        const std::vector<std::pair<node_id, node_id>> bad{{1, 2}};  // anti-diagonal
        CHECK_THROWS_AS(triangular_grid(2, 2, bad), UsageError);
    }
}

TEST_CASE("overlapping clique fixture") {
    SUBCASE("one shared node") {
        const auto [g, truth] = overlapping_cliques(5, 1);
        CHECK(g.node_count() == 9);
        CHECK(g.degree(0) == 8.0);
        CHECK(truth.affiliation(0, 0) == 0.5);
        CHECK(truth.affiliation(0, 1) == 0.5);
        CHECK(truth.affiliation(1, 0) == 1.0);
    }
    SUBCASE("disjoint cliques") {
        const auto [g, truth] = overlapping_cliques(3, 0);
        CHECK(connected_components(g).group_count() == 2);
        CHECK(truth.max_affiliation_count() == 1);
    }
    SUBCASE("two shared nodes see everyone") {
        const auto [g, truth] = overlapping_cliques(4, 2);
        CHECK(g.node_count() == 6);
        CHECK(g.degree(0) == 5.0);
        CHECK(g.degree(1) == 5.0);
    }
    SUBCASE("rejects too much overlap") { CHECK_THROWS_AS(overlapping_cliques(4, 4), UsageError); }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "labelprop.h"

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / "labelprop_capi_test";
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

labelprop_graph_t* triangle_pair() {
    // two triangles joined by one edge
    const uint32_t u[] = {0, 0, 1, 3, 3, 4, 2};
    const uint32_t v[] = {1, 2, 2, 4, 5, 5, 3};
    labelprop_graph_t* g = nullptr;
    labelprop_error_t error;
    REQUIRE(labelprop_graph_build(6, 0, 0, 7, u, v, nullptr, nullptr, &g, &error) ==
            LABELPROP_OK);
    return g;
}

} // namespace

TEST_CASE("graph construction and accessors") {
    labelprop_graph_t* g = triangle_pair();
    CHECK(labelprop_graph_node_count(g) == 6);
    CHECK(labelprop_graph_total_weight(g) == 7.0);
    CHECK(labelprop_graph_is_directed(g) == 0);
    labelprop_graph_free(g);

    labelprop_error_t error;
    labelprop_graph_t* bad = nullptr;
    const uint32_t u[] = {0};
    const uint32_t v[] = {9};
    CHECK(labelprop_graph_build(3, 0, 0, 1, u, v, nullptr, nullptr, &bad, &error) ==
          LABELPROP_ERROR_DATA);
    CHECK(std::strlen(error.message) > 0);
    CHECK(labelprop_graph_read("/nonexistent/file.txt", &bad, &error) ==
          LABELPROP_ERROR_DATA);
}

TEST_CASE("runs, partitions and reports") {
    TempDir dir;
    labelprop_graph_t* g = triangle_pair();
    labelprop_rule_t rule;
    labelprop_rule_init(&rule);
    labelprop_config_t cfg;
    labelprop_config_init(&cfg);
    cfg.seed = 11;

    labelprop_result_t* result = nullptr;
    labelprop_error_t error;
    REQUIRE(labelprop_run(g, &rule, &cfg, &result, &error) == LABELPROP_OK);
    CHECK(labelprop_result_converged(result) == 1);
    CHECK(labelprop_result_iterations(result) >= 1);
    CHECK(labelprop_result_relabels(result, labelprop_result_iterations(result) - 1) ==
          0);

    const labelprop_partition_t* p = labelprop_result_partition(result);
    CHECK(labelprop_partition_node_count(p) == 6);
    CHECK(labelprop_partition_group_count(p) <= 2);

    int balanced_state = 0;
    CHECK(labelprop_check_equilibrium(g, &rule, p, &balanced_state, &error) ==
          LABELPROP_OK);
    CHECK(balanced_state == 1);

    // same seed, same outcome
    labelprop_result_t* again = nullptr;
    REQUIRE(labelprop_run(g, &rule, &cfg, &again, &error) == LABELPROP_OK);
    for (uint32_t i = 0; i < 6; ++i)
        CHECK(labelprop_partition_label(p, i) ==
              labelprop_partition_label(labelprop_result_partition(again), i));
    labelprop_result_free(again);

    REQUIRE(labelprop_result_write_report(result, g, dir.file("report.txt").c_str(),
                                          &error) == LABELPROP_OK);
    CHECK(fs::exists(dir.file("report.txt")));

    REQUIRE(labelprop_partition_write(p, g, dir.file("part.tsv").c_str(), &error) ==
            LABELPROP_OK);
    labelprop_partition_t* reread = nullptr;
    REQUIRE(labelprop_partition_read(dir.file("part.tsv").c_str(), g, &reread,
                                     &error) == LABELPROP_OK);
    for (uint32_t i = 0; i < 6; ++i) {
        const uint32_t a = labelprop_partition_label(p, i);
        const uint32_t b = labelprop_partition_label(reread, i);
        for (uint32_t j = 0; j < 6; ++j)
            CHECK((labelprop_partition_label(p, j) == a) ==
                  (labelprop_partition_label(reread, j) == b));
    }
    labelprop_partition_free(reread);

    labelprop_result_free(result);
    labelprop_graph_free(g);
}

TEST_CASE("rule and config validation surfaces as usage errors") {
    labelprop_graph_t* g = triangle_pair();
    labelprop_rule_t rule;
    labelprop_rule_init(&rule);
    rule.kind = LABELPROP_RULE_COCITATION;
    labelprop_config_t cfg;
    labelprop_config_init(&cfg);
    labelprop_result_t* result = nullptr;
    labelprop_error_t error;
    CHECK(labelprop_run(g, &rule, &cfg, &result, &error) == LABELPROP_ERROR_USAGE);

    labelprop_rule_init(&rule);
    cfg.probabilistic_sync = 1;  // async schedule: invalid combination
    CHECK(labelprop_run(g, &rule, &cfg, &result, &error) == LABELPROP_ERROR_USAGE);
    labelprop_graph_free(g);
}

TEST_CASE("generators and measures") {
    labelprop_error_t error;
    labelprop_graph_t* g = nullptr;
    labelprop_partition_t* truth = nullptr;
    REQUIRE(labelprop_generate_planted(64, 4, 10.0, 0.1, 3, &g, &truth, &error) ==
            LABELPROP_OK);
    CHECK(labelprop_graph_node_count(g) == 64);
    CHECK(labelprop_partition_group_count(truth) == 4);

    double value = 0.0;
    REQUIRE(labelprop_objective_f(g, truth, &value, &error) == LABELPROP_OK);
    CHECK(value > 0.0);
    REQUIRE(labelprop_modularity(g, truth, &value, &error) == LABELPROP_OK);
    CHECK(value > 0.3);
    REQUIRE(labelprop_nmi(truth, truth, &value, &error) == LABELPROP_OK);
    CHECK(value == 1.0);
    REQUIRE(labelprop_penalty(g, truth, 0, &value, &error) == LABELPROP_OK);
    CHECK(value == 4.0 * 16.0 * 16.0);
    REQUIRE(labelprop_hamiltonian(g, truth, 0, 0.0, &value, &error) == LABELPROP_OK);
    double f = 0.0;
    REQUIRE(labelprop_objective_f(g, truth, &f, &error) == LABELPROP_OK);
    CHECK(value == -f);
    double tiny = 0.0, largest = 0.0;
    REQUIRE(labelprop_degeneracy(truth, &tiny, &largest, &error) == LABELPROP_OK);
    CHECK(tiny == 0.0);
    CHECK(largest == 0.25);
    labelprop_partition_free(truth);
    labelprop_graph_free(g);

    REQUIRE(labelprop_generate_erdos_renyi(100, 4.0, 1, &g, &error) == LABELPROP_OK);
    CHECK(labelprop_graph_node_count(g) == 100);
    labelprop_graph_free(g);

    CHECK(labelprop_generate_erdos_renyi(10, 20.0, 1, &g, &error) ==
          LABELPROP_ERROR_USAGE);

    REQUIRE(labelprop_generate_grid(3, 3, 0, nullptr, nullptr, &g, &error) ==
            LABELPROP_OK);
    CHECK(labelprop_graph_node_count(g) == 9);
    labelprop_graph_free(g);

    labelprop_cover_t* cover_truth = nullptr;
    REQUIRE(labelprop_generate_cliques(5, 1, &g, &cover_truth, &error) == LABELPROP_OK);
    CHECK(labelprop_graph_node_count(g) == 9);
    CHECK(labelprop_cover_entry_count(cover_truth, 0) == 2);
    uint32_t label = 0;
    double weight = 0.0;
    REQUIRE(labelprop_cover_entry(cover_truth, 0, 0, &label, &weight, &error) ==
            LABELPROP_OK);
    CHECK(weight == 0.5);
    labelprop_cover_free(cover_truth);
    labelprop_graph_free(g);
}

TEST_CASE("signed reweighting through the interface") {
    const uint32_t u[] = {0, 1, 2};
    const uint32_t v[] = {1, 2, 0};
    const double w[] = {1.0, 1.0, -1.0};
    labelprop_graph_t* g = nullptr;
    labelprop_error_t error;
    REQUIRE(labelprop_graph_build(3, 0, 1, 3, u, v, w, nullptr, &g, &error) ==
            LABELPROP_OK);
    labelprop_graph_t* balanced = nullptr;
    REQUIRE(labelprop_graph_signed_reweight(g, 1, 0, 0, &balanced, &error) ==
            LABELPROP_OK);
    CHECK(labelprop_graph_total_weight(balanced) == doctest::Approx(0.0));
    labelprop_graph_free(balanced);
    labelprop_graph_free(g);
}

TEST_CASE("pipelines through the interface") {
    TempDir dir;
    labelprop_error_t error;
    labelprop_graph_t* g = triangle_pair();
    labelprop_rule_t rule;
    labelprop_rule_init(&rule);
    labelprop_config_t cfg;
    labelprop_config_init(&cfg);
    cfg.seed = 21;

    labelprop_partition_t* part = nullptr;
    int converged = 0;
    REQUIRE(labelprop_consensus(g, &rule, &cfg, 8, 0.5, 10, &part, &converged,
                                &error) == LABELPROP_OK);
    CHECK(labelprop_partition_group_count(part) >= 1);
    labelprop_partition_free(part);

    labelprop_hierarchy_t* h = nullptr;
    REQUIRE(labelprop_hierarchy_detect(g, &rule, &cfg, 1, &h, &error) == LABELPROP_OK);
    REQUIRE(labelprop_hierarchy_levels(h) >= 1);
    CHECK(labelprop_partition_node_count(labelprop_hierarchy_level(h, 0)) == 6);
    REQUIRE(labelprop_hierarchy_write(h, g, dir.file("h").c_str(), &error) ==
            LABELPROP_OK);
    CHECK(fs::exists(dir.file("h") + ".index.tsv"));
    labelprop_hierarchy_free(h);

    labelprop_cover_t* cover = nullptr;
    REQUIRE(labelprop_copra(g, 2, 0.0, 100, 5, &cover, &error) == LABELPROP_OK);
    REQUIRE(labelprop_cover_write(cover, g, dir.file("c.tsv").c_str(), &error) ==
            LABELPROP_OK);
    labelprop_cover_free(cover);
    CHECK(labelprop_copra(g, 2, 0.5, 100, 5, &cover, &error) == LABELPROP_ERROR_USAGE);

    REQUIRE(labelprop_memory_lpa(g, 25, 0.3, 5, &cover, &error) == LABELPROP_OK);
    CHECK(labelprop_cover_node_count(cover) == 6);
    labelprop_cover_free(cover);

    REQUIRE(labelprop_two_step(g, &cfg, &part, &error) == LABELPROP_OK);
    labelprop_partition_free(part);
    REQUIRE(labelprop_defensive_offensive(g, &cfg, &part, &error) == LABELPROP_OK);
    labelprop_partition_free(part);
    labelprop_graph_free(g);
}

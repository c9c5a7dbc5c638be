// End-to-end checks of the command-line binary: every subcommand, the exit
// code contract (0 ok, 1 usage, 2 data) and seeded reproducibility.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const std::string cli = LABELPROP_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / "labelprop_cli_test";
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
    const std::string command = cli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

} // namespace

TEST_CASE("generate, detect and eval round trip") {
    TempDir dir;
    const std::string g = dir.file("g.txt");
    REQUIRE(run_cli("generate planted --n 64 --groups 4 --degree 12 --mu 0.1 --seed 3 --out " + g) == 0);
    CHECK(fs::exists(g));
    CHECK(fs::exists(g + ".truth.tsv"));

    REQUIRE(run_cli("detect --rule standard --schedule async --tie retention --seed 7 --out " +
                    dir.file("run") + " " + g) == 0);
    CHECK(fs::exists(dir.file("run.partition.tsv")));
    CHECK(fs::exists(dir.file("run.report.txt")));

    CHECK(run_cli("eval --graph " + g + " --partition " + dir.file("run.partition.tsv") +
                  " --f --q --hplain --h2 0.01 --g1 --g2 --degeneracy") == 0);
    CHECK(run_cli("eval --nmi " + g + ".truth.tsv " + dir.file("run.partition.tsv")) == 0);
}

TEST_CASE("seeded invocations are byte identical") {
    TempDir dir;
    const std::string g = dir.file("g.txt");
    REQUIRE(run_cli("generate planted --n 64 --groups 4 --degree 12 --mu 0.2 --seed 9 --out " + g) == 0);
    for (const std::string& invocation :
         {std::string("detect --rule modularity --lambda2 0.005 --seed 42 --out PREFIX ") + g,
          std::string("consensus --runs 8 --tie random --seed 6 --out PREFIX ") + g,
          std::string("overlap --copra-nu 2 --seed 5 --out PREFIX ") + g}) {
        std::string first = invocation, second = invocation;
        first.replace(first.find("PREFIX"), 6, dir.file("a"));
        second.replace(second.find("PREFIX"), 6, dir.file("b"));
        REQUIRE(run_cli(first) == 0);
        REQUIRE(run_cli(second) == 0);
        for (const char* suffix : {".partition.tsv", ".cover.tsv", ".report.txt"}) {
            if (!fs::exists(dir.file("a") + suffix)) continue;
            CHECK(slurp(dir.file("a") + suffix) == slurp(dir.file("b") + suffix));
        }
    }
}

TEST_CASE("hierarchy and overlap outputs") {
    TempDir dir;
    const std::string g = dir.file("g.txt");
    REQUIRE(run_cli("generate planted --n 64 --groups 4 --degree 12 --mu 0.05 --seed 2 --out " + g) == 0);
    REQUIRE(run_cli("hierarchy --refine --seed 3 --out " + dir.file("h") + " " + g) == 0);
    CHECK(fs::exists(dir.file("h.index.tsv")));
    CHECK(fs::exists(dir.file("h.level0.tsv")));

    REQUIRE(run_cli("overlap --memory 25 0.3 --seed 4 --out " + dir.file("m") + " " + g) == 0);
    CHECK(fs::exists(dir.file("m.cover.tsv")));
    REQUIRE(run_cli("overlap --copra-rho 0.5 --seed 4 --out " + dir.file("r") + " " + g) == 0);
    CHECK(fs::exists(dir.file("r.cover.tsv")));
}

TEST_CASE("signed graphs rebalance on request") {
    TempDir dir;
    // two triangles, all positive inside, one negative bridge
    write_text(dir.file("s.txt"),
               "%signed\n0 1 1\n0 2 1\n1 2 1\n3 4 1\n3 5 1\n4 5 1\n2 3 -1\n");
    REQUIRE(run_cli("detect --signed-equal-total --tie retention --seed 3 --out " +
                    dir.file("s") + " " + dir.file("s.txt")) == 0);
    // the negative bridge keeps the triangles apart
    const std::string labels = slurp(dir.file("s.partition.tsv"));
    CHECK(labels.find("2\t0") != std::string::npos);
    CHECK(labels.find("3\t3") != std::string::npos);
}

TEST_CASE("equivalence modes") {
    TempDir dir;
    // two hubs sharing four leaves
    write_text(dir.file("hubs.txt"),
               "0 2\n0 3\n0 4\n0 5\n1 2\n1 3\n1 4\n1 5\n");
    REQUIRE(run_cli("equivalence --two-step --seed 3 --out " + dir.file("t") + " " +
                    dir.file("hubs.txt")) == 0);
    CHECK(fs::exists(dir.file("t.partition.tsv")));

    write_text(dir.file("dag.txt"), "%directed\na c\nb c\na d\nb d\n");
    REQUIRE(run_cli("equivalence --cocitation --seed 3 --out " + dir.file("c") + " " +
                    dir.file("dag.txt")) == 0);
    CHECK(fs::exists(dir.file("c.partition.tsv")));

    CHECK(run_cli("equivalence --two-step --cocitation --seed 1 --out x " +
                  dir.file("dag.txt")) == 1);
}

TEST_CASE("benchmark sweeps emit CSV") {
    TempDir dir;
    REQUIRE(run_cli("benchmark --sweep mu --n 64 --groups 4 --degree 12 --runs 4 "
                    "--mu-min 0.1 --mu-max 0.2 --mu-step 0.1 --seed 5 --out " +
                    dir.file("mu.csv")) == 0);
    const std::string mu_csv = slurp(dir.file("mu.csv"));
    CHECK(mu_csv.find("mu,method,mean_nmi,stderr") == 0);
    CHECK(mu_csv.find("0.1000,standard,") != std::string::npos);

    REQUIRE(run_cli("benchmark --sweep size --degree 12 --groups 4 --runs 3 "
                    "--sizes 1000 2000 --seed 5 --out " + dir.file("size.csv")) == 0);
    const std::string size_csv = slurp(dir.file("size.csv"));
    CHECK(size_csv.find("m,method,mean_iterations,stderr") == 0);
    CHECK(size_csv.find("1000,standard,") != std::string::npos);

    // identical seeds give identical CSV bytes
    REQUIRE(run_cli("benchmark --sweep mu --n 64 --groups 4 --degree 12 --runs 4 "
                    "--mu-min 0.1 --mu-max 0.2 --mu-step 0.1 --seed 5 --out " +
                    dir.file("mu2.csv")) == 0);
    CHECK(slurp(dir.file("mu.csv")) == slurp(dir.file("mu2.csv")));
}

TEST_CASE("exit codes") {
    TempDir dir;
    CHECK(run_cli("detect --no-such-flag x.txt") == 1);
    CHECK(run_cli("detect --seed 1 " + dir.file("missing.txt")) == 2);
    CHECK(run_cli("nonsense") == 1);
    CHECK(run_cli("detect " + dir.file("missing.txt")) == 1);  // --seed is mandatory

    write_text(dir.file("neg.txt"), "0 1 -2\n");
    CHECK(run_cli("detect --seed 1 --out " + dir.file("x") + " " + dir.file("neg.txt")) == 2);

    write_text(dir.file("pa.tsv"), "0\t0\n1\t0\n");
    write_text(dir.file("pb.tsv"), "0\t0\nzzz\t0\n");
    CHECK(run_cli("eval --nmi " + dir.file("pa.tsv") + " " + dir.file("pb.tsv")) == 2);

    // directed rules on undirected input are a usage error
    write_text(dir.file("und.txt"), "0 1\n1 2\n");
    CHECK(run_cli("equivalence --cocitation --seed 1 --out " + dir.file("y") + " " +
                  dir.file("und.txt")) == 1);
}

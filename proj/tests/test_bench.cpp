#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fedalloc/bench.hpp"

using namespace fedalloc;

namespace {

ScenarioConfig tiny_config() {
    ScenarioConfig cfg = parse_config(
        "{\"seed\": 4, \"n_devices\": 3, \"t_max_improv\": 250, \"dual_max_iter\": 400,"
        " \"outer_max\": 6}");
    return cfg;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

}  // namespace

TEST_CASE("run_suite writes the three csv files with stable schemas") {
    auto dir = std::filesystem::temp_directory_path() / "fedalloc_bench_a";
    std::filesystem::remove_all(dir);
    SuiteOptions opts;
    opts.out_dir = dir.string();
    opts.n_seeds = 2;
    SuiteResult result = run_suite(tiny_config(), opts);
    CHECK(result.records.size() == 8);  // 2 seeds x 4 methods
    CHECK(result.sweep.size() == 12);   // 6 multipliers x 2 seeds

    std::string convergence = slurp(dir / "convergence.csv");
    std::string comparison = slurp(dir / "comparison.csv");
    std::string sweep = slurp(dir / "energy_sweep.csv");
    CHECK(convergence.rfind("outer_iter,proposed,random_pf,random_theta,random_all\n", 0) == 0);
    CHECK(comparison.rfind("seed,proposed,random_pf,random_theta,random_all,flags\n", 0) == 0);
    CHECK(sweep.rfind("multiplier,seed,energy_total,mean_energy\n", 0) == 0);

    // The proposed column of the convergence trace is an incumbent: never rising.
    std::stringstream ss(convergence);
    std::string line;
    std::getline(ss, line);
    double prev = 1e300;
    while (std::getline(ss, line)) {
        double v = std::stod(split(line, ',')[1]);
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("identical configs produce byte-identical csv outputs") {
    auto dir1 = std::filesystem::temp_directory_path() / "fedalloc_bench_b1";
    auto dir2 = std::filesystem::temp_directory_path() / "fedalloc_bench_b2";
    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);
    SuiteOptions opts;
    opts.n_seeds = 2;
    opts.out_dir = dir1.string();
    run_suite(tiny_config(), opts);
    opts.out_dir = dir2.string();
    run_suite(tiny_config(), opts);
    for (const char* name : {"convergence.csv", "comparison.csv", "energy_sweep.csv"}) {
        CHECK(slurp(dir1 / name) == slurp(dir2 / name));
    }
}

TEST_CASE("method subsets are honored") {
    auto dir = std::filesystem::temp_directory_path() / "fedalloc_bench_c";
    std::filesystem::remove_all(dir);
    SuiteOptions opts;
    opts.out_dir = dir.string();
    opts.n_seeds = 1;
    opts.methods = {"random_all", "proposed"};
    SuiteResult result = run_suite(tiny_config(), opts);
    CHECK(result.records.size() == 2);
    std::string comparison = slurp(dir / "comparison.csv");
    CHECK(comparison.rfind("seed,proposed,random_all,flags\n", 0) == 0);
}

TEST_CASE("comparison csv round-trips through the reader") {
    auto dir = std::filesystem::temp_directory_path() / "fedalloc_bench_d";
    std::filesystem::remove_all(dir);
    SuiteOptions opts;
    opts.out_dir = dir.string();
    opts.n_seeds = 2;
    SuiteResult result = run_suite(tiny_config(), opts);
    auto records = read_comparison_csv((dir / "comparison.csv").string());
    CHECK(records.size() == result.records.size());
    for (const auto& rec : result.records) {
        bool found = false;
        for (const auto& parsed : records) {
            if (parsed.method == rec.method && parsed.seed == rec.seed) {
                CHECK(parsed.objective == doctest::Approx(rec.objective).epsilon(1e-9));
                CHECK(parsed.completed == rec.completed);
                found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("report summarizes records and flags trouble") {
    std::ostringstream out;
    CHECK(report({}, out) == 0);
    CHECK(out.str().find("0 rows") != std::string::npos);

    std::vector<RunRecord> records;
    RunRecord good;
    good.method = "proposed";
    good.seed = 1;
    good.objective = 2.5;
    good.feasible = true;
    good.completed = true;
    RunRecord baseline = good;
    baseline.method = "random_pf";
    baseline.objective = 4.0;
    RunRecord bad;
    bad.method = "random_all";
    bad.seed = 1;
    bad.completed = false;
    bad.feasible = false;
    records = {good, baseline, bad};

    std::ostringstream os;
    CHECK(report(records, os) == 0);
    std::string text = os.str();
    CHECK(text.find("win-rate: 100.0%") != std::string::npos);
    CHECK(text.find("warning: method random_all") != std::string::npos);
}

TEST_CASE("single method runs are deterministic") {
    ScenarioConfig cfg = tiny_config();
    RunRecord a = run_method(cfg, "proposed", 9);
    RunRecord b = run_method(cfg, "proposed", 9);
    CHECK(a.objective == b.objective);
    CHECK(a.energy_total == b.energy_total);
    CHECK(a.trace == b.trace);
}

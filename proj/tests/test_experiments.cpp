#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "simonovits/experiments.hpp"

using namespace simonovits;
namespace fs = std::filesystem;

namespace {

struct ThreadEnv {
    explicit ThreadEnv(const char* v) { setenv("SIMONOVITS_THREADS", v, 1); }
    ~ThreadEnv() { unsetenv("SIMONOVITS_THREADS"); }
};

fs::path scratch(const std::string& name) {
    auto d = fs::temp_directory_path() / "simonovits_tests";
    fs::create_directories(d);
    return d / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

int run_file(const fs::path& p, const nlohmann::json& j) {
    std::ofstream(p) << j.dump(2);
    std::ostringstream out, err;
    return run_config(p.string(), out, err);
}

ExperimentConfig scan_cfg(std::vector<double> ps, int trials) {
    ExperimentConfig c;
    c.n_grid = {12};
    c.p_grid = ps;
    c.trials = trials;
    c.seed = 11;
    return c;
}

} // namespace

TEST(Config, RoundTrip) {
    ExperimentConfig c;
    c.command = "verify-lemma";
    c.lemma = "fql";
    c.n_grid = {10, 14};
    c.p_grid = std::vector<double>{0.1, 1.0 / 3};
    c.seed = 0xFFFFFFFFFFFFFFFFULL;
    c.constants.alpha = 0.0123456789012345;
    c.m = -1;
    auto back = config_from_json(nlohmann::json::parse(to_json(c).dump()));
    EXPECT_EQ(back, c);
    EXPECT_EQ(to_json(back).dump(), to_json(c).dump());
    ExperimentConfig d;
    EXPECT_EQ(config_from_json(to_json(d)), d);
}

TEST(Config, Errors) {
    auto bad = [](nlohmann::json j) { EXPECT_THROW(config_from_json(j), ConfigError) << j.dump(); };
    bad({{"p_grid", nlohmann::json::array()}});
    bad({{"n_grid", nlohmann::json::array()}});
    bad({{"trials", 0}});
    bad({{"command", "verify-lemma"}, {"lemma", "nope"}});
    bad({{"command", "plot"}});
    bad({{"typo", 1}});
    bad({{"trials", "many"}});
    bad({{"constants", {{"kappa", -1}}}});
    bad(nlohmann::json::array());
    EXPECT_NO_THROW(config_from_json(nlohmann::json::object()));
}

TEST(Config, ThreadEnv) {
    {
        ThreadEnv e("3");
        EXPECT_EQ(thread_count(), 3);
    }
    {
        ThreadEnv e("zero");
        EXPECT_THROW(thread_count(), ConfigError);
    }
    EXPECT_GE(thread_count(), 1);
}

TEST(Scan, DenseCellAllYes) {
    auto r = scan_threshold(scan_cfg({1.0}, 20));
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(r.rows[0].yes, 20);
    EXPECT_EQ(r.rows[0].witness_rate, 0);
}

TEST(Scan, DefaultMultipliers) {
    ExperimentConfig c;
    c.trials = 1;
    auto r = scan_threshold(c);
    ASSERT_EQ(r.rows.size(), 5u);
    const double pth = p_threshold(analyze_pattern(complete_graph(3)), 12);
    EXPECT_NEAR(r.rows[0].p, 0.25 * pth, 1e-15);
    EXPECT_NEAR(r.rows[0].ratio, 0.25, 1e-12);
    EXPECT_EQ(r.rows[4].p, 1.0);
}

TEST(Scan, ByteIdenticalAcrossRunsAndThreads) {
    auto c = scan_cfg({0.3, 0.6}, 12);
    std::string one, four;
    {
        ThreadEnv e("1");
        one = scan_csv(scan_threshold(c));
    }
    {
        ThreadEnv e("4");
        four = scan_csv(scan_threshold(c));
        EXPECT_EQ(four, scan_csv(scan_threshold(c)));
    }
    EXPECT_EQ(one, four);
    EXPECT_EQ(std::count(one.begin(), one.end(), '\n'), 3);
}

TEST(Switching, SimulationValidates) {
    SwitchParams prm;
    prm.m = 2;
    prm.delta = 0.2;
    auto s = simulate_switching(12, 6, 0, prm, 0.5);
    EXPECT_EQ(s.violations, 0);
    EXPECT_EQ(s.deficit_increases, 0);
    EXPECT_EQ(to_json(s).dump(), to_json(simulate_switching(12, 6, 0, prm, 0.5)).dump());
}

TEST(VerifyLemma, Dispatch) {
    ExperimentConfig c;
    c.command = "verify-lemma";
    c.lemma = "poisson";
    EXPECT_EQ(verify_lemma(c)["pass"], true);
    c.lemma = "fql";
    c.n_grid = {10};
    c.p_grid = std::vector<double>{0.3};
    auto f = verify_lemma(c);
    EXPECT_EQ(f["pass"], true);
    EXPECT_EQ(f["cells"][0]["result"]["count"], 4);
    c.lemma = "uppertail";
    EXPECT_EQ(verify_lemma(c)["pass"], true);
    c.lemma = "sum";
    EXPECT_TRUE(verify_lemma(c)["pass"].is_null());
    c.lemma = "what";
    EXPECT_THROW(verify_lemma(c), ConfigError);
}

TEST(RunConfig, ExitCodesAndOutputs) {
    std::ostringstream out, err;
    EXPECT_EQ(run_config(scratch("missing.json").string(), out, err), 2);

    auto cfg_path = scratch("scan.json");
    auto csv = scratch("out/scan.csv");
    fs::remove(csv);
    nlohmann::json j{{"command", "scan-threshold"}, {"n_grid", {8, 10}}, {"p_grid", {0.4, 0.7, 1.0}},
                     {"trials", 3}, {"seed", 4}, {"output", csv.string()}};
    ASSERT_EQ(run_file(cfg_path, j), 0);
    auto first = slurp(csv);
    EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 1 + 2 * 3);
    EXPECT_TRUE(fs::exists(csv.string() + ".timing.json"));
    EXPECT_FALSE(fs::exists(csv.string() + ".tmp"));
    ASSERT_EQ(run_file(cfg_path, j), 0);
    EXPECT_EQ(slurp(csv), first);

    j["p_grid"] = nlohmann::json::array();
    EXPECT_EQ(run_file(cfg_path, j), 2);
    // exact solver refuses non-bipartite hosts beyond 16 vertices
    j["n_grid"] = {20};
    j["p_grid"] = {0.9};
    EXPECT_EQ(run_file(cfg_path, j), 5);
}

TEST(RunConfig, CheckSimonovitsExitCodes) {
    auto path = scratch("check.json");
    EXPECT_EQ(run_file(path, {{"command", "check-simonovits"}, {"graph", "k5"}, {"output", scratch("k5.json").string()}}),
              0);
    EXPECT_EQ(run_file(path, {{"command", "check-simonovits"}, {"graph", "c5"}, {"output", scratch("c5.json").string()}}),
              3);
    auto v = nlohmann::json::parse(slurp(scratch("c5.json")));
    EXPECT_EQ(v["decision"], "no");
}

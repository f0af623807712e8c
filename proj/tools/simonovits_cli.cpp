#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simonovits/experiments.hpp"

using namespace simonovits;

namespace {

// Shared tail of every subcommand: run, write, map errors to exit codes.
int execute(const ExperimentConfig& cfg) {
    try {
        auto out = run_experiment(cfg);
        emit(cfg, out, std::cout);
        return out.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const TooLarge& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-n experiments on H-Simonovits graphs"};
    app.require_subcommand(1);
    ExperimentConfig cfg;
    std::vector<double> p_grid;
    std::string config_path;
    double alpha = cfg.constants.alpha;

    auto* ap = app.add_subcommand("analyze-pattern", "Print the pattern profile as JSON");
    ap->add_option("--pattern", cfg.pattern, "Built-in name or edge-list file")->required();
    ap->add_option("--json-out", cfg.output, "Write JSON here instead of stdout");

    auto* cs = app.add_subcommand("check-simonovits", "Decide whether every largest H-free subgraph is r-partite");
    cs->add_option("--graph", cfg.graph, "Host: built-in name or edge-list file")->required();
    cs->add_option("--pattern", cfg.pattern, "Pattern: built-in name or edge-list file")->required();
    cs->add_option("--json-out", cfg.output);
    cs->add_option("--node-budget", cfg.node_budget)->check(CLI::PositiveNumber);
    cs->footer("Exit code 0 = yes, 3 = no, 4 = indeterminate, 5 = refused by a size guard.");

    auto* st = app.add_subcommand("scan-threshold", "Rates of yes/no/indeterminate over an (n, p) grid");
    st->add_option("--pattern", cfg.pattern);
    st->add_option("--n", cfg.n_grid, "Vertex counts")->expected(1, -1);
    st->add_option("--p", p_grid, "Absolute edge probabilities")->expected(1, -1);
    st->add_option("--p-mult", cfg.p_multipliers, "Multiples of p_threshold(n), used when --p is absent")
        ->expected(1, -1);
    st->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
    st->add_option("--seed", cfg.seed);
    st->add_option("--output", cfg.output, "CSV/JSON path; wall times go to <output>.timing.json");
    st->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));
    st->add_option("--node-budget", cfg.node_budget)->check(CLI::PositiveNumber);

    auto* ss = app.add_subcommand("simulate-switching", "Run and validate seeded switching traces (H = K3)");
    int n_switch = 12;
    double edge_p = 0.5;
    ss->add_option("--n", n_switch)->check(CLI::Range(8, 64));
    ss->add_option("--runs", cfg.trials)->check(CLI::PositiveNumber);
    ss->add_option("--seed", cfg.seed);
    ss->add_option("--m", cfg.m, "Branch (a) threshold; negative disables it");
    ss->add_option("--L", cfg.L)->check(CLI::PositiveNumber);
    ss->add_option("--p", edge_p, "Edge probability of G_0")->check(CLI::Range(0.0, 1.0));
    ss->add_option("--delta", cfg.delta);
    ss->add_option("--alpha", alpha);
    ss->add_option("--json-out", cfg.output);

    auto* vl = app.add_subcommand("verify-lemma", "Instantiate a lemma numerically and report");
    vl->add_option("--lemma", cfg.lemma)->required()->check(CLI::IsMember(known_lemmas()));
    vl->add_option("--pattern", cfg.pattern);
    vl->add_option("--n", cfg.n_grid)->expected(1, -1);
    vl->add_option("--p", p_grid)->expected(1, -1);
    vl->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
    vl->add_option("--instances", cfg.instances)->check(CLI::PositiveNumber);
    vl->add_option("--delta", cfg.delta);
    vl->add_option("--seed", cfg.seed);
    vl->add_option("--json-out", cfg.output);

    auto* rc = app.add_subcommand("run-config", "Run the experiment described by a JSON config");
    rc->add_option("config", config_path)->required();
    rc->footer("Exit code 0 = done, 2 = config error, 5 = refused by a size guard.");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (rc->parsed()) return run_config(config_path, std::cout, std::cerr);

    if (!p_grid.empty()) cfg.p_grid = p_grid;
    if (ap->parsed()) cfg.command = "analyze-pattern";
    if (cs->parsed()) cfg.command = "check-simonovits";
    if (st->parsed()) cfg.command = "scan-threshold";
    if (vl->parsed()) cfg.command = "verify-lemma";
    if (ss->parsed()) {
        cfg.command = "simulate-switching";
        cfg.n_grid = {n_switch};
        cfg.p_grid = std::vector<double>{edge_p};
        cfg.constants.alpha = alpha;
    }
    return execute(cfg);
}

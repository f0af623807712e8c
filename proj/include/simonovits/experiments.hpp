#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "extremal.hpp"
#include "lemma_checks.hpp"
#include "pattern.hpp"
#include "random.hpp"
#include "rigidity.hpp"
#include "rng.hpp"
#include "structure.hpp"

namespace simonovits {

inline const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> c{"scan-threshold", "verify-lemma", "simulate-switching", "check-simonovits",
                                            "analyze-pattern"};
    return c;
}

inline const std::vector<std::string>& known_lemmas() {
    static const std::vector<std::string> l{"poisson", "janson",       "uppertail", "fql",       "high",
                                            "balanced", "sum",         "pif-balanced", "typicality"};
    return l;
}

struct ExperimentConfig {
    std::string command = "scan-threshold";
    std::string pattern = "triangle";
    std::string graph;  // host for check-simonovits
    std::vector<int> n_grid{12};
    std::optional<std::vector<double>> p_grid;  // absolute probabilities; multipliers are used when absent
    std::vector<double> p_multipliers{0.25, 0.5, 1, 2, 4};
    int trials = 20;
    int instances = 200;  // random hypergraphs for the janson check
    std::uint64_t seed = 0;
    Constants constants;
    std::string output;  // empty means standard output
    std::string format = "csv";
    std::string lemma;
    double delta = 0.1;
    long long m = 1;  // switching branch-(a) threshold, negative for infinity
    int L = 200;
    long long node_budget = 200000000;

    bool operator==(const ExperimentConfig&) const = default;
};

inline nlohmann::json to_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["command"] = c.command;
    j["pattern"] = c.pattern;
    j["graph"] = c.graph;
    j["n_grid"] = c.n_grid;
    if (c.p_grid) j["p_grid"] = *c.p_grid;
    j["p_multipliers"] = c.p_multipliers;
    j["trials"] = c.trials;
    j["instances"] = c.instances;
    j["seed"] = c.seed;
    j["constants"] = to_json(c.constants);
    j["output"] = c.output;
    j["format"] = c.format;
    j["lemma"] = c.lemma;
    j["delta"] = c.delta;
    j["m"] = c.m;
    j["L"] = c.L;
    j["node_budget"] = c.node_budget;
    return j;
}

inline void validate(const ExperimentConfig& c) {
    auto known = [](const std::vector<std::string>& xs, const std::string& x) {
        return std::find(xs.begin(), xs.end(), x) != xs.end();
    };
    if (!known(known_commands(), c.command)) throw ConfigError("unknown command '" + c.command + "'");
    if (c.command == "verify-lemma" && !known(known_lemmas(), c.lemma))
        throw ConfigError("unknown lemma id '" + c.lemma + "'");
    if (c.n_grid.empty()) throw ConfigError("n grid is empty");
    for (int n : c.n_grid)
        if (n < 1) throw ConfigError("n values must be positive");
    if (c.p_grid) {
        if (c.p_grid->empty()) throw ConfigError("p grid is empty");
        for (double p : *c.p_grid)
            if (!(p >= 0 && p <= 1)) throw ConfigError("p values must lie in [0, 1]");
    } else {
        if (c.p_multipliers.empty()) throw ConfigError("p multiplier grid is empty");
        for (double x : c.p_multipliers)
            if (!(x > 0)) throw ConfigError("p multipliers must be positive");
    }
    if (c.trials < 1) throw ConfigError("trials must be at least 1");
    if (c.instances < 1) throw ConfigError("instances must be at least 1");
    if (c.format != "csv" && c.format != "json") throw ConfigError("format must be csv or json");
    if (!(c.delta >= 0 && c.delta < 1)) throw ConfigError("delta must lie in [0, 1)");
    if (c.L < 1) throw ConfigError("L must be at least 1");
    if (c.node_budget < 1) throw ConfigError("node_budget must be positive");
    if (c.command == "check-simonovits" && c.graph.empty()) throw ConfigError("check-simonovits needs a graph");
}

// Missing keys keep their defaults; unknown keys are rejected so typos surface.
inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    static const std::vector<std::string> keys{"command", "pattern", "graph",  "n_grid", "p_grid", "p_multipliers",
                                               "trials",  "instances", "seed", "constants", "output", "format",
                                               "lemma",   "delta",   "m",      "L",      "node_budget"};
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (auto& [k, v] : j.items())
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw ConfigError("unknown config key '" + k + "'");
    ExperimentConfig c;
    try {
        auto get = [&](const char* k, auto& x) {
            if (j.contains(k)) j.at(k).get_to(x);
        };
        get("command", c.command);
        get("pattern", c.pattern);
        get("graph", c.graph);
        get("n_grid", c.n_grid);
        if (j.contains("p_grid")) c.p_grid = j.at("p_grid").get<std::vector<double>>();
        get("p_multipliers", c.p_multipliers);
        get("trials", c.trials);
        get("instances", c.instances);
        get("seed", c.seed);
        if (j.contains("constants")) c.constants = constants_from_json(j.at("constants"));
        get("output", c.output);
        get("format", c.format);
        get("lemma", c.lemma);
        get("delta", c.delta);
        get("m", c.m);
        get("L", c.L);
        get("node_budget", c.node_budget);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    validate(c);
    return c;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

// Worker count from SIMONOVITS_THREADS, else the hardware concurrency.
inline int thread_count() {
    if (const char* s = std::getenv("SIMONOVITS_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end == s || *end != '\0' || v < 1 || v > 1024) throw ConfigError("SIMONOVITS_THREADS must be in 1..1024");
        return static_cast<int>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs f(i) for i in [0, count) on `threads` workers. Results are written by
// index, so the output order never depends on scheduling.
template <class F>
void parallel_for(int count, int threads, F&& f) {
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto work = [&] {
        for (int i; (i = next++) < count;) {
            try {
                f(i);
            } catch (...) {
                std::lock_guard lk(err_mu);
                if (!err) err = std::current_exception();
                next = count;
            }
        }
    };
    threads = std::max(1, std::min(threads, count));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

inline std::string fmt_num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

struct ScanRow {
    int n = 0;
    double p = 0;
    double ratio = 0;  // p / p_threshold(n)
    int yes = 0, no = 0, indeterminate = 0;
    double witness_rate = 0;
    double mean_nodes = 0;
    bool flagged = false;  // every trial indeterminate
    double seconds = 0;    // wall time, reported outside the table
};

struct ScanResult {
    std::vector<ScanRow> rows;
    int threads = 1;
};

inline std::vector<double> p_values(const ExperimentConfig& cfg, const PatternProfile& prof, int n) {
    if (cfg.p_grid) return *cfg.p_grid;
    std::vector<double> ps;
    for (double x : cfg.p_multipliers) ps.push_back(std::min(1.0, x * p_threshold(prof, n)));
    return ps;
}

inline ScanResult scan_threshold(const ExperimentConfig& cfg) {
    validate(cfg);
    const Graph h = load_graph(cfg.pattern);
    const auto prof = analyze_pattern(h);
    TransversalOptions opt;
    opt.node_budget = cfg.node_budget;
    ScanResult res;
    res.threads = thread_count();
    RngStream root(cfg.seed, 0);
    std::uint64_t cell = 0;
    for (int n : cfg.n_grid) {
        const double pth = prof.m2 && prof.theta_h ? p_threshold(prof, n) : 0;
        for (double p : p_values(cfg, prof, n)) {
            const RngStream cell_rng = root.split(cell++);
            auto t0 = std::chrono::steady_clock::now();
            // the solver is deterministic, so repeated samples (common near
            // p = 0 or 1) are solved once
            std::vector<Graph> samples;
            std::vector<int> slot(cfg.trials);
            std::map<std::uint64_t, std::vector<int>> by_hash;
            for (int t = 0; t < cfg.trials; ++t) {
                RngStream rng = cell_rng.split(static_cast<std::uint64_t>(t));
                Graph g = sample_gnp(n, p, rng);
                auto& bucket = by_hash[graph_hash(g)];
                auto it = std::find_if(bucket.begin(), bucket.end(), [&](int i) { return samples[i] == g; });
                if (it != bucket.end()) {
                    slot[t] = *it;
                    continue;
                }
                slot[t] = static_cast<int>(samples.size());
                bucket.push_back(slot[t]);
                samples.push_back(std::move(g));
            }
            std::vector<SimonovitsVerdict> solved(samples.size());
            parallel_for(static_cast<int>(samples.size()), res.threads,
                         [&](int i) { solved[i] = is_simonovits(samples[i], h, prof, opt); });
            std::vector<SimonovitsVerdict> out;
            for (int t = 0; t < cfg.trials; ++t) out.push_back(solved[slot[t]]);
            ScanRow row;
            row.n = n;
            row.p = p;
            row.ratio = pth > 0 ? p / pth : 0;
            double nodes = 0;
            int witness = 0;
            for (auto& v : out) {
                row.yes += v.decision == Decision::yes;
                row.no += v.decision == Decision::no;
                row.indeterminate += v.decision == Decision::indeterminate;
                witness += v.kind == CertificateKind::free_edge_witness;
                nodes += static_cast<double>(v.nodes);
            }
            row.witness_rate = static_cast<double>(witness) / cfg.trials;
            row.mean_nodes = nodes / cfg.trials;
            row.flagged = row.indeterminate == cfg.trials;
            row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            res.rows.push_back(row);
        }
    }
    return res;
}

// mean_runtime is the mean count of solver search nodes, which is
// reproducible; wall-clock time goes to timing_json.
inline std::string scan_csv(const ScanResult& r) {
    std::ostringstream os;
    os << "n,p,p/p_H,yes,no,indeterminate,witness_rate,mean_runtime,flag\n";
    for (auto& x : r.rows)
        os << x.n << ',' << fmt_num(x.p) << ',' << fmt_num(x.ratio) << ',' << x.yes << ',' << x.no << ','
           << x.indeterminate << ',' << fmt_num(x.witness_rate) << ',' << fmt_num(x.mean_nodes) << ','
           << (x.flagged ? "all_indeterminate" : "") << '\n';
    return os.str();
}

inline nlohmann::json scan_json(const ScanResult& r) {
    auto rows = nlohmann::json::array();
    for (auto& x : r.rows)
        rows.push_back({{"n", x.n},
                        {"p", x.p},
                        {"p_over_pH", x.ratio},
                        {"yes", x.yes},
                        {"no", x.no},
                        {"indeterminate", x.indeterminate},
                        {"witness_rate", x.witness_rate},
                        {"mean_runtime", x.mean_nodes},
                        {"flagged", x.flagged}});
    return rows;
}

inline nlohmann::json timing_json(const ScanResult& r) {
    nlohmann::json j{{"threads", r.threads}, {"cells", nlohmann::json::array()}};
    for (auto& x : r.rows) j["cells"].push_back({{"n", x.n}, {"p", x.p}, {"seconds", x.seconds}});
    return j;
}

// A seeded switching instance on n >= 8 vertices with H = K3. Seeds with
// seed % 3 == 2 get a star Q with high residuals; the rest a matching of
// 1 to 3 edges coloured 0 with low residuals. The cut is a uniform member
// of the compatible delta-balanced family.
struct SwitchInstance {
    Graph g0;
    ColoredGraph q;
    Cut cut;
    CopyHypergraph resid;
    std::string kind;
};

inline SwitchInstance switch_instance(int n, double p, double delta, std::uint64_t seed, const CopyHypergraph& copies) {
    if (n < 8) throw InvalidInput("switching instances need n >= 8");
    const Graph h = complete_graph(3);
    RngStream rng(seed, 0);
    SwitchInstance si;
    Graph qg(n);
    if (seed % 3 == 2) {
        std::vector<int> colour(n, -1);
        colour[0] = 0;
        for (int w : {1, 2}) qg.add(0, w), colour[w] = 0;
        for (int w : {n / 2, n / 2 + 1}) qg.add(0, w), colour[w] = 1;
        si.q = ColoredGraph(qg, colour, 2, std::vector<int>{0});
        si.resid = residual_family(copies, si.q, ResidualVariant::high, h);
        si.kind = "high";
    } else {
        const int edges = 1 + static_cast<int>(seed % 3);
        for (int i = 0; i < edges; ++i) qg.add(2 * i, 2 * i + 1);
        si.q = ColoredGraph::monochrome(qg, 2);
        si.resid = residual_family(copies, si.q, ResidualVariant::low, h);
        si.kind = "low";
    }
    si.g0 = sample_gnp(n, p, rng) | si.q.graph;
    CutFamily fam(n, 2, delta, si.q);
    si.cut = fam.cut(rng.below(fam.size()));
    return si;
}

struct SwitchRun {
    std::string kind;
    SwitchTrace trace;
    TraceReport report;
};

struct SwitchSummary {
    std::vector<SwitchRun> runs;
    int violations = 0, deficit_increases = 0;
    std::map<std::string, int> stops;
    std::map<char, int> step_types;
};

inline SwitchSummary simulate_switching(int n, int runs, std::uint64_t seed, const SwitchParams& base, double edge_p) {
    SwitchSummary s;
    s.runs.resize(runs);
    const auto copies = enumerate_copies(complete_graph(3), complete_graph(n));
    parallel_for(runs, thread_count(), [&](int i) {
        const std::uint64_t sd = seed + static_cast<std::uint64_t>(i);
        auto si = switch_instance(n, edge_p, base.delta, sd, copies);
        SwitchParams prm = base;
        prm.seed = sd;
        auto tr = run_switching(si.g0, si.q, si.cut, si.resid, prm);
        auto rep = validate_trace(tr, si.q, tr.initial_deficit);
        s.runs[i] = {si.kind, std::move(tr), std::move(rep)};
    });
    for (auto& r : s.runs) {
        s.violations += static_cast<int>(r.report.violations.size());
        s.deficit_increases += r.report.deficit_increases;
        ++s.stops[r.trace.stop];
        for (auto& st : r.trace.steps) ++s.step_types[st.type];
    }
    return s;
}

inline nlohmann::json to_json(const SwitchSummary& s) {
    nlohmann::json j;
    j["violations"] = s.violations;
    j["deficit_increases"] = s.deficit_increases;
    j["stops"] = s.stops;
    nlohmann::json types = nlohmann::json::object();
    for (auto [t, c] : s.step_types) types[std::string(1, t)] = c;
    j["step_types"] = types;
    auto& runs = j["runs"] = nlohmann::json::array();
    for (auto& r : s.runs) runs.push_back({{"kind", r.kind}, {"trace", to_json(r.trace)}, {"validation", to_json(r.report)}});
    return j;
}

// Standard lemma report: parameters, per-cell results, and a verdict that is
// null when the check is descriptive (fitted constants only).
inline nlohmann::json verify_lemma(const ExperimentConfig& cfg) {
    validate(cfg);
    const std::string& id = cfg.lemma;
    nlohmann::json rep{{"lemma", id}, {"seed", cfg.seed}, {"constants", to_json(cfg.constants)}};
    nlohmann::json verdict = nullptr;
    auto all = [&](bool b) { verdict = verdict.is_null() ? b : verdict.get<bool>() && b; };
    const Graph h = load_graph(cfg.pattern);
    const auto prof = analyze_pattern(h);
    auto cells = nlohmann::json::array();
    auto for_cells = [&](auto&& f) {
        for (int n : cfg.n_grid)
            for (double p : p_values(cfg, prof, n)) cells.push_back(f(n, p));
    };

    if (id == "poisson") {
        for (auto& c : poisson_plugins()) {
            cells.push_back({{"mu", c.mu}, {"alpha", c.alpha}, {"value", c.value}, {"expected", c.expected}, {"pass", c.pass}});
            all(c.pass);
        }
    } else if (id == "janson") {
        auto r = janson_mc(cfg.instances, cfg.trials, cfg.seed);
        cells.push_back(to_json(r));
        all(r.holds());
    } else if (id == "uppertail") {
        const double e = std::exp(1.0);
        for (auto [a, l, want] : std::vector<std::tuple<double, int, double>>{
                 {1, 1, 1 / (3 * e)}, {7, 3, 1 / (7 * e)}, {0.5, 2, 0.5 / (5 * e)}}) {
            double v = upper_tail_rho(a, l);
            bool ok = std::abs(v - want) < 1e-15;
            cells.push_back({{"alpha", a}, {"ell", l}, {"rho", v}, {"expected", want}, {"pass", ok}});
            all(ok);
        }
        const auto hp = high_profile(h);
        const double rho = upper_tail_rho(cfg.constants.alpha, hp.ell);
        for_cells([&](int n, double p) {
            return nlohmann::json{{"n", n}, {"p", p}, {"ell", hp.ell}, {"rho", rho}, {"bound", to_json(upper_tail_bound(rho, n, p))}};
        });
    } else if (id == "fql") {
        // Q one edge inside S_1, the other vertices split evenly
        for_cells([&](int n, double p) {
            const int r = prof.r;
            Graph q(n);
            q.add(0, 1);
            std::vector<int> a(n);
            for (int v = 0; v < n; ++v) a[v] = v < 2 ? 0 : (v - 2) * r / (n - 2);
            nlohmann::json c{{"n", n}, {"p", p}};
            try {
                auto f = fql_check(h, q, PartTuple::from_assignment(a, r), p, cfg.constants.kappa);
                c["result"] = to_json(f);
                all(f.count_holds);
            } catch (const Inapplicable& e) {
                c["inapplicable"] = e.what();
            }
            return c;
        });
    } else if (id == "high") {
        for_cells([&](int n, double p) {
            const int r = prof.r;
            RngStream rng(cfg.seed, static_cast<std::uint64_t>(n));
            Graph f = sample_gnp(n, p, rng);
            std::vector<int> a(n);
            for (int v = 0; v < n; ++v) a[v] = v % r;
            Cut cut = Cut::from_assignment(a, r);
            auto qf = construct_QF(f, cut, QParams{n, p, cfg.constants.kappa, cfg.constants.eta});
            nlohmann::json c{{"n", n}, {"p", p}, {"q_kind", to_string(qf.kind)}};
            if (qf.kind != QKind::QH) {
                c["inapplicable"] = "the construction produced a low-degree Q";
                return c;
            }
            c["result"] = to_json(high_check(f, qf.q, h, cut, p, cfg.constants.eta));
            return c;
        });
    } else if (id == "balanced") {
        for_cells([&](int n, double p) {
            auto b = balanced_condition_check(prof, n, p, cfg.constants.C_theta);
            if (b.applicable) all(b.all_hold && b.strict_holds);
            return nlohmann::json{{"n", n}, {"p", p}, {"result", to_json(b)}};
        });
    } else if (id == "sum") {
        for_cells([&](int n, double p) {
            auto s = sufficiency_sum(n, p, cfg.constants.beta, 1.0);
            return nlohmann::json{{"n", n}, {"p", p}, {"c", 1.0}, {"result", to_json(s)}};
        });
    } else if (id == "pif-balanced") {
        for_cells([&](int n, double p) {
            return nlohmann::json{{"n", n}, {"p", p}, {"result", to_json(pif_balanced(h, n, p, cfg.delta, cfg.trials, cfg.seed))}};
        });
    } else if (id == "typicality") {
        for_cells([&](int n, double p) {
            auto copies = all_copies(h, n);
            std::map<std::string, int> fails;
            int held = 0;
            for (int t = 0; t < cfg.trials; ++t) {
                TypicalityParams prm;
                prm.p = p;
                prm.r = prof.r;
                prm.copies = &copies;
                auto tr = typicality_report(sample_gnp(n, p, cfg.seed, static_cast<std::uint64_t>(t)), h, prm);
                held += tr.holds();
                for (auto& it : tr.items)
                    if (it.evaluated && !it.holds) ++fails[it.name];
            }
            return nlohmann::json{{"n", n}, {"p", p}, {"trials", cfg.trials}, {"all_hold_fraction", static_cast<double>(held) / cfg.trials},
                                  {"failures_by_item", fails}};
        });
    } else {
        throw ConfigError("unknown lemma id '" + id + "'");
    }
    rep["cells"] = cells;
    rep["pass"] = verdict;
    return rep;
}

// Temp file in the same directory, then rename, so readers never see a
// partial file.
inline void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw InvalidInput("cannot write " + tmp.string());
        f << content;
        f.flush();
        if (!f) throw InvalidInput("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

struct RunOutput {
    int exit_code = 0;
    std::string content;
    std::optional<nlohmann::json> timing;
};

// check-simonovits exits 0 for yes, 3 for no, 4 for indeterminate.
inline int exit_code(Decision d) {
    switch (d) {
        case Decision::yes: return 0;
        case Decision::no: return 3;
        default: return 4;
    }
}

inline RunOutput run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    RunOutput out;
    if (cfg.command == "scan-threshold") {
        auto res = scan_threshold(cfg);
        out.content = cfg.format == "csv" ? scan_csv(res) : scan_json(res).dump(2) + "\n";
        out.timing = timing_json(res);
    } else if (cfg.command == "verify-lemma") {
        out.content = verify_lemma(cfg).dump(2) + "\n";
    } else if (cfg.command == "simulate-switching") {
        SwitchParams prm;
        prm.m = cfg.m;
        prm.L = cfg.L;
        prm.delta = cfg.delta;
        prm.alpha = cfg.constants.alpha;
        const double p = cfg.p_grid ? cfg.p_grid->front() : 0.5;
        prm.p = p;
        auto s = simulate_switching(cfg.n_grid.front(), cfg.trials, cfg.seed, prm, p);
        out.content = to_json(s).dump(2) + "\n";
        out.exit_code = s.violations == 0 ? 0 : 1;
    } else if (cfg.command == "check-simonovits") {
        const Graph g = load_graph(cfg.graph), h = load_graph(cfg.pattern);
        TransversalOptions opt;
        opt.node_budget = cfg.node_budget;
        auto v = is_simonovits(g, h, analyze_pattern(h), opt);
        out.content = to_json(v).dump(2) + "\n";
        out.exit_code = exit_code(v.decision);
    } else {
        out.content = to_json(analyze_pattern(load_graph(cfg.pattern))).dump(2) + "\n";
    }
    return out;
}

inline void emit(const ExperimentConfig& cfg, const RunOutput& out, std::ostream& stdout_) {
    if (cfg.output.empty()) {
        stdout_ << out.content;
        return;
    }
    write_atomic(cfg.output, out.content);
    if (out.timing) write_atomic(cfg.output + ".timing.json", out.timing->dump(2) + "\n");
}

// Exit codes: 0 done (or the command's own code), 2 config error, 5 guard
// refusal, 1 anything else.
inline int run_config(const std::string& path, std::ostream& out, std::ostream& err) {
    try {
        auto cfg = load_config(path);
        auto res = run_experiment(cfg);
        emit(cfg, res, out);
        return res.exit_code;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const TooLarge& e) {
        err << "refused: " << e.what() << '\n';
        return 5;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace simonovits

#pragma once

#include <algorithm>
#include <bit>
#include <tuple>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "extremal.hpp"
#include "hypergraph.hpp"
#include "maxcut.hpp"
#include "pattern.hpp"
#include "random.hpp"
#include "structure.hpp"

namespace simonovits {

struct FqlReport {
    bool vacuous = false;
    long long count = 0;           // |F_Q^low[ext(S)]|
    long long n_plus = 0;          // N(H, K_S^+)
    double factor = 0;             // 1 - v_H^2 Delta(Q) / (|S_1| - v_H)
    double count_bound = 0;        // factor * e(Q) * N(H, K_S^+)
    bool count_holds = true;
    double mu = 0, delta = 0;
    double pi_target = 0;          // pi_H e(Q) (min |S_i|)^{v_H-2} p^{e_H-1}
    double pi_ratio = 0;           // mu / pi_target
    double c_low_fit = 0;          // (Delta/mu) log n / (kappa n^{v_H-2} p^{e_H-1})
};

inline nlohmann::json to_json(const FqlReport& r) {
    return {{"vacuous", r.vacuous},     {"count", r.count},       {"n_plus", r.n_plus},
            {"factor", r.factor},       {"count_bound", r.count_bound}, {"count_holds", r.count_holds},
            {"mu", r.mu},               {"delta", r.delta},       {"pi_target", r.pi_target},
            {"pi_ratio", r.pi_ratio},   {"c_low_fit", r.c_low_fit}};
}

// Counting lower bound for the low-degree residual family over ext(S), with
// V(Q) ⊆ S_1, plus the descriptive mu and Delta/mu quantities.
inline FqlReport fql_check(const Graph& h, const Graph& q, const PartTuple& s, double p, double kappa = 0.05) {
    const int n = q.n();
    if (s.n != n) throw InvalidInput("S and Q live on different vertex sets");
    const int r = chromatic_number(h) - 1;
    if (s.r() != r) throw InvalidInput("S must have chi(H) - 1 parts");
    auto a = s.assignment();
    for (int v = 0; v < n; ++v)
        if (q.degree(v) > 0 && a[v] != 0) throw InvalidInput("V(Q) must lie in S_1");
    FqlReport rep;
    if (q.edge_count() == 0) {
        rep.vacuous = true;
        return rep;
    }
    const int vh = h.n(), eh = h.edge_count();
    const int s1 = static_cast<int>(s.parts[0].size());
    if (s1 <= vh) throw Inapplicable("need |S_1| > v_H");
    auto copies = enumerate_copies(h, complete_graph(n));
    auto fam = residual_family(copies, ColoredGraph::monochrome(q, r, 0), ResidualVariant::low, h);
    Graph ext = ext_int(s).first;
    auto fs = induce(fam, ext);
    rep.count = static_cast<long long>(fs.size());
    Graph kplus = ext;
    kplus.add(s.parts[0][0], s.parts[0][1]);
    rep.n_plus = count_copies(h, kplus);
    rep.factor = 1 - static_cast<double>(vh * vh * q.max_degree()) / (s1 - vh);
    rep.count_bound = rep.factor * q.edge_count() * static_cast<double>(rep.n_plus);
    rep.count_holds = rep.count >= rep.count_bound - 1e-9;
    rep.mu = janson_moments(fs, p).mu;
    rep.delta = janson_moments(fam, p).delta;
    std::size_t smin = s.parts[0].size();
    for (auto& part : s.parts) smin = std::min(smin, part.size());
    rep.pi_target = to_double(pi_h(h)) * q.edge_count() * std::pow(static_cast<double>(smin), vh - 2) *
                    std::pow(p, eh - 1);
    rep.pi_ratio = rep.pi_target > 0 ? rep.mu / rep.pi_target : 0;
    const double scale = kappa * std::pow(n, vh - 2) * std::pow(p, eh - 1) / std::log(static_cast<double>(n));
    rep.c_low_fit = rep.mu > 0 && scale > 0 ? rep.delta / rep.mu / scale : 0;
    return rep;
}

struct HighReport {
    long long family_size = 0;
    long long ext_size = 0;
    double mu = 0, delta = 0;
    double base1 = 0, base2 = 0;  // the two minima on the right-hand sides
    double c_high_mu = 0;         // mu / base1
    double c_high_ratio = 0;      // (mu^2 / Delta) / base2, infinite when Delta = 0
    NeighbourhoodResult neighbourhood;
};

inline nlohmann::json to_json(const HighReport& r) {
    return {{"family_size", r.family_size},
            {"ext_size", r.ext_size},
            {"mu", r.mu},
            {"delta", r.delta},
            {"base_mu", r.base1},
            {"base_ratio", r.base2},
            {"c_high_mu", r.c_high_mu},
            {"c_high_ratio", std::isfinite(r.c_high_ratio) ? nlohmann::json(r.c_high_ratio) : nlohmann::json("inf")},
            {"neighbourhood", to_json(r.neighbourhood)}};
}

// Fitted constants for the high-degree family built from a QH instance inside
// the host g. lambda is the exponent in the middle term of the ratio bound.
inline HighReport high_check(const Graph& g, const ColoredGraph& q, const Graph& h, const PartTuple& s, double p,
                             double eta, double lambda = 0) {
    const int n = g.n();
    auto hp = high_profile(h);
    HighReport rep;
    rep.neighbourhood = neighbourhood_hypergraph(g, q, hp.l, eta, p);
    auto fam = build_high_family(q, h, hp, rep.neighbourhood.g);
    auto fs = induce(fam, ext_int(s).first);
    rep.family_size = static_cast<long long>(fam.size());
    rep.ext_size = static_cast<long long>(fs.size());
    rep.mu = janson_moments(fs, p).mu;
    rep.delta = janson_moments(fam, p).delta;
    const double vh = h.n(), eh = h.edge_count(), k = q.k();
    const double t1 = k * std::pow(n, vh - 1) * std::pow(p, eh), t3 = n * static_cast<double>(n) * p;
    const double t2 = k * std::pow(n, 1 + lambda) * p;
    rep.base1 = std::min(t1, t3);
    rep.base2 = std::min({t1, t2, t3});
    rep.c_high_mu = rep.base1 > 0 ? rep.mu / rep.base1 : 0;
    rep.c_high_ratio = rep.delta > 0 ? rep.mu * rep.mu / rep.delta / rep.base2 : std::numeric_limits<double>::infinity();
    return rep;
}

struct PifReport {
    int n = 0;
    double p = 0, delta = 0;
    int seeds = 0;
    int balanced = 0;
    std::vector<int> sizes_first_part;  // |V_1| of the canonical cut, per seed
    double fraction() const { return seeds ? static_cast<double>(balanced) / seeds : 0; }
};

inline nlohmann::json to_json(const PifReport& r) {
    return {{"n", r.n},           {"p", r.p},         {"delta", r.delta},
            {"seeds", r.seeds},   {"balanced", r.balanced}, {"fraction", r.fraction()},
            {"first_part_sizes", r.sizes_first_part}};
}

// Fraction of sampled G(n,p) whose largest H-free subgraph has a
// delta-balanced canonical cut.
inline PifReport pif_balanced(const Graph& h, int n, double p, double delta, int seeds, std::uint64_t seed) {
    const int r = chromatic_number(h) - 1;
    if (r < 2) throw Inapplicable("canonical cuts need r >= 2");
    PifReport rep{n, p, delta, seeds, 0, {}};
    for (int s = 0; s < seeds; ++s) {
        RngStream rng(seed, static_cast<std::uint64_t>(s));
        Graph g = sample_gnp(n, p, rng);
        Graph f = max_H_free(g, h).witness;
        auto cut = canonical_cut(f, r);
        rep.sizes_first_part.push_back(static_cast<int>(cut.parts[0].size()));
        rep.balanced += is_delta_balanced(cut, delta);
    }
    return rep;
}

struct JansonMcInstance {
    int edges = 0;
    double p = 0;
    double mu = 0, delta = 0;
    double mc_mu = 0, mc_mu_se = 0;        // sample mean and standard error of X
    double mc_delta = 0, mc_delta_se = 0;  // same for intersecting present pairs
    bool moments_ok = true;                // both within the sigma band
    double bound = 1;                      // bound on Pr(nu <= gamma^2 mu)
    bool bound_clipped = true;
    double est = 0, est_se = 0;            // empirical Pr(nu <= gamma^2 mu)
    bool dominated = true;                 // est <= bound + sigmas * se, when the bound is unclipped
};

struct JansonMcReport {
    int trials = 0;
    double gamma = 0.1;
    double sigmas = 3;
    std::vector<JansonMcInstance> instances;
    int bound_checks = 0, bound_failures = 0;
    int moment_checks = 0, moment_outliers = 0;
    // outliers allowed for the moment comparisons: mean plus three sd of
    // Binomial(moment_checks, two-sided tail mass of the sigma band)
    double moment_allowance = 0;
    bool holds() const { return bound_failures == 0 && moment_outliers <= moment_allowance; }
};

inline nlohmann::json to_json(const JansonMcReport& r) {
    nlohmann::json j{{"trials", r.trials},
                     {"gamma", r.gamma},
                     {"sigmas", r.sigmas},
                     {"instances", r.instances.size()},
                     {"bound_checks", r.bound_checks},
                     {"bound_failures", r.bound_failures},
                     {"moment_checks", r.moment_checks},
                     {"moment_outliers", r.moment_outliers},
                     {"moment_allowance", r.moment_allowance},
                     {"holds", r.holds()}};
    return j;
}

namespace detail {

// nu of every sub-family of at most 16 sets, indexed by bitmask.
inline std::vector<int> matching_numbers(const std::vector<std::uint32_t>& sets) {
    const int m = static_cast<int>(sets.size());
    if (m > 16) throw TooLarge("matching table limited to 16 sets");
    std::vector<std::uint32_t> conflict(m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && (sets[i] & sets[j])) conflict[i] |= 1u << j;
    std::vector<int> nu(std::size_t{1} << m, 0);
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        const int i = std::countr_zero(mask);
        const std::uint32_t rest = mask & (mask - 1);
        nu[mask] = std::max(nu[rest], 1 + nu[rest & ~conflict[i]]);
    }
    return nu;
}

inline CopyHypergraph random_hypergraph(RngStream& rng, int ground, int max_edges, int max_size) {
    CopyHypergraph fam{0, ground, {}, {}};
    const int m = 1 + static_cast<int>(rng.below(max_edges));
    for (int i = 0; i < m; ++i) {
        const int s = 1 + static_cast<int>(rng.below(max_size));
        std::vector<int> a;
        while (static_cast<int>(a.size()) < s) {
            int x = static_cast<int>(rng.below(ground));
            if (std::find(a.begin(), a.end(), x) == a.end()) a.push_back(x);
        }
        std::sort(a.begin(), a.end());
        fam.edges.push_back(a);
    }
    fam.normalize();
    return fam;
}

} // namespace detail

// Monte Carlo check of the matching lower-tail corollary on random small
// hypergraphs, plus a moment check of mu and Delta.
inline JansonMcReport janson_mc(int instances, int trials, std::uint64_t seed, std::vector<double> ps = {0.3, 0.5, 0.7},
                                double gamma = 0.1, int ground = 10, int max_edges = 12, int max_size = 4) {
    if (instances < 1 || trials < 2 || ps.empty()) throw InvalidInput("need instances >= 1, trials >= 2, some p");
    if (ground > 32 || max_size > ground) throw InvalidInput("ground set limited to 32 points");
    JansonMcReport rep;
    rep.trials = trials;
    rep.gamma = gamma;
    RngStream top(seed, 0);
    for (int inst = 0; inst < instances; ++inst) {
        auto gen = top.split(static_cast<std::uint64_t>(inst));
        auto fam = detail::random_hypergraph(gen, ground, max_edges, max_size);
        std::vector<std::uint32_t> sets;
        for (auto& e : fam.edges) {
            std::uint32_t s = 0;
            for (int x : e) s |= 1u << x;
            sets.push_back(s);
        }
        const auto nu = detail::matching_numbers(sets);
        const int m = static_cast<int>(sets.size());
        for (std::size_t pi = 0; pi < ps.size(); ++pi) {
            const double p = ps[pi];
            JansonMcInstance r;
            r.edges = m;
            r.p = p;
            auto jm = janson_moments(fam, p);
            r.mu = jm.mu;
            r.delta = jm.delta;
            auto cor = janson_corollaries(jm.mu, jm.delta, gamma);
            r.bound = cor.bound34.prob;
            r.bound_clipped = cor.bound34.clipped;
            RngStream rng = gen.split(pi);
            double sx = 0, sxx = 0, sy = 0, syy = 0;
            int hits = 0;
            for (int t = 0; t < trials; ++t) {
                std::uint32_t vp = 0;
                for (int x = 0; x < ground; ++x)
                    if (rng.bernoulli(p)) vp |= 1u << x;
                std::uint32_t present = 0;
                for (int i = 0; i < m; ++i)
                    if ((sets[i] & vp) == sets[i]) present |= 1u << i;
                double x = std::popcount(present), y = 0;
                for (int i = 0; i < m; ++i)
                    if (present >> i & 1u)
                        for (int j = i + 1; j < m; ++j)
                            if ((present >> j & 1u) && (sets[i] & sets[j])) ++y;
                sx += x, sxx += x * x, sy += y, syy += y * y;
                hits += nu[present] <= gamma * gamma * jm.mu;
            }
            auto se = [&](double s, double ss) {
                double mean = s / trials;
                double var = std::max(0.0, (ss - trials * mean * mean) / (trials - 1));
                return std::sqrt(var / trials);
            };
            r.mc_mu = sx / trials, r.mc_mu_se = se(sx, sxx);
            r.mc_delta = sy / trials, r.mc_delta_se = se(sy, syy);
            auto within = [&](double exact, double est, double s) {
                ++rep.moment_checks;
                bool ok = std::abs(est - exact) <= rep.sigmas * s + 1e-12;
                rep.moment_outliers += !ok;
                return ok;
            };
            bool ok_mu = within(r.mu, r.mc_mu, r.mc_mu_se);
            bool ok_delta = within(r.delta, r.mc_delta, r.mc_delta_se);
            r.moments_ok = ok_mu && ok_delta;
            r.est = static_cast<double>(hits) / trials;
            r.est_se = std::sqrt(std::max(r.est * (1 - r.est), 1e-12) / trials);
            if (!r.bound_clipped) {
                ++rep.bound_checks;
                r.dominated = r.est <= r.bound + rep.sigmas * r.est_se;
                rep.bound_failures += !r.dominated;
            }
            rep.instances.push_back(r);
        }
    }
    const double tail = std::erfc(rep.sigmas / std::sqrt(2.0));
    const double k = rep.moment_checks;
    rep.moment_allowance = k * tail + 3 * std::sqrt(k * tail * (1 - tail));
    return rep;
}

struct PluginCheck {
    double mu = 0, alpha = 0;
    double value = 0, expected = 0;
    bool pass = false;
};

// The three deterministic plug-ins of the Poisson lower tail.
inline std::vector<PluginCheck> poisson_plugins() {
    std::vector<PluginCheck> out;
    for (auto [mu, a, want, tol] : std::vector<std::tuple<double, double, double, double>>{
             {2, 1, 1.0, 1e-15}, {3, 0, std::exp(-3.0), 1e-15}, {10, 0.1, 1.2341e-3, 1e-7}}) {
        double v = poisson_lower_tail(mu, a).prob;
        out.push_back({mu, a, v, want, std::abs(v - want) <= tol});
    }
    return out;
}

} // namespace simonovits

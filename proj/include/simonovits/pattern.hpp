#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coloring.hpp"
#include "embedding.hpp"
#include "graph.hpp"
#include "rational.hpp"

namespace simonovits {

struct TwoDensity {
    Rational m2;
    std::vector<Graph> witnesses;  // up to isomorphism
    bool strictly_balanced = false;
};

struct EdgeCriticality {
    bool critical = false;
    std::optional<Edge> witness;
};

struct PatternProfile {
    Graph h;
    int v_h = 0, e_h = 0;
    int chi = 0, r = 0;
    bool edge_critical = false;
    std::optional<Edge> critical_edge;
    std::optional<Rational> m2;
    std::vector<Graph> m2_witnesses;
    bool strictly_2_balanced = false;
    std::optional<Rational> pi_h;
    std::optional<double> theta_h;
};

// max over subgraphs with >= 2 edges of (e-1)/(v-2). Only induced subgraphs
// can be maximal, so vertex subsets suffice.
inline TwoDensity two_density(const Graph& h) {
    if (h.edge_count() < 2) throw Inapplicable("2-density undefined for fewer than two edges");
    const int k = h.n();
    if (k > 20) throw TooLarge("2-density enumeration limited to 20 vertices");
    TwoDensity out;
    bool have = false;
    std::vector<std::vector<int>> best_sets;
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        int v = std::popcount(mask);
        if (v < 3) continue;
        std::vector<int> verts;
        for (int i = 0; i < k; ++i)
            if (mask >> i & 1u) verts.push_back(i);
        Graph f = h.induced(verts);
        if (f.edge_count() < 2) continue;
        Rational d(f.edge_count() - 1, v - 2);
        if (!have || d > out.m2) {
            out.m2 = d;
            best_sets.clear();
            have = true;
        }
        if (d == out.m2) best_sets.push_back(verts);
    }
    for (auto& s : best_sets) {
        Graph f = h.induced(s);
        bool dup = false;
        for (auto& w : out.witnesses)
            if (is_isomorphic(w, f)) {
                dup = true;
                break;
            }
        if (!dup) out.witnesses.push_back(f);
    }
    out.strictly_balanced = best_sets.size() == 1 && static_cast<int>(best_sets[0].size()) == k;
    return out;
}

inline EdgeCriticality is_edge_critical(const Graph& h) {
    if (h.edge_count() < 1) throw InvalidInput("edge-criticality needs at least one edge");
    const int chi = chromatic_number(h);
    for (auto e : h.edges()) {
        Graph g = h;
        g.remove(e.first, e.second);
        if (chromatic_number(g) < chi) return {true, e};
    }
    return {false, std::nullopt};
}

// Copies of h in host, as an automorphism quotient of the embedding count.
inline long long count_copies(const Graph& h, const Graph& host) {
    return count_embeddings(h, host) / automorphism_count(h);
}

struct PiComputation {
    Rational pi;
    std::vector<Rational> coefficients;
    std::vector<long long> nodes, counts;
    long long heldout_node = 0, heldout_count = 0;
};

// Leading coefficient (degree v_h-2) of m -> N(h, K_r(m)^+).
inline PiComputation pi_h_detailed(const Graph& h) {
    const int chi = chromatic_number(h);
    if (chi < 3) throw Inapplicable("pi_H needs a nonbipartite pattern");
    if (!is_edge_critical(h).critical) throw Inapplicable("pi_H needs an edge-critical pattern");
    const int r = chi - 1, v = h.n();
    PiComputation out;
    std::vector<Rational> xs, ys;
    for (int m = v; m <= 2 * v - 2; ++m) {
        long long c = count_copies(h, blowup_plus(r, m));
        out.nodes.push_back(m);
        out.counts.push_back(c);
        xs.emplace_back(m);
        ys.emplace_back(c);
    }
    out.coefficients = lagrange_coefficients(xs, ys);
    out.heldout_node = 2 * v - 1;
    out.heldout_count = count_copies(h, blowup_plus(r, 2 * v - 1));
    if (eval_poly(out.coefficients, Rational(out.heldout_node)) != out.heldout_count)
        throw InternalConsistency("copy count is not a polynomial of degree <= v_H-2");
    out.pi = out.coefficients.back();
    return out;
}

inline Rational pi_h(const Graph& h) { return pi_h_detailed(h).pi; }

inline PatternProfile analyze_pattern(const Graph& h) {
    PatternProfile p;
    p.h = h;
    p.v_h = h.n();
    p.e_h = h.edge_count();
    p.chi = chromatic_number(h);
    p.r = p.chi - 1;
    if (p.e_h >= 1) {
        auto ec = is_edge_critical(h);
        p.edge_critical = ec.critical;
        p.critical_edge = ec.witness;
    }
    if (p.e_h >= 2) {
        auto td = two_density(h);
        p.m2 = td.m2;
        p.m2_witnesses = td.witnesses;
        p.strictly_2_balanced = td.strictly_balanced;
    }
    if (p.edge_critical && p.chi >= 3) {
        p.pi_h = pi_h(h);
        if (p.m2) {
            Rational base = (Rational(2) - Rational(1) / *p.m2) * Rational(BigInt(pow(BigInt(p.r), p.v_h - 2))) / *p.pi_h;
            p.theta_h = std::pow(to_double(base), 1.0 / (p.e_h - 1));
        }
    }
    return p;
}

inline double theta_h(const PatternProfile& p) {
    if (!p.theta_h) throw Inapplicable("theta_H needs m2 and pi_H");
    return *p.theta_h;
}

inline double p_threshold(const PatternProfile& p, int n, double eps = 0.0) {
    if (n < p.v_h) throw InvalidInput("p_threshold needs n >= v_H");
    if (eps < 0) throw InvalidInput("eps must be nonnegative");
    const double m2 = to_double(*p.m2);
    double val = (theta_h(p) + eps) * std::pow(static_cast<double>(n), -1.0 / m2) *
                 std::pow(std::log(static_cast<double>(n)), 1.0 / (p.e_h - 1));
    return std::clamp(val, 0.0, 1.0);
}

// Peeling constant (3r-4)/(3r-1).
inline Rational peeling_constant(int r) { return Rational(3 * r - 4, 3 * r - 1); }

// ceil((1 - 3/(4(r-1)(3r-1))) n) + 1, in integer arithmetic.
inline long long dense_min_degree_bound(int r, long long n) {
    if (r < 2) throw InvalidInput("r must be at least 2");
    const long long d = 4LL * (r - 1) * (3 * r - 1);
    const long long num = (d - 3) * n;
    return (num + d - 1) / d + 1;
}

inline long long dense_min_degree_bound(const PatternProfile& p, long long n) {
    return dense_min_degree_bound(p.r, n);
}

inline nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json e = nlohmann::json::array();
    for (auto [u, v] : g.edges()) e.push_back({u, v});
    return {{"n", g.n()}, {"edges", e}};
}

inline nlohmann::json to_json(const PatternProfile& p) {
    nlohmann::json j;
    j["v_h"] = p.v_h;
    j["e_h"] = p.e_h;
    j["chi"] = p.chi;
    j["r"] = p.r;
    j["edge_critical"] = p.edge_critical;
    if (p.critical_edge) j["critical_edge"] = {p.critical_edge->first, p.critical_edge->second};
    j["m2"] = p.m2 ? nlohmann::json(to_string(*p.m2)) : nlohmann::json(nullptr);
    j["m2_witnesses"] = nlohmann::json::array();
    for (auto& w : p.m2_witnesses) j["m2_witnesses"].push_back(graph_to_json(w));
    j["strictly_2_balanced"] = p.strictly_2_balanced;
    j["pi_h"] = p.pi_h ? nlohmann::json(to_string(*p.pi_h)) : nlohmann::json(nullptr);
    j["theta_h"] = p.theta_h ? nlohmann::json(*p.theta_h) : nlohmann::json(nullptr);
    return j;
}

} // namespace simonovits

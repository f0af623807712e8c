#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "cut.hpp"
#include "graph.hpp"

namespace simonovits {

namespace detail {

// DSATUR-ordered backtracking. fixed[v] >= 0 pins a colour.
class Colorer {
public:
    Colorer(const Graph& g, int k, const std::vector<int>& fixed)
        : g_(g), k_(k), col_(g.n(), -1), used_(g.n(), std::vector<int>(k, 0)) {
        pinned_ = false;
        for (int v = 0; v < g.n() && v < static_cast<int>(fixed.size()); ++v)
            if (fixed[v] >= 0) {
                pinned_ = true;
                if (fixed[v] >= k || !can(v, fixed[v])) {
                    ok_ = false;
                    return;
                }
                put(v, fixed[v]);
            }
    }

    std::optional<std::vector<int>> run() {
        if (!ok_) return std::nullopt;
        if (solve()) return col_;
        return std::nullopt;
    }

private:
    bool can(int v, int c) const { return used_[v][c] == 0; }
    void put(int v, int c) {
        col_[v] = c;
        g_.row(v).for_each([&](int w) { ++used_[w][c]; });
        ++placed_;
        max_used_ = std::max(max_used_, c);
    }
    void take(int v) {
        int c = col_[v];
        g_.row(v).for_each([&](int w) { --used_[w][c]; });
        col_[v] = -1;
        --placed_;
    }

    bool solve() {
        if (placed_ == g_.n()) return true;
        int best = -1, best_sat = -1, best_deg = -1;
        for (int v = 0; v < g_.n(); ++v) {
            if (col_[v] >= 0) continue;
            int sat = 0;
            for (int c = 0; c < k_; ++c) sat += used_[v][c] > 0;
            int deg = g_.degree(v);
            if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
                best = v;
                best_sat = sat;
                best_deg = deg;
            }
        }
        if (best_sat == k_) return false;
        const int saved_max = max_used_;
        // without pins, colours beyond max_used_+1 are symmetric
        const int limit = pinned_ ? k_ : std::min(k_, max_used_ + 2);
        for (int c = 0; c < limit; ++c) {
            if (!can(best, c)) continue;
            put(best, c);
            if (solve()) return true;
            take(best);
            max_used_ = saved_max;
        }
        return false;
    }

    const Graph& g_;
    int k_;
    std::vector<int> col_;
    std::vector<std::vector<int>> used_;
    int placed_ = 0;
    int max_used_ = -1;
    bool pinned_ = false;
    bool ok_ = true;
};

} // namespace detail

inline std::optional<std::vector<int>> find_coloring(const Graph& g, int k,
                                                     const std::vector<int>& fixed = {}) {
    if (k <= 0) {
        if (g.n() == 0) return std::vector<int>{};
        return std::nullopt;
    }
    return detail::Colorer(g, k, fixed).run();
}

inline bool is_r_colorable(const Graph& g, int r) { return find_coloring(g, r).has_value(); }

inline int chromatic_number(const Graph& g) {
    if (g.n() == 0) return 0;
    if (g.edge_count() == 0) return 1;
    int k = 2;
    while (!is_r_colorable(g, k)) ++k;
    return k;
}

// An [r]-coloured graph Q on [n]. colour[v] = -1 marks vertices outside V(Q).
struct ColoredGraph {
    Graph graph;
    std::vector<int> colour;
    int r = 2;
    std::optional<std::vector<int>> centres;

    ColoredGraph() = default;
    ColoredGraph(Graph g, std::vector<int> c, int r_, std::optional<std::vector<int>> x = std::nullopt)
        : graph(std::move(g)), colour(std::move(c)), r(r_), centres(std::move(x)) {
        validate();
    }

    // Every vertex of Q coloured `k` (QL convention uses class 0).
    static ColoredGraph monochrome(const Graph& g, int r, int k = 0) {
        std::vector<int> c(g.n(), -1);
        for (int v = 0; v < g.n(); ++v)
            if (g.degree(v) > 0) c[v] = k;
        return ColoredGraph(g, c, r);
    }

    int n() const { return graph.n(); }

    void validate() const {
        if (static_cast<int>(colour.size()) != graph.n()) throw InvalidInput("colour vector size mismatch");
        for (int v = 0; v < graph.n(); ++v) {
            if (colour[v] >= r || colour[v] < -1) throw InvalidInput("colour out of range");
            if (graph.degree(v) > 0 && colour[v] < 0) throw InvalidInput("uncoloured vertex of Q");
        }
        if (centres) {
            Bits x(graph.n());
            for (int v : *centres) x.set(v);
            for (auto [u, v] : graph.edges()) {
                bool a = x.test(u), b = x.test(v);
                if (a && b) throw InvalidInput("centres not independent");
                if (!a && !b) throw InvalidInput("centres do not dominate every edge");
            }
        }
    }

    std::vector<int> vertices() const {
        std::vector<int> out;
        for (int v = 0; v < graph.n(); ++v)
            if (colour[v] >= 0) out.push_back(v);
        return out;
    }

    std::vector<int> colour_class(int k) const {
        std::vector<int> out;
        for (int v = 0; v < graph.n(); ++v)
            if (colour[v] == k) out.push_back(v);
        return out;
    }

    int k() const { return centres ? static_cast<int>(centres->size()) : 0; }

    // V^k(Q) ⊆ V_k for every k.
    bool compatible_with(const std::vector<int>& assignment) const {
        for (int v = 0; v < graph.n(); ++v)
            if (colour[v] >= 0 && assignment[v] != colour[v]) return false;
        return true;
    }
};

} // namespace simonovits

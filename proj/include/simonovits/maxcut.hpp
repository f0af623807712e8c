#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "cut.hpp"
#include "graph.hpp"

namespace simonovits {

enum class CutMode { exact, local };

struct CutResult {
    Cut cut;
    int value = 0;
};

namespace detail {

// Branch-and-bound over part assignments. With `symmetric`, part labels are
// interchangeable and a vertex may only open the next unused part.
class CutSearch {
public:
    CutSearch(const Graph& g, int r, bool symmetric) : g_(g), r_(r), symmetric_(symmetric) {
        const int n = g.n();
        order_.resize(n);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
        pos_.assign(n, 0);
        for (int i = 0; i < n; ++i) pos_[order_[i]] = i;
        assign_.assign(n, -1);
        cnt_.assign(n, std::vector<int>(r, 0));
        assigned_deg_.assign(n, 0);
        // edges whose later endpoint (in order) is at position i
        later_edges_.assign(n + 1, 0);
        for (auto [u, v] : g.edges()) ++later_edges_[std::max(pos_[u], pos_[v])];
        for (int i = n - 1; i >= 0; --i) later_edges_[i] += later_edges_[i + 1];
    }

    // Best value; stores one optimal assignment.
    int maximize() {
        best_ = -1;
        collect_ = false;
        go(0, 0, -1);
        return best_;
    }

    // All assignments with value >= target.
    std::vector<std::vector<int>> all_at_least(int target) {
        best_ = target;
        collect_ = true;
        found_.clear();
        go(0, 0, -1);
        return found_;
    }

    const std::vector<int>& best_assignment() const { return best_assign_; }

private:
    int bound(int i, int cur) const {
        int b = cur;
        for (int j = i; j < g_.n(); ++j) {
            int v = order_[j];
            int mn = *std::min_element(cnt_[v].begin(), cnt_[v].end());
            b += assigned_deg_[v] - mn;
        }
        // edges with both endpoints unassigned
        int both = later_edges_[i];
        for (int j = i; j < g_.n(); ++j) both -= assigned_deg_[order_[j]];
        return b + both;
    }

    void go(int i, int cur, int max_used) {
        const int n = g_.n();
        if (i == n) {
            if (collect_) {
                if (cur >= best_) found_.push_back(assign_);
            } else if (cur > best_) {
                best_ = cur;
                best_assign_ = assign_;
            }
            return;
        }
        const int bd = bound(i, cur);
        if (collect_ ? bd < best_ : bd <= best_) return;
        const int v = order_[i];
        const int limit = symmetric_ ? std::min(r_, max_used + 2) : r_;
        for (int k = 0; k < limit; ++k) {
            int gain = assigned_deg_[v] - cnt_[v][k];
            assign_[v] = k;
            g_.row(v).for_each([&](int w) {
                ++cnt_[w][k];
                ++assigned_deg_[w];
            });
            go(i + 1, cur + gain, std::max(max_used, k));
            g_.row(v).for_each([&](int w) {
                --cnt_[w][k];
                --assigned_deg_[w];
            });
            assign_[v] = -1;
        }
    }

    const Graph& g_;
    int r_;
    bool symmetric_;
    bool collect_ = false;
    std::vector<int> order_, pos_, assign_, assigned_deg_, later_edges_;
    std::vector<std::vector<int>> cnt_;
    int best_ = -1;
    std::vector<int> best_assign_;
    std::vector<std::vector<int>> found_;
};

inline void cut_guard(int n) {
    if (n > 16) throw TooLarge("exact max-cut limited to 16 vertices, got " + std::to_string(n));
}

} // namespace detail

// Vertex-move local search from the round-robin assignment: stop when no
// vertex has fewer neighbours in another part than in its own.
inline std::vector<int> local_cut_assignment(const Graph& g, int r, std::vector<int> a = {}) {
    const int n = g.n();
    if (a.empty()) {
        a.resize(n);
        for (int v = 0; v < n; ++v) a[v] = v % r;
    }
    bool moved = true;
    while (moved) {
        moved = false;
        for (int v = 0; v < n; ++v) {
            std::vector<int> c(r, 0);
            g.row(v).for_each([&](int w) { ++c[a[w]]; });
            int best = a[v];
            for (int k = 0; k < r; ++k)
                if (c[k] < c[best]) best = k;
            if (best != a[v]) {
                a[v] = best;
                moved = true;
            }
        }
    }
    return a;
}

inline CutResult max_r_cut(const Graph& g, int r, CutMode mode = CutMode::exact) {
    if (r < 2) throw InvalidInput("r must be at least 2");
    std::vector<int> a;
    if (mode == CutMode::local) {
        a = local_cut_assignment(g, r);
    } else {
        detail::cut_guard(g.n());
        detail::CutSearch s(g, r, true);
        s.maximize();
        a = s.best_assignment();
        if (a.empty()) a.assign(g.n(), 0);
    }
    return {Cut::from_assignment(a, r), crossing_edges(g, a)};
}

// Every ordered assignment attaining the maximum r-cut value.
inline std::vector<std::vector<int>> all_max_cuts(const Graph& g, int r) {
    detail::cut_guard(g.n());
    detail::CutSearch s(g, r, true);
    const int best = s.maximize();
    detail::CutSearch all(g, r, false);
    return all.all_at_least(best);
}

// Among maximum cuts: most edges inside V_1, then lexicographically smallest.
inline Cut canonical_cut(const Graph& f, int r) {
    auto cuts = all_max_cuts(f, r);
    int best_in = -1;
    std::vector<int> pick;
    for (auto& a : cuts) {
        int in1 = 0;
        for (auto [u, v] : f.edges()) in1 += a[u] == 0 && a[v] == 0;
        if (in1 > best_in || (in1 == best_in && a < pick)) {
            best_in = in1;
            pick = a;
        }
    }
    return Cut::from_assignment(pick, r);
}

// Unfriendliness: every vertex has at most as many neighbours in its own
// part as in any other part.
inline bool is_unfriendly(const Graph& g, const std::vector<int>& a, int r) {
    for (int v = 0; v < g.n(); ++v) {
        std::vector<int> c(r, 0);
        g.row(v).for_each([&](int w) { ++c[a[w]]; });
        for (int k = 0; k < r; ++k)
            if (c[a[v]] > c[k]) return false;
    }
    return true;
}

} // namespace simonovits

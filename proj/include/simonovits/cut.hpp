#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace simonovits {

// Ordered tuple of pairwise-disjoint vertex sets over [n].
struct PartTuple {
    int n = 0;
    std::vector<std::vector<int>> parts;

    PartTuple() = default;
    PartTuple(int n_, std::vector<std::vector<int>> p) : n(n_), parts(std::move(p)) {
        for (auto& s : parts) std::sort(s.begin(), s.end());
        validate();
    }

    // a[v] in [0,r) or -1 for uncovered vertices.
    static PartTuple from_assignment(const std::vector<int>& a, int r) {
        std::vector<std::vector<int>> p(r);
        for (int v = 0; v < static_cast<int>(a.size()); ++v)
            if (a[v] >= 0) {
                if (a[v] >= r) throw InvalidPartition("part index out of range");
                p[a[v]].push_back(v);
            }
        return PartTuple(static_cast<int>(a.size()), std::move(p));
    }

    int r() const { return static_cast<int>(parts.size()); }

    void validate() const {
        std::vector<char> seen(n, 0);
        for (auto& s : parts)
            for (int v : s) {
                if (v < 0 || v >= n) throw InvalidPartition("vertex out of range");
                if (seen[v]) throw InvalidPartition("parts overlap at vertex " + std::to_string(v));
                seen[v] = 1;
            }
    }

    bool complete() const {
        std::size_t c = 0;
        for (auto& s : parts) c += s.size();
        return static_cast<int>(c) == n;
    }

    std::vector<int> assignment() const {
        std::vector<int> a(n, -1);
        for (int i = 0; i < r(); ++i)
            for (int v : parts[i]) a[v] = i;
        return a;
    }

    bool operator==(const PartTuple& o) const { return n == o.n && parts == o.parts; }
};

using Cut = PartTuple;

// (ext, int) as graphs on [n].
inline std::pair<Graph, Graph> ext_int(const PartTuple& pt) {
    pt.validate();
    auto a = pt.assignment();
    Graph ext(pt.n), in(pt.n);
    for (int u = 0; u < pt.n; ++u) {
        if (a[u] < 0) continue;
        for (int v = u + 1; v < pt.n; ++v) {
            if (a[v] < 0) continue;
            (a[u] == a[v] ? in : ext).add(u, v);
        }
    }
    return {ext, in};
}

// Number of edges of g crossing the assignment (uncovered vertices ignored).
inline int crossing_edges(const Graph& g, const std::vector<int>& a) {
    int c = 0;
    for (auto [u, v] : g.edges())
        if (a[u] >= 0 && a[v] >= 0 && a[u] != a[v]) ++c;
    return c;
}

inline bool is_delta_balanced(const PartTuple& cut, double delta) {
    if (!cut.complete()) throw InvalidPartition("balance is defined for complete cuts only");
    const double avg = static_cast<double>(cut.n) / cut.r();
    const double lo = (1 - delta) * avg - 1e-12, hi = (1 + delta) * avg + 1e-12;
    for (auto& s : cut.parts) {
        double sz = static_cast<double>(s.size());
        if (sz < lo || sz > hi) return false;
    }
    return true;
}

inline bool sizes_delta_balanced(const std::vector<int>& sizes, int n, double delta) {
    const double avg = static_cast<double>(n) / static_cast<double>(sizes.size());
    for (int s : sizes)
        if (s < (1 - delta) * avg - 1e-12 || s > (1 + delta) * avg + 1e-12) return false;
    return true;
}

} // namespace simonovits

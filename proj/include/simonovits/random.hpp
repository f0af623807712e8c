#pragma once

#include <cmath>
#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "coloring.hpp"
#include "cut.hpp"
#include "hypergraph.hpp"
#include "pattern.hpp"
#include "rng.hpp"

namespace simonovits {

inline Graph sample_gnp(int n, double p, RngStream& rng) {
    if (n < 0) throw InvalidInput("n must be nonnegative");
    if (!(p >= 0 && p <= 1)) throw InvalidInput("p must lie in [0, 1]");
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.add(u, v);
    return g;
}

inline Graph sample_gnp(int n, double p, std::uint64_t seed, std::uint64_t stream = 0) {
    RngStream rng(seed, stream);
    return sample_gnp(n, p, rng);
}

// FNV-1a over (n, edge list).
inline std::uint64_t graph_hash(const Graph& g) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    mix(static_cast<std::uint64_t>(g.n()));
    for (auto [u, v] : g.edges()) mix((static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v));
    return h;
}

struct TypicalityParams {
    double p = 0.5;
    int r = 2;
    double sigmas = 3;                  // slack replacing each o(.) term
    std::vector<PartTuple> cuts;        // family for the cut/int concentration item
    std::vector<ColoredGraph> qs;       // QH instances for the class-size item
    double c_class = 0;                 // constant c in the class-size bound
    std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;  // (A, B) for the pair-density item
    long long copy_guard = 3000000;
    const CopyHypergraph* copies = nullptr;  // all copies in K_n, computed when absent
};

struct TypicalityItem {
    std::string name;
    bool evaluated = false;
    bool holds = true;
    double worst_margin = 0;  // min over checks of (allowed - observed); negative means violated
    long long checks = 0;
    long long failures = 0;
    std::string note;
};

struct TypicalityReport {
    std::string slack;
    std::vector<TypicalityItem> items;

    const TypicalityItem& item(const std::string& name) const {
        for (auto& i : items)
            if (i.name == name) return i;
        throw InvalidInput("no typicality item " + name);
    }
    bool holds() const {
        for (auto& i : items)
            if (i.evaluated && !i.holds) return false;
        return true;
    }
};

namespace detail {

inline void record(TypicalityItem& it, double allowed, double observed) {
    double margin = allowed - observed;
    if (it.checks == 0 || margin < it.worst_margin) it.worst_margin = margin;
    ++it.checks;
    if (margin < -1e-9) {
        ++it.failures;
        it.holds = false;
    }
}

} // namespace detail

// Link counts |dd_e H[G]| for every pair e and |d H_v[G]| for every vertex v.
struct LinkCounts {
    std::vector<long long> edge;    // indexed by pair
    std::vector<long long> vertex;  // indexed by vertex
};

// `copies` is every copy of the pattern in K_n.
inline LinkCounts link_counts(const Graph& g, const CopyHypergraph& copies) {
    const int n = g.n();
    if (copies.n != n) throw InvalidInput("copy family lives on a different vertex set");
    const int m = copies.empty() ? 0 : static_cast<int>(copies.edges.front().size());
    if (m > 5 || pair_count(n) >= (1 << 16)) throw TooLarge("link sets are packed as four 16-bit pair indices");
    PairTable pt(n);
    std::vector<char> in_g(pair_count(n), 0);
    for (auto [u, v] : g.edges()) in_g[pt.index(u, v)] = 1;
    // (owner, packed omega) records, deduplicated by sorting
    std::vector<std::pair<int, std::uint64_t>> es, vs;
    auto pack = [&](const std::vector<int>& a, int skip1, int skip2, bool& ok) {
        std::uint64_t key = 0;
        ok = true;
        for (int i = 0; i < m; ++i) {
            if (i == skip1 || i == skip2) continue;
            ok = ok && in_g[a[i]];
            key = (key << 16) | static_cast<std::uint64_t>(a[i] + 1);
        }
        return key;
    };
    for (auto& a : copies.edges) {
        int missing = 0;
        for (int e : a) missing += !in_g[e];
        if (missing > 2) continue;
        std::vector<int> verts;
        for (int e : a) verts.push_back(pt[e].first), verts.push_back(pt[e].second);
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        bool ok;
        for (int f = 0; f < m; ++f) {
            auto key = pack(a, f, -1, ok);
            if (ok)
                for (int v : verts) vs.emplace_back(v, key);
        }
        for (int e = 0; e < m; ++e)
            for (int f = 0; f < m; ++f) {
                if (e == f) continue;
                auto key = pack(a, e, f, ok);
                if (ok) es.emplace_back(a[e], key);
            }
    }
    auto count = [](std::vector<std::pair<int, std::uint64_t>>& recs, std::size_t owners) {
        std::sort(recs.begin(), recs.end());
        recs.erase(std::unique(recs.begin(), recs.end()), recs.end());
        std::vector<long long> c(owners, 0);
        for (auto& [o, k] : recs) ++c[o];
        return c;
    };
    LinkCounts lc;
    lc.edge = count(es, pair_count(n));
    lc.vertex = count(vs, n);
    return lc;
}

inline CopyHypergraph all_copies(const Graph& h, int n, long long guard = 3000000) {
    auto copies = enumerate_copies(h, complete_graph(n));
    if (static_cast<long long>(copies.size()) > guard) throw TooLarge("too many copies of the pattern");
    return copies;
}

inline LinkCounts link_counts(const Graph& g, const Graph& h) { return link_counts(g, all_copies(h, g.n())); }

// Finite-n analogues of the typicality events. Items needing the extremal
// solver or the neighbourhood hypergraph are reported elsewhere.
inline TypicalityReport typicality_report(const Graph& g, const Graph& h, const TypicalityParams& prm) {
    const int n = g.n();
    const double p = prm.p;
    if (!(p >= 0 && p <= 1)) throw InvalidInput("p must lie in [0, 1]");
    TypicalityReport rep;
    rep.slack = std::to_string(prm.sigmas) + " binomial standard deviations";
    auto sd = [&](double trials) { return prm.sigmas * std::sqrt(trials * p * (1 - p)); };

    TypicalityItem t1;
    t1.name = "T1";
    t1.evaluated = true;
    for (int v = 0; v < n; ++v) detail::record(t1, sd(n - 1), std::abs(g.degree(v) - (n - 1) * p));
    rep.items.push_back(t1);

    TypicalityItem t2;
    t2.name = "T2";
    t2.evaluated = !prm.cuts.empty();
    for (auto& c : prm.cuts) {
        if (c.n != n) throw InvalidInput("cut size differs from the graph");
        auto [ext, in] = ext_int(c);
        for (const Graph* part : {&ext, &in}) {
            double total = part->edge_count();
            double seen = (g & *part).edge_count();
            detail::record(t2, sd(total), std::abs(seen - total * p));
        }
    }
    if (!t2.evaluated) t2.note = "no cut family supplied";
    rep.items.push_back(t2);

    TypicalityItem t3;
    t3.name = "T3";
    t3.evaluated = true;
    {
        const double vh = h.n(), eh = h.edge_count();
        const double cap_e = 4 * eh * eh * std::pow(n, vh - 2) * std::pow(p, eh - 2);
        const double cap_v = 2 * vh * eh * std::pow(n, vh - 1) * std::pow(p, eh - 1);
        auto lc = prm.copies ? link_counts(g, *prm.copies) : link_counts(g, all_copies(h, n, prm.copy_guard));
        for (auto x : lc.edge) detail::record(t3, cap_e, static_cast<double>(x));
        for (auto x : lc.vertex) detail::record(t3, cap_v, static_cast<double>(x));
    }
    rep.items.push_back(t3);

    TypicalityItem t5;
    t5.name = "T5";
    t5.evaluated = !prm.qs.empty();
    double fitted = std::numeric_limits<double>::infinity();
    for (auto& q : prm.qs) {
        if (!q.graph.subgraph_of(g)) continue;
        const double scale = std::min<double>(n, q.k() * n * p);
        for (int k = 0; k < q.r; ++k) {
            double size = static_cast<double>(q.colour_class(k).size());
            detail::record(t5, size, prm.c_class * scale);
            if (scale > 0) fitted = std::min(fitted, size / scale);
        }
    }
    if (t5.evaluated) t5.note = "fitted c = " + std::to_string(fitted);
    else t5.note = "no QH instance supplied";
    rep.items.push_back(t5);

    TypicalityItem t7;
    t7.name = "T7";
    t7.evaluated = p > 1.0 / (10.0 * prm.r * prm.r * prm.r) && !prm.pairs.empty();
    if (t7.evaluated)
        for (auto& [a, b] : prm.pairs) {
            double total = static_cast<double>(a.size() * b.size());
            double seen = 0;
            for (int x : a)
                for (int y : b) seen += g.has(x, y);
            detail::record(t7, sd(total), std::abs(seen - total * p));
        }
    else
        t7.note = prm.pairs.empty() ? "no pairs supplied" : "p at most 1/(10 r^3)";
    rep.items.push_back(t7);
    return rep;
}

inline nlohmann::json to_json(const TypicalityReport& r) {
    nlohmann::json j;
    j["slack"] = r.slack;
    j["holds"] = r.holds();
    auto& it = j["items"] = nlohmann::json::array();
    for (auto& i : r.items)
        it.push_back({{"name", i.name},
                      {"evaluated", i.evaluated},
                      {"holds", i.holds},
                      {"worst_margin", i.worst_margin},
                      {"checks", i.checks},
                      {"failures", i.failures},
                      {"note", i.note}});
    return j;
}

} // namespace simonovits

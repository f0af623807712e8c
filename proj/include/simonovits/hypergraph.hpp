#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <json.hpp>

#include "coloring.hpp"
#include "embedding.hpp"
#include "graph.hpp"

namespace simonovits {

// Hypergraph on the ground set [ground_size]. For copy hypergraphs the ground
// is the pair-index space of K_n (ground_size = C(n,2)); vertex hypergraphs
// use ground_size = n.
struct CopyHypergraph {
    int n = 0;
    int ground_size = 0;
    std::vector<std::vector<int>> edges;  // each sorted; list sorted and duplicate-free
    std::vector<int> multiplicity;        // raw occurrences before dedup

    static CopyHypergraph over_pairs(int n) { return CopyHypergraph{n, static_cast<int>(pair_count(n)), {}, {}}; }
    static CopyHypergraph over_vertices(int n) { return CopyHypergraph{n, n, {}, {}}; }

    // Sort, dedup and record multiplicities.
    void normalize() {
        std::map<std::vector<int>, int> cnt;
        for (auto& e : edges) {
            std::sort(e.begin(), e.end());
            ++cnt[e];
        }
        edges.clear();
        multiplicity.clear();
        for (auto& [e, c] : cnt) {
            edges.push_back(e);
            multiplicity.push_back(c);
        }
    }

    std::size_t size() const { return edges.size(); }
    bool empty() const { return edges.empty(); }

    std::optional<int> uniformity() const {
        if (edges.empty()) return std::nullopt;
        const std::size_t k = edges[0].size();
        for (auto& e : edges)
            if (e.size() != k) return std::nullopt;
        return static_cast<int>(k);
    }

    int max_edge_size() const {
        std::size_t k = 0;
        for (auto& e : edges) k = std::max(k, e.size());
        return static_cast<int>(k);
    }

    Bits mask(std::size_t i) const {
        Bits b(ground_size);
        for (int x : edges[i]) b.set(x);
        return b;
    }
};

inline CopyHypergraph enumerate_copies(const Graph& h, const Graph& host) {
    if (h.n() > host.n()) throw InvalidInput("pattern larger than host");
    CopyHypergraph out = CopyHypergraph::over_pairs(host.n());
    std::set<std::vector<int>> seen;
    for_each_embedding(h, host, [&](const std::vector<int>& map) {
        seen.insert(image_edges(h, map, host.n()));
        return true;
    });
    out.edges.assign(seen.begin(), seen.end());
    out.multiplicity.assign(out.edges.size(), 1);
    return out;
}

enum class ResidualVariant { all, low, high };

// Data describing the high-degree recipe for a pattern: critical edge f,
// distinguished endpoint h', r-colouring phi of H - f with phi(h') = 0, and
// the class profile l of N_H(h').
struct HighProfile {
    Edge f;
    int hprime = 0;
    int ell = 0;
    std::vector<int> phi;
    std::vector<int> l;
};

inline HighProfile high_profile(const Graph& h) {
    const int chi = chromatic_number(h);
    const int r = chi - 1;
    for (auto f : h.edges()) {
        Graph g = h;
        g.remove(f.first, f.second);
        if (chromatic_number(g) != r) continue;
        HighProfile hp;
        hp.f = f;
        hp.hprime = f.first;
        std::vector<int> fixed(h.n(), -1);
        fixed[hp.hprime] = 0;
        auto col = find_coloring(g, r, fixed);
        if (!col) continue;
        hp.phi = *col;
        hp.ell = h.degree(hp.hprime);
        hp.l.assign(r, 0);
        h.row(hp.hprime).for_each([&](int w) { ++hp.l[hp.phi[w]]; });
        return hp;
    }
    throw Inapplicable("pattern is not edge-critical");
}

namespace detail {

inline std::vector<int> vertices_of(const std::vector<int>& es, const PairTable& pt) {
    std::vector<int> vs;
    for (int e : es) {
        vs.push_back(pt[e].first);
        vs.push_back(pt[e].second);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

inline std::vector<int> minus_graph(const std::vector<int>& es, const Graph& q, const PairTable& pt) {
    std::vector<int> out;
    for (int e : es)
        if (!q.has(pt[e].first, pt[e].second)) out.push_back(e);
    return out;
}

} // namespace detail

// High-degree residuals: copies of h whose distinguished vertex sits on a
// centre v, its neighbours inside N_Q(v) with the colour pattern phi, and all
// other vertices outside the centre set; residual = copy minus Q. When
// `within` is given, only copies belonging to it are kept.
inline CopyHypergraph high_residuals(const Graph& h, const ColoredGraph& q, const HighProfile& hp,
                                     const CopyHypergraph* within = nullptr) {
    if (!q.centres) throw InvalidInput("missing centres for the high-degree family");
    const int n = q.n();
    PairTable pt(n);
    std::set<std::vector<int>> allowed;
    if (within) allowed.insert(within->edges.begin(), within->edges.end());
    Bits outside(n);
    outside.fill();
    for (int x : *q.centres) outside.reset(x);
    CopyHypergraph out = CopyHypergraph::over_pairs(n);
    Graph kn = complete_graph(n);
    for (int v : *q.centres) {
        std::vector<Bits> dom(h.n(), outside);
        dom[hp.hprime] = Bits(n);
        dom[hp.hprime].set(v);
        h.row(hp.hprime).for_each([&](int w) {
            Bits b(n);
            q.graph.row(v).for_each([&](int u) {
                if (q.colour[u] == hp.phi[w]) b.set(u);
            });
            dom[w] = b;
        });
        bool empty_domain = false;
        for (auto& d : dom) empty_domain |= d.none();
        if (empty_domain) continue;
        for_each_embedding(
            h, kn,
            [&](const std::vector<int>& map) {
                auto es = image_edges(h, map, n);
                if (within && !allowed.count(es)) return true;
                out.edges.push_back(detail::minus_graph(es, q.graph, pt));
                return true;
            },
            &dom);
    }
    out.normalize();
    return out;
}

inline CopyHypergraph residual_family(const CopyHypergraph& copies, const ColoredGraph& q, ResidualVariant variant,
                                      const Graph& h) {
    const int n = copies.n;
    if (q.n() != n) throw InvalidInput("Q and copy family live on different vertex sets");
    PairTable pt(n);
    CopyHypergraph out = CopyHypergraph::over_pairs(n);
    switch (variant) {
    case ResidualVariant::all:
        for (auto& k : copies.edges) out.edges.push_back(detail::minus_graph(k, q.graph, pt));
        break;
    case ResidualVariant::low: {
        for (int v = 0; v < n; ++v)
            if (q.colour[v] > 0) throw InvalidInput("low-degree residuals need every vertex of Q coloured 1");
        for (auto& k : copies.edges) {
            int in_q = 0;
            for (int e : k) in_q += q.graph.has(pt[e].first, pt[e].second);
            if (in_q != 1) continue;
            auto vs = detail::vertices_of(k, pt);
            int span = 0;
            for (std::size_t i = 0; i < vs.size(); ++i)
                for (std::size_t j = i + 1; j < vs.size(); ++j) span += q.graph.has(vs[i], vs[j]);
            if (span != 1) continue;
            out.edges.push_back(detail::minus_graph(k, q.graph, pt));
        }
        break;
    }
    case ResidualVariant::high:
        return high_residuals(h, q, high_profile(h), &copies);
    }
    out.normalize();
    return out;
}

// Hyperedges entirely inside the allowed edge set.
inline CopyHypergraph induce(const CopyHypergraph& fam, const Graph& allowed) {
    PairTable pt(fam.n);
    CopyHypergraph out{fam.n, fam.ground_size, {}, {}};
    for (std::size_t i = 0; i < fam.edges.size(); ++i) {
        bool ok = true;
        for (int e : fam.edges[i])
            if (!allowed.has(pt[e].first, pt[e].second)) {
                ok = false;
                break;
            }
        if (ok) {
            out.edges.push_back(fam.edges[i]);
            out.multiplicity.push_back(fam.multiplicity.empty() ? 1 : fam.multiplicity[i]);
        }
    }
    return out;
}

// Same, for an explicit set of ground elements (works for any ground).
inline CopyHypergraph induce(const CopyHypergraph& fam, const Bits& allowed) {
    CopyHypergraph out{fam.n, fam.ground_size, {}, {}};
    for (std::size_t i = 0; i < fam.edges.size(); ++i) {
        bool ok = std::all_of(fam.edges[i].begin(), fam.edges[i].end(), [&](int e) { return allowed.test(e); });
        if (ok) {
            out.edges.push_back(fam.edges[i]);
            out.multiplicity.push_back(fam.multiplicity.empty() ? 1 : fam.multiplicity[i]);
        }
    }
    return out;
}

// Link at a ground element; at = nullopt gives the union of all links.
inline CopyHypergraph link(const CopyHypergraph& fam, std::optional<int> at) {
    CopyHypergraph out{fam.n, fam.ground_size, {}, {}};
    for (auto& a : fam.edges)
        for (int e : a) {
            if (at && e != *at) continue;
            std::vector<int> rest;
            for (int x : a)
                if (x != e) rest.push_back(x);
            out.edges.push_back(std::move(rest));
        }
    out.normalize();
    return out;
}

// Exact matching number: maximum independent set of the intersection graph.
inline int matching_number(const CopyHypergraph& fam) {
    const int m = static_cast<int>(fam.size());
    if (m == 0) return 0;
    if (m > 4096) throw TooLarge("matching number limited to 4096 hyperedges");
    std::vector<Bits> masks;
    masks.reserve(m);
    for (int i = 0; i < m; ++i) masks.push_back(fam.mask(i));
    std::vector<Bits> conflict(m, Bits(m));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (masks[i].intersects(masks[j])) {
                conflict[i].set(j);
                conflict[j].set(i);
            }
    int min_size = fam.edges[0].size() ? static_cast<int>(fam.edges[0].size()) : 1;
    for (auto& e : fam.edges) min_size = std::min(min_size, std::max<int>(1, static_cast<int>(e.size())));

    int best = 0;
    // greedy start: smallest conflict degree first
    {
        Bits avail(m);
        avail.fill();
        int g = 0;
        while (avail.any()) {
            int pick = -1, pd = m + 1;
            avail.for_each([&](int i) {
                int d = conflict[i].count_and(avail);
                if (d < pd) {
                    pd = d;
                    pick = i;
                }
            });
            ++g;
            avail.andnot(conflict[pick]);
            avail.reset(pick);
        }
        best = g;
    }

    auto bound = [&](const Bits& avail) {
        Bits ground(fam.ground_size);
        avail.for_each([&](int i) { ground |= masks[i]; });
        return std::min(avail.count(), ground.count() / min_size);
    };

    std::function<void(Bits, int)> go = [&](Bits avail, int cur) {
        // degree <= 1 vertices can always be taken
        bool changed = true;
        while (changed) {
            changed = false;
            int pick = -1;
            avail.for_each([&](int i) {
                if (pick < 0 && conflict[i].count_and(avail) <= 1) pick = i;
            });
            if (pick >= 0) {
                ++cur;
                avail.andnot(conflict[pick]);
                avail.reset(pick);
                changed = true;
            }
        }
        if (avail.none()) {
            best = std::max(best, cur);
            return;
        }
        if (cur + bound(avail) <= best) return;
        int v = -1, vd = -1;
        avail.for_each([&](int i) {
            int d = conflict[i].count_and(avail);
            if (d > vd) {
                vd = d;
                v = i;
            }
        });
        Bits take = avail;
        take.andnot(conflict[v]);
        take.reset(v);
        go(take, cur + 1);
        Bits skip = avail;
        skip.reset(v);
        go(skip, cur);
    };
    Bits all(m);
    all.fill();
    go(all, 0);
    return best;
}

struct JansonMoments {
    double mu = 0;
    double delta = 0;
    std::vector<int> degree_profile;  // Delta_j for j = 0..max edge size
};

inline std::vector<int> degree_profile(const CopyHypergraph& fam) {
    const int k = fam.max_edge_size();
    std::vector<int> prof(k + 1, 0);
    prof[0] = static_cast<int>(fam.size());
    for (int j = 1; j <= k; ++j) {
        std::map<std::vector<int>, int> cnt;
        for (auto& a : fam.edges) {
            const int s = static_cast<int>(a.size());
            if (s < j) continue;
            std::vector<int> pick(j);
            std::vector<char> sel(s, 0);
            std::fill(sel.begin(), sel.begin() + j, 1);
            do {
                int t = 0;
                for (int i = 0; i < s; ++i)
                    if (sel[i]) pick[t++] = a[i];
                prof[j] = std::max(prof[j], ++cnt[pick]);
            } while (std::prev_permutation(sel.begin(), sel.end()));
        }
    }
    return prof;
}

inline JansonMoments janson_moments(const CopyHypergraph& fam, double p) {
    if (!(p >= 0 && p <= 1)) throw InvalidInput("p must lie in [0,1]");
    JansonMoments jm;
    const int m = static_cast<int>(fam.size());
    std::vector<Bits> masks;
    for (int i = 0; i < m; ++i) masks.push_back(fam.mask(i));
    for (auto& a : fam.edges) jm.mu += std::pow(p, static_cast<double>(a.size()));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            int inter = masks[i].count_and(masks[j]);
            if (inter == 0) continue;
            int uni = static_cast<int>(fam.edges[i].size() + fam.edges[j].size()) - inter;
            jm.delta += std::pow(p, uni);
        }
    jm.degree_profile = degree_profile(fam);
    return jm;
}

inline nlohmann::json to_json(const CopyHypergraph& fam) {
    nlohmann::json j;
    j["n"] = fam.n;
    j["ground_size"] = fam.ground_size;
    j["hyperedges"] = fam.edges;
    return j;
}

} // namespace simonovits

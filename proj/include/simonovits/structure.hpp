#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "coloring.hpp"
#include "cut.hpp"
#include "hypergraph.hpp"
#include "maxcut.hpp"
#include "rng.hpp"

namespace simonovits {

struct EdgeColouring {
    std::vector<Edge> edges;  // lexicographic
    std::vector<int> colour;  // parallel to edges
    int colours = 0;          // number of distinct colours used
};

// Misra-Gries fan rotation; at most max_degree + 1 colours.
inline EdgeColouring vizing_color(const Graph& g) {
    const int n = g.n();
    const int D = g.max_degree();
    const int K = D + 1;
    // at[x][c] = neighbour joined to x by colour c, or -1
    std::vector<std::vector<int>> at(n, std::vector<int>(K, -1));
    std::vector<std::vector<int>> col(n, std::vector<int>(n, -1));
    auto is_free = [&](int x, int c) { return at[x][c] < 0; };
    auto free_colour = [&](int x) {
        for (int c = 0; c < K; ++c)
            if (is_free(x, c)) return c;
        throw InternalConsistency("no free colour");
    };
    auto set = [&](int x, int y, int c) {
        col[x][y] = col[y][x] = c;
        at[x][c] = y;
        at[y][c] = x;
    };
    auto unset = [&](int x, int y) {
        int c = col[x][y];
        if (c < 0) return;
        at[x][c] = at[y][c] = -1;
        col[x][y] = col[y][x] = -1;
    };
    for (auto [u, v] : g.edges()) {
        // maximal fan at u starting with v
        std::vector<int> fan{v};
        std::vector<char> in_fan(n, 0);
        in_fan[v] = 1;
        bool grew = true;
        while (grew) {
            grew = false;
            int last = fan.back();
            g.row(u).for_each([&](int w) {
                if (grew || in_fan[w] || col[u][w] < 0) return;
                if (is_free(last, col[u][w])) {
                    fan.push_back(w);
                    in_fan[w] = 1;
                    grew = true;
                }
            });
        }
        const int c = free_colour(u);
        const int d = free_colour(fan.back());
        // invert the cd-path from u
        if (c != d) {
            std::vector<std::pair<int, int>> path;
            int x = u, want = d;
            while (at[x][want] >= 0) {
                int y = at[x][want];
                path.emplace_back(x, y);
                x = y;
                want = want == d ? c : d;
            }
            std::vector<int> old;
            for (auto [a, b] : path) {
                old.push_back(col[a][b]);
                unset(a, b);
            }
            for (std::size_t i = 0; i < path.size(); ++i) set(path[i].first, path[i].second, old[i] == c ? d : c);
        }
        // first fan vertex w with d free whose prefix is still a fan
        std::size_t w = 0;
        for (; w < fan.size(); ++w) {
            bool prefix_ok = true;
            for (std::size_t i = 0; i + 1 <= w && prefix_ok; ++i)
                prefix_ok = col[u][fan[i + 1]] >= 0 && is_free(fan[i], col[u][fan[i + 1]]);
            if (prefix_ok && is_free(fan[w], d)) break;
            if (!prefix_ok) {
                w = fan.size();
                break;
            }
        }
        if (w == fan.size()) throw InternalConsistency("fan rotation failed");
        // rotate the prefix
        for (std::size_t i = 0; i < w; ++i) {
            int next_c = col[u][fan[i + 1]];
            unset(u, fan[i + 1]);
            set(u, fan[i], next_c);
        }
        set(u, fan[w], d);
    }
    EdgeColouring out;
    out.edges = g.edges();
    std::vector<char> used(K, 0);
    for (auto [a, b] : out.edges) {
        out.colour.push_back(col[a][b]);
        used[col[a][b]] = 1;
    }
    out.colours = static_cast<int>(std::count(used.begin(), used.end(), 1));
    return out;
}

inline bool is_proper_edge_colouring(const Graph& g, const EdgeColouring& ec) {
    if (ec.edges != g.edges()) return false;
    std::vector<std::unordered_set<int>> seen(g.n());
    for (std::size_t i = 0; i < ec.edges.size(); ++i) {
        auto [a, b] = ec.edges[i];
        int c = ec.colour[i];
        if (c < 0 || !seen[a].insert(c).second || !seen[b].insert(c).second) return false;
    }
    return true;
}

// Q ⊆ I with max degree exactly d and e(Q) >= d/(Δ(I)+1) e(I): the d largest
// colour classes, topped up at a maximum-degree vertex.
inline Graph bounded_degree_subgraph(const Graph& I, int d) {
    const int D = I.max_degree();
    if (d < 1 || d > D) throw InvalidInput("need 1 <= d <= max degree");
    auto ec = vizing_color(I);
    std::vector<int> size(D + 1, 0);
    for (int c : ec.colour) ++size[c];
    std::vector<int> order(D + 1);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return size[a] > size[b]; });
    std::vector<char> keep(D + 1, 0);
    for (int i = 0; i < d; ++i) keep[order[i]] = 1;
    Graph q(I.n());
    for (std::size_t i = 0; i < ec.edges.size(); ++i)
        if (keep[ec.colour[i]]) q.add(ec.edges[i].first, ec.edges[i].second);
    if (q.max_degree() < d) {
        int v = 0;
        for (int x = 0; x < I.n(); ++x)
            if (I.degree(x) == D) {
                v = x;
                break;
            }
        I.row(v).for_each([&](int w) {
            if (q.max_degree() == d || q.has(v, w)) return;
            if (q.degree(w) < d && q.degree(v) < d) q.add(v, w);
        });
    }
    if (q.max_degree() != d) throw InternalConsistency("top-up did not reach degree d");
    return q;
}

// Largest subgraph of I with max degree <= b. Exact for at most `exact_edges`
// edges, otherwise a greedy maximal one (every missing edge then has an
// endpoint of degree b in the result).
inline Graph max_degree_subgraph(const Graph& I, int b, int exact_edges = 24) {
    if (I.max_degree() <= b) return I;
    auto edges = I.edges();
    const int m = static_cast<int>(edges.size());
    const int n = I.n();
    Graph greedy(n);
    for (auto [u, v] : edges)
        if (greedy.degree(u) < b && greedy.degree(v) < b) greedy.add(u, v);
    if (m > exact_edges) return greedy;
    std::vector<int> deg(n, 0), rem(n, 0);
    for (auto [u, v] : edges) ++rem[u], ++rem[v];
    std::vector<char> take(m, 0), best_take;
    int best = greedy.edge_count(), cur = 0;
    std::function<void(int)> go = [&](int i) {
        if (cur > best) {
            best = cur;
            best_take = take;
        }
        if (i == m) return;
        int room = 0;
        for (int v = 0; v < n; ++v) room += std::min(b - deg[v], rem[v]);
        if (cur + room / 2 <= best) return;
        auto [u, v] = edges[i];
        --rem[u], --rem[v];
        if (deg[u] < b && deg[v] < b) {
            ++deg[u], ++deg[v], ++cur;
            take[i] = 1;
            go(i + 1);
            take[i] = 0;
            --deg[u], --deg[v], --cur;
        }
        go(i + 1);
        ++rem[u], ++rem[v];
    };
    go(0);
    if (best_take.empty()) return greedy;
    Graph out(n);
    for (int i = 0; i < m; ++i)
        if (best_take[i]) out.add(edges[i].first, edges[i].second);
    return out;
}

struct QParams {
    int n = 0;
    double p = 0;
    double kappa = 0.05;
    double eta = 0.01;

    int eta_np() const { return static_cast<int>(std::ceil(eta * n * p - 1e-12)); }
    double low_degree_cap() const { return kappa * n * p / std::log(static_cast<double>(n)); }
};

enum class QKind { QL1, QL2, QH };

inline std::string to_string(QKind k) {
    switch (k) {
        case QKind::QL1: return "QL1";
        case QKind::QL2: return "QL2";
        default: return "QH";
    }
}

struct QFamily {
    ColoredGraph q;
    QKind kind = QKind::QL1;
    int clause = 1;        // which size guarantee applies (1, 2 or 3)
    int proof_case = 1;    // 1: most of F[V_1] has low degree; 2: star extraction
    long long e_I = 0;     // e(F[V_1])
    long long e_IL = 0;
    int eta_np = 0;        // rounded ceil(eta n p)
    double degree_cap = 0; // kappa n p / ln n
    bool clause_holds = true;
    double clause_lhs = 0, clause_rhs = 0;
    std::string note;

    long long e_q() const { return q.graph.edge_count(); }
    int max_degree() const { return q.graph.max_degree(); }
    int k() const { return q.k(); }
};

inline nlohmann::json to_json(const QFamily& f) {
    nlohmann::json j;
    j["kind"] = to_string(f.kind);
    j["clause"] = f.clause;
    j["case"] = f.proof_case;
    j["e_Q"] = f.e_q();
    j["max_degree_Q"] = f.max_degree();
    j["k_Q"] = f.k();
    j["e_I"] = f.e_I;
    j["e_IL"] = f.e_IL;
    j["eta_np"] = f.eta_np;
    j["degree_cap"] = f.degree_cap;
    j["clause_holds"] = f.clause_holds;
    j["clause_lhs"] = f.clause_lhs;
    j["clause_rhs"] = f.clause_rhs;
    j["colour"] = f.q.colour;
    if (f.q.centres) j["centres"] = *f.q.centres;
    j["edges"] = graph_to_json(f.q.graph)["edges"];
    if (!f.note.empty()) j["note"] = f.note;
    return j;
}

// Q_F for F and its canonical cut; V_1 = cut.parts[0].
inline QFamily construct_QF(const Graph& f, const Cut& cut, const QParams& prm) {
    const int n = f.n();
    const int r = cut.r();
    if (cut.n != n || !cut.complete()) throw InvalidPartition("cut must cover the vertices of F");
    if (prm.n != n) throw InvalidInput("params n differs from F");
    auto a = cut.assignment();
    const int H = prm.eta_np();
    const double cap = prm.low_degree_cap();
    QFamily out;
    out.eta_np = H;
    out.degree_cap = cap;

    Graph I(n);
    for (auto [u, v] : f.edges())
        if (a[u] == 0 && a[v] == 0) I.add(u, v);
    out.e_I = I.edge_count();
    auto low = [&](const Graph& q, int clause, const std::string& note) {
        out.q = ColoredGraph::monochrome(q, r, 0);
        out.kind = q.edge_count() < cap ? QKind::QL1 : QKind::QL2;
        out.clause = clause;
        out.note = note;
        if (q.max_degree() > cap + 1e-9) {
            out.clause_holds = false;
            out.note += "; max degree exceeds the low-degree cap";
        }
    };
    if (out.e_I == 0) {
        low(Graph(n), 1, "F[V_1] is empty");
        return out;
    }
    Graph IL = max_degree_subgraph(I, 2 * H);
    out.e_IL = IL.edge_count();
    if (2 * out.e_IL >= out.e_I) {
        out.proof_case = 1;
        if (IL.max_degree() <= cap) {
            low(IL, 1, "low-degree part kept whole");
            out.clause_lhs = static_cast<double>(IL.edge_count());
            out.clause_rhs = out.e_I / 2.0;
            out.clause_holds = out.clause_holds && 2 * IL.edge_count() >= out.e_I;
            return out;
        }
        const int d = static_cast<int>(std::floor(cap + 1e-12));
        Graph q = d >= 1 ? bounded_degree_subgraph(IL, d) : Graph(n);
        low(q, 2, d >= 1 ? "Vizing reduction to degree d" : "degree cap below 1, nothing can be kept");
        out.clause_lhs = static_cast<double>(q.edge_count());
        out.clause_rhs = std::max(cap, prm.kappa / (4 * prm.eta * std::log(static_cast<double>(n))) * out.e_I);
        out.clause_holds = out.clause_holds && out.clause_lhs >= out.clause_rhs - 1e-9;
        return out;
    }

    out.proof_case = 2;
    std::vector<char> inY(n, 0);
    for (int v = 0; v < n; ++v) inY[v] = I.degree(v) > 2 * H;
    Graph qt(n);
    for (auto [u, v] : I.edges())
        if (inY[u] || inY[v]) qt.add(u, v);
    std::vector<int> verts;
    for (int v = 0; v < n; ++v)
        if (qt.degree(v) > 0) verts.push_back(v);
    Graph sub = qt.induced(verts);
    auto sa = sub.n() <= 16 ? max_r_cut(sub, 2).cut.assignment() : local_cut_assignment(sub, 2);
    std::vector<int> W(n, -1);
    for (std::size_t i = 0; i < verts.size(); ++i) W[verts[i]] = sa[i];
    // stars from W_j ∩ Y into W_{1-j}
    auto star_graph = [&](int j) {
        Graph s(n);
        for (auto [u, v] : qt.edges()) {
            if (W[u] == j && inY[u] && W[v] == 1 - j) s.add(u, v);
            else if (W[v] == j && inY[v] && W[u] == 1 - j) s.add(u, v);
        }
        return s;
    };
    Graph s0 = star_graph(0), s1 = star_graph(1);
    const int j = s1.edge_count() > s0.edge_count() ? 1 : 0;
    Graph stars = j == 0 ? s0 : s1;
    std::vector<int> centres;
    for (int v = 0; v < n; ++v)
        if (W[v] == j && inY[v]) centres.push_back(v);

    Graph q(n);
    std::vector<int> colour(n, -1);
    for (int v : centres) {
        colour[v] = 0;
        int got = 0;
        stars.row(v).for_each([&](int w) {
            if (got < H) {
                q.add(v, w);
                colour[w] = 0;
                ++got;
            }
        });
        if (got < H)
            throw ConstructionInfeasible("centre " + std::to_string(v) + " has " + std::to_string(got) +
                                         " star neighbours, needs " + std::to_string(H));
        for (int i = 1; i < r; ++i) {
            int gi = 0;
            f.row(v).for_each([&](int w) {
                if (gi < H && a[w] == i) {
                    q.add(v, w);
                    colour[w] = i;
                    ++gi;
                }
            });
            if (gi < H)
                throw ConstructionInfeasible("centre " + std::to_string(v) + " has " + std::to_string(gi) +
                                             " neighbours in part " + std::to_string(i) + ", needs " +
                                             std::to_string(H));
        }
    }
    out.q = ColoredGraph(q, colour, r, centres);
    out.kind = QKind::QH;
    out.clause = 3;
    out.note = "star extraction from high-degree vertices";
    out.clause_lhs = static_cast<double>(centres.size());
    out.clause_rhs = out.e_I / (16.0 * std::max(1, f.max_degree()));
    out.clause_holds = 16LL * static_cast<long long>(centres.size()) * f.max_degree() >= out.e_I;
    return out;
}

// Whether q carries exactly eta_np neighbours of each colour at every centre.
inline bool has_exact_class_degrees(const ColoredGraph& q, int H) {
    if (!q.centres) return false;
    for (int v : *q.centres) {
        std::vector<int> c(q.r, 0);
        q.graph.row(v).for_each([&](int w) { ++c[q.colour[w]]; });
        for (int x : c)
            if (x != H) return false;
    }
    return true;
}

struct NeighbourhoodStep {
    int centre = 0;
    bool good = true;
    long long closure_hits = 0;  // l-subsets of the fresh neighbourhood inside the closure
    double threshold = 0;        // (1/2)(H/l)^l
    long long candidates = 0;    // eligible sets outside the closure
    long long added = 0;
};

struct NeighbourhoodResult {
    CopyHypergraph g;  // vertex hypergraph
    std::vector<NeighbourhoodStep> steps;
    std::vector<int> owner;  // centre that contributed each hyperedge
    double alpha = 0, rho = 0, D = 0;
    double C_explicit = 0;  // 8 D l^l / eta^l
    std::vector<long long> degrees;  // Delta_j for j = 0..l
    std::vector<double> caps;        // max{4 (np)^{l-j}, C_fit e / n^j}
    double c_fit = 0;                // e(G) / min{n^l, k (np)^l}
    double C_fit = 1;                // least C >= 1 making every cap hold
    bool caps_hold_explicit = true;  // caps with C_explicit
    long long shortfall = 0;         // good centres that found too few fresh sets
};

namespace detail {

inline std::uint64_t pack(const std::vector<int>& s) {
    std::uint64_t x = s.size();
    for (int v : s) x = (x << 8) | static_cast<std::uint64_t>(v + 1);
    return x;
}

template <class F>
void for_each_subset(const std::vector<int>& items, int k, F&& f) {
    const int m = static_cast<int>(items.size());
    if (k > m || k < 0) return;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> cur(k);
    while (true) {
        for (int i = 0; i < k; ++i) cur[i] = items[idx[i]];
        f(cur);
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace detail

// Sequential good/bad centre processing. g is the host graph containing Q,
// l the per-class profile, and eta, p fix H = ceil(eta n p).
inline NeighbourhoodResult neighbourhood_hypergraph(const Graph& g, const ColoredGraph& q, const std::vector<int>& l,
                                                    double eta, double p) {
    const int n = g.n();
    if (n > 250) throw TooLarge("vertex labels are packed into 8 bits");
    if (!q.centres) throw InvalidInput("Q has no centres");
    if (static_cast<int>(l.size()) != q.r) throw InvalidInput("profile length must equal r");
    const int ell = std::accumulate(l.begin(), l.end(), 0);
    if (ell < 1 || ell > 7) throw InvalidInput("need 1 <= l <= 7");
    if (!q.graph.subgraph_of(g)) throw InvalidInput("Q must be a subgraph of the host");
    const int H = static_cast<int>(std::ceil(eta * n * p - 1e-12));
    if (!has_exact_class_degrees(q, H)) throw InvalidInput("invalid QH: centres need exactly ceil(eta n p) neighbours per class");
    for (int x : l)
        if (x > H) throw InvalidInput("profile entry exceeds the class degree");

    NeighbourhoodResult res;
    res.g = CopyHypergraph::over_vertices(n);
    const double np = n * p;
    res.alpha = std::pow(eta / ell, ell) / 2;
    res.rho = upper_tail_rho(res.alpha, ell);
    res.D = std::pow(2.0, ell + 1) / res.rho;
    res.C_explicit = 8 * res.D * std::pow(ell, ell) / std::pow(eta, ell);
    const double half = 0.5 * std::pow(static_cast<double>(H) / ell, ell);
    const long long target = static_cast<long long>(std::ceil(half - 1e-12));

    std::unordered_set<std::uint64_t> ghat;
    std::vector<std::unordered_map<std::uint64_t, long long>> tdeg(ell);  // index j = |T|
    std::vector<double> thr(ell, 0);
    auto refresh = [&]() {
        for (int j = 1; j < ell; ++j)
            thr[j] = std::max(2 * std::pow(np, ell - j), res.D * static_cast<double>(ghat.size()) / std::pow(n, j));
    };
    auto in_closure = [&](const std::vector<int>& u) {
        if (ghat.count(detail::pack(u))) return true;
        for (int j = 1; j < ell; ++j) {
            bool hit = false;
            detail::for_each_subset(u, j, [&](const std::vector<int>& t) {
                if (hit) return;
                auto it = tdeg[j].find(detail::pack(t));
                if (it != tdeg[j].end() && it->second >= thr[j]) hit = true;
            });
            if (hit) return true;
        }
        return false;
    };
    auto absorb = [&](int v) {
        std::vector<int> nb = g.row(v).to_vector();
        detail::for_each_subset(nb, ell, [&](const std::vector<int>& u) {
            if (!ghat.insert(detail::pack(u)).second) return;
            for (int j = 1; j < ell; ++j)
                detail::for_each_subset(u, j, [&](const std::vector<int>& t) { ++tdeg[j][detail::pack(t)]; });
        });
        if (ghat.size() > 20000000) throw TooLarge("closure hypergraph too large");
    };

    std::vector<int> centres = *q.centres;
    std::sort(centres.begin(), centres.end());
    Bits is_centre(n);
    for (int v : centres) is_centre.set(v);
    refresh();
    for (std::size_t i = 0; i < centres.size(); ++i) {
        const int v = centres[i];
        NeighbourhoodStep st;
        st.centre = v;
        st.threshold = half;
        if (i > 0) {
            std::vector<int> fresh;
            g.row(v).for_each([&](int w) {
                bool earlier = false;
                for (std::size_t t = 0; t < i; ++t) earlier |= centres[t] == w;
                if (!earlier) fresh.push_back(w);
            });
            detail::for_each_subset(fresh, ell, [&](const std::vector<int>& u) { st.closure_hits += in_closure(u); });
            st.good = st.closure_hits <= half;
        }
        if (st.good) {
            // candidate sets: l_k neighbours of colour k, none of them a centre
            std::vector<std::vector<int>> cls(q.r);
            q.graph.row(v).for_each([&](int w) {
                if (!is_centre.test(w)) cls[q.colour[w]].push_back(w);
            });
            std::vector<std::vector<int>> cands;
            std::function<void(int, std::vector<int>&)> build = [&](int k, std::vector<int>& acc) {
                if (k == q.r) {
                    std::vector<int> u = acc;
                    std::sort(u.begin(), u.end());
                    cands.push_back(u);
                    return;
                }
                detail::for_each_subset(cls[k], l[k], [&](const std::vector<int>& s) {
                    std::size_t mark = acc.size();
                    acc.insert(acc.end(), s.begin(), s.end());
                    build(k + 1, acc);
                    acc.resize(mark);
                });
            };
            std::vector<int> acc;
            build(0, acc);
            std::sort(cands.begin(), cands.end());
            for (auto& u : cands) {
                if (in_closure(u)) continue;
                ++st.candidates;
                if (st.added < target) {
                    res.g.edges.push_back(u);
                    res.owner.push_back(v);
                    ++st.added;
                }
            }
            if (st.added < target) ++res.shortfall;
            absorb(v);
            refresh();
        }
        res.steps.push_back(st);
    }
    // keep owners aligned with the normalised (sorted) edge list
    std::vector<std::size_t> order(res.g.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return res.g.edges[x] < res.g.edges[y]; });
    CopyHypergraph sorted = CopyHypergraph::over_vertices(n);
    std::vector<int> owners;
    for (auto i : order) {
        if (!sorted.edges.empty() && sorted.edges.back() == res.g.edges[i]) continue;
        sorted.edges.push_back(res.g.edges[i]);
        owners.push_back(res.owner[i]);
    }
    sorted.multiplicity.assign(sorted.edges.size(), 1);
    res.g = sorted;
    res.owner = owners;

    const double e = static_cast<double>(res.g.size());
    res.degrees.assign(ell + 1, 0);
    res.degrees[0] = static_cast<long long>(res.g.size());
    for (int j = 1; j <= ell; ++j) {
        std::unordered_map<std::uint64_t, long long> cnt;
        for (auto& u : res.g.edges)
            detail::for_each_subset(u, j, [&](const std::vector<int>& t) { ++cnt[detail::pack(t)]; });
        for (auto& [t, c] : cnt) res.degrees[j] = std::max(res.degrees[j], c);
    }
    res.C_fit = 1;
    for (int j = 1; j < ell; ++j)
        if (res.degrees[j] > 4 * std::pow(np, ell - j) && e > 0)
            res.C_fit = std::max(res.C_fit, res.degrees[j] * std::pow(n, j) / e);
    res.caps.assign(ell + 1, 0);
    for (int j = 0; j <= ell; ++j) {
        res.caps[j] = std::max(4 * std::pow(np, ell - j), res.C_fit * e / std::pow(n, j));
        double cap_exp = std::max(4 * std::pow(np, ell - j), res.C_explicit * e / std::pow(n, j));
        if (j >= 1 && j < ell && res.degrees[j] > cap_exp * (1 + 1e-12)) res.caps_hold_explicit = false;
    }
    const double scale = std::min(std::pow(n, ell), q.k() * std::pow(np, ell));
    res.c_fit = scale > 0 ? e / scale : 0;
    return res;
}

inline nlohmann::json to_json(const NeighbourhoodResult& r) {
    nlohmann::json j;
    j["edges"] = r.g.edges;
    j["owner"] = r.owner;
    j["alpha"] = r.alpha;
    j["rho"] = r.rho;
    j["D"] = r.D;
    j["C_explicit"] = r.C_explicit;
    j["degrees"] = r.degrees;
    j["caps"] = r.caps;
    j["c_fit"] = r.c_fit;
    j["C_fit"] = r.C_fit;
    j["caps_hold_explicit"] = r.caps_hold_explicit;
    j["shortfall"] = r.shortfall;
    auto& s = j["steps"] = nlohmann::json::array();
    for (auto& st : r.steps)
        s.push_back({{"centre", st.centre},
                     {"good", st.good},
                     {"closure_hits", st.closure_hits},
                     {"threshold", st.threshold},
                     {"candidates", st.candidates},
                     {"added", st.added}});
    return j;
}

// Residuals omega ⊆ K_n - Q with omega ∪ star(v_U, U) a copy of h, over the
// sets U of a neighbourhood hypergraph.
inline CopyHypergraph build_high_family(const ColoredGraph& q, const Graph& h, const HighProfile& hp,
                                        const CopyHypergraph& ghyper) {
    if (!q.centres) throw InvalidInput("Q has no centres");
    const int n = q.n();
    CopyHypergraph out = CopyHypergraph::over_pairs(n);
    if (ghyper.empty()) return out;
    Bits outside(n);
    outside.fill();
    for (int x : *q.centres) outside.reset(x);
    Graph kn = complete_graph(n);
    std::vector<int> centres = *q.centres;
    std::sort(centres.begin(), centres.end());
    for (auto& u : ghyper.edges) {
        if (static_cast<int>(u.size()) != hp.ell) throw InvalidInput("hyperedge size differs from deg h'");
        int vu = -1;
        for (int v : centres) {
            bool all = true;
            for (int x : u) all = all && q.graph.has(v, x);
            if (all) {
                vu = v;
                break;
            }
        }
        if (vu < 0) continue;
        std::vector<Bits> dom(h.n(), outside);
        dom[hp.hprime] = Bits(n);
        dom[hp.hprime].set(vu);
        h.row(hp.hprime).for_each([&](int w) {
            Bits b(n);
            for (int x : u)
                if (q.colour[x] == hp.phi[w]) b.set(x);
            dom[w] = b;
        });
        for_each_embedding(
            h, kn,
            [&](const std::vector<int>& map) {
                std::vector<int> omega;
                bool clean = true;
                for (auto [a, b] : h.edges()) {
                    if (a == hp.hprime || b == hp.hprime) continue;
                    int x = map[a], y = map[b];
                    if (q.graph.has(x, y)) {
                        clean = false;
                        break;
                    }
                    omega.push_back(pair_index(n, x, y));
                }
                if (clean) {
                    std::sort(omega.begin(), omega.end());
                    out.edges.push_back(omega);
                }
                return true;
            },
            &dom);
    }
    out.normalize();
    return out;
}

// N independent samples keeping each copy with probability q.
inline std::vector<CopyHypergraph> sparsify_families(const CopyHypergraph& copies, double q, int N, RngStream rng) {
    if (!(q >= 0 && q <= 1)) throw InvalidInput("q must lie in [0, 1]");
    if (N < 0) throw InvalidInput("N must be nonnegative");
    std::vector<CopyHypergraph> out;
    for (int i = 0; i < N; ++i) {
        CopyHypergraph s{copies.n, copies.ground_size, {}, {}};
        for (auto& e : copies.edges)
            if (rng.bernoulli(q)) s.edges.push_back(e);
        s.multiplicity.assign(s.edges.size(), 1);
        out.push_back(std::move(s));
    }
    return out;
}

struct SparsifySample {
    bool b1 = true, b2 = true;
    double worst_b1_ratio = 0;  // min over S of mu_i / mu_base (inf-free: 1 when base is 0)
    double delta = 0, delta_base = 0;
};

struct SparsifyReport {
    std::vector<SparsifySample> samples;
    std::optional<int> first_passing;
};

// Conditions on the low-degree residuals of each sample: (B1) mu over every
// supplied cut keeps at least q/2 of the full value, (B2) Delta at most 2 q^2
// times the full value.
inline SparsifyReport check_sparsification(const std::vector<CopyHypergraph>& samples, const CopyHypergraph& copies,
                                           const ColoredGraph& q, const Graph& h, const std::vector<PartTuple>& cuts,
                                           double p, double qprob) {
    SparsifyReport rep;
    auto base = residual_family(copies, q, ResidualVariant::low, h);
    const double delta_base = janson_moments(base, p).delta;
    std::vector<double> mu_base;
    std::vector<Graph> exts;
    for (auto& s : cuts) {
        exts.push_back(ext_int(s).first);
        mu_base.push_back(janson_moments(induce(base, exts.back()), p).mu);
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        SparsifySample ss;
        auto fam = residual_family(samples[i], q, ResidualVariant::low, h);
        ss.delta = janson_moments(fam, p).delta;
        ss.delta_base = delta_base;
        ss.worst_b1_ratio = 1;
        for (std::size_t c = 0; c < cuts.size(); ++c) {
            double mu = janson_moments(induce(fam, exts[c]), p).mu;
            if (mu < qprob / 2 * mu_base[c] * (1 - 1e-12)) ss.b1 = false;
            if (mu_base[c] > 0) ss.worst_b1_ratio = std::min(ss.worst_b1_ratio, mu / mu_base[c]);
        }
        ss.b2 = ss.delta <= 2 * qprob * qprob * delta_base * (1 + 1e-12);
        if (ss.b1 && ss.b2 && !rep.first_passing) rep.first_passing = static_cast<int>(i);
        rep.samples.push_back(ss);
    }
    return rep;
}

} // namespace simonovits

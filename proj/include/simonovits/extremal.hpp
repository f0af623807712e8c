#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coloring.hpp"
#include "hypergraph.hpp"
#include "maxcut.hpp"
#include "pattern.hpp"

namespace simonovits {

struct TransversalOptions {
    long long optima_cap = 1000000;
    long long node_budget = 200000000;
    int dp_max_n = 14;  // vertex-subset bound only up to this many vertices
};

// Minimum hitting sets of a copy hypergraph over the edges of g.
//
// Branching is disjoint: for the chosen uncovered copy with allowed edges
// a_1..a_k, branch i takes a_i and forbids a_1..a_{i-1}, so every minimum
// transversal is reached exactly once. Lower bounds are a greedy disjoint
// packing and, on small hosts, a vertex-subset averaging bound on the largest
// H-free subgraph of g - T:
//   UB(S) = min(e(S), floor(sum_v UB(S-v) / (|S|-2))),
// seeded with e(S) - 1 on copy-sized sets that still span a copy.
class TransversalSolver {
public:
    TransversalSolver(const Graph& g, const CopyHypergraph& copies, TransversalOptions opt = {})
        : g_(g), opt_(opt) {
        const int n = g.n();
        auto edges = g.edges();
        m_ = static_cast<int>(edges.size());
        local_.assign(pair_count(n), -1);
        for (int i = 0; i < m_; ++i) {
            local_[pair_index(n, edges[i].first, edges[i].second)] = i;
            ends_.push_back(edges[i]);
        }
        inc_.assign(m_, {});
        for (auto& e : copies.edges) {
            Bits b(m_);
            std::uint32_t vm = 0;
            for (int x : e) {
                int id = local_.at(x);
                if (id < 0) throw InvalidInput("copy uses an edge not in the host");
                b.set(id);
                vm |= (1u << ends_[id].first) | (1u << ends_[id].second);
            }
            for (int x : e) inc_[local_[x]].push_back(static_cast<int>(hedges_.size()));
            hedges_.push_back(std::move(b));
            vmask_.push_back(vm);
        }
        hit_.assign(hedges_.size(), 0);
        use_dp_ = n <= opt_.dp_max_n && n >= 3 && !hedges_.empty();
        if (use_dp_) {
            copy_order_ = std::popcount(vmask_[0]);
            for (auto vm : vmask_)
                if (std::popcount(vm) != copy_order_) use_dp_ = false;
        }
        if (use_dp_) {
            adj_.assign(n, 0);
            ub_.assign(std::size_t{1} << n, 0);
            ecount_.assign(std::size_t{1} << n, 0);
            spans_.assign(std::size_t{1} << n, 0);
        }
    }

    int element_count() const { return m_; }
    long long nodes() const { return nodes_; }
    bool budget_exhausted() const { return exhausted_; }

    // Minimum transversal size; `incumbent` is any known transversal.
    int minimum(const Bits& incumbent) {
        best_ = incumbent.count();
        best_set_ = incumbent;
        mode_ = Mode::optimize;
        run();
        return best_;
    }

    const Bits& best_set() const { return best_set_; }

    // Calls f on every transversal of size tau (tau must be the minimum).
    // Returns false if f stopped the search, the cap was hit or the budget ran out.
    bool enumerate(int tau, const std::function<bool(const Bits&)>& f) {
        best_ = tau;
        mode_ = Mode::enumerate;
        visit_ = &f;
        found_ = 0;
        stopped_ = false;
        run();
        visit_ = nullptr;
        return !stopped_ && !exhausted_;
    }

    long long found() const { return found_; }
    bool capped() const { return capped_; }

    // Edges of g outside the element set t.
    Graph complement(const Bits& t) const {
        Graph f(g_.n());
        for (int i = 0; i < m_; ++i)
            if (!t.test(i)) f.add(ends_[i].first, ends_[i].second);
        return f;
    }

    int dp_upper_bound(const Bits& t) {
        if (!use_dp_) return m_ - t.count();
        return dp_bound(t);
    }

private:
    enum class Mode { optimize, enumerate };

    void run() {
        Bits t(m_), x(m_);
        std::fill(hit_.begin(), hit_.end(), 0);
        exhausted_ = false;
        capped_ = false;
        go(t, x, 0);
    }

    int dp_bound(const Bits& t) {
        const int n = g_.n();
        std::fill(adj_.begin(), adj_.end(), 0u);
        for (int i = 0; i < m_; ++i)
            if (!t.test(i)) {
                auto [u, v] = ends_[i];
                adj_[u] |= 1u << v;
                adj_[v] |= 1u << u;
            }
        for (std::size_t c = 0; c < hedges_.size(); ++c)
            if (!hit_[c]) spans_[vmask_[c]] = 1;
        const std::uint32_t full = (1u << n);
        ecount_[0] = 0;
        ub_[0] = 0;
        for (std::uint32_t s = 1; s < full; ++s) {
            const int v = std::countr_zero(s);
            const std::uint32_t rest = s & (s - 1);
            ecount_[s] = static_cast<std::int16_t>(ecount_[rest] + std::popcount(adj_[v] & rest));
            const int k = std::popcount(s);
            int val = ecount_[s];
            if (k == copy_order_) {
                if (spans_[s]) val -= 1;
            } else if (k > copy_order_) {
                int sum = 0;
                for (std::uint32_t w = s; w; w &= w - 1) sum += ub_[s & ~(w & -w)];
                val = std::min(val, sum / (k - 2));
            }
            ub_[s] = static_cast<std::int16_t>(val);
        }
        for (std::size_t c = 0; c < hedges_.size(); ++c) spans_[vmask_[c]] = 0;
        return ub_[full - 1];
    }

    int packing(const Bits& x) const {
        Bits used(m_);
        int c = 0;
        for (std::size_t i = 0; i < hedges_.size(); ++i) {
            if (hit_[i]) continue;
            Bits a = hedges_[i];
            a.andnot(x);
            if (a.intersects(used)) continue;
            used |= a;
            ++c;
        }
        return c;
    }

    void take(int e, int delta) {
        for (int c : inc_[e]) hit_[c] += delta;
    }

    void go(Bits& t, Bits& x, int size) {
        if (stopped_ || exhausted_) return;
        if (++nodes_ > opt_.node_budget) {
            exhausted_ = true;
            return;
        }
        // most constrained uncovered copy
        int pick = -1, pick_count = 0;
        for (std::size_t i = 0; i < hedges_.size(); ++i) {
            if (hit_[i]) continue;
            int c = hedges_[i].count() - hedges_[i].count_and(x);
            if (c == 0) return;
            if (pick < 0 || c < pick_count) {
                pick = static_cast<int>(i);
                pick_count = c;
            }
        }
        if (pick < 0) {
            if (mode_ == Mode::optimize) {
                if (size < best_) {
                    best_ = size;
                    best_set_ = t;
                }
            } else if (size == best_) {
                ++found_;
                if (found_ > opt_.optima_cap) {
                    capped_ = true;
                    stopped_ = true;
                } else if (!(*visit_)(t)) {
                    stopped_ = true;
                }
            }
            return;
        }
        auto pruned = [&](int lb) { return mode_ == Mode::optimize ? lb >= best_ : lb > best_; };
        if (pruned(size + 1)) return;
        if (pruned(size + packing(x))) return;
        if (use_dp_ && pruned(m_ - dp_bound(t))) return;

        Bits a = hedges_[pick];
        a.andnot(x);
        std::vector<int> choices = a.to_vector();
        // edges lying in many live copies first
        std::stable_sort(choices.begin(), choices.end(), [&](int p, int q) { return live(p) > live(q); });
        std::vector<int> forbidden;
        for (int e : choices) {
            t.set(e);
            take(e, 1);
            go(t, x, size + 1);
            take(e, -1);
            t.reset(e);
            x.set(e);
            forbidden.push_back(e);
            if (stopped_ || exhausted_) break;
        }
        for (int e : forbidden) x.reset(e);
    }

    int live(int e) const {
        int c = 0;
        for (int h : inc_[e]) c += hit_[h] == 0;
        return c;
    }

    const Graph& g_;
    TransversalOptions opt_;
    int m_ = 0;
    std::vector<int> local_;
    std::vector<Edge> ends_;
    std::vector<Bits> hedges_;
    std::vector<std::uint32_t> vmask_;
    std::vector<std::vector<int>> inc_;
    std::vector<int> hit_;
    bool use_dp_ = false;
    int copy_order_ = 0;
    std::vector<std::uint32_t> adj_;
    std::vector<std::int16_t> ub_, ecount_;
    std::vector<char> spans_;

    Mode mode_ = Mode::optimize;
    int best_ = 0;
    Bits best_set_;
    const std::function<bool(const Bits&)>* visit_ = nullptr;
    long long found_ = 0;
    long long nodes_ = 0;
    bool stopped_ = false, exhausted_ = false, capped_ = false;
};

struct HFreeResult {
    int ex = 0;
    Graph witness;
    long long nodes = 0;
};

inline void ex_guard(const Graph& g) {
    if (g.n() > 20) throw TooLarge("exact H-free search limited to 20 vertices, got " + std::to_string(g.n()));
}

namespace detail {

// Transversal from the best r-cut: every r-partite subgraph is H-free when
// chi(H) > r.
inline Bits cut_incumbent(const Graph& g, const std::vector<Edge>& edges, int r) {
    Bits t(static_cast<int>(edges.size()));
    if (r < 2) {
        t.fill();
        return t;
    }
    auto a = g.n() <= 16 ? max_r_cut(g, r).cut.assignment() : local_cut_assignment(g, r);
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (a[edges[i].first] == a[edges[i].second]) t.set(static_cast<int>(i));
    return t;
}

inline void check_h_free(const Graph& f, const Graph& h) {
    if (contains_copy(h, f)) throw InternalConsistency("witness contains a copy of the pattern");
}

} // namespace detail

inline HFreeResult max_H_free(const Graph& g, const Graph& h, TransversalOptions opt = {}) {
    ex_guard(g);
    if (h.edge_count() == 0) throw InvalidInput("pattern must have an edge");
    auto copies = enumerate_copies(h, g);
    if (copies.empty()) return {g.edge_count(), g, 0};
    TransversalSolver solver(g, copies, opt);
    const int r = chromatic_number(h) - 1;
    int tau = solver.minimum(detail::cut_incumbent(g, g.edges(), r));
    if (solver.budget_exhausted()) throw TooLarge("transversal search exceeded its node budget");
    Graph w = solver.complement(solver.best_set());
    detail::check_h_free(w, h);
    return {g.edge_count() - tau, w, solver.nodes()};
}

enum class Decision { yes, no, indeterminate };

inline std::string to_string(Decision d) {
    switch (d) {
        case Decision::yes: return "yes";
        case Decision::no: return "no";
        default: return "indeterminate";
    }
}

enum class CertificateKind {
    none,
    non_rpartite_optimum,
    all_optima_rpartite,
    free_edge_witness,
    r_colourable_host,
    non_edge_critical,
};

inline std::string to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::non_rpartite_optimum: return "non_rpartite_optimum";
        case CertificateKind::all_optima_rpartite: return "all_optima_rpartite";
        case CertificateKind::free_edge_witness: return "free_edge_witness";
        case CertificateKind::r_colourable_host: return "r_colourable_host";
        case CertificateKind::non_edge_critical: return "non_edge_critical";
        default: return "none";
    }
}

struct SimonovitsVerdict {
    int ex_size = 0;
    int best_rpartite = 0;
    Decision decision = Decision::indeterminate;
    CertificateKind kind = CertificateKind::none;
    std::optional<Graph> certificate;  // a maximum H-free subgraph that is not r-partite
    std::optional<Graph> free_edges;   // set when the free-edge test fired
    long long optima_count = 0;        // optima examined (all of them for "yes")
    long long nodes = 0;               // search nodes, a deterministic work measure
    std::string reason;
};

// Edges of g in no copy of h, returned when they are not r-colourable.
inline std::optional<Graph> free_edge_witness(const Graph& g, const Graph& h) {
    const int r = chromatic_number(h) - 1;
    auto copies = enumerate_copies(h, g);
    Bits covered(static_cast<int>(pair_count(g.n())));
    for (auto& e : copies.edges)
        for (int x : e) covered.set(x);
    Graph free(g.n());
    for (auto [u, v] : g.edges())
        if (!covered.test(pair_index(g.n(), u, v))) free.add(u, v);
    if (free.edge_count() == 0 || is_r_colorable(free, r)) return std::nullopt;
    return free;
}

// Re-checks a negative certificate: H-free, of size ex, not r-partite.
inline bool verify_certificate(const SimonovitsVerdict& v, const Graph& g, const Graph& h, int r) {
    if (!v.certificate) return false;
    const Graph& f = *v.certificate;
    return f.subgraph_of(g) && !contains_copy(h, f) && f.edge_count() == v.ex_size && !is_r_colorable(f, r);
}

inline SimonovitsVerdict is_simonovits(const Graph& g, const Graph& h, const PatternProfile& profile,
                                       TransversalOptions opt = {}) {
    const int r = profile.r;
    if (r < 1) throw Inapplicable("pattern needs chromatic number at least 2");
    SimonovitsVerdict out;
    if (is_r_colorable(g, r)) {
        out.ex_size = out.best_rpartite = g.edge_count();
        out.decision = Decision::yes;
        out.kind = CertificateKind::r_colourable_host;
        out.optima_count = 1;
        out.reason = "host is r-colourable, so it is its own unique largest H-free subgraph";
        return out;
    }
    ex_guard(g);
    if (g.n() > 16) throw TooLarge("exact r-cut limited to 16 vertices");
    out.best_rpartite = r >= 2 ? max_r_cut(g, r).value : 0;

    auto copies = enumerate_copies(h, g);
    TransversalSolver solver(g, copies, opt);
    const int tau = solver.minimum(detail::cut_incumbent(g, g.edges(), r));
    out.nodes = solver.nodes();
    if (solver.budget_exhausted()) {
        out.reason = "node budget exhausted while computing ex";
        return out;
    }
    out.ex_size = g.edge_count() - tau;
    Graph opt_graph = solver.complement(solver.best_set());
    detail::check_h_free(opt_graph, h);

    auto negative = [&](CertificateKind k, Graph cert, std::string why) {
        out.decision = Decision::no;
        out.kind = k;
        out.certificate = std::move(cert);
        out.reason = std::move(why);
        return out;
    };

    if (!profile.edge_critical)
        return negative(CertificateKind::non_edge_critical, opt_graph,
                        "pattern is not edge-critical and chi(g) >= chi(h): a best r-partite subgraph plus one "
                        "edge stays H-free");
    if (auto fw = free_edge_witness(g, h)) {
        out.free_edges = fw;
        return negative(CertificateKind::free_edge_witness, opt_graph,
                        "edges in no copy are not r-colourable and lie in every largest H-free subgraph");
    }
    if (out.ex_size > out.best_rpartite)
        return negative(CertificateKind::non_rpartite_optimum, opt_graph, "ex exceeds the best r-partite subgraph");

    std::optional<Graph> bad;
    const bool complete = solver.enumerate(tau, [&](const Bits& t) {
        Graph f = solver.complement(t);
        if (!is_r_colorable(f, r)) {
            bad = f;
            return false;
        }
        return true;
    });
    out.nodes = solver.nodes();
    out.optima_count = std::min(solver.found(), opt.optima_cap);
    if (bad) return negative(CertificateKind::non_rpartite_optimum, *bad, "an optimum is not r-partite");
    if (!complete) {
        out.reason = solver.capped() ? "enumeration cap on optima reached" : "node budget exhausted during enumeration";
        return out;
    }
    out.decision = Decision::yes;
    out.kind = CertificateKind::all_optima_rpartite;
    out.reason = "all " + std::to_string(out.optima_count) + " optima are r-partite";
    return out;
}

inline SimonovitsVerdict is_simonovits(const Graph& g, const Graph& h, TransversalOptions opt = {}) {
    PatternProfile p;
    p.h = h;
    p.chi = chromatic_number(h);
    p.r = p.chi - 1;
    p.edge_critical = is_edge_critical(h).critical;
    return is_simonovits(g, h, p, opt);
}

inline nlohmann::json to_json(const SimonovitsVerdict& v) {
    nlohmann::json j;
    j["ex_size"] = v.ex_size;
    j["best_rpartite"] = v.best_rpartite;
    j["decision"] = to_string(v.decision);
    j["certificate_kind"] = to_string(v.kind);
    j["certificate"] = v.certificate ? graph_to_json(*v.certificate) : nlohmann::json(nullptr);
    if (v.free_edges) j["free_edges"] = graph_to_json(*v.free_edges);
    j["optima_count"] = v.optima_count;
    j["nodes"] = v.nodes;
    j["reason"] = v.reason;
    return j;
}

struct PeelStep {
    int vertex = 0;
    int degree = 0;
    int order = 0;  // number of vertices k before the deletion
};

struct PeelResult {
    Graph f;                     // graph that was peeled
    std::vector<PeelStep> steps;
    std::vector<int> remaining;  // surviving vertices
    Graph terminal;              // induced on the survivors, original labels
    bool terminal_r_partite = false;
    bool hypothesis_met = false;  // min degree of the host reaches the dense bound
};

// Repeatedly delete the smallest-index vertex of degree <= (3r-4)/(3r-1) k,
// with k the current order.
inline PeelResult peel(const Graph& f, int r) {
    PeelResult out;
    out.f = f;
    const int n = f.n();
    std::vector<char> alive(n, 1);
    std::vector<int> deg(n);
    for (int v = 0; v < n; ++v) deg[v] = f.degree(v);
    int k = n;
    while (k > 0) {
        int pick = -1;
        for (int v = 0; v < n && pick < 0; ++v)
            if (alive[v] && static_cast<long long>(deg[v]) * (3 * r - 1) <= static_cast<long long>(3 * r - 4) * k)
                pick = v;
        if (pick < 0) break;
        out.steps.push_back({pick, deg[pick], k});
        alive[pick] = 0;
        f.row(pick).for_each([&](int w) {
            if (alive[w]) --deg[w];
        });
        --k;
    }
    Graph t(n);
    for (int v = 0; v < n; ++v)
        if (alive[v]) {
            out.remaining.push_back(v);
            f.row(v).for_each([&](int w) {
                if (w > v && alive[w]) t.add(v, w);
            });
        }
    out.terminal = t;
    out.terminal_r_partite = is_r_colorable(t, r);
    return out;
}

// Peels a largest H-free subgraph of g.
inline PeelResult dense_peel(const Graph& g, const Graph& h, const PatternProfile& profile) {
    auto best = max_H_free(g, h);
    auto out = peel(best.witness, profile.r);
    out.hypothesis_met = g.n() > 0 && g.min_degree() >= dense_min_degree_bound(profile.r, g.n());
    return out;
}

struct Augmentation {
    std::vector<int> assignment;
    Graph subgraph;          // edges of g crossing the assignment
    Rational guaranteed;     // e(G') + (r-1)/r e(G - V(G'))
};

// From an r-partite G' (colouring >= 0 on V(G'), -1 elsewhere) build an
// r-partite subgraph of g with at least e(G') + (r-1)/r e(G - V(G')) edges.
// Outside vertices are placed by local search on the edges among themselves.
inline Augmentation augment_rpartite(const Graph& g, const Graph& gprime, const std::vector<int>& colour, int r) {
    const int n = g.n();
    if (static_cast<int>(colour.size()) != n || gprime.n() != n) throw InvalidInput("size mismatch");
    if (!gprime.subgraph_of(g)) throw InvalidInput("G' must be a subgraph of G");
    for (auto [u, v] : gprime.edges())
        if (colour[u] < 0 || colour[v] < 0 || colour[u] == colour[v])
            throw InvalidInput("colouring is not proper on G'");
    std::vector<int> outside;
    for (int v = 0; v < n; ++v) {
        if (colour[v] >= r) throw InvalidInput("colour out of range");
        if (colour[v] < 0) outside.push_back(v);
    }
    Graph rest = g.induced(outside);
    auto local = local_cut_assignment(rest, r);
    std::vector<int> a = colour;
    for (std::size_t i = 0; i < outside.size(); ++i) a[outside[i]] = local[i];
    Graph sub(n);
    for (auto [u, v] : g.edges())
        if (a[u] != a[v]) sub.add(u, v);
    Rational bound = Rational(gprime.edge_count()) + Rational(r - 1, r) * rest.edge_count();
    if (Rational(sub.edge_count()) < bound) throw InternalConsistency("augmentation below its guarantee");
    return {a, sub, bound};
}

} // namespace simonovits

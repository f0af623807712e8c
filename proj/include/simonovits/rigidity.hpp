#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coloring.hpp"
#include "cut.hpp"
#include "hypergraph.hpp"
#include "pattern.hpp"
#include "rng.hpp"

namespace simonovits {

// All delta-balanced r-cuts of [n] compatible with Q (or all of them when Q is
// absent), held explicitly as same-part masks.
class CutFamily {
public:
    static constexpr std::size_t max_members = 2000000;

    CutFamily(int n, int r, double delta, std::optional<ColoredGraph> q = std::nullopt)
        : n_(n), r_(r), delta_(delta), q_(std::move(q)) {
        if (n < 1 || n > 64) throw TooLarge("cut families are held for n <= 64");
        if (r < 2) throw InvalidInput("r must be at least 2");
        if (delta < 0) throw InvalidInput("delta must be nonnegative");
        if (q_ && (q_->n() != n || q_->r != r)) throw InvalidInput("Q does not match (n, r)");
        const double avg = static_cast<double>(n) / r;
        lo_ = static_cast<int>(std::ceil((1 - delta) * avg - 1e-12));
        hi_ = static_cast<int>(std::floor((1 + delta) * avg + 1e-12));
        std::vector<int> a(n, -1), size(r, 0);
        enumerate(0, a, size);
    }

    int n() const { return n_; }
    int r() const { return r_; }
    double delta() const { return delta_; }
    const std::optional<ColoredGraph>& q() const { return q_; }
    std::size_t size() const { return masks_.size(); }
    bool empty() const { return masks_.empty(); }

    const std::vector<int>& assignment(std::size_t i) const { return assign_[i]; }
    Cut cut(std::size_t i) const { return Cut::from_assignment(assign_[i], r_); }

    std::optional<std::size_t> index_of(const std::vector<int>& a) const {
        auto it = std::lower_bound(assign_.begin(), assign_.end(), a);
        if (it == assign_.end() || *it != a) return std::nullopt;
        return static_cast<std::size_t>(it - assign_.begin());
    }

    // e(ext(cut i) ∩ G) for adjacency rows given as masks.
    int value(std::size_t i, const std::vector<std::uint64_t>& adj) const {
        int s = 0;
        for (int v = 0; v < n_; ++v) s += std::popcount(adj[v] & ~masks_[i][v]);
        return s / 2;
    }

    const std::vector<std::uint64_t>& same_part(std::size_t i) const { return masks_[i]; }

private:
    void enumerate(int v, std::vector<int>& a, std::vector<int>& size) {
        if (v == n_) {
            for (int s : size)
                if (s < lo_) return;
            std::vector<std::uint64_t> m(n_, 0);
            for (int x = 0; x < n_; ++x)
                for (int y = 0; y < n_; ++y)
                    if (a[x] == a[y]) m[x] |= std::uint64_t{1} << y;
            assign_.push_back(a);
            masks_.push_back(std::move(m));
            if (masks_.size() > max_members) throw TooLarge("cut family exceeds the enumeration guard");
            return;
        }
        int remaining = n_ - v - 1;
        for (int k = 0; k < r_; ++k) {
            if (q_ && q_->colour[v] >= 0 && q_->colour[v] != k) continue;
            if (size[k] + 1 > hi_) continue;
            ++size[k];
            int need = 0;
            for (int s : size) need += std::max(0, lo_ - s);
            if (need <= remaining) {
                a[v] = k;
                enumerate(v + 1, a, size);
            }
            --size[k];
        }
        a[v] = -1;
    }

    int n_, r_;
    double delta_;
    std::optional<ColoredGraph> q_;
    int lo_ = 0, hi_ = 0;
    std::vector<std::vector<int>> assign_;  // lexicographic
    std::vector<std::vector<std::uint64_t>> masks_;
};

namespace detail {

inline std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
    if (g.n() > 64) throw TooLarge("mask adjacency needs n <= 64");
    std::vector<std::uint64_t> adj(g.n(), 0);
    for (auto [u, v] : g.edges()) {
        adj[u] |= std::uint64_t{1} << v;
        adj[v] |= std::uint64_t{1} << u;
    }
    return adj;
}

inline double balanced_pair_count(int n, int r) {
    double s = 0;
    for (int i = 0; i < r; ++i) {
        double sz = n / r + (i < n % r ? 1 : 0);
        s += sz * (sz - 1) / 2;
    }
    return s;
}

} // namespace detail

struct MaxCutSet {
    int b = 0;
    std::vector<std::size_t> members;  // indices into the family
};

inline MaxCutSet maxcut_set(const Graph& g, const CutFamily& fam) {
    if (g.n() != fam.n()) throw InvalidInput("graph and family differ in n");
    if (fam.empty()) throw InvalidInput("cut family is empty");
    auto adj = detail::adjacency_masks(g);
    MaxCutSet m;
    m.b = -1;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        int v = fam.value(i, adj);
        if (v > m.b) {
            m.b = v;
            m.members.clear();
        }
        if (v == m.b) m.members.push_back(i);
    }
    return m;
}

struct Deficit {
    int b = 0;
    int deficit = 0;
};

inline Deficit deficit(const Cut& cut, const Graph& g, const CutFamily& fam) {
    auto idx = fam.index_of(cut.assignment());
    if (!cut.complete() || cut.r() != fam.r() || !idx) throw InvalidInput("cut is not in the family");
    auto m = maxcut_set(g, fam);
    return {m.b, m.b - fam.value(*idx, detail::adjacency_masks(g))};
}

enum class RigidityThreshold { corrected, literal };

struct RigidityReport {
    int b = 0;
    std::size_t maxcuts = 0;
    long long equivalent_pairs = 0;
    double threshold = 0;
    bool rigid = false;
    std::vector<std::vector<int>> components;  // sorted by least element
    std::optional<PartTuple> core;             // canonical: parts ordered by least element
    std::string core_issue;                    // set when rigid but no unique core
    Graph crit;
    MaxCutSet maxcut;
};

inline double rigidity_threshold(int n, int r, double alpha, RigidityThreshold t = RigidityThreshold::corrected) {
    if (t == RigidityThreshold::literal) return (1 - alpha) * n * static_cast<double>(n) / (2.0 * r);
    return (1 - alpha) * detail::balanced_pair_count(n, r);
}

inline RigidityReport equivalence_and_rigidity(const Graph& g, const CutFamily& fam, double alpha,
                                               RigidityThreshold t = RigidityThreshold::corrected) {
    const int n = g.n();
    const int r = fam.r();
    RigidityReport rep;
    rep.maxcut = maxcut_set(g, fam);
    rep.b = rep.maxcut.b;
    rep.maxcuts = rep.maxcut.members.size();
    std::vector<std::uint64_t> always(n, ~std::uint64_t{0}), ever(n, 0);
    for (auto i : rep.maxcut.members) {
        auto& m = fam.same_part(i);
        for (int v = 0; v < n; ++v) {
            always[v] &= m[v];
            ever[v] |= m[v];
        }
    }
    std::vector<char> seen(n, 0);
    for (int v = 0; v < n; ++v) {
        rep.equivalent_pairs += std::popcount(always[v]) - 1;
        if (seen[v]) continue;
        std::vector<int> comp;
        for (int w = 0; w < n; ++w)
            if (always[v] >> w & 1) {
                comp.push_back(w);
                seen[w] = 1;
            }
        rep.components.push_back(comp);
    }
    rep.equivalent_pairs /= 2;
    rep.threshold = rigidity_threshold(n, r, alpha, t);
    rep.rigid = rep.equivalent_pairs >= rep.threshold - 1e-9;

    rep.crit = Graph(n);
    for (auto [u, v] : g.edges())
        if (!(ever[u] >> v & 1)) rep.crit.add(u, v);

    if (rep.rigid) {
        const double big = (1 - 4 * r * alpha) * n / r;
        std::vector<std::vector<int>> large;
        for (auto& c : rep.components)
            if (c.size() > big + 1e-12) large.push_back(c);
        if (static_cast<int>(large.size()) == r) {
            rep.core = PartTuple(n, large);
            auto [ext, in] = ext_int(*rep.core);
            for (auto [u, v] : g.edges())
                if (ext.has(u, v) && !rep.crit.has(u, v))
                    throw InternalConsistency("edge of ext(core) is not critical");
        } else {
            rep.core_issue = std::to_string(large.size()) + " components exceed the core size bound, expected " +
                             std::to_string(r);
        }
    }
    return rep;
}

inline Graph crit_edges(const Graph& g, const CutFamily& fam) { return equivalence_and_rigidity(g, fam, 0).crit; }

// Each nonempty V^k(Q) inside a distinct core element.
inline bool q_in_core(const ColoredGraph& q, const PartTuple& core) {
    auto a = core.assignment();
    std::vector<int> used;
    for (int k = 0; k < q.r; ++k) {
        auto cls = q.colour_class(k);
        if (cls.empty()) continue;
        int part = a[cls[0]];
        if (part < 0) return false;
        for (int v : cls)
            if (a[v] != part) return false;
        if (std::find(used.begin(), used.end(), part) != used.end()) return false;
        used.push_back(part);
    }
    return true;
}

struct SwitchStep {
    char type = 'e';
    std::optional<Edge> edge;
    int deficit_before = 0;
    int deficit_after = 0;
    std::uint64_t draws = 0;  // RNG draws consumed before this step
};

struct SwitchParams {
    long long m = 1;  // negative means infinite
    int L = 200;
    double p = 0.5;
    double alpha = 0.05;
    double delta = 0.1;
    std::optional<double> gamma;  // defaults to alpha/(24 r)
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    RigidityThreshold threshold = RigidityThreshold::corrected;

    double gamma_value(int r) const { return gamma ? *gamma : alpha / (24.0 * r); }
};

struct SwitchTrace {
    Graph g0;
    std::vector<int> cut;  // assignment of the witnessing cut
    SwitchParams params;
    std::vector<SwitchStep> steps;
    Graph g_final, f_final;
    std::string stop;  // "e", "L" or "stuck:<branch>"
    int initial_deficit = 0;
};

namespace detail {

inline Edge uniform_edge(const std::vector<Edge>& es, RngStream& rng, std::uint64_t& draws) {
    ++draws;
    return es[rng.below(es.size())];
}

} // namespace detail

inline SwitchTrace run_switching(const Graph& g0, const ColoredGraph& q, const Cut& cut, const CopyHypergraph& resid,
                                 const SwitchParams& prm) {
    const int n = g0.n();
    const int r = q.r;
    if (prm.L < 1) throw InvalidInput("L must be at least 1");
    if (!q.graph.subgraph_of(g0)) throw InvalidInput("Q must be contained in G_0");
    if (resid.n != n || resid.ground_size != static_cast<int>(pair_count(n)))
        throw InvalidInput("residual family must be over the pairs of [n]");
    CutFamily fam(n, r, prm.delta, q);
    const auto a = cut.assignment();
    auto idx = fam.index_of(a);
    if (!cut.complete() || !idx) throw InvalidInput("cut is not a compatible balanced cut");
    PairTable pt(n);
    std::vector<std::vector<Edge>> omega_edges;
    for (auto& w : resid.edges) {
        std::vector<Edge> es;
        for (int e : w) {
            es.push_back(pt[e]);
            if (q.graph.has(pt[e].first, pt[e].second)) throw InvalidInput("residual meets Q");
        }
        omega_edges.push_back(std::move(es));
    }
    auto internal = [&](int u, int v) { return a[u] == a[v]; };

    SwitchTrace tr;
    tr.g0 = g0;
    tr.cut = a;
    tr.params = prm;
    Graph g = g0, f(n);
    RngStream rng(prm.seed, prm.stream);
    std::uint64_t draws = 0;
    const double gamma_cut = prm.gamma_value(r) * n * static_cast<double>(n) * prm.p;
    auto def_of = [&](const RigidityReport& rep) {
        return rep.b - fam.value(*idx, detail::adjacency_masks(g | f));
    };
    tr.initial_deficit = def_of(equivalence_and_rigidity(g | f, fam, prm.alpha, prm.threshold));
    tr.stop = "L";
    for (int i = 0; i < prm.L; ++i) {
        auto rep = equivalence_and_rigidity(g | f, fam, prm.alpha, prm.threshold);
        SwitchStep st;
        st.deficit_before = def_of(rep);
        st.draws = draws;
        // (a)
        std::vector<Edge> U;
        {
            std::vector<char> inU(pair_count(n), 0);
            for (auto& es : omega_edges) {
                bool inside = true, meets = false;
                for (auto [x, y] : es) {
                    inside = inside && g.has(x, y) && rep.crit.has(x, y);
                    meets = meets || internal(x, y);
                }
                if (!inside || !meets) continue;
                for (auto [x, y] : es)
                    if (internal(x, y)) inU[pt.index(x, y)] = 1;
            }
            for (std::size_t e = 0; e < inU.size(); ++e)
                if (inU[e]) U.push_back(pt[static_cast<int>(e)]);
        }
        std::vector<Edge> crit_int, crit_int_free, noncrit_int;
        for (auto [x, y] : rep.crit.edges())
            if (internal(x, y)) {
                crit_int.push_back({x, y});
                if (g.has(x, y) && !q.graph.has(x, y)) crit_int_free.push_back({x, y});
            }
        for (auto [x, y] : g.edges())
            if (internal(x, y) && !rep.crit.has(x, y) && !q.graph.has(x, y)) noncrit_int.push_back({x, y});

        auto stuck = [&](char b) { tr.stop = std::string("stuck:") + b; };
        if (prm.m >= 0 && static_cast<long long>(U.size()) >= prm.m) {
            if (U.empty()) {
                stuck('a');
                break;
            }
            st.type = 'a';
            st.edge = detail::uniform_edge(U, rng, draws);
            g.remove(st.edge->first, st.edge->second);
        } else if (static_cast<double>(crit_int.size()) >= gamma_cut) {
            if (crit_int_free.empty()) {
                stuck('b');
                break;
            }
            st.type = 'b';
            st.edge = detail::uniform_edge(crit_int_free, rng, draws);
            g.remove(st.edge->first, st.edge->second);
        } else if (!rep.rigid) {
            if (noncrit_int.empty()) {
                stuck('c');
                break;
            }
            st.type = 'c';
            st.edge = detail::uniform_edge(noncrit_int, rng, draws);
            g.remove(st.edge->first, st.edge->second);
        } else if (!rep.core) {
            stuck('d');
            break;
        } else if (!q_in_core(q, *rep.core)) {
            // smallest k with an S_j sharing a part with V^k(Q) in some but not all maximum cuts
            const auto& core = *rep.core;
            std::vector<Edge> choices;
            for (int k = 0; k < r && choices.empty(); ++k) {
                auto vk = q.colour_class(k);
                if (vk.empty()) continue;
                std::vector<int> targets;
                for (int j = 0; j < r; ++j) {
                    std::size_t together = 0;
                    for (auto ci : rep.maxcut.members) {
                        auto& ca = fam.assignment(ci);
                        bool same = true;
                        int part = ca[vk[0]];
                        for (int v : vk) same = same && ca[v] == part;
                        for (int v : core.parts[j]) same = same && ca[v] == part;
                        together += same;
                    }
                    if (together > 0 && together < rep.maxcut.members.size())
                        targets.insert(targets.end(), core.parts[j].begin(), core.parts[j].end());
                }
                for (int x : vk)
                    for (int y : targets)
                        if (x != y && !internal(x, y) && !g.has(x, y) && !f.has(x, y))
                            choices.push_back({std::min(x, y), std::max(x, y)});
                std::sort(choices.begin(), choices.end());
                choices.erase(std::unique(choices.begin(), choices.end()), choices.end());
            }
            if (choices.empty()) {
                stuck('d');
                break;
            }
            st.type = 'd';
            st.edge = detail::uniform_edge(choices, rng, draws);
            f.add(st.edge->first, st.edge->second);
        } else {
            tr.stop = "e";
            break;
        }
        st.deficit_after = def_of(equivalence_and_rigidity(g | f, fam, prm.alpha, prm.threshold));
        tr.steps.push_back(st);
    }
    tr.g_final = g;
    tr.f_final = f;
    return tr;
}

inline nlohmann::json to_json(const SwitchTrace& t) {
    nlohmann::json j;
    j["n"] = t.g0.n();
    j["g0"] = graph_to_json(t.g0)["edges"];
    j["cut"] = t.cut;
    j["seed"] = t.params.seed;
    j["stream"] = t.params.stream;
    j["rng"] = RngStream::algorithm;
    j["m"] = t.params.m;
    j["L"] = t.params.L;
    j["p"] = t.params.p;
    j["alpha"] = t.params.alpha;
    j["delta"] = t.params.delta;
    j["gamma"] = t.params.gamma_value(*std::max_element(t.cut.begin(), t.cut.end()) + 1);
    j["initial_deficit"] = t.initial_deficit;
    j["stop"] = t.stop;
    auto& s = j["steps"] = nlohmann::json::array();
    for (auto& st : t.steps) {
        nlohmann::json x{{"type", std::string(1, st.type)},
                         {"deficit_before", st.deficit_before},
                         {"deficit_after", st.deficit_after},
                         {"draws", st.draws}};
        x["edge"] = st.edge ? nlohmann::json::array({st.edge->first, st.edge->second}) : nlohmann::json();
        s.push_back(x);
    }
    return j;
}

struct Violation {
    std::string property;
    int index = -1;
    std::string message;
};

struct TraceReport {
    bool ok = true;
    std::vector<Violation> violations;
    int steps_ab = 0, steps_c = 0, steps_d = 0;
    int deficit_increases = 0;
};

inline nlohmann::json to_json(const TraceReport& r) {
    nlohmann::json j{{"ok", r.ok}, {"steps_ab", r.steps_ab}, {"steps_c", r.steps_c}, {"steps_d", r.steps_d},
                     {"deficit_increases", r.deficit_increases}};
    auto& v = j["violations"] = nlohmann::json::array();
    for (auto& x : r.violations) v.push_back({{"property", x.property}, {"index", x.index}, {"message", x.message}});
    return j;
}

// Replays the trace from G_0 and checks the properties of legal sequences,
// recomputing every deficit from scratch.
inline TraceReport validate_trace(const SwitchTrace& tr, const ColoredGraph& q, int d) {
    const int n = tr.g0.n();
    const int r = q.r;
    TraceReport rep;
    auto fail = [&](const std::string& p, int i, const std::string& m) {
        rep.ok = false;
        rep.violations.push_back({p, i, m});
    };
    CutFamily fam(n, r, tr.params.delta, q);
    auto idx = fam.index_of(tr.cut);
    if (!idx) {
        fail("setup", -1, "cut is not in the family");
        return rep;
    }
    auto deficit_of = [&](const Graph& h) {
        auto m = maxcut_set(h, fam);
        return m.b - fam.value(*idx, detail::adjacency_masks(h));
    };
    Graph g = tr.g0, f(n);
    const int e0 = g.edge_count();
    int prev_def = deficit_of(g);
    int block = 0;
    char prev = 0;
    for (std::size_t s = 0; s < tr.steps.size(); ++s) {
        const int i = static_cast<int>(s);
        const auto& st = tr.steps[s];
        if (!st.edge) {
            fail("ii", i + 1, "step without an edge");
            continue;
        }
        auto [x, y] = *st.edge;
        if (x < 0 || y < 0 || x >= n || y >= n || x == y) {
            fail("ii", i + 1, "edge out of range");
            continue;
        }
        switch (st.type) {
            case 'a':
            case 'b':
            case 'c':
                if (q.graph.has(x, y)) fail("i", i + 1, "removed an edge of Q");
                if (g.has(x, y)) g.remove(x, y);
                break;
            case 'd':
                if (!g.has(x, y)) f.add(x, y);
                break;
            default: fail("ii", i + 1, std::string("unknown step type ") + st.type);
        }
        if (e0 - g.edge_count() + f.edge_count() != i + 1)
            fail("ii", i + 1, "edge count identity fails");
        if (g.edge_count() + f.edge_count() != (g | f).edge_count()) fail("ii", i + 1, "G and F intersect");
        const int def = deficit_of(g | f);
        if (def > prev_def) {
            ++rep.deficit_increases;
            fail("iii", i + 1, "deficit increased from " + std::to_string(prev_def) + " to " + std::to_string(def));
        }
        if ((st.type == 'a' || st.type == 'b') && def != prev_def - 1)
            fail("iii", i + 1, "step of type a/b did not lower the deficit by one");
        if (def != st.deficit_after) fail("iii", i + 1, "recorded deficit differs from recomputed value");
        prev_def = def;
        if (st.type == 'a' || st.type == 'b') ++rep.steps_ab;
        if (st.type == 'c') ++rep.steps_c;
        if (st.type == 'd') {
            ++rep.steps_d;
            if (++block > r * r) fail("iv", i + 1, "more than r^2 consecutive steps of type d");
        } else {
            if (prev == 'd' && st.type == 'c') fail("iv", i + 1, "type c step right after type d");
            block = 0;
        }
        prev = st.type;
    }
    if (!q.graph.subgraph_of(g)) fail("i", static_cast<int>(tr.steps.size()), "Q not contained in G_t");
    if (rep.steps_ab > d) fail("iii", -1, std::to_string(rep.steps_ab) + " steps of type a/b exceed d");
    if (rep.steps_d > r * r * (d + 1)) fail("iv", -1, "too many steps of type d");
    return rep;
}

} // namespace simonovits

#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"

namespace simonovits {

using Edge = std::pair<int, int>;

// Lexicographic index of the pair (u,v), u<v, among all pairs of [n].
inline int pair_index(int n, int u, int v) {
    if (u > v) std::swap(u, v);
    return u * (2 * n - u - 1) / 2 + (v - u - 1);
}

inline long long pair_count(long long n) { return n * (n - 1) / 2; }

// Inverse of pair_index, precomputed for one n.
class PairTable {
public:
    explicit PairTable(int n) : n_(n) {
        pairs_.reserve(pair_count(n));
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) pairs_.emplace_back(u, v);
    }
    int n() const { return n_; }
    int size() const { return static_cast<int>(pairs_.size()); }
    const Edge& operator[](int idx) const { return pairs_[idx]; }
    int index(int u, int v) const { return pair_index(n_, u, v); }

private:
    int n_;
    std::vector<Edge> pairs_;
};

class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(n, Bits(n)) {}
    Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
        for (auto [u, v] : edges) add(u, v);
    }

    int n() const { return n_; }
    bool has(int u, int v) const { return adj_[u].test(v); }
    const Bits& row(int v) const { return adj_[v]; }
    int degree(int v) const { return adj_[v].count(); }

    void add(int u, int v) {
        if (u == v) throw InvalidInput("loop edge");
        if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InvalidInput("vertex out of range");
        if (!adj_[u].test(v)) ++m_;
        adj_[u].set(v);
        adj_[v].set(u);
    }
    void remove(int u, int v) {
        if (adj_[u].test(v)) --m_;
        adj_[u].reset(v);
        adj_[v].reset(u);
    }

    int edge_count() const { return m_; }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(m_);
        for (int u = 0; u < n_; ++u)
            adj_[u].for_each([&](int v) {
                if (v > u) out.emplace_back(u, v);
            });
        return out;
    }

    std::vector<int> edge_indices() const {
        std::vector<int> out;
        out.reserve(m_);
        for (auto [u, v] : edges()) out.push_back(pair_index(n_, u, v));
        return out;
    }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }
    int min_degree() const {
        if (n_ == 0) return 0;
        int d = n_;
        for (int v = 0; v < n_; ++v) d = std::min(d, degree(v));
        return d;
    }

    // Subgraph induced on `verts`, relabelled 0..k-1 in the given order.
    Graph induced(const std::vector<int>& verts) const {
        Graph g(static_cast<int>(verts.size()));
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j)
                if (has(verts[i], verts[j])) g.add(static_cast<int>(i), static_cast<int>(j));
        return g;
    }

    // Same vertex set, keep only edges inside `keep`.
    Graph restricted_to(const Bits& keep) const {
        Graph g(n_);
        for (auto [u, v] : edges())
            if (keep.test(u) && keep.test(v)) g.add(u, v);
        return g;
    }

    bool subgraph_of(const Graph& o) const {
        if (o.n_ != n_) return false;
        for (int v = 0; v < n_; ++v)
            if (!adj_[v].subset_of(o.adj_[v])) return false;
        return true;
    }

    Graph& operator|=(const Graph& o) {
        for (auto [u, v] : o.edges()) add(u, v);
        return *this;
    }
    friend Graph operator|(Graph a, const Graph& b) { return a |= b; }
    friend Graph operator&(const Graph& a, const Graph& b) {
        Graph g(a.n_);
        for (auto [u, v] : a.edges())
            if (b.has(u, v)) g.add(u, v);
        return g;
    }
    friend Graph operator-(const Graph& a, const Graph& b) {
        Graph g(a.n_);
        for (auto [u, v] : a.edges())
            if (!b.has(u, v)) g.add(u, v);
        return g;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<Bits> adj_;
};

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add(u, v);
    return g;
}

inline Graph cycle_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add(i, (i + 1) % n);
    return g;
}

// K_r(m): class i holds vertices i*m .. i*m+m-1.
inline Graph blowup(int r, int m) {
    Graph g(r * m);
    for (int u = 0; u < r * m; ++u)
        for (int v = u + 1; v < r * m; ++v)
            if (u / m != v / m) g.add(u, v);
    return g;
}

// K_r(m)^+: the blow-up plus one edge inside the first class.
inline Graph blowup_plus(int r, int m) {
    Graph g = blowup(r, m);
    if (m >= 2) g.add(0, 1);
    return g;
}

inline Graph complete_bipartite(int a, int b) {
    Graph g(a + b);
    for (int u = 0; u < a; ++u)
        for (int v = a; v < a + b; ++v) g.add(u, v);
    return g;
}

// Vertex-disjoint union; vertices of b are shifted by a.n().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph g(a.n() + b.n());
    for (auto [u, v] : a.edges()) g.add(u, v);
    for (auto [u, v] : b.edges()) g.add(u + a.n(), v + a.n());
    return g;
}

inline Graph petersen_graph() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add(i, (i + 1) % 5);
        g.add(i, i + 5);
        g.add(5 + i, 5 + (i + 2) % 5);
    }
    return g;
}

inline std::optional<Graph> builtin_graph(const std::string& name) {
    if (name == "triangle" || name == "k3") return complete_graph(3);
    if (name == "c5") return cycle_graph(5);
    if (name == "k4") return complete_graph(4);
    if (name == "k5") return complete_graph(5);
    if (name == "petersen") return petersen_graph();
    return std::nullopt;
}

// Edge-list text form: "n m" then m lines "u v" with u<v.
inline std::string to_edge_list(const Graph& g) {
    std::ostringstream os;
    os << g.n() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
    return os.str();
}

inline Graph parse_edge_list(std::istream& in) {
    long long n = -1, m = -1;
    if (!(in >> n >> m) || n < 0 || m < 0) throw InvalidInput("graph header must be \"n m\"");
    Graph g(static_cast<int>(n));
    for (long long i = 0; i < m; ++i) {
        long long u, v;
        if (!(in >> u >> v)) throw InvalidInput("graph file truncated");
        if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw InvalidInput("bad edge in graph file");
        if (g.has(static_cast<int>(u), static_cast<int>(v))) throw InvalidInput("duplicate edge in graph file");
        g.add(static_cast<int>(u), static_cast<int>(v));
    }
    return g;
}

inline Graph parse_edge_list(const std::string& text) {
    std::istringstream is(text);
    return parse_edge_list(is);
}

// Built-in name or path to an edge-list file.
inline Graph load_graph(const std::string& name) {
    if (auto g = builtin_graph(name)) return *g;
    std::ifstream f(name);
    if (!f) throw InvalidInput("cannot open graph '" + name + "'");
    return parse_edge_list(f);
}

} // namespace simonovits

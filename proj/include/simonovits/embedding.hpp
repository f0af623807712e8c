#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "graph.hpp"

namespace simonovits {

namespace detail {

// Vertex order for h: greedy by number of already-placed neighbours.
inline std::vector<int> embedding_order(const Graph& h) {
    const int k = h.n();
    std::vector<int> order;
    std::vector<char> placed(k, 0);
    for (int step = 0; step < k; ++step) {
        int best = -1, best_back = -1, best_deg = -1;
        for (int v = 0; v < k; ++v) {
            if (placed[v]) continue;
            int back = 0;
            for (int u : order) back += h.has(u, v);
            int deg = h.degree(v);
            if (back > best_back || (back == best_back && deg > best_deg)) {
                best = v;
                best_back = back;
                best_deg = deg;
            }
        }
        placed[best] = 1;
        order.push_back(best);
    }
    return order;
}

template <class F>
class Embedder {
public:
    Embedder(const Graph& h, const Graph& host, const std::vector<Bits>* domains, F& f)
        : h_(h), host_(host), domains_(domains), f_(f), map_(h.n(), -1), used_(host.n()) {
        order_ = embedding_order(h);
        back_.resize(h.n());
        for (int i = 0; i < h.n(); ++i)
            for (int j = 0; j < i; ++j)
                if (h.has(order_[i], order_[j])) back_[i].push_back(order_[j]);
    }

    long long run() {
        if (h_.n() > host_.n()) return 0;
        go(0);
        return count_;
    }

private:
    bool go(int i) {
        if (i == h_.n()) {
            ++count_;
            return f_(static_cast<const std::vector<int>&>(map_));
        }
        const int x = order_[i];
        Bits cand(host_.n());
        if (domains_ && (*domains_)[x].size() != 0)
            cand = (*domains_)[x];
        else
            cand.fill();
        for (int y : back_[i]) cand &= host_.row(map_[y]);
        cand.andnot(used_);
        bool keep_going = true;
        cand.for_each([&](int v) {
            if (!keep_going) return;
            map_[x] = v;
            used_.set(v);
            keep_going = go(i + 1);
            used_.reset(v);
            map_[x] = -1;
        });
        return keep_going;
    }

    const Graph& h_;
    const Graph& host_;
    const std::vector<Bits>* domains_;
    F& f_;
    std::vector<int> map_;
    Bits used_;
    std::vector<int> order_;
    std::vector<std::vector<int>> back_;
    long long count_ = 0;
};

} // namespace detail

// Calls f(map) for every injective edge-preserving map V(h) -> V(host).
// f returns false to stop early. domains[x], when non-empty, restricts the
// image of x. Returns the number of embeddings visited.
template <class F>
long long for_each_embedding(const Graph& h, const Graph& host, F&& f,
                             const std::vector<Bits>* domains = nullptr) {
    detail::Embedder<std::remove_reference_t<F>> e(h, host, domains, f);
    return e.run();
}

inline long long count_embeddings(const Graph& h, const Graph& host) {
    return for_each_embedding(h, host, [](const std::vector<int>&) { return true; });
}

inline long long automorphism_count(const Graph& h) { return count_embeddings(h, h); }

inline bool contains_copy(const Graph& h, const Graph& host) {
    bool found = false;
    for_each_embedding(h, host, [&](const std::vector<int>&) {
        found = true;
        return false;
    });
    return found;
}

inline bool is_isomorphic(const Graph& a, const Graph& b) {
    if (a.n() != b.n() || a.edge_count() != b.edge_count()) return false;
    std::vector<int> da, db;
    for (int v = 0; v < a.n(); ++v) {
        da.push_back(a.degree(v));
        db.push_back(b.degree(v));
    }
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    return contains_copy(a, b);
}

// Sorted K_n edge indices of the image of h under map.
inline std::vector<int> image_edges(const Graph& h, const std::vector<int>& map, int host_n) {
    std::vector<int> out;
    out.reserve(h.edge_count());
    for (auto [u, v] : h.edges()) out.push_back(pair_index(host_n, map[u], map[v]));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace simonovits

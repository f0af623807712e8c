#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "simonovits/hypergraph.hpp"

using namespace simonovits;

namespace {

CopyHypergraph make(int ground, std::vector<std::vector<int>> e) {
    CopyHypergraph h{0, ground, std::move(e), {}};
    h.normalize();
    return h;
}

CopyHypergraph random_family(std::mt19937_64& rng, int ground, int max_edges, int max_size) {
    std::vector<std::vector<int>> es;
    int m = 1 + static_cast<int>(rng() % max_edges);
    for (int i = 0; i < m; ++i) {
        int s = 1 + static_cast<int>(rng() % max_size);
        std::set<int> a;
        while (static_cast<int>(a.size()) < s) a.insert(static_cast<int>(rng() % ground));
        es.emplace_back(a.begin(), a.end());
    }
    return make(ground, es);
}

} // namespace

TEST(Copies, Examples) {
    EXPECT_EQ(enumerate_copies(complete_graph(3), complete_graph(4)).size(), 4u);
    EXPECT_EQ(enumerate_copies(complete_graph(3), cycle_graph(5)).size(), 0u);
    auto c5 = enumerate_copies(cycle_graph(5), complete_graph(5));
    EXPECT_EQ(c5.size(), 12u);
    EXPECT_EQ(c5.uniformity(), 5);
}

TEST(Copies, MatchOracle) {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 20; ++t) {
        Graph host = oracle::random_graph(8, 0.5, rng);
        EXPECT_EQ(static_cast<long long>(enumerate_copies(cycle_graph(4), host).size()),
                  oracle::copies(cycle_graph(4), host));
    }
}

TEST(Residual, AllWithEmptyQ) {
    auto copies = enumerate_copies(complete_graph(3), complete_graph(5));
    ColoredGraph q(Graph(5), std::vector<int>(5, -1), 2);
    auto res = residual_family(copies, q, ResidualVariant::all, complete_graph(3));
    EXPECT_EQ(res.edges, copies.edges);
}

TEST(Residual, LowSingleEdge) {
    const int n = 4;
    auto copies = enumerate_copies(complete_graph(3), complete_graph(n));
    Graph qg(n, {{0, 1}});
    auto q = ColoredGraph::monochrome(qg, 2);
    auto res = residual_family(copies, q, ResidualVariant::low, complete_graph(3));
    auto idx = [&](int u, int v) { return pair_index(n, u, v); };
    std::vector<std::vector<int>> expect{{idx(0, 2), idx(1, 2)}, {idx(0, 3), idx(1, 3)}};
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(res.edges, expect);
    for (auto& w : res.edges) EXPECT_EQ(w.size(), 2u);
}

TEST(Residual, LowExcludesCopiesWithSeveralQEdges) {
    const int n = 5;
    auto copies = enumerate_copies(complete_graph(3), complete_graph(n));
    auto q = ColoredGraph::monochrome(complete_graph(3), 2);
    Graph qg(n, {{0, 1}, {1, 2}, {0, 2}});
    q = ColoredGraph::monochrome(qg, 2);
    auto res = residual_family(copies, q, ResidualVariant::low, complete_graph(3));
    PairTable pt(n);
    for (auto& w : res.edges) {
        // no residual is the empty remainder of Q itself
        EXPECT_EQ(w.size(), 2u);
        // exactly one completion edge in Q
        std::set<int> vs;
        for (int e : w) {
            vs.insert(pt[e].first);
            vs.insert(pt[e].second);
        }
        std::vector<int> v(vs.begin(), vs.end());
        int inq = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j) inq += qg.has(v[i], v[j]);
        EXPECT_EQ(inq, 1);
    }
}

TEST(Residual, HighNeedsCentres) {
    auto copies = enumerate_copies(complete_graph(3), complete_graph(5));
    auto q = ColoredGraph::monochrome(Graph(5, {{0, 1}}), 2);
    EXPECT_THROW(residual_family(copies, q, ResidualVariant::high, complete_graph(3)), InvalidInput);
}

TEST(Residual, HighTriangleStar) {
    // centre 0 with Q-neighbours 1 (class 0) and 2 (class 1)
    const int n = 6;
    Graph qg(n, {{0, 1}, {0, 2}});
    ColoredGraph q(qg, {0, 0, 1, -1, -1, -1}, 2, std::vector<int>{0});
    auto copies = enumerate_copies(complete_graph(3), complete_graph(n));
    auto res = residual_family(copies, q, ResidualVariant::high, complete_graph(3));
    ASSERT_EQ(res.size(), 1u);
    EXPECT_EQ(res.edges[0], (std::vector<int>{pair_index(n, 1, 2)}));
}

TEST(Induce, Examples) {
    CopyHypergraph fam = make(10, {{0}, {0, 1}});
    Bits allowed(10);
    allowed.set(0);
    EXPECT_EQ(induce(fam, allowed).edges, (std::vector<std::vector<int>>{{0}}));
    EXPECT_TRUE(induce(fam, Bits(10)).empty());

    const int n = 4;
    auto copies = enumerate_copies(complete_graph(3), complete_graph(n));
    auto q = ColoredGraph::monochrome(Graph(n, {{0, 1}}), 2);
    auto res = residual_family(copies, q, ResidualVariant::low, complete_graph(3));
    auto [ext, in] = ext_int(PartTuple(n, {{0, 1}, {2, 3}}));
    EXPECT_EQ(induce(res, ext).size(), 2u);
}

TEST(Induce, Monotone) {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 50; ++t) {
        auto fam = random_family(rng, 10, 10, 3);
        Bits full(10);
        full.fill();
        EXPECT_DOUBLE_EQ(janson_moments(induce(fam, full), 0.4).mu, janson_moments(fam, 0.4).mu);
        Bits half = full;
        for (int i = 0; i < 10; ++i)
            if (rng() % 2) half.reset(i);
        auto sub = induce(fam, half);
        EXPECT_LE(janson_moments(sub, 0.4).mu, janson_moments(fam, 0.4).mu + 1e-12);
        EXPECT_LE(matching_number(sub), matching_number(fam));
    }
}

TEST(Link, Examples) {
    auto fam = make(5, {{0, 1}, {1, 2}});
    EXPECT_EQ(link(fam, 1).edges, (std::vector<std::vector<int>>{{0}, {2}}));
    EXPECT_TRUE(link(fam, 4).empty());
    auto tri = enumerate_copies(complete_graph(3), complete_graph(4));
    auto d = link(tri, std::nullopt);
    EXPECT_EQ(d.size(), 12u);
    for (auto& e : d.edges) EXPECT_EQ(e.size(), 2u);
}

TEST(Matching, Examples) {
    EXPECT_EQ(matching_number(make(6, {{1, 2}, {2, 3}, {4, 5}})), 2);
    EXPECT_EQ(matching_number(make(6, {})), 0);
    EXPECT_EQ(matching_number(make(12, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}})), 4);
}

TEST(Matching, MatchesOracle) {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 300; ++t) {
        auto fam = random_family(rng, 14, 12, 4);
        int nu = matching_number(fam);
        EXPECT_EQ(nu, oracle::matching(fam.edges));
        EXPECT_LE(nu, static_cast<int>(fam.size()));
    }
}

TEST(Janson, Examples) {
    auto a = janson_moments(make(4, {{0, 1}, {2, 3}}), 0.5);
    EXPECT_DOUBLE_EQ(a.mu, 0.5);
    EXPECT_DOUBLE_EQ(a.delta, 0.0);
    auto b = janson_moments(make(4, {{0, 1}, {1, 2}}), 0.5);
    EXPECT_DOUBLE_EQ(b.mu, 0.5);
    EXPECT_DOUBLE_EQ(b.delta, 0.125);
    auto c = janson_moments(make(4, {{0, 1}, {1, 2}}), 0.0);
    EXPECT_EQ(c.mu, 0.0);
    EXPECT_EQ(c.delta, 0.0);
    EXPECT_THROW(janson_moments(make(4, {}), 1.5), InvalidInput);
}

TEST(Janson, DegreeProfile) {
    auto tri = enumerate_copies(complete_graph(3), complete_graph(5));
    auto prof = janson_moments(tri, 0.5).degree_profile;
    ASSERT_EQ(prof.size(), 4u);
    EXPECT_EQ(prof[0], 10);
    EXPECT_EQ(prof[1], 3);  // an edge of K5 lies in 3 triangles
    EXPECT_EQ(prof[2], 1);
    EXPECT_EQ(prof[3], 1);
}

TEST(Janson, MonteCarloMoments) {
    std::mt19937_64 rng(53);
    const int trials = 10000;
    for (int t = 0; t < 5; ++t) {
        auto fam = random_family(rng, 12, 10, 3);
        const double p = 0.5;
        auto jm = janson_moments(fam, p);
        std::vector<Bits> masks;
        for (std::size_t i = 0; i < fam.size(); ++i) masks.push_back(fam.mask(i));
        double s1 = 0, s1sq = 0, s2 = 0, s2sq = 0;
        std::bernoulli_distribution coin(p);
        for (int k = 0; k < trials; ++k) {
            Bits r(12);
            for (int x = 0; x < 12; ++x)
                if (coin(rng)) r.set(x);
            std::vector<char> in(fam.size());
            double c1 = 0, c2 = 0;
            for (std::size_t i = 0; i < fam.size(); ++i) c1 += in[i] = masks[i].subset_of(r);
            for (std::size_t i = 0; i < fam.size(); ++i)
                for (std::size_t j = i + 1; j < fam.size(); ++j)
                    if (in[i] && in[j] && masks[i].intersects(masks[j])) c2 += 1;
            s1 += c1;
            s1sq += c1 * c1;
            s2 += c2;
            s2sq += c2 * c2;
        }
        double m1 = s1 / trials, m2 = s2 / trials;
        double se1 = std::sqrt((s1sq / trials - m1 * m1) / trials);
        double se2 = std::sqrt((s2sq / trials - m2 * m2) / trials);
        EXPECT_LE(std::abs(m1 - jm.mu), 3 * se1 + 1e-9);
        EXPECT_LE(std::abs(m2 - jm.delta), 3 * se2 + 1e-9);
    }
}

TEST(Hypergraph, Json) {
    auto j = to_json(make(6, {{1, 2}}));
    EXPECT_EQ(j["ground_size"], 6);
    EXPECT_EQ(j["hyperedges"][0][1], 2);
}

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "simonovits/coloring.hpp"
#include "simonovits/cut.hpp"
#include "simonovits/embedding.hpp"
#include "simonovits/graph.hpp"

using namespace simonovits;

TEST(Graph, EdgeCountMatchesDegrees) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        Graph g = oracle::random_graph(15, 0.4, rng);
        int sum = 0;
        for (int v = 0; v < g.n(); ++v) sum += g.degree(v);
        EXPECT_EQ(sum, 2 * g.edge_count());
        for (int u = 0; u < g.n(); ++u) {
            EXPECT_FALSE(g.has(u, u));
            for (int v = 0; v < g.n(); ++v) EXPECT_EQ(g.has(u, v), g.has(v, u));
        }
    }
}

TEST(Graph, PairIndexIsLexicographic) {
    PairTable t(7);
    int idx = 0;
    for (int u = 0; u < 7; ++u)
        for (int v = u + 1; v < 7; ++v) {
            EXPECT_EQ(pair_index(7, u, v), idx);
            EXPECT_EQ(t[idx], Edge(u, v));
            ++idx;
        }
}

TEST(Graph, EdgeListRoundTrip) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        Graph g = oracle::random_graph(13, 0.3, rng);
        std::string s = to_edge_list(g);
        Graph back = parse_edge_list(s);
        EXPECT_EQ(g, back);
        EXPECT_EQ(to_edge_list(back), s);
    }
}

TEST(Graph, ParseRejectsBadInput) {
    EXPECT_THROW(parse_edge_list("3 1\n0 0\n"), InvalidInput);
    EXPECT_THROW(parse_edge_list("3 2\n0 1\n"), InvalidInput);
    EXPECT_THROW(parse_edge_list("3 1\n0 5\n"), InvalidInput);
}

TEST(Graph, Builtins) {
    EXPECT_EQ(builtin_graph("triangle")->edge_count(), 3);
    EXPECT_EQ(builtin_graph("c5")->edge_count(), 5);
    EXPECT_EQ(builtin_graph("k4")->edge_count(), 6);
    EXPECT_EQ(builtin_graph("k5")->edge_count(), 10);
    Graph p = *builtin_graph("petersen");
    EXPECT_EQ(p.edge_count(), 15);
    for (int v = 0; v < 10; ++v) EXPECT_EQ(p.degree(v), 3);
    EXPECT_FALSE(builtin_graph("nope").has_value());
}

TEST(ExtInt, Examples) {
    auto [ext, in] = ext_int(PartTuple(3, {{0, 1}, {2}}));
    EXPECT_EQ(ext.edges(), (std::vector<Edge>{{0, 2}, {1, 2}}));
    EXPECT_EQ(in.edges(), (std::vector<Edge>{{0, 1}}));

    auto [e2, i2] = ext_int(PartTuple(3, {{0}, {1}, {2}}));
    EXPECT_EQ(e2.edge_count(), 3);
    EXPECT_EQ(i2.edge_count(), 0);

    auto [e3, i3] = ext_int(PartTuple(6, {{0, 1, 2}, {3, 4, 5}}));
    EXPECT_EQ(e3.edge_count(), 9);
    EXPECT_EQ(i3.edge_count(), 6);
}

TEST(ExtInt, OverlapRejected) {
    EXPECT_THROW(PartTuple(4, {{0, 1}, {1, 2}}), InvalidPartition);
}

TEST(ExtInt, ComplementaryOnRandomTuples) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        int n = 2 + static_cast<int>(rng() % 12), r = 2 + static_cast<int>(rng() % 3);
        std::vector<int> a(n);
        for (auto& x : a) x = static_cast<int>(rng() % (r + 1)) - 1;
        auto pt = PartTuple::from_assignment(a, r);
        auto [ext, in] = ext_int(pt);
        long long covered = 0;
        for (auto& s : pt.parts) covered += static_cast<long long>(s.size());
        EXPECT_EQ(ext.edge_count() + in.edge_count(), covered * (covered - 1) / 2);
        EXPECT_EQ((ext & in).edge_count(), 0);
    }
}

TEST(Balance, Examples) {
    EXPECT_TRUE(is_delta_balanced(PartTuple(6, {{0, 1, 2}, {3, 4, 5}}), 0.0));
    EXPECT_FALSE(is_delta_balanced(PartTuple(6, {{0, 1, 2, 3}, {4, 5}}), 0.3));
    EXPECT_TRUE(is_delta_balanced(PartTuple(10, {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}}), 0.1));
}

TEST(Chromatic, Examples) {
    EXPECT_EQ(chromatic_number(complete_graph(4)), 4);
    EXPECT_EQ(chromatic_number(cycle_graph(5)), 3);
    EXPECT_EQ(chromatic_number(Graph(5)), 1);
    EXPECT_EQ(chromatic_number(petersen_graph()), 3);
}

TEST(Chromatic, MatchesExhaustiveOracle) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 150; ++t) {
        int n = 1 + static_cast<int>(rng() % 8);
        Graph g = oracle::random_graph(n, 0.5, rng);
        int chi = chromatic_number(g);
        EXPECT_EQ(chi, oracle::chromatic(g));
        EXPECT_LE(chi, g.max_degree() + 1);
        bool bip = g.edge_count() > 0 && oracle::colorable(g, 2);
        EXPECT_EQ(chi == 2, bip);
    }
}

TEST(Chromatic, PinnedColouring) {
    Graph g = cycle_graph(4);
    auto c = find_coloring(g, 2, {1, -1, -1, -1});
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ((*c)[0], 1);
    EXPECT_FALSE(find_coloring(g, 2, {0, 0, -1, -1}).has_value());
}

TEST(ColoredGraph, Validation) {
    Graph q(4);
    q.add(0, 1);
    q.add(0, 2);
    EXPECT_NO_THROW(ColoredGraph(q, {0, 0, 1, -1}, 2, std::vector<int>{0}));
    EXPECT_THROW(ColoredGraph(q, {0, 0, 1, -1}, 2, std::vector<int>{1}), InvalidInput);
    EXPECT_THROW(ColoredGraph(q, {0, -1, 1, -1}, 2), InvalidInput);
    auto mono = ColoredGraph::monochrome(q, 2);
    EXPECT_EQ(mono.colour_class(0), (std::vector<int>{0, 1, 2}));
    EXPECT_TRUE(mono.compatible_with({0, 0, 0, 1}));
    EXPECT_FALSE(mono.compatible_with({0, 1, 0, 1}));
}

TEST(Embedding, CopiesMatchOracle) {
    std::mt19937_64 rng(9);
    const Graph patterns[] = {complete_graph(3), cycle_graph(4), cycle_graph(5)};
    for (int t = 0; t < 30; ++t) {
        Graph host = oracle::random_graph(7, 0.6, rng);
        for (const auto& h : patterns) {
            long long emb = count_embeddings(h, host);
            EXPECT_EQ(emb % automorphism_count(h), 0);
            EXPECT_EQ(emb / automorphism_count(h), oracle::copies(h, host));
        }
    }
}

TEST(Embedding, Isomorphism) {
    Graph a = cycle_graph(5);
    Graph b(5, {{0, 2}, {2, 4}, {4, 1}, {1, 3}, {3, 0}});
    EXPECT_TRUE(is_isomorphic(a, b));
    Graph c(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    EXPECT_FALSE(is_isomorphic(a, c));
    EXPECT_EQ(automorphism_count(petersen_graph()), 120);
}

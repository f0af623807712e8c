#include <gtest/gtest.h>

#include "oracles.hpp"
#include "simonovits/extremal.hpp"

using namespace simonovits;

TEST(MaxCut, Examples) {
    EXPECT_EQ(max_r_cut(cycle_graph(5), 2).value, 4);
    EXPECT_EQ(max_r_cut(complete_graph(4), 2).value, 4);
    EXPECT_EQ(max_r_cut(complete_graph(5), 5).value, 10);
    EXPECT_EQ(max_r_cut(petersen_graph(), 3).value, 15);
    EXPECT_THROW(max_r_cut(complete_graph(17), 2), TooLarge);
    EXPECT_THROW(max_r_cut(complete_graph(3), 1), InvalidInput);
}

TEST(MaxCut, MatchesOracle) {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 60; ++t) {
        int n = 4 + t % 6;
        Graph g = oracle::random_graph(n, 0.5, rng);
        for (int r = 2; r <= 3; ++r) {
            auto res = max_r_cut(g, r);
            EXPECT_EQ(res.value, oracle::max_cut(g, r));
            EXPECT_EQ(crossing_edges(g, res.cut.assignment()), res.value);
        }
    }
}

TEST(MaxCut, LocalIsUnfriendly) {
    std::mt19937_64 rng(67);
    for (int t = 0; t < 50; ++t) {
        Graph g = oracle::random_graph(20, 0.4, rng);
        for (int r = 2; r <= 4; ++r) {
            auto res = max_r_cut(g, r, CutMode::local);
            EXPECT_TRUE(is_unfriendly(g, res.cut.assignment(), r));
            EXPECT_GE(r * res.value, (r - 1) * g.edge_count());
        }
    }
}

TEST(CanonicalCut, Examples) {
    auto c4 = canonical_cut(cycle_graph(4), 2);
    EXPECT_EQ(c4.assignment(), (std::vector<int>{0, 1, 0, 1}));

    Graph k3 = complete_graph(3);
    auto c = canonical_cut(k3, 2);
    auto a = c.assignment();
    EXPECT_EQ(crossing_edges(k3, a), 2);
    int in1 = 0;
    for (auto [u, v] : k3.edges()) in1 += a[u] == 0 && a[v] == 0;
    EXPECT_EQ(in1, 1);
    EXPECT_EQ(a, (std::vector<int>{0, 0, 1}));

    EXPECT_EQ(canonical_cut(Graph(3), 2).assignment(), (std::vector<int>{0, 0, 0}));
}

TEST(CanonicalCut, IsMaximum) {
    std::mt19937_64 rng(71);
    for (int t = 0; t < 30; ++t) {
        Graph g = oracle::random_graph(7, 0.5, rng);
        auto c = canonical_cut(g, 2);
        EXPECT_EQ(crossing_edges(g, c.assignment()), max_r_cut(g, 2).value);
        EXPECT_EQ(canonical_cut(g, 2), c);
    }
}

TEST(AllMaxCuts, CountsOrderedCuts) {
    // C4 has two bipartitions as ordered 2-cuts
    EXPECT_EQ(all_max_cuts(cycle_graph(4), 2).size(), 2u);
    // K3: 3 choices of the lone vertex, times 2 orders
    EXPECT_EQ(all_max_cuts(complete_graph(3), 2).size(), 6u);
}

TEST(MaxHFree, Examples) {
    auto k5 = max_H_free(complete_graph(5), complete_graph(3));
    EXPECT_EQ(k5.ex, 6);
    EXPECT_TRUE(is_isomorphic(k5.witness, disjoint_union(complete_bipartite(2, 3), Graph(0))));
    EXPECT_EQ(max_H_free(complete_graph(6), complete_graph(3)).ex, 9);
    EXPECT_EQ(max_H_free(cycle_graph(5), complete_graph(3)).ex, 5);
}

TEST(MaxHFree, MantelForSmallCliques) {
    for (int n = 4; n <= 12; ++n) {
        auto res = max_H_free(complete_graph(n), complete_graph(3));
        EXPECT_EQ(res.ex, n * n / 4) << n;
        EXPECT_FALSE(contains_copy(complete_graph(3), res.witness));
    }
}

TEST(MaxHFree, TuranForK4) {
    // t_3(n) for n = 5..9
    const int turan[] = {8, 12, 16, 21, 27};
    for (int n = 5; n <= 9; ++n) EXPECT_EQ(max_H_free(complete_graph(n), complete_graph(4)).ex, turan[n - 5]);
}

TEST(MaxHFree, MatchesBruteForce) {
    std::mt19937_64 rng(73);
    for (int t = 0; t < 25; ++t) {
        Graph g = oracle::random_graph(6, 0.6, rng);
        if (g.edge_count() > 14) continue;
        auto res = max_H_free(g, complete_graph(3));
        EXPECT_EQ(res.ex, oracle::ex_bruteforce(g, complete_graph(3)));
        EXPECT_FALSE(oracle::has_copy(complete_graph(3), res.witness));
        EXPECT_TRUE(res.witness.subgraph_of(g));
    }
    for (int t = 0; t < 10; ++t) {
        Graph g = oracle::random_graph(7, 0.45, rng);
        if (g.edge_count() > 15) continue;
        EXPECT_EQ(max_H_free(g, cycle_graph(4)).ex, oracle::ex_bruteforce(g, cycle_graph(4)));
    }
}

TEST(Simonovits, Examples) {
    Graph k3 = complete_graph(3);
    auto a = is_simonovits(complete_graph(5), k3);
    EXPECT_EQ(a.decision, Decision::yes);
    EXPECT_EQ(a.ex_size, 6);
    EXPECT_EQ(a.optima_count, 10);  // choices of the 2-set side

    auto b = is_simonovits(cycle_graph(5), k3);
    EXPECT_EQ(b.decision, Decision::no);
    EXPECT_EQ(b.ex_size, 5);
    EXPECT_EQ(b.best_rpartite, 4);
    EXPECT_TRUE(verify_certificate(b, cycle_graph(5), k3, 2));

    auto c = is_simonovits(complete_graph(4), k3);
    EXPECT_EQ(c.decision, Decision::yes);
    EXPECT_EQ(c.optima_count, 3);  // the three 4-cycles

    auto d = is_simonovits(complete_bipartite(3, 3), k3);
    EXPECT_EQ(d.decision, Decision::yes);
    EXPECT_EQ(d.kind, CertificateKind::r_colourable_host);
}

TEST(Simonovits, NonEdgeCriticalPatternIsNo) {
    Graph h = disjoint_union(complete_graph(3), complete_graph(3));
    Graph g = complete_graph(7);
    auto v = is_simonovits(g, h);
    EXPECT_EQ(v.decision, Decision::no);
    EXPECT_EQ(v.kind, CertificateKind::non_edge_critical);
    EXPECT_TRUE(verify_certificate(v, g, h, 2));
}

TEST(Simonovits, NegativeCertificatesVerify) {
    std::mt19937_64 rng(79);
    Graph k3 = complete_graph(3);
    int negatives = 0, positives = 0;
    for (int t = 0; t < 60; ++t) {
        Graph g = oracle::random_graph(8, 0.55, rng);
        auto v = is_simonovits(g, k3);
        ASSERT_NE(v.decision, Decision::indeterminate);
        if (v.decision == Decision::no) {
            ++negatives;
            EXPECT_TRUE(verify_certificate(v, g, k3, 2));
        } else {
            ++positives;
            EXPECT_EQ(v.ex_size, v.best_rpartite);
        }
    }
    EXPECT_GT(negatives, 0);
    EXPECT_GT(positives, 0);
}

TEST(Simonovits, DecisionMatchesBruteForceOptima) {
    // Oracle: every maximum triangle-free edge set by exhaustive search.
    std::mt19937_64 rng(83);
    Graph k3 = complete_graph(3);
    for (int t = 0; t < 20; ++t) {
        Graph g = oracle::random_graph(6, 0.6, rng);
        auto edges = g.edges();
        const int m = static_cast<int>(edges.size());
        if (m > 13) continue;
        int best = oracle::ex_bruteforce(g, k3);
        bool all_bip = true;
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            if (std::popcount(mask) != best) continue;
            Graph f(g.n());
            for (int i = 0; i < m; ++i)
                if (mask >> i & 1u) f.add(edges[i].first, edges[i].second);
            if (oracle::has_copy(k3, f)) continue;
            if (!oracle::colorable(f, 2)) all_bip = false;
        }
        auto v = is_simonovits(g, k3);
        EXPECT_EQ(v.decision == Decision::yes, all_bip);
    }
}

TEST(Simonovits, CapGivesIndeterminate) {
    TransversalOptions opt;
    opt.optima_cap = 2;
    auto v = is_simonovits(complete_graph(5), complete_graph(3), opt);
    EXPECT_EQ(v.decision, Decision::indeterminate);
}

TEST(Simonovits, CompleteGraphTwelve) {
    auto v = is_simonovits(complete_graph(12), complete_graph(3));
    EXPECT_EQ(v.decision, Decision::yes);
    EXPECT_EQ(v.ex_size, 36);
    EXPECT_EQ(v.optima_count, 462);  // C(12,6)/2
}

TEST(FreeEdges, Examples) {
    Graph k3 = complete_graph(3);
    auto a = free_edge_witness(cycle_graph(5), k3);
    ASSERT_TRUE(a);
    EXPECT_EQ(*a, cycle_graph(5));
    EXPECT_FALSE(free_edge_witness(complete_graph(5), k3));
    Graph g = disjoint_union(complete_graph(5), cycle_graph(5));
    auto c = free_edge_witness(g, k3);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->edge_count(), 5);
    for (auto [u, v] : c->edges()) EXPECT_GE(u, 5);
}

TEST(FreeEdges, InEveryMaximalSubgraph) {
    std::mt19937_64 rng(89);
    Graph k3 = complete_graph(3);
    for (int t = 0; t < 30; ++t) {
        Graph g = oracle::random_graph(9, 0.35, rng);
        auto copies = enumerate_copies(k3, g);
        Bits covered(static_cast<int>(pair_count(g.n())));
        for (auto& e : copies.edges)
            for (int x : e) covered.set(x);
        // greedy maximal triangle-free subgraph in a shuffled order
        auto edges = g.edges();
        std::shuffle(edges.begin(), edges.end(), rng);
        Graph f(g.n());
        for (auto [u, v] : edges) {
            f.add(u, v);
            if (contains_copy(k3, f)) f.remove(u, v);
        }
        for (auto [u, v] : g.edges()) {
            if (covered.test(pair_index(g.n(), u, v))) continue;
            EXPECT_TRUE(f.has(u, v));
        }
    }
}

TEST(Peel, Examples) {
    // degree 2 is at most (2/5)*5, so C5 loses vertices until one edge remains
    auto c5 = peel(cycle_graph(5), 2);
    ASSERT_EQ(c5.steps.size(), 3u);
    EXPECT_EQ(c5.steps[0].vertex, 0);
    EXPECT_EQ(c5.steps[1].vertex, 1);
    EXPECT_EQ(c5.steps[2].vertex, 2);
    EXPECT_EQ(c5.remaining, (std::vector<int>{3, 4}));
    EXPECT_TRUE(c5.terminal_r_partite);

    auto k33 = peel(complete_bipartite(3, 3), 2);
    EXPECT_TRUE(k33.steps.empty());
    EXPECT_TRUE(k33.terminal_r_partite);

    // a pendant path is peeled away
    Graph g = complete_bipartite(5, 5);
    Graph t(12), expect(12);
    for (auto [u, v] : g.edges()) {
        t.add(u, v);
        expect.add(u, v);
    }
    t.add(9, 10);
    t.add(10, 11);
    auto p = peel(t, 2);
    ASSERT_EQ(p.steps.size(), 2u);
    EXPECT_EQ(p.steps[0].vertex, 10);
    EXPECT_EQ(p.steps[0].order, 12);
    EXPECT_EQ(p.steps[1].vertex, 11);
    EXPECT_EQ(p.steps[1].degree, 0);
    EXPECT_EQ(p.terminal, expect);
    EXPECT_TRUE(p.terminal_r_partite);
}

TEST(Peel, DenseHostNeedsNoDeletion) {
    auto prof = analyze_pattern(complete_graph(3));
    Graph g = complete_graph(14);
    ASSERT_GE(g.min_degree(), dense_min_degree_bound(2, 14));
    auto res = dense_peel(g, complete_graph(3), prof);
    EXPECT_TRUE(res.hypothesis_met);
    EXPECT_TRUE(res.steps.empty());
    EXPECT_TRUE(res.terminal_r_partite);
    EXPECT_EQ(res.terminal, res.f);
    EXPECT_EQ(res.f.edge_count(), 49);
}

TEST(Augment, EmptyStart) {
    std::mt19937_64 rng(97);
    for (int t = 0; t < 30; ++t) {
        Graph g = oracle::random_graph(12, 0.5, rng);
        for (int r = 2; r <= 3; ++r) {
            auto a = augment_rpartite(g, Graph(12), std::vector<int>(12, -1), r);
            EXPECT_GE(Rational(a.subgraph.edge_count()), Rational(r - 1, r) * g.edge_count());
            EXPECT_TRUE(is_r_colorable(a.subgraph, r));
        }
    }
}

TEST(Augment, KeepsGPrime) {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 30; ++t) {
        Graph g = oracle::random_graph(12, 0.5, rng);
        // G' = crossing edges of a random 2-colouring on the first 6 vertices
        std::vector<int> col(12, -1);
        Graph gp(12);
        for (int v = 0; v < 6; ++v) col[v] = static_cast<int>(rng() % 2);
        for (auto [u, v] : g.edges())
            if (col[u] >= 0 && col[v] >= 0 && col[u] != col[v]) gp.add(u, v);
        auto a = augment_rpartite(g, gp, col, 2);
        EXPECT_TRUE(gp.subgraph_of(a.subgraph));
        EXPECT_GE(Rational(a.subgraph.edge_count()), a.guaranteed);
    }
}

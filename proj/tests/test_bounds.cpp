#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "simonovits/bounds.hpp"
#include "simonovits/hypergraph.hpp"

using namespace simonovits;

TEST(Poisson, Examples) {
    EXPECT_DOUBLE_EQ(poisson_lower_tail(2, 1).prob, 1.0);
    EXPECT_NEAR(poisson_lower_tail(3, 0).prob, std::exp(-3.0), 1e-15);
    EXPECT_NEAR(poisson_lower_tail(10, 0.1).prob, 1.2341e-3, 1e-7);
    EXPECT_THROW(poisson_lower_tail(-1, 0.5), InvalidInput);
    EXPECT_THROW(poisson_lower_tail(1, 1.5), InvalidInput);
}

TEST(Poisson, Monotone) {
    for (double mu : {0.5, 1.0, 7.0, 40.0}) EXPECT_DOUBLE_EQ(poisson_lower_tail(mu, 1).prob, 1.0);
    for (double a : {0.0, 0.2, 0.7})
        for (double mu = 1; mu < 30; mu += 1) EXPECT_LT(poisson_lower_tail(mu + 1, a).prob, poisson_lower_tail(mu, a).prob);
}

TEST(Poisson, DominatesExactTail) {
    // exact Pr(Pois(mu) <= alpha mu) by summing the mass function
    for (double mu : {1.0, 5.0, 20.0})
        for (double a : {0.05, 0.3, 0.8}) {
            double s = 0;
            for (int k = 0; k <= std::floor(a * mu); ++k) s += std::exp(-mu + k * std::log(mu) - std::lgamma(k + 1.0));
            EXPECT_LE(s, poisson_lower_tail(mu, a).prob + 1e-15);
        }
}

TEST(Janson, MatchingBoundExamples) {
    auto b = janson_matching_bound(10, 1, 0.01, 0.1, 0.5);
    EXPECT_NEAR(b.log_bound, -8.3895 + 1.1, 1e-3);
    EXPECT_NEAR(b.prob, 6.83e-4, 1e-5);
    auto lim = janson_matching_bound(5, 0, 1e-12, 1e-12, 0.5);
    EXPECT_NEAR(lim.prob, std::exp(-5.0), 1e-9);
    auto big = janson_matching_bound(1, 5, 0.1, 0.1, 0.5);
    EXPECT_TRUE(big.clipped);
    EXPECT_EQ(big.prob, 1.0);
    EXPECT_THROW(janson_matching_bound(1, 0, 0.1, 0, 0.5), InvalidInput);
}

TEST(Janson, Corollaries) {
    auto a = janson_corollaries(100, 0, 0.1);
    EXPECT_NEAR(a.bound34.log_bound, -90, 1e-12);
    EXPECT_EQ(a.lambda, 100);
    EXPECT_NEAR(a.bound35.log_bound, -10, 1e-12);
    EXPECT_EQ(janson_corollaries(4, 8, 0.1).lambda, 2);
    auto z = janson_corollaries(0, 0, 0.05);
    EXPECT_EQ(z.lambda, 0);
    EXPECT_EQ(z.bound34.prob, 1);
    EXPECT_EQ(z.bound35.prob, 1);
    EXPECT_THROW(janson_corollaries(1, 1, 0.2), InvalidInput);
    EXPECT_THROW(janson_corollaries(1, 1, 0), InvalidInput);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 50);
    for (int i = 0; i < 100; ++i) {
        double mu = u(rng), d = u(rng);
        EXPECT_LE(janson_corollaries(mu, d, 0.1).lambda, mu);
    }
}

namespace {

// Matching numbers of every sub-family of at most 12 sets, by bitmask recursion.
std::vector<int> matching_table(const std::vector<std::uint32_t>& sets) {
    const int m = static_cast<int>(sets.size());
    std::vector<std::uint32_t> conflict(m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && (sets[i] & sets[j])) conflict[i] |= 1u << j;
    std::vector<int> nu(1u << m, 0);
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        int i = std::countr_zero(mask);
        std::uint32_t rest = mask & (mask - 1);
        nu[mask] = std::max(nu[rest], 1 + nu[rest & ~conflict[i]]);
    }
    return nu;
}

} // namespace

TEST(Janson, MonteCarloDomination) {
    std::mt19937_64 rng(2024);
    const int ground = 10, trials = 10000;
    int checked = 0;
    for (int inst = 0; inst < 200; ++inst) {
        const int m = 1 + static_cast<int>(rng() % 12);
        CopyHypergraph fam{0, ground, {}, {}};
        for (int i = 0; i < m; ++i) {
            int s = 1 + static_cast<int>(rng() % 4);
            std::set<int> a;
            while (static_cast<int>(a.size()) < s) a.insert(static_cast<int>(rng() % ground));
            fam.edges.emplace_back(a.begin(), a.end());
        }
        fam.normalize();
        const double p = 0.3 + 0.6 * std::uniform_real_distribution<double>(0, 1)(rng);
        auto jm = janson_moments(fam, p);
        auto cor = janson_corollaries(jm.mu, jm.delta, 0.1);
        if (cor.bound34.clipped) continue;
        std::vector<std::uint32_t> sets;
        for (auto& e : fam.edges) {
            std::uint32_t s = 0;
            for (int x : e) s |= 1u << x;
            sets.push_back(s);
        }
        auto nu = matching_table(sets);
        std::bernoulli_distribution coin(p);
        int hits = 0;
        for (int t = 0; t < trials; ++t) {
            std::uint32_t vp = 0;
            for (int x = 0; x < ground; ++x)
                if (coin(rng)) vp |= 1u << x;
            std::uint32_t present = 0;
            for (std::size_t i = 0; i < sets.size(); ++i)
                if ((sets[i] & vp) == sets[i]) present |= 1u << i;
            hits += nu[present] <= 0.01 * jm.mu;
        }
        double est = static_cast<double>(hits) / trials;
        double sigma = std::sqrt(std::max(est * (1 - est), 1e-12) / trials);
        EXPECT_LE(est, cor.bound34.prob + 3 * sigma) << inst;
        ++checked;
    }
    EXPECT_GT(checked, 0);
}

TEST(UpperTail, Rho) {
    EXPECT_NEAR(upper_tail_rho(1, 1), 1 / (3 * std::exp(1.0)), 1e-15);
    EXPECT_NEAR(upper_tail_rho(1, 1), 0.1226, 1e-4);
    EXPECT_EQ(upper_tail_rho(7, 3), upper_tail_rho(1, 3));
    EXPECT_NEAR(upper_tail_rho(0.5, 2), 0.0368, 1e-4);
    EXPECT_NEAR(upper_tail_bound(0.1, 100, 0.5).prob, std::exp(-5.0), 1e-15);
}

TEST(Balanced, TriangleAtThreshold) {
    auto prof = analyze_pattern(complete_graph(3));
    auto rep = balanced_condition_check(prof, 100, std::pow(100.0, -0.5), 1.0);
    ASSERT_TRUE(rep.applicable);
    EXPECT_TRUE(rep.all_hold);
    EXPECT_EQ(rep.skipped_single_edge, 3);
    ASSERT_EQ(rep.entries.size(), 2u);  // paths of length 2 and the triangle
    EXPECT_EQ(rep.entries[0].v, 3);
    EXPECT_EQ(rep.entries[0].e, 2);
    EXPECT_NEAR(rep.entries[0].exponent, 0.5, 1e-12);
    EXPECT_NEAR(rep.entries[1].log_margin, 0, 1e-9);  // equality at H itself
    EXPECT_TRUE(rep.strict_holds);
    EXPECT_NEAR(*rep.min_lambda, 0.5, 1e-9);
}

TEST(Balanced, Inapplicable) {
    auto prof = analyze_pattern(cycle_graph(5));
    auto rep = balanced_condition_check(prof, 1000, 1e-4, 1.0);
    EXPECT_FALSE(rep.applicable);
}

TEST(Balanced, HoldsAboveThreshold) {
    for (auto h : {complete_graph(4), cycle_graph(5), petersen_graph()}) {
        auto prof = analyze_pattern(h);
        double m2 = to_double(*prof.m2);
        for (int n : {50, 500}) {
            auto rep = balanced_condition_check(prof, n, 2.0 * std::pow(n, -1.0 / m2), 2.0);
            EXPECT_TRUE(rep.all_hold);
            for (auto& e : rep.entries) EXPECT_GE(e.exponent, -1e-12);
        }
    }
}

TEST(ParamTable, Rows) {
    auto prof = analyze_pattern(complete_graph(3));
    auto qh = param_table(prof, 100, 0.1, 5, 1);
    EXPECT_EQ(qh.regime, Regime::QH);
    EXPECT_NEAR(qh.d_Q, 320, 1e-9);
    EXPECT_EQ(qh.m_Q, qh.d_Q);
    // M(1) = min(n^2 p^3, n^2 p) = 10
    EXPECT_NEAR(qh.D_Q, 2 * 3 * 10 / 320.0, 1e-12);

    auto l1 = param_table(prof, 1000, 0.9, 1, 0);
    EXPECT_EQ(l1.regime, Regime::QL1_dense);
    EXPECT_EQ(l1.d_Q, 16);
    EXPECT_NEAR(l1.D_Q, 1e6 * 0.9 / 16, 1e-6);

    auto sp = param_table(prof, 100, 0.05, 3, 0);
    EXPECT_EQ(sp.regime, Regime::QL_sparse);
    Constants c;
    EXPECT_NEAR(sp.m_Q, c.kappa * 100 * 0.05 * 0.05 * 3, 1e-12);
    EXPECT_NEAR(sp.D_Q, 36 / c.kappa, 1e-12);
    EXPECT_NEAR(sp.d_Q, std::min(std::sqrt(c.eta) * 3 * std::log(100.0), c.beta * 1e4 * 0.05), 1e-12);

    for (auto& t : {qh, l1, sp}) EXPECT_DOUBLE_EQ(t.nu_Q - t.m_Q, 5 * (t.d_Q + 1));
}

TEST(ParamTable, DenseBoundaryIsClosed) {
    auto prof = analyze_pattern(complete_graph(3));
    Constants c;
    c.kappa = std::log(200.0) / 180.0;  // cutoff kappa n p / ln n = 1 at n = 200, p = 0.9
    auto t = param_table(prof, 200, 0.9, 1, 0, c);
    EXPECT_NEAR(t.dense_cutoff, 1.0, 1e-12);
    EXPECT_EQ(t.regime, Regime::QL2_dense);
    ASSERT_TRUE(t.q);
    EXPECT_NEAR(t.m_Q, c.C_hat * std::log(200.0), 1e-9);
    EXPECT_NEAR(t.D_Q, c.C_partial / c.kappa, 1e-9);
    EXPECT_EQ(param_table(prof, 200, 0.9, 0, 0, c).regime, Regime::QL1_dense);
}

TEST(ParamTable, Errors) {
    auto prof = analyze_pattern(complete_graph(3));
    EXPECT_THROW(param_table(prof, 100, 0.1, -1, 0), InvalidInput);
    EXPECT_THROW(param_table(prof, 100, 0.1, 1, 3), InvalidInput);
    EXPECT_THROW(param_table(prof, 2, 0.1, 1, 0), InvalidInput);
    EXPECT_THROW(param_table(prof, 100, 0, 1, 0), InvalidInput);
}

TEST(Constants, JsonRoundTrip) {
    Constants c;
    c.kappa = 0.2;
    auto d = constants_from_json(to_json(c));
    EXPECT_EQ(d.kappa, 0.2);
    EXPECT_EQ(d.name, "defaults");
    EXPECT_THROW(constants_from_json({{"eta", -1.0}}), ConfigError);
}

TEST(Sufficiency, Examples) {
    auto a = sufficiency_sum(50, 0.5, 0.01, 1.0);
    EXPECT_NEAR(a.sum_high / (50 * std::exp(-25.0)), 1.0, 1e-9);
    EXPECT_NEAR(a.sum_high, a.sum_high_direct, 1e-20);
    EXPECT_TRUE(a.high_ok);
    EXPECT_EQ(a.m_max, 6);  // floor(0.01 * 1225 * 0.5)
    double direct = 0;
    const double Np = 1225 * 0.5;
    for (int m = 1; m <= 6; ++m) direct += std::exp(m - m * std::log(Np / m));
    EXPECT_NEAR(a.sum_low, direct, 1e-12 * direct);
    EXPECT_TRUE(a.low_ok);

    auto b = sufficiency_sum(50, 0.5, 0, 1.0);
    EXPECT_EQ(b.sum_low, 0);

    auto c = sufficiency_sum(20, 1e-6, 0.01, 1.0);
    EXPECT_NEAR(c.sum_high, std::pow(1 + std::exp(-20e-6), 20) - 1, 1e-6);
    EXPECT_FALSE(c.high_ok);
}

#pragma once

#include <algorithm>
#include <cmath>
#include <bit>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pattern.hpp"

namespace simonovits {

// A probability bound kept in log space; prob is clipped to [0, 1].
struct BoundValue {
    double log_bound = 0;
    double prob = 1;
    bool clipped = false;

    static BoundValue from_log(double lb) {
        BoundValue b;
        b.log_bound = lb;
        b.clipped = lb >= 0;
        b.prob = b.clipped ? 1.0 : std::exp(lb);
        return b;
    }
};

inline nlohmann::json to_json(const BoundValue& b) {
    return {{"log_bound", b.log_bound}, {"prob", b.prob}, {"clipped", b.clipped}};
}

namespace detail {

// alpha * ln(e / alpha), continuous at 0.
inline double alpha_log_term(double alpha) { return alpha == 0 ? 0.0 : alpha * (1.0 - std::log(alpha)); }

inline void require_range(double x, double lo, double hi, const char* what) {
    if (!(x >= lo && x <= hi)) throw InvalidInput(std::string(what) + " out of range");
}

} // namespace detail

// Pr(Pois(mu) <= alpha mu) <= exp(-(1 - alpha ln(e/alpha)) mu).
inline BoundValue poisson_lower_tail(double mu, double alpha) {
    if (!(mu >= 0)) throw InvalidInput("mu must be nonnegative");
    detail::require_range(alpha, 0, 1, "alpha");
    return BoundValue::from_log(-(1 - detail::alpha_log_term(alpha)) * mu);
}

// Upper bound on Pr(nu(H[V_p]) <= alpha mu).
inline BoundValue janson_matching_bound(double mu, double delta, double alpha, double eta, double p) {
    if (!(mu >= 0) || !(delta >= 0)) throw InvalidInput("mu and delta must be nonnegative");
    detail::require_range(alpha, 0, 1, "alpha");
    detail::require_range(p, 0, 1, "p");
    if (!(eta > 0)) throw InvalidInput("eta must be positive");
    const double lead = 1 - detail::alpha_log_term(alpha) - alpha * p - eta;
    return BoundValue::from_log(-lead * mu + (1 + 2 * alpha * p / eta) * delta);
}

struct JansonCorollaries {
    BoundValue bound34;  // on Pr(nu <= gamma^2 mu)
    double lambda = 0;   // min{mu, mu^2 / Delta}
    BoundValue bound35;  // on Pr(nu <= Lambda / 1000)
};

inline JansonCorollaries janson_corollaries(double mu, double delta, double gamma) {
    if (!(gamma > 0 && gamma <= 0.1)) throw InvalidInput("gamma must lie in (0, 1/10]");
    if (!(mu >= 0) || !(delta >= 0)) throw InvalidInput("mu and delta must be nonnegative");
    JansonCorollaries c;
    c.bound34 = BoundValue::from_log(-(1 - gamma) * mu + 2 * delta);
    c.lambda = delta == 0 ? mu : std::min(mu, mu * mu / delta);
    c.bound35 = BoundValue::from_log(-c.lambda / 10);
    return c;
}

inline double upper_tail_rho(double alpha, int ell) {
    if (!(alpha > 0)) throw InvalidInput("alpha must be positive");
    if (ell < 1) throw InvalidInput("ell must be at least 1");
    return std::min(alpha, 1.0) / ((2 * ell + 1) * std::exp(1.0));
}

inline BoundValue upper_tail_bound(double rho, int n, double p) {
    return BoundValue::from_log(-rho * n * p);
}

struct BalancedEntry {
    int v = 0, e = 0;         // spanned vertices and edges of H'
    long long count = 0;      // edge subsets with this (v, e)
    double log_margin = 0;    // ln(n^{v-2} p^{e-1}) - (e-1) ln C
    double exponent = 0;      // v - 2 - (e-1)/m2
    bool holds = true;
};

struct BalancedReport {
    bool applicable = true;
    std::string reason;
    std::vector<BalancedEntry> entries;  // one per (v, e), e >= 2
    long long skipped_single_edge = 0;
    bool all_hold = true;
    std::optional<double> min_lambda;    // min observed margin / ln n over 1 < e < e_H
    std::optional<double> min_exponent;  // same minimum for the exact exponent
    bool strict_holds = true;
};

inline BalancedReport balanced_condition_check(const PatternProfile& prof, int n, double p, double C) {
    if (!prof.m2) throw Inapplicable("pattern has no 2-density");
    if (n < 2 || !(p > 0 && p <= 1) || !(C > 0)) throw InvalidInput("need n >= 2, p in (0,1], C > 0");
    auto edges = prof.h.edges();
    const int m = static_cast<int>(edges.size());
    if (m > 24) throw TooLarge("pattern has too many edges for subset enumeration");
    const double m2 = to_double(*prof.m2);
    const double ln_n = std::log(static_cast<double>(n));
    BalancedReport rep;
    if (p < C * std::pow(static_cast<double>(n), -1.0 / m2) * (1 - 1e-12)) {
        rep.applicable = false;
        rep.reason = "p is below C n^{-1/m2}";
        return rep;
    }
    std::map<std::pair<int, int>, long long> classes;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        const int e = std::popcount(mask);
        if (e == 1) {
            ++rep.skipped_single_edge;
            continue;
        }
        std::uint64_t vs = 0;
        for (int i = 0; i < m; ++i)
            if (mask >> i & 1u) vs |= (std::uint64_t{1} << edges[i].first) | (std::uint64_t{1} << edges[i].second);
        ++classes[{std::popcount(vs), e}];
    }
    for (auto& [key, cnt] : classes) {
        BalancedEntry en;
        en.v = key.first;
        en.e = key.second;
        en.count = cnt;
        en.log_margin = (en.v - 2) * ln_n + (en.e - 1) * std::log(p) - (en.e - 1) * std::log(C);
        en.exponent = en.v - 2 - (en.e - 1) / m2;
        en.holds = en.log_margin >= -1e-9;
        rep.all_hold = rep.all_hold && en.holds;
        if (en.e < prof.e_h) {
            double lam = en.log_margin / ln_n;
            rep.min_lambda = rep.min_lambda ? std::min(*rep.min_lambda, lam) : lam;
            rep.min_exponent = rep.min_exponent ? std::min(*rep.min_exponent, en.exponent) : en.exponent;
        }
        rep.entries.push_back(en);
    }
    if (prof.strictly_2_balanced && rep.min_lambda) rep.strict_holds = *rep.min_lambda > 1e-9;
    return rep;
}

inline nlohmann::json to_json(const BalancedReport& r) {
    nlohmann::json j;
    j["applicable"] = r.applicable;
    if (!r.reason.empty()) j["reason"] = r.reason;
    j["all_hold"] = r.all_hold;
    j["strict_holds"] = r.strict_holds;
    j["skipped_single_edge"] = r.skipped_single_edge;
    j["min_lambda"] = r.min_lambda ? nlohmann::json(*r.min_lambda) : nlohmann::json(nullptr);
    j["min_exponent"] = r.min_exponent ? nlohmann::json(*r.min_exponent) : nlohmann::json(nullptr);
    auto& es = j["entries"] = nlohmann::json::array();
    for (auto& e : r.entries)
        es.push_back({{"v", e.v}, {"e", e.e}, {"count", e.count}, {"log_margin", e.log_margin},
                      {"exponent", e.exponent}, {"holds", e.holds}});
    return j;
}

// Toy values for the constants the proof only orders qualitatively.
struct Constants {
    std::string name = "defaults";
    double kappa = 0.05;
    double eta = 0.01;
    double beta = 0.001;
    double alpha = 0.04;
    double delta = 0.1;
    double eps = 0.1;
    double C_theta = 1.0;
    double C_hat = 10.0;
    double C_partial = 100.0;

    bool operator==(const Constants&) const = default;
};

inline Constants default_constants() { return {}; }

inline nlohmann::json to_json(const Constants& c) {
    return {{"name", c.name},   {"kappa", c.kappa},     {"eta", c.eta},       {"beta", c.beta},
            {"alpha", c.alpha}, {"delta", c.delta},     {"eps", c.eps},       {"C_theta", c.C_theta},
            {"C_hat", c.C_hat}, {"C_partial", c.C_partial}};
}

// Missing keys keep their defaults.
inline Constants constants_from_json(const nlohmann::json& j) {
    Constants c;
    auto get = [&](const char* k, double& x) {
        if (j.contains(k)) x = j.at(k).get<double>();
    };
    if (j.contains("name")) c.name = j.at("name").get<std::string>();
    get("kappa", c.kappa);
    get("eta", c.eta);
    get("beta", c.beta);
    get("alpha", c.alpha);
    get("delta", c.delta);
    get("eps", c.eps);
    get("C_theta", c.C_theta);
    get("C_hat", c.C_hat);
    get("C_partial", c.C_partial);
    for (double x : {c.kappa, c.eta, c.beta, c.alpha, c.delta, c.C_theta, c.C_hat, c.C_partial})
        if (!(x > 0)) throw ConfigError("constants must be positive");
    if (c.eps < 0) throw ConfigError("eps must be nonnegative");
    return c;
}

enum class Regime { QL_sparse, QL1_dense, QL2_dense, QH };

inline std::string to_string(Regime r) {
    switch (r) {
        case Regime::QL_sparse: return "QL_sparse";
        case Regime::QL1_dense: return "QL1_dense";
        case Regime::QL2_dense: return "QL2_dense";
        default: return "QH";
    }
}

struct ParamTable {
    Regime regime = Regime::QL_sparse;
    std::optional<double> q;
    double d_Q = 0, m_Q = 0, D_Q = 0, nu_Q = 0;
    int n = 0;
    double p = 0;
    long long e_Q = 0, k_Q = 0;
    double p_H = 0;           // unclamped theta_H n^{-1/m2} (ln n)^{1/(e_H-1)}
    double dense_cutoff = 0;  // kappa n p / ln n
    Constants constants;
};

inline ParamTable param_table(const PatternProfile& prof, int n, double p, long long eQ, long long kQ,
                              const Constants& c = default_constants()) {
    if (n < std::max(prof.v_h, 2)) throw InvalidInput("n must be at least v_H");
    if (!(p > 0 && p <= 1)) throw InvalidInput("p must lie in (0, 1]");
    if (eQ < 0 || kQ < 0) throw InvalidInput("e(Q) and k(Q) must be nonnegative");
    if (kQ > 0 && eQ < kQ) throw InvalidInput("k(Q) centres need at least k(Q) edges");
    if (kQ > n) throw InvalidInput("k(Q) exceeds n");
    const double nn = n, ln_n = std::log(nn), v = prof.v_h, e = prof.e_h;
    const int r = prof.r;
    ParamTable t;
    t.n = n;
    t.p = p;
    t.e_Q = eQ;
    t.k_Q = kQ;
    t.constants = c;
    t.p_H = theta_h(prof) * std::pow(nn, -1.0 / to_double(*prof.m2)) * std::pow(ln_n, 1.0 / (e - 1));
    t.dense_cutoff = c.kappa * nn * p / ln_n;
    const double base = std::exp((v - 2) * ln_n + (e - 1) * std::log(p));  // n^{v-2} p^{e-1}
    const double sparse_d = std::min(std::sqrt(c.eta) * eQ * ln_n, c.beta * nn * nn * p);
    if (kQ > 0) {
        t.regime = Regime::QH;
        t.d_Q = t.m_Q = 32.0 * kQ * nn * p;
        const double mk = std::min(kQ * std::exp((v - 1) * ln_n + e * std::log(p)), nn * nn * p);
        t.D_Q = 2 * v * mk / t.m_Q;
    } else if (p <= c.C_theta * t.p_H) {
        t.regime = Regime::QL_sparse;
        t.d_Q = sparse_d;
        t.m_Q = c.kappa * base * eQ;
        t.D_Q = 4 * e * e / c.kappa;
    } else if (static_cast<double>(eQ) < t.dense_cutoff) {
        t.regime = Regime::QL1_dense;
        t.d_Q = t.m_Q = 8.0 * r * eQ;
        t.D_Q = t.d_Q > 0 ? nn * nn * p / t.d_Q : std::numeric_limits<double>::infinity();
    } else {
        t.regime = Regime::QL2_dense;
        t.q = c.C_hat * ln_n / (c.kappa * base);
        t.d_Q = sparse_d;
        t.m_Q = c.kappa * base * *t.q * eQ;
        t.D_Q = c.C_partial / c.kappa;
    }
    t.nu_Q = t.m_Q + (r * r + 1) * (t.d_Q + 1);
    return t;
}

inline nlohmann::json to_json(const ParamTable& t) {
    auto num = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); };
    nlohmann::json j;
    j["regime"] = to_string(t.regime);
    j["q"] = t.q ? num(*t.q) : nlohmann::json(nullptr);
    j["d_Q"] = num(t.d_Q);
    j["m_Q"] = num(t.m_Q);
    j["D_Q"] = num(t.D_Q);
    j["nu_Q"] = num(t.nu_Q);
    j["n"] = t.n;
    j["p"] = t.p;
    j["e_Q"] = t.e_Q;
    j["k_Q"] = t.k_Q;
    j["p_H"] = t.p_H;
    j["dense_cutoff"] = t.dense_cutoff;
    j["constants"] = to_json(t.constants);
    return j;
}

struct SufficiencyReport {
    long long m_max = 0;          // floor(beta N p)
    double log_sum_low = -std::numeric_limits<double>::infinity();
    double sum_low = 0;           // sum_{m=1}^{beta N p} exp(m - c m ln(Np/m))
    double sum_high = 0;          // (1 + e^{-np})^n - 1
    double sum_high_direct = 0;   // sum_k C(n,k) e^{-npk}, term by term
    bool low_ok = true, high_ok = true;
};

inline SufficiencyReport sufficiency_sum(int n, double p, double beta, double c) {
    if (n < 2 || !(p > 0 && p <= 1) || !(beta >= 0) || !(c > 0)) throw InvalidInput("bad sufficiency inputs");
    SufficiencyReport rep;
    const double N = 0.5 * n * (n - 1.0), Np = N * p;
    rep.m_max = static_cast<long long>(std::floor(beta * Np));
    double mx = -std::numeric_limits<double>::infinity();
    std::vector<double> logs;
    for (long long m = 1; m <= rep.m_max; ++m) {
        double lt = m - c * m * std::log(Np / m);
        logs.push_back(lt);
        mx = std::max(mx, lt);
    }
    if (!logs.empty()) {
        double s = 0;
        for (double lt : logs) s += std::exp(lt - mx);
        rep.log_sum_low = mx + std::log(s);
        rep.sum_low = std::exp(rep.log_sum_low);
    }
    rep.sum_high = std::expm1(n * std::log1p(std::exp(-n * p)));
    double direct = 0;
    for (int k = 1; k <= n; ++k)
        direct += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) - n * p * k);
    rep.sum_high_direct = direct;
    rep.low_ok = rep.sum_low < 1;
    rep.high_ok = rep.sum_high < 1;
    return rep;
}

inline nlohmann::json to_json(const SufficiencyReport& r) {
    return {{"m_max", r.m_max},       {"sum_low", r.sum_low},       {"sum_high", r.sum_high},
            {"sum_high_direct", r.sum_high_direct}, {"low_ok", r.low_ok}, {"high_ok", r.high_ok}};
}

} // namespace simonovits

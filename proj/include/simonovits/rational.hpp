#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace simonovits {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& q) {
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Coefficients c[0..d] (ascending powers) of the unique polynomial of
// degree <= d through the d+1 points (x[i], y[i]).
inline std::vector<Rational> lagrange_coefficients(const std::vector<Rational>& x,
                                                   const std::vector<Rational>& y) {
    const std::size_t k = x.size();
    if (k == 0 || y.size() != k) throw InvalidInput("interpolation needs matching nonempty point lists");
    std::vector<Rational> coeff(k, Rational(0));
    for (std::size_t i = 0; i < k; ++i) {
        // basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j)
        std::vector<Rational> basis{Rational(1)};
        Rational denom(1);
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            std::vector<Rational> next(basis.size() + 1, Rational(0));
            for (std::size_t t = 0; t < basis.size(); ++t) {
                next[t + 1] += basis[t];
                next[t] -= basis[t] * x[j];
            }
            basis = std::move(next);
            denom *= x[i] - x[j];
            if (denom == 0) throw InvalidInput("repeated interpolation node");
        }
        for (std::size_t t = 0; t < basis.size(); ++t) coeff[t] += y[i] * basis[t] / denom;
    }
    return coeff;
}

inline Rational eval_poly(const std::vector<Rational>& c, const Rational& t) {
    Rational acc(0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
    return acc;
}

} // namespace simonovits

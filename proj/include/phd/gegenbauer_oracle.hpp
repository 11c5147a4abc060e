#pragma once

// Exact-rational reference for the Gegenbauer generating functions. Formal
// power series in r whose coefficients are polynomials in xi are expanded by
// the binomial series of (1 + u)^(-lambda) and the Mercator series of
// log(1 + u), u = -2 xi r + r^2. Nothing here shares code with the floating
// point evaluators in special_functions.hpp.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "phd/errors.hpp"

namespace phd::oracle {

/// Polynomial in xi with exact rational coefficients, lowest degree first.
struct SeriesPolynomial {
    std::vector<mpq_class> coefficients;

    SeriesPolynomial() = default;
    explicit SeriesPolynomial(std::size_t degree_bound) : coefficients(degree_bound + 1) {}

    std::size_t degree_bound() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }

    mpq_class evaluate(const mpq_class& xi) const {
        mpq_class acc = 0;
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * xi + *it;
        return acc;
    }

    double evaluate(double xi) const { return evaluate(mpq_class(xi)).get_d(); }
};

struct OracleLimits {
    /// Largest numerator or denominator, in bits, any coefficient may reach.
    std::size_t max_bits = 1 << 14;
};

namespace detail {

// series[l] is the xi-polynomial multiplying r^l
using Series = std::vector<SeriesPolynomial>;

inline void check_capacity(const mpq_class& v, const OracleLimits& lim) {
    if (mpz_sizeinbase(v.get_num_mpz_t(), 2) > lim.max_bits || mpz_sizeinbase(v.get_den_mpz_t(), 2) > lim.max_bits)
        throw CapacityError("exact Gegenbauer oracle exceeded " + std::to_string(lim.max_bits) + "-bit coefficient budget");
}

inline Series zero_series(int max_degree) {
    Series s;
    s.reserve(static_cast<std::size_t>(max_degree) + 1);
    // r^l carries a polynomial of degree at most l
    for (int l = 0; l <= max_degree; ++l) s.emplace_back(static_cast<std::size_t>(l));
    return s;
}

inline void add_poly(SeriesPolynomial& dst, const SeriesPolynomial& src, const mpq_class& scale) {
    if (dst.coefficients.size() < src.coefficients.size()) dst.coefficients.resize(src.coefficients.size());
    for (std::size_t i = 0; i < src.coefficients.size(); ++i) dst.coefficients[i] += scale * src.coefficients[i];
}

inline SeriesPolynomial mul_poly(const SeriesPolynomial& a, const SeriesPolynomial& b, const OracleLimits& lim) {
    SeriesPolynomial out(a.degree_bound() + b.degree_bound());
    for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
        if (sgn(a.coefficients[i]) == 0) continue;
        for (std::size_t j = 0; j < b.coefficients.size(); ++j) {
            out.coefficients[i + j] += a.coefficients[i] * b.coefficients[j];
            check_capacity(out.coefficients[i + j], lim);
        }
    }
    return out;
}

inline Series mul_series(const Series& a, const Series& b, int max_degree, const OracleLimits& lim) {
    Series out = zero_series(max_degree);
    for (int i = 0; i <= max_degree; ++i)
        for (int j = 0; i + j <= max_degree; ++j) {
            auto prod = mul_poly(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)], lim);
            add_poly(out[static_cast<std::size_t>(i + j)], prod, 1);
        }
    return out;
}

}  // namespace detail

struct GegenbauerSeries {
    std::vector<SeriesPolynomial> p;  ///< P_0 .. P_max_degree
    std::vector<SeriesPolynomial> q;  ///< Q_0 .. Q_max_degree
};

/// Exact coefficient polynomials of both generating functions up to r^max_degree.
/// For lambda in {0, -1, -2, ...} the binomial series terminates and the base
/// is expanded as the exact polynomial it is.
inline GegenbauerSeries gegenbauer_series_oracle(const mpq_class& lambda, int max_degree, OracleLimits lim = {}) {
    if (max_degree < 0) throw DomainError("oracle: max_degree must be nonnegative");
    using detail::Series;

    // u = -2 xi r + r^2
    Series u = detail::zero_series(max_degree);
    if (max_degree >= 1) u[1].coefficients[1] = -2;
    if (max_degree >= 2) u[2].coefficients[0] = 1;

    Series f = detail::zero_series(max_degree);   // (1+u)^(-lambda)
    Series lg = detail::zero_series(max_degree);  // log(1+u)
    f[0].coefficients[0] = 1;

    Series u_pow = detail::zero_series(max_degree);
    u_pow[0].coefficients[0] = 1;
    mpq_class binom = 1;  // binomial(-lambda, k)
    const mpq_class minus_lambda = -lambda;
    for (int k = 1; k <= max_degree; ++k) {
        u_pow = detail::mul_series(u_pow, u, max_degree, lim);
        binom = binom * (minus_lambda - (k - 1)) / k;
        detail::check_capacity(binom, lim);
        const mpq_class mercator = mpq_class((k % 2 == 1) ? 1 : -1, k);
        for (int l = 0; l <= max_degree; ++l) {
            if (sgn(binom) != 0) detail::add_poly(f[static_cast<std::size_t>(l)], u_pow[static_cast<std::size_t>(l)], binom);
            detail::add_poly(lg[static_cast<std::size_t>(l)], u_pow[static_cast<std::size_t>(l)], mercator);
        }
    }
    for (auto& poly : f)
        for (auto& c : poly.coefficients) c.canonicalize();
    Series q = detail::mul_series(f, lg, max_degree, lim);
    for (auto& poly : q)
        for (auto& c : poly.coefficients) c.canonicalize();
    return GegenbauerSeries{std::move(f), std::move(q)};
}

}  // namespace phd::oracle

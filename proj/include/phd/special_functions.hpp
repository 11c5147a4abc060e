#pragma once

// Ultraspherical (Gegenbauer) polynomials P_l^(lambda), Q_l^(lambda) defined
// through their generating functions
//
//   (1 - 2 r xi + r^2)^(-lambda)                          = sum_l P_l(xi) r^l
//   (1 - 2 r xi + r^2)^(-lambda) log(1 - 2 r xi + r^2)    = sum_l Q_l(xi) r^l
//
// The evaluators below compute Taylor coefficients directly, so lambda = 0 and
// negative integer lambda need no limit bookkeeping. The explicit Gamma-ratio
// sums are provided separately as cross-checks.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "phd/errors.hpp"

namespace phd {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

/// Rising factorial lambda (lambda+1) ... (lambda+count-1); 1 for count = 0.
inline double pochhammer(double lambda, int count) {
    if (count < 0) throw DomainError("pochhammer: count must be nonnegative");
    long double acc = 1.0L;
    for (int i = 0; i < count; ++i) acc *= static_cast<long double>(lambda) + i;
    return static_cast<double>(acc);
}

inline double factorial(int k) {
    if (k < 0) throw DomainError("factorial of a negative integer");
    double acc = 1.0;
    for (int i = 2; i <= k; ++i) acc *= i;
    return acc;
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double acc = 1.0;
    for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
    return acc;
}

/// 1 + 1/2 + ... + 1/m (0 for m <= 0).
inline double harmonic(int m) {
    double acc = 0.0;
    for (int k = 1; k <= m; ++k) acc += 1.0 / k;
    return acc;
}

struct GegenbauerIndex {
    double lambda = 1.0;
    int degree = 0;

    GegenbauerIndex() = default;
    GegenbauerIndex(double lambda_, int degree_) : lambda(lambda_), degree(degree_) {
        if (degree < 0) throw DomainError("Gegenbauer degree must be nonnegative");
        if (!std::isfinite(lambda)) throw DomainError("Gegenbauer lambda must be finite");
    }
};

namespace detail {

inline void check_xi(double xi) {
    if (!(std::abs(xi) <= 1.0 + 1e-12)) throw DomainError("Gegenbauer argument must satisfy |xi| <= 1");
}

}  // namespace detail

/// Fills p[0..L] and q[0..L] (L = p.size()-1) with P_l and Q_l at xi.
///
/// P follows from (1 - 2 r xi + r^2) F' = 2 lambda (xi - r) F, which gives
///   l P_l = 2 xi (l - 1 + lambda) P_{l-1} - (l - 2 + 2 lambda) P_{l-2}
/// for every lambda. Q is the Cauchy product of P with the coefficients
/// -2 T_k(xi) / k of log(1 - 2 r xi + r^2).
inline void gegenbauer_tables(double lambda, double xi, std::span<long double> p, std::span<long double> q) {
    const std::size_t n = p.size();
    if (n == 0) return;
    const long double lam = lambda;
    const long double x = xi;
    p[0] = 1.0L;
    if (n > 1) p[1] = 2.0L * lam * x;
    for (std::size_t l = 2; l < n; ++l) {
        const long double ll = static_cast<long double>(l);
        p[l] = (2.0L * x * (ll - 1.0L + lam) * p[l - 1] - (ll - 2.0L + 2.0L * lam) * p[l - 2]) / ll;
    }
    if (q.empty()) return;
    // log coefficients c_k = -2 T_k(xi) / k
    std::vector<long double> c(n, 0.0L);
    long double t_prev = 1.0L, t_cur = x;
    for (std::size_t k = 1; k < n; ++k) {
        c[k] = -2.0L * t_cur / static_cast<long double>(k);
        const long double t_next = 2.0L * x * t_cur - t_prev;
        t_prev = t_cur;
        t_cur = t_next;
    }
    for (std::size_t l = 0; l < q.size() && l < n; ++l) {
        long double acc = 0.0L;
        for (std::size_t k = 1; k <= l; ++k) acc += c[k] * p[l - k];
        q[l] = acc;
    }
}

inline double gegenbauer_p(const GegenbauerIndex& idx, double xi) {
    detail::check_xi(xi);
    std::vector<long double> p(static_cast<std::size_t>(idx.degree) + 1);
    gegenbauer_tables(idx.lambda, xi, p, {});
    return static_cast<double>(p.back());
}

inline double gegenbauer_q(const GegenbauerIndex& idx, double xi) {
    detail::check_xi(xi);
    std::vector<long double> p(static_cast<std::size_t>(idx.degree) + 1), q(p.size());
    gegenbauer_tables(idx.lambda, xi, p, q);
    return static_cast<double>(q.back());
}

namespace detail {

/// prod_{i=0, i != skip}^{count-1} (lambda + i): the rising factorial with one
/// factor removed. This is Gamma(lambda+count) / ((lambda+skip) Gamma(lambda))
/// with the pole at lambda = -skip already cancelled.
inline long double pochhammer_without(long double lambda, int count, int skip) {
    long double acc = 1.0L;
    for (int i = 0; i < count; ++i)
        if (i != skip) acc *= lambda + i;
    return acc;
}

inline long double factorial_ld(int k) {
    long double acc = 1.0L;
    for (int i = 2; i <= k; ++i) acc *= i;
    return acc;
}

}  // namespace detail

/// Explicit sum over j <= l/2 with Gamma(l-j+lambda)/Gamma(lambda) written as a
/// rising factorial.
inline double gegenbauer_p_closed(const GegenbauerIndex& idx, double xi) {
    const int l = idx.degree;
    const long double lam = idx.lambda;
    const long double two_xi = 2.0L * static_cast<long double>(xi);
    long double acc = 0.0L;
    for (int j = 0; j <= l / 2; ++j) {
        long double term = detail::pochhammer_without(lam, l - j, -1) /
                           (detail::factorial_ld(j) * detail::factorial_ld(l - 2 * j));
        term *= std::pow(two_xi, l - 2 * j);
        acc += (j % 2 == 0) ? term : -term;
    }
    return static_cast<double>(acc);
}

/// Explicit double sum for Q_l = -dP_l/dlambda. Each 1/(lambda+k) is absorbed
/// into the rising factorial, so the formula is evaluated at its finite limit
/// for lambda in {0, -1, -2, ...}.
inline double gegenbauer_q_closed(const GegenbauerIndex& idx, double xi) {
    const int l = idx.degree;
    const long double lam = idx.lambda;
    const long double two_xi = 2.0L * static_cast<long double>(xi);
    long double acc = 0.0L;
    for (int j = 0; j <= l / 2; ++j) {
        long double inner = 0.0L;
        for (int k = 0; k <= l - j - 1; ++k) inner += detail::pochhammer_without(lam, l - j, k);
        long double term = inner / (detail::factorial_ld(j) * detail::factorial_ld(l - 2 * j));
        term *= std::pow(two_xi, l - 2 * j);
        acc += (j % 2 == 1) ? term : -term;  // (-1)^(j+1)
    }
    return static_cast<double>(acc);
}

/// log((t - i)/(t - z)) on the principal branch.
///
/// For real t and Im z > 0 the ratio has real part t(t-x) + y > 0 whenever its
/// imaginary part t(y-1) + x vanishes, so it never reaches the cut (-inf, 0]
/// and the result is continuous in z on the open half-plane. On the cut edge
/// itself std::log returns the limit from the upper side.
inline cplx log_branch_ratio(double t, cplx z) {
    if (!(z.imag() > 0.0)) throw DomainError("log_branch_ratio: z must lie in the open upper half-plane");
    return std::log((cplx(t, -1.0)) / (cplx(t, 0.0) - z));
}

/// R_m(w) = log(1 - w) + sum_{k=1}^{m} w^k / k = -sum_{k>m} w^k / k.
///
/// Summed as a series for |w| < 1/2, so no digits are lost when the partial
/// sum nearly cancels the logarithm.
inline cplx log_remainder(cplx w, int m) {
    const double aw = std::abs(w);
    if (aw < 0.5) {
        cplx wk = std::pow(w, m + 1);
        cplx acc = 0.0;
        for (int k = m + 1; k < m + 200; ++k) {
            const cplx term = wk / static_cast<double>(k);
            acc -= term;
            if (std::abs(term) <= 1e-18 * std::abs(acc)) break;
            wk *= w;
        }
        return acc;
    }
    cplx acc = std::log(1.0 - w);
    cplx wk = 1.0;
    for (int k = 1; k <= m; ++k) {
        wk *= w;
        acc += wk / static_cast<double>(k);
    }
    return acc;
}

}  // namespace phd

#pragma once

// Begehr-Hile kernels, their far-field singular parts about the point -i, the
// modified kernels and the modified Pompeiu area operators on the upper
// half-plane.
//
// Notation: a = z + i, b = zeta + i, R = max(|a|, |b|), rho = min/max of the
// two moduli, xi = cos(arg a - arg b) and w the complex ratio of the smaller
// to the larger of a, b. With C_n = 1 / (pi ((n-1)!)^2), lambda = 1 - n,
//
//   S.P.[K_nn](z, zeta) = C_n R^(2n-2) [ sum_{l<=2n} Q_l^(lambda)(xi) rho^l
//                         + 2 (log R - H_{n-1}) sum_{l<=2n} P_l^(lambda)(xi) rho^l ]
//
// and the same quantity equals C_n R^(2n-2) sum_{p+q<=2n} e_pq w^p conj(w)^q with
//   alpha_p = (-1)^p C(n-1, p),  beta_p = -sum_{k=1}^p alpha_{p-k} / k,
//   e_pq    = beta_p alpha_q + alpha_p beta_q + 2 (log R - H_{n-1}) alpha_p alpha_q.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "phd/errors.hpp"
#include "phd/geometry.hpp"
#include "phd/quadrature.hpp"
#include "phd/source_term.hpp"
#include "phd/special_functions.hpp"

namespace phd {

struct BHKernelIndex {
    int m = 1;
    int n = 1;

    BHKernelIndex() = default;
    BHKernelIndex(int m_, int n_) : m(m_), n(n_) {
        if (m + n < 0 || (m == 0 && n == 0)) throw DomainError("Begehr-Hile index needs m + n >= 0 and (m, n) != (0, 0)");
    }
};

inline cplx bh_kernel(const BHKernelIndex& k, cplx z) {
    if (z == 0.0) throw SingularityError("Begehr-Hile kernel evaluated at 0");
    const cplx zb = std::conj(z);
    if (k.m <= 0) {
        const double c = factorial(-k.m) * ((k.m % 2 == 0) ? 1.0 : -1.0) / (factorial(k.n - 1) * pi);
        return c * std::pow(z, k.m - 1) * std::pow(zb, k.n - 1);
    }
    if (k.n <= 0) {
        const double c = factorial(-k.n) * ((k.n % 2 == 0) ? 1.0 : -1.0) / (factorial(k.m - 1) * pi);
        return c * std::pow(z, k.m - 1) * std::pow(zb, k.n - 1);
    }
    const double c = 1.0 / (factorial(k.m - 1) * factorial(k.n - 1) * pi);
    const double bracket = std::log(std::norm(z)) - harmonic(k.m - 1) - harmonic(k.n - 1);
    if (k.m == k.n) return c * std::pow(std::norm(z), k.m - 1) * bracket;
    return c * std::pow(z, k.m - 1) * std::pow(zb, k.n - 1) * bracket;
}

namespace detail {

inline constexpr int max_kernel_order = 24;

/// Quantities of the pair (z, zeta) that enter the singular part. Built only
/// from expressions symmetric in the two points, so swapping them yields
/// bit-identical values.
struct PairGeometry {
    double rho = 0.0;
    double R = 0.0;
    double xi = 0.0;
    cplx w;               ///< smaller / larger of (z + i, zeta + i)
    bool z_inner = true;  ///< |z + i| < |zeta + i|
    bool shell = false;   ///< |z + i| == |zeta + i| to relative 1e-12
};

inline PairGeometry pair_geometry(cplx z, cplx zeta) {
    const cplx a = z + cplx(0.0, 1.0), b = zeta + cplx(0.0, 1.0);
    const double na = std::hypot(a.real(), a.imag()), nb = std::hypot(b.real(), b.imag());
    PairGeometry g;
    g.shell = std::abs(na - nb) <= 1e-12 * std::max(na, nb);
    const double dot = a.real() * b.real() + a.imag() * b.imag();
    g.xi = std::clamp(dot / (na * nb), -1.0, 1.0);
    if (na < nb) {
        g.rho = na / nb;
        g.R = nb;
        g.w = a / b;
        g.z_inner = true;
    } else {
        g.rho = nb / na;
        g.R = na;
        g.w = b / a;
        g.z_inner = false;
    }
    return g;
}

inline void check_order(int n, const char* who) {
    if (n < 1 || n > max_kernel_order) throw DomainError(std::string(who) + ": order must be in [1, 24]");
}

inline double kernel_constant(int n) {
    const double f = factorial(n - 1);
    return 1.0 / (pi * f * f);
}

/// Gegenbauer form of the bracket, given rho and xi.
inline double sp_bracket_gegenbauer(int n, double rho, double xi, double log_R) {
    std::array<long double, 2 * max_kernel_order + 1> p{}, q{};
    const std::size_t L = static_cast<std::size_t>(2 * n) + 1;
    gegenbauer_tables(1.0 - n, xi, std::span<long double>(p.data(), L), std::span<long double>(q.data(), L));
    long double sp = 0.0L, sq = 0.0L, r = 1.0L;
    for (std::size_t l = 0; l < L; ++l) {
        sq += q[l] * r;
        sp += p[l] * r;
        r *= rho;
    }
    return static_cast<double>(sq + 2.0L * (static_cast<long double>(log_R) - harmonic(n - 1)) * sp);
}

struct SeriesCoefficients {
    std::vector<double> alpha;  // length 2n+1, zero beyond n-1
    std::vector<double> beta;   // length 2n+1
};

inline SeriesCoefficients build_series_coefficients(int n) {
    SeriesCoefficients c;
    const std::size_t L = static_cast<std::size_t>(2 * n) + 1;
    c.alpha.assign(L, 0.0);
    c.beta.assign(L, 0.0);
    for (int p = 0; p <= n - 1; ++p) c.alpha[static_cast<std::size_t>(p)] = ((p % 2 == 0) ? 1.0 : -1.0) * binomial(n - 1, p);
    for (std::size_t p = 1; p < L; ++p)
        for (std::size_t k = 1; k <= p; ++k) c.beta[p] -= c.alpha[p - k] / static_cast<double>(k);
    return c;
}

inline const SeriesCoefficients& series_coefficients(int n) {
    static const auto table = [] {
        std::vector<SeriesCoefficients> t(max_kernel_order + 1);
        for (int k = 1; k <= max_kernel_order; ++k) t[static_cast<std::size_t>(k)] = build_series_coefficients(k);
        return t;
    }();
    return table[static_cast<std::size_t>(n)];
}

}  // namespace detail

/// Singular part S.P.[K_nn](z, zeta), evaluated from the Gegenbauer sums.
/// Undefined on the shell |z + i| = |zeta + i|, where the modified kernel
/// keeps the unmodified K_nn.
inline cplx singular_part(int n, cplx z, cplx zeta) {
    detail::check_order(n, "singular_part");
    require_closed(z, "singular_part");
    require_closed(zeta, "singular_part");
    const auto g = detail::pair_geometry(z, zeta);
    if (g.shell) throw BranchError("singular_part: |z+i| = |zeta+i|; use modified_kernel, which keeps K_nn there");
    return detail::kernel_constant(n) * std::pow(g.R, 2 * n - 2) * detail::sp_bracket_gegenbauer(n, g.rho, g.xi, std::log(g.R));
}

/// The same singular part as a double power series in (w, conj w).
inline cplx singular_part_series(int n, cplx z, cplx zeta) {
    detail::check_order(n, "singular_part_series");
    const auto g = detail::pair_geometry(z, zeta);
    if (g.shell) throw BranchError("singular_part_series: |z+i| = |zeta+i|");
    const auto& c = detail::series_coefficients(n);
    const double shift = 2.0 * (std::log(g.R) - harmonic(n - 1));
    cplx acc = 0.0;
    const cplx wb = std::conj(g.w);
    for (int p = 0; p <= 2 * n; ++p)
        for (int q = 0; p + q <= 2 * n; ++q) {
            const std::size_t P = static_cast<std::size_t>(p), Q = static_cast<std::size_t>(q);
            const double e = c.beta[P] * c.alpha[Q] + c.alpha[P] * c.beta[Q] + shift * c.alpha[P] * c.alpha[Q];
            if (e != 0.0) acc += e * std::pow(g.w, p) * std::pow(wb, q);
        }
    return detail::kernel_constant(n) * std::pow(g.R, 2 * n - 2) * acc;
}

/// First-order singular part in closed form: 0 on the shell, otherwise
/// (1/pi)(-2 rho cos psi - rho^2 cos 2psi + log R^2), psi = arg(z+i) - arg(zeta+i).
inline cplx singular_part_unit_order(cplx z, cplx zeta) {
    const auto g = detail::pair_geometry(z, zeta);
    if (g.shell) return 0.0;
    return (-2.0 * g.rho * g.xi - g.rho * g.rho * (2.0 * g.xi * g.xi - 1.0) + 2.0 * std::log(g.R)) / pi;
}

/// Common value both one-sided limits of S.P.[K_nn](z, .) take on the shell
/// through zeta (rho -> 1). The modified kernel jumps by exactly this amount there.
inline double singular_part_shell_limit(int n, cplx z, cplx zeta) {
    detail::check_order(n, "singular_part_shell_limit");
    const auto g = detail::pair_geometry(z, zeta);
    return detail::kernel_constant(n) * std::pow(g.R, 2 * n - 2) * detail::sp_bracket_gegenbauer(n, 1.0, g.xi, std::log(g.R));
}

/// Modified kernel K~_nn(z, zeta): K_nn(z - zeta) on the shell, K_nn(z - zeta)
/// minus its singular part elsewhere. Real-valued and symmetric in (z, zeta).
/// For rho < 1/4 the difference is summed directly as the series remainder
/// C_n R^(2n-2) 2 Re sum_q alpha_q conj(w)^q sum_i alpha_i w^i R_{2n-q-i}(w),
/// which avoids cancelling two O(R^(2n-2) log R) terms.
inline cplx modified_kernel(int n, cplx z, cplx zeta) {
    detail::check_order(n, "modified_kernel");
    require_closed(z, "modified_kernel");
    require_closed(zeta, "modified_kernel");
    if (z == zeta) throw SingularityError("modified_kernel: z == zeta");
    const auto g = detail::pair_geometry(z, zeta);
    const double C = detail::kernel_constant(n);
    if (g.shell) return bh_kernel({n, n}, z - zeta);
    if (g.rho < 0.25) {
        const auto& c = detail::series_coefficients(n);
        const cplx wb = std::conj(g.w);
        cplx acc = 0.0, wq = 1.0;
        for (int q = 0; q <= n - 1; ++q, wq *= wb) {
            cplx tail = 0.0, wi = 1.0;
            for (int i = 0; i <= n - 1; ++i, wi *= g.w)
                tail += c.alpha[static_cast<std::size_t>(i)] * wi * log_remainder(g.w, 2 * n - q - i);
            acc += c.alpha[static_cast<std::size_t>(q)] * wq * tail;
        }
        return C * std::pow(g.R, 2 * n - 2) * 2.0 * acc.real();
    }
    const double k = C * std::pow(std::norm(z - zeta), n - 1) * (std::log(std::norm(z - zeta)) - 2.0 * harmonic(n - 1));
    return k - C * std::pow(g.R, 2 * n - 2) * detail::sp_bracket_gegenbauer(n, g.rho, g.xi, std::log(g.R));
}

/// First off-diagonal modified kernels. With N = max(m, n), (m, n) = (N-1, N)
/// subtracts d/dz of S.P.[K_NN] from K_{m,n}(z - zeta) and (N, N-1) subtracts
/// d/dzbar, both differentiated term by term in the (w, conj w) series.
inline cplx modified_kernel_offdiag(int m, int n, cplx z, cplx zeta) {
    if (std::abs(m - n) != 1) throw DomainError("modified_kernel_offdiag: need |m - n| = 1");
    const int N = std::max(m, n);
    detail::check_order(N, "modified_kernel_offdiag");
    require_closed(z, "modified_kernel_offdiag");
    require_closed(zeta, "modified_kernel_offdiag");
    if (z == zeta) throw SingularityError("modified_kernel_offdiag: z == zeta");
    const cplx K = bh_kernel({m, n}, z - zeta);
    const auto g = detail::pair_geometry(z, zeta);
    if (g.shell) return K;
    const bool dz = (m == N - 1);  // d/dz of the diagonal part, else d/dzbar
    const auto& c = detail::series_coefficients(N);
    const double shift = 2.0 * (std::log(g.R) - harmonic(N - 1));
    const cplx w = g.w, wb = std::conj(g.w);
    const cplx a = z + cplx(0.0, 1.0), b = zeta + cplx(0.0, 1.0);
    cplx acc = 0.0;
    for (int p = 0; p <= 2 * N; ++p)
        for (int q = 0; p + q <= 2 * N; ++q) {
            const std::size_t P = static_cast<std::size_t>(p), Q = static_cast<std::size_t>(q);
            const double aa = c.alpha[P] * c.alpha[Q];
            const double e = c.beta[P] * c.alpha[Q] + c.alpha[P] * c.beta[Q] + shift * aa;
            if (g.z_inner) {
                // w = a / b: only w depends on z, only conj w on zbar
                if (dz && p > 0) acc += e * p * std::pow(w, p - 1) * std::pow(wb, q);
                if (!dz && q > 0) acc += e * q * std::pow(w, p) * std::pow(wb, q - 1);
            } else {
                // w = b / a with R = |a|
                const double coef = (dz ? (N - 1 - p) : (N - 1 - q)) * e + aa;
                if (coef != 0.0) acc += coef * std::pow(w, p) * std::pow(wb, q);
            }
        }
    const cplx denom = g.z_inner ? (dz ? b : std::conj(b)) : (dz ? a : std::conj(a));
    return K - detail::kernel_constant(N) * std::pow(g.R, 2 * N - 2) * acc / denom;
}

// ---------------------------------------------------------------------------
// Area operators

namespace detail {

/// Angular window (in polar coordinates about -i) of rays meeting the disc.
inline std::pair<double, double> disc_angles(const Disc& d) {
    const cplx c = d.center + cplx(0.0, 1.0);
    const double dist = std::abs(c);
    if (d.radius >= dist) return {0.0, pi};
    const double half = std::asin(d.radius / dist);
    const double mid = std::arg(c);
    return {std::max(0.0, mid - half), std::min(pi, mid + half)};
}

/// Radial window on the ray at angle phi: inside the disc and above the real axis.
inline std::pair<double, double> ray_window(const Disc& d, double phi) {
    const double sphi = std::sin(phi);
    if (!(sphi > 0.0)) return {0.0, 0.0};
    const cplx c = d.center + cplx(0.0, 1.0);
    const double p = c.real() * std::cos(phi) + c.imag() * sphi;
    const double q = std::norm(c) - d.radius * d.radius;
    const double disc = p * p - q;
    if (disc <= 0.0) return {0.0, 0.0};
    const double root = std::sqrt(disc);
    const double lo = std::max(p - root, 1.0 / sphi);
    const double hi = p + root;
    return hi > lo ? std::pair{lo, hi} : std::pair{0.0, 0.0};
}

inline void add_angle_of(std::vector<double>& out, cplx point) {
    const cplx v = point + cplx(0.0, 1.0);
    if (std::abs(v) > 0.0) out.push_back(std::arg(v));
}

/// Angles at which the inner integrand changes character: the direction of z,
/// the corners where the disc meets the real axis, and the points where the
/// circle |zeta + i| = |z + i| crosses the real axis or the disc boundary.
inline std::vector<double> angular_breaks(const Disc& d, cplx z) {
    std::vector<double> out;
    add_angle_of(out, z);
    const cplx c = d.center;
    if (d.radius > std::abs(c.imag())) {
        const double h = std::sqrt(d.radius * d.radius - c.imag() * c.imag());
        add_angle_of(out, {c.real() - h, 0.0});
        add_angle_of(out, {c.real() + h, 0.0});
    }
    const double sz = std::abs(z + cplx(0.0, 1.0));
    if (sz > 1.0) {
        const double x = std::sqrt(sz * sz - 1.0);
        add_angle_of(out, {-x, 0.0});
        add_angle_of(out, {x, 0.0});
    }
    // circle about -i of radius sz against the disc boundary
    const cplx cc = c + cplx(0.0, 1.0);
    const double dd = std::abs(cc);
    if (dd > 0.0) {
        const double along = (sz * sz - d.radius * d.radius + dd * dd) / (2.0 * dd);
        const double h2 = sz * sz - along * along;
        if (h2 > 0.0) {
            const cplx u = cc / dd, n(-u.imag(), u.real());
            const double h = std::sqrt(h2);
            out.push_back(std::arg(along * u + h * n));
            out.push_back(std::arg(along * u - h * n));
        }
    }
    return out;
}

}  // namespace detail

/// T~_nn g(z) = area integral over H of K~_nn(z, zeta) g(zeta), for z in the
/// closed upper half-plane. Computed in polar coordinates about -i, where the
/// shell |zeta + i| = |z + i| is a coordinate line and the kernel singularity
/// at zeta = z is a panel corner.
inline QuadResult<cplx> pompeiu_apply(int n, const SourceTerm& g, cplx z, const QuadratureSpec& q) {
    detail::check_order(n, "pompeiu_apply");
    require_closed(z, "pompeiu_apply");
    q.validate();
    if (g.is_zero()) return {};
    const Disc disc = g.integration_disc(q.truncation_radius, q.tolerance);
    auto [phi_lo, phi_hi] = detail::disc_angles(disc);
    if (!(phi_hi > phi_lo)) return {};

    const double sz = std::abs(z + cplx(0.0, 1.0));
    const double phiz = std::arg(z + cplx(0.0, 1.0));
    const double span = phi_hi - phi_lo;
    const double inner_tol = 0.1 * q.tolerance / span;
    double inner_error = 0.0;

    auto radial = [&](double phi) -> cplx {
        const auto [lo, hi] = detail::ray_window(disc, phi);
        if (!(hi > lo)) return 0.0;
        const cplx dir = std::polar(1.0, phi);
        std::vector<double> breaks{lo};
        const double nearest = sz * std::cos(phi - phiz);
        for (double s : {sz, nearest})
            if (s > lo && s < hi) breaks.push_back(s);
        breaks.push_back(hi);
        std::sort(breaks.begin(), breaks.end());
        auto f = [&](double s) -> cplx {
            const cplx zeta = cplx(0.0, -1.0) + s * dir;
            if (zeta == z || !(zeta.imag() > 0.0)) return 0.0;
            const cplx gv = g(zeta);
            if (gv == 0.0) return 0.0;
            return modified_kernel(n, z, zeta).real() * gv * s;
        };
        auto r = integrate_panels<cplx>(f, breaks, inner_tol, q.relative_tolerance, q.max_intervals);
        inner_error += r.error;
        return r.value;
    };

    std::vector<double> breaks{phi_lo, phi_hi};
    for (double a : detail::angular_breaks(disc, z))
        if (a > phi_lo && a < phi_hi) breaks.push_back(a);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    // split wide pieces so the first pass sees the angular structure
    std::vector<double> panels;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const int k = std::max(1, static_cast<int>(std::ceil((breaks[i + 1] - breaks[i]) / span * 4)));
        for (int j = 0; j < k; ++j) panels.push_back(breaks[i] + (breaks[i + 1] - breaks[i]) * j / k);
    }
    panels.push_back(breaks.back());

    auto outer = integrate_panels<cplx>(radial, panels, q.tolerance, q.relative_tolerance, q.max_intervals);
    // the inner errors are summed over every outer node; rescale to one sweep
    const int nodes = 15 * outer.intervals;
    outer.error += inner_error * span / std::max(1, nodes);
    return outer;
}

}  // namespace phd

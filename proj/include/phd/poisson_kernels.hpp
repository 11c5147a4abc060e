#pragma once

// Classical and higher-order Poisson kernels of the upper half-plane and the
// boundary integral operators built from them.
//
// Conventions: u = z - i, v = z - t, w = u / v, so (t - i)/(t - z) = 1 - w, and
// c_n = 1 / ((n-1)! (n-2)!). With R_m(w) = log(1 - w) + sum_{k<=m} w^k / k,
//
//   G_{n,n-1}(z,t) = c_n v^(n-2) R_{n-2}(w) / (2i)
//   G_n(z,t)       = -2 y c_n Re{ |v|^(2(n-2)) R_{2(n-2)}(w) - E_n }
//   E_n            = sum_{j=n-1}^{2(n-2)} sum_{m=2(n-2)-j+1}^{n-2} C(n-2,m) (zbar - z)^m v^(2(n-2)-m-j) u^j / j
//
// The kernels satisfy d_z d_zbar G_n = G_{n-1} (so the Laplacian of G_n is
// 4 G_{n-1}), G_n(i, t) = 0 and G_n(s, t) = 0 for real s != t when n >= 2.

#include <cmath>
#include <complex>
#include <vector>

#include "phd/boundary_data.hpp"
#include "phd/errors.hpp"
#include "phd/geometry.hpp"
#include "phd/quadrature.hpp"
#include "phd/special_functions.hpp"

namespace phd {

/// y / ((t - x)^2 + y^2)
inline double poisson_g1(cplx z, double t) {
    require_interior(z, "poisson_g1");
    const double dx = t - z.real();
    return z.imag() / (dx * dx + z.imag() * z.imag());
}

inline double higher_poisson_gn(int n, cplx z, double t) {
    if (n < 2) throw DomainError("higher_poisson_gn: order must be at least 2");
    require_interior(z, "higher_poisson_gn");
    const cplx u = z - cplx(0.0, 1.0);
    const cplx v = z - t;
    const cplx w = u / v;
    const int m2 = 2 * (n - 2);
    const double c = 1.0 / (factorial(n - 1) * factorial(n - 2));
    const double av2 = std::norm(v);
    cplx bracket = std::pow(av2, n - 2) * log_remainder(w, m2);
    const cplx d(0.0, -2.0 * z.imag());
    for (int j = n - 1; j <= m2; ++j)
        for (int m = m2 - j + 1; m <= n - 2; ++m)
            bracket -= binomial(n - 2, m) / j * std::pow(d, m) * std::pow(v, m2 - m - j) * std::pow(u, j);
    return -2.0 * z.imag() * c * bracket.real();
}

/// G_n for any n >= 1.
inline double poisson_kernel(int n, cplx z, double t) {
    return n == 1 ? poisson_g1(z, t) : higher_poisson_gn(n, z, t);
}

/// The two literal algebraic displays of G_n, evaluated term by term.
/// `Contracted` carries the inner sum over l = 0..n-2 with C(n-2, l);
/// `Reindexed` carries l = j..2(n-2) with C(n-2, l-j) and agrees with
/// higher_poisson_gn.
enum class GnDisplay { Contracted, Reindexed };

inline double gn_displayed_form(int n, cplx z, double t, GnDisplay form) {
    if (n < 2) throw DomainError("gn_displayed_form: order must be at least 2");
    require_interior(z, "gn_displayed_form");
    const cplx I(0.0, 1.0);
    const cplx zb = std::conj(z);
    const cplx u = z - I, v = z - t, d = zb - z;
    const int m2 = 2 * (n - 2);
    const double c = 1.0 / (factorial(n - 1) * factorial(n - 2));
    cplx s = c / (2.0 * I) * std::pow(std::norm(v), n - 2) * log_branch_ratio(t, z);
    for (int j = 1; j <= n - 2; ++j) s += c / (j * 2.0 * I) * std::pow(zb - t, n - 2) * std::pow(v, n - 2 - j) * std::pow(u, j);
    for (int j = n - 1; j <= m2; ++j) {
        if (form == GnDisplay::Contracted) {
            for (int l = 0; l <= n - 2; ++l)
                s += c / (j * 2.0 * I) * binomial(n - 2, l) * std::pow(d, l) * std::pow(v, m2 - l - j) * std::pow(u, j);
        } else {
            for (int l = j; l <= m2; ++l)
                s += c / (j * 2.0 * I) * binomial(n - 2, l - j) * std::pow(d, l - j) * std::pow(v, m2 - l) * std::pow(u, j);
        }
    }
    return 2.0 * (d * s).real();
}

/// G_{n,n-1}(z, t), the analytic coefficient of (zbar + i)^(n-1).
inline cplx gn_analytic_part(int n, cplx z, double t) {
    if (n < 2) throw DomainError("gn_analytic_part: order must be at least 2");
    require_closed(z, "gn_analytic_part");
    const cplx u = z - cplx(0.0, 1.0);
    const cplx v = z - t;
    if (v == 0.0) throw SingularityError("gn_analytic_part: z coincides with t");
    const double c = 1.0 / (factorial(n - 1) * factorial(n - 2));
    return c * std::pow(v, n - 2) * log_remainder(u / v, n - 2) / cplx(0.0, 2.0);
}

/// G_{n,n-1} from G_{n-1,n-2} by the order recurrence (n >= 3).
inline cplx gn_analytic_part_recurrence(int n, cplx z, double t) {
    if (n < 3) throw DomainError("gn_analytic_part_recurrence: order must be at least 3");
    const cplx u = z - cplx(0.0, 1.0);
    const double f = factorial(n - 3) / factorial(n - 1);
    const double c = 1.0 / (factorial(n - 1) * factorial(n - 2) * (n - 2));
    return f * (z - t) * gn_analytic_part(n - 1, z, t) + c * std::pow(u, n - 2) / cplx(0.0, 2.0);
}

/// Placement of the tan map and fixed panel breaks for a boundary function.
struct LineLayout {
    double center = 0.0;
    double scale = 1.0;
    std::vector<double> breakpoints;

    static LineLayout for_datum(const BoundaryDatum& f) {
        return LineLayout{f.center(), std::max(f.width(), 1.0), f.breakpoints()};
    }
};

/// (4^(1-j) / pi) * integral over R of G_j(z, t) f(t) dt for any callable f.
template <class F>
QuadResult<double> poisson_line_integral(int j, cplx z, F&& f, const LineLayout& layout, const QuadratureSpec& q) {
    if (j < 1) throw DomainError("Poisson integral: order must be at least 1");
    require_interior(z, "poisson_integral");
    const double factor = std::pow(4.0, 1 - j) / pi;
    const TanMap map{layout.center, layout.scale};
    const auto panels = map.panels(q.base_panels, layout.breakpoints, z.real(), 4.0 * z.imag());
    auto integrand = [&](double t) { return poisson_kernel(j, z, t) * f(t); };
    auto r = integrate_real_line<double>(integrand, map, panels, q.tolerance / factor, q.relative_tolerance, q.max_intervals);
    return QuadResult<double>{factor * r.value, factor * r.error, r.intervals};
}

/// j-th order Poisson integral M_j f(z).
inline QuadResult<double> poisson_integral_mj(int j, const BoundaryDatum& f, cplx z, const QuadratureSpec& q) {
    if (j < 1) throw DomainError("poisson_integral_mj: order must be at least 1");
    require_interior(z, "poisson_integral_mj");
    if (f.is_zero()) return {};
    return poisson_line_integral(j, z, f, LineLayout::for_datum(f), q);
}

}  // namespace phd

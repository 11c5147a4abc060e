#pragma once

// Sampled nontangential and Hardy-Littlewood maximal functions. Every value
// here is a maximum over finitely many samples, hence a lower bound for the
// true supremum.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "phd/boundary_data.hpp"
#include "phd/errors.hpp"
#include "phd/geometry.hpp"
#include "phd/parallel.hpp"
#include "phd/poisson_kernels.hpp"
#include "phd/quadrature.hpp"

namespace phd {

/// Heights y_max q^i (i < count) on `rays` equally spaced rays of the cone.
struct DepthSampling {
    double y_max = 10.0;
    double ratio = 0.5;
    int count = 24;
    int rays = 5;

    /// A sampling whose point set contains this one.
    DepthSampling refined() const { return {y_max, std::sqrt(ratio), 2 * count - 1, 3 * rays}; }

    std::vector<double> offsets() const {
        if (rays < 1) throw DomainError("cone sampling needs at least one ray");
        std::vector<double> out;
        for (int k = 0; k < rays; ++k) out.push_back(-1.0 + (2.0 * k + 1.0) / rays);
        return out;
    }
};

/// Radii rho_min (rho_max / rho_min)^(i / (count - 1)).
struct RadiusSampling {
    double rho_min = 1e-3;
    double rho_max = 1e3;
    int count = 121;

    std::vector<double> radii() const {
        if (!(rho_min > 0.0) || !(rho_max >= rho_min) || count < 1) throw DomainError("invalid radius sampling");
        std::vector<double> out;
        for (int i = 0; i < count; ++i)
            out.push_back(count == 1 ? rho_min : rho_min * std::pow(rho_max / rho_min, double(i) / (count - 1)));
        return out;
    }
};

struct MaximalReport {
    double x0 = 0.0;
    double nt_max = 0.0;
    double hl_max = 0.0;
    double ratio = 0.0;  ///< nt_max / hl_max, 0 when both vanish
};

/// max |field| over the sampled truncated cone.
template <class Field>
double nt_maximal(Field&& field, const ConeSpec& cone, const DepthSampling& s = {}) {
    double best = 0.0;
    for (double y : geometric_depths(s.y_max, s.ratio, s.count))
        for (double o : s.offsets()) best = std::max(best, std::abs(static_cast<double>(field(cone.ray_point(y, o)))));
    return best;
}

/// (1 / 2 rho) times the integral of |f| over [x0 - rho, x0 + rho].
template <class F>
double centered_average(F&& f, double x0, double rho, const std::vector<double>& breaks = {}) {
    std::vector<double> cuts{x0 - rho};
    for (double b : breaks)
        if (b > x0 - rho && b < x0 + rho) cuts.push_back(b);
    cuts.push_back(x0 + rho);
    std::sort(cuts.begin(), cuts.end());
    auto g = [&](double t) { return std::abs(f(t)); };
    return integrate_panels<double>(g, cuts, 1e-13 * rho, 1e-12, 4000, true).value / (2.0 * rho);
}

template <class F>
double hl_maximal(F&& f, double x0, const RadiusSampling& radii, const std::vector<double>& breaks) {
    double best = 0.0;
    for (double rho : radii.radii()) best = std::max(best, centered_average(f, x0, rho, breaks));
    return best;
}

inline double hl_maximal(const BoundaryDatum& f, double x0, const RadiusSampling& radii = {}) {
    if (f.is_zero()) return 0.0;
    return hl_maximal(f, x0, radii, f.breakpoints());
}

struct ProbeGrid {
    std::vector<double> x0;  ///< equally spaced cone vertices
    DepthSampling depths;
    RadiusSampling radii;
    QuadratureSpec quad;

    static ProbeGrid uniform(double a, double b, int count) {
        if (count < 2 || !(b > a)) throw DomainError("probe grid needs two or more points on a nonempty interval");
        ProbeGrid g;
        for (int i = 0; i < count; ++i) g.x0.push_back(a + (b - a) * i / (count - 1));
        return g;
    }

    /// Twice as many vertices on the same interval and a refined cone sampling.
    ProbeGrid refined() const {
        ProbeGrid g = uniform(x0.front(), x0.back(), 2 * static_cast<int>(x0.size()) - 1);
        g.depths = depths.refined();
        g.radii = radii;
        g.quad = quad;
        return g;
    }
};

struct MaximalProbe {
    std::vector<MaximalReport> points;
    double max_ratio = 0.0;
    double maximal_norm = 0.0;  ///< discretized L^p norm of the sampled M[u] over the grid
    double data_norm = 0.0;     ///< L^p norm of the data
    double norm_ratio = 0.0;    ///< 0 when both norms vanish
};

namespace detail {

inline double trapezoid_lp(const std::vector<double>& x, const std::vector<double>& v, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        s += 0.5 * (x[i + 1] - x[i]) * (std::pow(v[i], p) + std::pow(v[i + 1], p));
    return std::pow(s, 1.0 / p);
}

inline double line_lp_norm(const BoundaryDatum& f, const QuadratureSpec& q) {
    if (f.is_zero()) return 0.0;
    const double p = f.p_exponent();
    const TanMap map{f.center(), std::max(f.width(), 1.0)};
    auto g = [&](double t) { return std::pow(std::abs(f(t)), p); };
    const auto r = integrate_real_line<double>(g, map, map.panels(q.base_panels, f.breakpoints(), f.center(), 0.0),
                                               q.tolerance, q.relative_tolerance, q.max_intervals);
    return std::pow(r.value, 1.0 / p);
}

}  // namespace detail

/// Nontangential maximal function of `field` against the Hardy-Littlewood
/// maximal function of f at each grid vertex, plus the L^p norm ratio.
template <class Field>
MaximalProbe maximal_probe(Field&& field, const BoundaryDatum& f, double aperture, const ProbeGrid& grid) {
    MaximalProbe out;
    out.points.resize(grid.x0.size());
    std::vector<double> nts(grid.x0.size());
    parallel_for(grid.x0.size(), [&](std::size_t i) {
        MaximalReport r;
        r.x0 = grid.x0[i];
        r.nt_max = nt_maximal(field, ConeSpec(r.x0, aperture), grid.depths);
        r.hl_max = hl_maximal(f, r.x0, grid.radii);
        r.ratio = r.nt_max == 0.0 ? 0.0 : r.nt_max / r.hl_max;
        out.points[i] = r;
        nts[i] = r.nt_max;
    });
    for (const auto& r : out.points) out.max_ratio = std::max(out.max_ratio, r.ratio);
    out.maximal_norm = detail::trapezoid_lp(grid.x0, nts, f.p_exponent());
    out.data_norm = detail::line_lp_norm(f, grid.quad);
    out.norm_ratio = out.maximal_norm == 0.0 ? 0.0 : out.maximal_norm / out.data_norm;
    return out;
}

/// Pointwise bound of M[u] by the Hardy-Littlewood maximal function and the
/// L^p bound of M[u], u the Poisson integral of f.
inline MaximalProbe maximal_inequality_probe(const BoundaryDatum& f, double aperture, const ProbeGrid& grid) {
    auto u = [&](cplx z) { return poisson_integral_mj(1, f, z, grid.quad).value; };
    return maximal_probe(u, f, aperture, grid);
}

}  // namespace phd

#pragma once

// Weight classes for area sources and the boundedness probe of T~_nn.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "phd/errors.hpp"
#include "phd/pompeiu.hpp"
#include "phd/quadrature.hpp"
#include "phd/source_term.hpp"

namespace phd {

/// Candidate (p, k, alpha)-weight w on H.
struct WeightSpec {
    double p = 2.0;
    double k = 1.0;
    double alpha = 1.5;
    std::function<double(cplx)> w;
    std::string name;

    /// (1 + |zeta + i|)^s
    static WeightSpec power(double p, double k, double alpha, double s) {
        WeightSpec out{p, k, alpha, [s](cplx zeta) { return std::pow(1.0 + std::abs(zeta + cplx(0.0, 1.0)), s); },
                       "power " + std::to_string(s)};
        out.validate();
        return out;
    }

    /// Power weight with s = k + alpha + 2(p - 1) + 1, enough for both conditions.
    static WeightSpec standard(double p, double k, double alpha) {
        return power(p, k, alpha, default_power(p, k, alpha));
    }

    static WeightSpec unit(double p, double k, double alpha) {
        WeightSpec out{p, k, alpha, [](cplx) { return 1.0; }, "unit"};
        out.validate();
        return out;
    }

    static double default_power(double p, double k, double alpha) { return k + alpha + 2.0 * (p - 1.0) + 1.0; }

    double operator()(cplx zeta) const { return w(zeta); }

    void validate() const {
        if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("weight: p must be at least 1");
        if (!(k > 0.0) || !(alpha > 0.0)) throw ValidationError("weight: k and alpha must be positive");
        if (!w) throw ValidationError("weight: missing evaluator");
    }
};

struct WeightCondition {
    double value = 0.0;        ///< sampled sup for (i), truncated integral for (ii)
    double tail_slope = 0.0;   ///< log-log slope over the outermost third of the radii
    bool pass = false;
};

struct WeightReport {
    WeightCondition bounded;     ///< condition (i)
    WeightCondition integrable;  ///< condition (ii)
    bool nesting_consistent = true;
    bool pass = false;
    std::string diagnostic;
};

namespace detail {

inline double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double d = n * sxx - sx * sx;
    return d > 0.0 ? (n * sxy - sx * sy) / d : 0.0;
}

/// Samples both conditions on annuli |zeta + i| = r, 1 < r <= r_max.
/// Divergence is judged from the trend on the outer third of the radii.
inline WeightReport weight_conditions(const WeightSpec& s, double r_max) {
    constexpr int radii = 72, angles = 48;
    const double q = s.p > 1.0 ? 1.0 / (s.p - 1.0) : std::numeric_limits<double>::infinity();
    std::vector<double> logr, log_sup, log_density, density;
    double sup = 0.0;
    bool finite = true;
    for (int i = 0; i < radii; ++i) {
        const double r = std::exp(std::log(r_max) * (i + 0.5) / radii);
        const double lr = std::log(r);
        const double a0 = std::asin(1.0 / r), a1 = pi - a0;
        const double da = (a1 - a0) / angles;
        double ring_sup = 0.0, ring_int = 0.0;
        for (int m = 0; m < angles; ++m) {
            const cplx zeta = cplx(0.0, -1.0) + std::polar(r, a0 + (m + 0.5) * da);
            const double wv = s(zeta);
            if (!(wv > 0.0)) {
                finite = false;
                continue;
            }
            const double base = std::pow(r, s.k + s.alpha) / wv;
            const double fi = base * (1.0 + std::abs(lr));
            const double fii = base * std::pow(1.0 + std::abs(lr), s.p);
            ring_sup = std::max(ring_sup, fi);
            if (std::isfinite(q)) ring_int += std::pow(fii, q) * r * da;
            else ring_int = std::max(ring_int, fii);
        }
        sup = std::max(sup, ring_sup);
        logr.push_back(lr);
        log_sup.push_back(std::log(std::max(ring_sup, 1e-300)));
        // contribution per unit log r
        const double per_log = std::isfinite(q) ? ring_int * r : ring_int;
        density.push_back(per_log);
        log_density.push_back(std::log(std::max(per_log, 1e-300)));
    }
    const std::size_t cut = logr.size() - logr.size() / 3;
    auto tail = [&](const std::vector<double>& v) { return std::vector<double>(v.begin() + cut, v.end()); };

    WeightReport out;
    out.bounded.value = sup;
    out.bounded.tail_slope = log_slope(tail(logr), tail(log_sup));
    out.bounded.pass = finite && std::isfinite(sup) && out.bounded.tail_slope <= 0.01;

    double integral = 0.0;
    const double dl = std::log(r_max) / radii;
    if (std::isfinite(q))
        for (double d : density) integral += d * dl;
    else
        integral = *std::max_element(density.begin(), density.end());
    out.integrable.value = integral;
    out.integrable.tail_slope = log_slope(tail(logr), tail(log_density));
    out.integrable.pass = finite && std::isfinite(integral) &&
                          (std::isfinite(q) ? out.integrable.tail_slope < -0.05 : out.integrable.tail_slope <= 0.01);

    out.pass = out.bounded.pass && out.integrable.pass;
    if (!finite) out.diagnostic = "weight vanishes or is undefined at sampled points";
    else if (!out.bounded.pass) out.diagnostic = "condition (i): weighted growth factor unbounded (tail slope " + std::to_string(out.bounded.tail_slope) + ")";
    else if (!out.integrable.pass) out.diagnostic = "condition (ii): integral diverges (tail slope " + std::to_string(out.integrable.tail_slope) + ")";
    return out;
}

}  // namespace detail

/// Sampled check of conditions (i) and (ii) for a (p, k, alpha)-weight, with a
/// spot check that the weight also passes a smaller class (q, l, beta).
inline WeightReport weight_check(const WeightSpec& spec, const QuadratureSpec& quad) {
    spec.validate();
    quad.validate();
    const double r_max = quad.truncation_radius > 1.0 ? quad.truncation_radius : 1e6;
    WeightReport out = detail::weight_conditions(spec, r_max);
    if (out.pass) {
        WeightSpec smaller = spec;
        smaller.p = 1.0 + 0.5 * (spec.p - 1.0);
        smaller.k = 0.5 * spec.k;
        smaller.alpha = 0.5 * spec.alpha;
        out.nesting_consistent = detail::weight_conditions(smaller, r_max).pass;
        if (!out.nesting_consistent) out.diagnostic = "weight passes its class but not a nested smaller one";
    }
    return out;
}

/// Discretization of the real axis for boundary norms.
struct BoundaryGrid {
    double half_width = 20.0;
    int points = 81;

    std::vector<double> nodes() const {
        if (points < 2 || !(half_width > 0.0)) throw ValidationError("boundary grid needs at least two points and positive width");
        std::vector<double> x(static_cast<std::size_t>(points));
        for (int i = 0; i < points; ++i) x[static_cast<std::size_t>(i)] = -half_width + 2.0 * half_width * i / (points - 1);
        return x;
    }
};

/// (integral over H of |g|^p w)^(1/p)
inline double weighted_norm(const SourceTerm& g, const WeightSpec& spec, const QuadratureSpec& quad) {
    if (g.is_zero()) return 0.0;
    const double p = spec.p;
    const Disc disc = g.integration_disc(quad.truncation_radius, quad.tolerance);
    const auto [a0, a1] = detail::disc_angles(disc);
    auto radial = [&](double phi) {
        const auto [lo, hi] = detail::ray_window(disc, phi);
        if (!(hi > lo)) return 0.0;
        auto f = [&](double s) {
            const cplx zeta = cplx(0.0, -1.0) + std::polar(s, phi);
            return std::pow(std::abs(g(zeta)), p) * spec(zeta) * s;
        };
        return integrate_panels<double>(f, {lo, 0.5 * (lo + hi), hi}, 0.1 * quad.tolerance, quad.relative_tolerance,
                                        quad.max_intervals, true)
            .value;
    };
    const auto area = integrate_panels<double>(radial, {a0, 0.5 * (a0 + a1), a1}, quad.tolerance, quad.relative_tolerance,
                                               quad.max_intervals, true);
    return std::pow(area.value, 1.0 / p);
}

struct NormReport {
    double boundary_norm = 0.0;  ///< trapezoidal L^p norm of T~_nn g on the boundary grid
    double source_norm = 0.0;    ///< weighted L^p norm of g over H
    double ratio = std::numeric_limits<double>::quiet_NaN();  ///< NaN when g = 0
    double error_estimate = 0.0;
    int points = 0;
};

/// Empirical operator-norm sample ||T~_nn g||_{L^p(R)} / ||g||_{L^p_w(H)}.
inline NormReport norm_report(int n, const SourceTerm& g, const WeightSpec& spec, const QuadratureSpec& quad,
                              const BoundaryGrid& grid = {}) {
    spec.validate();
    quad.validate();
    if (const auto& tag = g.weight_tag()) {
        if (tag->p != spec.p || tag->k != spec.k || tag->alpha != spec.alpha)
            throw ValidationError("norm_report: source weight tag does not match the weight class");
    }
    NormReport out;
    const auto xs = grid.nodes();
    out.points = static_cast<int>(xs.size());
    if (g.is_zero()) return out;

    const double p = spec.p;
    std::vector<double> vals(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto r = pompeiu_apply(n, g, {xs[i], 0.0}, quad);
        vals[i] = std::pow(std::abs(r.value.real()), p);
        out.error_estimate += r.error;
    }
    const double dx = xs[1] - xs[0];
    double sum = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) sum += (i == 0 || i + 1 == vals.size() ? 0.5 : 1.0) * vals[i];
    out.boundary_norm = std::pow(sum * dx, 1.0 / p);

    out.source_norm = weighted_norm(g, spec, quad);
    out.ratio = out.source_norm > 0.0 ? out.boundary_norm / out.source_norm : std::numeric_limits<double>::quiet_NaN();
    return out;
}

}  // namespace phd

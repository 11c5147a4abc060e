#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature and the mapped line rule
// used for boundary integrals over the whole real axis.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <vector>

#include "phd/errors.hpp"

namespace phd {

struct QuadratureSpec {
    double tolerance = 1e-10;           ///< absolute error target
    double relative_tolerance = 1e-10;  ///< relative error target; the looser of the two wins
    int max_intervals = 20000;          ///< subinterval budget per one-dimensional integral
    int base_panels = 16;               ///< initial uniform panels in the mapped variable
    double truncation_radius = 0.0;     ///< area integrals: cut the domain at this radius about -i (0 = automatic)

    void validate() const {
        if (!(tolerance > 0.0) || !(relative_tolerance >= 0.0)) throw ValidationError("quadrature tolerances must be positive");
        if (max_intervals < 1 || base_panels < 1) throw ValidationError("quadrature budgets must be positive");
        if (!(truncation_radius >= 0.0)) throw ValidationError("truncation radius must be nonnegative");
    }
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    int intervals = 0;
};

namespace detail {

inline constexpr std::array<double, 8> gk15_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> gk15_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> g7_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Segment {
    double a, b;
    T value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class T, class F>
Segment<T> gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const T fc = f(c);
    T kron = fc * gk15_weights[7];
    T gauss = fc * g7_weights[3];
    double abs_k = std::abs(fc) * gk15_weights[7];
    std::array<T, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = h * gk15_nodes[static_cast<std::size_t>(j)];
        f1[static_cast<std::size_t>(j)] = f(c - dx);
        f2[static_cast<std::size_t>(j)] = f(c + dx);
        const T s = f1[static_cast<std::size_t>(j)] + f2[static_cast<std::size_t>(j)];
        kron += s * gk15_weights[static_cast<std::size_t>(j)];
        abs_k += (std::abs(f1[static_cast<std::size_t>(j)]) + std::abs(f2[static_cast<std::size_t>(j)])) *
                 gk15_weights[static_cast<std::size_t>(j)];
        if (j % 2 == 1) gauss += s * g7_weights[static_cast<std::size_t>(j / 2)];
    }
    // spread of the integrand about its mean, as in QUADPACK's qk15
    const T mean = kron * 0.5;
    double asc = gk15_weights[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j) asc += gk15_weights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    asc *= std::abs(h);
    abs_k *= std::abs(h);
    double err = std::abs((kron - gauss) * h);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * abs_k;
    if (floor > err) err = floor;
    return Segment<T>{a, b, kron * h, err};
}

}  // namespace detail

/// Adaptive integral over the panels [breaks[i], breaks[i+1]].
///
/// The subinterval with the largest error is bisected until the summed
/// estimate falls below max(abs_tol, rel_tol * |value|). Exceeding
/// max_intervals throws ToleranceNotMet unless `allow_partial` is set.
template <class T = double, class F>
QuadResult<T> integrate_panels(F&& f, const std::vector<double>& breaks, double abs_tol, double rel_tol,
                               int max_intervals, bool allow_partial = false) {
    using Seg = detail::Segment<T>;
    if (breaks.size() < 2) return {};
    std::priority_queue<Seg> heap;
    T total{};
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        Seg s = detail::gk15<T>(f, breaks[i], breaks[i + 1]);
        total += s.value;
        err += s.error;
        heap.push(s);
    }
    int count = static_cast<int>(heap.size());
    auto target = [&] { return std::max(abs_tol, rel_tol * std::abs(total)); };
    while (err > target() && !heap.empty()) {
        Seg worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (count >= max_intervals || !(mid > worst.a && mid < worst.b)) {
            if (allow_partial) break;
            throw ToleranceNotMet("adaptive quadrature did not converge within its interval budget", err, target());
        }
        heap.pop();
        Seg left = detail::gk15<T>(f, worst.a, mid);
        Seg right = detail::gk15<T>(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    // recompute the sums to shed accumulated update round-off
    T sum{};
    double esum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().error;
        heap.pop();
    }
    return QuadResult<T>{sum, esum, count};
}

template <class T = double, class F>
QuadResult<T> integrate(F&& f, double a, double b, const QuadratureSpec& q) {
    std::vector<double> breaks(static_cast<std::size_t>(q.base_panels) + 1);
    for (int i = 0; i <= q.base_panels; ++i) breaks[static_cast<std::size_t>(i)] = a + (b - a) * i / q.base_panels;
    breaks.back() = b;
    return integrate_panels<T>(f, breaks, q.tolerance, q.relative_tolerance, q.max_intervals);
}

/// Change of variables t = center + scale * tan(theta) taking the real axis to
/// (-pi/2, pi/2), with a fixed dyadic panel grid in theta.
///
/// Panels depend only on (center, scale, base_panels, fixed breakpoints) and
/// on which of them are bisected near a focus point, so integrals for nearby
/// foci evaluate the integrand at identical nodes.
struct TanMap {
    double center = 0.0;
    double scale = 1.0;

    double to_t(double theta) const { return center + scale * std::tan(theta); }
    double to_theta(double t) const { return std::atan((t - center) / scale); }
    double jacobian(double theta) const {
        const double c = std::cos(theta);
        return scale / (c * c);
    }

    /// Panel breakpoints in theta: `base` uniform panels, the images of
    /// `fixed_t`, then repeated bisection of any panel holding the focus until
    /// it is narrower than `focus_width` in t.
    std::vector<double> panels(int base, const std::vector<double>& fixed_t, double focus_t, double focus_width) const {
        const double half = 0.5 * pi_value();
        std::vector<double> th;
        th.reserve(static_cast<std::size_t>(base) + fixed_t.size() + 64);
        for (int i = 0; i <= base; ++i) th.push_back(-half + pi_value() * i / base);
        th.front() = -half;
        th.back() = half;
        for (double t : fixed_t)
            if (std::isfinite(t)) th.push_back(to_theta(t));
        std::sort(th.begin(), th.end());
        th.erase(std::unique(th.begin(), th.end()), th.end());
        if (!(focus_width > 0.0) || !std::isfinite(focus_t)) return th;
        const double tf = to_theta(focus_t);
        for (int guard = 0; guard < 200; ++guard) {
            auto it = std::upper_bound(th.begin(), th.end(), tf);
            if (it == th.begin() || it == th.end()) break;
            const double lo = *(it - 1), hi = *it;
            const double width_t = std::abs(to_t_clamped(hi) - to_t_clamped(lo));
            if (width_t <= focus_width) break;
            const double mid = 0.5 * (lo + hi);
            if (!(mid > lo && mid < hi)) break;
            th.insert(it, mid);
        }
        return th;
    }

private:
    static constexpr double pi_value() { return 3.14159265358979323846264338327950288; }
    double to_t_clamped(double theta) const {
        const double lim = 0.5 * pi_value() * (1.0 - 1e-15);
        return to_t(std::clamp(theta, -lim, lim));
    }
};

/// Integral over the whole real axis of f(t) through a TanMap.
template <class T = double, class F>
QuadResult<T> integrate_real_line(F&& f, const TanMap& map, const std::vector<double>& theta_panels, double abs_tol,
                                  double rel_tol, int max_intervals) {
    auto g = [&](double theta) -> T {
        const double t = map.to_t(theta);
        if (!std::isfinite(t)) return T{};
        return f(t) * map.jacobian(theta);
    };
    return integrate_panels<T>(g, theta_panels, abs_tol, rel_tol, max_intervals);
}

}  // namespace phd

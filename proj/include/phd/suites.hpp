#pragma once

// Named numerical checks grouped into suites. Each check measures one error
// quantity against a fixed tolerance; the CLI verify command and the
// acceptance tests both run them from this registry.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "phd/boundary_data.hpp"
#include "phd/finite_difference.hpp"
#include "phd/gegenbauer_oracle.hpp"
#include "phd/maximal.hpp"
#include "phd/poisson_kernels.hpp"
#include "phd/pompeiu.hpp"
#include "phd/solver.hpp"
#include "phd/special_functions.hpp"
#include "phd/verification.hpp"
#include "phd/weights.hpp"

namespace phd {

struct VerifyOptions {
    std::set<std::string> faults;  ///< mutation fixtures, e.g. "gn-sign"
    bool has(const std::string& f) const { return faults.count(f) > 0; }
};

struct Outcome {
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct CheckResult {
    std::string suite;
    std::string name;
    std::string reference;  ///< plain-language statement of the identity checked
    Outcome outcome;
    double seconds = 0.0;
};

struct CheckDef {
    std::string suite;
    std::string name;
    std::string reference;
    std::function<Outcome(const VerifyOptions&)> run;
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"gegenbauer", "poisson", "pompeiu", "solver", "maximal"};
    return names;
}

namespace checks {

inline const cplx I(0.0, 1.0);

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

inline Outcome at_most(double measured, double tol, std::string detail = {}) {
    return {measured, tol, std::isfinite(measured) && measured <= tol, std::move(detail)};
}

inline double rel(double got, double want, double floor = 1e-3) {
    return std::abs(got - want) / std::max(std::abs(want), floor);
}

inline QuadratureSpec tight() {
    QuadratureSpec q;
    q.tolerance = 1e-10;
    q.relative_tolerance = 1e-10;
    return q;
}

// -- gegenbauer ---------------------------------------------------------------

inline Outcome gegenbauer_oracle(const VerifyOptions&) {
    const int L = 12;
    double worst = 0.0;
    std::string where;
    for (const mpq_class& lam : {mpq_class(1), mpq_class(1, 2), mpq_class(0), mpq_class(-1), mpq_class(-2)}) {
        const auto s = oracle::gegenbauer_series_oracle(lam, L);
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        for (int k = 0; k < 50; ++k) {
            const double xi = U(rng);
            for (int l = 0; l <= L; ++l) {
                const GegenbauerIndex idx(lam.get_d(), l);
                const double p = s.p[static_cast<std::size_t>(l)].evaluate(xi);
                const double q = s.q[static_cast<std::size_t>(l)].evaluate(xi);
                for (double e : {rel(gegenbauer_p(idx, xi), p, 1.0), rel(gegenbauer_q(idx, xi), q, 1.0),
                                 rel(gegenbauer_p_closed(idx, xi), p, 1.0), rel(gegenbauer_q_closed(idx, xi), q, 1.0)})
                    if (e > worst) {
                        worst = e;
                        where = "lambda=" + lam.get_str() + " l=" + std::to_string(l);
                    }
            }
        }
    }
    return at_most(worst, 1e-12, "worst at " + where);
}

inline Outcome gegenbauer_q_derivative(const VerifyOptions&) {
    const double h = 1e-5;
    double worst = 0.0;
    for (double lam : {1.0, 0.5, 1.7, -0.5, 2.25})
        for (int l = 1; l <= 8; ++l)
            for (double xi : {-0.9, -0.3, 0.2, 0.65}) {
                const double dp = (gegenbauer_p({lam + h, l}, xi) - gegenbauer_p({lam - h, l}, xi)) / (2 * h);
                worst = std::max(worst, rel(gegenbauer_q({lam, l}, xi), -dp, 1.0));
            }
    return at_most(worst, 1e-6);
}

inline Outcome gegenbauer_generating_function(const VerifyOptions&) {
    const double r = 0.3, xi = 0.5;
    double worst = 0.0;
    for (int n = 1; n <= 4; ++n) {
        const double lam = 1.0 - n;
        const double exact = std::pow(1.0 - 2 * r * xi + r * r, -lam);
        for (int L = 2 * (n - 1); L <= 2 * (n - 1) + 3; ++L) {
            std::vector<long double> p(static_cast<std::size_t>(L) + 1);
            gegenbauer_tables(lam, xi, p, {});
            long double sum = 0.0L, rl = 1.0L;
            for (auto v : p) {
                sum += v * rl;
                rl *= r;
            }
            worst = std::max(worst, std::abs(static_cast<double>(sum) - exact));
        }
    }
    return at_most(worst, 1e-10);
}

inline Outcome gegenbauer_log_branch(const VerifyOptions&) {
    double worst = 0.0;
    for (double t : {-2.0, 0.0, 0.5, 3.0}) {
        const int N = 200000;
        auto path = [&](double s) { return cplx(-6.0 + 12.0 * s, 0.01 + 4.0 * std::pow(std::sin(pi * s), 2)); };
        cplx prev = log_branch_ratio(t, path(0.0));
        for (int k = 1; k <= N; ++k) {
            const cplx z0 = path(double(k - 1) / N), z1 = path(double(k) / N);
            const cplx cur = log_branch_ratio(t, z1);
            worst = std::max(worst, std::abs(cur - prev - (z1 - z0) / (t - 0.5 * (z0 + z1))));
            prev = cur;
        }
    }
    return at_most(worst, 1e-8, "deviation of each step from the analytic increment");
}

// -- poisson ------------------------------------------------------------------

struct KernelSample {
    int n;
    cplx z;
    double t;
};

inline std::vector<KernelSample> kernel_samples(int count, int n_lo, int n_hi, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> N(n_lo, n_hi);
    std::uniform_real_distribution<double> X(-2.0, 2.0), Y(0.3, 2.0), T(-4.0, 4.0);
    std::vector<KernelSample> out;
    while (static_cast<int>(out.size()) < count) {
        KernelSample s{N(rng), {X(rng), Y(rng)}, T(rng)};
        if (std::abs(s.z - s.t) > 0.5) out.push_back(s);
    }
    return out;
}

/// G_n, or its negative for n = 2 under the "gn-sign" fixture.
inline double kernel_under_test(const VerifyOptions& o, int n, cplx z, double t) {
    const double v = poisson_kernel(n, z, t);
    return (n == 2 && o.has("gn-sign")) ? -v : v;
}

inline Outcome poisson_unit_mass(const VerifyOptions&) {
    double worst = 0.0;
    const auto q = tight();
    for (cplx z : {cplx(0.0, 1.0), cplx(1.5, 0.05), cplx(-3.0, 4.0), cplx(0.2, 1e-3)}) {
        const auto r = poisson_line_integral(1, z, [](double) { return 1.0; }, LineLayout{}, q);
        worst = std::max(worst, std::abs(r.value - 1.0));
    }
    return at_most(worst, 1e-8);
}

inline Outcome poisson_vanishes_at_i(const VerifyOptions& o) {
    double worst = 0.0;
    for (int n = 2; n <= 5; ++n)
        for (double t : {-3.0, 0.0, 1.7, 10.0}) worst = std::max(worst, std::abs(kernel_under_test(o, n, I, t)));
    return at_most(worst, 1e-12);
}

inline Outcome poisson_laplacian_recurrence(const VerifyOptions& o) {
    const FDScheme fd(1e-2, 3);
    double worst = 0.0;
    for (int n = 2; n <= 4; ++n)
        for (const auto& s : kernel_samples(20, n, n, 17 + n)) {
            auto gn = [&](cplx w) { return kernel_under_test(o, n, w, s.t); };
            const double lap = fd_laplacian_iter(gn, 1, s.z, fd).value / 4.0;
            worst = std::max(worst, rel(lap, kernel_under_test(o, n - 1, s.z, s.t)));
        }
    return at_most(worst, 1e-5, "one quarter of the FD Laplacian of G_n against G_{n-1}, n = 2..4");
}

inline Outcome poisson_realness(const VerifyOptions&) {
    double worst = 0.0;
    for (const auto& s : kernel_samples(100, 2, 5, 11)) {
        const double b = gn_displayed_form(s.n, s.z, s.t, GnDisplay::Reindexed);
        worst = std::max(worst, rel(higher_poisson_gn(s.n, s.z, s.t), b, 1.0));
    }
    return at_most(worst, 1e-12, "real stable form against twice the real part of the complex display");
}

inline Outcome poisson_decay(const VerifyOptions&) {
    double worst = 0.0;
    for (int n = 2; n <= 5; ++n)
        for (cplx z : {cplx(0.2, 0.5), cplx(-1.0, 1.5), cplx(0.7, 0.05)}) {
            auto bound = [&](double t) {
                return std::max(std::abs(higher_poisson_gn(n, z, t)), std::abs(higher_poisson_gn(n, z, -t))) *
                       std::abs(t - z);
            };
            const double first = bound(10.0);
            for (double t = 100.0; t <= 1e4; t *= 10.0) worst = std::max(worst, bound(t) / first);
        }
    return at_most(worst, 2.0, "|G_n(z,t)| |t - z| at |t| <= 1e4 relative to |t| = 10");
}

inline Outcome poisson_two_forms(const VerifyOptions&) {
    double worst = 0.0;
    std::string where;
    for (const auto& s : kernel_samples(100, 2, 5, 23)) {
        const double a = gn_displayed_form(s.n, s.z, s.t, GnDisplay::Contracted);
        const double b = gn_displayed_form(s.n, s.z, s.t, GnDisplay::Reindexed);
        const double e = std::abs(a - b) / std::max(1.0, std::abs(b));
        if (e > worst) {
            worst = e;
            where = "n=" + std::to_string(s.n);
        }
    }
    return at_most(worst, 1e-11, "worst at " + where + "; the displays coincide only for n = 2");
}

inline Outcome poisson_indicator_limit(const VerifyOptions&) {
    const auto f = BoundaryDatum::indicator(-1.0, 1.0);
    double prev = -INFINITY;
    bool monotone = true;
    double last = 0.0;
    for (double y : {0.1, 0.05, 0.01, 0.005}) {
        last = poisson_integral_mj(1, f, {0.0, y}, tight()).value;
        monotone = monotone && last > prev;
        prev = last;
    }
    Outcome out = at_most(1.0 - last, 5e-3, "M_1 f(i y) at y = 0.1, 0.05, 0.01, 0.005; last " + fmt(last));
    if (!monotone) {
        out.pass = false;
        out.detail += "; not increasing";
    }
    return out;
}

inline Outcome poisson_m2_limit(const VerifyOptions&) {
    const auto f = BoundaryDatum::bump(0.0, 1.0);
    double prev = INFINITY, last = 0.0;
    bool monotone = true;
    for (double y : {0.1, 0.05, 0.01, 0.005}) {
        last = std::abs(poisson_integral_mj(2, f, {0.2, y}, tight()).value);
        monotone = monotone && last < prev;
        prev = last;
    }
    Outcome out = at_most(last, 5e-3, "|M_2 f(0.2 + i y)| at y = 0.1 .. 0.005");
    if (!monotone) {
        out.pass = false;
        out.detail += "; not decreasing";
    }
    return out;
}

// -- pompeiu ------------------------------------------------------------------

struct PointPair {
    cplx z, zeta;
};

inline std::vector<PointPair> point_pairs(int count, unsigned seed, double box, double y_min) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> X(-box, box), Y(y_min, box);
    std::vector<PointPair> out;
    while (static_cast<int>(out.size()) < count) {
        PointPair p{{X(rng), Y(rng)}, {X(rng), Y(rng)}};
        const double ra = std::abs(p.z + I), rb = std::abs(p.zeta + I);
        if (std::abs(p.z - p.zeta) > 0.3 && std::abs(ra - rb) > 0.1) out.push_back(p);
    }
    return out;
}

inline Outcome pompeiu_symmetry(const VerifyOptions&) {
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n)
        for (const auto& p : point_pairs(200, 51 + n, 5.0, 0.05)) {
            const double a = modified_kernel(n, p.z, p.zeta).real(), b = modified_kernel(n, p.zeta, p.z).real();
            worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
        }
    return at_most(worst, 1e-12);
}

inline Outcome pompeiu_laplacian_recurrence(const VerifyOptions&) {
    const FDScheme fd(1e-2, 3);
    double inner = 0.0, outer = 0.0;
    int n_in = 0, n_out = 0;
    for (int n = 2; n <= 3; ++n)
        for (const auto& p : point_pairs(50, 61 + n, 3.0, 0.1)) {
            auto K = [&](cplx w) { return modified_kernel(n, w, p.zeta).real(); };
            const double e = rel(fd_laplacian_iter(K, 1, p.z, fd).value, 4.0 * modified_kernel(n - 1, p.z, p.zeta).real());
            if (std::abs(p.z + I) < std::abs(p.zeta + I)) {
                inner = std::max(inner, e);
                ++n_in;
            } else {
                outer = std::max(outer, e);
                ++n_out;
            }
        }
    return at_most(std::max(inner, outer), 1e-5,
                   "|z+i| < |zeta+i|: " + std::to_string(n_in) + " pairs, worst " + fmt(inner) + "; |z+i| > |zeta+i|: " +
                       std::to_string(n_out) + " pairs, worst " + fmt(outer));
}

inline Outcome pompeiu_decay(const VerifyOptions&) {
    double worst_growth = 0.0, sup_all = 0.0;
    for (int n = 1; n <= 3; ++n)
        for (cplx z : {cplx(0.0, 0.5), cplx(0.7, 0.3), cplx(-0.5, 0.8)}) {
            double prev = INFINITY;
            for (double r = 10.0; r <= 1000.0 * 1.0001; r *= std::sqrt(10.0)) {
                double sup = 0.0;
                for (double ang = 0.05; ang < pi; ang += 0.1) {
                    const cplx zeta = -I + std::polar(r, ang);
                    if (zeta.imag() <= 0.0) continue;
                    sup = std::max(sup, std::abs(modified_kernel(n, z, zeta).real()) * std::pow(r, 2.5));
                }
                if (std::isfinite(prev)) worst_growth = std::max(worst_growth, sup / prev);
                sup_all = std::max(sup_all, sup);
                prev = sup;
            }
        }
    return at_most(worst_growth, 1.0001, "largest ratio of successive sampled sups of |K~| |zeta+i|^2.5; overall sup " + fmt(sup_all));
}

inline Outcome pompeiu_continuation(const VerifyOptions&) {
    const cplx z(0.3, 0.7);
    const double r = std::abs(z + I);
    double unit = 0.0;
    std::string higher;
    for (int n = 1; n <= 3; ++n) {
        double jump = 0.0;
        for (double ang : {1.0, 1.6, 2.2}) jump = std::max(jump, std::abs(singular_part_shell_limit(n, z, -I + std::polar(r, ang))));
        if (n == 1) unit = jump;
        else higher += " n=" + std::to_string(n) + ": " + fmt(jump);
    }
    return at_most(unit, 1e-8, "singular part on the shell |zeta+i| = |z+i| (n = 1 should vanish); measured jumps" + higher);
}

inline SourceTerm probe_bump() { return SourceTerm::bump(0.0, 1.0, 0.6); }

inline std::vector<cplx> bump_interior_points() {
    return {cplx(0.0, 1.0), cplx(0.25, 1.2), cplx(-0.3, 0.8), cplx(0.2, 0.75), cplx(-0.15, 1.35)};
}

inline Outcome pompeiu_boundary_continuity(const VerifyOptions&) {
    const auto g = probe_bump();
    double last = 0.0;
    bool monotone = true;
    for (int n = 1; n <= 2; ++n) {
        const double x0 = 0.3;
        const double edge = pompeiu_apply(n, g, {x0, 0.0}, tight()).value.real();
        double prev = INFINITY;
        for (double y : {0.1, 0.05, 0.01, 0.005}) {
            const double err = std::abs(pompeiu_apply(n, g, {x0 + 0.5 * y, y}, tight()).value.real() - edge);
            monotone = monotone && err < prev;
            prev = err;
        }
        last = std::max(last, prev);
    }
    Outcome out = at_most(last, 1e-2, "distance to the boundary value along a cone ray, y = 0.1 .. 0.005");
    if (!monotone) {
        out.pass = false;
        out.detail += "; not decreasing";
    }
    return out;
}

/// Single layer the kink of S.P.[K_11] across |zeta+i| = |z+i| adds to the Laplacian of T~_1 g.
inline double shell_layer(const SourceTerm& g, cplx z) {
    const double r = std::abs(z + I), th = std::arg(z + I);
    auto ring = [&](double phi) {
        const double psi = th - phi;
        return (2 + 4 * std::cos(psi) + 4 * std::cos(2 * psi)) * g(-I + std::polar(r, phi)).real();
    };
    return integrate<double>(ring, 0.0, pi, tight()).value / pi;
}

inline Outcome pompeiu_laplacian_t11(const VerifyOptions&) {
    const auto g = probe_bump();
    const FDScheme fd(0.05, 3);
    double worst = 0.0, corrected = 0.0;
    for (cplx z : bump_interior_points()) {
        auto T = [&](cplx w) { return pompeiu_apply(1, g, w, tight()).value.real(); };
        const double lap = fd_laplacian_iter(T, 1, z, fd).value;
        const double want = 4.0 * g(z).real();
        worst = std::max(worst, rel(lap, want));
        corrected = std::max(corrected, rel(lap, want - shell_layer(g, z)));
    }
    return at_most(worst, 1e-3, "FD Laplacian of T~_1 g against 4 g; after subtracting the shell single layer the residual is " + fmt(corrected));
}

inline Outcome pompeiu_laplacian_t22(const VerifyOptions&) {
    const auto g = probe_bump();
    const FDScheme fd(0.05, 3);
    double worst = 0.0;
    for (cplx z : bump_interior_points()) {
        auto T = [&](cplx w) { return pompeiu_apply(2, g, w, tight()).value.real(); };
        const double lap = fd_laplacian_iter(T, 1, z, fd).value;
        worst = std::max(worst, rel(lap, 4.0 * pompeiu_apply(1, g, z, tight()).value.real()));
    }
    return at_most(worst, 1e-3, "FD Laplacian of T~_2 g against 4 T~_1 g");
}

inline Outcome pompeiu_weight_classes(const VerifyOptions&) {
    const QuadratureSpec q;
    int wrong = 0;
    std::string detail;
    for (int n = 1; n <= 3; ++n) {
        const auto good = weight_check(WeightSpec::standard(2.0, n, 1.5), q);
        if (!good.pass || !good.nesting_consistent) {
            ++wrong;
            detail += " standard weight rejected for n=" + std::to_string(n) + ";";
        }
        if (weight_check(WeightSpec::unit(2.0, n, 1.5), q).pass) {
            ++wrong;
            detail += " unit weight accepted for n=" + std::to_string(n) + ";";
        }
    }
    if (!weight_check(WeightSpec::power(2.0, 1.0, 1.5, 3.5), q).bounded.pass) {
        ++wrong;
        detail += " (1+|zeta+i|)^(k+alpha+1) fails condition (i);";
    }
    return at_most(wrong, 0.0, detail.empty() ? "standard weights pass, unit weights fail, nesting holds" : detail);
}

// -- solver -------------------------------------------------------------------

inline ProblemSpec problem(int n, std::vector<BoundaryDatum> f, SourceTerm g = SourceTerm::zero()) {
    ProblemSpec s;
    s.order = n;
    s.boundary = std::move(f);
    s.source = std::move(g);
    s.weight = WeightSpec::standard(2.0, n, 1.5);
    s.quad = tight();
    return s;
}

inline std::vector<cplx> sample_grid() {
    std::vector<cplx> out;
    for (double x : {-2.0, -0.5, 0.0, 0.7, 3.0})
        for (double y : {0.05, 0.4, 1.0, 2.5, 6.0}) out.emplace_back(x, y);
    return out;
}

inline Outcome solver_composition(const VerifyOptions&) {
    const auto spec = problem(2, {BoundaryDatum::bump(0.0, 1.0), BoundaryDatum::indicator(-1.0, 2.0)});
    const Solver s(spec);
    double worst = 0.0;
    for (cplx z : sample_grid()) worst = std::max(worst, std::abs(s(z).value - solve_homogeneous(spec, z).value));
    return at_most(worst, 1e-13, "inhomogeneous solver with zero source against the homogeneous one");
}

inline Outcome solver_zero_data(const VerifyOptions&) {
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
        const Solver s(problem(n, std::vector<BoundaryDatum>(static_cast<std::size_t>(n), BoundaryDatum::zero())));
        for (cplx z : sample_grid()) worst = std::max(worst, std::abs(s(z).value));
    }
    return at_most(worst, 1e-13, "max |u| over the sample grid, n = 1..3");
}

inline Outcome solver_boundary_trace(const VerifyOptions&) {
    const double x0 = 0.3;
    const ConeSpec cone(x0, 1.0);
    const auto f0 = BoundaryDatum::bump(0.0, 1.0), f1 = BoundaryDatum::bump(0.5, 1.0);
    const auto g = SourceTerm::bump(0.0, 1.0, 0.5);
    double worst_step = 0.0;
    std::string detail = "|u - f_0(x0)| at y = 0.1, 0.05, 0.01; ";
    for (int n = 1; n <= 2; ++n) {
        std::vector<BoundaryDatum> f{f0};
        if (n == 2) f.push_back(f1);
        const Solver s(problem(n, f, g));
        double prev = INFINITY;
        detail += "n=" + std::to_string(n) + ":";
        for (double y : {0.1, 0.05, 0.01}) {
            const double e = std::abs(s(cone.ray_point(y, 0.5)).value - f0(x0));
            detail += " " + fmt(e);
            if (std::isfinite(prev)) worst_step = std::max(worst_step, e / prev);
            prev = e;
        }
        detail += "; ";
    }
    detail += "measured is the largest ratio of successive errors";
    Outcome out{worst_step, 1.0, worst_step < 1.0, detail};
    return out;
}

inline Outcome solver_laplacian_trace(const VerifyOptions&) {
    const double x0 = 0.3;
    const ConeSpec cone(x0, 1.0);
    const auto f0 = BoundaryDatum::bump(0.0, 1.0), f1 = BoundaryDatum::bump(0.5, 1.0);
    const Solver s2(problem(2, {f0, f1}, SourceTerm::bump(0.0, 1.0, 0.5)));
    const FDScheme fd(2e-3, 3);
    double prev = INFINITY, last = 0.0;
    bool monotone = true;
    std::string detail = "|Delta u - f_1(x0)| at y = 0.1, 0.05, 0.01:";
    for (double y : {0.1, 0.05, 0.01}) {
        const double lap = fd_laplacian_iter([&](cplx w) { return s2(w).value; }, 1, cone.ray_point(y, 0.5), fd).value;
        last = std::abs(lap - f1(x0));
        detail += " " + fmt(last);
        monotone = monotone && last < prev;
        prev = last;
    }
    Outcome out = at_most(last, 1e-2, detail);
    out.pass = out.pass && monotone;
    return out;
}

inline Outcome solver_interior_residual(const VerifyOptions&) {
    const auto g = SourceTerm::bump(0.0, 1.0, 0.5);
    const std::vector<cplx> pts{cplx(0.0, 1.0), cplx(0.2, 1.0), cplx(-0.2, 1.0), cplx(0.0, 1.2), cplx(0.0, 0.8)};
    double worst = 0.0, fd_err = 0.0, quad_err = 0.0;
    std::string detail;
    for (int n = 1; n <= 2; ++n) {
        std::vector<BoundaryDatum> f{BoundaryDatum::bump(0.0, 1.0)};
        if (n == 2) f.push_back(BoundaryDatum::zero());
        const Solver s(problem(n, f, g));
        double w = 0.0;
        for (cplx z : pts) {
            const auto lap = fd_laplacian_iter([&](cplx v) { return s(v).value; }, n, z, FDScheme(0.05, 3));
            w = std::max(w, rel(lap.value, g(z).real()));
            fd_err = std::max(fd_err, lap.error);
            quad_err = std::max(quad_err, s(z).error_estimate);
        }
        worst = std::max(worst, w);
        detail += "n=" + std::to_string(n) + " worst " + fmt(w) + "; ";
    }
    detail += "budget: FD extrapolation error " + fmt(fd_err) + ", quadrature error of u " + fmt(quad_err);
    return at_most(worst, 1e-2, detail);
}

inline Outcome solver_linearity(const VerifyOptions&) {
    const auto fa = BoundaryDatum::bump(0.0, 1.0), fb = BoundaryDatum::indicator(-1.0, 2.0);
    const auto ga = SourceTerm::bump(0.0, 1.0, 0.5), gb = SourceTerm::bump(1.0, 1.5, 0.4);
    const double a = 0.75, b = -1.3;
    // combined data: f = a fa + b fb, g = a ga + b gb, realised through two problems sharing z
    const Solver u1(problem(1, {fa}, ga)), u2(problem(1, {fb}, gb));
    const Solver ua(problem(1, {fa.scaled(a)}, ga.scaled(a))), ub(problem(1, {fb.scaled(b)}, gb.scaled(b)));
    double worst = 0.0;
    for (cplx z : {cplx(0.0, 0.5), cplx(1.0, 1.0), cplx(-2.0, 0.3)}) {
        const double lhs = ua(z).value + ub(z).value;
        const double rhs = a * u1(z).value + b * u2(z).value;
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    return at_most(worst, 1e-10, "u(a f, a g) + u(b f', b g') against a u(f, g) + b u(f', g')");
}

inline std::vector<PointPair> green_pairs() {
    std::mt19937_64 rng(91);
    std::uniform_real_distribution<double> X(-1.5, 1.5), Y(0.2, 2.0);
    std::vector<PointPair> out;
    while (out.size() < 20) {
        PointPair p{{X(rng), Y(rng)}, {X(rng), Y(rng)}};
        if (std::abs(p.z - p.zeta) > 0.3 && std::abs(std::abs(p.z + I) - std::abs(p.zeta + I)) > 0.05) out.push_back(p);
    }
    return out;
}

inline Outcome green_symmetry(const VerifyOptions&) {
    double worst = 0.0;
    std::string detail;
    for (int n = 1; n <= 3; ++n) {
        double w = 0.0;
        for (const auto& p : green_pairs()) {
            const double a = green_function(n, p.z, p.zeta, tight()).value;
            const double b = green_function(n, p.zeta, p.z, tight()).value;
            w = std::max(w, std::abs(a - b));
        }
        worst = std::max(worst, w);
        detail += "n=" + std::to_string(n) + ": " + fmt(w) + " ";
    }
    return at_most(worst, 1e-6, "max |G(z,zeta) - G(zeta,z)| " + detail);
}

inline Outcome green_boundary(const VerifyOptions&) {
    const cplx zeta(0.2, 1.3);
    double worst_ratio = 0.0;
    bool monotone = true;
    for (int n = 1; n <= 3; ++n)
        for (double x0 : {-1.0, 0.5, 2.0}) {
            const ConeSpec cone(x0, 1.0);
            double first = 0.0, prev = INFINITY, v = 0.0;
            for (double y : {0.1, 0.05, 0.01, 0.005}) {
                v = std::abs(green_function(n, cone.ray_point(y, 0.5), zeta, tight()).value);
                if (first == 0.0) first = v;
                monotone = monotone && v < prev;
                prev = v;
            }
            worst_ratio = std::max(worst_ratio, first > 0.0 ? v / first : 0.0);
        }
    Outcome out = at_most(worst_ratio, 0.1, "|G(z, zeta)| at y = 0.005 relative to y = 0.1 along cones");
    if (!monotone) {
        out.pass = false;
        out.detail += "; not decreasing";
    }
    return out;
}

inline Outcome green_harmonic(const VerifyOptions&) {
    const cplx zeta(0.2, 1.3);
    const FDScheme fd(1e-2, 3);
    double worst = 0.0;
    for (cplx z : {cplx(-1.0, 0.5), cplx(1.5, 0.8), cplx(0.0, 3.5), cplx(2.5, 2.0)}) {
        auto G = [&](cplx w) { return green_function(1, w, zeta, tight()).value; };
        worst = std::max(worst, std::abs(fd_laplacian_iter(G, 1, z, fd).value));
    }
    return at_most(worst, 1e-4, "|FD Laplacian of G_1(., zeta)| away from zeta");
}

// -- maximal ------------------------------------------------------------------

inline Outcome maximal_fd_polynomials(const VerifyOptions&) {
    // the stencils are exact on quartics, so wide steps keep roundoff small
    const FDScheme fd(0.1, 3), fd2(0.25, 2);
    const cplx z(0.3, 1.0);
    double worst = 0.0;
    worst = std::max(worst, std::abs(fd_laplacian_iter([](cplx w) { return std::norm(w); }, 1, z, fd).value - 4.0));
    worst = std::max(worst, std::abs(fd_laplacian_iter([](cplx w) { return (w * w).real(); }, 1, z, fd).value));
    worst = std::max(worst, std::abs(fd_laplacian_iter([](cplx w) { return std::pow(std::norm(w), 2); }, 2, z, fd2).value - 64.0));
    worst = std::max(worst, std::abs(fd_laplacian_iter([](cplx w) { return std::pow(std::norm(w), 2); }, 1, z, fd).value -
                                     16.0 * std::norm(z)));
    return at_most(worst, 1e-9, "Delta(x^2+y^2) = 4, Delta Re z^2 = 0, Delta r^4 = 16 r^2, Delta^2 r^4 = 64");
}

inline Outcome maximal_nt_refinement(const VerifyOptions&) {
    const auto f = BoundaryDatum::indicator(-1.0, 1.0);
    auto u = [&](cplx z) { return poisson_integral_mj(1, f, z, tight()).value; };
    double worst_drop = 0.0;
    for (double x0 : {0.0, 0.9, 1.5}) {
        DepthSampling s{10.0, 0.5, 8, 3};
        double prev = 0.0;
        for (int k = 0; k < 3; ++k, s = s.refined()) {
            const double v = nt_maximal(u, ConeSpec(x0, 1.0), s);
            worst_drop = std::max(worst_drop, prev - v);
            prev = v;
        }
    }
    return at_most(worst_drop, 1e-14, "largest decrease of the sampled cone maximum under refinement");
}

inline Outcome maximal_hl_dominates(const VerifyOptions&) {
    const auto f = BoundaryDatum::gaussian_bump(0.5, 0.7);
    const RadiusSampling radii{1e-2, 1e2, 41};
    double worst = 0.0;
    for (double x0 : {-1.0, 0.5, 3.0}) {
        const double m = hl_maximal(f, x0, radii);
        for (double rho : radii.radii()) worst = std::max(worst, centered_average(f, x0, rho) - m);
    }
    return at_most(worst, 0.0, "largest excess of a sampled average over the sampled maximum");
}

inline Outcome maximal_hl_indicator(const VerifyOptions&) {
    const auto f = BoundaryDatum::indicator(-1.0, 1.0);
    const double at0 = hl_maximal(f, 0.0), at3 = hl_maximal(f, 3.0);
    Outcome out = at_most(std::abs(at0 - 1.0), 1e-12, "x0 = 0: " + fmt(at0) + ", x0 = 3: " + fmt(at3) + " (bound 0.5 + 1e-3)");
    if (!(at3 <= 0.5 + 1e-3)) out.pass = false;
    return out;
}

inline ProbeGrid probe_grid() {
    ProbeGrid g = ProbeGrid::uniform(-4.0, 4.0, 11);
    g.depths = DepthSampling{4.0, 0.5, 12, 3};
    g.radii = RadiusSampling{1e-2, 1e2, 61};
    g.quad = tight();
    return g;
}

inline Outcome maximal_inequality(const VerifyOptions&) {
    const auto f = BoundaryDatum::indicator(-1.0, 1.0);
    const auto grid = probe_grid();
    const auto one = maximal_inequality_probe(f, 1.0, grid);
    const auto two = maximal_inequality_probe(f.scaled(2.0), 1.0, grid);
    double drift = std::abs(two.norm_ratio - one.norm_ratio) / one.norm_ratio;
    for (std::size_t i = 0; i < one.points.size(); ++i)
        drift = std::max(drift, std::abs(two.points[i].ratio - one.points[i].ratio) / one.points[i].ratio);
    const bool finite = std::isfinite(one.max_ratio) && std::isfinite(one.norm_ratio) && one.max_ratio > 0.0;
    Outcome out = at_most(drift, 1e-8,
                          "pointwise ratio max " + fmt(one.max_ratio) + ", L^p ratio " + fmt(one.norm_ratio) + "; drift under f -> 2f");
    if (!finite) out.pass = false;
    return out;
}

inline Outcome maximal_estimate_probe(const VerifyOptions&) {
    auto spec = problem(1, {BoundaryDatum::bump(0.0, 1.0)}, SourceTerm::bump(0.0, 1.0, 0.5));
    spec.quad.tolerance = spec.quad.relative_tolerance = 1e-8;
    const Solver s(spec);
    auto grid = probe_grid();
    grid.depths.count = 8;
    const auto coarse = solution_estimate_probe(s, 1.0, grid);
    const auto fine = solution_estimate_probe(s, 1.0, grid.refined());
    const double change = std::abs(fine.ratio - coarse.ratio) / coarse.ratio;
    Outcome out = at_most(change, 0.1, "ratio " + fmt(coarse.ratio) + " -> " + fmt(fine.ratio) + " under 2x refinement");
    if (!std::isfinite(coarse.ratio) || !std::isfinite(fine.ratio)) out.pass = false;
    return out;
}

}  // namespace checks

inline const std::vector<CheckDef>& check_registry() {
    using namespace checks;
    static const std::vector<CheckDef> all{
        {"gegenbauer", "oracle_agreement", "recurrence and closed-form P, Q against exact rational generating-function coefficients", gegenbauer_oracle},
        {"gegenbauer", "q_is_lambda_derivative", "Q_l = -dP_l/dlambda", gegenbauer_q_derivative},
        {"gegenbauer", "generating_function_terminates", "partial sums of P_l r^l reproduce (1 - 2 r xi + r^2)^(n-1)", gegenbauer_generating_function},
        {"gegenbauer", "log_branch_continuity", "log((t - i)/(t - z)) continuous along paths in H", gegenbauer_log_branch},
        {"poisson", "unit_mass", "(1/pi) integral of G_1(z, t) dt = 1", poisson_unit_mass},
        {"poisson", "vanishes_at_i", "G_n(i, t) = 0", poisson_vanishes_at_i},
        {"poisson", "laplacian_recurrence", "Delta G_n = 4 G_{n-1}", poisson_laplacian_recurrence},
        {"poisson", "realness", "stable real form equals the complex display", poisson_realness},
        {"poisson", "decay", "|G_n(z, t)| |t - z| bounded", poisson_decay},
        {"poisson", "two_displays_agree", "both displayed closed forms of G_n agree", poisson_two_forms},
        {"poisson", "indicator_boundary_limit", "M_1 of an indicator tends to 1 inside its support", poisson_indicator_limit},
        {"poisson", "second_order_boundary_limit", "M_2 f tends to 0 on the boundary", poisson_m2_limit},
        {"pompeiu", "symmetry", "K~_nn(z, zeta) = K~_nn(zeta, z)", pompeiu_symmetry},
        {"pompeiu", "laplacian_recurrence", "Delta_z K~_nn = 4 K~_{n-1,n-1}", pompeiu_laplacian_recurrence},
        {"pompeiu", "decay", "|K~_nn(z, zeta)| |zeta + i|^2.5 bounded and nonincreasing", pompeiu_decay},
        {"pompeiu", "continuation_consistency", "singular part vanishes on the shell |zeta+i| = |z+i| for n = 1", pompeiu_continuation},
        {"pompeiu", "boundary_continuity", "T~_nn g has nontangential boundary values", pompeiu_boundary_continuity},
        {"pompeiu", "laplacian_t11", "Delta T~_11 g = 4 g", pompeiu_laplacian_t11},
        {"pompeiu", "laplacian_t22", "Delta T~_22 g = 4 T~_11 g", pompeiu_laplacian_t22},
        {"pompeiu", "weight_classes", "(p, k, alpha)-weight conditions and nesting", pompeiu_weight_classes},
        {"solver", "composition_consistency", "zero source reduces to the homogeneous solver", solver_composition},
        {"solver", "zero_data", "zero data gives the zero solution", solver_zero_data},
        {"solver", "boundary_trace", "u tends to f_0 along cones with decreasing error", solver_boundary_trace},
        {"solver", "laplacian_trace", "Delta u tends to f_1 along cones", solver_laplacian_trace},
        {"solver", "interior_residual", "Delta^n u = g", solver_interior_residual},
        {"solver", "linearity", "solution linear in (f_0 .. f_{n-1}, g)", solver_linearity},
        {"solver", "green_symmetry", "Green function symmetric", green_symmetry},
        {"solver", "green_boundary_vanishing", "Green function vanishes on the boundary", green_boundary},
        {"solver", "green_harmonic", "Green function of order 1 harmonic off the diagonal", green_harmonic},
        {"maximal", "fd_polynomials", "FD Laplacians exact on polynomials of degree <= 4", maximal_fd_polynomials},
        {"maximal", "nt_refinement_monotone", "sampled cone maxima grow under refinement", maximal_nt_refinement},
        {"maximal", "hl_dominates_average", "maximal function dominates every sampled average", maximal_hl_dominates},
        {"maximal", "hl_indicator", "Hardy-Littlewood maximal function of an indicator", maximal_hl_indicator},
        {"maximal", "inequality_probe", "M[u] bounded by the Hardy-Littlewood maximal function; ratios scale invariant", maximal_inequality},
        {"maximal", "estimate_probe", "maximal-function estimate ratio stable under refinement", maximal_estimate_probe},
    };
    return all;
}

inline CheckResult run_check(const CheckDef& def, const VerifyOptions& opts) {
    CheckResult r{def.suite, def.name, def.reference, {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        r.outcome = def.run(opts);
    } catch (const std::exception& e) {
        r.outcome = Outcome{std::numeric_limits<double>::quiet_NaN(), 0.0, false, std::string("error: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline const CheckDef& find_check(const std::string& suite, const std::string& name) {
    for (const auto& d : check_registry())
        if (d.suite == suite && d.name == name) return d;
    throw DomainError("unknown check " + suite + "." + name);
}

/// Runs every check of `suite` ("all" for every suite).
inline std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opts = {}) {
    const auto& names = suite_names();
    if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
        throw DomainError("unknown suite '" + suite + "'");
    std::vector<CheckResult> out;
    for (const auto& d : check_registry())
        if (suite == "all" || d.suite == suite) out.push_back(run_check(d, opts));
    return out;
}

}  // namespace phd

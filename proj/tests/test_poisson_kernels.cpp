#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "phd/finite_difference.hpp"
#include "phd/poisson_kernels.hpp"

using phd::cplx;

namespace {

const cplx I(0.0, 1.0);

struct Sample {
    int n;
    cplx z;
    double t;
};

std::vector<Sample> random_samples(int count, int n_lo, int n_hi, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> N(n_lo, n_hi);
    std::uniform_real_distribution<double> X(-2.0, 2.0), Y(0.3, 2.0), T(-4.0, 4.0);
    std::vector<Sample> out;
    while (static_cast<int>(out.size()) < count) {
        Sample s{N(rng), {X(rng), Y(rng)}, T(rng)};
        if (std::abs(s.z - s.t) > 0.5) out.push_back(s);
    }
    return out;
}

}  // namespace

TEST(PoissonG1, Examples) {
    EXPECT_DOUBLE_EQ(phd::poisson_g1(I, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(phd::poisson_g1(2.0 * I, 0.0), 0.5);
    EXPECT_DOUBLE_EQ(phd::poisson_g1(1.0 + I, 1.0), 1.0);
    EXPECT_THROW(phd::poisson_g1({0.0, 0.0}, 1.0), phd::DomainError);
}

TEST(PoissonG1, MatchesComplexDefinition) {
    for (auto s : random_samples(50, 1, 1, 3)) {
        const cplx direct = (1.0 / (s.t - s.z) - 1.0 / (s.t - std::conj(s.z))) / (2.0 * I);
        EXPECT_NEAR(phd::poisson_g1(s.z, s.t), direct.real(), 1e-15);
        EXPECT_NEAR(direct.imag(), 0.0, 1e-15);
        EXPECT_GT(phd::poisson_g1(s.z, s.t), 0.0);
    }
}

TEST(PoissonG1, UnitMass) {
    phd::QuadratureSpec q;
    q.tolerance = 1e-12;
    for (cplx z : {cplx(0.0, 1.0), cplx(3.0, 0.01), cplx(-5.0, 20.0)}) {
        const phd::LineLayout layout{};
        auto one = [](double) { return 1.0; };
        EXPECT_NEAR(phd::poisson_line_integral(1, z, one, layout, q).value, 1.0, 1e-8);
    }
}

TEST(HigherPoisson, VanishesAtI) {
    for (int n = 2; n <= 5; ++n)
        for (double t : {-3.0, 0.0, 1.7, 10.0}) EXPECT_EQ(phd::higher_poisson_gn(n, I, t), 0.0) << n << " " << t;
}

TEST(HigherPoisson, OrderTwoClosedForm) {
    for (auto s : random_samples(30, 2, 2, 5)) {
        const double want = s.z.imag() * std::log(std::norm(s.t - s.z) / (1.0 + s.t * s.t));
        EXPECT_NEAR(phd::higher_poisson_gn(2, s.z, s.t), want, 1e-14 * std::max(1.0, std::abs(want)));
    }
}

TEST(HigherPoisson, StableFormMatchesReindexedDisplay) {
    for (auto s : random_samples(100, 2, 5, 11)) {
        const double a = phd::higher_poisson_gn(s.n, s.z, s.t);
        const double b = phd::gn_displayed_form(s.n, s.z, s.t, phd::GnDisplay::Reindexed);
        EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, std::abs(b))) << s.n << " " << s.z << " " << s.t;
    }
}

TEST(HigherPoisson, DisplaysCoincideAtOrderTwo) {
    for (auto s : random_samples(20, 2, 2, 13))
        EXPECT_EQ(phd::gn_displayed_form(2, s.z, s.t, phd::GnDisplay::Contracted),
                  phd::gn_displayed_form(2, s.z, s.t, phd::GnDisplay::Reindexed));
}

TEST(HigherPoisson, ContractedDisplayBreaksLaplacianRecurrence) {
    // the l = 0..n-2 display keeps negative powers of (z - t)
    const cplx z(0.5, 0.8);
    const double t = 2.0;
    const phd::FDScheme fd(1e-2, 3);
    auto contracted = [&](cplx w) { return phd::gn_displayed_form(3, w, t, phd::GnDisplay::Contracted); };
    const double lap = phd::fd_laplacian_iter(contracted, 1, z, fd).value / 4.0;
    EXPECT_GT(std::abs(lap - phd::poisson_g1(z, t)), 1e-3);
}

TEST(HigherPoisson, LaplacianRecurrence) {
    const phd::FDScheme fd(1e-2, 3);
    for (auto s : random_samples(60, 2, 4, 17)) {
        auto gn = [&](cplx w) { return phd::higher_poisson_gn(s.n, w, s.t); };
        const double lap = phd::fd_laplacian_iter(gn, 1, s.z, fd).value / 4.0;
        const double want = phd::poisson_kernel(s.n - 1, s.z, s.t);
        EXPECT_LE(std::abs(lap - want), 1e-5 * std::max(std::abs(want), 1e-3)) << s.n << " " << s.z << " " << s.t;
    }
}

TEST(HigherPoisson, VanishesOnBoundaryAwayFromT) {
    for (int n = 2; n <= 5; ++n)
        for (double s : {-3.0, -0.4, 0.9, 6.0}) {
            // linear in y near the boundary
            const double near = phd::higher_poisson_gn(n, {s, 1e-9}, 1.5);
            const double far = phd::higher_poisson_gn(n, {s, 1e-6}, 1.5);
            EXPECT_LE(std::abs(near), 1.01e-3 * std::abs(far)) << n << " " << s;
            EXPECT_LT(std::abs(near), 1e-6) << n << " " << s;
        }
}

TEST(HigherPoisson, DecaysLikeInverseDistance) {
    for (int n = 2; n <= 5; ++n)
        for (cplx z : {cplx(0.2, 0.5), cplx(-1.0, 1.5), cplx(0.7, 0.05)}) {
            double prev_bound = 0.0;
            for (double t = 10.0; t <= 1e4; t *= 10.0) {
                const double b = std::max(std::abs(phd::higher_poisson_gn(n, z, t)), std::abs(phd::higher_poisson_gn(n, z, -t))) *
                                 std::abs(t - z);
                EXPECT_TRUE(std::isfinite(b));
                if (prev_bound > 0.0) {
                    EXPECT_LT(b, 2.0 * prev_bound + 1e-12);
                }
                prev_bound = b;
            }
        }
}

TEST(AnalyticPart, Examples) {
    EXPECT_EQ(phd::gn_analytic_part(2, I, 5.0), cplx(0.0, 0.0));
    EXPECT_THROW(phd::gn_analytic_part(1, I, 0.0), phd::DomainError);
    const cplx z(0.3, 0.9);
    const double t = -0.7;
    EXPECT_NEAR(std::abs(phd::gn_analytic_part(2, z, t) - phd::log_branch_ratio(t, z) / (2.0 * I)), 0.0, 1e-15);
}

TEST(AnalyticPart, RecurrenceMatchesClosedForm) {
    for (auto s : random_samples(40, 3, 7, 19)) {
        const cplx a = phd::gn_analytic_part(s.n, s.z, s.t);
        const cplx b = phd::gn_analytic_part_recurrence(s.n, s.z, s.t);
        EXPECT_LE(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(a)));
    }
    EXPECT_LE(std::abs(phd::gn_analytic_part(3, 2.0 * I, 0.0) - phd::gn_analytic_part_recurrence(3, 2.0 * I, 0.0)), 1e-12);
}

TEST(AnalyticPart, DerivativeDropsOrder) {
    // d/dz G_{n,n-1} = G_{n-1,n-2} / (n-1)
    const double h = 1e-4;
    for (auto s : random_samples(30, 3, 6, 23)) {
        const cplx d = (phd::gn_analytic_part(s.n, s.z + h, s.t) - phd::gn_analytic_part(s.n, s.z - h, s.t)) / (2.0 * h);
        const cplx want = phd::gn_analytic_part(s.n - 1, s.z, s.t) / static_cast<double>(s.n - 1);
        EXPECT_LE(std::abs(d - want), 1e-7 * std::max(1.0, std::abs(want)));
    }
}

TEST(AnalyticPart, TimesDistanceVanishesAtBoundarySingularity) {
    const double t = 1.0;
    const phd::ConeSpec cone(t, 1.0);
    double prev = INFINITY;
    for (double y = 0.1; y > 1e-8; y *= 0.1) {
        const cplx z = cone.ray_point(y, 0.5);
        const double v = std::abs((z - t) * phd::gn_analytic_part(2, z, t));
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_LT(prev, 1e-6);
}

TEST(PoissonIntegral, ZeroDatum) {
    EXPECT_EQ(phd::poisson_integral_mj(1, phd::BoundaryDatum::zero(), {0.3, 0.2}, {}).value, 0.0);
    EXPECT_EQ(phd::poisson_integral_mj(3, phd::BoundaryDatum::zero(), {0.3, 0.2}, {}).value, 0.0);
}

TEST(PoissonIntegral, IndicatorClosedForm) {
    // (1/pi)(atan((1-x)/y) + atan((1+x)/y))
    const auto f = phd::BoundaryDatum::indicator(-1.0, 1.0);
    for (cplx z : {cplx(0.0, 1.0), cplx(0.5, 0.01), cplx(3.0, 0.2), cplx(-0.99, 1e-3)}) {
        const double want = (std::atan((1 - z.real()) / z.imag()) + std::atan((1 + z.real()) / z.imag())) / phd::pi;
        EXPECT_NEAR(phd::poisson_integral_mj(1, f, z, {}).value, want, 1e-9);
    }
}

TEST(PoissonIntegral, IndicatorTraceApproachesOne) {
    const auto f = phd::BoundaryDatum::indicator(-1.0, 1.0);
    double prev = 0.0;
    for (double y : {0.1, 0.05, 0.01, 0.005}) {
        const double v = phd::poisson_integral_mj(1, f, {0.0, y}, {}).value;
        EXPECT_GT(v, prev);
        prev = v;
    }
    EXPECT_GT(prev, 1.0 - 5e-3);
}

TEST(PoissonIntegral, SecondOrderTraceVanishes) {
    const auto f = phd::BoundaryDatum::bump(0.0, 1.0);
    double prev = INFINITY;
    for (double y : {0.1, 0.05, 0.01, 0.005}) {
        const double v = std::abs(phd::poisson_integral_mj(2, f, {0.2, y}, {}).value);
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_LT(prev, 5e-3);
}

TEST(PoissonIntegral, SlowlyDecayingDatum) {
    // d = 0.8 with p = 2 is square integrable but not integrable
    const auto f = phd::BoundaryDatum::polynomial_decay(0.0, 0.8);
    const auto r = phd::poisson_integral_mj(1, f, {0.0, 1.0}, {});
    EXPECT_TRUE(std::isfinite(r.value));
    EXPECT_GT(r.value, 0.0);
    EXPECT_LT(r.value, 1.0);
}

TEST(PoissonIntegral, BudgetExhaustionReportsAchievedError) {
    phd::QuadratureSpec q;
    q.tolerance = 1e-15;
    q.relative_tolerance = 0.0;
    q.max_intervals = 20;
    try {
        phd::poisson_integral_mj(1, phd::BoundaryDatum::indicator(-1.0, 1.0), {0.0, 1e-4}, q);
        FAIL() << "expected ToleranceNotMet";
    } catch (const phd::ToleranceNotMet& e) {
        EXPECT_GT(e.achieved(), e.requested());
    }
}

TEST(BoundaryDatum, DecayMustMatchExponent) {
    EXPECT_THROW(phd::BoundaryDatum::polynomial_decay(0.0, 0.4), phd::ValidationError);
    EXPECT_NO_THROW(phd::BoundaryDatum::polynomial_decay(0.0, 0.4, 3.0));
    EXPECT_THROW(phd::BoundaryDatum::polynomial_decay(0.0, 0.6).with_p(1.5), phd::ValidationError);
}

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "phd/finite_difference.hpp"
#include "phd/maximal.hpp"
#include "phd/suites.hpp"
#include "phd/verification.hpp"
#include "phd/weights.hpp"

using phd::BoundaryDatum;
using phd::cplx;
using phd::SourceTerm;
using phd::WeightSpec;

namespace {

// trapezoid rule on a square around the support; spectrally accurate for smooth bumps
double cartesian_weighted_integral(const SourceTerm& g, const WeightSpec& w, cplx c, double r, int m) {
    const double h = 2.0 * r / m;
    double sum = 0.0;
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= m; ++j) {
            const cplx zeta(c.real() - r + i * h, c.imag() - r + j * h);
            sum += std::pow(std::abs(g(zeta)), w.p) * w(zeta);
        }
    return sum * h * h;
}

// |[x0 - rho, x0 + rho] & [a, b]| / (2 rho)
double indicator_average(double a, double b, double x0, double rho) {
    return std::max(0.0, std::min(b, x0 + rho) - std::max(a, x0 - rho)) / (2.0 * rho);
}

// sup over rho > 0 for x0 outside [a, b]
double indicator_hl_outside(double a, double b, double x0) {
    const double d = x0 > b ? x0 - b : a - x0;
    return (b - a) / (2.0 * (d + b - a));
}

}  // namespace

TEST(Weights, StandardPowerPassesBothConditions) {
    for (double p : {1.0, 1.5, 2.0, 3.0})
        for (double k : {1.0, 2.0, 3.0}) {
            const auto r = phd::weight_check(WeightSpec::standard(p, k, 1.5), {});
            EXPECT_TRUE(r.pass) << "p=" << p << " k=" << k << " " << r.diagnostic;
            EXPECT_TRUE(r.nesting_consistent);
        }
}

TEST(Weights, UnitWeightFailsConditionOne) {
    const auto r = phd::weight_check(WeightSpec::unit(2.0, 1.0, 1.5), {});
    EXPECT_FALSE(r.pass);
    EXPECT_FALSE(r.bounded.pass);
    EXPECT_NE(r.diagnostic.find("condition (i)"), std::string::npos);
}

TEST(Weights, PowerJustCoveringGrowthFailsIntegrability) {
    // (i) holds only up to the logarithm, so (ii) cannot converge
    const auto r = phd::weight_check(WeightSpec::power(2.0, 1.0, 1.5, 2.5), {});
    EXPECT_FALSE(r.pass);
}

TEST(Weights, InvalidParametersRejected) {
    EXPECT_THROW(WeightSpec::standard(0.5, 1.0, 1.5), phd::ValidationError);
    EXPECT_THROW(WeightSpec::standard(2.0, 0.0, 1.5), phd::ValidationError);
    EXPECT_THROW(WeightSpec::standard(2.0, 1.0, -1.0), phd::ValidationError);
}

TEST(Weights, WeightedNormMatchesCartesianQuadrature) {
    const cplx c(0.4, 1.2);
    const double r = 0.7;
    const auto g = SourceTerm::bump(c.real(), c.imag(), r);
    for (double p : {1.0, 2.0, 3.0}) {
        const auto w = WeightSpec::standard(p, 1.0, 1.5);
        const double want = std::pow(cartesian_weighted_integral(g, w, c, r, 600), 1.0 / p);
        EXPECT_NEAR(phd::weighted_norm(g, w, {}), want, 1e-7 * want) << "p=" << p;
    }
}

TEST(Weights, NormReportChecksTagAndHandlesZero) {
    const auto w = WeightSpec::standard(2.0, 1.0, 1.5);
    const auto tagged = SourceTerm::polynomial_decay(0.0, 1.0, 4.0, phd::WeightTag{3.0, 1.0, 1.5});
    EXPECT_THROW(phd::norm_report(1, tagged, w, {}), phd::ValidationError);
    const auto z = phd::norm_report(1, SourceTerm::zero(), w, {});
    EXPECT_TRUE(std::isnan(z.ratio));
    EXPECT_EQ(z.boundary_norm, 0.0);
}

TEST(Maximal, CenteredAverageOfLinearFunctionIsItsValue) {
    auto f = [](double t) { return 2.0 + 0.5 * t; };
    for (double rho : {0.1, 1.0, 3.0}) EXPECT_NEAR(phd::centered_average(f, 1.0, rho), 2.5, 1e-12);
}

TEST(Maximal, IndicatorInsideIsOne) {
    EXPECT_NEAR(phd::hl_maximal(BoundaryDatum::indicator(-1.0, 1.0), 0.0), 1.0, 1e-12);
    EXPECT_NEAR(phd::hl_maximal(BoundaryDatum::indicator(-1.0, 1.0), 0.9), 1.0, 1e-12);
}

TEST(Maximal, IndicatorOutsideMatchesClosedForm) {
    const auto f = BoundaryDatum::indicator(-1.0, 1.0);
    const phd::RadiusSampling radii;
    for (double x0 : {1.5, 3.0, -4.0}) {
        double sampled = 0.0;
        for (double rho : radii.radii()) sampled = std::max(sampled, indicator_average(-1.0, 1.0, x0, rho));
        const double got = phd::hl_maximal(f, x0, radii);
        EXPECT_NEAR(got, sampled, 1e-12) << x0;
        EXPECT_LE(got, indicator_hl_outside(-1.0, 1.0, x0) + 1e-12) << x0;
    }
    EXPECT_NEAR(indicator_hl_outside(-1.0, 1.0, 3.0), 0.25, 1e-15);
}

TEST(Maximal, NontangentialMaximumGrowsUnderRefinement) {
    auto u = [](cplx z) { return std::atan2(z.imag(), z.real() - 0.1) / 3.14159; };
    const phd::ConeSpec cone(0.0, 1.0);
    phd::DepthSampling s;
    const double coarse = phd::nt_maximal(u, cone, s);
    const double fine = phd::nt_maximal(u, cone, s.refined());
    EXPECT_GE(fine, coarse);
}

TEST(Maximal, PoissonIntegralBoundedByHardyLittlewood) {
    auto grid = phd::ProbeGrid::uniform(-2.0, 2.0, 5);
    grid.depths.count = 10;
    const auto probe = phd::maximal_inequality_probe(BoundaryDatum::indicator(-1.0, 1.0), 1.0, grid);
    ASSERT_EQ(probe.points.size(), 5u);
    for (const auto& r : probe.points) {
        EXPECT_GT(r.hl_max, 0.0);
        EXPECT_LE(r.nt_max, 4.0 * r.hl_max) << r.x0;
    }
    EXPECT_TRUE(std::isfinite(probe.norm_ratio));
    EXPECT_NEAR(probe.data_norm, std::sqrt(2.0), 1e-9);
}

TEST(Maximal, EstimateProbeTrivialForZeroData) {
    phd::ProblemSpec spec;
    spec.order = 1;
    spec.boundary = {BoundaryDatum::zero()};
    const auto r = phd::solution_estimate_probe(spec, 1.0, phd::ProbeGrid::uniform(-1.0, 1.0, 3));
    EXPECT_TRUE(r.trivially_satisfied);
    EXPECT_EQ(r.ratio, 0.0);
}

TEST(FiniteDifference, ExactOnQuarticPolynomials) {
    auto q = [](cplx z) { return std::pow(z.real(), 4) + z.real() * z.real() * z.imag() * z.imag() - 3.0 * z.imag(); };
    const cplx z(0.3, 2.0);
    const double lap = 12.0 * z.real() * z.real() + 2.0 * z.imag() * z.imag() + 2.0 * z.real() * z.real();
    EXPECT_NEAR(phd::fd_laplacian_iter(q, 1, z, phd::FDScheme(0.1, 3)).value, lap, 1e-9);
    EXPECT_NEAR(phd::fd_laplacian_iter(q, 2, z, phd::FDScheme(0.25, 2)).value, 24.0 + 8.0, 1e-7);
}

TEST(FiniteDifference, RejectsStencilLeavingHalfPlane) {
    auto f = [](cplx z) { return z.real(); };
    EXPECT_THROW(phd::fd_laplacian_iter(f, 1, {0.0, 0.05}, phd::FDScheme(0.1, 1)), phd::DomainError);
    EXPECT_THROW(phd::FDScheme(0.0, 2), phd::DomainError);
}

TEST(Suites, RegistryIsWellFormed) {
    std::set<std::string> seen;
    const auto& names = phd::suite_names();
    for (const auto& c : phd::check_registry()) {
        EXPECT_TRUE(seen.insert(c.suite + "." + c.name).second) << c.suite << "." << c.name;
        EXPECT_NE(std::find(names.begin(), names.end(), c.suite), names.end());
        EXPECT_FALSE(c.reference.empty());
    }
    for (const auto& s : names) EXPECT_TRUE(std::any_of(seen.begin(), seen.end(), [&](const std::string& k) { return k.rfind(s + ".", 0) == 0; })) << s;
    EXPECT_THROW(phd::run_suite("nonsense"), phd::DomainError);
    EXPECT_THROW(phd::find_check("poisson", "nonsense"), phd::DomainError);
}

TEST(Suites, GegenbauerSuitePasses) {
    for (const auto& r : phd::run_suite("gegenbauer")) EXPECT_TRUE(r.outcome.pass) << r.name << ": " << r.outcome.detail;
}

TEST(Suites, SignFaultBreaksPoissonRecurrence) {
    const auto& check = phd::find_check("poisson", "laplacian_recurrence");
    EXPECT_TRUE(phd::run_check(check, {}).outcome.pass);
    phd::VerifyOptions faulty;
    faulty.faults.insert("gn-sign");
    EXPECT_FALSE(phd::run_check(check, faulty).outcome.pass);
}

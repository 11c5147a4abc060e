#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "phd/finite_difference.hpp"
#include "phd/solver.hpp"

using phd::BoundaryDatum;
using phd::cplx;
using phd::ProblemSpec;
using phd::SourceTerm;

namespace {

constexpr double pi = 3.141592653589793238462643383279502884;

ProblemSpec make(int n, std::vector<BoundaryDatum> f, SourceTerm g = SourceTerm::zero()) {
    ProblemSpec s;
    s.order = n;
    s.boundary = std::move(f);
    s.source = std::move(g);
    s.weight = phd::WeightSpec::standard(2.0, std::max(n, 1), 1.5);
    return s;
}

// harmonic measure of [a, b] seen from z
double indicator_harmonic(double a, double b, cplx z) {
    return (std::atan((b - z.real()) / z.imag()) - std::atan((a - z.real()) / z.imag())) / pi;
}

const std::vector<cplx> points{{0.0, 0.5}, {0.7, 0.2}, {-2.0, 1.0}, {3.0, 4.0}, {0.99, 0.05}};

}  // namespace

TEST(Solver, FirstOrderIndicatorIsHarmonicMeasure) {
    const phd::Solver s(make(1, {BoundaryDatum::indicator(-1.0, 1.0)}));
    for (cplx z : points) {
        const auto r = s(z);
        EXPECT_NEAR(r.value, indicator_harmonic(-1.0, 1.0, z), 1e-9) << z;
        EXPECT_LT(r.error_estimate, 1e-8);
    }
}

TEST(Solver, SecondOrderWithZeroLaplacianDatumMatchesFirstOrder) {
    const phd::Solver s(make(2, {BoundaryDatum::indicator(-1.0, 1.0), BoundaryDatum::zero()}));
    for (cplx z : points) EXPECT_NEAR(s(z).value, indicator_harmonic(-1.0, 1.0, z), 1e-9) << z;
}

TEST(Solver, LaplacianOfSecondOrderTermIsFirstOrderTerm) {
    const phd::Solver s(make(2, {BoundaryDatum::zero(), BoundaryDatum::indicator(-1.0, 1.0)}));
    auto u = [&](cplx z) { return s(z).value; };
    for (cplx z : {cplx(0.0, 1.0), cplx(0.5, 0.7), cplx(-1.5, 2.0)}) {
        const auto lap = phd::fd_laplacian_iter(u, 1, z, phd::FDScheme(0.05, 3));
        EXPECT_NEAR(lap.value, indicator_harmonic(-1.0, 1.0, z), 1e-6) << z;
    }
}

TEST(Solver, ZeroDataGivesExactZero) {
    for (int n = 1; n <= 3; ++n) {
        const phd::Solver s(make(n, std::vector<BoundaryDatum>(static_cast<std::size_t>(n), BoundaryDatum::zero())));
        for (cplx z : points) {
            EXPECT_EQ(s(z).value, 0.0);
            EXPECT_EQ(s(z).error_estimate, 0.0);
        }
    }
}

TEST(Solver, LinearInBoundaryData) {
    const auto fa = BoundaryDatum::bump(0.0, 1.0), fb = BoundaryDatum::indicator(-1.0, 2.0), z0 = BoundaryDatum::zero();
    const phd::Solver both(make(2, {fa, fb})), first(make(2, {fa, z0})), second(make(2, {z0, fb}));
    for (cplx z : points) EXPECT_NEAR(both(z).value, first(z).value + second(z).value, 1e-12) << z;
}

TEST(Solver, HomogeneousAndInhomogeneousEntryPointsAgreeWithoutSource) {
    const auto spec = make(2, {BoundaryDatum::bump(0.0, 1.0), BoundaryDatum::indicator(-1.0, 2.0)});
    for (cplx z : points) EXPECT_EQ(phd::solve_homogeneous(spec, z).value, phd::solve_inhomogeneous(spec, z).value);
}

TEST(Solver, HomogeneousEntryPointRejectsSource) {
    const auto spec = make(1, {BoundaryDatum::zero()}, SourceTerm::bump(0.0, 1.0, 0.5));
    EXPECT_THROW(phd::solve_homogeneous(spec, {0.0, 1.0}), phd::ValidationError);
}

TEST(Solver, ValidationRejectsBadSpecs) {
    EXPECT_THROW(phd::Solver(make(2, {BoundaryDatum::zero()})), phd::ValidationError);
    EXPECT_THROW(phd::Solver(make(0, {})), phd::ValidationError);
    auto unweighted = make(1, {BoundaryDatum::zero()}, SourceTerm::bump(0.0, 1.0, 0.5));
    unweighted.weight = phd::WeightSpec::unit(2.0, 1.0, 1.5);
    EXPECT_THROW(phd::Solver{unweighted}, phd::ValidationError);
}

TEST(Solver, RejectsPointsOffTheHalfPlane) {
    const phd::Solver s(make(1, {BoundaryDatum::bump(0.0, 1.0)}));
    EXPECT_THROW(s({0.0, 0.0}), phd::DomainError);
    EXPECT_THROW(s({0.0, -1.0}), phd::DomainError);
}

TEST(Solver, TraceCacheIsReusedAndDeterministic) {
    auto spec = make(1, {BoundaryDatum::zero()}, SourceTerm::bump(0.0, 1.0, 0.5));
    spec.quad.tolerance = spec.quad.relative_tolerance = 1e-8;
    const phd::Solver s(spec);
    const cplx z(0.3, 0.8);
    const double first = s(z).value;
    const std::size_t cached = s.traces().size();
    EXPECT_GT(cached, 0u);
    EXPECT_EQ(s(z).value, first);
    EXPECT_EQ(s.traces().size(), cached);
    EXPECT_GE(s.traces().max_error(), 0.0);
}

TEST(Green, SingularOnTheDiagonal) {
    EXPECT_THROW(phd::green_function(1, {0.2, 1.0}, {0.2, 1.0}, {}), phd::SingularityError);
}

TEST(Green, FirstOrderVanishesTowardTheBoundary) {
    const cplx zeta(0.2, 1.0);
    const double far = std::abs(phd::green_function(1, {0.5, 0.5}, zeta, {}).value);
    const double near = std::abs(phd::green_function(1, {0.5, 1e-3}, zeta, {}).value);
    EXPECT_GT(far, 0.0);
    EXPECT_LT(near, 1e-2 * far);
}

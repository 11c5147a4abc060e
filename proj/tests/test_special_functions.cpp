#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "phd/gegenbauer_oracle.hpp"
#include "phd/special_functions.hpp"

using phd::GegenbauerIndex;
using phd::cplx;

namespace {

double rel_err(double got, double want) {
    const double scale = std::max(1.0, std::abs(want));
    return std::abs(got - want) / scale;
}

}  // namespace

TEST(Pochhammer, Examples) {
    EXPECT_EQ(phd::pochhammer(1.0, 3), 6.0);
    EXPECT_EQ(phd::pochhammer(0.0, 2), 0.0);
    EXPECT_DOUBLE_EQ(phd::pochhammer(-1.5, 2), 0.75);
    EXPECT_EQ(phd::pochhammer(3.7, 0), 1.0);
    EXPECT_THROW(phd::pochhammer(1.0, -1), phd::DomainError);
}

TEST(GegenbauerIndex, RejectsNegativeDegree) {
    EXPECT_THROW(GegenbauerIndex(1.0, -1), phd::DomainError);
    EXPECT_THROW(GegenbauerIndex(NAN, 1), phd::DomainError);
    EXPECT_NO_THROW(GegenbauerIndex(-2.0, 0));
}

TEST(GegenbauerP, Examples) {
    EXPECT_EQ(phd::gegenbauer_p({1.0, 0}, 0.3), 1.0);
    EXPECT_DOUBLE_EQ(phd::gegenbauer_p({1.0, 1}, 0.5), 1.0);
    EXPECT_EQ(phd::gegenbauer_p({0.0, 2}, 0.7), 0.0);
    EXPECT_NEAR(phd::gegenbauer_p({-1.0, 4}, 0.2), 0.0, 1e-15);
    EXPECT_THROW(phd::gegenbauer_p({1.0, 2}, 1.5), phd::DomainError);
}

TEST(GegenbauerQ, Examples) {
    for (double lam : {1.0, 0.5, 0.0, -1.0, -3.0}) EXPECT_EQ(phd::gegenbauer_q({lam, 0}, 0.1), 0.0);
    for (double lam : {1.0, 0.5, 0.0, -1.0, -3.0}) EXPECT_NEAR(phd::gegenbauer_q({lam, 1}, 0.4), -0.8, 1e-15);
    EXPECT_NEAR(phd::gegenbauer_q({0.0, 2}, 1.0), -1.0, 1e-15);
    for (int l = 1; l <= 10; ++l) EXPECT_NEAR(phd::gegenbauer_q({0.0, l}, 1.0), -2.0 / l, 1e-14);
}

TEST(Oracle, LowOrderReadOff) {
    auto s = phd::oracle::gegenbauer_series_oracle(1, 1);
    ASSERT_EQ(s.p.size(), 2u);
    EXPECT_EQ(s.p[0].coefficients[0], 1);
    EXPECT_EQ(s.p[1].coefficients[0], 0);
    EXPECT_EQ(s.p[1].coefficients[1], 2);

    // lambda = -1: (1 - 2 r xi + r^2)^1
    auto t = phd::oracle::gegenbauer_series_oracle(-1, 4);
    EXPECT_EQ(t.p[0].coefficients[0], 1);
    EXPECT_EQ(t.p[1].coefficients[1], -2);
    EXPECT_EQ(t.p[2].coefficients[0], 1);
    for (int l = 3; l <= 4; ++l)
        for (const auto& c : t.p[static_cast<std::size_t>(l)].coefficients) EXPECT_EQ(c, 0);
}

TEST(Oracle, CoefficientListMatchesDegreeBound) {
    auto s = phd::oracle::gegenbauer_series_oracle(mpq_class(1, 2), 6);
    for (std::size_t l = 0; l < s.p.size(); ++l) {
        EXPECT_EQ(s.p[l].coefficients.size(), s.p[l].degree_bound() + 1);
        EXPECT_GE(s.p[l].degree_bound(), l);
    }
}

TEST(Oracle, CapacityErrorInsteadOfRounding) {
    phd::oracle::OracleLimits tiny{8};
    EXPECT_THROW(phd::oracle::gegenbauer_series_oracle(mpq_class(1, 3), 12, tiny), phd::CapacityError);
}

TEST(Oracle, CubicMatchesClosedFormAtRandomPoints) {
    auto s = phd::oracle::gegenbauer_series_oracle(1, 3);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int k = 0; k < 10; ++k) {
        const double xi = U(rng);
        EXPECT_LE(rel_err(phd::gegenbauer_p_closed({1.0, 3}, xi), s.p[3].evaluate(xi)), 1e-14);
    }
}

class OracleAgreement : public ::testing::TestWithParam<mpq_class> {};

TEST_P(OracleAgreement, EvaluatorsAndClosedFormsMatchExactSeries) {
    const mpq_class lam = GetParam();
    const int L = 12;
    auto s = phd::oracle::gegenbauer_series_oracle(lam, L);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double xi = U(rng);
        for (int l = 0; l <= L; ++l) {
            const GegenbauerIndex idx(lam.get_d(), l);
            const double p = s.p[static_cast<std::size_t>(l)].evaluate(xi);
            const double q = s.q[static_cast<std::size_t>(l)].evaluate(xi);
            worst = std::max({worst, rel_err(phd::gegenbauer_p(idx, xi), p), rel_err(phd::gegenbauer_q(idx, xi), q),
                              rel_err(phd::gegenbauer_p_closed(idx, xi), p), rel_err(phd::gegenbauer_q_closed(idx, xi), q)});
        }
    }
    EXPECT_LE(worst, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Lambdas, OracleAgreement,
                         ::testing::Values(mpq_class(1), mpq_class(1, 2), mpq_class(0), mpq_class(-1), mpq_class(-2)),
                         [](const auto& info) {
                             std::string s = info.param.get_str();
                             for (auto& c : s) c = (c == '-') ? 'm' : (c == '/') ? '_' : c;
                             return "lambda_" + s;
                         });

TEST(GegenbauerQ, IsMinusLambdaDerivativeOfP) {
    const double h = 1e-5;
    for (double lam : {1.0, 0.5, 1.7, -0.5, 2.25})
        for (int l = 1; l <= 8; ++l)
            for (double xi : {-0.9, -0.3, 0.2, 0.65}) {
                const double dp = (phd::gegenbauer_p({lam + h, l}, xi) - phd::gegenbauer_p({lam - h, l}, xi)) / (2 * h);
                const double q = phd::gegenbauer_q({lam, l}, xi);
                EXPECT_LE(std::abs(q + dp) / std::max(1.0, std::abs(q)), 1e-6) << lam << " " << l << " " << xi;
            }
}

TEST(GegenbauerP, PolynomialGeneratingFunctionTerminates) {
    const double r = 0.3, xi = 0.5;
    for (int n = 1; n <= 4; ++n) {
        const double lam = 1.0 - n;
        const double exact = std::pow(1.0 - 2 * r * xi + r * r, -lam);
        for (int L = 2 * (n - 1); L <= 2 * (n - 1) + 3; ++L) {
            std::vector<long double> p(static_cast<std::size_t>(L) + 1);
            phd::gegenbauer_tables(lam, xi, p, {});
            long double sum = 0.0L, rl = 1.0L;
            for (auto v : p) {
                sum += v * rl;
                rl *= r;
            }
            EXPECT_LT(std::abs(static_cast<double>(sum) - exact), 1e-10);
        }
    }
}

TEST(LogBranchRatio, Examples) {
    EXPECT_EQ(phd::log_branch_ratio(0.0, {0.0, 1.0}), cplx(0.0, 0.0));
    EXPECT_NEAR(std::abs(phd::log_branch_ratio(1.0, {0.0, 1.0})), 0.0, 1e-16);
    const cplx v = phd::log_branch_ratio(0.0, {0.0, 2.0});
    EXPECT_NEAR(v.real(), -std::log(2.0), 1e-15);
    EXPECT_NEAR(v.imag(), 0.0, 1e-15);
    EXPECT_THROW(phd::log_branch_ratio(0.0, {1.0, 0.0}), phd::DomainError);
}

TEST(LogBranchRatio, ContinuousAlongPaths) {
    // sweeps through the half-plane passing on both sides of t; each step must
    // match the analytic increment dz / (t - z) (no branch jumps)
    const double pi = phd::pi;
    for (double t : {-2.0, 0.0, 0.5, 3.0}) {
        const int N = 200000;
        auto path = [&](double s) { return cplx(-6.0 + 12.0 * s, 0.01 + 4.0 * std::pow(std::sin(pi * s), 2)); };
        cplx prev = phd::log_branch_ratio(t, path(0.0));
        double worst = 0.0;
        for (int k = 1; k <= N; ++k) {
            const cplx z0 = path(static_cast<double>(k - 1) / N), z1 = path(static_cast<double>(k) / N);
            const cplx cur = phd::log_branch_ratio(t, z1);
            const cplx predicted = (z1 - z0) / (t - 0.5 * (z0 + z1));
            worst = std::max(worst, std::abs(cur - prev - predicted));
            prev = cur;
        }
        EXPECT_LT(worst, 1e-8) << t;
    }
}

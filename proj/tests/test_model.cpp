#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "holling/model.hpp"

using namespace holling;

namespace {

ImpreciseModel degenerate_model(double c) {
    ImpreciseModel m;
    for (std::size_t i = 0; i < kSpecies; ++i) {
        m.r_hat[i] = Interval::point(c);
        m.sigma_hat[i] = Interval::point(c);
        for (std::size_t j = 0; j < kSpecies; ++j) m.a_hat[i][j] = Interval::point(c);
    }
    return m;
}

ImpreciseModel imprecise_model() {
    ImpreciseModel m;
    m.r_hat = {Interval(1, 2), Interval(0.5, 0.8), Interval(0.2, 0.4)};
    m.sigma_hat = {Interval(0.1, 0.2), Interval(0.05, 0.3), Interval(0, 0)};
    for (std::size_t i = 0; i < kSpecies; ++i) {
        for (std::size_t j = 0; j < kSpecies; ++j) {
            m.a_hat[i][j] = Interval(0.1 * (i + 1), 0.1 * (i + 1) + 0.05 * (j + 1));
        }
    }
    m.jumps = JumpMeasure({{0.3, {0.1, -0.2, 0.05}}, {0.2, {-0.1, 0.3, 0.2}}});
    return m;
}

// Parameters with independently evaluated (30-digit) oracle values.
CrispModel oracle_model() {
    const Vec3 r{0.6, 0.5, 0.3};
    const Mat3 a{{{0.4, 0.1, 0.2}, {0.15, 0.5, 0.25}, {0.3, 0.35, 0.45}}};
    const Vec3 sigma{0.2, 0.1, 0.3};
    JumpMeasure jumps({{0.4, {0.1, -0.2, 0.3}}, {0.1, {-0.5, 0.05, 0.0}}});
    return CrispModel(0.5, r, a, sigma, jumps);
}

} // namespace

TEST(JumpMeasure, Validation) {
    EXPECT_THROW(JumpMeasure({{0.0, {0.1, 0.1, 0.1}}}), Error);
    EXPECT_THROW(JumpMeasure({{1.0, {-1.0, 0.1, 0.1}}}), Error);
    EXPECT_THROW(JumpMeasure({{1.0, {0.1, -1.5, 0.1}}}), Error);
    const JumpMeasure j({{0.5, {0.1, -0.2, 0.0}}, {0.25, {0.3, 0.3, 0.3}}});
    EXPECT_DOUBLE_EQ(j.total_rate(), 0.75);
    EXPECT_DOUBLE_EQ(j.log_jump_integral(0), 0.5 * std::log(1.1) + 0.25 * std::log(1.3));
    EXPECT_TRUE(j.integrable());
    EXPECT_EQ(JumpMeasure().total_rate(), 0.0);
}

TEST(RealizeModel, DegenerateIsPIndependent) {
    const auto m = degenerate_model(0.3);
    for (double p : {0.0, 0.25, 0.5, 1.0}) {
        const auto c = realize_model(m, p);
        for (std::size_t i = 0; i < kSpecies; ++i) {
            EXPECT_EQ(c.r(i), 0.3);
            EXPECT_EQ(c.sigma(i), 0.3);
            for (std::size_t j = 0; j < kSpecies; ++j) EXPECT_EQ(c.a(i, j), 0.3);
        }
    }
}

TEST(RealizeModel, EndpointsAndGeometricMean) {
    const auto m = imprecise_model();
    const auto lo = realize_model(m, 0.0);
    const auto hi = realize_model(m, 1.0);
    for (std::size_t i = 0; i < kSpecies; ++i) {
        EXPECT_EQ(lo.r(i), m.r_hat[i].lo());
        EXPECT_EQ(hi.r(i), m.r_hat[i].hi());
        for (std::size_t j = 0; j < kSpecies; ++j) EXPECT_EQ(lo.a(i, j), m.a_hat[i][j].lo());
    }
    EXPECT_NEAR(realize_model(m, 0.5).r(0), 1.41421356237309504880, 1e-15);
    EXPECT_EQ(realize_model(m, 0.7).sigma(2), 0.0);
    EXPECT_THROW(realize_model(m, 1.01), Error);
    EXPECT_THROW(realize_model(m, -0.01), Error);
}

TEST(RealizeModel, RejectsNonPositiveRates) {
    auto m = imprecise_model();
    m.r_hat[0] = Interval(0.0, 0.0);
    EXPECT_THROW(realize_model(m, 0.5), Error);
    m = imprecise_model();
    m.a_hat[1][2] = Interval(0.0, 1.0);
    EXPECT_THROW(realize_model(m, 0.5), Error);
}

TEST(RealizeModel, MonotoneInP) {
    const auto m = imprecise_model();
    auto prev = realize_model(m, 0.0);
    for (int k = 1; k <= 100; ++k) {
        const auto cur = realize_model(m, k / 100.0);
        for (std::size_t i = 0; i < kSpecies; ++i) {
            EXPECT_LE(prev.r(i), cur.r(i));
            EXPECT_LE(prev.sigma(i), cur.sigma(i));
            for (std::size_t j = 0; j < kSpecies; ++j) EXPECT_LE(prev.a(i, j), cur.a(i, j));
        }
        prev = cur;
    }
}

TEST(BCoefficients, ClosedForms) {
    const Mat3 a{};
    {
        const CrispModel m(0.5, {1.0, 1.0, 1.0}, a, {0.0, 0.0, 0.0}, {});
        EXPECT_EQ(m.b().b1, 1.0);
    }
    {
        const CrispModel m(0.5, {1.0, 1.0, 0.4}, a, {0.0, 0.0, 0.2}, {});
        EXPECT_NEAR(m.b().b3, -0.42, 1e-15);
    }
    {
        const CrispModel m(0.5, {std::sqrt(2.0), 1.0, 1.0}, a, {std::sqrt(0.02), 0.0, 0.0},
                           JumpMeasure({{1.0, {0.1, 0.0, 0.0}}}));
        EXPECT_NEAR(m.b().b1, 1.49952374217741990885, 1e-14);
    }
    {
        const auto m = oracle_model();
        const auto b = b_coefficients(m);
        EXPECT_NEAR(b.b1, 0.548809353865735413076, 1e-14);
        EXPECT_NEAR(b.b2, 0.410621595891259298000, 1e-14);
        EXPECT_NEAR(b.b3, -0.240054294213003579186, 1e-14);
    }
}

TEST(BCoefficients, DerivativeMatchesFiniteDifference) {
    // Closed-form derivative of f(p) = lo (hi/lo)^p is f(p) ln(hi/lo).
    const auto m = imprecise_model();
    for (double p : {0.2, 0.5, 0.8}) {
        const auto c = realize_model(m, p);
        const double dr = c.r(0) * std::log(m.r_hat[0].hi() / m.r_hat[0].lo());
        const double ds = c.sigma(0) * std::log(m.sigma_hat[0].hi() / m.sigma_hat[0].lo());
        const double analytic = dr - c.sigma(0) * ds;
        const double h = 1e-5;
        const double fd = (realize_model(m, p + h).b().b1 - realize_model(m, p - h).b().b1) / (2 * h);
        EXPECT_NEAR(fd, analytic, 1e-6 * std::abs(analytic));
    }
}

TEST(Drift, HandEvaluatedRationals) {
    const Mat3 a{{{1.0, 0.5, 0.5}, {0.5, 1.0, 0.5}, {0.5, 0.5, 1.0}}};
    const CrispModel m(0.5, {1.0, 1.0, 1.0}, a, {0.0, 0.0, 0.0}, {});
    const auto d = drift(m, StateVector{1.0, 1.0, 1.0});
    // 1 - 1 - 0.5 - 0.5/2, and -1 - 1 + 0.5/2 + 0.5/2
    EXPECT_EQ(d[0], -0.75);
    EXPECT_EQ(d[1], -0.75);
    EXPECT_EQ(d[2], -1.5);
}

TEST(Drift, LogisticFixedPointAndDecoupledLimit) {
    Mat3 a{};
    a[0][0] = 0.25;
    const CrispModel logistic(0.5, {0.5, 1.0, 1.0}, a, {0.0, 0.0, 0.0}, {});
    EXPECT_EQ(drift(logistic, StateVector{2.0, 1.0, 1.0})[0], 0.0);

    const CrispModel free(0.5, {0.3, 0.7, 0.2}, Mat3{}, {0.0, 0.0, 0.0}, {});
    const StateVector s{2.0, 3.0, 5.0};
    const auto d = drift(free, s);
    EXPECT_DOUBLE_EQ(d[0], 0.3 * 2.0);
    EXPECT_DOUBLE_EQ(d[1], 0.7 * 3.0);
    EXPECT_DOUBLE_EQ(d[2], -0.2 * 5.0);
}

TEST(LogDrift, OracleValue) {
    const auto ld = log_drift(oracle_model(), StateVector{1.3, 0.7, 2.1});
    EXPECT_NEAR(ld[0], -0.223799341786438499968, 1e-14);
    EXPECT_NEAR(ld[1], -0.443201933520505407882, 1e-14);
    EXPECT_NEAR(ld[2], -0.871371429762875701948, 1e-14);
}

TEST(LogDrift, NoNoiseNoJumpsEqualsRelativeDrift) {
    const Mat3 a{{{0.4, 0.1, 0.2}, {0.15, 0.5, 0.25}, {0.3, 0.35, 0.45}}};
    const CrispModel m(0.5, {0.6, 0.5, 0.3}, a, {0.0, 0.0, 0.0}, {});
    const StateVector s{1.3, 0.7, 2.1};
    const auto ld = log_drift(m, s);
    const auto d = drift(m, s);
    for (std::size_t i = 0; i < kSpecies; ++i) EXPECT_NEAR(ld[i], d[i] / s[i], 1e-15);
}

TEST(LogDriftProperty, ItoAndCompensatorIdentity) {
    const auto m = oracle_model();
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> logu(-6.0, 4.0);
    for (int trial = 0; trial < 10000; ++trial) {
        const StateVector s{std::exp(logu(gen)), std::exp(logu(gen)), std::exp(logu(gen))};
        const auto ld = log_drift(m, s);
        const auto d = drift(m, s);
        for (std::size_t i = 0; i < kSpecies; ++i) {
            const double expected = -0.5 * m.sigma(i) * m.sigma(i) + m.log_jump_compensator(i);
            const double got = ld[i] - d[i] / s[i];
            ASSERT_NEAR(got, expected, 1e-12 * std::max(1.0, std::abs(d[i] / s[i])));
        }
    }
}

TEST(StateVector, RejectsNonPositive) {
    EXPECT_THROW((StateVector{0.0, 1.0, 1.0}.validate()), Error);
    EXPECT_THROW((StateVector{1.0, -1.0, 1.0}.validate()), Error);
    EXPECT_NO_THROW((StateVector{1e-300, 1.0, 1.0}.validate()));
}

#include <gtest/gtest.h>

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <random>

#include "peerval/stats.hpp"
#include "peerval/synth.hpp"
#include "test_util.hpp"

using namespace peerval;

namespace {

// Upper tail of Student's t by trapezoid integration of the density:
// P(T >= t) = 0.5 - integral_0^t f(u) du.
double trapezoid_tail(double t, long df, int steps = 200000) {
    const double nu = static_cast<double>(df);
    const double log_c = std::lgamma((nu + 1) / 2) - std::lgamma(nu / 2) - 0.5 * std::log(nu * M_PI);
    auto f = [&](double u) { return std::exp(log_c - (nu + 1) / 2 * std::log1p(u * u / nu)); };
    const double h = t / steps;
    double sum = 0.5 * (f(0) + f(t));
    for (int i = 1; i < steps; ++i) sum += f(i * h);
    return 0.5 - sum * h;
}

}  // namespace

TEST(Pearson, KnownValues) {
    const std::vector<double> a{1, 2, 3, 4};
    EXPECT_NEAR(pearson(a, std::vector<double>{2, 4, 6, 8}), 1.0, 1e-12);
    EXPECT_NEAR(pearson(a, std::vector<double>{4, 3, 2, 1}), -1.0, 1e-12);
    EXPECT_NEAR(pearson(a, std::vector<double>{2, 1, 4, 3}), 0.6, 1e-12);
}

TEST(Pearson, Errors) {
    const std::vector<double> a{1, 2, 3};
    try {
        pearson(a, std::vector<double>{1, 2});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
    }
    try {
        pearson(std::vector<double>{5, 5, 5}, a);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ConstantInput);
    }
}

TEST(Pearson, StaysInRangeForNearlyCollinearData) {
    std::vector<double> x, y;
    for (int i = 0; i < 1000; ++i) {
        x.push_back(1e8 + i * 1e-3);
        y.push_back(3.0 * x.back() + 7.0);
    }
    const double r = pearson(x, y);
    EXPECT_LE(r, 1.0);
    EXPECT_NEAR(r, 1.0, 1e-9);
}

TEST(TStatistic, KnownValues) {
    EXPECT_NEAR(t_statistic(0.6, 4), 1.0606601717798212, 1e-12);
    EXPECT_EQ(t_statistic(0.0, 10), 0.0);
    try {
        t_statistic(1.0, 10);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PerfectCorrelation);
    }
}

TEST(POneSided, CriticalValues) {
    EXPECT_NEAR(p_one_sided(1.812, 10), 0.05, 1e-3);
    EXPECT_NEAR(p_one_sided(2.306, 8), 0.025, 1e-3);
    EXPECT_EQ(p_one_sided(0.0, 5), 0.5);
}

// Frozen reference values of the Student t survival function.
TEST(POneSided, FrozenReferenceValues) {
    EXPECT_NEAR(p_one_sided(1.812, 10), 0.050037631032923614, 1e-9);
    EXPECT_NEAR(p_one_sided(2.306, 8), 0.025000161380642087, 1e-9);
    EXPECT_NEAR(p_one_sided(0.5, 3), 0.3257239824240755, 1e-9);
    EXPECT_NEAR(p_one_sided(-1.2, 7), 0.8654140315863967, 1e-9);
    EXPECT_NEAR(p_one_sided(3.3, 25), 0.0014526101068884534, 1e-9);
    EXPECT_NEAR(p_one_sided(0.01, 200), 0.4960156275766405, 1e-9);
    EXPECT_NEAR(p_one_sided(-4.0, 1), 0.9220208696226307, 1e-9);
}

TEST(POneSided, Infinities) {
    EXPECT_EQ(p_one_sided(std::numeric_limits<double>::infinity(), 5), 0.0);
    EXPECT_EQ(p_one_sided(-std::numeric_limits<double>::infinity(), 5), 1.0);
    EXPECT_THROW(p_one_sided(std::nan(""), 5), Error);
    EXPECT_THROW(p_one_sided(1.0, 0), Error);
}

TEST(POneSided, MatchesTrapezoidOracle) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> t_dist(-4.0, 4.0);
    std::uniform_int_distribution<long> df_dist(1, 60);
    for (int i = 0; i < 20; ++i) {
        const double t = t_dist(rng);
        const long df = df_dist(rng);
        EXPECT_NEAR(p_one_sided(t, df), trapezoid_tail(t, df), 1e-6) << "t=" << t << " df=" << df;
    }
}

TEST(POneSided, MatchesBoostStudentsT) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> t_dist(-8.0, 8.0);
    std::uniform_int_distribution<long> df_dist(1, 500);
    for (int i = 0; i < 500; ++i) {
        const double t = t_dist(rng);
        const long df = df_dist(rng);
        const boost::math::students_t dist(static_cast<double>(df));
        EXPECT_NEAR(p_one_sided(t, df), boost::math::cdf(boost::math::complement(dist, t)), 1e-9)
            << "t=" << t << " df=" << df;
    }
}

TEST(POneSided, SymmetryAndMonotonicity) {
    for (long df : {1L, 2L, 5L, 30L, 300L}) {
        double previous = 1.0;
        for (double t = -6.0; t <= 6.0; t += 0.25) {
            const double p = p_one_sided(t, df);
            EXPECT_NEAR(p + p_one_sided(-t, df), 1.0, 1e-12);
            EXPECT_LE(p, previous);
            EXPECT_GE(p, 0.0);
            EXPECT_LE(p, 1.0);
            previous = p;
        }
    }
}

TEST(RegularizedBeta, EdgesAndSymmetry) {
    EXPECT_EQ(regularized_incomplete_beta(2, 3, 0.0), 0.0);
    EXPECT_EQ(regularized_incomplete_beta(2, 3, 1.0), 1.0);
    // I_x(a, b) = 1 - I_{1-x}(b, a)
    EXPECT_NEAR(regularized_incomplete_beta(2.5, 0.5, 0.3), 1 - regularized_incomplete_beta(0.5, 2.5, 0.7), 1e-12);
    // I_x(1, 1) = x
    EXPECT_NEAR(regularized_incomplete_beta(1, 1, 0.37), 0.37, 1e-12);
    EXPECT_THROW(regularized_incomplete_beta(0, 1, 0.5), Error);
}

namespace {

Dataset two_discipline_dataset() {
    // Counts and scores chosen so both disciplines are non-degenerate.
    return assemble(testutil::make_parts({4, 4}, {1, 3, 2, 5, 2, 0, 7, 1}, {2, 4, 3, 5, 3, 2, 4, 1}));
}

}  // namespace

TEST(Correlate, PooledEqualsPearsonOfConcatenation) {
    const Dataset ds = two_discipline_dataset();
    const auto norm = normalize_dataset(ds, NormalizeMode::PerDiscipline);
    const auto pooled = correlate(norm, ds, "C", Aspect::Overall, Scope::pooled());
    EXPECT_EQ(pooled.n, 8);
    EXPECT_NEAR(pooled.r, pearson(norm.measure_column(0), norm.rating_column(Aspect::Overall)), 1e-15);

    const auto d0 = correlate(norm, ds, "C", Aspect::Overall, Scope::of("D0"));
    EXPECT_EQ(d0.n, 4);
    const auto& g = ds.disciplines()[0];
    std::vector<double> rates, scores;
    for (std::size_t t = g.begin; t < g.end; ++t) {
        rates.push_back(ds.count(t, 0) / ds.teams()[t].fte_leading);
        scores.push_back(ds.score(t, Aspect::Overall));
    }
    // z-scoring does not change a within-discipline correlation.
    EXPECT_NEAR(d0.r, pearson(rates, scores), 1e-12);
    EXPECT_NEAR(d0.t, t_statistic(d0.r, 4), 1e-12);
    EXPECT_NEAR(d0.p_one_sided, p_one_sided(d0.t, 2), 1e-12);
}

TEST(Correlate, DegenerateDisciplineHasNoStatistic) {
    const Dataset ds = assemble(testutil::make_parts({3, 3}, {1, 4, 9, 0, 0, 0}, {1, 2, 3, 4, 6, 5}));
    const auto norm = normalize_dataset(ds, NormalizeMode::PerDiscipline);
    const auto d1 = correlate(norm, ds, "C", Aspect::Overall, Scope::of("D1"));
    EXPECT_TRUE(d1.degenerate);
    EXPECT_TRUE(std::isnan(d1.r));
    EXPECT_TRUE(std::isnan(d1.p_one_sided));
    const auto pooled = correlate(norm, ds, "C", Aspect::Overall, Scope::pooled());
    EXPECT_FALSE(pooled.degenerate);
}

TEST(Correlate, PerfectCorrelationIsFlagged) {
    // fte = 1, 2, 3 so counts (1, 4, 9) give rates (1, 2, 3).
    const Dataset ds = assemble(testutil::make_parts({3}, {1, 4, 9}, {2, 4, 6}));
    const auto norm = normalize_dataset(ds, NormalizeMode::PerDiscipline);
    const auto r = correlate(norm, ds, "C", Aspect::Overall, Scope::of("D0"));
    EXPECT_TRUE(r.perfect);
    EXPECT_NEAR(r.r, 1.0, 1e-12);
    EXPECT_EQ(r.p_one_sided, 0.0);
    EXPECT_TRUE(std::isinf(r.t));
}

TEST(Correlate, UnknownNames) {
    const Dataset ds = two_discipline_dataset();
    const auto norm = normalize_dataset(ds, NormalizeMode::PerDiscipline);
    try {
        correlate(norm, ds, "NOPE", Aspect::Overall, Scope::pooled());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownCategory);
    }
    try {
        correlate(norm, ds, "C", Aspect::Overall, Scope::of("ZZ"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownDiscipline);
    }
}

TEST(CorrelationGrids, ThreadCountDoesNotChangeResults) {
    const Dataset ds = generate(default_synth_config(8));
    const auto norm = normalize_dataset(ds, NormalizeMode::PerDiscipline);
    const auto scopes = all_scopes(ds);
    const auto serial = correlation_grids(norm, ds, scopes, 1);
    const auto parallel = correlation_grids(norm, ds, scopes, 8);
    ASSERT_EQ(serial.size(), 7u);
    for (std::size_t s = 0; s < serial.size(); ++s) {
        ASSERT_EQ(serial[s].size(), ds.category_count() * kAspectCount);
        for (std::size_t i = 0; i < serial[s].size(); ++i) {
            const auto& a = serial[s][i];
            const auto& b = parallel[s][i];
            EXPECT_EQ(a.category_id, b.category_id);
            EXPECT_EQ(a.aspect, b.aspect);
            EXPECT_TRUE((std::isnan(a.r) && std::isnan(b.r)) || a.r == b.r);
            EXPECT_TRUE((std::isnan(a.p_one_sided) && std::isnan(b.p_one_sided)) ||
                        a.p_one_sided == b.p_one_sided);
        }
    }
}

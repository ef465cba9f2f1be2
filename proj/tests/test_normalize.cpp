#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "peerval/normalize.hpp"
#include "peerval/synth.hpp"
#include "test_util.hpp"

using namespace peerval;

TEST(PerFte, DividesByStaff) {
    DatasetParts parts = testutil::make_parts({3}, {12, 0, 0}, {1, 2, 3});
    parts.teams[0].fte_leading = 4.0;
    const Dataset ds = assemble(parts);
    EXPECT_DOUBLE_EQ(per_fte(ds).at(*ds.find_team("D0-T0"), 0), 3.0);
}

TEST(ZScore, FourValues) {
    const std::vector<double> v{10, 20, 30, 40};
    const std::vector<std::string> labels(4, "ECON");
    auto r = discipline_zscore(v, labels);
    const double expected[] = {-1.161895003862225, -0.3872983346207417, 0.3872983346207417,
                               1.161895003862225};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(r.z[i], expected[i], 1e-6);
    EXPECT_TRUE(r.degenerate_groups.empty());
}

TEST(ZScore, GroupsAreIndependent) {
    const std::vector<double> v{1, 100, 2, 200, 3, 300};
    const std::vector<std::string> labels{"A", "B", "A", "B", "A", "B"};
    auto r = discipline_zscore(v, labels);
    EXPECT_NEAR(r.z[0], -1.0, 1e-12);
    EXPECT_NEAR(r.z[1], -1.0, 1e-12);
    EXPECT_NEAR(r.z[4], 1.0, 1e-12);
    EXPECT_NEAR(r.z[5], 1.0, 1e-12);
}

TEST(ZScore, ConstantGroupIsZeroAndFlagged) {
    const std::vector<double> v{3.0, 3.0, 3.0, 1.0, 2.0, 3.0};
    const std::vector<std::string> labels{"LAW", "LAW", "LAW", "INF", "INF", "INF"};
    auto r = discipline_zscore(v, labels);
    EXPECT_EQ(r.z[0], 0.0);
    EXPECT_EQ(r.z[1], 0.0);
    EXPECT_EQ(r.z[2], 0.0);
    ASSERT_EQ(r.degenerate_groups.size(), 1u);
    EXPECT_EQ(r.degenerate_groups[0], "LAW");
}

TEST(ZScore, SampleSdOfOneToEight) {
    std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8};
    EXPECT_NEAR(sample_sd(v), 2.449489742783178, 1e-12);
}

TEST(ZScore, LengthMismatch) {
    const std::vector<double> v{1, 2, 3};
    const std::vector<std::string> labels{"A", "A"};
    EXPECT_THROW(discipline_zscore(v, labels), Error);
}

TEST(NormalizeDataset, FlagsDegenerateColumns) {
    // D0 rates are 1, 2, 3; D1 counts are all zero.
    DatasetParts parts = testutil::make_parts({3, 3}, {1, 4, 9, 0, 0, 0}, {1, 2, 3, 4, 5, 6});
    const Dataset ds = assemble(parts);
    for (NormalizeMode mode : {NormalizeMode::PerDiscipline, NormalizeMode::None}) {
        const auto norm = normalize_dataset(ds, mode);
        EXPECT_FALSE(norm.measure_degenerate(0, 0));
        EXPECT_TRUE(norm.measure_degenerate(1, 0));
        ASSERT_EQ(norm.degenerate_columns().size(), 1u);
        EXPECT_EQ(norm.degenerate_columns()[0], (DegenerateColumn{"D1", "C", true}));
    }
    const auto norm = normalize_dataset(ds, NormalizeMode::PerDiscipline);
    for (std::size_t t = 3; t < 6; ++t) EXPECT_EQ(norm.measures().at(t, 0), 0.0);
}

TEST(NormalizeDataset, NoneModeKeepsRawRates) {
    const Dataset ds = assemble(testutil::make_parts({3}, {2, 4, 6}, {1, 2, 3}));
    const auto norm = normalize_dataset(ds, NormalizeMode::None);
    const auto rates = per_fte(ds);
    EXPECT_TRUE(norm.measures() == rates);
    EXPECT_EQ(norm.ratings().at(2, 0), 3.0);
}

namespace {

struct Rng {
    std::mt19937_64 engine;
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
};

std::vector<std::string> random_labels(Rng& rng, std::size_t n) {
    std::vector<std::string> labels(n);
    const char* names[] = {"A", "B", "C"};
    for (std::size_t i = 0; i < n; ++i) labels[i] = names[i % 3];
    std::shuffle(labels.begin(), labels.end(), rng.engine);
    return labels;
}

}  // namespace

// Invariants over random inputs: scale and shift invariance per group,
// zero mean and unit sample sd per non-degenerate group, idempotence.
TEST(ZScoreProperties, Invariants) {
    Rng rng{std::mt19937_64(11)};
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 9 + static_cast<std::size_t>(trial % 20);
        std::vector<double> v(n);
        for (double& x : v) x = rng.uniform(-50, 50);
        const auto labels = random_labels(rng, n);
        const auto base = discipline_zscore(v, labels);

        std::map<std::string, std::pair<double, double>> affine;
        for (const auto& l : labels) affine.emplace(l, std::make_pair(rng.uniform(0.1, 10), rng.uniform(-100, 100)));
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = affine[labels[i]].first * v[i] + affine[labels[i]].second;
        const auto moved = discipline_zscore(w, labels);
        const auto twice = discipline_zscore(base.z, labels);

        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_NEAR(moved.z[i], base.z[i], 1e-9);
            EXPECT_NEAR(twice.z[i], base.z[i], 1e-9);
        }
        for (const char* g : {"A", "B", "C"}) {
            std::vector<double> members;
            for (std::size_t i = 0; i < n; ++i) {
                if (labels[i] == g) members.push_back(base.z[i]);
            }
            EXPECT_NEAR(mean_of(members), 0.0, 1e-12);
            EXPECT_NEAR(sample_sd(members), 1.0, 1e-12);
        }
    }
}

TEST(ZScoreProperties, DegeneracyIsScaleInvariant) {
    for (double scale : {1e-12, 1.0, 1e12}) {
        const std::vector<double> v{scale, scale, scale, scale};
        const std::vector<std::string> labels(4, "A");
        auto r = discipline_zscore(v, labels);
        EXPECT_EQ(r.degenerate_groups.size(), 1u);
        const std::vector<double> w{scale, scale * 1.5, scale, scale};
        EXPECT_TRUE(discipline_zscore(w, labels).degenerate_groups.empty());
    }
}

TEST(NormalizeDataset, SyntheticColumnsHaveUnitSd) {
    const Dataset ds = generate(default_synth_config(3));
    const auto norm = normalize_dataset(ds, NormalizeMode::PerDiscipline);
    for (std::size_t d = 0; d < ds.disciplines().size(); ++d) {
        const auto& g = ds.disciplines()[d];
        for (Aspect a : kAspects) {
            auto col = norm.rating_column(a).subspan(g.begin, g.size());
            EXPECT_NEAR(mean_of(col), 0.0, 1e-12);
            if (!norm.rating_degenerate(d, a)) {
                EXPECT_NEAR(sample_sd(col), 1.0, 1e-12);
            }
        }
    }
}

#include <random>

#include <gtest/gtest.h>

#include <trmaps/weight_series.hpp>

using namespace trmaps;

namespace {

WeightSeries uni(const ConfigPtr& cfg, std::vector<long> coeffs)
{
    WeightSeries s(cfg);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (static_cast<int>(i) <= cfg->trunc()) s.add_term(Monomial{static_cast<int>(i)}, Rat(coeffs[i]));
    return s;
}

// Random series with small rational coefficients; unit constant term when requested.
WeightSeries random_series(std::mt19937& rng, const ConfigPtr& cfg, bool unit)
{
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4), deg(0, cfg->trunc());
    WeightSeries s(cfg);
    for (int i = 0; i < 6; ++i) {
        Monomial m(cfg->size(), 0);
        int budget = deg(rng);
        for (std::size_t v = 0; v < m.size() && budget > 0; ++v) {
            int e = std::uniform_int_distribution<int>(0, budget)(rng);
            m[v] = e;
            budget -= e;
        }
        s.add_term(m, make_rat(num(rng), den(rng)));
    }
    if (unit) s = s - WeightSeries(cfg, s.constant_term()) + WeightSeries::one(cfg);
    return s;
}

} // namespace

TEST(WeightConfig, RejectsOddDuplicateAndNegative)
{
    EXPECT_THROW(WeightConfig({3}, 2), ConfigError);
    EXPECT_THROW(WeightConfig({0}, 2), ConfigError);
    EXPECT_THROW(WeightConfig({4, 4}, 2), ConfigError);
    EXPECT_THROW(WeightConfig({4}, -1), ConfigError);
    EXPECT_THROW(WeightConfig({4, 6}, 2, {Rat(1)}), ConfigError);
    EXPECT_NO_THROW(WeightConfig({2, 4, 6}, 0));
}

TEST(WeightSeries, SquareOfBinomial)
{
    auto cfg = make_config({4}, 2);
    EXPECT_EQ(uni(cfg, {1, 3}) * uni(cfg, {1, 3}), uni(cfg, {1, 6, 9}));
}

TEST(WeightSeries, ProductTruncates)
{
    auto cfg = make_config({4}, 2);
    WeightSeries a = uni(cfg, {1, 3, 18});
    EXPECT_EQ(a * a, uni(cfg, {1, 6, 45}));
    EXPECT_TRUE((a * WeightSeries::zero(cfg)).is_zero());
}

TEST(WeightSeries, NoTermBeyondTruncation)
{
    auto cfg = make_config({4, 6}, 3);
    WeightSeries t = WeightSeries::variable(cfg, 0), s = WeightSeries::variable(cfg, 1);
    WeightSeries p = (WeightSeries::one(cfg) + t + s).pow(5);
    for (const auto& [m, c] : p.terms()) {
        EXPECT_LE(total_degree(m), 3);
        EXPECT_NE(c, 0);
    }
}

TEST(WeightSeries, InverseExamples)
{
    auto c3 = make_config({4}, 3);
    EXPECT_EQ(uni(c3, {1, -1}).inverse(), uni(c3, {1, 1, 1, 1}));
    EXPECT_EQ(WeightSeries(c3, Rat(2)).inverse(), WeightSeries(c3, Rat(1, 2)));
    auto c2 = make_config({4}, 2);
    EXPECT_EQ(uni(c2, {1, 3, 18}).inverse(), uni(c2, {1, -3, -9}));
    EXPECT_THROW(uni(c2, {0, 1}).inverse(), NonUnitError);
}

TEST(WeightSeries, SqrtExamples)
{
    auto c3 = make_config({4}, 3);
    EXPECT_EQ(WeightSeries::one(c3).sqrt(), WeightSeries::one(c3));
    EXPECT_EQ(uni(c3, {1, -12}).sqrt(), uni(c3, {1, -6, -18, -108}));
    auto c2 = make_config({4}, 2);
    EXPECT_EQ(uni(c2, {1, 2, 1}).sqrt(), uni(c2, {1, 1}));
    EXPECT_THROW(uni(c2, {4, 1}).sqrt(), UnsupportedBranchError);
}

TEST(WeightSeries, MismatchedConfigsRefuse)
{
    auto a = make_config({4}, 2), b = make_config({4}, 3);
    EXPECT_THROW(WeightSeries::one(a) + WeightSeries::one(b), ConfigError);
}

TEST(WeightSeries, ScaledWeight)
{
    auto cfg = make_config({4}, 2, {Rat(1, 2)});
    WeightSeries t = WeightSeries::weight(cfg, 4);
    EXPECT_EQ(t.coefficient(1), Rat(1, 2));
    EXPECT_TRUE(WeightSeries::weight(cfg, 6).is_zero());
}

TEST(WeightSeries, Printing)
{
    auto cfg = make_config({4}, 3);
    EXPECT_EQ(uni(cfg, {1, 3, 18}).str(), "1 + 3*t4 + 18*t4^2");
    EXPECT_EQ(WeightSeries::zero(cfg).str(), "0");
}

class RingLaws : public ::testing::TestWithParam<int> {};

TEST_P(RingLaws, HoldExactlyOnRandomSeries)
{
    std::mt19937 rng(static_cast<unsigned>(GetParam()));
    auto cfg = make_config({4, 6}, 4);
    for (int trial = 0; trial < 20; ++trial) {
        WeightSeries a = random_series(rng, cfg, false), b = random_series(rng, cfg, false),
                     c = random_series(rng, cfg, false);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_TRUE((a - a).is_zero());
    }
}

TEST_P(RingLaws, InverseAndSqrtRoundTrip)
{
    std::mt19937 rng(static_cast<unsigned>(GetParam()) + 100);
    auto cfg = make_config({4, 6}, 5);
    for (int trial = 0; trial < 20; ++trial) {
        WeightSeries u = random_series(rng, cfg, true);
        EXPECT_EQ(u * u.inverse(), WeightSeries::one(cfg));
        WeightSeries r = u.sqrt();
        EXPECT_EQ(r * r, u);
    }
}

TEST_P(RingLaws, TruncationConsistency)
{
    std::mt19937 rng(static_cast<unsigned>(GetParam()) + 200);
    auto hi = make_config({4, 6}, 5);
    for (int trial = 0; trial < 20; ++trial) {
        WeightSeries a = random_series(rng, hi, true), b = random_series(rng, hi, false);
        for (int m = 0; m < 5; ++m) {
            WeightSeries am = a.truncated(m), bm = b.truncated(m);
            EXPECT_EQ((a * b).truncated(m), am * bm);
            EXPECT_EQ(a.inverse().truncated(m), am.inverse());
            EXPECT_EQ(a.sqrt().truncated(m), am.sqrt());
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RingLaws, ::testing::Values(1, 2, 3, 4));

#include <gtest/gtest.h>

#include <trmaps/curve.hpp>

using namespace trmaps;

namespace {

WeightSeries uni(const ConfigPtr& cfg, std::vector<long> coeffs)
{
    WeightSeries s(cfg);
    for (std::size_t i = 0; i < coeffs.size(); ++i) s.add_term(Monomial{static_cast<int>(i)}, Rat(coeffs[i]));
    return s;
}

ZRational zp(const ConfigPtr& c, int e) { return ZRational::z_power(c, e); }
ZRational cst(const ConfigPtr& c, const WeightSeries& v) { return ZRational::constant(c, v); }

void expect_all_pass(const CheckReport& r)
{
    ASSERT_FALSE(r.checks.empty());
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

} // namespace

TEST(GammaSquared, Examples)
{
    auto none = make_config({}, 3);
    EXPECT_EQ(solve_gamma_sq(none), WeightSeries::one(none));
    auto t4 = make_config({4}, 4);
    EXPECT_EQ(solve_gamma_sq(t4), uni(t4, {1, 3, 18, 135, 1134}));
    auto t2 = make_config({2}, 3);
    EXPECT_EQ(solve_gamma_sq(t2), uni(t2, {1, 1, 1, 1}));
}

TEST(GammaSquared, MatchesClosedFormForQuadrangulations)
{
    for (int n = 0; n <= 8; ++n) {
        auto cfg = make_config({4}, n);
        EXPECT_EQ(solve_gamma_sq(cfg), gamma_sq_closed_form_t4(cfg)) << "N=" << n;
    }
}

TEST(GammaSquared, TruncationConsistent)
{
    auto hi = make_config({4, 6}, 6);
    WeightSeries g = solve_gamma_sq(hi);
    for (int m = 0; m < 6; ++m) EXPECT_EQ(g.truncated(m), solve_gamma_sq(make_config({4, 6}, m)));
}

TEST(USeries, Examples)
{
    auto none = make_config({}, 2);
    auto u0 = compute_u(none, solve_gamma_sq(none));
    ASSERT_EQ(u0.size(), 1u);
    EXPECT_EQ(u0[0], WeightSeries::one(none));

    auto cfg = make_config({4}, 5);
    WeightSeries g = solve_gamma_sq(cfg), t = WeightSeries::weight(cfg, 4);
    auto u = compute_u(cfg, g);
    ASSERT_EQ(u.size(), 2u);
    EXPECT_EQ(u[0], WeightSeries::one(cfg) - t * g * Rat(3));
    EXPECT_EQ(u[1], -(t * g));
    EXPECT_EQ(u[0] * g, WeightSeries::one(cfg));
}

TEST(BuildCurve, DessinsAndGaussianBipartite)
{
    auto cfg = make_config({}, 0);
    for (Model m : {Model::bipartite, Model::dessins}) {
        SpectralCurveData c = build_curve(m, cfg);
        ZRational one = cst(cfg, WeightSeries::one(cfg));
        EXPECT_EQ(c.x, zp(cfg, 1) + one * Rat(2) + zp(cfg, -1));
        EXPECT_EQ(c.y, zp(cfg, 1) * ZRational::polar(cfg, -1, 1));
        EXPECT_EQ(c.omega01(), one - zp(cfg, -1));
    }
    EXPECT_THROW(build_curve(Model::dessins, make_config({4}, 2)), ConfigError);
}

TEST(BuildCurve, GaussianOrdinary)
{
    auto cfg = make_config({}, 0);
    SpectralCurveData c = build_curve(Model::ordinary, cfg);
    EXPECT_EQ(c.omega01(), zp(cfg, 1) - zp(cfg, -1));
    EXPECT_EQ(c.extraction_base(), (zp(cfg, 1) + zp(cfg, -1)).pow(2));
}

TEST(BuildCurve, QuadrangulationBipartite)
{
    auto cfg = make_config({4}, 5);
    SpectralCurveData c = build_curve(Model::bipartite, cfg);
    WeightSeries g = c.gamma_sq, t = WeightSeries::weight(cfg, 4);
    EXPECT_EQ(c.x, cst(cfg, g) * (zp(cfg, 1) + zp(cfg, -1)) + cst(cfg, g * Rat(2)));
    ZRational num = zp(cfg, 1) * cst(cfg, g.inverse()) - zp(cfg, 2) * cst(cfg, t * g);
    EXPECT_EQ(c.y, num * ZRational::polar(cfg, -1, 1));
    EXPECT_EQ(c.a_pt, g * Rat(4));
    EXPECT_TRUE(c.b_pt.is_zero());
}

TEST(BuildCurve, LocalStructureAtRamificationPoints)
{
    for (Model m : {Model::ordinary, Model::bipartite}) {
        for (const auto& degs : std::vector<std::vector<int>>{{}, {4}, {2, 4, 6}}) {
            auto cfg = make_config(degs, 3);
            SpectralCurveData c = build_curve(m, cfg);
            for (Point p : {Point::plus_one, Point::minus_one}) {
                EXPECT_EQ(c.dxdz.valuation(p), 1) << to_string(m);
                EXPECT_GE(c.omega01().valuation(p), 0) << to_string(m);
            }
            if (m == Model::bipartite) {
                EXPECT_EQ(c.y.valuation(Point::minus_one), -1);
                EXPECT_GE(c.y.valuation(Point::plus_one), 0);
            } else {
                EXPECT_GE(c.y.valuation(Point::minus_one), 0);
                EXPECT_GE(c.y.valuation(Point::plus_one), 0);
            }
        }
    }
}

TEST(CurveRelations, HoldAcrossWeightChoices)
{
    for (const auto& degs : std::vector<std::vector<int>>{{}, {4}, {6}, {2, 4}, {4, 6, 8}}) {
        for (int n : {0, 3, 5}) {
            auto cfg = make_config(degs, n);
            expect_all_pass(check_curve_relations(build_curve(Model::ordinary, cfg), build_curve(Model::bipartite, cfg), n / 2));
        }
    }
}

TEST(CurveRelations, ScaledWeights)
{
    auto cfg = make_config({4, 6}, 4, {make_rat(1, 2), make_rat(-3, 5)});
    expect_all_pass(check_curve_relations(build_curve(Model::ordinary, cfg), build_curve(Model::bipartite, cfg), 2));
}

TEST(CurveRelations, GaussianYTimesX)
{
    auto cfg = make_config({}, 0);
    SpectralCurveData c = build_curve(Model::bipartite, cfg);
    EXPECT_EQ(c.y * c.x, cst(cfg, WeightSeries::one(cfg)) + zp(cfg, 1));
}

TEST(CurveRelations, RefusesMixedConfigurations)
{
    auto a = make_config({4}, 3), b = make_config({4}, 4);
    EXPECT_THROW(check_curve_relations(build_curve(Model::ordinary, a), build_curve(Model::bipartite, b), 1), ConfigError);
}

TEST(Models, Parsing)
{
    EXPECT_EQ(parse_model("ordinary"), Model::ordinary);
    EXPECT_EQ(parse_model("dessins"), Model::dessins);
    EXPECT_THROW(parse_model("tricolored"), ConfigError);
    EXPECT_TRUE(is_bipartite_type(Model::dessins));
    EXPECT_FALSE(is_bipartite_type(Model::ordinary));
}

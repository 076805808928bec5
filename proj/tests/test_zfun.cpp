#include <random>

#include <gtest/gtest.h>

#include <trmaps/zrational.hpp>

using namespace trmaps;

namespace {

ConfigPtr t0() { return make_config({}, 0); }

ZRational zp(const ConfigPtr& c, int e) { return ZRational::z_power(c, e); }
ZRational cst(const ConfigPtr& c, long v) { return ZRational::constant(c, Rat(v)); }
ZRational pol(const ConfigPtr& c, int beta, int k) { return ZRational::polar(c, beta, k); }

// Random element of the family with weight-series coefficients.
ZRational random_zr(std::mt19937& rng, const ConfigPtr& cfg)
{
    std::uniform_int_distribution<int> e(-3, 3), k(0, 3), b(0, 1), num(-5, 5), deg(0, cfg->trunc());
    ZRational out = ZRational::zero(cfg);
    for (int i = 0; i < 4; ++i) {
        WeightSeries c(cfg);
        c.add_term(Monomial{deg(rng)}, Rat(num(rng)));
        c.add_term(Monomial{0}, Rat(num(rng)));
        ZRational term = ZRational::z_power(cfg, e(rng), c);
        int kk = k(rng);
        if (kk > 0) term = term * pol(cfg, b(rng) ? 1 : -1, kk);
        out = out + term;
    }
    return out;
}

} // namespace

TEST(ZRational, PartialFractionSum)
{
    auto c = t0();
    EXPECT_EQ(pol(c, 1, 1) + pol(c, -1, 1), zp(c, 1) * cst(c, 2) * pol(c, 1, 1) * pol(c, -1, 1));
}

TEST(ZRational, ProductsCancel)
{
    auto c = t0();
    ZRational x = zp(c, 1) + cst(c, 2) + zp(c, -1);
    EXPECT_EQ(x * zp(c, 1), ZRational::linear_power(c, -1, 2));
    ZRational y = zp(c, 1) * pol(c, -1, 1);
    ZRational one_plus_z = cst(c, 1) + zp(c, 1);
    EXPECT_EQ(y * x, one_plus_z);
    EXPECT_TRUE(y * x == one_plus_z && (y * x).is_laurent_polynomial());
}

TEST(ZRational, Involution)
{
    auto c = t0();
    EXPECT_EQ(zp(c, 1).involute(), zp(c, -1));
    ZRational x = zp(c, 1) + cst(c, 2) + zp(c, -1);
    EXPECT_EQ(x.involute(), x);
    EXPECT_EQ((zp(c, 1) * pol(c, -1, 1)).involute(), pol(c, -1, 1));
}

TEST(ZRational, Derivative)
{
    auto c = t0();
    EXPECT_EQ((zp(c, 1) * pol(c, -1, 1)).derivative(), pol(c, -1, 2));
    EXPECT_EQ(zp(c, -2).derivative(), zp(c, -3) * cst(c, -2));
}

TEST(ZRational, SubstituteSquare)
{
    auto c = t0();
    ZRational x = zp(c, 1) + cst(c, 2) + zp(c, -1);
    ZRational xo = zp(c, 1) + zp(c, -1);
    EXPECT_EQ(x.substitute_square(), xo * xo);
}

TEST(ZRational, Expansions)
{
    auto c = t0();
    LaurentLocal a = pol(c, 1, 2).expand(Point::plus_one, 0);
    EXPECT_EQ(a.coefficient(-2).constant_term(), 1);
    EXPECT_TRUE(a.coefficient(-1).is_zero());
    EXPECT_TRUE(a.coefficient(0).is_zero());
    EXPECT_THROW(a.coefficient(1), OrderDeficitError);

    LaurentLocal b = (zp(c, 1) * pol(c, -1, 1)).expand(Point::minus_one, 2);
    EXPECT_EQ(b.coefficient(-1).constant_term(), -1);
    EXPECT_EQ(b.coefficient(0).constant_term(), 1);
    EXPECT_TRUE(b.coefficient(1).is_zero());

    LaurentLocal d = (ZRational::linear_power(c, -1, 2) * zp(c, -1)).expand(Point::infinity, 3);
    EXPECT_EQ(d.coefficient(-1).constant_term(), 1);
    EXPECT_EQ(d.coefficient(0).constant_term(), 2);
    EXPECT_EQ(d.coefficient(1).constant_term(), 1);
    EXPECT_TRUE(d.coefficient(2).is_zero());
}

TEST(ZRational, Residues)
{
    auto c = t0();
    EXPECT_EQ(zp(c, -1).residue(Point::zero).constant_term(), 1);
    ZRational disk = (zp(c, 1) + cst(c, 2) + zp(c, -1)) * (cst(c, 1) - zp(c, -1));
    EXPECT_EQ(disk.residue(Point::infinity).constant_term(), 1);
    EXPECT_TRUE(pol(c, 1, 2).residue(Point::plus_one).is_zero());
    EXPECT_EQ(zp(c, -1).residue(Point::infinity).constant_term(), -1);
}

TEST(ZRational, ValuationsAndValues)
{
    auto c = t0();
    ZRational f = zp(c, 3) * pol(c, 1, 4) * pol(c, -1, 4);
    EXPECT_EQ(f.pole_order(Point::plus_one), 4);
    EXPECT_EQ(f.pole_order(Point::minus_one), 4);
    EXPECT_EQ(f.valuation(Point::zero), 3);
    EXPECT_EQ(f.valuation(Point::infinity), 5);
    EXPECT_EQ((zp(c, 1) * pol(c, -1, 1)).value_at(Point::plus_one).constant_term(), Rat(1, 2));
}

TEST(LaurentLocal, InversePair)
{
    auto c = t0();
    LaurentLocal a = pol(c, 1, 4).expand(Point::plus_one, 6);
    LaurentLocal b = ZRational::linear_power(c, 1, 4).expand(Point::plus_one, 6);
    LaurentLocal p = a * b;
    EXPECT_EQ(p.coefficient(0).constant_term(), 1);
    for (int e = 1; e < p.precision(); ++e) EXPECT_TRUE(p.coefficient(e).is_zero());
    EXPECT_TRUE(a.inverse().agrees_with(b));
}

TEST(LaurentLocal, ProductWithLowerPrecision)
{
    // 1/(2+w)^2 = 1/4 - w/4 + 3w^2/16 - ... times 2w + O(w^2) gives w/2 + O(w^2), w = q + 1.
    auto c = t0();
    LaurentLocal a = LaurentLocal::from_rationals(c, Point::minus_one, 0, {Rat(1, 4), Rat(-1, 4), Rat(3, 16)});
    LaurentLocal b = LaurentLocal::from_rationals(c, Point::minus_one, 1, {Rat(2)});
    LaurentLocal p = a * b;
    EXPECT_EQ(p.precision(), 2);
    EXPECT_EQ(p.coefficient(1).constant_term(), Rat(1, 2));
    EXPECT_THROW(p.coefficient(2), OrderDeficitError);
    LaurentLocal z = a * LaurentLocal::zero(c, Point::minus_one, 3);
    for (int e = 0; e < z.precision(); ++e) EXPECT_TRUE(z.coefficient(e).is_zero());
}

TEST(LaurentLocal, BinomialSeries)
{
    // (1 + w/2)^{-2} = 1 - w + 3/4 w^2 - 1/2 w^3
    auto s = binomial_series(2, Rat(1, 2), 4);
    std::vector<Rat> want{Rat(1), Rat(-1), Rat(3, 4), Rat(-1, 2)};
    EXPECT_EQ(s, want);
}

class ZProperties : public ::testing::TestWithParam<int> {};

TEST_P(ZProperties, InvolutionIsAnInvolution)
{
    std::mt19937 rng(static_cast<unsigned>(GetParam()));
    auto cfg = make_config({4}, 2);
    for (int i = 0; i < 25; ++i) {
        ZRational a = random_zr(rng, cfg);
        EXPECT_EQ(a.involute().involute(), a);
    }
}

TEST_P(ZProperties, ResidueTheorem)
{
    std::mt19937 rng(static_cast<unsigned>(GetParam()) + 50);
    auto cfg = make_config({4}, 2);
    for (int i = 0; i < 25; ++i) {
        ZRational a = random_zr(rng, cfg) * random_zr(rng, cfg);
        WeightSeries sum = WeightSeries::zero(cfg);
        for (Point p : {Point::zero, Point::plus_one, Point::minus_one, Point::infinity}) sum += a.residue(p);
        EXPECT_TRUE(sum.is_zero()) << a;
    }
}

TEST_P(ZProperties, SelfDifferenceIsZero)
{
    std::mt19937 rng(static_cast<unsigned>(GetParam()) + 100);
    auto cfg = make_config({4}, 2);
    for (int i = 0; i < 25; ++i) {
        ZRational a = random_zr(rng, cfg);
        EXPECT_TRUE((a - a).is_zero());
        EXPECT_EQ((a * a).involute(), a.involute() * a.involute());
    }
}

TEST_P(ZProperties, PolarPartsResum)
{
    std::mt19937 rng(static_cast<unsigned>(GetParam()) + 150);
    std::uniform_int_distribution<int> k(1, 4), num(-6, 6);
    auto cfg = make_config({4}, 2);
    for (int i = 0; i < 25; ++i) {
        ZRational a = ZRational::zero(cfg);
        for (int j = 0; j < 4; ++j) a = a + pol(cfg, j % 2 ? 1 : -1, k(rng)) * Rat(num(rng));
        ZRational back = ZRational::zero(cfg);
        for (Point p : {Point::plus_one, Point::minus_one}) {
            int beta = point_value(p);
            LaurentLocal e = a.expand(p, 0);
            for (int o = 1; o <= 4; ++o) {
                WeightSeries coef = e.coefficient(-o);
                if (!coef.is_zero()) back = back + pol(cfg, beta, o) * coef;
            }
        }
        EXPECT_EQ(back, a);
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ZProperties, ::testing::Values(1, 2, 3));

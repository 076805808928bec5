#include <gtest/gtest.h>

#include <trmaps/extract.hpp>
#include <trmaps/omega.hpp>
#include <trmaps/verify.hpp>

using namespace trmaps;

namespace {

ZRational zp(const ConfigPtr& c, int e) { return ZRational::z_power(c, e); }
ZRational pol(const ConfigPtr& c, int beta, int k) { return ZRational::polar(c, beta, k); }

void expect_all_pass(const CheckReport& r)
{
    ASSERT_FALSE(r.checks.empty());
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

} // namespace

TEST(UnstableForms, Examples)
{
    auto cfg = make_config({}, 0);
    SpectralCurveData bip = build_curve(Model::bipartite, cfg), ord = build_curve(Model::ordinary, cfg);
    EXPECT_EQ(omega01(bip), ZRational::constant(cfg, Rat(1)) - zp(cfg, -1));
    EXPECT_EQ(omega01(ord), zp(cfg, 1) - zp(cfg, -1));
    ZRational b = omega02_diag(bip);
    EXPECT_EQ(b * (zp(cfg, 2) - ZRational::constant(cfg, Rat(1))).pow(2), ZRational::constant(cfg, Rat(-1)));
    EXPECT_EQ(b.value_at(Point::zero).constant_term(), -1);
}

TEST(Kernel, DenominatorsAtTZero)
{
    auto cfg = make_config({}, 0);
    EXPECT_EQ(kernel_denominator(build_curve(Model::bipartite, cfg)), ZRational::linear_power(cfg, 1, 2) * zp(cfg, -2));
    EXPECT_EQ(kernel_denominator(build_curve(Model::ordinary, cfg)),
              (zp(cfg, 2) - ZRational::constant(cfg, Rat(1))).pow(2) * zp(cfg, -3));
}

TEST(Kernel, DenominatorVanishesToSecondOrderAtPlusOne)
{
    for (Model m : {Model::ordinary, Model::bipartite}) {
        auto cfg = make_config({4, 6}, 3);
        ZRational d = kernel_denominator(build_curve(m, cfg));
        EXPECT_EQ(d.valuation(Point::plus_one), 2);
        EXPECT_EQ(d.valuation(Point::minus_one), m == Model::bipartite ? 0 : 2);
    }
}

TEST(Omega11, GaussianBipartite)
{
    auto cfg = make_config({}, 0);
    EngineCache cache(build_curve(Model::bipartite, cfg));
    const OmegaForm& f = cache.omega(1, 1);
    ZRational want = pol(cfg, 1, 4) * make_rat(1, 4) + pol(cfg, 1, 3) * make_rat(1, 4) - pol(cfg, 1, 2) * make_rat(1, 16) +
                     pol(cfg, -1, 2) * make_rat(1, 16);
    EXPECT_EQ(f.leg_function(0, {}), want);
    EXPECT_EQ(f.max_order(-1), 2);
    EXPECT_EQ(f.max_order(1), 4);
}

TEST(Omega11, GaussianOrdinaryIsClassicalTorusForm)
{
    auto cfg = make_config({}, 0);
    EngineCache cache(build_curve(Model::ordinary, cfg));
    EXPECT_EQ(cache.omega(1, 1).leg_function(0, {}), zp(cfg, 3) * pol(cfg, 1, 4) * pol(cfg, -1, 4));
}

TEST(Omega11, DessinsEqualsWeightlessBipartite)
{
    auto cfg = make_config({}, 0);
    EngineCache a(build_curve(Model::bipartite, cfg)), b(build_curve(Model::dessins, cfg));
    EXPECT_EQ(a.omega(1, 2), b.omega(1, 2));
}

TEST(Omega11, ClosedFormAgreesUpToSigns)
{
    auto cfg = make_config({}, 0);
    EngineCache cache(build_curve(Model::bipartite, cfg));
    const OmegaForm& f = cache.omega(1, 1);
    OmegaForm ref = omega11_closed_form(cache.curve());
    ASSERT_EQ(f.terms().size(), ref.terms().size());
    int flips = 0;
    for (const auto& [key, c] : f.terms()) {
        WeightSeries r = ref.coefficient(key);
        EXPECT_TRUE(c == r || c == -r) << to_string(key[0]);
        flips += c == -r;
    }
    EXPECT_EQ(flips, 3);
    EXPECT_THROW(omega11_closed_form(build_curve(Model::ordinary, cfg)), ConfigError);
}

TEST(Engine, UnstableRequestsThrow)
{
    EngineCache cache(build_curve(Model::bipartite, make_config({}, 0)));
    EXPECT_THROW(cache.omega(0, 1), ContractViolation);
    EXPECT_THROW(cache.omega(0, 2), ContractViolation);
    EXPECT_THROW(cache.omega(1, 0), ContractViolation);
}

TEST(Engine, GaloisAntisymmetry)
{
    auto cfg = make_config({}, 0);
    for (Model m : {Model::ordinary, Model::bipartite}) {
        EngineCache cache(build_curve(m, cfg));
        EXPECT_TRUE(galois_check(cache.omega(1, 1), cache.curve()));
        EXPECT_TRUE(galois_check(cache.omega(0, 3), cache.curve()));
    }
    // dz/(z-1)^2 is anti-invariant on its own; dz/(z-1)^3 is not.
    SpectralCurveData c = build_curve(Model::bipartite, cfg);
    OmegaForm even(1, 1, cfg), odd(1, 1, cfg);
    even.add({Pole{1, 2}}, WeightSeries::one(cfg));
    odd.add({Pole{1, 3}}, WeightSeries::one(cfg));
    EXPECT_TRUE(galois_check(even, c));
    EXPECT_FALSE(galois_check(odd, c));
    OmegaForm unstable(0, 2, cfg);
    EXPECT_THROW(galois_check(unstable, c), ContractViolation);
}

TEST(Engine, StructuralInvariantsQuadrangulations)
{
    auto cfg = make_config({4}, 2);
    for (Model m : {Model::ordinary, Model::bipartite}) {
        EngineCache cache(build_curve(m, cfg));
        expect_all_pass(structure_checks(cache, 4));
    }
}

TEST(Engine, StructuralInvariantsMixedWeights)
{
    auto cfg = make_config({4, 6}, 2);
    for (Model m : {Model::ordinary, Model::bipartite}) {
        EngineCache cache(build_curve(m, cfg));
        expect_all_pass(structure_checks(cache, 3));
    }
}

TEST(Engine, CacheOrderDoesNotMatter)
{
    auto cfg = make_config({4}, 2);
    EngineCache a(build_curve(Model::bipartite, cfg)), b(build_curve(Model::bipartite, cfg));
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {0, 4}, {1, 2}, {2, 1}}) a.omega(g, n);
    for (auto [g, n] : std::vector<std::pair<int, int>>{{2, 1}, {1, 2}, {0, 4}}) b.omega(g, n);
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {0, 4}, {1, 2}, {2, 1}})
        EXPECT_EQ(a.omega(g, n), b.omega(g, n)) << g << "," << n;
}

TEST(Engine, TruncationConsistency)
{
    auto hi = make_config({4}, 4), lo = make_config({4}, 2);
    EngineCache a(build_curve(Model::ordinary, hi)), b(build_curve(Model::ordinary, lo));
    const OmegaForm& fa = a.omega(1, 2);
    const OmegaForm& fb = b.omega(1, 2);
    OmegaForm cut(1, 2, lo);
    for (const auto& [k, c] : fa.terms()) cut.add(k, c.truncated(2));
    EXPECT_EQ(cut.terms().size(), fb.terms().size());
    for (const auto& [k, c] : fb.terms()) EXPECT_EQ(cut.coefficient(k).terms(), c.terms());
}

TEST(Engine, KernelSignFaultIsVisible)
{
    auto cfg = make_config({}, 0);
    EngineCache good(build_curve(Model::bipartite, cfg));
    EngineCache bad(build_curve(Model::bipartite, cfg), EngineOptions{true});
    EXPECT_FALSE(good.omega(1, 1) == bad.omega(1, 1));
    Extractor eg(good), eb(bad);
    EXPECT_TRUE(eg.counts_stable(1, {1}).value.is_zero());
    EXPECT_EQ(eb.counts_stable(1, {1}).value.constant_term(), make_rat(-1, 8));
}

TEST(Engine, DegenerateCurveRejected)
{
    // A curve with y = 0 has no kernel.
    auto cfg = make_config({}, 0);
    SpectralCurveData c = build_curve(Model::bipartite, cfg);
    c.y = ZRational::zero(cfg);
    EXPECT_THROW(EngineCache{c}, DegenerateCurveError);
}

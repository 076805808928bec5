#pragma once

// Spectral curves for ordinary maps, bipartite maps and dessins d'enfant.
//
//   ordinary:  x = gamma (z + 1/z),          y = sum_k u_{2k+1} z^{2k+1}
//   bipartite: x = gamma^2 (z + 1/z) + 2 gamma^2,
//              y = sum_k u_{2k+1} z^{k+1} / (gamma (1 + z))
//   dessins:   bipartite with every weight set to zero.
//
// gamma^2 solves gamma^2 = 1 + sum_k t_{2k} C(2k-1, k) gamma^{2k} and
// u_{2k+1} = gamma (delta_{k,0} - sum_{j>k} t_{2j} C(2j-1, j+k) gamma^{2j-2}).
//
// Only gamma^2 is ever stored. The ordinary curve carries an overall odd
// factor gamma on x and y; it is kept outside the stored ZRationals
// (`gamma_odd`) and only recombined in even products such as y dx and x^2.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "weight_series.hpp"
#include "zrational.hpp"

namespace trmaps {

enum class Model { ordinary, bipartite, dessins };

inline std::string to_string(Model m)
{
    switch (m) {
    case Model::ordinary: return "ordinary";
    case Model::bipartite: return "bipartite";
    case Model::dessins: return "dessins";
    }
    return "?";
}

inline Model parse_model(const std::string& s)
{
    if (s == "ordinary") return Model::ordinary;
    if (s == "bipartite") return Model::bipartite;
    if (s == "dessins") return Model::dessins;
    throw ConfigError("unknown model '" + s + "' (expected ordinary, bipartite or dessins)");
}

/// Bipartite-type models count with x^l, the ordinary model with x^{2l}.
inline bool is_bipartite_type(Model m) { return m != Model::ordinary; }

struct SpectralCurveData {
    Model model = Model::bipartite;
    ConfigPtr cfg;
    WeightSeries gamma_sq;
    /// u_{2k+1} / gamma for k = 0 .. d-1; always even in gamma.
    std::vector<WeightSeries> u_over_gamma;
    /// When set, the true x, y, dx/dz and branch points are gamma times the stored values.
    bool gamma_odd = false;
    ZRational x;
    ZRational y;
    ZRational dxdz;
    /// Bipartite only: sum_k (u_{2k+1}/gamma) z^{k+1}, i.e. y (1 + z).
    ZRational y_tilde;
    /// x(+1) and x(-1) (divided by gamma when gamma_odd).
    WeightSeries a_pt;
    WeightSeries b_pt;
    /// The ramification points; the involution is z -> 1/z.
    std::vector<int> ramification{1, -1};

    /// Coefficient of dz in omega_{0,1} = y dx.
    ZRational omega01() const
    {
        ZRational f = y * dxdz;
        return gamma_odd ? f * gamma_sq : f;
    }

    /// The function X whose powers X^l extract counts with boundary length 2l.
    ZRational extraction_base() const
    {
        if (model == Model::ordinary) return x * x * gamma_sq;
        return x;
    }
};

/// gamma^2 by fixed-point iteration; each sweep fixes one more total degree.
inline WeightSeries solve_gamma_sq(const ConfigPtr& cfg)
{
    WeightSeries g = WeightSeries::one(cfg);
    for (int sweep = 0; sweep <= cfg->trunc(); ++sweep) {
        WeightSeries next = WeightSeries::one(cfg);
        for (int deg : cfg->degrees()) {
            int k = deg / 2;
            next += WeightSeries::weight(cfg, deg) * g.pow(k) * Rat(binomial(2 * k - 1, k));
        }
        if (next == g) break;
        g = std::move(next);
    }
    return g;
}

/// u_{2k+1}/gamma for k = 0 .. d-1 (a single entry 1 when no weights are active).
inline std::vector<WeightSeries> compute_u(const ConfigPtr& cfg, const WeightSeries& gamma_sq)
{
    int d = std::max(1, cfg->max_half_degree());
    std::vector<WeightSeries> v;
    for (int k = 0; k < d; ++k) {
        WeightSeries acc = k == 0 ? WeightSeries::one(cfg) : WeightSeries::zero(cfg);
        for (int j = k + 1; j <= cfg->max_half_degree(); ++j) {
            WeightSeries t = WeightSeries::weight(cfg, 2 * j);
            if (t.is_zero()) continue;
            acc -= t * Rat(binomial(2 * j - 1, j + k)) * gamma_sq.pow(j - 1);
        }
        v.push_back(std::move(acc));
    }
    return v;
}

inline SpectralCurveData build_curve(Model model, const ConfigPtr& cfg)
{
    if (model == Model::dessins && !cfg->empty())
        throw ConfigError("the dessins curve has no face weights; use the bipartite model instead");
    SpectralCurveData c;
    c.model = model;
    c.cfg = cfg;
    c.gamma_sq = solve_gamma_sq(cfg);
    c.u_over_gamma = compute_u(cfg, c.gamma_sq);
    const WeightSeries one = WeightSeries::one(cfg);
    const WeightSeries& g = c.gamma_sq;

    if (model == Model::ordinary) {
        c.gamma_odd = true;
        c.x = ZRational::laurent_polynomial(cfg, {{1, one}, {-1, one}});
        std::map<int, WeightSeries> ys;
        for (std::size_t k = 0; k < c.u_over_gamma.size(); ++k)
            ys.emplace(2 * static_cast<int>(k) + 1, c.u_over_gamma[k]);
        c.y = ZRational::laurent_polynomial(cfg, ys);
        c.dxdz = ZRational::laurent_polynomial(cfg, {{0, one}, {-2, -one}});
        c.y_tilde = ZRational::zero(cfg);
        c.a_pt = WeightSeries(cfg, Rat(2));
        c.b_pt = WeightSeries(cfg, Rat(-2));
        return c;
    }

    c.x = ZRational::laurent_polynomial(cfg, {{1, g}, {0, g * Rat(2)}, {-1, g}});
    std::map<int, WeightSeries> ys;
    for (std::size_t k = 0; k < c.u_over_gamma.size(); ++k) ys.emplace(static_cast<int>(k) + 1, c.u_over_gamma[k]);
    c.y_tilde = ZRational::laurent_polynomial(cfg, ys);
    c.y = c.y_tilde * ZRational::polar(cfg, -1, 1);
    c.dxdz = ZRational::laurent_polynomial(cfg, {{0, g}, {-2, -g}});
    c.a_pt = c.x.value_at(Point::plus_one);
    c.b_pt = c.x.value_at(Point::minus_one);
    return c;
}

/// gamma^2 from the t4-only closed form (1 - sqrt(1 - 12 t4)) / (6 t4).
inline WeightSeries gamma_sq_closed_form_t4(const ConfigPtr& cfg)
{
    if (cfg->degrees() != std::vector<int>{4})
        throw ConfigError("the closed form for gamma^2 applies to the t4-only model");
    // Work one order higher so the division by t4 loses nothing.
    auto hi = make_config(cfg->degrees(), cfg->trunc() + 1, cfg->scales());
    WeightSeries t = WeightSeries::weight(hi, 4);
    WeightSeries root = (WeightSeries::one(hi) - t * Rat(12)).sqrt();
    WeightSeries num = WeightSeries::one(hi) - root;
    Rat scale = cfg->scales()[0];
    WeightSeries out(cfg);
    for (const auto& [m, c] : num.terms()) {
        if (m[0] == 0) throw ContractViolation("closed form numerator has a constant term");
        out.add_term(Monomial{m[0] - 1}, c / (Rat(6) * scale));
    }
    return out;
}

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckResult> checks;

    bool all_passed() const
    {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }

    void add(std::string name, bool ok, std::string detail = {})
    {
        checks.push_back({std::move(name), ok, std::move(detail)});
    }

    void append(const CheckReport& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
};

namespace detail {

inline void compare(CheckReport& r, const std::string& name, const ZRational& lhs, const ZRational& rhs)
{
    bool ok = lhs == rhs;
    r.add(name, ok, ok ? std::string{} : "lhs = " + lhs.str() + " ; rhs = " + rhs.str());
}

inline void compare(CheckReport& r, const std::string& name, const WeightSeries& lhs, const WeightSeries& rhs)
{
    bool ok = lhs == rhs;
    r.add(name, ok, ok ? std::string{} : "lhs = " + lhs.str() + " ; rhs = " + rhs.str());
}

} // namespace detail

/// Verifies every closed-form identity relating the ordinary and bipartite
/// curves as exact algebra. `order` (<= N) additionally checks that solving
/// for gamma^2 at that truncation agrees with truncating the stored series.
inline CheckReport check_curve_relations(const SpectralCurveData& ord, const SpectralCurveData& bip, int order)
{
    if (ord.model != Model::ordinary || !is_bipartite_type(bip.model))
        throw ContractViolation("check_curve_relations needs an ordinary and a bipartite curve");
    if (!(*ord.cfg == *bip.cfg)) throw ConfigError("curves built from different weight configurations");
    const ConfigPtr& cfg = bip.cfg;
    const WeightSeries one = WeightSeries::one(cfg);
    const WeightSeries& g = bip.gamma_sq;
    CheckReport r;

    // x_bip(z^2) = x_ord(z)^2
    detail::compare(r, "x_bip(z^2) = x_ord(z)^2", bip.x.substitute_square(), ord.x * ord.x * ord.gamma_sq);

    // y_bip(z^2) x_ord(z) = y_ord(z), cleared of the factor (1 + z^2) and of gamma
    ZRational one_plus_z2 = ZRational::laurent_polynomial(cfg, {{0, one}, {2, one}});
    detail::compare(r, "y_bip(z^2) * x_ord(z) = y_ord(z)", bip.y_tilde.substitute_square() * ord.x,
                    ord.y * one_plus_z2);

    // y_bip x_bip = 1 + z - (1+z) sum_{k=1}^{d-1} sum_{j>k} t_{2j} C(2j-1, j+k) gamma^{2j} z^k
    int d = cfg->max_half_degree();
    std::map<int, WeightSeries> inner;
    for (int k = 1; k <= d - 1; ++k) {
        WeightSeries acc = WeightSeries::zero(cfg);
        for (int j = k + 1; j <= d; ++j)
            acc += WeightSeries::weight(cfg, 2 * j) * Rat(binomial(2 * j - 1, j + k)) * g.pow(j);
        inner.emplace(k, acc);
    }
    ZRational one_plus_z = ZRational::laurent_polynomial(cfg, {{0, one}, {1, one}});
    ZRational yeq = one_plus_z - one_plus_z * ZRational::laurent_polynomial(cfg, inner);
    detail::compare(r, "y_bip * x_bip positive-power form", bip.y * bip.x, yeq);

    // Y(z) x_bip(z) with Y(z) = y_bip(1/z) - y_bip(z)
    std::map<int, WeightSeries> bracket;
    bracket.emplace(0, WeightSeries(cfg, Rat(2)));
    for (int k = 1; k <= d; ++k) {
        WeightSeries tk = WeightSeries::weight(cfg, 2 * k) * g.pow(k);
        if (tk.is_zero()) continue;
        for (int l = 1; l <= k - 1; ++l) {
            WeightSeries term = tk * Rat(binomial(2 * k - 1, k + l));
            auto [it, fresh] = bracket.try_emplace(l, -term);
            if (!fresh) it->second -= term;
        }
        for (int l = -k; l <= 0; ++l) {
            WeightSeries term = tk * Rat(binomial(2 * k - 1, k + l));
            auto [it, fresh] = bracket.try_emplace(l, term);
            if (!fresh) it->second += term;
        }
    }
    ZRational ykernel = bip.y.involute() - bip.y;
    // gamma^2 (1+z)^2 / z is x_bip; the bracket comes from the disk kernel of the Tutte equation
    detail::compare(r, "Y * x_bip closed form", ykernel * bip.x,
                    ZRational::laurent_polynomial(cfg, {{1, g}, {0, g * Rat(2)}, {-1, g}}) -
                        one_plus_z * ZRational::laurent_polynomial(cfg, bracket));

    // Branch points and the Zhukovsky factorization.
    detail::compare(r, "branch point a = x_bip(+1) = 4 gamma^2", bip.a_pt, g * Rat(4));
    detail::compare(r, "branch point b = x_bip(-1) = 0", bip.b_pt, WeightSeries::zero(cfg));
    ZRational xa = bip.x - ZRational::constant(cfg, bip.a_pt);
    ZRational xb = bip.x - ZRational::constant(cfg, bip.b_pt);
    detail::compare(r, "x - a = gamma^2 (z-1)^2 / z", xa,
                    ZRational::linear_power(cfg, 1, 2) * ZRational::z_power(cfg, -1) * g);
    detail::compare(r, "x - b = gamma^2 (z+1)^2 / z", xb,
                    ZRational::linear_power(cfg, -1, 2) * ZRational::z_power(cfg, -1) * g);
    ZRational zm = ZRational::laurent_polynomial(cfg, {{1, one}, {-1, -one}});
    detail::compare(r, "(x - a)(x - b) = gamma^4 (z - 1/z)^2", xa * xb, zm * zm * (g * g));
    detail::compare(r, "ordinary branch points x(+-1) = +-2 gamma", ord.a_pt - ord.b_pt, WeightSeries(cfg, Rat(4)));

    // gamma^2 fixed point re-substitutes to itself.
    WeightSeries rhs = one;
    for (int deg : cfg->degrees())
        rhs += WeightSeries::weight(cfg, deg) * g.pow(deg / 2) * Rat(binomial(deg - 1, deg / 2));
    detail::compare(r, "gamma^2 fixed point", g, rhs);
    if (order >= 0 && order <= cfg->trunc()) {
        auto low = make_config(cfg->degrees(), order, cfg->scales());
        detail::compare(r, "gamma^2 truncation consistency", solve_gamma_sq(low), g.truncated(order));
    }
    if (cfg->degrees() == std::vector<int>{4}) {
        detail::compare(r, "gamma^2 closed form (t4 only)", gamma_sq_closed_form_t4(cfg), g);
        detail::compare(r, "(u_1/gamma) gamma^2 = 1 (t4 only)", bip.u_over_gamma[0] * g, one);
    }

    // omega_{0,1} regular at both ramification points; y_bip irregular at -1 only.
    for (const SpectralCurveData* c : {&ord, &bip}) {
        ZRational w = c->omega01();
        bool ok = w.pole_order(Point::plus_one) == 0 && w.pole_order(Point::minus_one) == 0;
        r.add("omega01 regular at +-1 (" + to_string(c->model) + ")", ok);
        bool dx_ok = c->dxdz.valuation(Point::plus_one) == 1 && c->dxdz.valuation(Point::minus_one) == 1;
        r.add("dx has simple zeros at +-1 (" + to_string(c->model) + ")", dx_ok);
    }
    r.add("y_ord regular at +-1",
          ord.y.pole_order(Point::plus_one) == 0 && ord.y.pole_order(Point::minus_one) == 0);
    r.add("y_bip simple pole at -1, regular at +1",
          bip.y.pole_order(Point::minus_one) == 1 && bip.y.pole_order(Point::plus_one) == 0);
    return r;
}

inline std::string describe(const SpectralCurveData& c)
{
    std::ostringstream os;
    std::string gpre = c.gamma_odd ? "gamma * " : "";
    os << "model: " << to_string(c.model) << "\n";
    os << "gamma^2 = " << c.gamma_sq.str() << "\n";
    for (std::size_t k = 0; k < c.u_over_gamma.size(); ++k)
        os << "u_" << 2 * k + 1 << " / gamma = " << c.u_over_gamma[k].str() << "\n";
    os << "x = " << gpre << c.x.str() << "\n";
    os << "y = " << gpre << c.y.str() << "\n";
    os << "a = x(+1) = " << gpre << c.a_pt.str() << "\n";
    os << "b = x(-1) = " << gpre << c.b_pt.str() << "\n";
    return os.str();
}

} // namespace trmaps

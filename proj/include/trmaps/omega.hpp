#pragma once

// Topological recursion on the Zhukovsky-type curves x = c0 + c1 (z + 1/z).
//
// Every stable form is stored in its polar basis
//
//     omega_{g,n} = sum  coeff * prod_i dz_i / (z_i - beta_i)^{k_i},   beta_i = +-1,
//
// and the residue formula is evaluated by local expansion in w = q - beta:
//
//     omega_{g,n+1}(I, z) = sum_beta Res_{q -> beta} K(z, q) [ omega_{g-1,n+2}(I, q, 1/q)
//                             + sum' omega_{g1,|I1|+1}(I1, q) omega_{g2,|I2|+1}(I2, 1/q) ].
//
// The kernel numerator (1/2)[1/(z-q) - 1/(z-1/q)] is a power series in w
// whose coefficients are polynomials in 1/(z - beta), so the output is polar
// in z by construction and each coefficient is a single residue in w.
//
// Sign convention: the kernel denominator is omega_{0,1}(1/q) - omega_{0,1}(q).
// This fixes omega_{1,1} of the Gaussian ordinary curve to +z^3 dz/(z^2-1)^4
// (one rooted torus gluing of the square) and makes every extracted count
// nonnegative.

#include <ostream>
#include <algorithm>
#include <compare>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "curve.hpp"
#include "errors.hpp"
#include "laurent.hpp"
#include "zrational.hpp"

namespace trmaps {

/// One leg of a polar basis term: dz / (z - beta)^order.
struct Pole {
    int beta = 1;
    int order = 2;
    auto operator<=>(const Pole&) const = default;
};

using LegKey = std::vector<Pole>;

inline std::string to_string(const Pole& p)
{
    std::string base = p.beta == 1 ? "(z-1)" : "(z+1)";
    return p.order == 1 ? base : base + "^" + std::to_string(p.order);
}

class OmegaForm {
public:
    OmegaForm() = default;
    OmegaForm(int g, int n, ConfigPtr cfg) : g_(g), n_(n), cfg_(std::move(cfg)) {}

    int genus() const { return g_; }
    int legs() const { return n_; }
    const ConfigPtr& config() const { return cfg_; }
    const std::map<LegKey, WeightSeries>& terms() const { return terms_; }

    void add(const LegKey& key, const WeightSeries& c)
    {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(key, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    WeightSeries coefficient(const LegKey& key) const
    {
        auto it = terms_.find(key);
        return it == terms_.end() ? WeightSeries::zero(cfg_) : it->second;
    }

    /// Highest pole order at beta over all legs (0 if none).
    int max_order(int beta) const
    {
        int m = 0;
        for (const auto& [key, c] : terms_)
            for (const Pole& p : key)
                if (p.beta == beta) m = std::max(m, p.order);
        return m;
    }

    /// Highest pole order at beta in one leg.
    int max_order(int beta, int leg) const
    {
        int m = 0;
        for (const auto& [key, c] : terms_)
            if (key[static_cast<std::size_t>(leg)].beta == beta) m = std::max(m, key[static_cast<std::size_t>(leg)].order);
        return m;
    }

    bool operator==(const OmegaForm& b) const
    {
        if (g_ != b.g_ || n_ != b.n_ || terms_.size() != b.terms_.size()) return false;
        auto it = b.terms_.begin();
        for (const auto& [key, c] : terms_) {
            if (key != it->first || !(c == it->second)) return false;
            ++it;
        }
        return true;
    }

    /// Copy with legs i and j exchanged.
    OmegaForm transposed(int i, int j) const
    {
        OmegaForm out(g_, n_, cfg_);
        for (const auto& [k, c] : terms_) {
            LegKey key = k;
            std::swap(key[static_cast<std::size_t>(i)], key[static_cast<std::size_t>(j)]);
            out.terms_.emplace(std::move(key), c);
        }
        return out;
    }

    /// Coefficient function of dz_leg with the other legs fixed to `others` (in leg order).
    ZRational leg_function(int leg, const LegKey& others) const
    {
        ZRational f = ZRational::zero(cfg_);
        for (const auto& [key, c] : terms_) {
            bool match = true;
            for (int i = 0, j = 0; i < n_; ++i) {
                if (i == leg) continue;
                if (key[static_cast<std::size_t>(i)] != others[static_cast<std::size_t>(j++)]) {
                    match = false;
                    break;
                }
            }
            if (!match) continue;
            const Pole& p = key[static_cast<std::size_t>(leg)];
            f = f + ZRational::polar(cfg_, p.beta, p.order) * c;
        }
        return f;
    }

    /// The distinct assignments of the legs other than `leg`.
    std::vector<LegKey> spectator_keys(int leg) const
    {
        std::vector<LegKey> out;
        for (const auto& [key, c] : terms_) {
            LegKey rest;
            for (int i = 0; i < n_; ++i)
                if (i != leg) rest.push_back(key[static_cast<std::size_t>(i)]);
            out.push_back(std::move(rest));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::string str() const
    {
        std::ostringstream os;
        os << "omega_{" << g_ << "," << n_ << "} =";
        if (terms_.empty()) os << " 0";
        bool first = true;
        for (const auto& [key, c] : terms_) {
            os << (first ? " " : "\n    + ") << "(" << c.str() << ")";
            for (std::size_t i = 0; i < key.size(); ++i)
                os << " dz" << i + 1 << "/" << to_string(key[i]).replace(2, 0, std::to_string(i + 1));
            first = false;
        }
        return os.str();
    }

private:
    int g_ = 0;
    int n_ = 0;
    ConfigPtr cfg_;
    std::map<LegKey, WeightSeries> terms_;
};

/// Coefficient of dz in omega_{0,1}.
inline ZRational omega01(const SpectralCurveData& curve) { return curve.omega01(); }

/// Coefficient of dq^2 in B(q, 1/q) = dq d(1/q) / (q - 1/q)^2, i.e. -1/(q^2-1)^2.
inline ZRational omega02_diag(const SpectralCurveData& curve)
{
    return ZRational::polar(curve.cfg, 1, 2) * ZRational::polar(curve.cfg, -1, 2) * Rat(-1);
}

/// Coefficient of dq in [y(q) - y(1/q)] dx(q), written without any odd power of gamma.
inline ZRational kernel_denominator(const SpectralCurveData& curve)
{
    // omega01(q) - sigma^* omega01(q); the pullback of f(q) dq is -f(1/q) dq / q^2.
    ZRational f = curve.omega01();
    return f + f.involute() * ZRational::z_power(curve.cfg, -2);
}

/// Kernel data at one ramification point.
struct KernelParts {
    int beta = 1;
    /// [y(q) - y(1/q)] dx/dq expanded at beta.
    LaurentLocal denominator;
    /// Coefficients of (z - beta)^{-k} in (1/2)[1/(z-q) - 1/(z-1/q)] as series in w, k = 0, 1, ...
    std::vector<LaurentLocal> numerator;
};

/// Expansions needed by the kernel at beta, with numerator coefficients up to (z-beta)^{-max_k}.
inline KernelParts kernel_parts(const SpectralCurveData& curve, int beta, int precision, int max_k)
{
    const ConfigPtr& cfg = curve.cfg;
    Point pt = ramification_point(beta);
    ZRational den = kernel_denominator(curve);
    if (den.is_zero()) throw DegenerateCurveError("y(q) - y(1/q) vanishes identically");
    KernelParts kp{beta, den.expand(pt, precision - 1), {}};
    // s(w) = 1/q - beta, w = q - beta
    ZRational s = ZRational::z_power(cfg, -1) - ZRational::constant(cfg, Rat(beta));
    LaurentLocal sw = s.expand(pt, precision - 1);
    LaurentLocal w = LaurentLocal::monomial(cfg, pt, 1, WeightSeries::one(cfg), precision);
    LaurentLocal wp = LaurentLocal::monomial(cfg, pt, 0, WeightSeries::one(cfg), precision);
    LaurentLocal sp = wp;
    for (int k = 0; k <= max_k; ++k) {
        if (k == 0) {
            kp.numerator.push_back(LaurentLocal::zero(cfg, pt, precision));
            continue;
        }
        // coefficient of (z-beta)^{-k}: w^{k-1} - s^{k-1}
        kp.numerator.push_back((wp - sp) * Rat(1, 2));
        wp = (wp * w).truncated(precision);
        sp = (sp * sw).truncated(precision);
    }
    return kp;
}

/// Test-only perturbations of the recursion.
struct EngineOptions {
    /// Flips the kernel sign at beta = -1 only; used to show the golden data detects sign faults.
    bool negate_kernel_at_minus_one = false;
};

/// Memoized omega_{g,n} for one curve.
class EngineCache {
public:
    explicit EngineCache(SpectralCurveData curve, EngineOptions options = {})
        : curve_(std::move(curve)), options_(options), den_(kernel_denominator(curve_))
    {
        if (den_.is_zero()) throw DegenerateCurveError("y(q) - y(1/q) vanishes identically");
        for (int beta : {1, -1}) den_valuation_[beta] = den_.valuation(ramification_point(beta));
    }

    const SpectralCurveData& curve() const { return curve_; }
    const ConfigPtr& config() const { return curve_.cfg; }
    Model model() const { return curve_.model; }

    static bool is_stable(int g, int n) { return g >= 0 && n >= 1 && 2 * g + n - 2 > 0; }

    /// omega_{g,n}; requires 2g + n - 2 > 0.
    const OmegaForm& omega(int g, int n)
    {
        if (!is_stable(g, n))
            throw ContractViolation("omega_{" + std::to_string(g) + "," + std::to_string(n) +
                                    "} is unstable; use counts_disk / counts_cylinder for (0,1) and (0,2)");
        auto key = std::make_pair(g, n);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        OmegaForm f = compute(g, n);
        return memo_.emplace(key, std::move(f)).first->second;
    }

    bool has(int g, int n) const { return memo_.count({g, n}) != 0; }

private:
    // A bracket factor: leg indices it depends on (into I) and, per leg assignment, a series in w.
    struct Factor {
        std::vector<int> legs;
        std::map<LegKey, LaurentLocal> entries;
        int valuation = 0; // lower bound
    };

    // Lower bound for the w-valuation of a stored form with `q_legs` legs evaluated near beta.
    int valuation_bound(int g, int n, int beta, int q_legs)
    {
        return -q_legs * omega(g, n).max_order(beta);
    }

    // (q - b)^{-k} (pulled = false) or (1/q - b)^{-k} * (-1/q^2) (pulled = true) at beta.
    const LaurentLocal& leg_expansion(int beta, const Pole& p, bool pulled, int precision)
    {
        auto key = std::make_tuple(beta, p.beta, p.order, pulled);
        auto it = leg_cache_.find(key);
        if (it != leg_cache_.end() && it->second.precision() >= precision) return it->second;
        const ConfigPtr& cfg = curve_.cfg;
        ZRational f = ZRational::polar(cfg, p.beta, p.order);
        if (pulled) f = f.involute() * ZRational::z_power(cfg, -2) * Rat(-1);
        LaurentLocal e = f.expand(ramification_point(beta), precision - 1);
        return leg_cache_.insert_or_assign(key, std::move(e)).first->second;
    }

    // omega_{g',|legs|+1}(legs, q or 1/q) as a factor known up to O(w^precision).
    Factor stored_factor(int g, const std::vector<int>& legs, int beta, bool pulled, int precision)
    {
        const int n = static_cast<int>(legs.size()) + 1;
        const OmegaForm& f = omega(g, n);
        Factor out{legs, {}, valuation_bound(g, n, beta, 1)};
        for (const auto& [key, c] : f.terms()) {
            LaurentLocal e = leg_expansion(beta, key[0], pulled, precision) * c;
            LegKey rest(key.begin() + 1, key.end());
            add_entry(out.entries, rest, e.truncated(precision));
        }
        return out;
    }

    // omega_{g', |legs|+2}(legs, q, 1/q), or B(q, 1/q) when g' = 0 and legs is empty.
    Factor diagonal_factor(int g, const std::vector<int>& legs, int beta, int precision)
    {
        const ConfigPtr& cfg = curve_.cfg;
        Point pt = ramification_point(beta);
        if (g == 0 && legs.empty()) {
            LaurentLocal e = omega02_diag(curve_).expand(pt, precision - 1);
            Factor out{legs, {}, e.valuation()};
            out.entries.emplace(LegKey{}, std::move(e));
            return out;
        }
        const int n = static_cast<int>(legs.size()) + 2;
        const OmegaForm& f = omega(g, n);
        int m = f.max_order(beta);
        Factor out{legs, {}, -2 * m};
        for (const auto& [key, c] : f.terms()) {
            const LaurentLocal& a = leg_expansion(beta, key[0], false, precision + m);
            const LaurentLocal& b = leg_expansion(beta, key[1], true, precision + m);
            LaurentLocal e = (a * b * c).truncated(precision);
            LegKey rest(key.begin() + 2, key.end());
            add_entry(out.entries, rest, e);
        }
        (void)cfg;
        return out;
    }

    // B(z_leg, q) (pulled = false) or B(z_leg, 1/q) (pulled = true), polar in z_leg at beta.
    Factor bergman_factor(int leg, int beta, bool pulled, int precision)
    {
        const ConfigPtr& cfg = curve_.cfg;
        Point pt = ramification_point(beta);
        Factor out{{leg}, {}, 0};
        // 1/(z - q)^2 = sum_i (i+1) w^i / (z - beta)^{i+2};
        // d(1/q)/(z - 1/q)^2 = -q^{-2} sum_m (m+1) s^m / (z - beta)^{m+2}, s = 1/q - beta.
        LaurentLocal base = LaurentLocal::monomial(cfg, pt, 1, WeightSeries::one(cfg), precision);
        LaurentLocal jac = LaurentLocal::monomial(cfg, pt, 0, WeightSeries::one(cfg), precision);
        if (pulled) {
            base = (ZRational::z_power(cfg, -1) - ZRational::constant(cfg, Rat(beta))).expand(pt, precision - 1);
            jac = (ZRational::z_power(cfg, -2) * Rat(-1)).expand(pt, precision - 1);
        }
        LaurentLocal power = jac;
        for (int i = 0; i < precision; ++i) {
            if (power.is_zero() && power.start() >= precision) break;
            add_entry(out.entries, LegKey{Pole{beta, i + 2}}, (power * Rat(i + 1)).truncated(precision));
            power = (power * base).truncated(precision);
        }
        return out;
    }

    static void add_entry(std::map<LegKey, LaurentLocal>& m, const LegKey& key, const LaurentLocal& e)
    {
        if (e.is_zero()) return;
        auto it = m.find(key);
        if (it == m.end()) m.emplace(key, e);
        else it->second = it->second + e;
    }

    // Tensor product of two factors over disjoint legs.
    static Factor multiply(const Factor& a, const Factor& b, int precision)
    {
        Factor out;
        out.legs = a.legs;
        out.legs.insert(out.legs.end(), b.legs.begin(), b.legs.end());
        std::vector<std::size_t> order(out.legs.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return out.legs[i] < out.legs[j]; });
        std::vector<int> sorted_legs;
        for (auto i : order) sorted_legs.push_back(out.legs[i]);
        out.valuation = a.valuation + b.valuation;
        for (const auto& [ka, ea] : a.entries) {
            for (const auto& [kb, eb] : b.entries) {
                LegKey joined = ka;
                joined.insert(joined.end(), kb.begin(), kb.end());
                LegKey key;
                for (auto i : order) key.push_back(joined[i]);
                add_entry(out.entries, key, (ea * eb).truncated(precision));
            }
        }
        out.legs = std::move(sorted_legs);
        return out;
    }

    // A factor for omega_{g', |legs|+1}(legs, q or 1/q), including the B placement.
    Factor side_factor(int g, const std::vector<int>& legs, int beta, bool pulled, int precision)
    {
        if (g == 0 && legs.size() == 1) return bergman_factor(legs[0], beta, pulled, precision);
        return stored_factor(g, legs, beta, pulled, precision);
    }

    int side_valuation(int g, std::size_t nlegs, int beta)
    {
        if (g == 0 && nlegs == 1) return 0;
        return valuation_bound(g, static_cast<int>(nlegs) + 1, beta, 1);
    }

    OmegaForm compute(int g, int n)
    {
        const ConfigPtr& cfg = curve_.cfg;
        OmegaForm out(g, n, cfg);
        const int m = n - 1; // spectators I = legs 1..m of the output
        const unsigned full = (1u << m) - 1u;

        for (int beta : {1, -1}) {
            const Point pt = ramification_point(beta);
            const int v_den = den_valuation_.at(beta);

            // Valuation lower bound of the whole bracket.
            bool any = false;
            int v_br = 0;
            auto note = [&](int v) {
                v_br = any ? std::min(v_br, v) : v;
                any = true;
            };
            if (g >= 1) {
                if (g == 1 && m == 0) note(-2);
                else if (is_stable(g - 1, m + 2)) note(-2 * omega(g - 1, m + 2).max_order(beta));
            }
            for (int g1 = 0; g1 <= g; ++g1) {
                for (unsigned mask = 0; mask <= full; ++mask) {
                    std::size_t c1 = static_cast<std::size_t>(__builtin_popcount(mask));
                    std::size_t c2 = static_cast<std::size_t>(m) - c1;
                    int g2 = g - g1;
                    if ((g1 == 0 && c1 == 0) || (g2 == 0 && c2 == 0)) continue;
                    note(side_valuation(g1, c1, beta) + side_valuation(g2, c2, beta));
                }
            }
            if (!any) continue;
            const int kmax = v_den - v_br;
            if (kmax < 2) continue;

            // The bracket must be known through w^{-1 - v(K_k)}; v(K_k) >= k - 1 - v_den >= 1 - v_den.
            const int p_br = v_den - 1;
            std::map<LegKey, LaurentLocal> bracket;
            auto absorb = [&](const Factor& f) {
                // reorder to leg indices 1..m (Factor legs are sorted)
                for (const auto& [key, e] : f.entries) add_entry(bracket, key, e.truncated(p_br));
            };

            std::vector<int> all_legs;
            for (int i = 1; i <= m; ++i) all_legs.push_back(i);

            if (g >= 1 && (is_stable(g - 1, m + 2) || (g == 1 && m == 0)))
                absorb(diagonal_factor(g - 1, all_legs, beta, p_br));

            for (int g1 = 0; g1 <= g; ++g1) {
                for (unsigned mask = 0; mask <= full; ++mask) {
                    std::vector<int> l1, l2;
                    for (int i = 0; i < m; ++i) ((mask >> i) & 1u ? l1 : l2).push_back(i + 1);
                    int g2 = g - g1;
                    if ((g1 == 0 && l1.empty()) || (g2 == 0 && l2.empty())) continue;
                    int v1 = side_valuation(g1, l1.size(), beta);
                    int v2 = side_valuation(g2, l2.size(), beta);
                    Factor f1 = side_factor(g1, l1, beta, false, p_br - v2);
                    Factor f2 = side_factor(g2, l2, beta, true, p_br - v1);
                    absorb(multiply(f1, f2, p_br));
                }
            }

            // Kernel series K_k(w) = sign * numerator_k(w) / den(w), needed through w^{-1 - v_br}.
            const int p_k = -v_br;
            KernelParts kp = kernel_parts(curve_, beta, p_k + v_den + kmax + 1, kmax);
            LaurentLocal den_inv = kp.denominator.inverse();
            Rat sign(-1);
            if (beta == -1 && options_.negate_kernel_at_minus_one) sign = -sign;
            for (int k = 2; k <= kmax; ++k) {
                LaurentLocal kern = (kp.numerator[static_cast<std::size_t>(k)] * den_inv * sign).truncated(p_k);
                if (kern.is_zero()) continue;
                for (const auto& [key, e] : bracket) {
                    WeightSeries r = (kern * e).residue_coefficient();
                    if (r.is_zero()) continue;
                    LegKey full_key{Pole{beta, k}};
                    full_key.insert(full_key.end(), key.begin(), key.end());
                    out.add(full_key, r);
                }
            }
            (void)pt;
        }
        return out;
    }

    SpectralCurveData curve_;
    EngineOptions options_;
    ZRational den_;
    std::map<int, int> den_valuation_;
    std::map<std::pair<int, int>, OmegaForm> memo_;
    std::map<std::tuple<int, int, int, bool>, LaurentLocal> leg_cache_;
};

/// Checks omega(z, .)/dx(z) + omega(1/z, .)/dx(1/z) = 0 in the first leg, spectators held symbolic.
inline bool galois_check(const OmegaForm& form, const SpectralCurveData& curve)
{
    if (!EngineCache::is_stable(form.genus(), form.legs()))
        throw ContractViolation("the Galois antisymmetry is only asserted for stable forms");
    const ConfigPtr& cfg = curve.cfg;
    // 1 / (dx/dz) up to the constant gamma factor shared by both terms: z^2 / ((z-1)(z+1)).
    ZRational inv_dx = ZRational::z_power(cfg, 2) * ZRational::polar(cfg, 1, 1) * ZRational::polar(cfg, -1, 1);
    ZRational inv_dx_sigma = inv_dx.involute();
    for (const LegKey& others : form.spectator_keys(0)) {
        ZRational f = form.leg_function(0, others);
        ZRational sum = f * inv_dx + f.involute() * inv_dx_sigma;
        if (!sum.is_zero()) return false;
    }
    return true;
}

/// True when no term has a simple pole (zero residue at both ramification points in every leg).
inline bool residue_free(const OmegaForm& form)
{
    for (const auto& [key, c] : form.terms())
        for (const Pole& p : key)
            if (p.order < 2) return false;
    return true;
}

/// True when the form is invariant under every transposition of legs.
inline bool leg_symmetric(const OmegaForm& form)
{
    for (int i = 0; i < form.legs(); ++i)
        for (int j = i + 1; j < form.legs(); ++j)
            if (!(form.transposed(i, j) == form)) return false;
    return true;
}

/// The literature closed form of bipartite omega_{1,1} in terms of y'(1), y''(1), y'''(1) and
/// y~'(-1). Pole locations, orders and magnitudes agree with the recursion; three signs do not.
inline OmegaForm omega11_closed_form(const SpectralCurveData& curve)
{
    if (!is_bipartite_type(curve.model)) throw ConfigError("the closed form is stated for the bipartite curve");
    const ConfigPtr& cfg = curve.cfg;
    ZRational d1 = curve.y.derivative(), d2 = d1.derivative(), d3 = d2.derivative();
    WeightSeries y1 = d1.value_at(Point::plus_one), y2 = d2.value_at(Point::plus_one), y3 = d3.value_at(Point::plus_one);
    WeightSeries yt = curve.y_tilde.derivative().value_at(Point::minus_one);
    WeightSeries inv_g = curve.gamma_sq.inverse();
    WeightSeries inv_y1 = y1.inverse();
    OmegaForm f(1, 1, cfg);
    f.add({Pole{-1, 2}}, inv_g * yt.inverse() * Rat(1, 16));
    f.add({Pole{1, 4}}, inv_g * inv_y1 * Rat(-1, 16));
    f.add({Pole{1, 3}}, inv_g * inv_y1 * Rat(-1, 16));
    f.add({Pole{1, 2}}, (y1 * Rat(3) + y2 * Rat(3) + y3) * inv_g * inv_y1 * inv_y1 * Rat(1, 96));
    return f;
}

inline std::ostream& operator<<(std::ostream& os, const OmegaForm& v) { return os << v.str(); }

} // namespace trmaps

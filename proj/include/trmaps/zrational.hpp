#pragma once

// Rational functions of the Zhukovsky variable z with WeightSeries
// coefficients, restricted to denominators z^p (z-1)^m (z+1)^q.
//
// Every object the recursion produces for the curves handled here stays in
// this family: poles sit only at the ramification points +1, -1 and at the
// poles 0, infinity of x. Canonical form strips every factor of the
// denominator that divides the numerator, so equal functions compare equal
// structurally.

#include <ostream>
#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"
#include "weight_series.hpp"

namespace trmaps {

namespace detail {

using Poly = std::vector<WeightSeries>; // coefficient i multiplies z^i

inline void trim(Poly& p)
{
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b, const ConfigPtr& cfg)
{
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, WeightSeries::zero(cfg));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

inline Poly poly_add(const Poly& a, const Poly& b, const ConfigPtr& cfg)
{
    Poly out(std::max(a.size(), b.size()), WeightSeries::zero(cfg));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    trim(out);
    return out;
}

/// p * (z + c)^k for a rational constant c.
inline Poly poly_mul_linear_power(const Poly& p, const Rat& c, int k, const ConfigPtr& cfg)
{
    Poly out = p;
    for (int step = 0; step < k; ++step) {
        if (out.empty()) return out;
        Poly next(out.size() + 1, WeightSeries::zero(cfg));
        for (std::size_t i = 0; i < out.size(); ++i) {
            next[i + 1] += out[i];
            next[i] += out[i] * c;
        }
        trim(next);
        out = std::move(next);
    }
    return out;
}

/// p(c) for rational c.
inline WeightSeries poly_eval(const Poly& p, const Rat& c, const ConfigPtr& cfg)
{
    WeightSeries acc = WeightSeries::zero(cfg);
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * c + p[i];
    return acc;
}

/// Synthetic division by (z - c); returns the quotient, assumes p(c) == 0.
inline Poly poly_div_linear(const Poly& p, const Rat& c, const ConfigPtr& cfg)
{
    if (p.empty()) return {};
    Poly q(p.size() - 1, WeightSeries::zero(cfg));
    WeightSeries carry = WeightSeries::zero(cfg);
    for (std::size_t i = p.size(); i-- > 1;) {
        carry = p[i] + carry * c;
        q[i - 1] = carry;
    }
    trim(q);
    return q;
}

/// Coefficients of p(c + w) in powers of w.
inline Poly taylor_shift(const Poly& p, const Rat& c, const ConfigPtr& cfg)
{
    Poly out(p.size(), WeightSeries::zero(cfg));
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].is_zero()) continue;
        Rat cp(1);
        for (std::size_t j = i + 1; j-- > 0;) {
            // term C(i, j) c^{i-j} w^j, iterate j downward so cp = c^{i-j}
            out[j] += p[i] * (Rat(binomial(static_cast<long>(i), static_cast<long>(j))) * cp);
            cp *= c;
        }
    }
    trim(out);
    return out;
}

} // namespace detail

class ZRational {
public:
    ZRational() = default;
    explicit ZRational(ConfigPtr cfg) : cfg_(std::move(cfg)) {}

    /// numerator(z) / (z^pz (z-1)^pm (z+1)^pp), canonicalized.
    ZRational(ConfigPtr cfg, std::vector<WeightSeries> numerator, int pz, int pm, int pp)
        : cfg_(std::move(cfg)), num_(std::move(numerator)), pz_(pz), pm_(pm), pp_(pp)
    {
        if (pz < 0 || pm < 0 || pp < 0) throw ContractViolation("denominator exponents must be >= 0");
        canonicalize();
    }

    static ZRational zero(ConfigPtr cfg) { return ZRational(std::move(cfg)); }

    static ZRational constant(ConfigPtr cfg, const WeightSeries& c) { return ZRational(cfg, {c}, 0, 0, 0); }
    static ZRational constant(ConfigPtr cfg, const Rat& c)
    {
        return ZRational(cfg, {WeightSeries(cfg, c)}, 0, 0, 0);
    }

    /// c * z^e for any integer e.
    static ZRational z_power(ConfigPtr cfg, int e, const WeightSeries& c)
    {
        if (e >= 0) {
            std::vector<WeightSeries> num(static_cast<std::size_t>(e) + 1, WeightSeries::zero(cfg));
            num.back() = c;
            return ZRational(cfg, std::move(num), 0, 0, 0);
        }
        return ZRational(cfg, {c}, -e, 0, 0);
    }
    static ZRational z_power(ConfigPtr cfg, int e) { return z_power(cfg, e, WeightSeries::one(cfg)); }

    /// Laurent polynomial sum_e coeffs[e] z^e.
    static ZRational laurent_polynomial(ConfigPtr cfg, const std::map<int, WeightSeries>& coeffs)
    {
        if (coeffs.empty()) return zero(cfg);
        int lo = std::min(0, coeffs.begin()->first);
        int hi = coeffs.rbegin()->first;
        std::vector<WeightSeries> num(static_cast<std::size_t>(hi - lo) + 1, WeightSeries::zero(cfg));
        for (const auto& [e, c] : coeffs) num[static_cast<std::size_t>(e - lo)] += c;
        return ZRational(cfg, std::move(num), -lo, 0, 0);
    }

    /// 1 / (z - beta)^k with beta = +1 or -1.
    static ZRational polar(ConfigPtr cfg, int beta, int k)
    {
        if (beta == 1) return ZRational(cfg, {WeightSeries::one(cfg)}, 0, k, 0);
        if (beta == -1) return ZRational(cfg, {WeightSeries::one(cfg)}, 0, 0, k);
        throw ContractViolation("polar terms live at +1 or -1");
    }

    /// (z - c)^k for c in {0, +1, -1}, k >= 0.
    static ZRational linear_power(ConfigPtr cfg, int c, int k)
    {
        detail::Poly p{WeightSeries::one(cfg)};
        p = detail::poly_mul_linear_power(p, Rat(-c), k, cfg);
        return ZRational(cfg, std::move(p), 0, 0, 0);
    }

    const ConfigPtr& config() const { return cfg_; }
    const std::vector<WeightSeries>& numerator() const { return num_; }
    int z_exponent() const { return pz_; }
    int minus_exponent() const { return pm_; } // power of (z - 1)
    int plus_exponent() const { return pp_; }  // power of (z + 1)
    bool is_zero() const { return num_.empty(); }
    /// True when the denominator is a pure power of z.
    bool is_laurent_polynomial() const { return pm_ == 0 && pp_ == 0; }

    friend ZRational operator+(const ZRational& a, const ZRational& b)
    {
        a.check_same(b);
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        int pz = std::max(a.pz_, b.pz_), pm = std::max(a.pm_, b.pm_), pp = std::max(a.pp_, b.pp_);
        auto lift = [&](const ZRational& r) {
            detail::Poly p = r.num_;
            p.insert(p.begin(), static_cast<std::size_t>(pz - r.pz_), WeightSeries::zero(r.cfg_));
            p = detail::poly_mul_linear_power(p, Rat(-1), pm - r.pm_, r.cfg_);
            p = detail::poly_mul_linear_power(p, Rat(1), pp - r.pp_, r.cfg_);
            return p;
        };
        return ZRational(a.cfg_, detail::poly_add(lift(a), lift(b), a.cfg_), pz, pm, pp);
    }

    ZRational operator-() const
    {
        ZRational out = *this;
        for (auto& c : out.num_) c = -c;
        return out;
    }

    friend ZRational operator-(const ZRational& a, const ZRational& b) { return a + (-b); }

    friend ZRational operator*(const ZRational& a, const ZRational& b)
    {
        a.check_same(b);
        if (a.is_zero() || b.is_zero()) return zero(a.cfg_);
        return ZRational(a.cfg_, detail::poly_mul(a.num_, b.num_, a.cfg_), a.pz_ + b.pz_, a.pm_ + b.pm_,
                         a.pp_ + b.pp_);
    }

    friend ZRational operator*(const ZRational& a, const WeightSeries& s)
    {
        std::vector<WeightSeries> num = a.num_;
        for (auto& c : num) c *= s;
        return ZRational(a.cfg_, std::move(num), a.pz_, a.pm_, a.pp_);
    }
    friend ZRational operator*(const ZRational& a, const Rat& s) { return a * WeightSeries(a.cfg_, s); }

    ZRational pow(int e) const
    {
        if (e < 0) throw ContractViolation("ZRational::pow needs a nonnegative exponent");
        ZRational out = constant(cfg_, Rat(1));
        for (int i = 0; i < e; ++i) out = out * *this;
        return out;
    }

    bool operator==(const ZRational& b) const
    {
        check_same(b);
        if (pz_ != b.pz_ || pm_ != b.pm_ || pp_ != b.pp_ || num_.size() != b.num_.size()) return false;
        for (std::size_t i = 0; i < num_.size(); ++i)
            if (!(num_[i] == b.num_[i])) return false;
        return true;
    }

    /// a(1/z), the pullback of the coefficient function under z -> 1/z (no Jacobian).
    ZRational involute() const
    {
        if (is_zero()) return *this;
        // P(1/z) = z^{-D} Prev(z), (1/z - 1)^m = (-1)^m (z-1)^m z^{-m}, (1/z + 1)^r = (z+1)^r z^{-r}
        int deg = static_cast<int>(num_.size()) - 1;
        std::vector<WeightSeries> rev(num_.rbegin(), num_.rend());
        if (pm_ % 2 != 0)
            for (auto& c : rev) c = -c;
        int e = pz_ + pm_ + pp_ - deg;
        if (e >= 0) {
            rev.insert(rev.begin(), static_cast<std::size_t>(e), WeightSeries::zero(cfg_));
            return ZRational(cfg_, std::move(rev), 0, pm_, pp_);
        }
        return ZRational(cfg_, std::move(rev), -e, pm_, pp_);
    }

    /// p(z^2); only for Laurent polynomials (the family is not closed under it otherwise).
    ZRational substitute_square() const
    {
        if (!is_laurent_polynomial())
            throw ContractViolation("z -> z^2 substitution needs a Laurent-polynomial ZRational");
        if (is_zero()) return *this;
        std::vector<WeightSeries> num(2 * num_.size() - 1, WeightSeries::zero(cfg_));
        for (std::size_t i = 0; i < num_.size(); ++i) num[2 * i] = num_[i];
        return ZRational(cfg_, std::move(num), 2 * pz_, 0, 0);
    }

    /// d/dz.
    ZRational derivative() const
    {
        if (is_zero()) return *this;
        // (P / D)' with D = z^p (z-1)^m (z+1)^r:
        // P' / D - P (p/z + m/(z-1) + r/(z+1)) / D
        std::vector<WeightSeries> dp;
        for (std::size_t i = 1; i < num_.size(); ++i) dp.push_back(num_[i] * Rat(static_cast<long>(i)));
        ZRational out(cfg_, dp, pz_, pm_, pp_);
        ZRational base(cfg_, num_, pz_, pm_, pp_);
        // canonicalization may have lowered exponents; use the stored ones
        if (pz_ > 0) out = out - base * z_power(cfg_, -1) * Rat(pz_);
        if (pm_ > 0) out = out - base * polar(cfg_, 1, 1) * Rat(pm_);
        if (pp_ > 0) out = out - base * polar(cfg_, -1, 1) * Rat(pp_);
        return out;
    }

    /// Local expansion at c with every coefficient through w^order (u^order at infinity).
    LaurentLocal expand(Point c, int order) const
    {
        const int precision = order + 1;
        if (is_zero()) return LaurentLocal::zero(cfg_, c, precision);
        detail::Poly q;
        int shift = 0;
        std::vector<std::vector<Rat>> factors;
        Rat scale(1);
        auto terms_needed = [&](int s) { return std::max(0, precision - s); };
        switch (c) {
        case Point::plus_one: {
            shift = -pm_;
            int len = terms_needed(shift);
            q = detail::taylor_shift(num_, Rat(1), cfg_);
            factors.push_back(binomial_series(pz_, Rat(1), len));
            factors.push_back(binomial_series(pp_, Rat(1, 2), len));
            scale = rat_pow(Rat(2), -pp_);
            break;
        }
        case Point::minus_one: {
            shift = -pp_;
            int len = terms_needed(shift);
            q = detail::taylor_shift(num_, Rat(-1), cfg_);
            factors.push_back(binomial_series(pz_, Rat(-1), len));
            factors.push_back(binomial_series(pm_, Rat(-1, 2), len));
            scale = rat_pow(Rat(-1), pz_) * rat_pow(Rat(-2), -pm_);
            break;
        }
        case Point::zero: {
            shift = -pz_;
            int len = terms_needed(shift);
            q = num_;
            factors.push_back(binomial_series(pm_, Rat(-1), len));
            factors.push_back(binomial_series(pp_, Rat(1), len));
            scale = rat_pow(Rat(-1), pm_);
            break;
        }
        case Point::infinity: {
            int deg = static_cast<int>(num_.size()) - 1;
            shift = pz_ + pm_ + pp_ - deg;
            int len = terms_needed(shift);
            q.assign(num_.rbegin(), num_.rend());
            factors.push_back(binomial_series(pm_, Rat(-1), len));
            factors.push_back(binomial_series(pp_, Rat(1), len));
            break;
        }
        }
        const int len = terms_needed(shift);
        if (len == 0) return LaurentLocal::zero(cfg_, c, precision);
        // Multiply the rational-coefficient factors first, then the numerator.
        std::vector<Rat> rat(static_cast<std::size_t>(len), Rat(0));
        rat[0] = scale;
        for (const auto& f : factors) {
            std::vector<Rat> next(static_cast<std::size_t>(len), Rat(0));
            for (int i = 0; i < len; ++i) {
                if (rat[static_cast<std::size_t>(i)] == 0) continue;
                for (int j = 0; i + j < len; ++j)
                    next[static_cast<std::size_t>(i + j)] += rat[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(j)];
            }
            rat = std::move(next);
        }
        std::vector<WeightSeries> out(static_cast<std::size_t>(len), WeightSeries::zero(cfg_));
        for (int i = 0; i < len && i < static_cast<int>(q.size()); ++i) {
            if (q[static_cast<std::size_t>(i)].is_zero()) continue;
            for (int j = 0; i + j < len; ++j)
                if (rat[static_cast<std::size_t>(j)] != 0)
                    out[static_cast<std::size_t>(i + j)] += q[static_cast<std::size_t>(i)] * rat[static_cast<std::size_t>(j)];
        }
        return LaurentLocal(cfg_, c, shift, std::move(out));
    }

    /// Residue of the 1-form a(z) dz at c.
    WeightSeries residue(Point c) const
    {
        if (c == Point::infinity) return -expand(c, 1).coefficient(1);
        return expand(c, -1).coefficient(-1);
    }

    /// Order of vanishing at c (negative for a pole); for c = infinity, in powers of 1/z.
    int valuation(Point c) const
    {
        if (is_zero()) throw ContractViolation("valuation of the zero function");
        int deg = static_cast<int>(num_.size()) - 1;
        int bound = deg + 1;
        if (c == Point::infinity) bound = pz_ + pm_ + pp_ + 1;
        LaurentLocal e = expand(c, bound);
        if (e.is_zero()) throw ContractViolation("nonzero function expanded to zero");
        return e.valuation();
    }

    /// Pole order at c (0 when regular).
    int pole_order(Point c) const { return is_zero() ? 0 : std::max(0, -valuation(c)); }

    /// Value at a finite point where the function is regular.
    WeightSeries value_at(Point c) const
    {
        if (c == Point::infinity) {
            LaurentLocal e = expand(c, 0);
            if (e.start() < 0) throw ContractViolation("value at infinity requested at a pole");
            return e.coefficient(0);
        }
        LaurentLocal e = expand(c, 0);
        if (e.start() < 0) throw ContractViolation("value requested at a pole " + to_string(c));
        return e.coefficient(0);
    }

    std::string str() const
    {
        if (is_zero()) return "0";
        std::string n;
        for (std::size_t i = 0; i < num_.size(); ++i) {
            if (num_[i].is_zero()) continue;
            if (!n.empty()) n += " + ";
            n += "(" + num_[i].str() + ")";
            if (i == 1) n += "*z";
            if (i > 1) n += "*z^" + std::to_string(i);
        }
        std::string d;
        auto factor = [&](const std::string& base, int e) {
            if (e == 0) return;
            if (!d.empty()) d += "*";
            d += base;
            if (e > 1) d += "^" + std::to_string(e);
        };
        factor("z", pz_);
        factor("(z-1)", pm_);
        factor("(z+1)", pp_);
        if (d.empty()) return n;
        return "[" + n + "] / [" + d + "]";
    }

private:
    void check_same(const ZRational& b) const
    {
        if (cfg_ != b.cfg_ && !(*cfg_ == *b.cfg_))
            throw ConfigError("ZRational operands over different weight configurations");
    }

    void canonicalize()
    {
        detail::trim(num_);
        if (num_.empty()) {
            pz_ = pm_ = pp_ = 0;
            return;
        }
        while (pz_ > 0 && num_.front().is_zero()) {
            num_.erase(num_.begin());
            --pz_;
        }
        while (pm_ > 0 && detail::poly_eval(num_, Rat(1), cfg_).is_zero()) {
            num_ = detail::poly_div_linear(num_, Rat(1), cfg_);
            --pm_;
        }
        while (pp_ > 0 && detail::poly_eval(num_, Rat(-1), cfg_).is_zero()) {
            num_ = detail::poly_div_linear(num_, Rat(-1), cfg_);
            --pp_;
        }
    }

    ConfigPtr cfg_;
    std::vector<WeightSeries> num_;
    int pz_ = 0, pm_ = 0, pp_ = 0;
};

inline ZRational zr_involute(const ZRational& a) { return a.involute(); }
inline LaurentLocal zr_expand(const ZRational& a, Point c, int order) { return a.expand(c, order); }
inline WeightSeries zr_residue(const ZRational& a, Point c) { return a.residue(c); }

inline std::ostream& operator<<(std::ostream& os, const ZRational& v) { return os << v.str(); }

} // namespace trmaps

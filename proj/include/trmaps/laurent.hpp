#pragma once

// Truncated Laurent expansions at one of the points {+1, -1, 0, infinity}.
//
// A LaurentLocal stores coefficients of w^start, w^{start+1}, ... with
// w = z - c (w = 1/z at infinity) and remembers its precision: every
// exponent >= precision() is unknown. Arithmetic propagates precision and
// reading an unknown coefficient throws OrderDeficitError.

#include <ostream>
#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "weight_series.hpp"

namespace trmaps {

enum class Point { plus_one, minus_one, zero, infinity };

inline std::string to_string(Point p)
{
    switch (p) {
    case Point::plus_one: return "+1";
    case Point::minus_one: return "-1";
    case Point::zero: return "0";
    case Point::infinity: return "inf";
    }
    return "?";
}

/// Value of a finite expansion point (+1, -1 or 0).
inline int point_value(Point p)
{
    switch (p) {
    case Point::plus_one: return 1;
    case Point::minus_one: return -1;
    case Point::zero: return 0;
    case Point::infinity: break;
    }
    throw ContractViolation("infinity has no finite value");
}

inline Point ramification_point(int beta)
{
    if (beta == 1) return Point::plus_one;
    if (beta == -1) return Point::minus_one;
    throw ContractViolation("ramification points are +1 and -1");
}

class LaurentLocal {
public:
    LaurentLocal(ConfigPtr cfg, Point point, int start, std::vector<WeightSeries> coeffs)
        : cfg_(std::move(cfg)), point_(point), start_(start), coeffs_(std::move(coeffs))
    {
        normalize();
    }

    /// Identically zero up to O(w^precision).
    static LaurentLocal zero(ConfigPtr cfg, Point point, int precision)
    {
        return LaurentLocal(std::move(cfg), point, precision, {});
    }

    /// c * w^exponent, known up to O(w^precision).
    static LaurentLocal monomial(ConfigPtr cfg, Point point, int exponent, const WeightSeries& c, int precision)
    {
        if (exponent >= precision) return zero(cfg, point, precision);
        std::vector<WeightSeries> v(static_cast<std::size_t>(precision - exponent), WeightSeries::zero(cfg));
        v[0] = c;
        return LaurentLocal(std::move(cfg), point, exponent, std::move(v));
    }

    /// Rational-coefficient series sum_{i} coeffs[i] w^{start+i}.
    static LaurentLocal from_rationals(ConfigPtr cfg, Point point, int start, const std::vector<Rat>& coeffs)
    {
        std::vector<WeightSeries> v;
        v.reserve(coeffs.size());
        for (const auto& c : coeffs) v.emplace_back(cfg, c);
        return LaurentLocal(std::move(cfg), point, start, std::move(v));
    }

    const ConfigPtr& config() const { return cfg_; }
    Point point() const { return point_; }
    /// Exponent of the first stored coefficient (the valuation unless zero).
    int start() const { return start_; }
    /// First exponent whose coefficient is unknown.
    int precision() const { return start_ + static_cast<int>(coeffs_.size()); }
    bool is_zero() const { return coeffs_.empty(); }
    int valuation() const { return start_; }
    const std::vector<WeightSeries>& coefficients() const { return coeffs_; }

    WeightSeries coefficient(int exponent) const
    {
        if (exponent >= precision())
            throw OrderDeficitError("coefficient of w^" + std::to_string(exponent) + " requested at " +
                                    to_string(point_) + " but expansion is only known below w^" +
                                    std::to_string(precision()));
        if (exponent < start_) return WeightSeries::zero(cfg_);
        return coeffs_[static_cast<std::size_t>(exponent - start_)];
    }

    /// Coefficient of w^{-1}.
    WeightSeries residue_coefficient() const { return coefficient(-1); }

    /// Drop everything at or above `precision`.
    LaurentLocal truncated(int precision) const
    {
        if (precision >= this->precision()) return *this;
        if (precision <= start_) return zero(cfg_, point_, precision);
        std::vector<WeightSeries> v(coeffs_.begin(), coeffs_.begin() + (precision - start_));
        return LaurentLocal(cfg_, point_, start_, std::move(v));
    }

    LaurentLocal operator-() const
    {
        LaurentLocal out = *this;
        for (auto& c : out.coeffs_) c = -c;
        return out;
    }

    friend LaurentLocal operator+(const LaurentLocal& a, const LaurentLocal& b)
    {
        a.check_compatible(b);
        int prec = std::min(a.precision(), b.precision());
        int start = std::min(a.start_, b.start_);
        if (start >= prec) return zero(a.cfg_, a.point_, prec);
        std::vector<WeightSeries> v(static_cast<std::size_t>(prec - start), WeightSeries::zero(a.cfg_));
        for (int e = start; e < prec; ++e) {
            auto& slot = v[static_cast<std::size_t>(e - start)];
            if (e >= a.start_) slot += a.coeffs_[static_cast<std::size_t>(e - a.start_)];
            if (e >= b.start_) slot += b.coeffs_[static_cast<std::size_t>(e - b.start_)];
        }
        return LaurentLocal(a.cfg_, a.point_, start, std::move(v));
    }
    friend LaurentLocal operator-(const LaurentLocal& a, const LaurentLocal& b) { return a + (-b); }

    /// Product; precision is min(prec_a + val_b, prec_b + val_a), so no known coefficient is lost.
    friend LaurentLocal operator*(const LaurentLocal& a, const LaurentLocal& b)
    {
        a.check_compatible(b);
        int prec = std::min(a.precision() + b.start_, b.precision() + a.start_);
        int start = a.start_ + b.start_;
        if (a.is_zero() || b.is_zero()) return zero(a.cfg_, a.point_, prec);
        std::size_t len = std::min(a.coeffs_.size(), b.coeffs_.size());
        std::vector<WeightSeries> v(len, WeightSeries::zero(a.cfg_));
        for (std::size_t i = 0; i < len; ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; i + j < len; ++j) {
                if (b.coeffs_[j].is_zero()) continue;
                v[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return LaurentLocal(a.cfg_, a.point_, start, std::move(v));
    }

    friend LaurentLocal operator*(const LaurentLocal& a, const WeightSeries& s)
    {
        LaurentLocal out = a;
        for (auto& c : out.coeffs_) c *= s;
        out.normalize();
        return out;
    }
    friend LaurentLocal operator*(const LaurentLocal& a, const Rat& s)
    {
        LaurentLocal out = a;
        for (auto& c : out.coeffs_) c *= s;
        out.normalize();
        return out;
    }

    /// Multiplicative inverse; the leading coefficient must be a unit.
    LaurentLocal inverse() const
    {
        if (is_zero()) throw NonUnitError("cannot invert an expansion that is zero to its known order");
        const WeightSeries& lead = coeffs_.front();
        if (!lead.is_unit())
            throw NonUnitError("leading Laurent coefficient " + lead.str() + " is not a unit");
        WeightSeries lead_inv = lead.inverse();
        std::size_t len = coeffs_.size();
        std::vector<WeightSeries> v(len, WeightSeries::zero(cfg_));
        v[0] = lead_inv;
        for (std::size_t i = 1; i < len; ++i) {
            WeightSeries acc = WeightSeries::zero(cfg_);
            for (std::size_t j = 1; j <= i; ++j)
                if (!coeffs_[j].is_zero() && !v[i - j].is_zero()) acc += coeffs_[j] * v[i - j];
            v[i] = -(acc * lead_inv);
        }
        return LaurentLocal(cfg_, point_, -start_, std::move(v));
    }

    LaurentLocal pow(int e) const
    {
        if (e < 0) return inverse().pow(-e);
        LaurentLocal out = monomial(cfg_, point_, 0, WeightSeries::one(cfg_), precision() - start_);
        for (int i = 0; i < e; ++i) out = out * *this;
        return out;
    }

    /// Exact equality on the common known range.
    bool agrees_with(const LaurentLocal& b) const
    {
        check_compatible(b);
        int prec = std::min(precision(), b.precision());
        for (int e = std::min(start_, b.start_); e < prec; ++e)
            if (!(coefficient(e) == b.coefficient(e))) return false;
        return true;
    }

    std::string str() const
    {
        std::string var = point_ == Point::infinity ? "u" : "w";
        std::string out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + coeffs_[i].str() + ")*" + var + "^" + std::to_string(start_ + static_cast<int>(i));
        }
        if (out.empty()) out = "0";
        return out + " + O(" + var + "^" + std::to_string(precision()) + ")";
    }

private:
    void normalize()
    {
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
            start_ += static_cast<int>(lead);
        }
    }

    void check_compatible(const LaurentLocal& b) const
    {
        if (point_ != b.point_) throw ContractViolation("Laurent expansions at different points");
        if (cfg_ != b.cfg_ && !(*cfg_ == *b.cfg_))
            throw ConfigError("Laurent expansions over different weight configurations");
    }

    ConfigPtr cfg_;
    Point point_;
    int start_;
    std::vector<WeightSeries> coeffs_;
};

/// Linear combination sum_i weights[i] * series[i] at a common point.
inline LaurentLocal laurent_combine(const std::vector<LaurentLocal>& series, const std::vector<WeightSeries>& weights)
{
    if (series.empty()) throw ContractViolation("laurent_combine needs at least one series");
    if (series.size() != weights.size()) throw ContractViolation("laurent_combine: one weight per series");
    LaurentLocal out = series[0] * weights[0];
    for (std::size_t i = 1; i < series.size(); ++i) out = out + series[i] * weights[i];
    return out;
}

inline LaurentLocal laurent_mul(const LaurentLocal& a, const LaurentLocal& b) { return a * b; }

/// Series of (1 + s w)^{-k} through w^{len-1}; k may be any integer.
inline std::vector<Rat> binomial_series(int k, const Rat& s, int len)
{
    std::vector<Rat> out(static_cast<std::size_t>(std::max(len, 0)));
    Rat c(1), sp(1);
    for (int j = 0; j < len; ++j) {
        out[static_cast<std::size_t>(j)] = c * sp;
        // binom(-k, j+1) = binom(-k, j) * (-k - j) / (j + 1)
        c *= Rat(-k - j) / Rat(j + 1);
        sp *= s;
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const LaurentLocal& v) { return os << v.str(); }

} // namespace trmaps

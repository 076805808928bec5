#pragma once

// Truncated multivariate power series over Q in the face weights t_{2k}.
//
// A series lives in Q[[t_{2k_1}, ..., t_{2k_r}]] modulo monomials of total
// degree > N. Storage is sparse: exponent vector -> nonzero coefficient.

#include <ostream>
#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace trmaps {

/// Active face weights and truncation order.
///
/// `degrees` holds the face degrees 2k of the active weights t_{2k}; `scales`
/// optionally rescales each formal variable (t4=1/2 means the weight is
/// (1/2) times the formal variable t4).
class WeightConfig {
public:
    WeightConfig() = default;

    WeightConfig(std::vector<int> degrees, int trunc, std::vector<Rat> scales = {})
        : degrees_(std::move(degrees)), scales_(std::move(scales)), trunc_(trunc)
    {
        if (trunc_ < 0) throw ConfigError("truncation order must be >= 0");
        if (scales_.empty()) scales_.assign(degrees_.size(), Rat(1));
        if (scales_.size() != degrees_.size())
            throw ConfigError("one scale per active weight is required");
        for (std::size_t i = 0; i < degrees_.size(); ++i) {
            int d = degrees_[i];
            if (d <= 0 || d % 2 != 0)
                throw ConfigError("weight index t" + std::to_string(d) + " must be even and positive");
            for (std::size_t j = 0; j < i; ++j)
                if (degrees_[j] == d) throw ConfigError("duplicate weight t" + std::to_string(d));
        }
    }

    const std::vector<int>& degrees() const { return degrees_; }
    const std::vector<Rat>& scales() const { return scales_; }
    int trunc() const { return trunc_; }
    std::size_t size() const { return degrees_.size(); }
    bool empty() const { return degrees_.empty(); }

    /// Position of t_{degree} among the active weights, or -1.
    int index_of(int degree) const
    {
        auto it = std::find(degrees_.begin(), degrees_.end(), degree);
        return it == degrees_.end() ? -1 : static_cast<int>(it - degrees_.begin());
    }

    /// Largest k with t_{2k} active (0 when no weights are active).
    int max_half_degree() const
    {
        int d = 0;
        for (int deg : degrees_) d = std::max(d, deg / 2);
        return d;
    }

    bool operator==(const WeightConfig&) const = default;

private:
    std::vector<int> degrees_;
    std::vector<Rat> scales_;
    int trunc_ = 0;
};

using ConfigPtr = std::shared_ptr<const WeightConfig>;

inline ConfigPtr make_config(std::vector<int> degrees, int trunc, std::vector<Rat> scales = {})
{
    return std::make_shared<const WeightConfig>(std::move(degrees), trunc, std::move(scales));
}

/// Exponent vector, one entry per active weight.
using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

/// Graded order: total degree first, then lexicographic.
struct GradedLess {
    bool operator()(const Monomial& a, const Monomial& b) const
    {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

class WeightSeries {
public:
    using Terms = std::map<Monomial, Rat, GradedLess>;

    WeightSeries() = default;
    explicit WeightSeries(ConfigPtr cfg) : cfg_(std::move(cfg)) {}
    WeightSeries(ConfigPtr cfg, const Rat& c) : cfg_(std::move(cfg))
    {
        if (c != 0) terms_.emplace(Monomial(cfg_->size(), 0), c);
    }

    static WeightSeries zero(ConfigPtr cfg) { return WeightSeries(std::move(cfg)); }
    static WeightSeries one(ConfigPtr cfg) { return WeightSeries(std::move(cfg), Rat(1)); }

    /// The formal variable at position `index`, without its scale.
    static WeightSeries variable(ConfigPtr cfg, std::size_t index)
    {
        WeightSeries s(cfg);
        if (cfg->trunc() >= 1) {
            Monomial m(cfg->size(), 0);
            m.at(index) = 1;
            s.terms_.emplace(std::move(m), Rat(1));
        }
        return s;
    }

    /// The face weight t_{degree} as used in formulas (scale times variable).
    static WeightSeries weight(ConfigPtr cfg, int degree)
    {
        int idx = cfg->index_of(degree);
        if (idx < 0) return zero(cfg);
        Rat scale = cfg->scales()[static_cast<std::size_t>(idx)];
        return variable(cfg, static_cast<std::size_t>(idx)) * scale;
    }

    static WeightSeries from_terms(ConfigPtr cfg, const std::vector<std::pair<Monomial, Rat>>& terms)
    {
        WeightSeries s(cfg);
        for (const auto& [m, c] : terms) s.add_term(m, c);
        return s;
    }

    const ConfigPtr& config() const { return cfg_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rat constant_term() const
    {
        if (terms_.empty()) return Rat(0);
        const auto& [m, c] = *terms_.begin();
        return total_degree(m) == 0 ? c : Rat(0);
    }

    bool is_unit() const { return constant_term() != 0; }

    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }

    Rat coefficient(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    /// Coefficient of t^power for single-weight configurations.
    Rat coefficient(int power) const
    {
        if (cfg_->size() != 1) throw ConfigError("univariate coefficient access needs exactly one weight");
        return coefficient(Monomial{power});
    }

    /// Coefficients of t^0 .. t^N for single-weight configurations (constant only when empty).
    std::vector<Rat> dense() const
    {
        if (cfg_->size() == 0) return {constant_term()};
        if (cfg_->size() != 1) throw ConfigError("dense view needs at most one weight");
        std::vector<Rat> out(static_cast<std::size_t>(cfg_->trunc()) + 1, Rat(0));
        for (const auto& [m, c] : terms_) out[static_cast<std::size_t>(m[0])] = c;
        return out;
    }

    void add_term(const Monomial& m, const Rat& c)
    {
        if (c == 0 || total_degree(m) > cfg_->trunc()) return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    WeightSeries& operator+=(const WeightSeries& b)
    {
        check_same(b);
        for (const auto& [m, c] : b.terms_) add_term(m, c);
        return *this;
    }
    WeightSeries& operator-=(const WeightSeries& b)
    {
        check_same(b);
        for (const auto& [m, c] : b.terms_) add_term(m, -c);
        return *this;
    }
    WeightSeries& operator*=(const Rat& s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend WeightSeries operator+(WeightSeries a, const WeightSeries& b) { return a += b; }
    friend WeightSeries operator-(WeightSeries a, const WeightSeries& b) { return a -= b; }
    friend WeightSeries operator*(WeightSeries a, const Rat& s) { return a *= s; }
    friend WeightSeries operator*(const Rat& s, WeightSeries a) { return a *= s; }
    WeightSeries operator-() const { return *this * Rat(-1); }

    friend WeightSeries operator*(const WeightSeries& a, const WeightSeries& b)
    {
        a.check_same(b);
        if (a.is_constant()) return b * a.constant_term();
        if (b.is_constant()) return a * b.constant_term();
        WeightSeries out(a.cfg_);
        const int n = a.cfg_->trunc();
        Monomial m(a.cfg_->size());
        for (const auto& [ma, ca] : a.terms_) {
            int da = total_degree(ma);
            for (const auto& [mb, cb] : b.terms_) {
                // Terms are graded, so once the degree budget is exceeded we can stop.
                if (da + total_degree(mb) > n) break;
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                out.add_term(m, ca * cb);
            }
        }
        return out;
    }
    WeightSeries& operator*=(const WeightSeries& b) { return *this = *this * b; }

    bool operator==(const WeightSeries& b) const
    {
        check_same(b);
        return terms_ == b.terms_;
    }

    WeightSeries pow(int e) const
    {
        if (e < 0) return inverse().pow(-e);
        WeightSeries out = one(cfg_), base = *this;
        while (e > 0) {
            if (e & 1) out *= base;
            base *= base;
            e >>= 1;
        }
        return out;
    }

    /// Multiplicative inverse; requires a unit (nonzero constant term).
    WeightSeries inverse() const
    {
        Rat c0 = constant_term();
        if (c0 == 0) throw NonUnitError("series with zero constant term is not invertible");
        // a = c0 (1 + r) with r nilpotent modulo degree > N.
        WeightSeries r = *this * (Rat(1) / c0) - one(cfg_);
        WeightSeries out = one(cfg_), power = one(cfg_);
        for (int i = 1; i <= cfg_->trunc(); ++i) {
            power *= -r;
            if (power.is_zero()) break;
            out += power;
        }
        return out * (Rat(1) / c0);
    }

    /// Square root on the branch with constant term one.
    WeightSeries sqrt() const
    {
        if (constant_term() != 1)
            throw UnsupportedBranchError("square root is only supported for constant term 1");
        WeightSeries r = *this - one(cfg_);
        WeightSeries out = one(cfg_), power = one(cfg_);
        Rat coef(1); // binom(1/2, i)
        for (int i = 1; i <= cfg_->trunc(); ++i) {
            coef *= (Rat(1, 2) - Rat(i - 1)) / Rat(i);
            power *= r;
            if (power.is_zero()) break;
            out += power * coef;
        }
        return out;
    }

    /// Re-express under a smaller (or equal) truncation order.
    WeightSeries truncated(int order) const
    {
        if (order > cfg_->trunc()) throw ConfigError("cannot raise the truncation order");
        auto cfg = make_config(cfg_->degrees(), order, cfg_->scales());
        WeightSeries out(cfg);
        for (const auto& [m, c] : terms_)
            if (total_degree(m) <= order) out.terms_.emplace(m, c);
        return out;
    }

    /// Human-readable form, e.g. "1 + 3*t4 + 18*t4^2".
    std::string str() const
    {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rat mag = abs(c);
            std::string mono;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += "t" + std::to_string(cfg_->degrees()[i]);
                if (m[i] > 1) mono += "^" + std::to_string(m[i]);
            }
            std::string piece;
            if (mono.empty()) piece = mag.get_str();
            else if (mag == 1) piece = mono;
            else piece = mag.get_str() + "*" + mono;
            if (first) out += (c < 0 ? "-" : "") + piece;
            else out += (c < 0 ? " - " : " + ") + piece;
            first = false;
        }
        return out;
    }

    void check_same(const WeightSeries& b) const
    {
        if (cfg_ == b.cfg_) return;
        if (!cfg_ || !b.cfg_ || !(*cfg_ == *b.cfg_))
            throw ConfigError("weight series built over different weight configurations");
    }

private:
    ConfigPtr cfg_;
    Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const WeightSeries& v) { return os << v.str(); }

} // namespace trmaps

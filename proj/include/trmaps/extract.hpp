#pragma once

// Count extraction from the forms omega_{g,n}.
//
// Stable topologies use the residue at infinity leg by leg,
//
//     T^{(g)}_{2l_1..2l_n} = (-1)^n Res_{z_i -> inf} prod_i X(z_i)^{l_i} omega_{g,n},
//
// with X = x for bipartite maps and X = x^2 for ordinary maps. On the polar
// basis this factorizes into per-leg residues Res X^l dz / (z - beta)^k.
//
// The unstable topologies are conventions of this library, anchored on
// combinatorial data rather than derived:
//   disk:     T^{(0)}_{2l}       = +Res_{z -> inf} X(z)^l omega_{0,1}
//   cylinder: T^{(0)}_{2l1,2l2}  = Res Res X1^{l1} X2^{l2} W2 dz1 dz2,
//             W2 = B - dx1 dx2 / (x1 - x2)^2 = dz1 dz2 / (z1 z2 - 1)^2.
// The disk sign is fixed by the Catalan numbers and the first column of the
// quadrangulation table, the cylinder by exhaustive gluing enumeration.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "curve.hpp"
#include "errors.hpp"
#include "omega.hpp"
#include "zrational.hpp"

namespace trmaps {

struct CountTable {
    Model model = Model::bipartite;
    int genus = 0;
    /// Half boundary lengths l_i (the boundary lengths are 2 l_i).
    std::vector<int> half_lengths;
    WeightSeries value;

    std::vector<int> boundary_lengths() const
    {
        std::vector<int> out;
        for (int l : half_lengths) out.push_back(2 * l);
        return out;
    }

    /// Every coefficient is a nonnegative integer.
    bool is_valid_count() const
    {
        for (const auto& [m, c] : value.terms())
            if (c < 0 || !is_integer(c)) return false;
        return true;
    }
};

/// Lowest total weight degree at which a count can be nonzero, from
/// V - E + F = 2 - 2g with E = sum l_i + sum k m_k and F = n + sum m_k.
/// A bipartite map with at least one edge needs two vertices.
/// Returns nullopt when the active weights can never satisfy the constraint.
inline std::optional<int> minimal_weight_degree(Model model, const WeightConfig& cfg, int genus,
                                                const std::vector<int>& half_lengths)
{
    int n = static_cast<int>(half_lengths.size());
    int base = 2 - 2 * genus - n;
    for (int l : half_lengths) base += l;
    int need = (is_bipartite_type(model) ? 2 : 1) - base; // needed from sum (k-1) m_k
    if (need <= 0) return 0;
    int step = cfg.max_half_degree() - 1;
    if (step <= 0) return std::nullopt;
    return (need + step - 1) / step;
}

/// Vertex count implied by Euler's relation for a monomial of the count series.
inline int implied_vertices(const WeightConfig& cfg, int genus, const std::vector<int>& half_lengths,
                            const Monomial& m)
{
    int n = static_cast<int>(half_lengths.size());
    int v = 2 - 2 * genus - n;
    for (int l : half_lengths) v += l;
    for (std::size_t i = 0; i < m.size(); ++i) v += (cfg.degrees()[i] / 2 - 1) * m[i];
    return v;
}

class Extractor {
public:
    explicit Extractor(EngineCache& cache) : cache_(cache), base_(cache.curve().extraction_base()) {}

    EngineCache& cache() { return cache_; }

    /// Res_{z -> inf} X(z)^l dz / (z - beta)^k.
    const WeightSeries& leg_residue(const Pole& p, int l)
    {
        auto key = std::make_tuple(p.beta, p.order, l);
        if (auto it = leg_res_.find(key); it != leg_res_.end()) return it->second;
        ZRational f = power(l) * ZRational::polar(cache_.config(), p.beta, p.order);
        return leg_res_.emplace(key, f.residue(Point::infinity)).first->second;
    }

    CountTable counts_stable(int g, const std::vector<int>& half_lengths)
    {
        int n = static_cast<int>(half_lengths.size());
        if (!EngineCache::is_stable(g, n))
            throw ContractViolation("counts for (g, n) = (" + std::to_string(g) + ", " + std::to_string(n) +
                                    ") are unstable; use counts_disk or counts_cylinder");
        check_lengths(half_lengths);
        const OmegaForm& form = cache_.omega(g, n);
        WeightSeries acc = WeightSeries::zero(cache_.config());
        for (const auto& [key, c] : form.terms()) {
            WeightSeries term = c;
            for (int i = 0; i < n && !term.is_zero(); ++i)
                term *= leg_residue(key[static_cast<std::size_t>(i)], half_lengths[static_cast<std::size_t>(i)]);
            acc += term;
        }
        if (n % 2 != 0) acc = -acc;
        return {cache_.model(), g, half_lengths, acc};
    }

    CountTable counts_disk(int l)
    {
        check_lengths({l});
        WeightSeries v = (power(l) * cache_.curve().omega01()).residue(Point::infinity);
        return {cache_.model(), 0, {l}, v};
    }

    CountTable counts_cylinder(int l1, int l2)
    {
        check_lengths({l1, l2});
        // 1/(z1 z2 - 1)^2 = sum_m (m+1) (z1 z2)^{-m-2} at infinity; both residues contribute a sign -1.
        const ZRational& a = power(l1);
        const ZRational& b = power(l2);
        WeightSeries acc = WeightSeries::zero(cache_.config());
        int top = std::min(degree(a), degree(b));
        for (int m = 0; m + 1 <= top; ++m)
            acc += coefficient(a, m + 1) * coefficient(b, m + 1) * Rat(m + 1);
        return {cache_.model(), 0, {l1, l2}, acc};
    }

    /// Dispatches on the topology.
    CountTable counts(int g, const std::vector<int>& half_lengths)
    {
        if (g == 0 && half_lengths.size() == 1) return counts_disk(half_lengths[0]);
        if (g == 0 && half_lengths.size() == 2) return counts_cylinder(half_lengths[0], half_lengths[1]);
        return counts_stable(g, half_lengths);
    }

private:
    static void check_lengths(const std::vector<int>& half_lengths)
    {
        for (int l : half_lengths)
            if (l < 1) throw ContractViolation("boundary half-lengths must be >= 1");
    }

    const ZRational& power(int l)
    {
        auto it = powers_.find(l);
        if (it != powers_.end()) return it->second;
        return powers_.emplace(l, base_.pow(l)).first->second;
    }

    // Highest z-exponent of a Laurent polynomial.
    static int degree(const ZRational& p)
    {
        return static_cast<int>(p.numerator().size()) - 1 - p.z_exponent();
    }

    static WeightSeries coefficient(const ZRational& p, int e)
    {
        int idx = e + p.z_exponent();
        if (idx < 0 || idx >= static_cast<int>(p.numerator().size())) return WeightSeries::zero(p.config());
        return p.numerator()[static_cast<std::size_t>(idx)];
    }

    EngineCache& cache_;
    ZRational base_;
    std::map<int, ZRational> powers_;
    std::map<std::tuple<int, int, int>, WeightSeries> leg_res_;
};

/// Closed form W2 = 1/(z1 z2 - 1)^2 evaluated at rational points (test surface).
inline Rat cylinder_kernel(const Rat& z1, const Rat& z2)
{
    Rat d = z1 * z2 - 1;
    return 1 / (d * d);
}

/// B/(dz1 dz2) - x'(z1) x'(z2)/(x(z1) - x(z2))^2 for x = c0 + c1 (z + 1/z) at rational points.
inline Rat cylinder_kernel_from_curve(const Rat& c0, const Rat& c1, const Rat& z1, const Rat& z2)
{
    auto x = [&](const Rat& z) -> Rat { return c0 + c1 * (z + 1 / z); };
    auto dx = [&](const Rat& z) -> Rat { return c1 * (1 - 1 / (z * z)); };
    Rat dz = z1 - z2, dxv = x(z1) - x(z2);
    return 1 / (dz * dz) - dx(z1) * dx(z2) / (dxv * dxv);
}

// ---------------------------------------------------------------------------
// Golden data: quadrangulation counts (t4 only) through t4^5 and OEIS prefixes.

struct GoldenColumn {
    Model model;
    int genus;
    std::vector<long> coefficients; // t4^0 .. t4^5
};

inline const std::vector<GoldenColumn>& golden_table()
{
    static const std::vector<GoldenColumn> table{
        {Model::bipartite, 0, {1, 2, 9, 54, 378, 2916}},
        {Model::bipartite, 1, {0, 0, 1, 20, 307, 4280}},
        {Model::bipartite, 2, {0, 0, 0, 0, 21, 966}},
        {Model::ordinary, 0, {1, 2, 9, 54, 378, 2916}},
        {Model::ordinary, 1, {0, 1, 15, 198, 2511, 31266}},
        {Model::ordinary, 2, {0, 0, 45, 2007, 56646, 1290087}},
    };
    return table;
}

/// A006300 (rooted genus-1 maps by edges) and A006301 (genus 2), leading terms.
inline const std::vector<long>& oeis_a006300() { static const std::vector<long> v{1, 20, 307, 4280}; return v; }
inline const std::vector<long>& oeis_a006301() { static const std::vector<long> v{21, 966}; return v; }
inline const std::vector<long>& catalan_numbers() { static const std::vector<long> v{1, 2, 5, 14, 42}; return v; }

/// One-face genus-1 gluings of the 2n-gon: epsilon_1(2) = 1, epsilon_1(3) = 10.
inline const std::map<int, long>& harer_zagier_genus1() { static const std::map<int, long> v{{2, 1}, {3, 10}}; return v; }

inline std::vector<long> nonzero_coefficients(const WeightSeries& s)
{
    std::vector<long> out;
    for (const Rat& c : s.dense())
        if (c != 0) out.push_back(c.get_num().get_si());
    return out;
}

/// Asserts all 36 quadrangulation table entries and the OEIS prefixes.
/// Both caches must be t4-only with N >= 5.
inline CheckReport golden_verify(Extractor& ordinary, Extractor& bipartite)
{
    CheckReport r;
    for (Extractor* e : {&ordinary, &bipartite}) {
        const WeightConfig& cfg = *e->cache().config();
        if (cfg.degrees() != std::vector<int>{4} || cfg.trunc() < 5 || cfg.scales()[0] != 1)
            throw ContractViolation("golden data needs the t4-only model with N >= 5");
    }
    std::map<std::pair<Model, int>, WeightSeries> columns;
    for (const auto& col : golden_table()) {
        Extractor& e = col.model == Model::ordinary ? ordinary : bipartite;
        WeightSeries s = e.counts(col.genus, {1}).value;
        columns.emplace(std::make_pair(col.model, col.genus), s);
        std::vector<Rat> got = s.dense();
        std::string tag = std::string(col.model == Model::ordinary ? "T" : "T~") + "_2^(" +
                          std::to_string(col.genus) + ")";
        for (std::size_t p = 0; p < col.coefficients.size(); ++p) {
            bool ok = got[p] == col.coefficients[p];
            r.add("table " + tag + " t4^" + std::to_string(p), ok,
                  "expected " + std::to_string(col.coefficients[p]) + ", got " + got[p].get_str());
        }
    }
    auto oeis = [&](const std::string& name, const WeightSeries& s, const std::vector<long>& want) {
        std::vector<long> got = nonzero_coefficients(s);
        bool ok = got == want;
        std::string detail;
        for (long v : got) detail += std::to_string(v) + " ";
        r.add(name, ok, "nonzero coefficients: " + detail);
    };
    oeis("OEIS A006300 prefix (genus 1)", columns.at({Model::bipartite, 1}), oeis_a006300());
    oeis("OEIS A006301 prefix (genus 2)", columns.at({Model::bipartite, 2}), oeis_a006301());
    return r;
}

/// Genus-0 factor 2^{n-1} between ordinary and bipartite counts, and the
/// coefficient-wise inequality bipartite <= ordinary in higher genus.
inline CheckReport bipartite_ordinary_check(Extractor& ordinary, Extractor& bipartite, int genus,
                                            const std::vector<int>& half_lengths)
{
    if (!(*ordinary.cache().config() == *bipartite.cache().config()))
        throw ConfigError("bipartite/ordinary comparison needs identical weight configurations");
    CheckReport r;
    WeightSeries o = ordinary.counts(genus, half_lengths).value;
    WeightSeries b = bipartite.counts(genus, half_lengths).value;
    std::string tag = "(g=" + std::to_string(genus) + ", l=";
    for (std::size_t i = 0; i < half_lengths.size(); ++i)
        tag += (i ? "," : "") + std::to_string(half_lengths[i]);
    tag += ")";
    if (genus == 0) {
        Rat factor = rat_pow(Rat(2), static_cast<long>(half_lengths.size()) - 1);
        bool ok = b * factor == o;
        r.add("2^(n-1) T~ = T " + tag, ok, ok ? "" : "T~ = " + b.str() + " ; T = " + o.str());
    } else {
        bool ok = true;
        for (const auto& [m, c] : b.terms())
            if (c > o.coefficient(m)) ok = false;
        r.add("T~ <= T coefficient-wise " + tag, ok, ok ? "" : "T~ = " + b.str() + " ; T = " + o.str());
    }
    return r;
}

} // namespace trmaps

#pragma once

// The invariant suite behind `trmaps verify`.

#include <set>
#include <string>
#include <vector>

#include "curve.hpp"
#include "extract.hpp"
#include "omega.hpp"

namespace trmaps {

struct VerifyOptions {
    int max_genus = 2;
    int max_legs = 3;
    /// Truncation for the golden, curve and count suites (t4 only).
    int trunc = 5;
    /// Structural invariants are checked for stable (g, n) with 2g + n - 2 <= this.
    int structure_level = 4;
    int structure_trunc = 3;
    /// Largest half boundary length in the count suites.
    int max_half_length = 3;
    EngineOptions engine;
    /// Empty means every suite.
    std::set<std::string> suites;

    bool wants(const std::string& s) const { return suites.empty() || suites.count(s) != 0; }
};

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> v{"curve", "structure", "genus0", "golden", "anchors", "counts"};
    return v;
}

struct SuiteReport {
    std::string suite;
    CheckReport report;
};

namespace detail {

inline std::vector<std::vector<int>> length_tuples(int n, int max_l)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(n), 1);
    if (n == 0) return {{}};
    while (true) {
        out.push_back(cur);
        int i = n - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == max_l) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(i)];
    }
    return out; // nondecreasing tuples
}

inline std::string topology(int g, int n)
{
    return "(g=" + std::to_string(g) + ", n=" + std::to_string(n) + ")";
}

} // namespace detail

/// Leg symmetry, Galois antisymmetry, zero residues and pole-order bounds.
inline CheckReport structure_checks(EngineCache& cache, int level)
{
    CheckReport r;
    const bool bip = is_bipartite_type(cache.model());
    const std::string tag = to_string(cache.model()) + " ";
    for (int g = 0; 2 * g - 1 <= level; ++g) {
        for (int n = 1; 2 * g + n - 2 <= level; ++n) {
            if (!EngineCache::is_stable(g, n)) continue;
            const OmegaForm& f = cache.omega(g, n);
            std::string t = tag + detail::topology(g, n);
            r.add("leg symmetry " + t, leg_symmetric(f));
            r.add("Galois antisymmetry " + t, galois_check(f, cache.curve()));
            r.add("zero residue at +-1 " + t, residue_free(f));
            int bound_plus = 6 * g - 4 + 2 * n;
            int at_plus = f.max_order(1), at_minus = f.max_order(-1);
            if (bip) {
                r.add("pole order at -1 <= 2g " + t, at_minus <= 2 * g, "order " + std::to_string(at_minus));
                r.add("pole order at +1 <= 6g-4+2n " + t, at_plus <= bound_plus, "order " + std::to_string(at_plus));
                if (g == 1 && n == 1)
                    r.add("pole orders attained for (1,1) " + tag, at_minus == 2 && at_plus == 4,
                          "orders " + std::to_string(at_plus) + " at +1, " + std::to_string(at_minus) + " at -1");
            } else {
                r.add("pole orders <= 6g-4+2n " + t, at_plus <= bound_plus && at_minus <= bound_plus);
            }
        }
    }
    return r;
}

/// Integrality, nonnegativity, leg-order independence and the Euler support constraint.
inline CheckReport count_checks(Extractor& e, int max_genus, int max_legs, int max_l)
{
    CheckReport r;
    const WeightConfig& cfg = *e.cache().config();
    const Model model = e.cache().model();
    for (int g = 0; g <= max_genus; ++g) {
        for (int n = 1; n <= max_legs; ++n) {
            for (const auto& ls : detail::length_tuples(n, max_l)) {
                CountTable t = e.counts(g, ls);
                std::string tag = to_string(model) + " (g=" + std::to_string(g) + ", l=";
                for (std::size_t i = 0; i < ls.size(); ++i) tag += (i ? "," : "") + std::to_string(ls[i]);
                tag += ")";
                r.add("nonnegative integers " + tag, t.is_valid_count(), t.value.str());
                bool support = true;
                int need = is_bipartite_type(model) ? 2 : 1;
                for (const auto& [m, c] : t.value.terms())
                    if (implied_vertices(cfg, g, ls, m) < need) support = false;
                r.add("Euler support " + tag, support, t.value.str());
                if (n >= 2 && ls.front() != ls.back()) {
                    std::vector<int> rev(ls.rbegin(), ls.rend());
                    r.add("leg-order independence " + tag, e.counts(g, rev).value == t.value);
                }
            }
        }
    }
    return r;
}

/// Unstable and one-face anchors at t = 0.
inline CheckReport anchor_checks()
{
    CheckReport r;
    auto cfg = make_config({}, 0);
    EngineCache bip(build_curve(Model::bipartite, cfg)), ord(build_curve(Model::ordinary, cfg));
    Extractor eb(bip), eo(ord);
    const auto& cat = catalan_numbers();
    for (std::size_t l = 1; l <= cat.size(); ++l) {
        Rat got = eb.counts_disk(static_cast<int>(l)).value.constant_term();
        r.add("disk T~_" + std::to_string(2 * l) + "(t=0) = Catalan", got == cat[l - 1],
              "got " + got.get_str() + ", expected " + std::to_string(cat[l - 1]));
    }
    Rat cyl = eb.counts_cylinder(1, 1).value.constant_term();
    r.add("cylinder T~_{2,2}(t=0) = 1 (gluing enumeration)", cyl == 1, "got " + cyl.get_str());
    Rat cyl_o = eo.counts_cylinder(1, 1).value.constant_term();
    r.add("cylinder T_{2,2}(t=0) = 2", cyl_o == 2, "got " + cyl_o.get_str());
    for (const auto& [l, v] : harer_zagier_genus1()) {
        Rat got = eo.counts_stable(1, {l}).value.constant_term();
        r.add("Harer-Zagier T^(1)_" + std::to_string(2 * l) + "(t=0)", got == v,
              "got " + got.get_str() + ", expected " + std::to_string(v));
    }
    Rat hex = eb.counts_stable(1, {3}).value.constant_term();
    r.add("hexagon torus gluing T~^(1)_6(t=0) = 1", hex == 1, "got " + hex.get_str());
    return r;
}

inline std::vector<SuiteReport> run_verification(const VerifyOptions& opt)
{
    std::vector<SuiteReport> out;
    auto cfg = make_config({4}, opt.trunc);
    EngineCache ord(build_curve(Model::ordinary, cfg), opt.engine);
    EngineCache bip(build_curve(Model::bipartite, cfg), opt.engine);
    Extractor eo(ord), eb(bip);

    if (opt.wants("curve")) out.push_back({"curve", check_curve_relations(ord.curve(), bip.curve(), opt.trunc / 2)});

    if (opt.wants("structure")) {
        auto scfg = make_config({4}, opt.structure_trunc);
        CheckReport r;
        for (Model m : {Model::bipartite, Model::ordinary}) {
            EngineCache c(build_curve(m, scfg), opt.engine);
            r.append(structure_checks(c, opt.structure_level));
        }
        out.push_back({"structure", r});
    }

    if (opt.wants("genus0")) {
        auto gcfg = make_config({4}, std::min(opt.trunc, 3));
        EngineCache o3(build_curve(Model::ordinary, gcfg), opt.engine), b3(build_curve(Model::bipartite, gcfg), opt.engine);
        Extractor e3o(o3), e3b(b3);
        CheckReport r;
        for (int g = 0; g <= opt.max_genus; ++g)
            for (int n = 1; n <= opt.max_legs; ++n)
                for (const auto& ls : detail::length_tuples(n, opt.max_half_length))
                    r.append(bipartite_ordinary_check(e3o, e3b, g, ls));
        out.push_back({"genus0", r});
    }

    if (opt.wants("golden")) out.push_back({"golden", golden_verify(eo, eb)});
    if (opt.wants("anchors")) out.push_back({"anchors", anchor_checks()});

    if (opt.wants("counts")) {
        CheckReport r;
        r.append(count_checks(eb, opt.max_genus, opt.max_legs, opt.max_half_length));
        r.append(count_checks(eo, opt.max_genus, opt.max_legs, opt.max_half_length));
        out.push_back({"counts", r});
    }
    return out;
}

} // namespace trmaps

// trmaps: spectral curves, correlators and map counts from the command line.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <trmaps/trmaps.hpp>
#include <trmaps/verify.hpp>

using nlohmann::json;
using namespace trmaps;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string model = "bipartite";
    std::vector<std::string> weights;
    int trunc = 0;
    std::string format = "text";
    std::string out;
};

// "t4" or "t4=1/2"; sorted by degree so the same request always gives the same config.
ConfigPtr parse_weights(const std::vector<std::string>& specs, int trunc)
{
    std::vector<std::pair<int, Rat>> parsed;
    for (const std::string& s : specs) {
        if (s.size() < 2 || s[0] != 't') throw ConfigError("weight '" + s + "' must look like t4 or t4=1/2");
        auto eq = s.find('=');
        std::string idx = s.substr(1, eq == std::string::npos ? std::string::npos : eq - 1);
        if (idx.empty() || !std::all_of(idx.begin(), idx.end(), ::isdigit))
            throw ConfigError("weight '" + s + "' has no numeric index");
        int degree = std::stoi(idx);
        Rat scale = eq == std::string::npos ? Rat(1) : parse_rat(s.substr(eq + 1));
        if (scale == 0) throw ConfigError("weight '" + s + "' has zero scale");
        parsed.emplace_back(degree, scale);
    }
    std::sort(parsed.begin(), parsed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<int> degrees;
    std::vector<Rat> scales;
    for (const auto& [d, c] : parsed) {
        degrees.push_back(d);
        scales.push_back(c);
    }
    return make_config(std::move(degrees), trunc, std::move(scales));
}

json weights_json(const WeightConfig& cfg)
{
    json out = json::array();
    for (std::size_t i = 0; i < cfg.size(); ++i)
        out.push_back({{"name", "t" + std::to_string(cfg.degrees()[i])}, {"scale", cfg.scales()[i].get_str()}});
    return out;
}

json series_json(const WeightSeries& s)
{
    json out = json::array();
    for (const auto& [m, c] : s.terms()) out.push_back({{"exponents", m}, {"coefficient", c.get_str()}});
    return out;
}

void emit(const Common& c, const std::string& text)
{
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw UsageError("cannot open '" + c.out + "' for writing");
    f << text;
}

void check_format(const std::string& f, std::initializer_list<const char*> allowed)
{
    for (const char* a : allowed)
        if (f == a) return;
    throw UsageError("unsupported --format '" + f + "'");
}

int cmd_curve(const Common& c)
{
    check_format(c.format, {"text", "json"});
    auto cfg = parse_weights(c.weights, c.trunc);
    SpectralCurveData curve = build_curve(parse_model(c.model), cfg);
    if (c.format == "text") {
        emit(c, describe(curve));
        return 0;
    }
    json u = json::array();
    for (const auto& s : curve.u_over_gamma) u.push_back(series_json(s));
    json j{{"model", to_string(curve.model)},
           {"weights", weights_json(*cfg)},
           {"trunc", cfg->trunc()},
           {"gamma_sq", series_json(curve.gamma_sq)},
           {"u_over_gamma", u},
           {"gamma_odd", curve.gamma_odd},
           {"x", curve.x.str()},
           {"y", curve.y.str()},
           {"a", series_json(curve.a_pt)},
           {"b", series_json(curve.b_pt)}};
    emit(c, j.dump(2) + "\n");
    return 0;
}

int cmd_omega(const Common& c, int g, int n, bool compare)
{
    check_format(c.format, {"text", "json"});
    auto cfg = parse_weights(c.weights, c.trunc);
    EngineCache cache(build_curve(parse_model(c.model), cfg));
    const OmegaForm& f = cache.omega(g, n);
    std::optional<OmegaForm> ref;
    if (compare) {
        if (g != 1 || n != 1 || !is_bipartite_type(cache.model()))
            throw UsageError("--compare is available for the bipartite (1,1) form only");
        ref = omega11_closed_form(cache.curve());
    }
    if (c.format == "text") {
        std::string text = f.str() + "\n";
        if (ref) text += "closed form:\n" + ref->str() + "\n";
        emit(c, text);
        return 0;
    }
    auto terms = [](const OmegaForm& form) {
        json t = json::array();
        for (const auto& [key, s] : form.terms()) {
            json poles = json::array();
            for (const Pole& p : key) poles.push_back({{"beta", p.beta}, {"order", p.order}});
            t.push_back({{"poles", poles}, {"series", series_json(s)}});
        }
        return t;
    };
    json j{{"model", to_string(cache.model())}, {"g", g}, {"n", n}, {"weights", weights_json(*cfg)},
           {"trunc", cfg->trunc()}, {"terms", terms(f)}};
    if (ref) j["closed_form"] = terms(*ref);
    emit(c, j.dump(2) + "\n");
    return 0;
}

std::vector<int> half_lengths_of(const std::vector<int>& lengths)
{
    if (lengths.empty()) throw UsageError("--lengths needs at least one boundary length");
    std::vector<int> out;
    for (int l : lengths) {
        if (l < 2 || l % 2 != 0) throw UsageError("boundary lengths must be even and >= 2, got " + std::to_string(l));
        out.push_back(l / 2);
    }
    return out;
}

// All monomials of total degree <= trunc in the series order.
std::vector<Monomial> monomials(const WeightConfig& cfg)
{
    std::vector<Monomial> out{Monomial(cfg.size(), 0)};
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        std::vector<Monomial> next;
        for (const Monomial& m : out)
            for (int e = 0; total_degree(m) + e <= cfg.trunc(); ++e) {
                Monomial k = m;
                k[i] = e;
                next.push_back(k);
            }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end(), GradedLess{});
    return out;
}

int cmd_counts(const Common& c, const std::vector<int>& genera, const std::vector<int>& lengths)
{
    check_format(c.format, {"text", "json", "csv"});
    auto cfg = parse_weights(c.weights, c.trunc);
    Model model = parse_model(c.model);
    std::vector<int> half = half_lengths_of(lengths);
    for (int g : genera) {
        if (g < 0) throw UsageError("genus must be >= 0");
        auto need = minimal_weight_degree(model, *cfg, g, half);
        if (need && *need > cfg->trunc())
            throw UsageError("truncation N=" + std::to_string(cfg->trunc()) + " is below the first possible nonzero order " +
                             std::to_string(*need) + " for g=" + std::to_string(g) + "; raise --trunc");
    }
    EngineCache cache(build_curve(model, cfg));
    Extractor ex(cache);
    std::vector<CountTable> tables;
    for (int g : genera) tables.push_back(ex.counts(g, half));

    auto label = [&](const CountTable& t) {
        std::string s = "g=" + std::to_string(t.genus) + " lengths=";
        for (std::size_t i = 0; i < lengths.size(); ++i) s += (i ? "," : "") + std::to_string(lengths[i]);
        return s;
    };

    std::ostringstream os;
    if (c.format == "text") {
        for (const auto& t : tables) os << to_string(model) << " " << label(t) << ": " << t.value.str() << "\n";
    } else if (c.format == "json") {
        json arr = json::array();
        for (const auto& t : tables)
            arr.push_back({{"model", to_string(model)}, {"genus", t.genus}, {"lengths", lengths},
                           {"weights", weights_json(*cfg)}, {"trunc", cfg->trunc()}, {"series", series_json(t.value)}});
        os << (arr.size() == 1 ? arr[0] : arr).dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < cfg->size(); ++i) os << "t" << cfg->degrees()[i] << ",";
        for (std::size_t i = 0; i < tables.size(); ++i) os << (i ? "," : "") << '"' << label(tables[i]) << '"';
        os << "\n";
        for (const Monomial& m : monomials(*cfg)) {
            for (int e : m) os << e << ",";
            for (std::size_t i = 0; i < tables.size(); ++i) os << (i ? "," : "") << tables[i].value.coefficient(m).get_str();
            os << "\n";
        }
    }
    emit(c, os.str());
    return 0;
}

int cmd_verify(const Common& c, VerifyOptions opt, const std::vector<std::string>& suites)
{
    check_format(c.format, {"text", "json"});
    for (const std::string& s : suites) {
        if (s == "all") continue;
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw UsageError("unknown suite '" + s + "'");
        opt.suites.insert(s);
    }
    if (opt.trunc < 5) throw UsageError("verify needs --trunc >= 5 for the tabulated data");
    std::vector<SuiteReport> reports = run_verification(opt);
    int total = 0, failed = 0;
    json js = json::array();
    std::ostringstream text;
    for (const auto& sr : reports) {
        json checks = json::array();
        for (const auto& ch : sr.report.checks) {
            ++total;
            if (!ch.passed) ++failed;
            checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
            text << (ch.passed ? "PASS " : "FAIL ") << sr.suite << ": " << ch.name;
            if (!ch.passed && !ch.detail.empty()) text << " [" << ch.detail << "]";
            text << "\n";
        }
        js.push_back({{"suite", sr.suite}, {"passed", sr.report.all_passed()}, {"checks", checks}});
    }
    if (c.format == "json") {
        json j{{"passed", failed == 0}, {"total", total}, {"failed", failed}, {"fault_injected", opt.engine.negate_kernel_at_minus_one},
               {"suites", js}};
        emit(c, j.dump(2) + "\n");
    } else {
        text << failed << " of " << total << " checks failed\n";
        emit(c, text.str());
    }
    return failed == 0 ? 0 : 1;
}

void add_common(CLI::App* app, Common& c, bool weights = true)
{
    app->add_option("--model", c.model, "ordinary, bipartite or dessins")->capture_default_str();
    if (weights) app->add_option("--weights", c.weights, "active weights, e.g. t4 or t4=1/2 t6")->delimiter(',');
    app->add_option("--trunc", c.trunc, "truncation order N in the weights")->capture_default_str();
    app->add_option("--format", c.format, "output format")->capture_default_str();
    app->add_option("--out", c.out, "write to this file instead of stdout");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Topological recursion for ordinary and bipartite maps"};
    app.require_subcommand(1);

    Common c_curve, c_omega, c_counts, c_verify;
    auto* curve = app.add_subcommand("curve", "print the spectral curve");
    add_common(curve, c_curve);

    auto* omega = app.add_subcommand("omega", "print omega_{g,n} in the polar basis");
    add_common(omega, c_omega);
    int og = 1, on = 1;
    bool compare = false;
    omega->add_option("--g", og, "genus")->capture_default_str();
    omega->add_option("--n", on, "number of legs")->capture_default_str();
    omega->add_flag("--compare", compare, "also print the literature closed form (bipartite (1,1))");

    auto* counts = app.add_subcommand("counts", "generating series of map counts");
    add_common(counts, c_counts);
    std::vector<int> genera{0}, lengths;
    counts->add_option("--g", genera, "genus (several give several table columns)")->delimiter(',');
    counts->add_option("--lengths", lengths, "boundary lengths (even)")->delimiter(',')->required();

    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    c_verify.format = "json";
    verify->add_option("--format", c_verify.format, "json or text")->capture_default_str();
    verify->add_option("--out", c_verify.out, "write the report to this file");
    VerifyOptions vopt;
    std::vector<std::string> suites{"all"};
    verify->add_option("--suite", suites, "all, curve, structure, genus0, golden, anchors, counts")->delimiter(',');
    verify->add_option("--max-genus", vopt.max_genus)->capture_default_str();
    verify->add_option("--max-legs", vopt.max_legs)->capture_default_str();
    verify->add_option("--trunc", vopt.trunc)->capture_default_str();
    verify->add_option("--structure-level", vopt.structure_level, "checks stable (g,n) with 2g+n-2 <= this")->capture_default_str();
    verify->add_option("--structure-trunc", vopt.structure_trunc)->capture_default_str();
    verify->add_option("--max-half-length", vopt.max_half_length)->capture_default_str();
    verify->add_flag("--inject-fault", vopt.engine.negate_kernel_at_minus_one, "negate the kernel at z = -1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*curve) return cmd_curve(c_curve);
        if (*omega) return cmd_omega(c_omega, og, on, compare);
        if (*counts) return cmd_counts(c_counts, genera, lengths);
        if (*verify) return cmd_verify(c_verify, vopt, suites);
    } catch (const std::exception& e) {
        // Bad flags, invalid weights, unstable requests and short truncations are all usage errors.
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

#include "volrigid/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "volrigid/census.hpp"
#include "volrigid/cusplattice.hpp"
#include "volrigid/format.hpp"
#include "volrigid/mutant.hpp"
#include "volrigid/nzvolume.hpp"
#include "volrigid/primeseq.hpp"
#include "volrigid/quadform.hpp"

namespace volrigid::cli {

namespace {

using nlohmann::json;

class usage_error : public std::invalid_argument
{
    public:
    using std::invalid_argument::invalid_argument;
};

// A command result: the JSON document plus a flat table for csv/table output.
struct Output
{
    json doc;
    std::vector<std::string> columns;
    std::vector<json> rows;
};

struct Config
{
    std::string format = "json";
    unsigned shards = 1;
    std::string cap;
};

double num(double v)
{
    return round_significant(v);
}

json complex_json(Complex z)
{
    return {{"re", num(z.real())}, {"im", num(z.imag())}};
}

std::string cell(const json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_boolean())
        return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer())
        return v.dump();
    if (v.is_number())
        return format_number(v.get<double>());
    if (v.is_array()) {
        std::string s;
        for (const auto& e : v) {
            if (!s.empty())
                s += ';';
            s += cell(e);
        }
        return s;
    }
    if (v.is_null())
        return "";
    return v.dump();
}

void render(const Output& o, const std::string& format, std::ostream& out)
{
    if (format == "json") {
        out << o.doc.dump(2) << '\n';
        return;
    }
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : o.rows) {
        std::vector<std::string> line;
        for (const auto& c : o.columns)
            line.push_back(r.contains(c) ? cell(r.at(c)) : "");
        cells.push_back(std::move(line));
    }
    if (format == "csv") {
        auto quote = [](const std::string& f) {
            if (f.find_first_of(",\"\n") == std::string::npos)
                return f;
            std::string q = "\"";
            for (char ch : f)
                q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            return q + "\"";
        };
        auto emit = [&](const std::vector<std::string>& line) {
            for (std::size_t i = 0; i < line.size(); ++i)
                out << (i ? "," : "") << quote(line[i]);
            out << '\n';
        };
        emit(o.columns);
        for (const auto& line : cells)
            emit(line);
        return;
    }
    std::vector<std::size_t> width;
    for (const auto& c : o.columns)
        width.push_back(c.size());
    for (const auto& line : cells)
        for (std::size_t i = 0; i < line.size(); ++i)
            width[i] = std::max(width[i], line[i].size());
    auto emit = [&](const std::vector<std::string>& line) {
        std::string s;
        for (std::size_t i = 0; i < line.size(); ++i) {
            s += line[i];
            if (i + 1 < line.size())
                s += std::string(width[i] - line[i].size() + 2, ' ');
        }
        out << s << '\n';
    };
    emit(o.columns);
    std::vector<std::string> rule;
    for (auto w : width)
        rule.push_back(std::string(w, '-'));
    emit(rule);
    for (const auto& line : cells)
        emit(line);
}

Output single_row(json doc, std::vector<std::string> columns)
{
    Output o{doc, std::move(columns), {}};
    o.rows.push_back(std::move(doc));
    return o;
}

BigInt parse_cap(const std::string& text, const char* source)
{
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw usage_error(std::string(source) + " must be a positive integer, got '" + text + "'");
    BigInt v(text);
    if (v <= 0)
        throw usage_error(std::string(source) + " must be positive");
    return v;
}

BigInt resolve_cap(const Config& cfg)
{
    if (!cfg.cap.empty())
        return parse_cap(cfg.cap, "--cap");
    if (const char* env = std::getenv("VOLRIGID_CAP"))
        return parse_cap(env, "VOLRIGID_CAP");
    return ProgressionOptions{}.cap;
}

std::vector<Int> parse_int_list(const std::string& text)
{
    std::vector<Int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw usage_error("expected a comma-separated list of integers, got '" + text + "'");
        }
    }
    return out;
}

IntQuadForm form_arg(const std::string& text)
{
    try {
        return IntQuadForm::parse(text);
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }
}

template <typename F>
auto name_arg(F&& lookup)
{
    try {
        return lookup();
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }
}

// ---- qf ---------------------------------------------------------------

Output qf_values(const std::string& form_text, Int limit)
{
    auto vs = primitive_value_set(form_arg(form_text), limit);
    Output o;
    o.doc = {{"form", vs.form.to_string()}, {"limit", limit}, {"values", vs.values}};
    o.columns = {"value"};
    for (Int v : vs.values)
        o.rows.push_back({{"value", v}});
    return o;
}

Output qf_gap(const std::string& form_text, Int q0, Int limit)
{
    auto f = form_arg(form_text);
    Int gap = two_sided_gap(f, q0, limit);
    return single_row({{"form", f.to_string()}, {"q0", q0}, {"limit", limit}, {"gap", gap}},
                      {"form", "q0", "limit", "gap"});
}

Output qf_reps(const std::string& form_text, Int m, bool all)
{
    auto f = form_arg(form_text);
    auto reps = representations(f, m, !all);
    Output o;
    json list = json::array();
    for (const auto& r : reps) {
        json row = {{"x", r.x}, {"y", r.y}, {"primitive", r.primitive}};
        list.push_back(row);
        o.rows.push_back(row);
    }
    o.doc = {{"form", f.to_string()},
             {"value", m},
             {"primitive_only", !all},
             {"count", reps.size()},
             {"representations", list}};
    o.columns = {"x", "y", "primitive"};
    return o;
}

// ---- prime-seq --------------------------------------------------------

Output prime_seq(const Config& cfg, const std::string& family_text, Int g, const std::string& primes_text,
                 std::size_t count, bool progress, std::ostream& err)
{
    GapPrimeSpec spec;
    spec.family = name_arg([&] { return parse_family(family_text); });
    spec.g = g;
    if (g < 1)
        throw usage_error("-g must be positive");
    spec.avoid_primes = primes_text.empty() ? default_avoid_primes(spec.family, g) : parse_int_list(primes_text);
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }

    ProgressionOptions options;
    options.cap = resolve_cap(cfg);
    options.shards = cfg.shards;
    if (progress)
        options.progress = [&err](std::uint64_t n) { err << "prime-seq: " << n << " candidates scanned\n"; };
    auto seq = gap_prime_sequence(spec, count, options);
    if (seq.truncated)
        err << "prime-seq: cap " << options.cap << " reached with " << seq.witnesses.size() << " of " << count
            << " witnesses\n";

    Output o;
    json witnesses = json::array();
    for (const auto& w : seq.witnesses) {
        json item = {{"value", w.value},
                     {"x", w.representation.x},
                     {"y", w.representation.y},
                     {"verified_gap", w.verified_gap},
                     {"conditions", w.conditions}};
        witnesses.push_back(item);
        json row = item;
        for (const auto& [id, ok] : w.conditions)
            row[id] = ok;
        o.rows.push_back(row);
    }
    o.doc = {{"family", to_string(spec.family)},
             {"g", spec.g},
             {"avoid_primes", spec.avoid_primes},
             {"progression", {{"residue", seq.progression.residue.str()}, {"modulus", seq.progression.modulus.str()}}},
             {"cap", options.cap.str()},
             {"requested", count},
             {"truncated", seq.truncated},
             {"candidates_scanned", seq.candidates_scanned},
             {"witnesses", witnesses}};
    o.columns = {"value", "x", "y", "verified_gap", "i", "ii", "iii"};
    return o;
}

// ---- nz ---------------------------------------------------------------

Output nz_eval(const std::string& name, Int p, Int q)
{
    if (p == 0 && q == 0)
        throw std::domain_error("nz eval: (p, q) must not be (0, 0)");
    auto series = name_arg([&] { return builtin_series(name); });
    double pd = static_cast<double>(p), qd = static_cast<double>(q);
    auto terms = delta_v_explicit_terms(name, pd, qd);
    auto polar = polar_coordinates(series, pd, qd);
    return single_row({{"manifold", name},
                       {"p", p},
                       {"q", q},
                       {"generic", num(delta_v_generic(series, pd, qd))},
                       {"explicit", num(terms.value())},
                       {"leading", num(terms.leading)},
                       {"correction", num(terms.correction)},
                       {"r", num(polar.r)},
                       {"theta", num(polar.theta)},
                       {"polar", num(delta_v_polar(name, polar.r, polar.theta))}},
                      {"manifold", "p", "q", "generic", "explicit", "leading", "correction", "r", "theta", "polar"});
}

double rel_err(double x, double y)
{
    double s = std::max(std::abs(x), std::abs(y));
    return s == 0.0 ? 0.0 : std::abs(x - y) / s;
}

Output nz_check(int points, std::uint64_t seed, double tolerance)
{
    if (points < 1)
        throw usage_error("--points must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Int> dp(-1000, 1000), dq(-288, 288);
    std::vector<std::pair<double, double>> lattice;
    while (static_cast<int>(lattice.size()) < points) {
        Int p = dp(rng), q = dq(rng);
        if ((p == 0 && q == 0) || p * p + 12 * q * q > 1'000'000)
            continue;
        lattice.emplace_back(static_cast<double>(p), static_cast<double>(q));
    }
    std::uniform_real_distribution<double> ur(-1000.0, 1000.0);
    std::vector<std::pair<double, double>> reals;
    while (static_cast<int>(reals.size()) < points) {
        double a = ur(rng), b = ur(rng);
        if (a * a + a * b + b * b >= 100.0)
            reals.emplace_back(a, b);
    }

    std::vector<std::pair<std::string, double>> results;
    for (const auto& name : builtin_series_names()) {
        auto s = builtin_series(name);
        double ge = 0.0, pc = 0.0;
        for (auto [p, q] : lattice) {
            double ex = delta_v_explicit(name, p, q);
            ge = std::max(ge, rel_err(delta_v_generic(s, p, q), ex));
            auto pol = polar_coordinates(s, p, q);
            pc = std::max(pc, rel_err(delta_v_polar(name, pol.r, pol.theta), ex));
        }
        results.emplace_back("generic_explicit/" + name, ge);
        results.emplace_back("polar_cartesian/" + name, pc);
    }
    double s1 = 0.0, s2 = 0.0;
    for (auto [a, b] : reals) {
        s1 = std::max(s1, rel_err(delta_v_explicit("m003", a, b), delta_v_explicit("m004", 2 * a + b, b / 2)));
        s2 = std::max(s2, rel_err(delta_v_explicit("m129", a, b), delta_v_explicit("WL", a + 2 * b, -b)));
    }
    results.emplace_back("substitution/m003_m004", s1);
    results.emplace_back("substitution/m129_WL", s2);

    Output o;
    json checks = json::array();
    bool all = true;
    for (const auto& [name, err] : results) {
        bool pass = err <= tolerance;
        all = all && pass;
        json row = {{"name", name}, {"max_rel_error", num(err)}, {"pass", pass}};
        checks.push_back(row);
        o.rows.push_back(row);
    }
    o.doc = {{"points", points}, {"seed", seed}, {"tolerance", tolerance}, {"checks", checks}, {"pass", all}};
    o.columns = {"name", "max_rel_error", "pass"};
    return o;
}

Output nz_wl(double radius, int samples)
{
    auto c = wl_series_coefficients(radius, samples);
    Output o;
    o.doc = {{"radius", radius},
             {"samples", samples},
             {"c1", complex_json(c.c1)},
             {"c2", complex_json(c.c2)},
             {"c3", complex_json(c.c3)}};
    o.columns = {"coefficient", "re", "im"};
    for (const char* k : {"c1", "c2", "c3"})
        o.rows.push_back({{"coefficient", k}, {"re", o.doc[k]["re"]}, {"im", o.doc[k]["im"]}});
    return o;
}

Output nz_constants()
{
    using std::numbers::pi;
    Output o;
    o.doc = {{"V8", num(octahedron_volume())},
             {"v_omega", num(figure_eight_volume())},
             {"lobachevsky_pi_4", num(lobachevsky(pi / 4))},
             {"lobachevsky_pi_3", num(lobachevsky(pi / 3))},
             {"growth_constant", num(std::log(2.0) / (4 * octahedron_volume()))}};
    o.columns = {"name", "value"};
    for (const auto& [k, v] : o.doc.items())
        o.rows.push_back({{"name", k}, {"value", v}});
    return o;
}

// ---- certify ----------------------------------------------------------

Output certify(const std::string& name, Int a, Int b, const std::optional<double>& c2, Int limit)
{
    auto record = name_arg([&] { return builtin_record(name); });
    auto c = c2 ? certify_unique_volume(record, a, b, *c2, limit) : certify_unique_volume(record, a, b, limit);
    return single_row({{"manifold", c.record_name},
                       {"a0", c.a0},
                       {"b0", c.b0},
                       {"limit", limit},
                       {"q0_integer", c.q0_integer},
                       {"q0_normalized", num(c.q0_normalized)},
                       {"gap_integer", c.gap_integer},
                       {"gap_normalized", num(c.gap_normalized)},
                       {"c2", num(c.c2)},
                       {"c2_source", c.c2_source == C2Source::caller ? "caller" : "general_bound"},
                       {"regime_verified", c.regime_verified},
                       {"n_q0", c.n_q0},
                       {"symmetry_order", c.symmetry_order},
                       {"bound_numerator", c.bound.numerator()},
                       {"bound_denominator", c.bound.denominator()},
                       {"valid", c.valid}},
                      {"manifold", "a0", "b0", "limit", "q0_integer", "q0_normalized", "gap_integer",
                       "gap_normalized", "c2", "c2_source", "regime_verified", "n_q0", "symmetry_order",
                       "bound_numerator", "bound_denominator", "valid"});
}

// ---- mutant -----------------------------------------------------------

Output mutant_census(int n)
{
    auto r = census_report(n);
    return single_row({{"n", r.n},
                       {"class_count", r.class_count},
                       {"bracelet_count", bracelet_count(n).str()},
                       {"lower_bound", num(r.lower_bound)},
                       {"volume", num(r.volume)},
                       {"log_growth", num(r.log_growth)},
                       {"asymptotic_constant", num(r.asymptotic_constant)},
                       {"comparison_constant", num(r.comparison_constant)}},
                      {"n", "class_count", "bracelet_count", "lower_bound", "volume", "log_growth",
                       "asymptotic_constant", "comparison_constant"});
}

const char* role_name(CuspRole r)
{
    switch (r) {
    case CuspRole::apex:
        return "apex";
    case CuspRole::knot:
        return "knot";
    case CuspRole::letter_circle:
        return "letter_circle";
    case CuspRole::first_stage:
        return "first_stage";
    }
    return "?";
}

Output mutant_graph(const std::string& letters, int first_stage)
{
    CyclicWord word(letters);
    auto d = decompose(word);
    auto g = cusp_graph(word);
    Output o;
    json cusps = json::array();
    for (const auto& c : horoball_areas(word, first_stage)) {
        json row = {{"role", role_name(c.role)}, {"modulus", c.modulus}, {"area", c.area}};
        cusps.push_back(row);
        o.rows.push_back(row);
    }
    o.doc = {{"word", word.to_string()},
             {"canonical", canonical_form(word).to_string()},
             {"decomposition", d.kind == DecompositionKind::all_ones ? "all_ones" : "cycle"},
             {"i_sequence", d.i_sequence},
             {"apex_label", g.apex_label},
             {"cycle_labels", g.cycle_labels},
             {"special_triangle", g.special_triangle},
             {"knot_moduli", knot_cusp_moduli(word)},
             {"cusps", cusps}};
    o.columns = {"role", "modulus", "area"};
    return o;
}

Output mutant_classes(int n)
{
    Output o;
    json words = json::array();
    for_each_class(n, [&](const CyclicWord& w) {
        words.push_back(w.to_string());
        o.rows.push_back({{"word", w.to_string()}});
    });
    o.doc = {{"n", n}, {"count", words.size()}, {"classes", words}};
    o.columns = {"word"};
    return o;
}

// ---- census -----------------------------------------------------------

Output census_hist(const std::string& path, double epsilon, std::istream& in, std::ostream& err)
{
    if (!(epsilon > 0.0))
        throw usage_error("--epsilon must be positive");
    CensusParseResult parsed;
    if (path == "-") {
        parsed = parse_census(in);
    } else {
        std::ifstream file(path);
        if (!file)
            throw std::runtime_error("cannot open census file '" + path + "'");
        parsed = parse_census(file);
    }
    for (const auto& e : parsed.errors)
        err << "census: line " << e.line << ": " << e.message << '\n';
    auto clusters = cluster_volumes(parsed.records, epsilon);
    Output o;
    o.doc = clusters_to_json(clusters);
    o.columns = {"volume", "count", "names"};
    for (const auto& c : o.doc)
        o.rows.push_back(c);
    return o;
}

CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& description)
{
    auto* sub = parent->add_subcommand(name, description);
    sub->fallthrough();
    return sub;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in)
{
    CLI::App app{"Quadratic-form, prime-sequence, volume-asymptotics and census tools", "volrigid"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    Config cfg;
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
    app.add_option("--shards", cfg.shards, "Parallel shards for progression scans")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--cap", cfg.cap, "Search cap (default 1e9, or VOLRIGID_CAP)");

    std::map<CLI::App*, std::function<Output()>> actions;

    // qf
    auto* qf = app.add_subcommand("qf", "Binary quadratic forms");
    qf->require_subcommand(1);
    qf->fallthrough();
    std::string form_text;
    Int limit = 0, q0 = 0, value = 0;
    bool all_reps = false;
    {
        auto* s = leaf(qf, "values", "Primitive values up to a limit");
        s->add_option("--form", form_text, "Coefficients a,b,c")->required();
        s->add_option("--limit", limit, "Largest value")->required();
        actions[s] = [&] { return qf_values(form_text, limit); };
    }
    {
        auto* s = leaf(qf, "gap", "Two-sided gap around a primitive value");
        s->add_option("--form", form_text, "Coefficients a,b,c")->required();
        s->add_option("--q0", q0, "Centre value")->required();
        s->add_option("--limit", limit, "Scan limit")->required();
        actions[s] = [&] { return qf_gap(form_text, q0, limit); };
    }
    {
        auto* s = leaf(qf, "reps", "Representations of a value");
        s->add_option("--form", form_text, "Coefficients a,b,c")->required();
        s->add_option("-m,--value", value, "Represented value")->required();
        s->add_flag("--all", all_reps, "Include non-primitive representations");
        actions[s] = [&] { return qf_reps(form_text, value, all_reps); };
    }

    // prime-seq
    std::string family_text = "m004", primes_text;
    Int g = 1;
    std::size_t count = 1;
    bool progress = false;
    {
        auto* s = leaf(&app, "prime-seq", "Gap primes from the CRT construction");
        s->add_option("--family", family_text, "m004 or m125")->capture_default_str();
        s->add_option("-g,--gap", g, "Gap radius")->capture_default_str();
        s->add_option("--primes", primes_text, "Avoid primes p1,...,p2g (default: smallest admissible)");
        s->add_option("--count", count, "Witnesses wanted")->capture_default_str();
        s->add_flag("--progress", progress, "Report checkpoints on stderr");
        actions[s] = [&] { return prime_seq(cfg, family_text, g, primes_text, count, progress, err); };
    }

    // nz
    auto* nz = app.add_subcommand("nz", "Truncated volume asymptotics");
    nz->require_subcommand(1);
    nz->fallthrough();
    std::string manifold;
    Int p = 0, q = 0;
    int points = 1000;
    std::uint64_t seed = 1;
    double tolerance = 1e-10, radius = 0.1;
    int samples = 64;
    {
        auto* s = leaf(nz, "eval", "Evaluate the truncation at a filling");
        s->add_option("--manifold", manifold, "m004, m003, m125, WL or m129")->required();
        s->add_option("-p", p, "First slope coordinate")->required();
        s->add_option("-q", q, "Second slope coordinate")->required();
        actions[s] = [&] { return nz_eval(manifold, p, q); };
    }
    {
        auto* s = leaf(nz, "check", "Run the identity suite on random points");
        s->add_option("--points", points, "Points per identity")->capture_default_str();
        s->add_option("--seed", seed, "Random seed")->capture_default_str();
        s->add_option("--tolerance", tolerance, "Relative tolerance")->capture_default_str();
        actions[s] = [&] { return nz_check(points, seed, tolerance); };
    }
    {
        auto* s = leaf(nz, "wl-coeffs", "Whitehead link series coefficients");
        s->add_option("--radius", radius, "Sampling radius")->capture_default_str();
        s->add_option("--samples", samples, "Samples on the circle")->capture_default_str();
        actions[s] = [&] { return nz_wl(radius, samples); };
    }
    {
        auto* s = leaf(nz, "constants", "Volume constants from the Lobachevsky function");
        actions[s] = [&] { return nz_constants(); };
    }

    // certify
    Int a0 = 0, b0 = 0, cert_limit = 10'000;
    std::optional<double> c2;
    {
        auto* s = leaf(&app, "certify", "Uniqueness certificate for a filling");
        s->add_option("--manifold", manifold, "m004, m003, m125 or m129")->required();
        s->add_option("-a", a0, "First slope coordinate")->required();
        s->add_option("-b", b0, "Second slope coordinate")->required();
        s->add_option("--c2", c2, "Error constant (default 7.05 with its Q >= 57.5041 regime)");
        s->add_option("--limit", cert_limit, "Value scan limit")->capture_default_str();
        actions[s] = [&] { return certify(manifold, a0, b0, c2, cert_limit); };
    }

    // mutant
    auto* mutant = app.add_subcommand("mutant", "Cyclic-word link complements");
    mutant->require_subcommand(1);
    mutant->fallthrough();
    int n = 0, first_stage = 1;
    std::string word;
    {
        auto* s = leaf(mutant, "census", "Class count and growth numbers");
        s->add_option("-n", n, "Word length")->required();
        actions[s] = [&] { return mutant_census(n); };
    }
    {
        auto* s = leaf(mutant, "graph", "Cusp graph and horoball areas of a word");
        s->add_option("--word", word, "Binary word, length >= 3")->required();
        s->add_option("--first-stage-modulus", first_stage, "Modulus of the first-stage circles (1 or 2)")
            ->capture_default_str();
        actions[s] = [&] { return mutant_graph(word, first_stage); };
    }
    {
        auto* s = leaf(mutant, "classes", "One word per dihedral class");
        s->add_option("-n", n, "Word length")->required();
        actions[s] = [&] { return mutant_classes(n); };
    }

    // census
    auto* census = app.add_subcommand("census", "Volume tables");
    census->require_subcommand(1);
    census->fallthrough();
    std::string input;
    double epsilon = default_cluster_epsilon;
    {
        auto* s = leaf(census, "hist", "Cluster volumes into a histogram");
        s->add_option("--input", input, "CSV file, or - for stdin")->required();
        s->add_option("--epsilon", epsilon, "Chain tolerance")->capture_default_str();
        actions[s] = [&] { return census_hist(input, epsilon, in, err); };
    }

    std::vector<std::string> argv_store{"volrigid"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_usage_error;
    }

    CLI::App* chosen = nullptr;
    for (auto& [sub, action] : actions)
        if (sub->parsed())
            chosen = sub;
    if (!chosen) {
        err << app.help();
        return exit_usage_error;
    }

    try {
        Output result = actions[chosen]();
        render(result, cfg.format, out);
        if (result.doc.is_object() && result.doc.contains("pass") && !result.doc["pass"].get<bool>()) {
            err << "error: identity check exceeded the tolerance\n";
            return exit_domain_error;
        }
        return exit_ok;
    } catch (const usage_error& e) {
        err << "error: " << e.what() << "\n\n" << chosen->help();
        return exit_usage_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_domain_error;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    return run(args, out, err, std::cin);
}

} // namespace volrigid::cli

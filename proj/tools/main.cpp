#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cechdr/geometry.hpp"
#include "cechdr/parser.hpp"
#include "cechdr/report.hpp"
#include "cechdr/theorems.hpp"

using namespace cechdr;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUnstable = 2;
constexpr int kExitUsage = 3;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

// '@path' reads a file, '@-' reads stdin, anything else is inline text
std::string resolve_text(const std::string& s) {
    if (s.empty() || s[0] != '@') return s;
    std::string path = s.substr(1);
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    buf << in.rdbuf();
    return buf.str();
}

struct CommonOpts {
    std::string vars_text;
    std::string ideal_text;
    std::string denoms_text;
    std::string q_text = "none";
    std::string module = "top";
    std::vector<std::string> defines;
    std::string ops_text;
    std::string schedule_text;
    int max_windows = 0;
    std::uint64_t seed = 0;
    double max_seconds = 0.0;
    std::string format = "json";
};

void add_format_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
}

void add_schedule_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--schedule", o.schedule_text,
                    "window schedule k0,D0,dk,dD,probe,span");
    cmd->add_option("--max-windows", o.max_windows, "outer window budget");
    cmd->add_option("--max-seconds", o.max_seconds,
                    "soft time budget, checked between windows");
}

WindowSchedule make_schedule(const CommonOpts& o) {
    WindowSchedule s;
    if (!o.schedule_text.empty()) {
        auto parts = split(o.schedule_text, ',');
        if (parts.size() != 6)
            throw std::invalid_argument("--schedule needs 6 integers k0,D0,dk,dD,probe,span");
        s.k0 = std::stoi(parts[0]);
        s.D0 = std::stoi(parts[1]);
        s.dk = std::stoi(parts[2]);
        s.dD = std::stoi(parts[3]);
        s.probe_depth = std::stoi(parts[4]);
        s.span = std::stoi(parts[5]);
    }
    if (o.max_windows > 0) s.max_windows = o.max_windows;
    return s;
}

Deadline make_deadline(const CommonOpts& o) {
    if (o.max_seconds <= 0) return std::nullopt;
    return std::chrono::steady_clock::now() +
           std::chrono::milliseconds(static_cast<long long>(o.max_seconds * 1000));
}

// variables, named definitions, and the parsed job inputs
struct InputDocument {
    VariableContext ctx;
    Definitions definitions;
    Json echo;
};

InputDocument assemble_document(const CommonOpts& o, std::vector<std::string> texts) {
    InputDocument doc;
    std::vector<std::string> names;
    std::vector<std::string> define_names;
    std::vector<std::string> define_bodies;
    for (const auto& d : o.defines) {
        auto eq = d.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--define expects name=polynomial");
        define_names.push_back(d.substr(0, eq));
        define_bodies.push_back(resolve_text(d.substr(eq + 1)));
    }
    if (!o.vars_text.empty()) {
        names = split(o.vars_text, ',');
    } else {
        // first-appearance order over every input text, minus defined names
        std::vector<std::string> all_texts = texts;
        all_texts.insert(all_texts.end(), define_bodies.begin(), define_bodies.end());
        for (const auto& t : all_texts)
            for (const auto& id : collect_identifiers(t)) {
                bool is_def = false;
                for (const auto& dn : define_names)
                    if (dn == id) is_def = true;
                bool seen = false;
                for (const auto& n : names)
                    if (n == id) seen = true;
                if (!is_def && !seen) names.push_back(id);
            }
    }
    for (const auto& n : names)
        if (!valid_identifier(n))
            throw std::invalid_argument("invalid variable name: '" + n + "'");
    doc.ctx = VariableContext(names);
    for (size_t i = 0; i < define_names.size(); ++i) {
        if (!valid_identifier(define_names[i]))
            throw std::invalid_argument("invalid definition name: '" + define_names[i] + "'");
        doc.definitions.emplace(
            define_names[i],
            parse_polynomial(define_bodies[i], doc.ctx, &doc.definitions));
    }
    doc.echo["variables"] = names;
    if (!doc.definitions.empty()) {
        Json defs;
        for (const auto& [k, v] : doc.definitions) defs[k] = v.str();
        doc.echo["definitions"] = defs;
    }
    return doc;
}

std::vector<int> parse_quotient(const std::string& text, int m) {
    std::vector<int> q;
    if (text == "none" || text.empty()) return q;
    if (text == "all") {
        for (int i = 0; i < m; ++i) q.push_back(i);
        return q;
    }
    for (const auto& part : split(text, ',')) {
        int idx = std::stoi(part);
        if (idx < 1 || idx > m)
            throw std::invalid_argument("--q index " + part + " out of range 1.." +
                                        std::to_string(m));
        q.push_back(idx - 1);
    }
    return q;
}

LocalizedModuleSpec build_spec(const CommonOpts& o, const InputDocument& doc, Json* echo) {
    if (!o.ideal_text.empty() && !o.denoms_text.empty())
        throw std::invalid_argument("give either --ideal or --denoms, not both");
    if (!o.ideal_text.empty()) {
        auto gens = parse_ideal_text(resolve_text(o.ideal_text), doc.ctx, &doc.definitions);
        Ideal I(doc.ctx, gens);
        const int m = static_cast<int>(I.generators.size());
        if (o.module != "top" && o.module != "h" + std::to_string(m))
            throw std::invalid_argument(
                "--module must be 'top' or 'h" + std::to_string(m) +
                "' (only the top Cech quotient is modeled)");
        Json gens_echo = Json::array();
        for (const auto& g : I.generators) gens_echo.push_back(g.str());
        (*echo)["ideal"] = gens_echo;
        (*echo)["module"] = "h" + std::to_string(m);
        return LocalizedModuleSpec::cech_top(I);
    }
    std::vector<Polynomial> denoms;
    if (!o.denoms_text.empty())
        denoms = parse_ideal_text(resolve_text(o.denoms_text), doc.ctx, &doc.definitions);
    auto q = parse_quotient(o.q_text, static_cast<int>(denoms.size()));
    Json denom_echo = Json::array();
    for (const auto& f : denoms) denom_echo.push_back(f.str());
    (*echo)["denominators"] = denom_echo;
    Json q_echo = Json::array();
    for (int i : q) q_echo.push_back(i + 1);
    (*echo)["quotient"] = q_echo;
    return LocalizedModuleSpec(doc.ctx, std::move(denoms), std::move(q));
}

std::vector<int> parse_ops(const CommonOpts& o, const VariableContext& ctx) {
    std::vector<int> ops;
    if (o.ops_text.empty()) return ops;
    for (const auto& name : split(o.ops_text, ',')) {
        int idx = ctx.index_of(name);
        if (idx < 0) throw std::invalid_argument("--ops: unknown variable '" + name + "'");
        ops.push_back(idx);
    }
    return ops;
}

void emit(const Json& report, const std::string& format) {
    if (format == "text")
        std::cout << render_text(report);
    else
        std::cout << report.dump(2) << "\n";
}

Ideal parse_ideal_input(const CommonOpts& o, const InputDocument& doc, Json* echo) {
    if (o.ideal_text.empty()) throw std::invalid_argument("--ideal is required");
    auto gens = parse_ideal_text(resolve_text(o.ideal_text), doc.ctx, &doc.definitions);
    Ideal I(doc.ctx, gens);
    Json gens_echo = Json::array();
    for (const auto& g : I.generators) gens_echo.push_back(g.str());
    (*echo)["ideal"] = gens_echo;
    return I;
}

int run_derham(const CommonOpts& o) {
    auto doc = assemble_document(o, {o.ideal_text, o.denoms_text});
    Json inputs = doc.echo;
    LocalizedModuleSpec spec = build_spec(o, doc, &inputs);
    auto ops = parse_ops(o, doc.ctx);
    WindowSchedule sched = make_schedule(o);
    inputs["schedule"] = schedule_to_json(sched);
    inputs["seed"] = o.seed;

    DeRhamResult res = derham_homology(spec, sched, ops, make_deadline(o));
    emit(report_envelope("derham", inputs, derham_to_json(res)), o.format);
    return res.stabilized ? kExitPass : kExitUnstable;
}

int run_degree(const CommonOpts& o) {
    auto doc = assemble_document(o, {o.ideal_text});
    Json inputs = doc.echo;
    Ideal I = parse_ideal_input(o, doc, &inputs);
    int e = curve_degree(I);
    emit(report_envelope("degree", inputs, Json{{"degree", e}}), o.format);
    return kExitPass;
}

int run_points_at_infinity(const CommonOpts& o) {
    auto doc = assemble_document(o, {o.ideal_text});
    Json inputs = doc.echo;
    Ideal I = parse_ideal_input(o, doc, &inputs);
    int v = points_at_infinity_count(I);
    emit(report_envelope("points-at-infinity", inputs, Json{{"points_at_infinity", v}}),
         o.format);
    return kExitPass;
}

int run_generic_form(const CommonOpts& o) {
    auto doc = assemble_document(o, {o.ideal_text});
    Json inputs = doc.echo;
    Ideal I = parse_ideal_input(o, doc, &inputs);
    inputs["seed"] = o.seed;
    GenericLinearForm f = generic_linear_form(I, o.seed);
    emit(report_envelope("generic-form", inputs, form_to_json(f)), o.format);
    return kExitPass;
}

int run_groebner(const CommonOpts& o, const std::string& order_name) {
    auto doc = assemble_document(o, {o.ideal_text});
    Json inputs = doc.echo;
    Ideal I = parse_ideal_input(o, doc, &inputs);
    inputs["order"] = order_name;
    MonomialOrder ord =
        order_name == "lex" ? MonomialOrder::lex() : MonomialOrder::grevlex();
    GroebnerBasis G = buchberger(I, ord);
    Json basis = Json::array();
    for (const auto& g : G.basis) basis.push_back(g.str());
    emit(report_envelope("groebner", inputs,
                         Json{{"order", order_name}, {"basis", basis}}),
         o.format);
    return kExitPass;
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Pass: return kExitPass;
        case Verdict::Fail: return kExitFail;
        case Verdict::Unstabilized: return kExitUnstable;
    }
    return kExitUsage;
}

int run_verify(const CommonOpts& o, const std::string& statement) {
    WindowSchedule sched = make_schedule(o);
    Deadline deadline = make_deadline(o);

    VerificationReport rep;
    Json inputs;
    if (statement == "lemma4.4") {
        auto doc = assemble_document(o, {o.denoms_text});
        inputs = doc.echo;
        LocalizedModuleSpec nspec = build_spec(o, doc, &inputs);
        rep = verify_laurent_chi(nspec, sched, deadline);
    } else {
        auto doc = assemble_document(o, {o.ideal_text});
        inputs = doc.echo;
        Ideal I = parse_ideal_input(o, doc, &inputs);
        if (statement == "thm2.6")
            rep = verify_thm26(I, o.seed, sched, deadline);
        else if (statement == "thm3.4a")
            rep = verify_thm34a(I, sched, deadline);
        else if (statement == "cor3.5")
            rep = verify_graded_chi(I, sched, deadline);
        else
            throw std::invalid_argument("unknown statement '" + statement +
                                        "' (thm2.6, thm3.4a, cor3.5, lemma4.4)");
    }
    inputs["schedule"] = schedule_to_json(sched);
    inputs["seed"] = o.seed;
    emit(report_envelope("verify " + statement, inputs, verification_to_json(rep)), o.format);
    return verdict_exit(rep.verdict);
}

int run_predict(const CommonOpts& o, const std::string& formula, long long s_value,
                bool has_s, int n_value, int r_value, const std::string& sj_text) {
    SurfaceInvariants inv;
    inv.n = n_value;
    inv.r = r_value;
    if (has_s) inv.s = s_value;
    for (const auto& part : split(sj_text, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--sj expects j=value pairs");
        inv.s_j[std::stoi(part.substr(0, eq))] = std::stoll(part.substr(eq + 1));
    }
    long long chi = predict_chi(formula, inv);
    Json inputs{{"formula", formula}};
    if (has_s) inputs["s"] = s_value;
    if (n_value > 0) inputs["n"] = n_value;
    if (r_value > 0) inputs["r"] = r_value;
    if (!inv.s_j.empty()) {
        Json sj;
        for (const auto& [j, v] : inv.s_j) sj[std::to_string(j)] = v;
        inputs["s_j"] = sj;
    }
    emit(report_envelope("predict " + formula, inputs, Json{{"chi", chi}}), o.format);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cechdr: exact De Rham homology of localized polynomial modules"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string order_name = "grevlex";
    std::string statement;
    std::string formula;
    long long s_value = 0;
    int n_value = 0, r_value = 0;
    std::string sj_text;

    auto add_common = [&](CLI::App* cmd, bool with_spec, bool with_schedule) {
        cmd->add_option("--vars", o.vars_text, "comma-separated variable names");
        cmd->add_option("--define", o.defines, "named polynomial, name=expr (repeatable)");
        if (with_spec) {
            cmd->add_option("--ideal", o.ideal_text, "ideal text, e.g. \"[x*y + 1]\"");
            cmd->add_option("--denoms", o.denoms_text, "denominator list, e.g. \"[x, y]\"");
            cmd->add_option("--q", o.q_text, "quotient subset: all, none, or 1-based indices");
            cmd->add_option("--module", o.module, "h<m> or top (with --ideal)");
        }
        if (with_schedule) add_schedule_flags(cmd, o);
        add_format_flags(cmd, o);
    };

    auto* derham = app.add_subcommand("derham", "De Rham homology dims, chi, chi_c");
    add_common(derham, true, true);
    derham->add_option("--ops", o.ops_text, "operator subset (variable names)");
    derham->add_option("--seed", o.seed, "echoed for reproducibility");

    auto* degree = app.add_subcommand("degree", "degree of an affine curve");
    add_common(degree, false, false);
    degree->add_option("--ideal", o.ideal_text, "curve ideal")->required();

    auto* pinf = app.add_subcommand("points-at-infinity", "points of the closure at infinity");
    add_common(pinf, false, false);
    pinf->add_option("--ideal", o.ideal_text, "curve ideal")->required();

    auto* gform = app.add_subcommand("generic-form", "certified generic linear form");
    add_common(gform, false, false);
    gform->add_option("--ideal", o.ideal_text, "curve ideal")->required();
    gform->add_option("--seed", o.seed, "random seed");

    auto* groeb = app.add_subcommand("groebner", "reduced Groebner basis");
    add_common(groeb, false, false);
    groeb->add_option("--ideal", o.ideal_text, "ideal")->required();
    groeb->add_option("--order", order_name, "grevlex or lex")
        ->check(CLI::IsMember({"grevlex", "lex"}));

    auto* verify = app.add_subcommand("verify", "check a statement on a concrete input");
    verify->add_option("statement", statement, "thm2.6 | thm3.4a | cor3.5 | lemma4.4")
        ->required();
    add_common(verify, true, true);
    verify->add_option("--seed", o.seed, "seed for generic choices");

    auto* predict = app.add_subcommand("predict", "closed-form chi evaluators");
    predict->add_option("formula", formula, "4.3 | 4.7 | 4.8 | 5.2")->required();
    auto* s_opt = predict->add_option("--s", s_value, "copy count s");
    predict->add_option("--n", n_value, "number of variables (5.2)");
    predict->add_option("--r", r_value, "variety dimension (5.2)");
    predict->add_option("--sj", sj_text, "s_j list for 5.2, e.g. \"4=1,5=2\"");
    add_format_flags(predict, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    const auto started = std::chrono::steady_clock::now();
    int exit_code = kExitUsage;
    try {
        if (app.got_subcommand(derham)) exit_code = run_derham(o);
        else if (app.got_subcommand(degree)) exit_code = run_degree(o);
        else if (app.got_subcommand(pinf)) exit_code = run_points_at_infinity(o);
        else if (app.got_subcommand(gform)) exit_code = run_generic_form(o);
        else if (app.got_subcommand(groeb)) exit_code = run_groebner(o, order_name);
        else if (app.got_subcommand(verify)) exit_code = run_verify(o, statement);
        else if (app.got_subcommand(predict))
            exit_code = run_predict(o, formula, s_value, s_opt->count() > 0, n_value,
                                    r_value, sj_text);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnstable;
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    std::cerr << "cechdr: completed in " << elapsed.count() << " ms\n";
    return exit_code;
}

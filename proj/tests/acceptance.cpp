// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  argv[1] is the path to the CLI binary (used for the end-to-end
// exit-code and determinism checks).

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cechdr/parser.hpp"
#include "cechdr/theorems.hpp"

using namespace cechdr;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
std::string cli_path;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count() /
           1000.0;
}

void criterion(int number, const std::string& name, bool ok, double elapsed, double budget) {
    bool in_budget = elapsed <= budget;
    bool pass = ok && in_budget;
    if (!pass) ++failures;
    std::printf("[%s] criterion %2d: %s (%.1fs of %.0fs)%s\n", pass ? "PASS" : "FAIL", number,
                name.c_str(), elapsed, budget,
                ok ? (in_budget ? "" : " [over budget]") : " [wrong result]");
    std::fflush(stdout);
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    RunResult r;
    std::string cmd = cli_path + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
    int rc = pclose(pipe);
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

const VariableContext kXY({"x", "y"});
const VariableContext kXYZ({"x", "y", "z"});

LocalizedModuleSpec h1_spec(const std::string& f_text) {
    Ideal I(kXY, parse_ideal_text("[" + f_text + "]", kXY));
    return LocalizedModuleSpec::cech_top(I);
}

long long env_seconds(const char* name, long long fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    return std::atoll(v);
}

Deadline deadline_in(double seconds) {
    return Clock::now() + std::chrono::milliseconds(static_cast<long long>(seconds * 1000));
}

void c1_example_62() {
    auto t0 = Clock::now();
    auto r = derham_homology(h1_spec("x*y + 1"), WindowSchedule{});
    bool ok = r.stabilized && r.dims == std::vector<int>{1, 1, 0} && r.chi == 0 && r.chi_c == 0;
    criterion(1, "example 6.2: H^1_(xy+1) has dims [1,1,0], chi = chi_c = 0", ok,
              seconds_since(t0), 60);
}

void c2_example_61() {
    auto t0 = Clock::now();
    auto line = derham_homology(h1_spec("y + x"), WindowSchedule{});
    bool ok1 = line.stabilized && line.dims == std::vector<int>{0, 1, 0} && line.chi == -1;
    criterion(2, "example 6.1 (h = x): dims [0,1,0], chi = -1", ok1, seconds_since(t0), 60);

    t0 = Clock::now();
    auto parabola = derham_homology(h1_spec("y + x^2 - 1"), WindowSchedule{});
    bool ok2 =
        parabola.stabilized && parabola.dims == std::vector<int>{0, 1, 0} && parabola.chi == -1;
    criterion(2, "example 6.1 (h = x^2 - 1): dims [0,1,0], chi = -1", ok2, seconds_since(t0),
              60);
}

long long quantity(const VerificationReport& rep, const std::string& name) {
    for (const auto& [k, v] : rep.quantities)
        if (k == name) return v;
    return -999999;
}

void c3_theorem26_small() {
    auto t0 = Clock::now();
    auto hyper = verify_thm26(Ideal(kXY, parse_ideal_text("[x*y + 1]", kXY)), 0,
                              WindowSchedule{}, deadline_in(300));
    bool ok1 = hyper.verdict == Verdict::Pass && quantity(hyper, "difference") == 2 &&
               quantity(hyper, "degree") == 2;
    criterion(3, "theorem 2.6 on the hyperbola: difference 2 = degree", ok1, seconds_since(t0),
              300);

    t0 = Clock::now();
    auto line = verify_thm26(Ideal(kXY, parse_ideal_text("[y + x]", kXY)), 0, WindowSchedule{},
                             deadline_in(300));
    bool ok2 = line.verdict == Verdict::Pass && quantity(line, "difference") == 1;
    criterion(3, "theorem 2.6 on the line: difference 1", ok2, seconds_since(t0), 300);
}

void c4_theorem26_cubic() {
    const long long budget = env_seconds("CECHDR_ACCEPT_C4_SECONDS", 1800);
    auto t0 = Clock::now();
    std::ostringstream cmd;
    cmd << "verify thm2.6 --ideal \"[y - x^2, z - x^3]\" --seed 3"
        << " --schedule 2,6,1,4,2,2 --max-windows 8"
        << " --max-seconds " << budget << " --format json";
    RunResult r = run_cli(cmd.str());
    bool ok = false;
    std::string shape = "unparsed";
    try {
        auto j = nlohmann::json::parse(r.out);
        const auto& res = j.at("result");
        if (r.exit_code == 0) {
            ok = res.at("verdict") == "pass" &&
                 res.at("quantities").at("difference").get<long long>() == 3;
            shape = "stabilized, difference 3";
        } else if (r.exit_code == 2) {
            // honest non-answer: verdict unstabilized with the window trace kept
            bool trace_kept = res.contains("module") &&
                              res.at("module").contains("window_trace");
            ok = res.at("verdict") == "unstabilized" && trace_kept;
            shape = "unstabilized with trace, exit 2";
        }
    } catch (...) {
        ok = false;
    }
    criterion(4, "theorem 2.6 on the twisted cubic: difference 3, or exit 2 with trace (" +
                     shape + ")",
              ok, seconds_since(t0), static_cast<double>(budget) + 60);
}

void c5_theorem34a() {
    struct Case {
        const char* ideal;
        int h0;
        int vinf;
    } cases[] = {{"[x*y + 1]", 1, 2}, {"[y + x]", 0, 1}, {"[y + x^3]", 0, 1}};
    for (const auto& c : cases) {
        auto t0 = Clock::now();
        auto rep = verify_thm34a(Ideal(kXY, parse_ideal_text(c.ideal, kXY)), WindowSchedule{},
                                 deadline_in(120));
        bool ok = rep.verdict == Verdict::Pass && quantity(rep, "h0") == c.h0 &&
                  quantity(rep, "points_at_infinity") == c.vinf;
        criterion(5, std::string("theorem 3.4(a) on ") + c.ideal, ok, seconds_since(t0), 120);
    }
}

void c6_corollary35() {
    auto t0 = Clock::now();
    auto plane = verify_graded_chi(Ideal(kXYZ, parse_ideal_text("[x]", kXYZ)),
                                   WindowSchedule{}, deadline_in(600));
    bool ok1 = plane.verdict == Verdict::Pass && plane.module_result &&
               plane.module_result->dims == std::vector<int>{0, 0, 1, 0} &&
               plane.module_result->chi == 1;
    criterion(6, "corollary 3.5: chi(H^1_(x)) = 1 with dims [0,0,1,0]", ok1, seconds_since(t0),
              600);

    t0 = Clock::now();
    auto cone = verify_graded_chi(Ideal(kXYZ, parse_ideal_text("[x*y - z^2]", kXYZ)),
                                  WindowSchedule{}, deadline_in(600));
    bool ok2 = cone.verdict == Verdict::Pass && cone.module_result &&
               cone.module_result->chi == 1;
    criterion(6, "corollary 3.5: chi(H^1_(xy - z^2)) = 1", ok2, seconds_since(t0), 600);
}

void c7_lemma44() {
    auto t0 = Clock::now();
    VariableContext x({"x"});
    auto rep = verify_laurent_chi(LocalizedModuleSpec::polynomial_ring(x), WindowSchedule{},
                                  deadline_in(60));
    bool ok1 = rep.verdict == Verdict::Pass && rep.module_result &&
               rep.module_result->dims == std::vector<int>{0, 1, 1} &&
               rep.module_result->chi == 0;
    criterion(7, "lemma 4.4: chi(K[x][z,z^-1]) = 0 with dims [0,1,1]", ok1, seconds_since(t0),
              60);

    t0 = Clock::now();
    VariableContext none(std::vector<std::string>{});
    auto rep2 = verify_laurent_chi(LocalizedModuleSpec::polynomial_ring(none),
                                   WindowSchedule{}, deadline_in(60));
    bool ok2 = rep2.verdict == Verdict::Pass && rep2.module_result &&
               rep2.module_result->dims == std::vector<int>{1, 1} &&
               rep2.module_result->chi == 0;
    criterion(7, "lemma 4.4: chi(K[z,z^-1]) = 0 with dims [1,1]", ok2, seconds_since(t0), 60);
}

void c8_point_anchor() {
    auto t0 = Clock::now();
    Ideal m(kXY, parse_ideal_text("[x, y]", kXY));
    auto r = derham_homology(LocalizedModuleSpec::cech_top(m), WindowSchedule{});
    bool ok1 = r.stabilized && r.dims == std::vector<int>{1, 0, 0};

    Ideal cut(kXY, parse_ideal_text("[x*y + 1, y - x]", kXY));
    bool ok2 = zero_dim_point_count(cut) == 2;
    criterion(8, "eq. (2.4) anchor: H^2_(x,y) dims [1,0,0]; #V(xy+1, y-x) = 2", ok1 && ok2,
              seconds_since(t0), 60);
}

bool property_fraction_calculus() {
    std::mt19937_64 rng(91);
    auto spec = h1_spec("x*y + 1");
    for (int trial = 0; trial < 1000; ++trial) {
        Polynomial num(kXY);
        num.add_term({static_cast<int>(rng() % 4), static_cast<int>(rng() % 4)},
                     Rational(static_cast<long>(rng() % 9) - 4));
        num.add_term({static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)},
                     Rational(static_cast<long>(rng() % 5)));
        Fraction u = make_fraction(spec, num, {static_cast<int>(rng() % 4)});

        Fraction xy = apply_partial(apply_partial(u, 0, spec), 1, spec);
        Fraction yx = apply_partial(apply_partial(u, 1, spec), 0, spec);
        if (!fraction_equal(xy, yx, spec)) return false;

        Polynomial p(kXY);
        p.add_term({static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)}, Rational(1));
        int i = static_cast<int>(rng() % 2);
        Fraction lhs = apply_partial(fraction_poly_mul(p, u, spec), i, spec);
        Fraction rhs = fraction_add(fraction_poly_mul(differentiate(p, i), u, spec),
                                    fraction_poly_mul(p, apply_partial(u, i, spec), spec), spec);
        if (!fraction_equal(lhs, rhs, spec)) return false;
    }
    return true;
}

bool property_koszul_square_zero() {
    std::mt19937_64 rng(92);
    std::vector<LocalizedModuleSpec> specs = {
        LocalizedModuleSpec::polynomial_ring(kXY), h1_spec("x*y + 1"),
        LocalizedModuleSpec::localization(kXY, parse_ideal_text("[y + x]", kXY))};
    for (const auto& spec : specs) {
        for (int trial = 0; trial < 2; ++trial) {
            TruncationWindow w{1 + static_cast<int>(rng() % 3),
                               2 + static_cast<int>(rng() % 4)};
            WindowBasis w0(spec, w);
            WindowBasis w1(spec, grow_step(spec, w0.window()));
            WindowBasis w2(spec, grow_step(spec, w1.window()));
            KoszulLayer a = assemble_koszul(spec, {0, 1}, w0, w1);
            KoszulLayer b = assemble_koszul(spec, {0, 1}, w1, w2);
            for (const auto& col : a.differentials[1].cols) {
                SparseVec composite;
                for (const auto& [idx, val] : col)
                    sparse_axpy(composite, val, b.differentials[0].cols[idx]);
                if (!composite.empty()) return false;
            }
        }
    }
    return true;
}

bool property_groebner_spolys() {
    Ideal cubic(kXYZ, parse_ideal_text("[y - x^2, z - x^3]", kXYZ));
    for (const auto& ord : {MonomialOrder::grevlex(), MonomialOrder::lex()}) {
        auto G = buchberger(cubic, ord);
        for (size_t i = 0; i < G.basis.size(); ++i)
            for (size_t j = i + 1; j < G.basis.size(); ++j) {
                auto lti = G.basis[i].leading(G.order);
                auto ltj = G.basis[j].leading(G.order);
                Monomial lcm = monomial_lcm(lti->first, ltj->first);
                Polynomial s = Polynomial::term(kXYZ, 1 / lti->second,
                                                monomial_div(lcm, lti->first)) *
                                   G.basis[i] -
                               Polynomial::term(kXYZ, 1 / ltj->second,
                                                monomial_div(lcm, ltj->first)) *
                                   G.basis[j];
                if (!normal_form(s, G).is_zero()) return false;
            }
    }
    return true;
}

bool property_homogenize_roundtrip() {
    std::mt19937_64 rng(93);
    for (int trial = 0; trial < 300; ++trial) {
        Polynomial p(kXY);
        int terms = 1 + static_cast<int>(rng() % 5);
        for (int t = 0; t < terms; ++t)
            p.add_term({static_cast<int>(rng() % 5), static_cast<int>(rng() % 5)},
                       Rational(static_cast<long>(rng() % 9) - 4));
        if (dehomogenize_poly(homogenize_poly(p, "w"), "w") != p) return false;
    }
    return true;
}

bool property_linear_change_invariance() {
    std::mt19937_64 rng(94);
    auto base = derham_homology(h1_spec("x*y + 1"), WindowSchedule{});
    if (!base.stabilized) return false;
    DenseMatrix a;
    do {
        a.assign(2, std::vector<Rational>(2));
        for (auto& row : a)
            for (auto& v : row) v = Rational(static_cast<long>(rng() % 5) - 2);
    } while (!matrix_inverse(a));
    Polynomial moved = linear_change(parse_polynomial("x*y + 1", kXY), a);
    auto changed =
        derham_homology(LocalizedModuleSpec::cech_top(Ideal(kXY, {moved})), WindowSchedule{});
    return changed.stabilized && changed.dims == base.dims;
}

bool property_deterministic_reports() {
    const std::string cmd =
        "derham --ideal \"[x*y + 1]\" --module h1 --seed 11 --format json";
    RunResult a = run_cli(cmd);
    RunResult b = run_cli(cmd);
    if (a.exit_code != 0 || b.exit_code != 0) return false;
    if (a.out != b.out || a.out.empty()) return false;

    const std::string vcmd = "verify thm3.4a --ideal \"[y + x]\" --format json";
    RunResult c = run_cli(vcmd);
    RunResult d = run_cli(vcmd);
    return c.exit_code == 0 && c.out == d.out && !c.out.empty();
}

void c9_properties() {
    auto t0 = Clock::now();
    struct Prop {
        const char* name;
        bool (*fn)();
    } props[] = {
        {"fraction calculus (1000 random fractions)", property_fraction_calculus},
        {"d o d = 0 on random windows", property_koszul_square_zero},
        {"Groebner S-polynomials reduce to zero", property_groebner_spolys},
        {"dehomogenize o homogenize = id", property_homogenize_roundtrip},
        {"stabilized dims invariant under linear change", property_linear_change_invariance},
        {"byte-identical reports across seeded reruns", property_deterministic_reports},
    };
    bool all = true;
    for (const auto& p : props) {
        bool ok = p.fn();
        if (!ok) {
            std::printf("       property failed: %s\n", p.name);
            all = false;
        }
    }
    criterion(9, "property suites", all, seconds_since(t0), 300);
}

void c10_formulas() {
    auto t0 = Clock::now();
    bool ok = true;
    for (long long s = 0; s <= 100; ++s) {
        SurfaceInvariants cm;
        cm.s = s;
        if (predict_chi("4.7", cm) != s - 1) ok = false;
        SurfaceInvariants surf;
        surf.n = 7;
        surf.r = 2;
        surf.s_j[surf.n - 2] = s;
        if (predict_chi("5.2", surf) != predict_chi("4.7", cm)) ok = false;
    }
    criterion(10, "formula evaluators: 4.7 vs 5.2 at r = 2 for s in 0..100", ok,
              seconds_since(t0), 10);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-cli>\n");
        return 2;
    }
    cli_path = argv[1];

    c1_example_62();
    c2_example_61();
    c3_theorem26_small();
    c4_theorem26_cubic();
    c5_theorem34a();
    c6_corollary35();
    c7_lemma44();
    c8_point_anchor();
    c9_properties();
    c10_formulas();

    if (failures) {
        std::printf("%d criterion check(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}

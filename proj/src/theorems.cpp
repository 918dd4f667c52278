#include "cechdr/theorems.hpp"

#include <stdexcept>

namespace cechdr {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Unstabilized: return "unstabilized";
    }
    return "?";
}

namespace {

// height = generator count is the regime where the Cech top quotient is H^g
void require_complete_intersection(const Ideal& P, int expected_dim, const char* who) {
    const int n = P.ctx.arity();
    int dim = krull_dimension(P);
    if (dim != expected_dim)
        throw std::invalid_argument(std::string(who) + ": expected dim(R/P) = " +
                                    std::to_string(expected_dim) + ", got " +
                                    std::to_string(dim));
    const int height = n - dim;
    if (static_cast<int>(P.generators.size()) != height)
        throw std::invalid_argument(
            std::string(who) + ": need a complete-intersection presentation (" +
            std::to_string(height) + " generators for height " + std::to_string(height) +
            ", got " + std::to_string(P.generators.size()) + ")");
}

// invertible A with z(A x) = last coordinate, i.e. A = B^{-1} where the last
// row of B holds the coefficients of z
DenseMatrix change_making_form_last(const Polynomial& z) {
    const int n = z.context().arity();
    std::vector<Rational> coeff(n, Rational(0));
    for (const auto& [m, c] : z.terms()) {
        if (total_degree(m) != 1)
            throw std::invalid_argument("linear form expected");
        for (int i = 0; i < n; ++i)
            if (m[i] == 1) coeff[i] = c;
    }
    int pivot = -1;
    for (int i = 0; i < n && pivot < 0; ++i)
        if (!is_zero(coeff[i])) pivot = i;
    if (pivot < 0) throw std::invalid_argument("zero linear form");

    DenseMatrix B;
    for (int i = 0; i < n; ++i) {
        if (i == pivot) continue;
        std::vector<Rational> row(n, Rational(0));
        row[i] = 1;
        B.push_back(std::move(row));
    }
    B.push_back(coeff);
    auto A = matrix_inverse(B);
    if (!A) throw std::logic_error("coordinate change unexpectedly singular");
    return *A;
}

}  // namespace

VerificationReport verify_thm26(const Ideal& P, std::uint64_t seed,
                                const WindowSchedule& schedule, Deadline deadline) {
    require_complete_intersection(P, 1, "verify_thm26");
    const int n = P.ctx.arity();

    VerificationReport report;
    report.statement = "thm2.6";
    report.seed = seed;
    report.schedule = schedule;

    CurveGeometry geo = analyze_curve(P);
    report.geometry = geo;
    const long long degree = geo.degree;

    try {
        report.form = generic_linear_form(P, seed);
    } catch (const std::runtime_error& e) {
        report.verdict = Verdict::Unstabilized;
        report.detail = e.what();
        return report;
    }

    // chi of H^{n-1}_P in the original coordinates
    DeRhamResult base = derham_homology(LocalizedModuleSpec::cech_top(P), schedule, {}, deadline);
    report.module_result = base;
    if (!base.stabilized) {
        report.verdict = Verdict::Unstabilized;
        report.detail = "H^{n-1}_P did not stabilize: " + base.note;
        return report;
    }

    // coordinates in which the certified form is the last variable
    DenseMatrix A = change_making_form_last(report.form->form);
    if (linear_change(report.form->form, A) != Polynomial::variable(P.ctx, n - 1))
        throw std::logic_error("coordinate change failed to normalize the form");
    std::vector<Polynomial> denoms;
    std::vector<int> quotient;
    for (const auto& f : P.generators) {
        quotient.push_back(static_cast<int>(denoms.size()));
        denoms.push_back(linear_change(f, A));
    }
    denoms.push_back(Polynomial::variable(P.ctx, n - 1));
    LocalizedModuleSpec localized(P.ctx, std::move(denoms), std::move(quotient));

    DeRhamResult loc = derham_homology(localized, schedule, {}, deadline);
    report.localized_result = loc;
    if (!loc.stabilized) {
        report.verdict = Verdict::Unstabilized;
        report.detail = "(H^{n-1}_P)_z did not stabilize: " + loc.note;
        return report;
    }

    const long long difference = loc.chi - base.chi;
    report.quantities = {{"degree", degree},
                         {"chi_module", base.chi},
                         {"chi_localized", loc.chi},
                         {"difference", difference}};
    report.verdict = difference == degree ? Verdict::Pass : Verdict::Fail;
    report.detail = "chi difference " + std::to_string(difference) + " vs degree " +
                    std::to_string(degree);
    return report;
}

VerificationReport verify_thm34a(const Ideal& P, const WindowSchedule& schedule,
                                 Deadline deadline) {
    require_complete_intersection(P, 1, "verify_thm34a");

    VerificationReport report;
    report.statement = "thm3.4a";
    report.schedule = schedule;

    CurveGeometry geo = analyze_curve(P);
    report.geometry = geo;
    const long long vinf = geo.points_at_infinity;

    DeRhamResult res = derham_homology(LocalizedModuleSpec::cech_top(P), schedule, {}, deadline);
    report.module_result = res;
    if (!res.stabilized) {
        report.verdict = Verdict::Unstabilized;
        report.detail = "H^{n-1}_P did not stabilize: " + res.note;
        return report;
    }

    const long long h0 = res.dims[0];
    report.quantities = {{"h0", h0},
                         {"points_at_infinity", vinf},
                         {"lower_bound", vinf - 1}};
    report.verdict = h0 >= vinf - 1 ? Verdict::Pass : Verdict::Fail;
    report.detail = "dim H_0 = " + std::to_string(h0) + " vs V_inf - 1 = " +
                    std::to_string(vinf - 1);
    return report;
}

VerificationReport verify_graded_chi(const Ideal& P, const WindowSchedule& schedule,
                                     Deadline deadline) {
    for (const auto& g : P.generators)
        if (!g.is_homogeneous())
            throw std::invalid_argument("verify_graded_chi: ideal must be homogeneous");
    require_complete_intersection(P, 2, "verify_graded_chi");

    VerificationReport report;
    report.statement = "cor3.5";
    report.schedule = schedule;

    DeRhamResult res = derham_homology(LocalizedModuleSpec::cech_top(P), schedule, {}, deadline);
    report.module_result = res;
    if (!res.stabilized) {
        report.verdict = Verdict::Unstabilized;
        report.detail = "H^{ht P}_P did not stabilize: " + res.note;
        return report;
    }

    report.quantities = {{"chi", res.chi}, {"expected", 1}};
    report.verdict = res.chi == 1 ? Verdict::Pass : Verdict::Fail;
    report.detail = "chi = " + std::to_string(res.chi) + " (statement value 1)";
    return report;
}

VerificationReport verify_laurent_chi(const LocalizedModuleSpec& N,
                                      const WindowSchedule& schedule, Deadline deadline) {
    VerificationReport report;
    report.statement = "lemma4.4";
    report.schedule = schedule;

    std::string z = fresh_variable_name(N.context(), "z");
    LocalizedModuleSpec laurent = N.laurent_extension(z);

    DeRhamResult res = derham_homology(laurent, schedule, {}, deadline);
    report.module_result = res;
    if (!res.stabilized) {
        report.verdict = Verdict::Unstabilized;
        report.detail = "N[z, z^-1] did not stabilize: " + res.note;
        return report;
    }

    report.quantities = {{"chi", res.chi}, {"expected", 0}};
    report.verdict = res.chi == 0 ? Verdict::Pass : Verdict::Fail;
    report.detail = "chi = " + std::to_string(res.chi) + " (statement value 0)";
    return report;
}

long long predict_chi(const std::string& formula, const SurfaceInvariants& inv) {
    auto need_s = [&]() -> long long {
        if (!inv.s) throw std::invalid_argument("predict_chi: formula needs --s");
        if (*inv.s < 0) throw std::invalid_argument("predict_chi: s must be non-negative");
        return *inv.s;
    };
    if (formula == "4.3") return 1 + need_s();
    if (formula == "4.7" || formula == "4.8") return need_s() - 1;
    if (formula == "5.2") {
        if (inv.r < 2) throw std::invalid_argument("predict_chi: 5.2 needs r >= 2");
        if (inv.n <= 0) throw std::invalid_argument("predict_chi: 5.2 needs n > 0");
        long long sum = 0;
        for (const auto& [j, sj] : inv.s_j) {
            if (j < inv.n - inv.r)
                throw std::invalid_argument("predict_chi: s_j index below n - r");
            if (sj < 0) throw std::invalid_argument("predict_chi: s_j must be non-negative");
            sum += ((inv.n - j) % 2 == 0 ? 1 : -1) * sj;
        }
        const long long sign = inv.r % 2 == 0 ? 1 : -1;
        return sign * (-1 + sum);
    }
    throw std::invalid_argument("predict_chi: unknown formula id '" + formula + "'");
}

}  // namespace cechdr

#include "cechdr/geometry.hpp"

#include <random>
#include <stdexcept>

namespace cechdr {

std::string fresh_variable_name(const VariableContext& ctx, const std::string& stem) {
    if (!ctx.contains(stem)) return stem;
    for (int i = 0;; ++i) {
        std::string candidate = stem + std::to_string(i);
        if (!ctx.contains(candidate)) return candidate;
    }
}

Ideal projective_closure(const Ideal& P, const std::string& z_name) {
    if (P.ctx.contains(z_name))
        throw std::invalid_argument("projective_closure: variable clash: " + z_name);
    GroebnerBasis G = buchberger(P, MonomialOrder::grevlex());
    VariableContext ext = P.ctx.extended(z_name);
    std::vector<Polynomial> gens;
    gens.reserve(G.basis.size());
    for (const auto& g : G.basis) gens.push_back(homogenize_poly(g, z_name));
    return Ideal(ext, std::move(gens));
}

namespace {
void require_curve(const Ideal& P, const char* who) {
    int dim = krull_dimension(P);  // throws on the unit ideal
    if (dim != 1)
        throw std::invalid_argument(std::string(who) + ": expected dim(R/P) = 1, got " +
                                    std::to_string(dim));
}
}  // namespace

int curve_degree(const Ideal& P) {
    require_curve(P, "curve_degree");
    std::string z = fresh_variable_name(P.ctx, "w");
    return hilbert_degree(projective_closure(P, z));
}

int points_at_infinity_count(const Ideal& P) {
    require_curve(P, "points_at_infinity");
    const int n = P.ctx.arity();
    std::string zname = fresh_variable_name(P.ctx, "w");
    Ideal closure = projective_closure(P, zname);
    const int zi = closure.ctx.arity() - 1;

    // the part at infinity, as a cone in the original variables
    std::vector<Polynomial> cone;
    for (const auto& g : closure.generators) {
        Polynomial h = substitute_value(g, zi, Rational(0));
        if (!h.is_zero()) cone.push_back(drop_variable(h, zi));
    }

    int total = 0;
    for (int chart = 0; chart < n; ++chart) {
        std::vector<Polynomial> gens;
        for (const auto& g : cone) {
            Polynomial h = substitute_value(g, chart, Rational(1));
            for (int prev = 0; prev < chart; ++prev) h = substitute_value(h, prev, Rational(0));
            if (!h.is_zero()) gens.push_back(h);
        }
        // pin the chart coordinates so the count runs over honest points
        gens.push_back(Polynomial::variable(P.ctx, chart) -
                       Polynomial::constant(P.ctx, Rational(1)));
        for (int prev = 0; prev < chart; ++prev)
            gens.push_back(Polynomial::variable(P.ctx, prev));
        Ideal chart_ideal(P.ctx, std::move(gens));
        if (is_unit_ideal(chart_ideal)) continue;
        if (krull_dimension(chart_ideal) != 0)
            throw std::invalid_argument(
                "points_at_infinity: boundary at infinity is not finite");
        total += static_cast<int>(zero_dim_point_count(chart_ideal));
    }
    return total;
}

CurveGeometry analyze_curve(const Ideal& P) {
    require_curve(P, "analyze_curve");
    CurveGeometry geo{P, P, "", 0, 0};
    geo.closure_variable = fresh_variable_name(P.ctx, "w");
    geo.closure = projective_closure(P, geo.closure_variable);
    geo.degree = hilbert_degree(geo.closure);
    geo.points_at_infinity = points_at_infinity_count(P);
    return geo;
}

GenericLinearForm generic_linear_form(const Ideal& P, std::uint64_t seed) {
    require_curve(P, "generic_linear_form");
    const int n = P.ctx.arity();
    const int degree = curve_degree(P);
    GroebnerBasis GP = buchberger(P, MonomialOrder::grevlex());

    std::string zname = fresh_variable_name(P.ctx, "w");
    Ideal closure = projective_closure(P, zname);

    std::mt19937_64 rng(seed);
    const int max_attempts = 40;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        const long bound = 10 * (1 + attempt / 8);
        Polynomial z(P.ctx);
        for (int i = 0; i < n; ++i) {
            long c = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * bound + 1)) - bound;
            if (c == 0) continue;
            Monomial m(n, 0);
            m[i] = 1;
            z.add_term(m, Rational(c));
        }
        if (z.is_zero()) continue;

        if (ideal_membership(z, GP)) continue;

        std::vector<Polynomial> cut = P.generators;
        cut.push_back(z);
        Ideal section(P.ctx, cut);
        if (is_unit_ideal(section)) continue;
        if (krull_dimension(section) != 0) continue;
        if (zero_dim_point_count(section) != degree) continue;

        // no intersection point on the hyperplane at infinity:
        // the cone V(P*, z*, w) must be the origin at most
        std::vector<Polynomial> cone_gens = closure.generators;
        cone_gens.push_back(lift_to_context(z, closure.ctx));
        cone_gens.push_back(Polynomial::variable(closure.ctx, closure.ctx.arity() - 1));
        Ideal cone(closure.ctx, std::move(cone_gens));
        if (!is_unit_ideal(cone) && krull_dimension(cone) != 0) continue;

        GenericLinearForm out;
        out.form = z;
        out.certificate = GenericityCertificate{true, true, true, seed, attempt + 1};
        return out;
    }
    throw std::runtime_error(
        "generic_linear_form: certification failed after " + std::to_string(max_attempts) +
        " attempts; input may violate the hypotheses or the coefficient pool is too small");
}

}  // namespace cechdr

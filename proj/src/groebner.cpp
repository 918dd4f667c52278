#include "cechdr/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace cechdr {

Ideal::Ideal(VariableContext c, std::vector<Polynomial> gens) : ctx(std::move(c)) {
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        if (!(g.context() == ctx))
            throw std::invalid_argument("ideal generator context mismatch");
        generators.push_back(std::move(g));
    }
}

namespace {

Polynomial make_monic(const Polynomial& p, const MonomialOrder& ord) {
    if (p.is_zero()) return p;
    auto lt = p.leading(ord);
    return p.scaled(1 / lt->second);
}

Polynomial reduce_full(const Polynomial& p, const std::vector<Polynomial>& basis,
                       const std::vector<Monomial>& lead_mons,
                       const MonomialOrder& ord) {
    Polynomial rem(p.context());
    Polynomial h = p;
    while (!h.is_zero()) {
        auto lt = h.leading(ord);
        bool reduced = false;
        for (size_t i = 0; i < basis.size(); ++i) {
            if (!monomial_divides(lead_mons[i], lt->first)) continue;
            Rational c = lt->second / basis[i].leading(ord)->second;
            Monomial m = monomial_div(lt->first, lead_mons[i]);
            h -= Polynomial::term(p.context(), c, m) * basis[i];
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.add_term(lt->first, lt->second);
            Polynomial single = Polynomial::term(p.context(), lt->second, lt->first);
            h -= single;
        }
    }
    return rem;
}

struct PairKey {
    Monomial lcm;
    int i, j;
};

}  // namespace

GroebnerBasis buchberger(const Ideal& I, const MonomialOrder& ord) {
    std::vector<Polynomial> basis;
    std::vector<Monomial> lead;
    for (const auto& g : I.generators) {
        Polynomial m = make_monic(g, ord);
        basis.push_back(m);
        lead.push_back(m.leading(ord)->first);
    }

    // pending S-pairs
    std::set<std::pair<int, int>> pending;
    auto add_pairs_for = [&](int j) {
        for (int i = 0; i < j; ++i) pending.insert({i, j});
    };
    for (int j = 0; j < static_cast<int>(basis.size()); ++j) add_pairs_for(j);

    while (!pending.empty()) {
        // normal strategy: smallest lcm in the working order, ties by index
        auto best = pending.begin();
        Monomial best_lcm = monomial_lcm(lead[best->first], lead[best->second]);
        for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
            Monomial l = monomial_lcm(lead[it->first], lead[it->second]);
            if (ord.greater(best_lcm, l)) {
                best = it;
                best_lcm = l;
            }
        }
        auto [i, j] = *best;
        pending.erase(best);

        // first criterion: coprime leading monomials
        if (best_lcm == monomial_mul(lead[i], lead[j])) continue;

        // chain criterion: some k with LM_k | lcm and both pairs done
        bool skip = false;
        for (int k = 0; k < static_cast<int>(basis.size()); ++k) {
            if (k == i || k == j) continue;
            if (!monomial_divides(lead[k], best_lcm)) continue;
            auto p1 = std::make_pair(std::min(i, k), std::max(i, k));
            auto p2 = std::make_pair(std::min(j, k), std::max(j, k));
            if (!pending.count(p1) && !pending.count(p2)) {
                skip = true;
                break;
            }
        }
        if (skip) continue;

        Polynomial s =
            Polynomial::term(I.ctx, Rational(1), monomial_div(best_lcm, lead[i])) * basis[i] -
            Polynomial::term(I.ctx, Rational(1), monomial_div(best_lcm, lead[j])) * basis[j];
        Polynomial r = reduce_full(s, basis, lead, ord);
        if (r.is_zero()) continue;
        r = make_monic(r, ord);
        basis.push_back(r);
        lead.push_back(r.leading(ord)->first);
        add_pairs_for(static_cast<int>(basis.size()) - 1);
    }

    // interreduce to the unique reduced basis
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < basis.size(); ++i) {
            std::vector<Polynomial> others;
            std::vector<Monomial> others_lead;
            for (size_t k = 0; k < basis.size(); ++k) {
                if (k == i) continue;
                others.push_back(basis[k]);
                others_lead.push_back(lead[k]);
            }
            Polynomial r = reduce_full(basis[i], others, others_lead, ord);
            if (r.is_zero()) {
                basis.erase(basis.begin() + i);
                lead.erase(lead.begin() + i);
                changed = true;
                break;
            }
            r = make_monic(r, ord);
            if (r != basis[i]) {
                basis[i] = r;
                lead[i] = r.leading(ord)->first;
                changed = true;
            }
        }
    }

    std::vector<size_t> perm(basis.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(),
              [&](size_t a, size_t b) { return ord.greater(lead[b], lead[a]); });
    std::vector<Polynomial> sorted;
    sorted.reserve(basis.size());
    for (size_t i : perm) sorted.push_back(basis[i]);

    return GroebnerBasis{I, ord, std::move(sorted)};
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& G) {
    if (!(p.context() == G.ideal.ctx))
        throw std::invalid_argument("normal_form: context mismatch");
    std::vector<Monomial> lead;
    lead.reserve(G.basis.size());
    for (const auto& g : G.basis) lead.push_back(g.leading(G.order)->first);
    return reduce_full(p, G.basis, lead, G.order);
}

bool ideal_membership(const Polynomial& p, const GroebnerBasis& G) {
    return normal_form(p, G).is_zero();
}

Ideal eliminate(const Ideal& I, const std::vector<bool>& drop) {
    if (static_cast<int>(drop.size()) != I.ctx.arity())
        throw std::invalid_argument("eliminate: mask arity mismatch");
    GroebnerBasis G = buchberger(I, MonomialOrder::elimination(drop));
    std::vector<Polynomial> kept;
    for (const auto& g : G.basis) {
        bool uses_dropped = false;
        for (const auto& [m, c] : g.terms())
            for (size_t i = 0; i < drop.size(); ++i)
                if (drop[i] && m[i] > 0) uses_dropped = true;
        if (!uses_dropped) kept.push_back(g);
    }
    return Ideal(I.ctx, std::move(kept));
}

Ideal saturate(const Ideal& I, const Polynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("saturate: zero polynomial");
    if (f.is_constant()) return I;
    std::string tname = "_t";
    int counter = 0;
    while (I.ctx.contains(tname)) tname = "_t" + std::to_string(counter++);
    VariableContext ext = I.ctx.extended(tname);
    const int ti = ext.arity() - 1;

    std::vector<Polynomial> gens;
    for (const auto& g : I.generators) gens.push_back(lift_to_context(g, ext));
    Polynomial tf = Polynomial::variable(ext, ti) * lift_to_context(f, ext);
    gens.push_back(tf - Polynomial::constant(ext, Rational(1)));

    std::vector<bool> drop(ext.arity(), false);
    drop[ti] = true;
    Ideal elim = eliminate(Ideal(ext, std::move(gens)), drop);

    std::vector<Polynomial> back;
    for (const auto& g : elim.generators) back.push_back(drop_variable(g, ti));
    return Ideal(I.ctx, std::move(back));
}

bool is_unit_ideal(const Ideal& I) {
    GroebnerBasis G = buchberger(I, MonomialOrder::grevlex());
    for (const auto& g : G.basis)
        if (g.is_constant() && !g.is_zero()) return true;
    return false;
}

bool ideal_equal(const Ideal& a, const Ideal& b) {
    if (!(a.ctx == b.ctx)) return false;
    GroebnerBasis Ga = buchberger(a, MonomialOrder::grevlex());
    GroebnerBasis Gb = buchberger(b, MonomialOrder::grevlex());
    if (Ga.basis.size() != Gb.basis.size()) return false;
    for (size_t i = 0; i < Ga.basis.size(); ++i)
        if (Ga.basis[i] != Gb.basis[i]) return false;
    return true;
}

namespace {

std::vector<Monomial> initial_monomials(const Ideal& I, bool* unit) {
    GroebnerBasis G = buchberger(I, MonomialOrder::grevlex());
    std::vector<Monomial> lead;
    *unit = false;
    for (const auto& g : G.basis) {
        Monomial m = g.leading(G.order)->first;
        if (total_degree(m) == 0) *unit = true;
        lead.push_back(std::move(m));
    }
    return lead;
}

// remove generators divisible by another generator
std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
    std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
        return grevlex_greater(b, a);
    });
    std::vector<Monomial> out;
    for (const auto& m : gens) {
        bool divisible = false;
        for (const auto& g : out)
            if (monomial_divides(g, m)) divisible = true;
        if (!divisible) out.push_back(m);
    }
    return out;
}

using ZPoly = std::vector<Integer>;  // univariate over Z, index = degree

ZPoly zpoly_one() { return {Integer(1)}; }

void zpoly_sub_shifted(ZPoly& a, const ZPoly& b, int shift) {
    if (a.size() < b.size() + shift) a.resize(b.size() + shift, Integer(0));
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= b[i];
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

// Hilbert series numerator of R/(monomial ideal), over (1-t)^n
ZPoly hilbert_numerator(std::vector<Monomial> gens) {
    gens = minimalize(std::move(gens));
    if (gens.empty()) return zpoly_one();
    for (const auto& g : gens)
        if (total_degree(g) == 0) return {};  // unit ideal: series 0
    if (gens.size() == 1) {
        ZPoly out = zpoly_one();
        zpoly_sub_shifted(out, zpoly_one(), total_degree(gens[0]));
        return out;
    }
    Monomial pivot = gens.back();
    std::vector<Monomial> rest(gens.begin(), gens.end() - 1);
    std::vector<Monomial> colon;
    colon.reserve(rest.size());
    for (const auto& g : rest) {
        Monomial q(g.size());
        for (size_t i = 0; i < g.size(); ++i) q[i] = std::max(0, g[i] - pivot[i]);
        colon.push_back(std::move(q));
    }
    ZPoly out = hilbert_numerator(rest);
    zpoly_sub_shifted(out, hilbert_numerator(std::move(colon)), total_degree(pivot));
    return out;
}

Integer zpoly_at_one(const ZPoly& p) {
    Integer s(0);
    for (const auto& c : p) s += c;
    return s;
}

// exact division by (1 - t); caller guarantees p(1) = 0
ZPoly zpoly_div_one_minus_t(const ZPoly& p) {
    ZPoly d(p.size() ? p.size() - 1 : 0);
    Integer run(0);
    for (size_t i = 0; i + 1 < p.size(); ++i) {
        run += p[i];
        d[i] = run;
    }
    while (!d.empty() && sgn(d.back()) == 0) d.pop_back();
    return d;
}

}  // namespace

int krull_dimension(const Ideal& I) {
    const int n = I.ctx.arity();
    bool unit = false;
    std::vector<Monomial> lead = initial_monomials(I, &unit);
    if (unit) throw std::invalid_argument("krull_dimension: unit ideal");
    if (n > 24) throw std::invalid_argument("krull_dimension: too many variables");
    int best = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size <= best) continue;
        bool independent = true;
        for (const auto& m : lead) {
            bool inside = true;
            for (int i = 0; i < n; ++i)
                if (m[i] > 0 && !(mask & (1u << i))) inside = false;
            if (inside) {
                independent = false;
                break;
            }
        }
        if (independent) best = size;
    }
    return best;
}

int hilbert_degree(const Ideal& I) {
    for (const auto& g : I.generators)
        if (!g.is_homogeneous())
            throw std::invalid_argument("hilbert_degree: non-homogeneous ideal");
    bool unit = false;
    std::vector<Monomial> lead = initial_monomials(I, &unit);
    if (unit) throw std::invalid_argument("hilbert_degree: unit ideal");
    ZPoly num = hilbert_numerator(std::move(lead));
    while (!num.empty() && sgn(zpoly_at_one(num)) == 0) num = zpoly_div_one_minus_t(num);
    Integer e = zpoly_at_one(num);
    return static_cast<int>(e.get_si());
}

long long staircase_dimension(const Ideal& I) {
    const int n = I.ctx.arity();
    bool unit = false;
    std::vector<Monomial> lead = minimalize(initial_monomials(I, &unit));
    if (unit) return 0;
    // zero-dimensionality: a pure power of every variable appears
    std::vector<int> bound(n, -1);
    for (const auto& m : lead) {
        int support = -1;
        bool pure = true;
        for (int i = 0; i < n; ++i) {
            if (m[i] == 0) continue;
            if (support >= 0) pure = false;
            support = i;
        }
        if (pure && support >= 0)
            bound[support] = bound[support] < 0 ? m[support] : std::min(bound[support], m[support]);
    }
    for (int i = 0; i < n; ++i)
        if (bound[i] < 0)
            throw std::invalid_argument("staircase_dimension: ideal is not zero-dimensional");

    long long count = 0;
    Monomial cur(n, 0);
    auto divisible = [&](const Monomial& m) {
        for (const auto& g : lead)
            if (monomial_divides(g, m)) return true;
        return false;
    };
    // walk the finite box below the pure powers
    auto walk = [&](auto&& self, int v) -> void {
        if (v == n) {
            if (!divisible(cur)) ++count;
            return;
        }
        for (cur[v] = 0; cur[v] < bound[v]; ++cur[v]) self(self, v + 1);
        cur[v] = 0;
    };
    walk(walk, 0);
    return count;
}

namespace {

bool is_univariate_in(const Polynomial& p, int var) {
    for (const auto& [m, c] : p.terms())
        for (size_t i = 0; i < m.size(); ++i)
            if (static_cast<int>(i) != var && m[i] > 0) return false;
    return true;
}

int univariate_degree(const Polynomial& p, int var) {
    int d = kDegreeOfZero;
    for (const auto& [m, c] : p.terms()) d = std::max(d, m[var]);
    return d;
}

Rational univariate_coeff(const Polynomial& p, int var, int deg) {
    Monomial m(p.context().arity(), 0);
    m[var] = deg;
    return p.coefficient(m);
}

Polynomial univariate_rem(Polynomial a, const Polynomial& b, int var) {
    const int db = univariate_degree(b, var);
    const Rational lb = univariate_coeff(b, var, db);
    while (!a.is_zero() && univariate_degree(a, var) >= db) {
        int da = univariate_degree(a, var);
        Rational la = univariate_coeff(a, var, da);
        Monomial shift(a.context().arity(), 0);
        shift[var] = da - db;
        a -= Polynomial::term(a.context(), la / lb, shift) * b;
    }
    return a;
}

Polynomial univariate_gcd(Polynomial a, Polynomial b, int var) {
    while (!b.is_zero()) {
        Polynomial r = univariate_rem(a, b, var);
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    int da = univariate_degree(a, var);
    return a.scaled(1 / univariate_coeff(a, var, da));
}

}  // namespace

long long zero_dim_point_count(const Ideal& I) {
    const int n = I.ctx.arity();
    if (is_unit_ideal(I)) return 0;
    // confirms zero-dimensionality as a side effect
    (void)staircase_dimension(I);

    std::vector<Polynomial> radical_gens = I.generators;
    for (int i = 0; i < n; ++i) {
        std::vector<bool> drop(n, true);
        drop[i] = false;
        Ideal elim = eliminate(I, drop);
        Polynomial minimal(I.ctx);
        for (const auto& g : elim.generators) {
            if (!is_univariate_in(g, i)) continue;
            minimal = minimal.is_zero() ? g : univariate_gcd(minimal, g, i);
        }
        if (minimal.is_zero())
            throw std::invalid_argument("zero_dim_point_count: no univariate relation");
        Polynomial derivative = differentiate(minimal, i);
        Polynomial g = univariate_gcd(minimal, derivative, i);
        Polynomial squarefree = g.is_constant()
                                    ? minimal
                                    : *exact_divide(minimal, g);
        radical_gens.push_back(std::move(squarefree));
    }
    return staircase_dimension(Ideal(I.ctx, std::move(radical_gens)));
}

}  // namespace cechdr

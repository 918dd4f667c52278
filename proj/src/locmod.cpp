#include "cechdr/locmod.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace cechdr {

namespace {
bool associates(const Polynomial& a, const Polynomial& b) {
    if (a.degree() != b.degree()) return false;
    auto q = exact_divide(a, b);
    return q && q->is_constant();
}
}  // namespace

LocalizedModuleSpec::LocalizedModuleSpec(VariableContext ctx,
                                         std::vector<Polynomial> denominators,
                                         std::vector<int> quotient)
    : ctx_(std::move(ctx)), denominators_(std::move(denominators)), quotient_(std::move(quotient)) {
    const int m = static_cast<int>(denominators_.size());
    for (const auto& f : denominators_) {
        if (f.is_zero()) throw std::invalid_argument("denominator is zero");
        if (!(f.context() == ctx_))
            throw std::invalid_argument("denominator context mismatch");
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (associates(denominators_[i], denominators_[j]))
                throw std::invalid_argument("denominators must be pairwise non-associate");

    std::sort(quotient_.begin(), quotient_.end());
    quotient_.erase(std::unique(quotient_.begin(), quotient_.end()), quotient_.end());
    for (int q : quotient_)
        if (q < 0 || q >= m) throw std::invalid_argument("quotient index out of range");

    product_ = Polynomial::constant(ctx_, Rational(1));
    graded_ = true;
    for (const auto& f : denominators_) {
        product_ = product_ * f;
        if (!f.is_homogeneous()) graded_ = false;
    }
    product_degree_ = m == 0 ? 0 : product_.degree();

    if (quotient_.empty()) {
        intent_ = ModuleIntent::PlainLocalization;
    } else if (static_cast<int>(quotient_.size()) == m) {
        intent_ = ModuleIntent::LocalCohomology;
        // the Cech top quotient equals H^m only for height-m denominator ideals
        Ideal I(ctx_, denominators_);
        int dim;
        try {
            dim = krull_dimension(I);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument(
                "local-cohomology intent refused: denominators generate the unit ideal");
        }
        if (dim != ctx_.arity() - m)
            throw std::invalid_argument(
                "local-cohomology intent refused: dim R/(f_1..f_m) = " + std::to_string(dim) +
                " but n - m = " + std::to_string(ctx_.arity() - m));
    } else {
        intent_ = ModuleIntent::LocalizedLocalCohomology;
    }
}

LocalizedModuleSpec LocalizedModuleSpec::polynomial_ring(VariableContext ctx) {
    return LocalizedModuleSpec(std::move(ctx), {}, {});
}

LocalizedModuleSpec LocalizedModuleSpec::localization(VariableContext ctx,
                                                      std::vector<Polynomial> denominators) {
    return LocalizedModuleSpec(std::move(ctx), std::move(denominators), {});
}

LocalizedModuleSpec LocalizedModuleSpec::cech_top(const Ideal& I) {
    if (I.generators.empty())
        throw std::invalid_argument("cech_top: no generators");
    std::vector<int> all(I.generators.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return LocalizedModuleSpec(I.ctx, I.generators, std::move(all));
}

LocalizedModuleSpec LocalizedModuleSpec::localized_at(const Polynomial& extra) const {
    std::vector<Polynomial> denoms = denominators_;
    denoms.push_back(extra);
    return LocalizedModuleSpec(ctx_, std::move(denoms), quotient_);
}

LocalizedModuleSpec LocalizedModuleSpec::laurent_extension(const std::string& z_name) const {
    VariableContext ext = ctx_.extended(z_name);
    std::vector<Polynomial> denoms;
    denoms.reserve(denominators_.size() + 1);
    for (const auto& f : denominators_) denoms.push_back(lift_to_context(f, ext));
    denoms.push_back(Polynomial::variable(ext, ext.arity() - 1));
    return LocalizedModuleSpec(ext, std::move(denoms), quotient_);
}

std::string LocalizedModuleSpec::describe() const {
    std::ostringstream out;
    out << "R";
    if (!denominators_.empty()) {
        out << "_{";
        for (size_t i = 0; i < denominators_.size(); ++i)
            out << (i ? ", " : "") << denominators_[i].str();
        out << "}";
    }
    if (!quotient_.empty()) {
        out << " / sum over {";
        for (size_t i = 0; i < quotient_.size(); ++i)
            out << (i ? "," : "") << quotient_[i] + 1;
        out << "}";
    }
    return out.str();
}

Fraction make_fraction(const LocalizedModuleSpec& spec, Polynomial numerator,
                       std::vector<int> exponents) {
    if (static_cast<int>(exponents.size()) != spec.denominator_count())
        throw std::invalid_argument("fraction exponent count mismatch");
    for (int e : exponents)
        if (e < 0) throw std::invalid_argument("negative denominator exponent");
    if (!(numerator.context() == spec.context()))
        throw std::invalid_argument("fraction numerator context mismatch");
    return normalize(Fraction{std::move(numerator), std::move(exponents)}, spec);
}

Fraction zero_fraction(const LocalizedModuleSpec& spec) {
    return Fraction{Polynomial::zero(spec.context()),
                    std::vector<int>(spec.denominator_count(), 0)};
}

Fraction normalize(Fraction u, const LocalizedModuleSpec& spec) {
    if (u.numerator.is_zero()) {
        std::fill(u.exponents.begin(), u.exponents.end(), 0);
        return u;
    }
    for (int j = 0; j < spec.denominator_count(); ++j) {
        while (u.exponents[j] > 0) {
            auto q = exact_divide(u.numerator, spec.denominators()[j]);
            if (!q) break;
            u.numerator = std::move(*q);
            --u.exponents[j];
        }
    }
    return u;
}

Fraction apply_partial(const Fraction& u, int var, const LocalizedModuleSpec& spec) {
    if (var < 0 || var >= spec.arity())
        throw std::out_of_range("apply_partial: variable index out of range");
    const int m = spec.denominator_count();
    // d(g / prod f_j^{k_j}) over the common denominator prod f_j^{k_j + 1}
    Polynomial numerator = differentiate(u.numerator, var);
    for (int j = 0; j < m; ++j) numerator = numerator * spec.denominators()[j];
    for (int j = 0; j < m; ++j) {
        if (u.exponents[j] == 0) continue;
        Polynomial part = differentiate(spec.denominators()[j], var)
                              .scaled(Rational(u.exponents[j]));
        for (int l = 0; l < m; ++l)
            if (l != j) part = part * spec.denominators()[l];
        numerator -= u.numerator * part;
    }
    std::vector<int> exps(u.exponents);
    for (int j = 0; j < m; ++j) ++exps[j];
    return normalize(Fraction{std::move(numerator), std::move(exps)}, spec);
}

Fraction fraction_add(const Fraction& a, const Fraction& b, const LocalizedModuleSpec& spec) {
    const int m = spec.denominator_count();
    std::vector<int> exps(m, 0);
    Polynomial na = a.numerator, nb = b.numerator;
    for (int j = 0; j < m; ++j) {
        exps[j] = std::max(a.exponents[j], b.exponents[j]);
        na = na * poly_pow(spec.denominators()[j], exps[j] - a.exponents[j]);
        nb = nb * poly_pow(spec.denominators()[j], exps[j] - b.exponents[j]);
    }
    return normalize(Fraction{na + nb, std::move(exps)}, spec);
}

Fraction fraction_poly_mul(const Polynomial& p, const Fraction& u,
                           const LocalizedModuleSpec& spec) {
    return normalize(Fraction{p * u.numerator, u.exponents}, spec);
}

bool fraction_equal(const Fraction& a, const Fraction& b, const LocalizedModuleSpec& spec) {
    const int m = spec.denominator_count();
    Polynomial na = a.numerator, nb = b.numerator;
    for (int j = 0; j < m; ++j) {
        int top = std::max(a.exponents[j], b.exponents[j]);
        na = na * poly_pow(spec.denominators()[j], top - a.exponents[j]);
        nb = nb * poly_pow(spec.denominators()[j], top - b.exponents[j]);
    }
    return na == nb;
}

TruncationWindow grow_step(const LocalizedModuleSpec& spec, TruncationWindow w) {
    return TruncationWindow{w.pole_order + 1, w.numerator_degree + spec.degree_step()};
}

TruncationWindow codomain_step(const LocalizedModuleSpec& spec, TruncationWindow w) {
    return TruncationWindow{w.pole_order + 1, w.numerator_degree + spec.product_degree()};
}

namespace {
std::vector<Monomial> monomials_up_to(int arity, int max_degree) {
    std::vector<Monomial> out;
    Monomial cur(arity, 0);
    std::function<void(int, int)> walk = [&](int var, int remaining) {
        if (var == arity) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[var] = e;
            walk(var + 1, remaining - e);
        }
        cur[var] = 0;
    };
    if (arity == 0) {
        out.push_back(Monomial{});
        return out;
    }
    walk(0, max_degree);
    std::sort(out.begin(), out.end(),
              [](const Monomial& a, const Monomial& b) { return grevlex_greater(b, a); });
    return out;
}
}  // namespace

WindowBasis::WindowBasis(const LocalizedModuleSpec& spec, TruncationWindow w) : window_(w) {
    if (w.pole_order < 0 || w.numerator_degree < 0)
        throw std::invalid_argument("window parameters must be non-negative");
    graded_ = spec.graded();
    block_shift_ = w.pole_order * spec.product_degree();
    monomials_ = monomials_up_to(spec.arity(), w.numerator_degree);
    for (int i = 0; i < static_cast<int>(monomials_.size()); ++i)
        index_.emplace(monomials_[i], i);

    // span of { f_j^k h : j in Q, deg(f_j^k h) <= D }
    for (int j : spec.quotient_set()) {
        const Polynomial& f = spec.denominators()[j];
        Polynomial fk = poly_pow(f, w.pole_order);
        const int budget = w.numerator_degree - fk.degree();
        if (budget < 0) continue;
        for (const auto& beta : monomials_up_to(spec.arity(), budget)) {
            SparseVec row;
            row.reserve(fk.term_count());
            for (const auto& [m, c] : fk.terms()) {
                auto it = index_.find(monomial_mul(m, beta));
                row.emplace_back(it->second, c);
            }
            std::sort(row.begin(), row.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            quotient_rows_.insert(std::move(row));
        }
    }

    for (int i = 0; i < static_cast<int>(monomials_.size()); ++i) {
        if (quotient_rows_.rows().count(i)) continue;
        free_position_.emplace(i, static_cast<int>(free_columns_.size()));
        free_columns_.push_back(i);
    }
}

const Monomial& WindowBasis::class_monomial(int qcol) const {
    return monomials_[free_columns_.at(qcol)];
}

int WindowBasis::block_of(int qcol) const {
    if (!graded_) return 0;
    return total_degree(class_monomial(qcol)) - block_shift_;
}

SparseVec WindowBasis::project_polynomial(const Polynomial& numerator) const {
    SparseVec v;
    v.reserve(numerator.term_count());
    for (const auto& [m, c] : numerator.terms()) {
        auto it = index_.find(m);
        if (it == index_.end())
            throw std::invalid_argument("window too small: numerator degree " +
                                        std::to_string(total_degree(m)) + " exceeds " +
                                        std::to_string(window_.numerator_degree));
        v.emplace_back(it->second, c);
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    quotient_rows_.reduce(v);
    for (auto& [idx, c] : v) idx = free_position_.at(idx);
    return v;
}

SparseVec WindowBasis::project_fraction(const Fraction& u, const LocalizedModuleSpec& spec) const {
    Polynomial numerator = u.numerator;
    for (int j = 0; j < spec.denominator_count(); ++j) {
        int deficit = window_.pole_order - u.exponents[j];
        if (deficit < 0)
            throw std::invalid_argument("window too small: pole order exceeds window");
        numerator = numerator * poly_pow(spec.denominators()[j], deficit);
    }
    return project_polynomial(numerator);
}

SparseVec partial_of_class(const LocalizedModuleSpec& spec, const WindowBasis& dom, int qcol,
                           int var, const WindowBasis& cod) {
    if (cod.window().pole_order < dom.window().pole_order + (spec.denominator_count() ? 1 : 0))
        throw std::invalid_argument("window too small: codomain pole order");
    Fraction u{Polynomial::term(spec.context(), Rational(1), dom.class_monomial(qcol)),
               std::vector<int>(spec.denominator_count(), dom.window().pole_order)};
    Fraction du = apply_partial(u, var, spec);
    return cod.project_fraction(du, spec);
}

SparseVec embed_class(const LocalizedModuleSpec& spec, const WindowBasis& dom, int qcol,
                      const WindowBasis& cod) {
    Fraction u{Polynomial::term(spec.context(), Rational(1), dom.class_monomial(qcol)),
               std::vector<int>(spec.denominator_count(), dom.window().pole_order)};
    return cod.project_fraction(u, spec);
}

std::vector<std::vector<int>> index_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

SparseMatrix koszul_differential(int nops, int degree_i,
                                 const std::vector<std::vector<SparseVec>>& partials,
                                 int dom_qdim, int cod_qdim) {
    SparseMatrix mat;
    auto dom_subsets = index_subsets(nops, degree_i);
    auto cod_subsets = index_subsets(nops, degree_i - 1);
    std::map<std::vector<int>, int> cod_pos;
    for (int s = 0; s < static_cast<int>(cod_subsets.size()); ++s)
        cod_pos.emplace(cod_subsets[s], s);

    mat.rows = static_cast<int>(cod_subsets.size()) * cod_qdim;
    mat.cols.reserve(dom_subsets.size() * static_cast<size_t>(dom_qdim));
    for (const auto& J : dom_subsets) {
        for (int c = 0; c < dom_qdim; ++c) {
            SparseVec col;
            for (size_t t = 0; t < J.size(); ++t) {
                std::vector<int> rest;
                rest.reserve(J.size() - 1);
                for (size_t s = 0; s < J.size(); ++s)
                    if (s != t) rest.push_back(J[s]);
                const int offset = cod_pos.at(rest) * cod_qdim;
                const Rational sign(t % 2 == 0 ? 1 : -1);
                SparseVec shifted;
                shifted.reserve(partials[J[t]][c].size());
                for (const auto& [idx, val] : partials[J[t]][c])
                    shifted.emplace_back(idx + offset, val);
                sparse_axpy(col, sign, shifted);
            }
            mat.cols.push_back(std::move(col));
        }
    }
    return mat;
}

KoszulLayer assemble_koszul(const LocalizedModuleSpec& spec, const std::vector<int>& ops,
                            const WindowBasis& dom, const WindowBasis& cod) {
    KoszulLayer layer;
    layer.ops = ops;
    layer.dom_dim = dom.quotient_dimension();
    layer.cod_dim = cod.quotient_dimension();
    const int nops = static_cast<int>(ops.size());

    std::vector<std::vector<SparseVec>> partials(nops);
    for (int t = 0; t < nops; ++t) {
        partials[t].reserve(layer.dom_dim);
        for (int c = 0; c < layer.dom_dim; ++c)
            partials[t].push_back(partial_of_class(spec, dom, c, ops[t], cod));
    }
    for (int i = 1; i <= nops; ++i)
        layer.differentials.push_back(
            koszul_differential(nops, i, partials, layer.dom_dim, layer.cod_dim));
    return layer;
}

}  // namespace cechdr

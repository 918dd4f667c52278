#include "cechdr/polynomial.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cechdr {

VariableContext::VariableContext(std::vector<std::string> names)
    : names_(std::make_shared<std::vector<std::string>>(std::move(names))) {
    std::set<std::string> seen;
    for (const auto& n : *names_) {
        if (n.empty()) throw std::invalid_argument("empty variable name");
        if (!seen.insert(n).second)
            throw std::invalid_argument("duplicate variable name: " + n);
    }
}

int VariableContext::index_of(const std::string& name) const {
    for (int i = 0; i < arity(); ++i)
        if ((*names_)[i] == name) return i;
    return -1;
}

VariableContext VariableContext::extended(const std::string& new_name) const {
    if (contains(new_name))
        throw std::invalid_argument("variable name clash: " + new_name);
    std::vector<std::string> names = *names_;
    names.push_back(new_name);
    return VariableContext(std::move(names));
}

VariableContext VariableContext::dropped(int index) const {
    std::vector<std::string> names = *names_;
    if (index < 0 || index >= arity()) throw std::out_of_range("variable index");
    names.erase(names.begin() + index);
    return VariableContext(std::move(names));
}

bool monomial_divides(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (size_t i = 0; i < a.size(); ++i) r[i] += b[i];
    return r;
}

Monomial monomial_div(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (size_t i = 0; i < a.size(); ++i) {
        r[i] -= b[i];
        if (r[i] < 0) throw std::invalid_argument("monomial_div: not divisible");
    }
    return r;
}

Monomial monomial_lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

bool grevlex_greater(const Monomial& a, const Monomial& b) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

bool lex_greater(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

namespace {
// grevlex on the sub-vector selected by mask==value
bool masked_grevlex_greater(const Monomial& a, const Monomial& b,
                            const std::vector<bool>& mask, bool value, bool* equal) {
    int da = 0, db = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (mask[i] == value) { da += a[i]; db += b[i]; }
    *equal = false;
    if (da != db) return da > db;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
        if (mask[i] != value) continue;
        if (a[i] != b[i]) return a[i] < b[i];
    }
    *equal = true;
    return false;
}
}  // namespace

MonomialOrder MonomialOrder::elimination_split(int first_block_size, int arity) {
    std::vector<bool> mask(arity, false);
    for (int i = 0; i < first_block_size && i < arity; ++i) mask[i] = true;
    return elimination(std::move(mask));
}

bool MonomialOrder::greater(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
        case Kind::Grevlex: return grevlex_greater(a, b);
        case Kind::Lex: return lex_greater(a, b);
        case Kind::Elimination: {
            if (mask_.size() != a.size())
                throw std::invalid_argument("elimination order arity mismatch");
            bool equal = false;
            bool g = masked_grevlex_greater(a, b, mask_, true, &equal);
            if (!equal) return g;
            return masked_grevlex_greater(a, b, mask_, false, &equal);
        }
    }
    return false;
}

std::string MonomialOrder::describe() const {
    switch (kind_) {
        case Kind::Grevlex: return "grevlex";
        case Kind::Lex: return "lex";
        case Kind::Elimination: return "elimination";
    }
    return "?";
}

Polynomial Polynomial::constant(const VariableContext& ctx, const Rational& c) {
    Polynomial p(ctx);
    if (!cechdr::is_zero(c)) p.terms_.emplace(Monomial(ctx.arity(), 0), c);
    return p;
}

Polynomial Polynomial::variable(const VariableContext& ctx, int index) {
    if (index < 0 || index >= ctx.arity()) throw std::out_of_range("variable index");
    Monomial m(ctx.arity(), 0);
    m[index] = 1;
    Polynomial p(ctx);
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
}

Polynomial Polynomial::term(const VariableContext& ctx, const Rational& c, Monomial m) {
    if (static_cast<int>(m.size()) != ctx.arity())
        throw std::invalid_argument("monomial arity mismatch");
    Polynomial p(ctx);
    if (!cechdr::is_zero(c)) p.terms_.emplace(std::move(m), c);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

bool Polynomial::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = total_degree(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (total_degree(m) != d) return false;
    return true;
}

int Polynomial::degree() const {
    if (terms_.empty()) return kDegreeOfZero;
    // storage order is degree-compatible, so the first term carries max degree
    return total_degree(terms_.begin()->first);
}

const std::pair<const Monomial, Rational>& Polynomial::leading() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return *terms_.begin();
}

Polynomial::TermMap::const_iterator Polynomial::leading(const MonomialOrder& ord) const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        if (ord.greater(it->first, best->first)) best = it;
    return best;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (static_cast<int>(m.size()) != ctx_.arity())
        throw std::invalid_argument("monomial arity mismatch");
    if (cechdr::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (cechdr::is_zero(it->second)) terms_.erase(it);
    }
}

void Polynomial::check_compatible(const Polynomial& other) const {
    if (!(ctx_ == other.ctx_))
        throw std::invalid_argument("polynomial context mismatch");
}

Polynomial Polynomial::operator-() const {
    Polynomial r(ctx_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    Polynomial r = *this;
    r += other;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    Polynomial r = *this;
    r -= other;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    check_compatible(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    check_compatible(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    check_compatible(other);
    Polynomial r(ctx_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : other.terms_)
            r.add_term(monomial_mul(ma, mb), ca * cb);
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial r(ctx_);
    if (cechdr::is_zero(c)) return r;
    for (const auto& [m, coef] : terms_) r.terms_.emplace(m, coef * c);
    return r;
}

Polynomial operator*(const Rational& c, const Polynomial& p) { return p.scaled(c); }

bool Polynomial::operator==(const Polynomial& other) const {
    return ctx_ == other.ctx_ && terms_ == other.terms_;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != ctx_.arity())
        throw std::invalid_argument("evaluation point arity mismatch");
    Rational total(0);
    for (const auto& [m, c] : terms_) {
        Rational term = c;
        for (int i = 0; i < ctx_.arity(); ++i)
            for (int e = 0; e < m[i]; ++e) term *= point[i];
        total += term;
    }
    return total;
}

Polynomial poly_pow(const Polynomial& p, int k) {
    if (k < 0) throw std::invalid_argument("negative power");
    Polynomial r = Polynomial::constant(p.context(), Rational(1));
    Polynomial base = p;
    while (k > 0) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

Polynomial differentiate(const Polynomial& p, int var_index) {
    if (var_index < 0 || var_index >= p.context().arity())
        throw std::out_of_range("differentiate: variable index out of range");
    Polynomial r(p.context());
    for (const auto& [m, c] : p.terms()) {
        if (m[var_index] == 0) continue;
        Monomial d = m;
        d[var_index] -= 1;
        r.add_term(d, c * Rational(m[var_index]));
    }
    return r;
}

std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& q) {
    if (q.is_zero()) throw std::invalid_argument("exact_divide: division by zero");
    Polynomial quot(p.context());
    Polynomial rem = p;
    const auto& [qm, qc] = q.leading();
    while (!rem.is_zero()) {
        const auto& [rm, rc] = rem.leading();
        if (!monomial_divides(qm, rm)) return std::nullopt;
        Rational c = rc / qc;
        Monomial m = monomial_div(rm, qm);
        quot.add_term(m, c);
        rem -= Polynomial::term(p.context(), c, m) * q;
    }
    return quot;
}

Polynomial substitute_all(const Polynomial& p, const std::vector<Polynomial>& images) {
    if (static_cast<int>(images.size()) != p.context().arity())
        throw std::invalid_argument("substitute_all: wrong number of images");
    VariableContext target =
        images.empty() ? p.context() : images.front().context();
    for (const auto& im : images)
        if (!(im.context() == target))
            throw std::invalid_argument("substitute_all: image context mismatch");

    // memoized powers per variable
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](int i, int e) -> const Polynomial& {
        auto& memo = powers[i];
        if (memo.empty()) memo.push_back(Polynomial::constant(target, Rational(1)));
        while (static_cast<int>(memo.size()) <= e)
            memo.push_back(memo.back() * images[i]);
        return memo[e];
    };

    Polynomial r(target);
    for (const auto& [m, c] : p.terms()) {
        Polynomial term = Polynomial::constant(target, c);
        for (size_t i = 0; i < images.size(); ++i)
            if (m[i] > 0) term = term * power(static_cast<int>(i), m[i]);
        r += term;
    }
    return r;
}

namespace {
// true when the square matrix has nonzero determinant (Gaussian elimination)
bool invertible(std::vector<std::vector<Rational>> a) {
    const size_t n = a.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && is_zero(a[piv][col])) ++piv;
        if (piv == n) return false;
        std::swap(a[piv], a[col]);
        for (size_t r = col + 1; r < n; ++r) {
            if (is_zero(a[r][col])) continue;
            Rational f = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return true;
}
}  // namespace

Polynomial linear_change(const Polynomial& p, const std::vector<std::vector<Rational>>& A) {
    const int n = p.context().arity();
    if (static_cast<int>(A.size()) != n)
        throw std::invalid_argument("linear_change: matrix size mismatch");
    for (const auto& row : A)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("linear_change: matrix not square");
    if (!invertible(A)) throw std::invalid_argument("linear_change: singular matrix");
    std::vector<Polynomial> images;
    images.reserve(n);
    for (int i = 0; i < n; ++i) {
        Polynomial form(p.context());
        for (int j = 0; j < n; ++j) {
            if (is_zero(A[i][j])) continue;
            Monomial m(n, 0);
            m[j] = 1;
            form.add_term(m, A[i][j]);
        }
        images.push_back(std::move(form));
    }
    return substitute_all(p, images);
}

Polynomial homogenize_poly(const Polynomial& p, const std::string& z_name) {
    VariableContext ctx = p.context().extended(z_name);
    Polynomial r(ctx);
    if (p.is_zero()) return r;
    const int d = p.degree();
    for (const auto& [m, c] : p.terms()) {
        Monomial mm = m;
        mm.push_back(d - total_degree(m));
        r.add_term(mm, c);
    }
    return r;
}

Polynomial dehomogenize_poly(const Polynomial& p, const std::string& z_name) {
    int zi = p.context().index_of(z_name);
    if (zi < 0) throw std::invalid_argument("dehomogenize: no such variable: " + z_name);
    VariableContext ctx = p.context().dropped(zi);
    Polynomial r(ctx);
    for (const auto& [m, c] : p.terms()) {
        Monomial mm;
        mm.reserve(m.size() - 1);
        for (size_t i = 0; i < m.size(); ++i)
            if (static_cast<int>(i) != zi) mm.push_back(m[i]);
        r.add_term(mm, c);
    }
    return r;
}

Polynomial lift_to_context(const Polynomial& p, const VariableContext& bigger) {
    const int n = p.context().arity();
    if (bigger.arity() < n)
        throw std::invalid_argument("lift_to_context: target smaller than source");
    for (int i = 0; i < n; ++i)
        if (bigger.name(i) != p.context().name(i))
            throw std::invalid_argument("lift_to_context: prefix mismatch");
    Polynomial r(bigger);
    for (const auto& [m, c] : p.terms()) {
        Monomial mm = m;
        mm.resize(bigger.arity(), 0);
        r.add_term(mm, c);
    }
    return r;
}

Polynomial drop_variable(const Polynomial& p, int var_index) {
    for (const auto& [m, c] : p.terms())
        if (m[var_index] != 0)
            throw std::invalid_argument("drop_variable: variable occurs in polynomial");
    VariableContext ctx = p.context().dropped(var_index);
    Polynomial r(ctx);
    for (const auto& [m, c] : p.terms()) {
        Monomial mm;
        mm.reserve(m.size() - 1);
        for (size_t i = 0; i < m.size(); ++i)
            if (static_cast<int>(i) != var_index) mm.push_back(m[i]);
        r.add_term(mm, c);
    }
    return r;
}

Polynomial substitute_value(const Polynomial& p, int var_index, const Rational& value) {
    Polynomial r(p.context());
    for (const auto& [m, c] : p.terms()) {
        Rational coef = c;
        for (int e = 0; e < m[var_index]; ++e) coef *= value;
        if (is_zero(coef)) continue;
        Monomial mm = m;
        mm[var_index] = 0;
        r.add_term(mm, coef);
    }
    return r;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational coef = c;
        if (first) {
            if (sgn(coef) < 0) {
                out << "-";
                coef = -coef;
            }
        } else {
            out << (sgn(coef) < 0 ? " - " : " + ");
            if (sgn(coef) < 0) coef = -coef;
        }
        first = false;
        bool has_vars = total_degree(m) > 0;
        bool coef_is_one = (coef == Rational(1));
        if (!has_vars || !coef_is_one) out << coef.get_str();
        bool printed = !has_vars || !coef_is_one;
        for (int i = 0; i < ctx_.arity(); ++i) {
            if (m[i] == 0) continue;
            if (printed) out << "*";
            out << ctx_.name(i);
            if (m[i] > 1) out << "^" << m[i];
            printed = true;
        }
    }
    return out.str();
}

}  // namespace cechdr

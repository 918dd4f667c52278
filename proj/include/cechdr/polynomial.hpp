#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cechdr/rational.hpp"

namespace cechdr {

// Ordered list of variable names shared by every polynomial of a ring.
// Value semantics: two contexts are equal iff their name lists are equal.
class VariableContext {
  public:
    VariableContext() : names_(std::make_shared<std::vector<std::string>>()) {}
    explicit VariableContext(std::vector<std::string> names);

    int arity() const { return static_cast<int>(names_->size()); }
    const std::vector<std::string>& names() const { return *names_; }
    const std::string& name(int i) const { return names_->at(i); }
    // -1 when absent
    int index_of(const std::string& name) const;
    bool contains(const std::string& name) const { return index_of(name) >= 0; }

    VariableContext extended(const std::string& new_name) const;
    VariableContext dropped(int index) const;

    bool operator==(const VariableContext& other) const {
        return names_ == other.names_ || *names_ == *other.names_;
    }
    bool operator!=(const VariableContext& other) const { return !(*this == other); }

  private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

// Exponent vector; length always equals the ambient context arity.
using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

bool monomial_divides(const Monomial& a, const Monomial& b);  // a | b
Monomial monomial_mul(const Monomial& a, const Monomial& b);
Monomial monomial_div(const Monomial& a, const Monomial& b);  // a / b, requires b | a
Monomial monomial_lcm(const Monomial& a, const Monomial& b);

// Graded reverse lexicographic "greater-than"; also the canonical storage
// order of Polynomial terms (descending), so iteration is deterministic.
bool grevlex_greater(const Monomial& a, const Monomial& b);
bool lex_greater(const Monomial& a, const Monomial& b);

class MonomialOrder {
  public:
    enum class Kind { Grevlex, Lex, Elimination };

    static MonomialOrder grevlex() { return MonomialOrder(Kind::Grevlex, {}); }
    static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
    // Block order: variables with mask[i] = true form the (greater) first
    // block; grevlex within each block.  Eliminates the masked variables.
    static MonomialOrder elimination(std::vector<bool> drop_mask) {
        return MonomialOrder(Kind::Elimination, std::move(drop_mask));
    }
    static MonomialOrder elimination_split(int first_block_size, int arity);

    bool greater(const Monomial& a, const Monomial& b) const;
    Kind kind() const { return kind_; }
    const std::vector<bool>& mask() const { return mask_; }
    std::string describe() const;

  private:
    MonomialOrder(Kind k, std::vector<bool> mask) : kind_(k), mask_(std::move(mask)) {}
    Kind kind_;
    std::vector<bool> mask_;
};

struct StorageTermCmp {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return grevlex_greater(a, b);
    }
};

inline constexpr int kDegreeOfZero = -1;  // stands in for deg(0) = -infinity

// Sparse multivariate polynomial with exact rational coefficients.
// Invariant: no stored coefficient is zero; all monomials share the
// context arity; terms iterate in descending grevlex order.
class Polynomial {
  public:
    using TermMap = std::map<Monomial, Rational, StorageTermCmp>;

    Polynomial() = default;
    explicit Polynomial(VariableContext ctx) : ctx_(std::move(ctx)) {}

    static Polynomial zero(const VariableContext& ctx) { return Polynomial(ctx); }
    static Polynomial constant(const VariableContext& ctx, const Rational& c);
    static Polynomial variable(const VariableContext& ctx, int index);
    static Polynomial term(const VariableContext& ctx, const Rational& c, Monomial m);

    const VariableContext& context() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_homogeneous() const;
    int degree() const;  // kDegreeOfZero for the zero polynomial
    int term_count() const { return static_cast<int>(terms_.size()); }

    // Leading term in the canonical storage order (grevlex).
    const std::pair<const Monomial, Rational>& leading() const;
    // Leading monomial with respect to an arbitrary order (linear scan).
    TermMap::const_iterator leading(const MonomialOrder& ord) const;

    void add_term(const Monomial& m, const Rational& c);

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial scaled(const Rational& c) const;

    bool operator==(const Polynomial& other) const;
    bool operator!=(const Polynomial& other) const { return !(*this == other); }

    Rational coefficient(const Monomial& m) const;
    Rational evaluate(const std::vector<Rational>& point) const;

    std::string str() const;

  private:
    void check_compatible(const Polynomial& other) const;
    VariableContext ctx_;
    TermMap terms_;
};

Polynomial operator*(const Rational& c, const Polynomial& p);

Polynomial poly_pow(const Polynomial& p, int k);

// d/dx_i; throws std::out_of_range for a bad index.
Polynomial differentiate(const Polynomial& p, int var_index);

// Returns p/q when q divides p exactly, std::nullopt otherwise.
// Throws std::invalid_argument when q = 0.
std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& q);

// Simultaneous substitution x_i -> images[i]; all images share one context.
Polynomial substitute_all(const Polynomial& p, const std::vector<Polynomial>& images);

// Substitutes x_i -> sum_j A[i][j] x_j.  Throws std::invalid_argument when A
// is singular or badly sized.
Polynomial linear_change(const Polynomial& p, const std::vector<std::vector<Rational>>& A);

// f* = z^{deg f} f(x_1/z, ..., x_n/z) with z appended as a fresh last
// variable; throws on a name clash.
Polynomial homogenize_poly(const Polynomial& p, const std::string& z_name);
// Sets z = 1 and removes z from the context.
Polynomial dehomogenize_poly(const Polynomial& p, const std::string& z_name);

// Re-expresses p in an extended context (extra variables appended, unused).
Polynomial lift_to_context(const Polynomial& p, const VariableContext& bigger);
// Removes an unused variable from the context; throws if it occurs.
Polynomial drop_variable(const Polynomial& p, int var_index);
// Substitute a single variable by a constant, keeping the context.
Polynomial substitute_value(const Polynomial& p, int var_index, const Rational& value);

}  // namespace cechdr

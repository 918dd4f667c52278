#pragma once

#include <string>
#include <vector>

#include "cechdr/groebner.hpp"
#include "cechdr/linalg.hpp"

namespace cechdr {

enum class ModuleIntent { PlainLocalization, LocalCohomology, LocalizedLocalCohomology };

// The module R_{f_1...f_m} / sum_{j in Q} R_{f_1...^f_j...f_m}.
//
// Q = {} is the plain localization, Q = {1..m} the top Cech cohomology
// H^m_{(f_1..f_m)}(R) (the engine refuses that intent unless the ideal of
// denominators has height m), and intermediate Q the localized quotients.
// m = 0 is the polynomial ring itself.
class LocalizedModuleSpec {
  public:
    LocalizedModuleSpec(VariableContext ctx, std::vector<Polynomial> denominators,
                        std::vector<int> quotient);

    static LocalizedModuleSpec polynomial_ring(VariableContext ctx);
    static LocalizedModuleSpec localization(VariableContext ctx,
                                            std::vector<Polynomial> denominators);
    // denominators = generators, Q full; checks dim R/(f_1..f_m) = n - m
    static LocalizedModuleSpec cech_top(const Ideal& I);

    // appends a denominator, Q unchanged (module localized at 'extra')
    LocalizedModuleSpec localized_at(const Polynomial& extra) const;
    // adjoins a fresh variable z and the denominator z: N[z, z^-1]
    LocalizedModuleSpec laurent_extension(const std::string& z_name) const;

    const VariableContext& context() const { return ctx_; }
    int arity() const { return ctx_.arity(); }
    const std::vector<Polynomial>& denominators() const { return denominators_; }
    int denominator_count() const { return static_cast<int>(denominators_.size()); }
    const std::vector<int>& quotient_set() const { return quotient_; }
    ModuleIntent intent() const { return intent_; }
    const Polynomial& denominator_product() const { return product_; }
    int product_degree() const { return product_degree_; }
    // Degree growth of one window step.  Embedding a window into the next
    // needs deg F per unit of pole order; the excess raises the reachable
    // element-degree ceiling so boundary witnesses near the window edge are
    // found.  Graded specs need exactly one unit; ungraded identity chains
    // can climb about deg F + 1 per pole.
    int degree_step() const {
        return graded_ ? product_degree_ + 1 : 2 * product_degree_ + 1;
    }
    bool graded() const { return graded_; }
    std::string describe() const;

  private:
    VariableContext ctx_;
    std::vector<Polynomial> denominators_;
    std::vector<int> quotient_;
    ModuleIntent intent_ = ModuleIntent::PlainLocalization;
    Polynomial product_;
    int product_degree_ = 0;
    bool graded_ = true;
};

// numerator / prod f_j^{exponents[j]}
struct Fraction {
    Polynomial numerator;
    std::vector<int> exponents;
};

Fraction make_fraction(const LocalizedModuleSpec& spec, Polynomial numerator,
                       std::vector<int> exponents);
Fraction zero_fraction(const LocalizedModuleSpec& spec);

// Cancels every f_j dividing the numerator; zero gets all-zero exponents.
Fraction normalize(Fraction u, const LocalizedModuleSpec& spec);

// d/dx_var by the quotient rule, exact, normalized.
Fraction apply_partial(const Fraction& u, int var, const LocalizedModuleSpec& spec);

Fraction fraction_add(const Fraction& a, const Fraction& b, const LocalizedModuleSpec& spec);
Fraction fraction_poly_mul(const Polynomial& p, const Fraction& u,
                           const LocalizedModuleSpec& spec);
// Equality in the localization (cross-multiplication, denominator-shape free).
bool fraction_equal(const Fraction& a, const Fraction& b, const LocalizedModuleSpec& spec);

struct TruncationWindow {
    int pole_order = 0;       // k
    int numerator_degree = 0; // D
    bool operator==(const TruncationWindow&) const = default;
};

// Domain growth of one probe step: pole + 1 and the full degree step, so the
// reachable element-degree ceiling rises and boundary witnesses appear.
TruncationWindow grow_step(const LocalizedModuleSpec& spec, TruncationWindow w);
// Minimal admissible codomain of one differential applied to w.
TruncationWindow codomain_step(const LocalizedModuleSpec& spec, TruncationWindow w);

// Finite-dimensional coordinates of the window {g/(f_1...f_m)^k : deg g <= D}
// inside the quotient module.  The ambient basis is the monomial list; the
// subtracted subspace is spanned by the multiples f_j^k h (j in Q) that fit
// in the window; quotient coordinates live on the non-pivot (free) columns
// of its row echelon form.
class WindowBasis {
  public:
    WindowBasis(const LocalizedModuleSpec& spec, TruncationWindow w);

    const TruncationWindow& window() const { return window_; }
    int ambient_dimension() const { return static_cast<int>(monomials_.size()); }
    int quotient_dimension() const { return static_cast<int>(free_columns_.size()); }
    const std::vector<Monomial>& monomials() const { return monomials_; }
    const std::vector<int>& free_columns() const { return free_columns_; }
    const Monomial& class_monomial(int qcol) const;
    // graded block key (numerator degree minus k deg F); 0 when ungraded
    int block_of(int qcol) const;

    // numerator polynomial (deg <= D) -> quotient coordinates
    SparseVec project_polynomial(const Polynomial& numerator) const;
    // arbitrary fraction over the spec's denominators -> quotient coordinates
    SparseVec project_fraction(const Fraction& u, const LocalizedModuleSpec& spec) const;

  private:
    TruncationWindow window_;
    int block_shift_ = 0;
    bool graded_ = false;
    std::vector<Monomial> monomials_;
    std::map<Monomial, int, StorageTermCmp> index_;
    Echelon quotient_rows_;
    std::vector<int> free_columns_;
    std::map<int, int> free_position_;  // ambient index -> quotient position
};

// Projection into 'cod' of d/dx_var applied to a quotient class of 'dom'.
// cod must be an admissible superset of the one-step image (throws
// std::invalid_argument("window too small ...") otherwise).
SparseVec partial_of_class(const LocalizedModuleSpec& spec, const WindowBasis& dom, int qcol,
                           int var, const WindowBasis& cod);
// Projection into 'cod' of the identity embedding of a class of 'dom'.
SparseVec embed_class(const LocalizedModuleSpec& spec, const WindowBasis& dom, int qcol,
                      const WindowBasis& cod);

struct SparseMatrix {
    int rows = 0;
    std::vector<SparseVec> cols;
    int col_count() const { return static_cast<int>(cols.size()); }
};

// Ascending-lexicographic k-subsets of {0..n-1}.
std::vector<std::vector<int>> index_subsets(int n, int k);

// Koszul differentials d_i : Lambda^i(K^ops) (x) C(dom) -> Lambda^{i-1} (x) C(cod)
// for i = 1..|ops|, in quotient coordinates.
struct KoszulLayer {
    std::vector<int> ops;                    // operator variable indices
    int dom_dim = 0, cod_dim = 0;            // quotient dims of the two windows
    std::vector<SparseMatrix> differentials; // index i-1 holds d_i
};

KoszulLayer assemble_koszul(const LocalizedModuleSpec& spec, const std::vector<int>& ops,
                            const WindowBasis& dom, const WindowBasis& cod);

// d_i assembled from precomputed per-class projected partials
// (partials[opPos][class]).
SparseMatrix koszul_differential(int nops, int degree_i,
                                 const std::vector<std::vector<SparseVec>>& partials,
                                 int dom_qdim, int cod_qdim);

}  // namespace cechdr

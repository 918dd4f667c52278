#pragma once

#include <vector>

#include "cechdr/polynomial.hpp"

namespace cechdr {

// Finitely generated ideal.  Zero generators are dropped on construction;
// an empty list represents the zero ideal (produced by elimination).
struct Ideal {
    Ideal(VariableContext ctx, std::vector<Polynomial> gens);
    VariableContext ctx;
    std::vector<Polynomial> generators;
};

struct GroebnerBasis {
    Ideal ideal;
    MonomialOrder order;
    std::vector<Polynomial> basis;  // reduced: monic, auto-reduced, sorted
};

// Buchberger with the normal selection strategy and both standard criteria;
// always returns the (unique) reduced basis.
GroebnerBasis buchberger(const Ideal& I, const MonomialOrder& ord);

// Full normal form (every term reduced); idempotent.
Polynomial normal_form(const Polynomial& p, const GroebnerBasis& G);
bool ideal_membership(const Polynomial& p, const GroebnerBasis& G);

// I intersected with the subring omitting the masked variables.
Ideal eliminate(const Ideal& I, const std::vector<bool>& drop);

// I : f^infinity via the extra-variable trick (adjoin t*f - 1, eliminate t).
Ideal saturate(const Ideal& I, const Polynomial& f);

bool is_unit_ideal(const Ideal& I);
bool ideal_equal(const Ideal& a, const Ideal& b);

// Krull dimension of R/I via independent variable sets of the initial
// ideal (grevlex).  Throws std::invalid_argument for the unit ideal.
int krull_dimension(const Ideal& I);

// Degree of Proj(R/I) for a homogeneous proper ideal: normalized leading
// coefficient of the Hilbert polynomial, from the initial ideal.
int hilbert_degree(const Ideal& I);

// dim_K(R/I) for zero-dimensional I (staircase count below the initial
// ideal).  Returns 0 for the unit ideal.
long long staircase_dimension(const Ideal& I);

// Number of distinct points of V(I) over the algebraic closure, i.e.
// dim_K(R/rad I); the radical is reached by adjoining the squarefree part
// of the minimal polynomial of each variable.  Requires dim(R/I) = 0;
// returns 0 for the unit ideal (empty variety).
long long zero_dim_point_count(const Ideal& I);

}  // namespace cechdr

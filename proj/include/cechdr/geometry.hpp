#pragma once

#include <cstdint>
#include <string>

#include "cechdr/groebner.hpp"

namespace cechdr {

struct GenericityCertificate {
    bool not_in_ideal = false;
    bool distinct_count_matches = false;
    bool none_at_infinity = false;
    std::uint64_t seed = 0;
    int attempts = 0;
};

struct GenericLinearForm {
    Polynomial form;  // homogeneous of degree 1
    GenericityCertificate certificate;
};

struct CurveGeometry {
    Ideal affine;   // P, dim(R/P) = 1
    Ideal closure;  // P* in the extended context
    std::string closure_variable;
    int degree = 0;
    int points_at_infinity = 0;
};

std::string fresh_variable_name(const VariableContext& ctx, const std::string& stem);

// Homogenization of a Groebner basis of P under a degree-compatible order;
// this is the full homogenization ideal (naive generator homogenization is
// not).  The new variable is appended last.
Ideal projective_closure(const Ideal& P, const std::string& z_name);

// Degree of the projective closure, from the Hilbert polynomial.
// Requires dim(R/P) = 1.
int curve_degree(const Ideal& P);

// Number of distinct points of V(P*) on the hyperplane at infinity,
// counted chart by chart with exclusion of previously covered charts.
int points_at_infinity_count(const Ideal& P);

CurveGeometry analyze_curve(const Ideal& P);

// Draws small random linear forms from a seeded generator until one is
// certified: z not in P, #V(P + z) = deg(C) distinct points, and no common
// solution with the hyperplane at infinity.  Throws std::runtime_error when
// certification fails within the retry budget.
GenericLinearForm generic_linear_form(const Ideal& P, std::uint64_t seed);

}  // namespace cechdr

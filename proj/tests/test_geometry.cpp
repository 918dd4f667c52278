#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cechdr/geometry.hpp"
#include "cechdr/parser.hpp"

using namespace cechdr;

namespace {
const VariableContext kXY({"x", "y"});
const VariableContext kXYZ({"x", "y", "z"});
Ideal I2(const std::string& text) { return Ideal(kXY, parse_ideal_text(text, kXY)); }
Ideal I3(const std::string& text) { return Ideal(kXYZ, parse_ideal_text(text, kXYZ)); }
}  // namespace

TEST_CASE("projective closure of principal ideals") {
    Ideal c1 = projective_closure(I2("[x*y + 1]"), "z");
    REQUIRE(c1.generators.size() == 1);
    CHECK(c1.generators[0] == parse_polynomial("x*y + z^2", kXYZ));

    Ideal c2 = projective_closure(I2("[y + x^3]"), "z");
    REQUIRE(c2.generators.size() == 1);
    CHECK(c2.generators[0] == parse_polynomial("y*z^2 + x^3", kXYZ));
}

TEST_CASE("projective closure of the twisted cubic") {
    Ideal cubic = I3("[y - x^2, z - x^3]");
    Ideal closure = projective_closure(cubic, "w");
    CHECK(hilbert_degree(closure) == 3);

    // dehomogenization returns the affine ideal
    std::vector<Polynomial> dehom;
    for (const auto& g : closure.generators) dehom.push_back(dehomogenize_poly(g, "w"));
    CHECK(ideal_equal(Ideal(kXYZ, dehom), cubic));
}

TEST_CASE("dehomogenize after closure is the identity on curve ideals") {
    for (const char* text : {"[x*y + 1]", "[y + x]", "[y + x^3]", "[y^2 - x^3 - 1]"}) {
        Ideal P = I2(text);
        Ideal closure = projective_closure(P, "w");
        std::vector<Polynomial> dehom;
        for (const auto& g : closure.generators) dehom.push_back(dehomogenize_poly(g, "w"));
        CHECK(ideal_equal(Ideal(kXY, dehom), P));
    }
}

TEST_CASE("curve degree") {
    CHECK(curve_degree(I2("[x*y + 1]")) == 2);
    CHECK(curve_degree(I2("[y + x^3]")) == 3);
    CHECK(curve_degree(I3("[y - x^2, z - x^3]")) == 3);
    CHECK_THROWS_AS(curve_degree(I2("[x, y]")), std::invalid_argument);
}

TEST_CASE("points at infinity, chart by chart") {
    CHECK(points_at_infinity_count(I2("[x*y + 1]")) == 2);   // [1:0:0], [0:1:0]
    CHECK(points_at_infinity_count(I2("[y + x^3]")) == 1);   // [0:1:0]
    CHECK(points_at_infinity_count(I2("[y + x]")) == 1);
    CHECK(points_at_infinity_count(I3("[y - x^2, z - x^3]")) == 1);
}

TEST_CASE("degree dominates the boundary point count") {
    for (const char* text : {"[x*y + 1]", "[y + x]", "[y + x^3]", "[y^2 - x^3 - 1]"}) {
        Ideal P = I2(text);
        int e = curve_degree(P);
        int v = points_at_infinity_count(P);
        CHECK(v >= 1);
        CHECK(e >= v);
    }
}

TEST_CASE("generic linear forms are certified and reproducible") {
    Ideal P = I2("[x*y + 1]");
    auto f1 = generic_linear_form(P, 7);
    CHECK(f1.certificate.not_in_ideal);
    CHECK(f1.certificate.distinct_count_matches);
    CHECK(f1.certificate.none_at_infinity);
    CHECK(f1.certificate.seed == 7);
    CHECK(f1.form.degree() == 1);
    CHECK(f1.form.is_homogeneous());

    auto f2 = generic_linear_form(P, 7);
    CHECK(f1.form == f2.form);
    CHECK(f1.certificate.attempts == f2.certificate.attempts);

    // the certified section really has deg(C) distinct points
    std::vector<Polynomial> cut = P.generators;
    cut.push_back(f1.form);
    CHECK(zero_dim_point_count(Ideal(kXY, cut)) == curve_degree(P));
}

TEST_CASE("generic forms for the line avoid the ideal itself") {
    Ideal P = I2("[y + x]");
    for (std::uint64_t seed : {0ull, 1ull, 2ull, 9ull}) {
        auto f = generic_linear_form(P, seed);
        auto G = buchberger(P, MonomialOrder::grevlex());
        CHECK(!ideal_membership(f.form, G));
    }
}

TEST_CASE("analyze_curve assembles consistent geometry") {
    CurveGeometry geo = analyze_curve(I2("[x*y + 1]"));
    CHECK(geo.degree == 2);
    CHECK(geo.points_at_infinity == 2);
    CHECK(geo.degree == hilbert_degree(geo.closure));
}

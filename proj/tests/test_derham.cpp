#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cechdr/derham.hpp"
#include "cechdr/parser.hpp"

using namespace cechdr;

namespace {

const VariableContext kXY({"x", "y"});

LocalizedModuleSpec h1_spec(const std::string& f_text) {
    Ideal I(kXY, parse_ideal_text("[" + f_text + "]", kXY));
    return LocalizedModuleSpec::cech_top(I);
}

std::vector<int> dims_of(const LocalizedModuleSpec& spec,
                         WindowSchedule sched = WindowSchedule{}) {
    DeRhamResult r = derham_homology(spec, sched);
    REQUIRE(r.stabilized);
    return r.dims;
}

}  // namespace

TEST_CASE("chi sign conventions") {
    CHECK(chi_of_dims({1, 1, 0}) == 0);
    CHECK(chi_c_of_dims({1, 1, 0}) == 0);
    CHECK(chi_of_dims({0, 1, 0}) == -1);
    CHECK(chi_c_of_dims({0, 1, 0}) == -1);
    CHECK(chi_of_dims({1, 0, 0}) == 1);
    CHECK(chi_c_of_dims({1, 0, 0}) == 1);
    CHECK(chi_of_dims({0, 1, 1}) == 0);
    CHECK(chi_c_of_dims({1, 1}) == 0);
    // chi_c = (-1)^n chi
    CHECK(chi_c_of_dims({2, 0, 0, 0}) == -2);
}

TEST_CASE("polynomial rings concentrate in the top degree") {
    VariableContext x({"x"});
    CHECK(dims_of(LocalizedModuleSpec::polynomial_ring(x)) == std::vector<int>{0, 1});
    CHECK(dims_of(LocalizedModuleSpec::polynomial_ring(kXY)) == std::vector<int>{0, 0, 1});
}

TEST_CASE("top local cohomology of the maximal ideal") {
    Ideal I(kXY, parse_ideal_text("[x, y]", kXY));
    auto r = derham_homology(LocalizedModuleSpec::cech_top(I), WindowSchedule{});
    REQUIRE(r.stabilized);
    CHECK(r.dims == std::vector<int>{1, 0, 0});
    CHECK(r.chi == 1);
    CHECK(r.chi_c == 1);
}

TEST_CASE("laurent rings") {
    VariableContext none(std::vector<std::string>{});
    auto kz = LocalizedModuleSpec::polynomial_ring(none).laurent_extension("z");
    CHECK(dims_of(kz) == std::vector<int>{1, 1});

    VariableContext x({"x"});
    auto kxz = LocalizedModuleSpec::polynomial_ring(x).laurent_extension("z");
    auto r = derham_homology(kxz, WindowSchedule{});
    REQUIRE(r.stabilized);
    CHECK(r.dims == std::vector<int>{0, 1, 1});
    CHECK(r.chi == 0);
}

TEST_CASE("the worked curve examples") {
    auto hyperbola = derham_homology(h1_spec("x*y + 1"), WindowSchedule{});
    REQUIRE(hyperbola.stabilized);
    CHECK(hyperbola.dims == std::vector<int>{1, 1, 0});
    CHECK(hyperbola.chi == 0);
    CHECK(hyperbola.chi_c == 0);

    auto line = derham_homology(h1_spec("y + x"), WindowSchedule{});
    REQUIRE(line.stabilized);
    CHECK(line.dims == std::vector<int>{0, 1, 0});
    CHECK(line.chi == -1);
}

TEST_CASE("plain localization at a line") {
    auto spec = LocalizedModuleSpec::localization(kXY, parse_ideal_text("[y + x]", kXY));
    auto r = derham_homology(spec, WindowSchedule{});
    REQUIRE(r.stabilized);
    CHECK(r.dims == std::vector<int>{0, 1, 1});
}

TEST_CASE("single-operator kernels of plain localizations do not stabilize") {
    // ker(d/dy) on K[x,y]_{y+x} is a copy of K[x]: infinite-dimensional, so the
    // engine must keep reporting growth instead of an answer
    auto spec = LocalizedModuleSpec::localization(kXY, parse_ideal_text("[y + x]", kXY));
    WindowSchedule sched;
    sched.max_windows = 6;
    DeRhamResult r = derham_homology(spec, sched, {1});
    CHECK(!r.stabilized);
    CHECK(!r.note.empty());
    CHECK(r.trace.size() == 6);
    for (size_t i = 1; i < r.trace.size(); ++i)
        CHECK(r.trace[i].apparent[1] > r.trace[i - 1].apparent[1]);
}

TEST_CASE("regular denominator: no z-kernel in the pure quotient H^1_z") {
    // H^1_z(K[x,z]) = K[x,z]_z / K[x,z]; d/dz acts without kernel on it
    VariableContext ctx({"x", "z"});
    Ideal I(ctx, {Polynomial::variable(ctx, 1)});
    auto spec = LocalizedModuleSpec(ctx, {Polynomial::variable(ctx, 1)}, {0});
    for (int t = 0; t < 3; ++t) {
        TruncationWindow w{2 + t, 5 + 3 * t};
        WorkCounters counters;
        auto entry = homology_dims(spec, {1}, w, 2, &counters);
        CHECK(entry.apparent[1] == 0);  // H_1(d/dz; H^1_z) = 0 at every window
    }
}

TEST_CASE("apparent dims never increase with probe depth") {
    auto spec = h1_spec("x*y + 1");
    TruncationWindow w{3, 8};
    WorkCounters counters;
    auto shallow = homology_dims(spec, {0, 1}, w, 1, &counters);
    auto deep = homology_dims(spec, {0, 1}, w, 3, &counters);
    for (size_t i = 0; i < shallow.apparent.size(); ++i)
        CHECK(deep.apparent[i] <= shallow.apparent[i]);
}

TEST_CASE("cycle dimensions grow with the outer window") {
    auto r = derham_homology(h1_spec("x*y + 1"), WindowSchedule{});
    REQUIRE(r.trace.size() >= 2);
    for (size_t t = 1; t < r.trace.size(); ++t)
        for (size_t i = 0; i < r.trace[t].cycles.size(); ++i)
            CHECK(r.trace[t].cycles[i] >= r.trace[t - 1].cycles[i]);
}

TEST_CASE("stabilized dims survive a random linear change of variables") {
    std::mt19937_64 rng(61);
    auto base = derham_homology(h1_spec("x*y + 1"), WindowSchedule{});
    REQUIRE(base.stabilized);

    DenseMatrix a;
    do {
        a.assign(2, std::vector<Rational>(2));
        for (auto& row : a)
            for (auto& v : row) v = Rational(static_cast<long>(rng() % 5) - 2);
    } while (!matrix_inverse(a));

    Polynomial moved = linear_change(parse_polynomial("x*y + 1", kXY), a);
    auto changed = derham_homology(LocalizedModuleSpec::cech_top(Ideal(kXY, {moved})),
                                   WindowSchedule{});
    REQUIRE(changed.stabilized);
    CHECK(changed.dims == base.dims);
}

TEST_CASE("budget exhaustion is reported, not fabricated") {
    WindowSchedule tight;
    tight.max_windows = 1;  // below the stabilization span
    auto r = derham_homology(h1_spec("x*y + 1"), tight);
    CHECK(!r.stabilized);
    CHECK(r.dims.empty());
    CHECK(!r.note.empty());
    CHECK(r.trace.size() == 1);
}

TEST_CASE("an expired deadline aborts before fabricating anything") {
    WindowSchedule sched;
    sched.max_windows = 50;
    auto deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    auto r = derham_homology(h1_spec("x*y + 1"), sched, {}, deadline);
    CHECK(!r.stabilized);
    CHECK(r.dims.empty());
    CHECK(r.note.find("time budget") != std::string::npos);
    CHECK(r.trace.empty());
}

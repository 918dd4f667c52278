#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cechdr/linalg.hpp"

using namespace cechdr;

namespace {

std::vector<std::vector<Rational>> random_matrix(std::mt19937_64& rng, int rows, int cols,
                                                 int rank_cap) {
    // product of random rows*r and r*cols factors keeps the rank at most r
    const int r = rank_cap;
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(r));
    std::vector<std::vector<Rational>> b(r, std::vector<Rational>(cols));
    for (auto& row : a)
        for (auto& v : row) v = Rational(static_cast<long>(rng() % 7) - 3);
    for (auto& row : b)
        for (auto& v : row) v = Rational(static_cast<long>(rng() % 7) - 3);
    return matrix_product(a, b);
}

std::vector<SparseVec> columns_of(const std::vector<std::vector<Rational>>& m) {
    if (m.empty()) return {};
    std::vector<SparseVec> cols(m.front().size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j)
            if (!is_zero(m[i][j])) cols[j].emplace_back(static_cast<int>(i), m[i][j]);
    return cols;
}

}  // namespace

TEST_CASE("exact rank on the contract examples") {
    std::vector<std::vector<Rational>> id3{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(exact_rank(id3) == 3);

    std::vector<std::vector<Rational>> zero(4, std::vector<Rational>(3, Rational(0)));
    CHECK(exact_rank(zero) == 0);

    // derivative on the basis {1, x, x^2}
    std::vector<std::vector<Rational>> ddx{{0, 1, 0}, {0, 0, 2}, {0, 0, 0}};
    CHECK(exact_rank(ddx) == 2);

    std::vector<std::vector<Rational>> rationals{{make_rational(1, 2), make_rational(1, 3)},
                                                 {make_rational(3, 2), Rational(2)}};
    CHECK(exact_rank(rationals) == 2);
    std::vector<std::vector<Rational>> singular{{make_rational(1, 2), make_rational(1, 3)},
                                                {make_rational(3, 2), Rational(1)}};
    CHECK(exact_rank(singular) == 1);
}

TEST_CASE("Bareiss rank agrees with sparse echelon rank on random matrices") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 120; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 8);
        int cols = 1 + static_cast<int>(rng() % 8);
        int cap = 1 + static_cast<int>(rng() % std::min(rows, cols));
        auto m = random_matrix(rng, rows, cols, cap);
        int dense = exact_rank(m);
        int sparse = exact_rank(columns_of(m), rows);
        CHECK(dense == sparse);
        CHECK(dense <= cap);
    }
}

TEST_CASE("echelon kernel tracking yields honest dependencies") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 60; ++trial) {
        int rows = 2 + static_cast<int>(rng() % 6);
        int cols = 2 + static_cast<int>(rng() % 6);
        int cap = 1 + static_cast<int>(rng() % std::min(rows, cols));
        auto m = random_matrix(rng, rows, cols, cap);
        auto cols_sparse = columns_of(m);

        Echelon ech;
        int kernel_dim = 0;
        for (size_t j = 0; j < cols_sparse.size(); ++j) {
            SparseVec dep;
            if (!ech.insert_tracked(cols_sparse[j],
                                    SparseVec{{static_cast<int>(j), Rational(1)}}, &dep)) {
                ++kernel_dim;
                // the dependency really is a kernel vector of the matrix
                SparseVec image;
                for (const auto& [col, coeff] : dep) sparse_axpy(image, coeff, cols_sparse[col]);
                CHECK(image.empty());
            }
        }
        CHECK(kernel_dim == static_cast<int>(cols_sparse.size()) - exact_rank(m));
    }
}

TEST_CASE("reduce eliminates every pivot column") {
    Echelon ech;
    ech.insert(SparseVec{{0, Rational(1)}, {2, Rational(3)}});
    ech.insert(SparseVec{{1, Rational(2)}, {2, Rational(1)}});
    SparseVec v{{0, Rational(5)}, {1, Rational(4)}, {3, Rational(1)}};
    ech.reduce(v);
    for (const auto& [idx, val] : v) {
        CHECK(idx != 0);
        CHECK(idx != 1);
    }
}

TEST_CASE("dense inverse round-trips") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + static_cast<int>(rng() % 5);
        DenseMatrix a(n, std::vector<Rational>(n));
        for (auto& row : a)
            for (auto& v : row) v = Rational(static_cast<long>(rng() % 11) - 5);
        auto inv = matrix_inverse(a);
        if (!inv) continue;
        CHECK(matrix_product(a, *inv) == identity_matrix(n));
    }
    CHECK(!matrix_inverse(DenseMatrix{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}));
}

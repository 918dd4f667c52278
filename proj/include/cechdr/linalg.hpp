#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cechdr/rational.hpp"

namespace cechdr {

// Sorted-by-index sparse vector; entries are nonzero.
using SparseVec = std::vector<std::pair<int, Rational>>;

void sparse_axpy(SparseVec& dst, const Rational& c, const SparseVec& src);
SparseVec sparse_scaled(const SparseVec& v, const Rational& c);
bool sparse_equal(const SparseVec& a, const SparseVec& b);

// Incremental row echelon over the rationals.  Rows keep distinct pivot
// (leading) columns with pivot coefficient 1 and are forward-reduced only;
// normal forms against the basis are computed by repeated pivot elimination.
class Echelon {
  public:
    struct Row {
        SparseVec vec;
        SparseVec tag;  // expression of vec in terms of inserted vectors
    };

    // Inserts v; returns true when v was independent of the current rows.
    bool insert(SparseVec v);

    // Tracked insertion: tag identifies v in the caller's indexing.  When v
    // is dependent, *dependency (if non-null) receives the combination of
    // previously inserted tags that reproduces v (including v's own tag with
    // coefficient 1, i.e. a kernel element of the inserted family).
    bool insert_tracked(SparseVec v, SparseVec tag, SparseVec* dependency);

    // Eliminates every pivot column from v (normal form against the rows).
    void reduce(SparseVec& v) const;

    int rank() const { return static_cast<int>(rows_.size()); }
    const std::map<int, Row>& rows() const { return rows_; }

    long long work() const { return work_; }

  private:
    std::map<int, Row> rows_;  // pivot column -> row
    long long work_ = 0;
};

// Rank of an exact rational matrix (rows of equal length) via fraction-free
// Bareiss elimination on the denominator-cleared integer matrix.
int exact_rank(const std::vector<std::vector<Rational>>& matrix);
int exact_rank(const std::vector<SparseVec>& columns, int nrows);

// Integer sparse vectors for the fraction-free elimination fast path.
using ZSparseVec = std::vector<std::pair<int, Integer>>;

// scale * v cleared of denominators; scale is the positive lcm.
ZSparseVec to_integer(const SparseVec& v, Integer* scale = nullptr);

// Incremental fraction-free echelon over the integers.  Vectors are combined
// by cross-multiplication and stripped to primitive content, so no rational
// arithmetic happens; tracked dependencies come back as integer kernel
// vectors of the inserted family, each up to one overall nonzero scalar.
class ZEchelon {
  public:
    bool insert(ZSparseVec v);
    bool insert_tracked(ZSparseVec v, ZSparseVec tag, ZSparseVec* dependency);
    int rank() const { return static_cast<int>(rows_.size()); }
    long long work() const { return work_; }

  private:
    struct Row {
        ZSparseVec vec;
        ZSparseVec tag;
    };
    std::map<int, Row> rows_;
    long long work_ = 0;
};

// Small dense helpers for coordinate changes.
using DenseMatrix = std::vector<std::vector<Rational>>;
DenseMatrix identity_matrix(int n);
DenseMatrix matrix_product(const DenseMatrix& a, const DenseMatrix& b);
std::optional<DenseMatrix> matrix_inverse(const DenseMatrix& a);

}  // namespace cechdr

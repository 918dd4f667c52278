#include "cechdr/linalg.hpp"

#include <stdexcept>

namespace cechdr {

void sparse_axpy(SparseVec& dst, const Rational& c, const SparseVec& src) {
    if (is_zero(c) || src.empty()) return;
    SparseVec out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            out.emplace_back(src[j].first, c * src[j].second);
            ++j;
        } else {
            Rational v = dst[i].second + c * src[j].second;
            if (!is_zero(v)) out.emplace_back(dst[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    dst = std::move(out);
}

SparseVec sparse_scaled(const SparseVec& v, const Rational& c) {
    SparseVec out;
    if (is_zero(c)) return out;
    out.reserve(v.size());
    for (const auto& [i, x] : v) out.emplace_back(i, c * x);
    return out;
}

bool sparse_equal(const SparseVec& a, const SparseVec& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].first != b[i].first || a[i].second != b[i].second) return false;
    return true;
}

bool Echelon::insert(SparseVec v) { return insert_tracked(std::move(v), {}, nullptr); }

bool Echelon::insert_tracked(SparseVec v, SparseVec tag, SparseVec* dependency) {
    while (!v.empty()) {
        const int lead = v.front().first;
        auto it = rows_.find(lead);
        if (it == rows_.end()) {
            // new pivot; normalize lead coefficient to 1
            Rational inv = 1 / v.front().second;
            v = sparse_scaled(v, inv);
            tag = sparse_scaled(tag, inv);
            work_ += static_cast<long long>(v.size());
            rows_.emplace(lead, Row{std::move(v), std::move(tag)});
            return true;
        }
        Rational c = -v.front().second;
        sparse_axpy(v, c, it->second.vec);
        sparse_axpy(tag, c, it->second.tag);
        work_ += static_cast<long long>(it->second.vec.size());
    }
    if (dependency) *dependency = std::move(tag);
    return false;
}

void Echelon::reduce(SparseVec& v) const {
    size_t i = 0;
    while (i < v.size()) {
        auto it = rows_.find(v[i].first);
        if (it == rows_.end()) {
            ++i;
            continue;
        }
        Rational c = -v[i].second;
        sparse_axpy(v, c, it->second.vec);
        // the eliminated column vanished; entries before position i are
        // untouched because row pivots are leading (smallest) indices
    }
}

namespace {
Integer row_denominator_lcm(const std::vector<Rational>& row) {
    Integer l(1);
    for (const auto& q : row) {
        if (is_zero(q)) continue;
        Integer den = q.get_den();
        Integer g;
        mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
        l = l / g * den;
    }
    return l;
}
}  // namespace

int exact_rank(const std::vector<std::vector<Rational>>& matrix) {
    if (matrix.empty()) return 0;
    const size_t rows = matrix.size();
    const size_t cols = matrix.front().size();
    for (const auto& r : matrix)
        if (r.size() != cols) throw std::invalid_argument("exact_rank: ragged matrix");

    // clear denominators row by row; rank is unchanged
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (size_t i = 0; i < rows; ++i) {
        Integer l = row_denominator_lcm(matrix[i]);
        for (size_t j = 0; j < cols; ++j) {
            Rational scaled = matrix[i][j] * Rational(l);
            a[i][j] = scaled.get_num();
        }
    }

    // one-step fraction-free (Bareiss) elimination
    Integer prev(1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && sgn(a[piv][c]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (sgn(a[i][c]) == 0) {
                for (size_t j = c + 1; j < cols; ++j) {
                    Integer t = a[r][c] * a[i][j];
                    mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                }
                continue;
            }
            for (size_t j = c + 1; j < cols; ++j) {
                Integer t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

int exact_rank(const std::vector<SparseVec>& columns, int nrows) {
    Echelon ech;
    (void)nrows;
    for (const auto& col : columns) ech.insert(col);
    return ech.rank();
}

ZSparseVec to_integer(const SparseVec& v, Integer* scale) {
    Integer l(1);
    for (const auto& [idx, q] : v) {
        Integer den = q.get_den();
        Integer g;
        mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
        l = l / g * den;
    }
    ZSparseVec out;
    out.reserve(v.size());
    for (const auto& [idx, q] : v) {
        Rational scaled = q * Rational(l);
        out.emplace_back(idx, scaled.get_num());
    }
    if (scale) *scale = l;
    return out;
}

namespace {

Integer content_of(const ZSparseVec& v) {
    Integer g(0);
    for (const auto& [idx, c] : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

void divide_by(ZSparseVec& v, const Integer& g) {
    for (auto& [idx, c] : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// dst := a*dst - b*src, merged
ZSparseVec ff_combine(const ZSparseVec& dst, const Integer& a, const ZSparseVec& src,
                      const Integer& b) {
    ZSparseVec out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.emplace_back(dst[i].first, a * dst[i].second);
            ++i;
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            out.emplace_back(src[j].first, -b * src[j].second);
            ++j;
        } else {
            Integer val = a * dst[i].second - b * src[j].second;
            if (sgn(val) != 0) out.emplace_back(dst[i].first, std::move(val));
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

bool ZEchelon::insert(ZSparseVec v) { return insert_tracked(std::move(v), {}, nullptr); }

bool ZEchelon::insert_tracked(ZSparseVec v, ZSparseVec tag, ZSparseVec* dependency) {
    while (!v.empty()) {
        const int lead = v.front().first;
        auto it = rows_.find(lead);
        if (it == rows_.end()) {
            // keep rows primitive with a positive lead; tags share the scalar
            Integer g = content_of(v);
            if (!tag.empty()) {
                Integer gt = content_of(tag);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), gt.get_mpz_t());
            }
            if (sgn(v.front().second) < 0) g = -g;
            if (g != 1) {
                divide_by(v, g);
                divide_by(tag, g);
            }
            work_ += static_cast<long long>(v.size());
            rows_.emplace(lead, Row{std::move(v), std::move(tag)});
            return true;
        }
        const Integer a = it->second.vec.front().second;  // pivot lead, positive
        const Integer b = v.front().second;
        work_ += static_cast<long long>(it->second.vec.size());
        v = ff_combine(v, a, it->second.vec, b);
        tag = ff_combine(tag, a, it->second.tag, b);
        Integer g = content_of(v);
        if (!tag.empty()) {
            Integer gt = content_of(tag);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), gt.get_mpz_t());
        }
        if (g > 1) {
            divide_by(v, g);
            divide_by(tag, g);
        }
    }
    if (dependency) *dependency = std::move(tag);
    return false;
}

DenseMatrix identity_matrix(int n) {
    DenseMatrix m(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

DenseMatrix matrix_product(const DenseMatrix& a, const DenseMatrix& b) {
    const size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b.front().size();
    DenseMatrix out(n, std::vector<Rational>(m, Rational(0)));
    for (size_t i = 0; i < n; ++i) {
        if (a[i].size() != k) throw std::invalid_argument("matrix_product: shape mismatch");
        for (size_t t = 0; t < k; ++t) {
            if (is_zero(a[i][t])) continue;
            for (size_t j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
        }
    }
    return out;
}

std::optional<DenseMatrix> matrix_inverse(const DenseMatrix& a) {
    const size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("matrix_inverse: not square");
    DenseMatrix work = a;
    DenseMatrix inv = identity_matrix(static_cast<int>(n));
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && is_zero(work[piv][col])) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(work[piv], work[col]);
        std::swap(inv[piv], inv[col]);
        Rational d = work[col][col];
        for (size_t j = 0; j < n; ++j) {
            work[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || is_zero(work[r][col])) continue;
            Rational f = work[r][col];
            for (size_t j = 0; j < n; ++j) {
                work[r][j] -= f * work[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

}  // namespace cechdr

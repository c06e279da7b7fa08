#pragma once

#include "leibniz/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace leibniz {

using Vec = std::vector<Scalar>;

inline Vec zero_vec(std::size_t n) { return Vec(n, Scalar(0)); }

inline bool is_zero(const Vec& v)
{
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return is_zero(s); });
}

inline Vec operator+(const Vec& a, const Vec& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vector size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

inline Vec operator-(const Vec& a, const Vec& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vector size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

inline Vec operator*(const Scalar& c, const Vec& v)
{
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = c * v[i];
    return r;
}

inline void add_scaled(Vec& acc, const Scalar& c, const Vec& v)
{
    if (acc.size() != v.size())
        throw std::invalid_argument("vector size mismatch");
    if (is_zero(c))
        return;
    for (std::size_t i = 0; i < v.size(); ++i)
        acc[i] += c * v[i];
}

/// Dense matrix of exact rationals, row-major. Entry (r,c) is the
/// coefficient of basis vector r in the image of basis vector c, i.e.
/// matrices act on column coordinate vectors from the left.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0))
    {
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const Matrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(),
                           [](const Scalar& s) { return leibniz::is_zero(s); });
    }

    Matrix operator+(const Matrix& o) const
    {
        check_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i)
            r.data_[i] = data_[i] + o.data_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const
    {
        check_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i)
            r.data_[i] = data_[i] - o.data_[i];
        return r;
    }

    Matrix operator*(const Matrix& o) const
    {
        if (cols_ != o.rows_)
            throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Scalar& a = (*this)(i, k);
                if (leibniz::is_zero(a))
                    continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const Scalar& b = o(k, j);
                    if (!leibniz::is_zero(b))
                        r(i, j) += a * b;
                }
            }
        return r;
    }

    friend Matrix operator*(const Scalar& c, const Matrix& m)
    {
        Matrix r(m.rows_, m.cols_);
        for (std::size_t i = 0; i < m.data_.size(); ++i)
            r.data_[i] = c * m.data_[i];
        return r;
    }

    Vec apply(const Vec& v) const
    {
        if (v.size() != cols_)
            throw std::invalid_argument("matrix apply shape mismatch");
        Vec r = zero_vec(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                const Scalar& a = (*this)(i, j);
                if (!leibniz::is_zero(a))
                    r[i] += a * v[j];
            }
        return r;
    }

    Matrix transpose() const
    {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(j, i) = (*this)(i, j);
        return r;
    }

    Vec row(std::size_t r) const
    {
        Vec v(cols_);
        for (std::size_t j = 0; j < cols_; ++j)
            v[j] = (*this)(r, j);
        return v;
    }

    Vec col(std::size_t c) const
    {
        Vec v(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            v[i] = (*this)(i, c);
        return v;
    }

    void set_row(std::size_t r, const Vec& v)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(r, j) = v[j];
    }

    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols)
    {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw std::invalid_argument("from_rows: ragged input");
            m.set_row(i, rows[i]);
        }
        return m;
    }

    static Matrix from_cols(const std::vector<Vec>& cols, std::size_t rows)
    {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows)
                throw std::invalid_argument("from_cols: ragged input");
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = cols[j][i];
        }
        return m;
    }

private:
    void check_same_shape(const Matrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<Scalar> data_;
};

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form by Gauss-Jordan elimination. Pivot choice is
/// the first nonzero entry in column order, so the result is the unique
/// RREF and the computation is deterministic.
inline RrefResult rref(const Matrix& m)
{
    Matrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
        std::size_t sel = a.rows();
        for (std::size_t r = pivot_row; r < a.rows(); ++r) {
            if (!is_zero(a(r, col))) {
                sel = r;
                break;
            }
        }
        if (sel == a.rows())
            continue;
        if (sel != pivot_row)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a(pivot_row, j), a(sel, j));
        const Scalar inv = Scalar(1) / a(pivot_row, col);
        for (std::size_t j = col; j < a.cols(); ++j)
            a(pivot_row, j) *= inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == pivot_row || is_zero(a(r, col)))
                continue;
            const Scalar f = a(r, col);
            for (std::size_t j = col; j < a.cols(); ++j)
                a(r, j) -= f * a(pivot_row, j);
        }
        pivots.push_back(col);
        ++pivot_row;
    }
    return {std::move(a), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Basis of the kernel {x : m x = 0}, one vector per free column of the
/// RREF, with a 1 in the free coordinate.
inline std::vector<Vec> nullspace_from_rref(const RrefResult& rr, std::size_t cols)
{
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : rr.pivots)
        is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        Vec v = zero_vec(cols);
        v[f] = 1;
        for (std::size_t r = 0; r < rr.pivots.size(); ++r)
            v[rr.pivots[r]] = -rr.reduced(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::vector<Vec> nullspace(const Matrix& m)
{
    return nullspace_from_rref(rref(m), m.cols());
}

/// Solution set of a linear system: a particular solution plus a basis of
/// the homogeneous kernel. `consistent == false` is a normal outcome, not
/// an error. `variable_names` is optional labeling used by callers that
/// solve in named unknowns.
struct AffineSolutionSpace {
    bool consistent = true;
    Vec particular;
    std::vector<Vec> basis;
    std::vector<std::string> variable_names;

    std::size_t dimension() const { return basis.size(); }
};

inline AffineSolutionSpace solve_affine(const Matrix& a, const Vec& b)
{
    if (a.rows() != b.size())
        throw std::invalid_argument("solve_affine: rhs length mismatch");
    Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    const RrefResult rr = rref(aug);
    AffineSolutionSpace sol;
    for (std::size_t p : rr.pivots) {
        if (p == a.cols()) {
            sol.consistent = false;
            return sol;
        }
    }
    sol.particular = zero_vec(a.cols());
    for (std::size_t r = 0; r < rr.pivots.size(); ++r)
        sol.particular[rr.pivots[r]] = rr.reduced(r, a.cols());
    Matrix arr = rr.reduced; // reuse the reduced coefficient block
    RrefResult coeff{Matrix(a.rows(), a.cols()), rr.pivots};
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            coeff.reduced(i, j) = arr(i, j);
    sol.basis = nullspace_from_rref(coeff, a.cols());
    return sol;
}

inline Matrix inverse(const Matrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("inverse: matrix not square");
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    const RrefResult rr = rref(aug);
    if (rr.pivots.size() < n || rr.pivots[n - 1] != n - 1)
        throw std::domain_error("inverse: singular matrix");
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = rr.reduced(i, n + j);
    return inv;
}

/// Sparse row: sorted (column, coefficient) pairs, no zero coefficients.
using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;

/// Incremental row echelon structure for large sparse homogeneous
/// systems. Rows are inserted one at a time and reduced against the
/// current pivots; the kernel is extracted by back substitution. Much
/// cheaper than a dense RREF when rows touch only a handful of columns.
class SparseEchelon {
public:
    explicit SparseEchelon(std::size_t cols) : cols_(cols) {}

    /// Returns true if the row added a new pivot (was independent).
    bool insert(SparseRow row)
    {
        reduce(row);
        if (row.empty())
            return false;
        const Scalar inv = Scalar(1) / row.front().second;
        for (auto& [c, v] : row)
            v *= inv;
        rows_.emplace(row.front().first, std::move(row));
        return true;
    }

    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    std::vector<std::size_t> free_columns() const
    {
        std::vector<std::size_t> free;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!rows_.count(c))
                free.push_back(c);
        return free;
    }

    /// Kernel basis, one vector per free column (1 at the free column).
    std::vector<Vec> kernel() const
    {
        std::vector<Vec> basis;
        for (std::size_t f : free_columns()) {
            Vec v = zero_vec(cols_);
            v[f] = 1;
            // solve pivot variables from the largest pivot column down
            for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
                const std::size_t p = it->first;
                Scalar acc(0);
                for (const auto& [c, coeff] : it->second)
                    if (c != p)
                        acc += coeff * v[c];
                v[p] = -acc;
            }
            basis.push_back(std::move(v));
        }
        return basis;
    }

private:
    void reduce(SparseRow& row) const
    {
        while (!row.empty()) {
            auto it = rows_.find(row.front().first);
            if (it == rows_.end())
                return;
            row = axpy(row, -row.front().second, it->second);
        }
    }

    // a + c*b for sorted sparse rows, dropping exact zeros
    static SparseRow axpy(const SparseRow& a, const Scalar& c, const SparseRow& b)
    {
        SparseRow r;
        r.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                r.push_back(a[i++]);
            } else if (i == a.size() || b[j].first < a[i].first) {
                Scalar v = c * b[j].second;
                if (!is_zero(v))
                    r.emplace_back(b[j].first, std::move(v));
                ++j;
            } else {
                Scalar v = a[i].second + c * b[j].second;
                if (!is_zero(v))
                    r.emplace_back(a[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::size_t cols_;
    std::map<std::size_t, SparseRow> rows_; // pivot column -> row
};

/// Subspace of Q^n held in RREF-canonical form, so equality of subspaces
/// is entrywise equality of the stored bases.
class Subspace {
public:
    explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

    static Subspace span(std::size_t ambient, const std::vector<Vec>& vectors)
    {
        Subspace s(ambient);
        if (!vectors.empty()) {
            const RrefResult rr = rref(Matrix::from_rows(vectors, ambient));
            for (std::size_t r = 0; r < rr.pivots.size(); ++r)
                s.basis_.push_back(rr.reduced.row(r));
            s.pivots_ = rr.pivots;
        }
        return s;
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Vec>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool operator==(const Subspace& o) const
    {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    /// Residue of v after reduction against the canonical basis; zero
    /// exactly when v lies in the subspace.
    Vec reduce(Vec v) const
    {
        for (std::size_t r = 0; r < basis_.size(); ++r) {
            const Scalar& c = v[pivots_[r]];
            if (!is_zero(c))
                add_scaled(v, -Scalar(c), basis_[r]);
        }
        return v;
    }

    bool contains(const Vec& v) const { return leibniz::is_zero(reduce(v)); }

    bool contains(const Subspace& o) const
    {
        return std::all_of(o.basis_.begin(), o.basis_.end(),
                           [&](const Vec& v) { return contains(v); });
    }

    /// Adds a vector to the span; returns false if it was already inside.
    bool grow(const Vec& v)
    {
        if (contains(v))
            return false;
        std::vector<Vec> all = basis_;
        all.push_back(v);
        *this = span(ambient_, all);
        return true;
    }

    Subspace sum(const Subspace& o) const
    {
        if (ambient_ != o.ambient_)
            throw std::invalid_argument("subspace sum: ambient mismatch");
        std::vector<Vec> all = basis_;
        all.insert(all.end(), o.basis_.begin(), o.basis_.end());
        return span(ambient_, all);
    }

    bool intersects_trivially(const Subspace& o) const
    {
        return sum(o).dim() == dim() + o.dim();
    }

    /// Standard basis vectors at the non-pivot coordinates: a canonical
    /// vector-space complement.
    std::vector<Vec> complement_coordinates() const
    {
        std::vector<bool> is_pivot(ambient_, false);
        for (std::size_t p : pivots_)
            is_pivot[p] = true;
        std::vector<Vec> comp;
        for (std::size_t i = 0; i < ambient_; ++i) {
            if (!is_pivot[i]) {
                Vec v = zero_vec(ambient_);
                v[i] = 1;
                comp.push_back(std::move(v));
            }
        }
        return comp;
    }

    /// Coordinates of v in the stored basis; throws if v is outside.
    Vec coordinates(const Vec& v) const
    {
        Vec coords(basis_.size(), Scalar(0));
        Vec w = v;
        for (std::size_t r = 0; r < basis_.size(); ++r) {
            const Scalar c = w[pivots_[r]];
            if (!is_zero(c)) {
                add_scaled(w, -c, basis_[r]);
                coords[r] = c;
            }
        }
        if (!leibniz::is_zero(w))
            throw std::domain_error("coordinates: vector outside subspace");
        return coords;
    }

private:
    std::size_t ambient_;
    std::vector<Vec> basis_;
    std::vector<std::size_t> pivots_;
};

} // namespace leibniz

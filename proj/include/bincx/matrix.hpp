#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bincx {

// Dense matrix over an exact field F (Rational or Fp). Matrices are value
// types; all algorithms below return fresh matrices and never mutate their
// inputs. Zero-by-n and n-by-zero matrices are first-class citizens: empty
// blocks show up constantly in the chain-complex constructions.
template <class F>
class Matrix {
public:
    using Desc = typename F::Desc;

    Matrix(Desc fld, std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), fld_(fld), e_(rows * cols, F::zero(fld)) {}

    static Matrix identity(Desc fld, std::size_t n) {
        Matrix m(fld, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F::one(fld);
        return m;
    }

    static Matrix from_rows(Desc fld, std::size_t rows, std::size_t cols,
                            std::vector<std::vector<long long>> entries) {
        Matrix m(fld, rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                m.at(i, j) = F::from_int(fld, entries[i][j]);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Desc field() const { return fld_; }

    F& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const F& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != (i == j ? F::one(fld_) : F::zero(fld_))) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.fld_ == b.fld_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix transpose() const {
        Matrix t(fld_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix negated() const {
        Matrix r = *this;
        for (auto& x : r.e_) x = -x;
        return r;
    }

    Matrix scaled(const F& s) const {
        Matrix r = *this;
        for (auto& x : r.e_) x = x * s;
        return r;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = r.e_[i] + b.e_[i];
        return r;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = r.e_[i] - b.e_[i];
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_ || !(a.fld_ == b.fld_))
            throw std::invalid_argument("Matrix: incompatible product");
        Matrix r(a.fld_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const F& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + aik * b.at(k, j);
            }
        return r;
    }

    // Writes m into this matrix with top-left corner at (r0, c0).
    void set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
        if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_)
            throw std::invalid_argument("Matrix: block out of range");
        for (std::size_t i = 0; i < m.rows_; ++i)
            for (std::size_t j = 0; j < m.cols_; ++j) at(r0 + i, c0 + j) = m.at(i, j);
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
        if (r0 + rows > rows_ || c0 + cols > cols_)
            throw std::invalid_argument("Matrix: block out of range");
        Matrix m(fld_, rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = at(r0 + i, c0 + j);
        return m;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? "; " : "";
            for (std::size_t j = 0; j < cols_; ++j) s += (j ? " " : "") + at(i, j).to_string();
        }
        return s + "]";
    }

private:
    std::size_t rows_, cols_;
    Desc fld_;
    std::vector<F> e_;

    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_ || !(fld_ == o.fld_))
            throw std::invalid_argument("Matrix: shape or field mismatch");
    }
};

template <class F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows() || !(a.field() == b.field()))
        throw std::invalid_argument("hstack: shape or field mismatch");
    Matrix<F> r(a.field(), a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

template <class F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.cols() != b.cols() || !(a.field() == b.field()))
        throw std::invalid_argument("vstack: shape or field mismatch");
    Matrix<F> r(a.field(), a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

// Block diagonal sum; houses the pervasive direct sums of graded pieces.
template <class F>
Matrix<F> direct_sum(const Matrix<F>& a, const Matrix<F>& b) {
    if (!(a.field() == b.field())) throw std::invalid_argument("direct_sum: field mismatch");
    Matrix<F> r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

// Kronecker product; matrix of f (x) g in the lexicographic product basis.
template <class F>
Matrix<F> kron(const Matrix<F>& a, const Matrix<F>& b) {
    if (!(a.field() == b.field())) throw std::invalid_argument("kron: field mismatch");
    Matrix<F> r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.at(i, j).is_zero()) continue;
            r.set_block(i * b.rows(), j * b.cols(), b.scaled(a.at(i, j)));
        }
    return r;
}

template <class F>
struct RrefResult {
    Matrix<F> reduced;
    std::vector<std::size_t> pivots; // pivot column indices, ascending
    std::size_t rank;
};

// Reduced row echelon form with leftmost-pivot selection. RREF is unique,
// so this is the canonical representative every downstream choice leans on.
template <class F>
RrefResult<F> rref(const Matrix<F>& m) {
    Matrix<F> a = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t sel = row;
        while (sel < a.rows() && a.at(sel, col).is_zero()) ++sel;
        if (sel == a.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(row, j), a.at(sel, j));
        F inv = a.at(row, col).inv();
        for (std::size_t j = col; j < a.cols(); ++j) a.at(row, j) = a.at(row, j) * inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a.at(i, col).is_zero()) continue;
            F f = a.at(i, col);
            for (std::size_t j = col; j < a.cols(); ++j)
                a.at(i, j) = a.at(i, j) - f * a.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    std::size_t rank = pivots.size();
    return {std::move(a), std::move(pivots), rank};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
    return rref(m).rank;
}

// Columns span ker m. Free variables are set to 1 in ascending column order,
// so the result is deterministic; column count is cols - rank.
template <class F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
    auto r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    Matrix<F> k(m.field(), m.cols(), m.cols() - r.rank);
    std::size_t out = 0;
    for (std::size_t col = 0; col < m.cols(); ++col) {
        if (is_pivot[col]) continue;
        k.at(col, out) = F::one(m.field());
        for (std::size_t i = 0; i < r.rank; ++i)
            k.at(r.pivots[i], out) = -r.reduced.at(i, col);
        ++out;
    }
    return k;
}

// Columns span im m, echelon-normalized: the transposed nonzero rows of
// rref(m^T). Repeated calls agree bit for bit.
template <class F>
Matrix<F> image_basis(const Matrix<F>& m) {
    auto r = rref(m.transpose());
    Matrix<F> b(m.field(), m.rows(), r.rank);
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) b.at(j, i) = r.reduced.at(i, j);
    return b;
}

// Deterministic particular solution X of a X = b (free variables zero),
// or nullopt when the system has no solution.
template <class F>
std::optional<Matrix<F>> solve_right(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows() || !(a.field() == b.field()))
        throw std::invalid_argument("solve_right: shape or field mismatch");
    auto r = rref(hstack(a, b));
    for (auto p : r.pivots)
        if (p >= a.cols()) return std::nullopt;
    Matrix<F> x(a.field(), a.cols(), b.cols());
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x.at(r.pivots[i], j) = r.reduced.at(i, a.cols() + j);
    return x;
}

// Exact determinant by fraction Gaussian elimination. det of the 0x0 matrix
// is 1, which the torsion of zero complexes relies on.
template <class F>
F det(const Matrix<F>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
    Matrix<F> a = m;
    F result = F::one(m.field());
    for (std::size_t col = 0; col < a.cols(); ++col) {
        std::size_t sel = col;
        while (sel < a.rows() && a.at(sel, col).is_zero()) ++sel;
        if (sel == a.rows()) return F::zero(m.field());
        if (sel != col) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(col, j), a.at(sel, j));
            result = -result;
        }
        result = result * a.at(col, col);
        F inv = a.at(col, col).inv();
        for (std::size_t i = col + 1; i < a.rows(); ++i) {
            if (a.at(i, col).is_zero()) continue;
            F f = a.at(i, col) * inv;
            for (std::size_t j = col; j < a.cols(); ++j)
                a.at(i, j) = a.at(i, j) - f * a.at(col, j);
        }
    }
    return result;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    auto r = rref(hstack(m, Matrix<F>::identity(m.field(), m.rows())));
    if (r.rank != m.rows() || (r.rank > 0 && r.pivots.back() >= m.cols())) return std::nullopt;
    return r.reduced.block(0, m.cols(), m.rows(), m.cols());
}

template <class F>
bool is_injective(const Matrix<F>& m) {
    return rank(m) == m.cols();
}

template <class F>
bool is_surjective(const Matrix<F>& m) {
    return rank(m) == m.rows();
}

} // namespace bincx

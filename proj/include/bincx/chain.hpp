#pragma once

#include <cstddef>
#include <stdexcept>
#include <variant>
#include <vector>

#include "bincx/matrix.hpp"
#include "bincx/rng.hpp"

namespace bincx {

// N-graded bounded chain complex over F. Degrees run 0..m; diff(n) is
// d_n : P_n -> P_{n-1} of shape dims[n-1] x dims[n], for n = 1..m.
// Trailing zero dimensions are allowed; support queries ignore them.
template <class F>
class ChainComplex {
public:
    using Desc = typename F::Desc;

    ChainComplex(Desc fld, std::vector<std::size_t> dims, std::vector<Matrix<F>> diffs)
        : fld_(fld), dims_(std::move(dims)), diffs_(std::move(diffs)) {
        if (dims_.empty()) throw std::invalid_argument("ChainComplex: empty grading");
        if (diffs_.size() + 1 != dims_.size())
            throw std::invalid_argument("ChainComplex: need one differential per positive degree");
        for (std::size_t n = 1; n < dims_.size(); ++n) {
            const auto& d = diffs_[n - 1];
            if (d.rows() != dims_[n - 1] || d.cols() != dims_[n] || !(d.field() == fld_))
                throw std::invalid_argument("ChainComplex: differential shape mismatch");
        }
    }

    static ChainComplex zero(Desc fld) { return ChainComplex(fld, {0}, {}); }

    static ChainComplex single(Desc fld, const Matrix<F>& d1) {
        return ChainComplex(fld, {d1.rows(), d1.cols()}, {d1});
    }

    Desc field() const { return fld_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim(std::size_t n) const { return n < dims_.size() ? dims_[n] : 0; }
    std::size_t top_degree() const { return dims_.size() - 1; }

    // d_n for n = 1..m
    const Matrix<F>& diff(std::size_t n) const {
        if (n == 0 || n > diffs_.size()) throw std::invalid_argument("ChainComplex: bad degree");
        return diffs_[n - 1];
    }

    std::size_t total_dim() const {
        std::size_t t = 0;
        for (auto d : dims_) t += d;
        return t;
    }

    friend bool operator==(const ChainComplex& a, const ChainComplex& b) {
        return a.dims_ == b.dims_ && a.diffs_ == b.diffs_ && a.fld_ == b.fld_;
    }

private:
    Desc fld_;
    std::vector<std::size_t> dims_;
    std::vector<Matrix<F>> diffs_;
};

template <class F>
bool is_complex(const ChainComplex<F>& c) {
    for (std::size_t n = 2; n <= c.top_degree(); ++n)
        if (!(c.diff(n - 1) * c.diff(n)).is_zero()) return false;
    return true;
}

// Per-degree epi-mono factorization certificate of an acyclic complex:
// d_n = mono(n-1) * epi(n) with J_n >-> P_n ->> J_{n-1} exact everywhere.
// Boundary conventions: J_{-1} = J_m = 0, so epi(0) has zero rows and
// mono(m) has zero columns.
template <class F>
struct Factorization {
    std::vector<std::size_t> jdims; // dim J_n for n = 0..m (jdims[m] = 0)
    std::vector<Matrix<F>> monos;   // mono(n) = i_n : J_n >-> P_n, n = 0..m
    std::vector<Matrix<F>> epis;    // epi(n)  = q_n : P_n ->> J_{n-1}, n = 0..m

    std::size_t jdim(std::size_t n) const { return n < jdims.size() ? jdims[n] : 0; }
    const Matrix<F>& mono(std::size_t n) const { return monos[n]; }
    const Matrix<F>& epi(std::size_t n) const { return epis[n]; }
};

struct NotAcyclic {
    std::size_t degree; // first degree with nonzero homology
};

template <class F>
using FactorizeResult = std::variant<Factorization<F>, NotAcyclic>;

// Canonical factorization: J_{n-1} is the echelon image basis of d_n. Over a
// field acyclicity is exactness, tested via rank(d_{n+1}) = dim ker(d_n) at
// every degree (degree 0 needs d_1 surjective, the top degree d_m injective).
template <class F>
FactorizeResult<F> factorize(const ChainComplex<F>& c) {
    if (!is_complex(c)) throw std::invalid_argument("factorize: d∘d != 0");
    const std::size_t m = c.top_degree();
    std::vector<std::size_t> ranks(m + 2, 0); // rank d_n, with rank d_0 = rank d_{m+1} = 0
    for (std::size_t n = 1; n <= m; ++n) ranks[n] = rank(c.diff(n));
    for (std::size_t n = 0; n <= m; ++n)
        if (ranks[n + 1] != c.dim(n) - ranks[n]) return NotAcyclic{n};

    Factorization<F> f;
    f.jdims.assign(m + 1, 0);
    for (std::size_t n = 0; n < m; ++n) f.jdims[n] = ranks[n + 1];
    f.monos.reserve(m + 1);
    f.epis.reserve(m + 1);
    for (std::size_t n = 0; n <= m; ++n) {
        if (n < m)
            f.monos.push_back(image_basis(c.diff(n + 1)));
        else
            f.monos.push_back(Matrix<F>(c.field(), c.dim(m), 0));
        if (n == 0) {
            f.epis.push_back(Matrix<F>(c.field(), 0, c.dim(0)));
        } else {
            auto q = solve_right(f.monos[n - 1], c.diff(n));
            f.epis.push_back(std::move(*q)); // solvable: im d_n = span(mono(n-1))
        }
    }
    return f;
}

// Throwing variant for call sites whose precondition is acyclicity.
template <class F>
Factorization<F> must_factorize(const ChainComplex<F>& c) {
    auto r = factorize(c);
    if (auto* bad = std::get_if<NotAcyclic>(&r))
        throw std::invalid_argument("complex is not acyclic at degree " +
                                    std::to_string(bad->degree));
    return std::get<Factorization<F>>(std::move(r));
}

// P[i]_* = P_{*-i}: degrees move up by i, zero padding below, differentials
// kept as they are.
template <class F>
ChainComplex<F> shift(const ChainComplex<F>& c, std::size_t i) {
    if (i == 0) return c;
    std::vector<std::size_t> dims(i, 0);
    dims.insert(dims.end(), c.dims().begin(), c.dims().end());
    std::vector<Matrix<F>> diffs;
    for (std::size_t n = 1; n < dims.size(); ++n) {
        if (n <= i)
            diffs.push_back(Matrix<F>(c.field(), dims[n - 1], dims[n]));
        else
            diffs.push_back(c.diff(n - i));
    }
    return ChainComplex<F>(c.field(), std::move(dims), std::move(diffs));
}

// Sigma^i: shift by i and scale every differential by (-1)^i.
template <class F>
ChainComplex<F> suspend(const ChainComplex<F>& c, std::size_t i) {
    ChainComplex<F> s = shift(c, i);
    if (i % 2 == 0) return s;
    std::vector<Matrix<F>> diffs;
    for (std::size_t n = 1; n <= s.top_degree(); ++n) diffs.push_back(s.diff(n).negated());
    return ChainComplex<F>(s.field(), s.dims(), std::move(diffs));
}

// Mapping cone of the identity: degree n is P_{n-1} (+) P_n with
// differential [[-d, 0], [id, d]]. With this sign convention the evident
// maps give a short exact sequence P >-> cone(P) ->> P[1].
template <class F>
ChainComplex<F> cone(const ChainComplex<F>& c) {
    const std::size_t m = c.top_degree();
    std::vector<std::size_t> dims(m + 2, 0);
    for (std::size_t n = 0; n <= m + 1; ++n)
        dims[n] = (n >= 1 ? c.dim(n - 1) : 0) + c.dim(n);
    std::vector<Matrix<F>> diffs;
    for (std::size_t n = 1; n <= m + 1; ++n) {
        Matrix<F> d(c.field(), dims[n - 1], dims[n]);
        const std::size_t shift_row = n >= 2 ? c.dim(n - 2) : 0;
        if (n >= 2 && c.dim(n - 1) > 0) d.set_block(0, 0, c.diff(n - 1).negated());
        if (n <= m) d.set_block(shift_row, c.dim(n - 1), c.diff(n));
        d.set_block(shift_row, 0, Matrix<F>::identity(c.field(), c.dim(n - 1)));
        diffs.push_back(std::move(d));
    }
    return ChainComplex<F>(c.field(), std::move(dims), std::move(diffs));
}

// Degreewise block sum, padding the shorter complex with zeros on top.
template <class F>
ChainComplex<F> direct_sum(const ChainComplex<F>& a, const ChainComplex<F>& b) {
    if (!(a.field() == b.field())) throw std::invalid_argument("direct_sum: field mismatch");
    const std::size_t m = std::max(a.top_degree(), b.top_degree());
    std::vector<std::size_t> dims(m + 1, 0);
    for (std::size_t n = 0; n <= m; ++n) dims[n] = a.dim(n) + b.dim(n);
    std::vector<Matrix<F>> diffs;
    for (std::size_t n = 1; n <= m; ++n) {
        Matrix<F> da = n <= a.top_degree() ? a.diff(n) : Matrix<F>(a.field(), a.dim(n - 1), a.dim(n));
        Matrix<F> db = n <= b.top_degree() ? b.diff(n) : Matrix<F>(b.field(), b.dim(n - 1), b.dim(n));
        diffs.push_back(direct_sum(da, db));
    }
    return ChainComplex<F>(a.field(), std::move(dims), std::move(diffs));
}

// Seeded generator of acyclic complexes. jd = (J_0, ..., J_{m-1}) prescribes
// the factorization dimensions; dims[n] = J_n + J_{n-1}. Each degree gets a
// random isomorphism P_n ~ J_n (+) J_{n-1}, whose projection and inclusion
// provide q_n and i_n, so exactness holds by construction.
template <class F>
ChainComplex<F> random_acyclic(typename F::Desc fld, const std::vector<std::size_t>& jd,
                               std::uint64_t seed) {
    if (jd.empty()) return ChainComplex<F>::zero(fld);
    Rng rng(seed);
    const std::size_t m = jd.size();
    auto j = [&](std::size_t n) -> std::size_t {
        return n < m ? jd[n] : 0; // J_{-1} handled by callers
    };
    std::vector<std::size_t> dims(m + 1, 0);
    for (std::size_t n = 0; n <= m; ++n) dims[n] = j(n) + (n >= 1 ? j(n - 1) : 0);

    std::vector<Matrix<F>> phi, phi_inv; // P_n -> J_n (+) J_{n-1}
    for (std::size_t n = 0; n <= m; ++n) {
        Rng sub = rng.fork(n);
        Matrix<F> u = random_invertible<F>(fld, dims[n], sub);
        phi_inv.push_back(*inverse(u));
        phi.push_back(std::move(u));
    }
    std::vector<Matrix<F>> diffs;
    for (std::size_t n = 1; n <= m; ++n) {
        // q_n: bottom J_{n-1} rows of phi_n;  i_{n-1}: first J_{n-1} columns of phi_{n-1}^{-1}
        Matrix<F> q = phi[n].block(j(n), 0, j(n - 1), dims[n]);
        Matrix<F> i = phi_inv[n - 1].block(0, 0, dims[n - 1], j(n - 1));
        diffs.push_back(i * q);
    }
    return ChainComplex<F>(fld, std::move(dims), std::move(diffs));
}

} // namespace bincx

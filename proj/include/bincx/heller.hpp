#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>

#include "bincx/matrix.hpp"
#include "bincx/rng.hpp"

namespace bincx {

// K_0 of finite-dimensional vector spaces is Z via dimension.
struct K0Class {
    long long value = 0;
    friend bool operator==(K0Class a, K0Class b) { return a.value == b.value; }
};

inline K0Class k0_class(std::size_t dim) { return K0Class{static_cast<long long>(dim)}; }

// Witness that [J] = [K] in K_0 through a common stabilized pair of
// extensions:  A >-> J (+) S ->> B  and  A >-> K (+) S ->> B.
// Row maps use the convention that the first dim_j (resp. dim_k) rows of an
// inclusion target are the J (resp. K) component and the last dim_s rows the
// stabilizer.
template <class F>
struct ExtensionWitness {
    std::size_t dim_j, dim_k, dim_s, dim_a, dim_b;
    Matrix<F> a_j; // A >-> J (+) S,  (j+s) x a
    Matrix<F> b_j; // J (+) S ->> B,  b x (j+s)
    Matrix<F> a_k; // A >-> K (+) S
    Matrix<F> b_k; // K (+) S ->> B

    typename F::Desc field() const { return a_j.field(); }
};

// Canonical witness S = 0, A = J, B = 0 with the coordinate identification
// J ~ K; exists iff the K_0 classes agree, i.e. iff the dimensions agree.
template <class F>
std::optional<ExtensionWitness<F>> heller_witness(std::size_t dim_j, std::size_t dim_k,
                                                  typename F::Desc fld) {
    if (dim_j != dim_k) return std::nullopt;
    ExtensionWitness<F> w{dim_j,
                          dim_k,
                          0,
                          dim_j,
                          0,
                          Matrix<F>::identity(fld, dim_j),
                          Matrix<F>(fld, 0, dim_j),
                          Matrix<F>::identity(fld, dim_k),
                          Matrix<F>(fld, 0, dim_k)};
    return w;
}

template <class F>
bool verify_witness(const ExtensionWitness<F>& w, std::size_t dim_j, std::size_t dim_k) {
    if (w.dim_j != dim_j || w.dim_k != dim_k) return false;
    if (dim_j != dim_k) return false; // forced by dim A + dim B = dim J + dim S = dim K + dim S
    if (w.dim_a + w.dim_b != dim_j + w.dim_s) return false;
    auto row_exact = [&](const Matrix<F>& a, const Matrix<F>& b, std::size_t mid) {
        if (a.rows() != mid || a.cols() != w.dim_a) return false;
        if (b.rows() != w.dim_b || b.cols() != mid) return false;
        if (!is_injective(a) || !is_surjective(b)) return false;
        if (!(b * a).is_zero()) return false;
        return rank(a) + rank(b) == mid; // with b∘a = 0 this gives im a = ker b
    };
    return row_exact(w.a_j, w.b_j, dim_j + w.dim_s) && row_exact(w.a_k, w.b_k, dim_k + w.dim_s);
}

// Random witness with nontrivial A, B, S; exercises the existence statement
// for independence tests. dim A is drawn uniformly in [0, dim_j + dim_s].
template <class F>
ExtensionWitness<F> random_witness(std::size_t dim_j, std::size_t dim_k, std::size_t dim_s,
                                   std::uint64_t seed, typename F::Desc fld) {
    if (dim_j != dim_k) throw std::invalid_argument("random_witness: dimension mismatch");
    Rng rng(seed);
    const std::size_t mid = dim_j + dim_s;
    const std::size_t dim_a = rng.below(mid + 1);
    const std::size_t dim_b = mid - dim_a;

    Matrix<F> a_j = random_mono<F>(fld, mid, dim_a, rng);
    Matrix<F> b_j = kernel_basis(a_j.transpose()).transpose(); // echelon cokernel projection
    Matrix<F> a_k = random_mono<F>(fld, mid, dim_a, rng);
    Matrix<F> iso = random_invertible<F>(fld, dim_b, rng);
    Matrix<F> b_k = iso * kernel_basis(a_k.transpose()).transpose();
    return ExtensionWitness<F>{dim_j, dim_k, dim_s, dim_a, dim_b,
                               std::move(a_j), std::move(b_j), std::move(a_k), std::move(b_k)};
}

namespace detail {

// Interleave two stacked (X (+) S)-shaped maps into ((X1 (+) X2) (+) (S1 (+) S2)).
template <class F>
Matrix<F> interleave_rows(const Matrix<F>& m1, std::size_t x1, std::size_t s1,
                          const Matrix<F>& m2, std::size_t x2, std::size_t s2) {
    Matrix<F> r(m1.field(), x1 + x2 + s1 + s2, m1.cols() + m2.cols());
    r.set_block(0, 0, m1.block(0, 0, x1, m1.cols()));
    r.set_block(x1, m1.cols(), m2.block(0, 0, x2, m2.cols()));
    r.set_block(x1 + x2, 0, m1.block(x1, 0, s1, m1.cols()));
    r.set_block(x1 + x2 + s1, m1.cols(), m2.block(x2, 0, s2, m2.cols()));
    return r;
}

template <class F>
Matrix<F> interleave_cols(const Matrix<F>& m1, std::size_t x1, std::size_t s1,
                          const Matrix<F>& m2, std::size_t x2, std::size_t s2) {
    return interleave_rows(m1.transpose(), x1, s1, m2.transpose(), x2, s2).transpose();
}

} // namespace detail

// Blockwise direct sum of witnesses: a witness for (J1 (+) J2, K1 (+) K2)
// with stabilizer S1 (+) S2, the row maps interleaved accordingly.
template <class F>
ExtensionWitness<F> sum_witnesses(const ExtensionWitness<F>& w1, const ExtensionWitness<F>& w2) {
    return ExtensionWitness<F>{
        w1.dim_j + w2.dim_j,
        w1.dim_k + w2.dim_k,
        w1.dim_s + w2.dim_s,
        w1.dim_a + w2.dim_a,
        w1.dim_b + w2.dim_b,
        detail::interleave_rows(w1.a_j, w1.dim_j, w1.dim_s, w2.a_j, w2.dim_j, w2.dim_s),
        detail::interleave_cols(w1.b_j, w1.dim_j, w1.dim_s, w2.b_j, w2.dim_j, w2.dim_s),
        detail::interleave_rows(w1.a_k, w1.dim_k, w1.dim_s, w2.a_k, w2.dim_k, w2.dim_s),
        detail::interleave_cols(w1.b_k, w1.dim_k, w1.dim_s, w2.b_k, w2.dim_k, w2.dim_s)};
}

// Transitivity device from the direct-sum rewriting: witnesses for (J, K)
// and (K, L) combine into a witness for (J (+) K, L (+) K).
template <class F>
ExtensionWitness<F> compose_witnesses(const ExtensionWitness<F>& w12,
                                      const ExtensionWitness<F>& w23) {
    if (w12.dim_k != w23.dim_j)
        throw std::invalid_argument("compose_witnesses: middle object mismatch");
    const std::size_t j = w12.dim_j, k = w12.dim_k, l = w23.dim_k;
    const std::size_t s1 = w12.dim_s, s2 = w23.dim_s;
    const std::size_t dim_a = w12.dim_a + w23.dim_a, dim_b = w12.dim_b + w23.dim_b;
    auto fld = w12.field();

    // row 1: A1 (+) A2 >-> (J (+) K) (+) (S1 (+) S2) ->> B1 (+) B2,
    // from w12's J-row and w23's K-row
    Matrix<F> a1(fld, j + k + s1 + s2, dim_a);
    a1.set_block(0, 0, w12.a_j.block(0, 0, j, w12.dim_a));                   // J <- A1
    a1.set_block(j, w12.dim_a, w23.a_j.block(0, 0, k, w23.dim_a));           // K <- A2
    a1.set_block(j + k, 0, w12.a_j.block(j, 0, s1, w12.dim_a));              // S1 <- A1
    a1.set_block(j + k + s1, w12.dim_a, w23.a_j.block(k, 0, s2, w23.dim_a)); // S2 <- A2
    Matrix<F> b1(fld, dim_b, j + k + s1 + s2);
    b1.set_block(0, 0, w12.b_j.block(0, 0, w12.dim_b, j));
    b1.set_block(w12.dim_b, j, w23.b_j.block(0, 0, w23.dim_b, k));
    b1.set_block(0, j + k, w12.b_j.block(0, j, w12.dim_b, s1));
    b1.set_block(w12.dim_b, j + k + s1, w23.b_j.block(0, k, w23.dim_b, s2));

    // row 2: A1 (+) A2 >-> (L (+) K) (+) (S1 (+) S2) ->> B1 (+) B2,
    // from w23's L-row and w12's K-row
    Matrix<F> a2(fld, l + k + s1 + s2, dim_a);
    a2.set_block(0, w12.dim_a, w23.a_k.block(0, 0, l, w23.dim_a));           // L <- A2
    a2.set_block(l, 0, w12.a_k.block(0, 0, k, w12.dim_a));                   // K <- A1
    a2.set_block(l + k, 0, w12.a_k.block(k, 0, s1, w12.dim_a));              // S1 <- A1
    a2.set_block(l + k + s1, w12.dim_a, w23.a_k.block(l, 0, s2, w23.dim_a)); // S2 <- A2
    Matrix<F> b2(fld, dim_b, l + k + s1 + s2);
    b2.set_block(w12.dim_b, 0, w23.b_k.block(0, 0, w23.dim_b, l));
    b2.set_block(0, l, w12.b_k.block(0, 0, w12.dim_b, k));
    b2.set_block(0, l + k, w12.b_k.block(0, k, w12.dim_b, s1));
    b2.set_block(w12.dim_b, l + k + s1, w23.b_k.block(0, l, w23.dim_b, s2));

    return ExtensionWitness<F>{j + k,  l + k,  s1 + s2, dim_a, dim_b,
                               std::move(a1), std::move(b1), std::move(a2), std::move(b2)};
}

} // namespace bincx

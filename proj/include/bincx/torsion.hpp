#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bincx/binary.hpp"
#include "bincx/chain.hpp"

namespace bincx {

// Chain contraction of an acyclic complex: maps h_n : P_n -> P_{n+1} with
// d_{n+1} h_n + h_{n-1} d_n = id at every degree.
template <class F>
struct Contraction {
    std::vector<Matrix<F>> h; // h[n] : P_n -> P_{n+1}, n = 0..m-1
};

template <class F>
bool verify_contraction(const ChainComplex<F>& c, const Contraction<F>& h) {
    const std::size_t m = c.top_degree();
    if (h.h.size() != m) return false;
    for (std::size_t n = 0; n <= m; ++n) {
        Matrix<F> acc(c.field(), c.dim(n), c.dim(n));
        if (n < m) acc = acc + c.diff(n + 1) * h.h[n];
        if (n > 0) acc = acc + h.h[n - 1] * c.diff(n);
        if (!(acc == Matrix<F>::identity(c.field(), c.dim(n)))) return false;
    }
    return true;
}

// Deterministic contraction from a factorization. Split each epi q_n by a
// right inverse s_n, complete to the complementary projector through the
// mono, and set h_n = s_{n+1} r_n. The rho perturbations tilt the splittings
// (s_n += i_n rho_n) and give genuinely different valid contractions, used to
// certify contraction-independence of the torsion.
template <class F>
Contraction<F> contraction(const ChainComplex<F>& c, const Factorization<F>& f,
                           const std::vector<Matrix<F>>* rho = nullptr) {
    const std::size_t m = c.top_degree();
    std::vector<Matrix<F>> s(m + 1, Matrix<F>(c.field(), 0, 0));
    std::vector<Matrix<F>> r(m + 1, Matrix<F>(c.field(), 0, 0));
    for (std::size_t n = 0; n <= m; ++n) {
        // s_n : J_{n-1} -> P_n with q_n s_n = id
        if (n == 0) {
            s[0] = Matrix<F>(c.field(), c.dim(0), 0);
        } else {
            auto sn = solve_right(f.epi(n), Matrix<F>::identity(c.field(), f.jdim(n - 1)));
            s[n] = std::move(*sn);
            if (rho && n < rho->size() && (*rho)[n].rows() == f.jdim(n) &&
                (*rho)[n].cols() == f.jdim(n - 1))
                s[n] = s[n] + f.mono(n) * (*rho)[n];
        }
        // r_n : P_n -> J_n with i_n r_n = id - s_n q_n
        Matrix<F> target = Matrix<F>::identity(c.field(), c.dim(n));
        if (n > 0) target = target - s[n] * f.epi(n);
        auto rn = solve_right(f.mono(n), target);
        if (!rn) throw std::invalid_argument("contraction: factorization does not split");
        r[n] = std::move(*rn);
    }
    Contraction<F> h;
    for (std::size_t n = 0; n + 1 <= m; ++n) h.h.push_back(s[n + 1] * r[n]);
    return h;
}

// h' = h + d o sigma o d for degree +3 maps sigma; such perturbations keep
// the homotopy identity on the nose.
template <class F>
Contraction<F> perturb_contraction(const ChainComplex<F>& c, const Contraction<F>& h,
                                   const std::vector<Matrix<F>>& sigma) {
    // sigma[n] : P_n -> P_{n+3}, defined for n = 0..m-3
    const std::size_t m = c.top_degree();
    Contraction<F> out = h;
    for (std::size_t n = 1; n + 1 <= m; ++n) {
        // epsilon_n = d_{n+2} sigma_{n-1} d_n : P_n -> P_{n+1}
        if (n - 1 < sigma.size() && n + 2 <= m)
            out.h[n] = out.h[n] + c.diff(n + 2) * sigma[n - 1] * c.diff(n);
    }
    return out;
}

// Milnor torsion of a based acyclic complex: det of
// (d + h) : P_odd -> P_even in the standard coordinate bases. Independent of
// the contraction; the acceptance suite certifies this numerically.
template <class F>
F milnor_torsion(const ChainComplex<F>& c, const Contraction<F>& h) {
    const std::size_t m = c.top_degree();
    std::size_t odd = 0, even = 0;
    std::vector<std::size_t> off(m + 1, 0);
    for (std::size_t n = 0; n <= m; ++n) {
        off[n] = n % 2 ? odd : even;
        (n % 2 ? odd : even) += c.dim(n);
    }
    if (odd != even) throw std::invalid_argument("milnor_torsion: complex is not acyclic");
    Matrix<F> dh(c.field(), even, odd);
    for (std::size_t n = 1; n <= m; n += 2) {
        dh.set_block(off[n - 1], off[n], c.diff(n));           // d_n : P_n -> P_{n-1}
        if (n < m) dh.set_block(off[n + 1], off[n], h.h[n]);   // h_n : P_n -> P_{n+1}
    }
    F t = det(dh);
    if (t.is_zero()) throw std::invalid_argument("milnor_torsion: (d + h) is singular");
    return t;
}

template <class F>
F milnor_torsion(const ChainComplex<F>& c) {
    return milnor_torsion(c, contraction(c, must_factorize(c)));
}

// kappa(b) = tau(top) / tau(bot). Both torsions are taken on the same based
// graded object, so base-change indeterminacy cancels in the ratio; kappa is
// an invariant of the binary complex realizing K_1(k) ~ k^x.
// Orientation convention: (d + h) maps the odd part to the even part. The
// opposite convention inverts every kappa globally, which no identity in
// this library can see.
template <class F>
F kappa(const BinaryComplex<F>& b) {
    auto f = must_validate(b);
    F t = milnor_torsion(b.top(), contraction(b.top(), f.top));
    F u = milnor_torsion(b.bot(), contraction(b.bot(), f.bot));
    return t / u;
}

template <class F>
F kappa_expression(const NenashevExpression<F>& e, typename F::Desc fld) {
    F acc = F::one(fld);
    for (const auto& t : e.terms) {
        F k = kappa(t.complex);
        acc = acc * (t.sign > 0 ? k : k.inv());
    }
    return acc;
}

// Nenashev's relation, checked through the oracle: the alternating product
// of row invariants equals the alternating product of column invariants.
template <class F>
bool check_nenashev_relation(const BinaryDoubleComplex<F>& d) {
    if (auto defect = double_complex_defect(d))
        throw std::invalid_argument("check_nenashev_relation: " + *defect);
    auto fld = d.field();
    F rows = F::one(fld), cols = F::one(fld);
    for (std::size_t l = 0; l <= d.max_l(); ++l) {
        F k = kappa(d.row(l));
        rows = rows * (l % 2 == 0 ? k : k.inv());
    }
    for (std::size_t k = 0; k <= d.max_k(); ++k) {
        F v = kappa(d.column(k));
        cols = cols * (k % 2 == 0 ? v : v.inv());
    }
    return rows == cols;
}

// kappa(b[i]) = kappa(Sigma^i b) = kappa(b)^((-1)^i)
template <class F>
bool check_shift_law(const BinaryComplex<F>& b, std::size_t i) {
    F k = kappa(b);
    F expect = i % 2 == 0 ? k : k.inv();
    return kappa(shift_b(b, i)) == expect && kappa(suspend_b(b, i)) == expect;
}

// The swap complex squares to the trivial class.
template <class F>
bool check_order_two(typename F::Desc fld, std::size_t dim_j) {
    F k = kappa(swap_complex<F>(fld, dim_j));
    return k * k == F::one(fld);
}

} // namespace bincx

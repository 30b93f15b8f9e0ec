#pragma once

// Hand-transcribed double complexes from the four comparison arguments:
// the order-two square, the length-4 shortening diagram, the
// well-definedness (witness independence) diagram, and the hat-P diagram.
// Each builder returns a full BinaryDoubleComplex; the tests validate it
// and check the Nenashev relation through the torsion oracle.

#include <vector>

#include "bincx/reduce.hpp"

namespace bincx::fixtures {

// Assemble a double complex from rows (l = 0..L), all padded to a common
// horizontal extent, plus the two vertical families dv[k][l-1], dpv[k][l-1].
template <class F>
BinaryDoubleComplex<F> from_rows(const std::vector<BinaryComplex<F>>& rows,
                                 const std::vector<std::vector<Matrix<F>>>& dv,
                                 const std::vector<std::vector<Matrix<F>>>& dpv) {
    auto fld = rows.front().field();
    std::size_t K = 0;
    for (const auto& r : rows) K = std::max(K, r.top_degree());
    const std::size_t L = rows.size() - 1;
    std::vector<std::vector<std::size_t>> dims(K + 1, std::vector<std::size_t>(L + 1, 0));
    for (std::size_t k = 0; k <= K; ++k)
        for (std::size_t l = 0; l <= L; ++l) dims[k][l] = rows[l].dim(k);
    std::vector<std::vector<Matrix<F>>> dh, dph;
    for (std::size_t k = 1; k <= K; ++k) {
        std::vector<Matrix<F>> ht, hb;
        for (std::size_t l = 0; l <= L; ++l) {
            if (k <= rows[l].top_degree()) {
                ht.push_back(rows[l].top_diff(k));
                hb.push_back(rows[l].bot_diff(k));
            } else {
                ht.push_back(Matrix<F>(fld, dims[k - 1][l], dims[k][l]));
                hb.push_back(Matrix<F>(fld, dims[k - 1][l], dims[k][l]));
            }
        }
        dh.push_back(std::move(ht));
        dph.push_back(std::move(hb));
    }
    return BinaryDoubleComplex<F>(fld, std::move(dims), std::move(dh), std::move(dv),
                                  std::move(dph), std::move(dpv));
}

// Identity strap X -> X occupying degrees (lo+1, lo).
template <class F>
BinaryComplex<F> strap(typename F::Desc fld, std::size_t dim, std::size_t lo) {
    ChainComplex<F> c(fld, {dim, dim}, {Matrix<F>::identity(fld, dim)});
    return shift_b(BinaryComplex<F>(c, c), lo);
}

// --- 1. the order-two square --------------------------------------------

// 2x2 grid of J (+) J with tau on all four top arrows except the right
// vertical, and the complementary pattern on the bottom.
template <class F>
BinaryDoubleComplex<F> order_two_square(typename F::Desc fld, std::size_t j) {
    Matrix<F> tau = swap_automorphism<F>(fld, j);
    Matrix<F> id = Matrix<F>::identity(fld, 2 * j);
    std::vector<std::vector<std::size_t>> dims(2, std::vector<std::size_t>(2, 2 * j));
    std::vector<std::vector<Matrix<F>>> dh = {{tau, tau}};  // dh[0][l] : (1,l)->(0,l)
    std::vector<std::vector<Matrix<F>>> dph = {{tau, id}};
    std::vector<std::vector<Matrix<F>>> dv = {{tau}, {tau}}; // dv[k][0] : (k,1)->(k,0)
    std::vector<std::vector<Matrix<F>>> dpv = {{id}, {tau}};
    return BinaryDoubleComplex<F>(fld, dims, dh, dv, dph, dpv);
}

// --- 2. the length-4 shortening diagram ----------------------------------

// Five rows: A-strap | P'[1] | P (+) Delta_B[1] | the elementary complex
// P_1 >-> P_1 (+) P_0 ->> P_0 | P_0-strap. Realizes [P] - [P'[1]] = [S_2]
// modulo the trivial row.
template <class F>
BinaryDoubleComplex<F> dim4_diagram(const BinaryComplex<F>& b, const ShorteningChoices<F>& c) {
    auto fld = b.field();
    const std::size_t m = support_length(b);
    if (m < 2) throw std::invalid_argument("dim4_diagram: support length >= 2 required");
    const auto w = c.witness(2);
    auto jb = detail::j_blocks(w), kb = detail::k_blocks(w);
    const std::size_t p0 = b.dim(0), p1 = b.dim(1);
    const std::size_t K = std::max<std::size_t>(m, 3);

    // row l = 0: P_0 at k = 2 -> P_0 at k = 1
    BinaryComplex<F> row0 = strap<F>(fld, p0, 1);
    // row l = 1: P_1 | P_1 (+) P_0 | P_0 at k = 2, 1, 0
    Matrix<F> in_t(fld, p1 + p0, p1), in_b(fld, p1 + p0, p1);
    in_t.set_block(0, 0, Matrix<F>::identity(fld, p1));
    in_t.set_block(p1, 0, detail::top_d(b, 1));
    in_b.set_block(0, 0, Matrix<F>::identity(fld, p1));
    in_b.set_block(p1, 0, detail::bot_d(b, 1));
    Matrix<F> out_t(fld, p0, p1 + p0), out_b(fld, p0, p1 + p0);
    out_t.set_block(0, 0, detail::top_d(b, 1));
    out_t.set_block(0, p1, Matrix<F>::identity(fld, p0).negated());
    out_b.set_block(0, 0, detail::bot_d(b, 1));
    out_b.set_block(0, p1, Matrix<F>::identity(fld, p0).negated());
    std::vector<std::size_t> r1dims = {p0, p1 + p0, p1};
    BinaryComplex<F> row1(ChainComplex<F>(fld, r1dims, {out_t, in_t}),
                          ChainComplex<F>(fld, r1dims, {out_b, in_b}));
    // row l = 2: P (+) Delta_B[1]
    BinaryComplex<F> row2 = direct_sum_b(trimmed(b), strap<F>(fld, w.dim_b, 1));
    // row l = 3: P'[1]
    BinaryComplex<F> row3 = shift_b(build_P_prime(b, c, 2), 1);
    // row l = 4: A-strap at (3, 2)
    BinaryComplex<F> row4 = strap<F>(fld, w.dim_a, 2);

    std::vector<BinaryComplex<F>> rows = {pad_to_degree(row0, K), pad_to_degree(row1, K),
                                          pad_to_degree(row2, K), pad_to_degree(row3, K),
                                          pad_to_degree(row4, K)};

    // verticals dv[k][l-1] : (k,l) -> (k,l-1)
    std::vector<std::vector<Matrix<F>>> dv(K + 1), dpv(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
        for (std::size_t l = 1; l <= 4; ++l) {
            Matrix<F> t(fld, rows[l - 1].dim(k), rows[l].dim(k));
            Matrix<F> bo(fld, rows[l - 1].dim(k), rows[l].dim(k));
            if (l == 4) {
                if (k == 3) { // A -> (P_3, A)
                    t.set_block(b.dim(3), 0, Matrix<F>::identity(fld, w.dim_a));
                    bo = t;
                } else if (k == 2) { // A -> (T, E, S)
                    t.set_block(c.jd(2), 0, kb.aX);
                    t.set_block(2 * c.jd(2), 0, kb.aS);
                    bo.set_block(c.jd(2), 0, jb.aX);
                    bo.set_block(2 * c.jd(2), 0, jb.aS);
                }
            } else if (l == 3) {
                // P'[1] -> P (+) Delta_B[1]
                if (k >= 4 && k <= m) {
                    t.set_block(0, 0, Matrix<F>::identity(fld, b.dim(k)));
                    bo = t;
                } else if (k == 3) { // (P_3, A) -> P_3
                    t.set_block(0, 0, Matrix<F>::identity(fld, b.dim(3)));
                    bo = t;
                } else if (k == 2) { // (T, E, S) -> (P_2, B)
                    t.set_block(0, 0, detail::mono_or_empty(b, c.top, 2));
                    t.set_block(b.dim(2), c.jd(2), kb.bX);
                    t.set_block(b.dim(2), 2 * c.jd(2), kb.bS);
                    bo.set_block(0, 0, detail::mono_or_empty(b, c.bot, 2));
                    bo.set_block(b.dim(2), c.jd(2), jb.bX);
                    bo.set_block(b.dim(2), 2 * c.jd(2), jb.bS);
                } else if (k == 1) { // B -> (P_1, B)
                    t.set_block(p1, 0, Matrix<F>::identity(fld, w.dim_b));
                    bo = t;
                }
            } else if (l == 2) {
                // P (+) Delta_B[1] -> elementary row
                if (k == 2) { // (P_2, B) -> P_1
                    t.set_block(0, 0, detail::top_d(b, 2));
                    bo.set_block(0, 0, detail::bot_d(b, 2));
                } else if (k == 1) { // (P_1, B) -> (P_1, P_0)
                    t.set_block(0, 0, Matrix<F>::identity(fld, p1));
                    bo = t;
                } else if (k == 0) { // P_0 -> P_0
                    t = Matrix<F>::identity(fld, p0);
                    bo = t;
                }
            } else { // l == 1: elementary row -> P_0-strap
                if (k == 2) { // P_1 -> P_0
                    t = detail::top_d(b, 1);
                    bo = detail::bot_d(b, 1);
                } else if (k == 1) { // (P_1, P_0) -> P_0
                    t.set_block(0, p1, Matrix<F>::identity(fld, p0));
                    bo = t;
                }
            }
            dv[k].push_back(std::move(t));
            dpv[k].push_back(std::move(bo));
        }
    }
    return from_rows(rows, dv, dpv);
}

// --- 3. the witness-independence diagram ---------------------------------

namespace detail_ws {

// One row of the comparison: the interleaved sum of an S_k built with the
// witness wlow at degree k and an S_{k+1}[2] built with whigh at degree k.
// Both rows share the graded object
//   A | E+S+M | B+P_{k+1}+A+A' | T+E+S+E'+S'+M | B+B'+P_k+A'' | T+E+S | B;
// swap_ext routes each degree-k extension through the other E copy, which
// is exactly the tau conjugation of the independence argument.
template <class F>
BinaryComplex<F> ws_row(const BinaryComplex<F>& b, std::size_t k, const ShorteningChoices<F>& c,
                        const ExtensionWitness<F>& w, const ExtensionWitness<F>& wp,
                        bool swap_ext) {
    using bincx::detail::Slot;
    auto fld = b.field();
    const auto whigh = c.witness(k + 1);
    const auto wlow = c.witness(k - 1);
    auto jh = bincx::detail::j_blocks(whigh), kh = bincx::detail::k_blocks(whigh);
    auto jw = bincx::detail::j_blocks(w), kw = bincx::detail::k_blocks(w);
    auto jp = bincx::detail::j_blocks(wp), kp = bincx::detail::k_blocks(wp);
    auto jl = bincx::detail::j_blocks(wlow), kl = bincx::detail::k_blocks(wlow);

    bincx::detail::ComplexAssembler<F> a(fld, 6);
    a.add_slot(6, {'A', 1}, whigh.dim_a);
    a.add_slot(5, {'E', 1}, c.jd(k + 1));
    a.add_slot(5, {'S', 1}, whigh.dim_s);
    a.add_slot(5, {'M', 1}, c.jd(k + 1));
    a.add_slot(4, {'B', 1}, whigh.dim_b);
    a.add_slot(4, {'P', 1}, b.dim(k + 1));
    a.add_slot(4, {'A', 2}, w.dim_a);
    a.add_slot(4, {'A', 3}, wp.dim_a);
    a.add_slot(3, {'T', 0}, c.jd(k));
    a.add_slot(3, {'E', 2}, c.jd(k));
    a.add_slot(3, {'S', 2}, w.dim_s);
    a.add_slot(3, {'E', 3}, c.jd(k));
    a.add_slot(3, {'S', 3}, wp.dim_s);
    a.add_slot(3, {'M', 0}, c.jd(k));
    a.add_slot(2, {'B', 2}, w.dim_b);
    a.add_slot(2, {'B', 3}, wp.dim_b);
    a.add_slot(2, {'P', 0}, b.dim(k));
    a.add_slot(2, {'A', 0}, wlow.dim_a);
    a.add_slot(1, {'T', 4}, c.jd(k - 1));
    a.add_slot(1, {'E', 4}, c.jd(k - 1));
    a.add_slot(1, {'S', 4}, wlow.dim_s);
    a.add_slot(0, {'B', 0}, wlow.dim_b);

    const Slot ew = swap_ext ? Slot{'E', 3} : Slot{'E', 2};  // where w's extension lands
    const Slot ewp = swap_ext ? Slot{'E', 2} : Slot{'E', 3}; // where wp's extension lands

    for (Side side : {Side::Top, Side::Bot}) {
        const bool top = side == Side::Top;
        const auto& bh = top ? kh : jh;
        const auto& bw = top ? kw : jw;
        const auto& bp = top ? kp : jp;
        const auto& bl = top ? kl : jl;
        const auto& f = top ? c.top : c.bot;
        a.put(side, 6, {'E', 1}, {'A', 1}, bh.aX);
        a.put(side, 6, {'S', 1}, {'A', 1}, bh.aS);
        a.put(side, 5, {'B', 1}, {'E', 1}, bh.bX);
        a.put(side, 5, {'B', 1}, {'S', 1}, bh.bS);
        a.put(side, 5, {'P', 1}, {'M', 1}, bincx::detail::mono_or_empty(b, f, k + 1));
        a.put(side, 4, {'T', 0}, {'P', 1}, bincx::detail::epi_or_empty(b, f, k + 1));
        a.put(side, 4, ew, {'A', 2}, bw.aX);
        a.put(side, 4, {'S', 2}, {'A', 2}, bw.aS);
        a.put(side, 4, ewp, {'A', 3}, bp.aX);
        a.put(side, 4, {'S', 3}, {'A', 3}, bp.aS);
        a.put(side, 3, {'B', 2}, ew, bw.bX);
        a.put(side, 3, {'B', 2}, {'S', 2}, bw.bS);
        a.put(side, 3, {'B', 3}, ewp, bp.bX);
        a.put(side, 3, {'B', 3}, {'S', 3}, bp.bS);
        a.put(side, 3, {'P', 0}, {'M', 0}, bincx::detail::mono_or_empty(b, f, k));
        a.put(side, 2, {'T', 4}, {'P', 0}, bincx::detail::epi_or_empty(b, f, k));
        a.put(side, 2, {'E', 4}, {'A', 0}, bl.aX);
        a.put(side, 2, {'S', 4}, {'A', 0}, bl.aS);
        a.put(side, 1, {'B', 0}, {'E', 4}, bl.bX);
        a.put(side, 1, {'B', 0}, {'S', 4}, bl.bS);
    }
    return a.take();
}

} // namespace detail_ws

// Upper row S'_k (+) S_{k+1}[2], lower row S_k (+) S'_{k+1}[2]; the only
// nontrivial verticals flip the two degree-k extension copies, on both
// structures. Requires witnesses w (used by the canonical choices) and an
// alternative wp for the same (J_k, K_k).
template <class F>
BinaryDoubleComplex<F> witness_independence_diagram(const BinaryComplex<F>& b, std::size_t k,
                                                    const ShorteningChoices<F>& c,
                                                    const ExtensionWitness<F>& wp) {
    auto fld = b.field();
    const auto w = c.witness(k);
    BinaryComplex<F> upper = detail_ws::ws_row(b, k, c, w, wp, false);
    BinaryComplex<F> lower = detail_ws::ws_row(b, k, c, w, wp, true);

    std::vector<std::vector<Matrix<F>>> dv(7), dpv(7);
    for (std::size_t deg = 0; deg <= 6; ++deg) {
        Matrix<F> v = Matrix<F>::identity(fld, upper.dim(deg));
        if (deg == 3) {
            // flip the two extension copies E and E'
            const std::size_t j = c.jd(k), s = c.witness(k).dim_s;
            v = Matrix<F>(fld, upper.dim(3), upper.dim(3));
            v.set_block(0, 0, Matrix<F>::identity(fld, j));                 // T
            v.set_block(j, 2 * j + s, Matrix<F>::identity(fld, j));         // E <- E'
            v.set_block(j + j, j + j, Matrix<F>::identity(fld, s));         // S
            v.set_block(2 * j + s, j, Matrix<F>::identity(fld, j));         // E' <- E
            std::size_t o = 2 * j + s + j;
            v.set_block(o, o, Matrix<F>::identity(fld, upper.dim(3) - o));  // S', M
        }
        dv[deg].push_back(v);
        dpv[deg].push_back(std::move(v));
    }
    return from_rows<F>({lower, upper}, dv, dpv);
}

// --- 4. the hat-P diagram --------------------------------------------------

// Rows: P_0-strap | hat-P (+) Delta_B | P'(1) (+) Delta_J[1] (+) Delta_K[1]
// | A-strap. Realizes [hat-P] - [P'] = [S] and hence [hat-P] = [P].
template <class F>
BinaryDoubleComplex<F> hatp_diagram(const BinaryComplex<F>& b, const ShorteningChoices<F>& c) {
    auto fld = b.field();
    const std::size_t m = support_length(b);
    if (m < 2) throw std::invalid_argument("hatp_diagram: support length >= 2 required");
    const auto w = c.witness(1);
    auto jb = detail::j_blocks(w), kb = detail::k_blocks(w);
    const std::size_t j = c.jd(1), p0 = b.dim(0), p1 = b.dim(1);
    const std::size_t K = std::max<std::size_t>(m, 2);

    BinaryComplex<F> row0 = strap<F>(fld, p0, 0);
    BinaryComplex<F> row1 = direct_sum_b(build_hatP(b, c), strap<F>(fld, w.dim_b, 0));
    BinaryComplex<F> row2 = direct_sum_b(
        direct_sum_b(build_P_prime(b, c, 1), strap<F>(fld, j, 1)), strap<F>(fld, j, 1));
    BinaryComplex<F> row3 = strap<F>(fld, w.dim_a, 1);
    std::vector<BinaryComplex<F>> rows = {pad_to_degree(row0, K), pad_to_degree(row1, K),
                                          pad_to_degree(row2, K), pad_to_degree(row3, K)};

    std::vector<std::vector<Matrix<F>>> dv(K + 1), dpv(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
        for (std::size_t l = 1; l <= 3; ++l) {
            Matrix<F> t(fld, rows[l - 1].dim(k), rows[l].dim(k));
            Matrix<F> bo(fld, rows[l - 1].dim(k), rows[l].dim(k));
            if (l == 3) {
                if (k == 2) { // A -> (P_2, A, J, K)
                    t.set_block(b.dim(2), 0, Matrix<F>::identity(fld, w.dim_a));
                    bo = t;
                } else if (k == 1) { // A -> (T, E, S, J, K)
                    t.set_block(j, 0, kb.aX);
                    t.set_block(2 * j, 0, kb.aS);
                    bo.set_block(j, 0, jb.aX);
                    bo.set_block(2 * j, 0, jb.aS);
                }
            } else if (l == 2) {
                if (k >= 3 && k <= m) { // P_k -> P_k
                    t.set_block(0, 0, Matrix<F>::identity(fld, b.dim(k)));
                    bo = t;
                } else if (k == 2) {
                    // (P_2, A, J, K) -> (P_2, M, I): the mono copy takes J on
                    // top and K on the bottom, the strap copy the other one
                    t.set_block(0, 0, Matrix<F>::identity(fld, b.dim(2)));
                    t.set_block(b.dim(2), b.dim(2) + w.dim_a, Matrix<F>::identity(fld, j));
                    t.set_block(b.dim(2) + j, b.dim(2) + w.dim_a + j, Matrix<F>::identity(fld, j));
                    bo.set_block(0, 0, Matrix<F>::identity(fld, b.dim(2)));
                    bo.set_block(b.dim(2), b.dim(2) + w.dim_a + j, Matrix<F>::identity(fld, j));
                    bo.set_block(b.dim(2) + j, b.dim(2) + w.dim_a, Matrix<F>::identity(fld, j));
                } else if (k == 1) {
                    // (T, E, S, J, K) -> (T, P_1, I, B)
                    const std::size_t s = w.dim_s;
                    t.set_block(0, 0, Matrix<F>::identity(fld, j));          // T
                    t.set_block(j, 2 * j + s, c.top.mono(1));                // P_1 <- J
                    t.set_block(j + p1, 3 * j + s, Matrix<F>::identity(fld, j)); // I <- K
                    t.set_block(j + p1 + j, j, kb.bX);                       // B <- E
                    t.set_block(j + p1 + j, 2 * j, kb.bS);                   // B <- S
                    bo.set_block(0, 0, Matrix<F>::identity(fld, j));
                    bo.set_block(j, 3 * j + s, c.bot.mono(1));               // P_1 <- K
                    bo.set_block(j + p1, 2 * j + s, Matrix<F>::identity(fld, j)); // I <- J
                    bo.set_block(j + p1 + j, j, jb.bX);
                    bo.set_block(j + p1 + j, 2 * j, jb.bS);
                } else if (k == 0) { // B -> (P_0, B)
                    t.set_block(p0, 0, Matrix<F>::identity(fld, w.dim_b));
                    bo = t;
                }
            } else { // l == 1
                if (k == 1) { // (T, P_1, I, B) -> P_0
                    t.set_block(0, j, detail::top_d(b, 1));
                    bo.set_block(0, j, detail::bot_d(b, 1));
                } else if (k == 0) { // (P_0, B) -> P_0
                    t.set_block(0, 0, Matrix<F>::identity(fld, p0));
                    bo = t;
                }
            }
            dv[k].push_back(std::move(t));
            dpv[k].push_back(std::move(bo));
        }
    }
    return from_rows(rows, dv, dpv);
}

} // namespace bincx::fixtures

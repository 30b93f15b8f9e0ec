#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bincx/binary.hpp"
#include "bincx/chain.hpp"
#include "bincx/heller.hpp"
#include "bincx/rng.hpp"

namespace bincx {

// k(P): the largest degree carrying a nonzero object; trailing zero
// dimensions are ignored.
template <class F>
std::size_t support_length(const BinaryComplex<F>& b) {
    for (std::size_t n = b.dims().size(); n-- > 0;)
        if (b.dim(n) != 0) return n;
    return 0;
}

template <class F>
BinaryComplex<F> trimmed(const BinaryComplex<F>& b) {
    const std::size_t m = support_length(b);
    if (m == b.top_degree()) return b;
    std::vector<std::size_t> dims(b.dims().begin(), b.dims().begin() + m + 1);
    std::vector<Matrix<F>> top, bot;
    for (std::size_t n = 1; n <= m; ++n) {
        top.push_back(b.top_diff(n));
        bot.push_back(b.bot_diff(n));
    }
    return BinaryComplex<F>(ChainComplex<F>(b.field(), dims, std::move(top)),
                            ChainComplex<F>(b.field(), dims, std::move(bot)));
}

// The choices every shortening construction consumes: a pair of epi-mono
// factorizations (J_n from the top differential, K_n from the bottom) and
// one extension witness per degree. The canonical choices use the echelon
// factorization and the S = 0 witnesses; the randomized ones re-base every
// J_n/K_n and draw nontrivial witnesses, which is exactly the freedom whose
// irrelevance the well-definedness tests certify.
template <class F>
struct ShorteningChoices {
    typename F::Desc fld;
    Factorization<F> top, bot;
    std::vector<ExtensionWitness<F>> witnesses; // indexed by degree

    std::size_t jd(std::size_t n) const { return top.jdim(n); }
    std::size_t kd(std::size_t n) const { return bot.jdim(n); }

    // Degrees beyond the grading carry the trivial witness of (0, 0).
    ExtensionWitness<F> witness(std::size_t n) const {
        if (n < witnesses.size()) return witnesses[n];
        return *heller_witness<F>(0, 0, fld);
    }
};

template <class F>
ShorteningChoices<F> canonical_choices(const BinaryComplex<F>& b) {
    auto f = must_validate(b);
    ShorteningChoices<F> c{b.field(), std::move(f.top), std::move(f.bot), {}};
    for (std::size_t n = 0; n <= b.top_degree() + 1; ++n) {
        auto w = heller_witness<F>(c.jd(n), c.kd(n), b.field());
        if (!w) throw std::invalid_argument("choices: J_n and K_n dimensions disagree");
        c.witnesses.push_back(std::move(*w));
    }
    return c;
}

// Random re-basing g_n of each J_n and K_n (n >= 1) plus random witnesses.
// The degree-0 identification J_0 = K_0 = P_0 stays pinned so that the
// bottom rows of the displays keep their literal d_1 / d'_1 maps.
template <class F>
ShorteningChoices<F> randomized_choices(const BinaryComplex<F>& b, std::uint64_t seed,
                                        std::size_t max_s) {
    ShorteningChoices<F> c = canonical_choices(b);
    Rng rng(seed);
    const std::size_t m = b.top_degree();
    auto rebase = [&](Factorization<F>& f) {
        for (std::size_t n = 1; n < m; ++n) {
            if (f.jdims[n] == 0) continue;
            Rng sub = rng.fork(n);
            Matrix<F> g = random_invertible<F>(b.field(), f.jdims[n], sub);
            f.monos[n] = f.monos[n] * g;
            f.epis[n + 1] = *inverse(g) * f.epis[n + 1];
        }
    };
    rebase(c.top);
    rebase(c.bot);
    for (std::size_t n = 1; n < c.witnesses.size(); ++n) {
        if (c.jd(n) == 0) continue;
        std::size_t s = rng.below(max_s + 1);
        c.witnesses[n] = random_witness<F>(c.jd(n), c.kd(n), s, rng.next(), b.field());
    }
    return c;
}

struct ChoicePolicy {
    bool randomized = false;
    std::uint64_t seed = 0;
    std::size_t max_s = 0;

    static ChoicePolicy canonical() { return {}; }
    static ChoicePolicy random(std::uint64_t seed, std::size_t max_s = 3) {
        return {true, seed, max_s};
    }
};

template <class F>
ShorteningChoices<F> make_choices(const BinaryComplex<F>& b, const ChoicePolicy& p,
                                  std::uint64_t salt = 0) {
    return p.randomized ? randomized_choices(b, p.seed + 0x9e3779b97f4a7c15ULL * salt, p.max_s)
                        : canonical_choices(b);
}

namespace detail {

// Labeled block slot inside one degree of an assembled complex.
struct Slot {
    char kind;     // 'P', 'J', 'K', 'A', 'B', 'S' plus lowercase twins
    std::size_t n; // which P_n / J_n / ...

    friend bool operator==(Slot a, Slot b) { return a.kind == b.kind && a.n == b.n; }
};

// Assembles a binary complex from per-degree slot layouts and named blocks.
// Zero-dimensional slots are legal and simply contribute nothing; the
// displays' zero objects are materialized, never elided.
template <class F>
class ComplexAssembler {
public:
    using Desc = typename F::Desc;

    ComplexAssembler(Desc fld, std::size_t top_degree)
        : fld_(fld), slots_(top_degree + 1), built_(false) {}

    void add_slot(std::size_t deg, Slot s, std::size_t dim) {
        slots_[deg].push_back({s, dim});
    }

    // total dimension of a degree
    std::size_t degree_dim(std::size_t deg) const {
        std::size_t t = 0;
        for (const auto& [s, d] : slots_[deg]) t += d;
        return t;
    }

    void put(Side side, std::size_t from_deg, Slot target, Slot source, const Matrix<F>& m) {
        ensure_built();
        auto [toff, tdim] = locate(from_deg - 1, target);
        auto [soff, sdim] = locate(from_deg, source);
        if (m.rows() != tdim || m.cols() != sdim)
            throw std::invalid_argument("ComplexAssembler: block shape mismatch");
        if (tdim == 0 || sdim == 0) return;
        (side == Side::Top ? top_ : bot_)[from_deg - 1].set_block(toff, soff, m);
    }

    BinaryComplex<F> take() {
        ensure_built();
        std::vector<std::size_t> dims;
        for (std::size_t deg = 0; deg < slots_.size(); ++deg) dims.push_back(degree_dim(deg));
        return BinaryComplex<F>(ChainComplex<F>(fld_, dims, std::move(top_)),
                                ChainComplex<F>(fld_, dims, std::move(bot_)));
    }

private:
    Desc fld_;
    std::vector<std::vector<std::pair<Slot, std::size_t>>> slots_;
    std::vector<Matrix<F>> top_, bot_;
    bool built_;

    void ensure_built() {
        if (built_) return;
        for (std::size_t deg = 1; deg < slots_.size(); ++deg) {
            top_.push_back(Matrix<F>(fld_, degree_dim(deg - 1), degree_dim(deg)));
            bot_.push_back(Matrix<F>(fld_, degree_dim(deg - 1), degree_dim(deg)));
        }
        built_ = true;
    }

    std::pair<std::size_t, std::size_t> locate(std::size_t deg, Slot s) const {
        std::size_t off = 0;
        for (const auto& [slot, dim] : slots_[deg]) {
            if (slot == s) return {off, dim};
            off += dim;
        }
        throw std::invalid_argument("ComplexAssembler: unknown slot");
    }
};

// Witness sub-blocks, named after the display pieces: the inclusion
// A >-> X (+) S splits into its X-part and S-part, the projection
// X (+) S ->> B into the columns hitting X and S.
template <class F>
struct WitnessBlocks {
    Matrix<F> aX, aS; // rows of the mono
    Matrix<F> bX, bS; // columns of the epi
};

template <class F>
WitnessBlocks<F> j_blocks(const ExtensionWitness<F>& w) {
    return {w.a_j.block(0, 0, w.dim_j, w.dim_a), w.a_j.block(w.dim_j, 0, w.dim_s, w.dim_a),
            w.b_j.block(0, 0, w.dim_b, w.dim_j), w.b_j.block(0, w.dim_j, w.dim_b, w.dim_s)};
}

template <class F>
WitnessBlocks<F> k_blocks(const ExtensionWitness<F>& w) {
    return {w.a_k.block(0, 0, w.dim_k, w.dim_a), w.a_k.block(w.dim_k, 0, w.dim_s, w.dim_a),
            w.b_k.block(0, 0, w.dim_b, w.dim_k), w.b_k.block(0, w.dim_k, w.dim_b, w.dim_s)};
}

// d_n of the top/bottom complex, with empty matrices beyond the grading.
template <class F>
Matrix<F> top_d(const BinaryComplex<F>& b, std::size_t n) {
    if (n >= 1 && n <= b.top_degree()) return b.top_diff(n);
    return Matrix<F>(b.field(), b.dim(n - 1), b.dim(n));
}

template <class F>
Matrix<F> bot_d(const BinaryComplex<F>& b, std::size_t n) {
    if (n >= 1 && n <= b.top_degree()) return b.bot_diff(n);
    return Matrix<F>(b.field(), b.dim(n - 1), b.dim(n));
}

template <class F>
Matrix<F> mono_or_empty(const BinaryComplex<F>& b, const Factorization<F>& f, std::size_t n) {
    if (n < f.monos.size()) return f.mono(n);
    return Matrix<F>(b.field(), b.dim(n), 0);
}

template <class F>
Matrix<F> epi_or_empty(const BinaryComplex<F>& b, const Factorization<F>& f, std::size_t n) {
    if (n >= 1 && n < f.epis.size()) return f.epi(n);
    return Matrix<F>(b.field(), n >= 1 ? f.jdim(n - 1) : 0, b.dim(n));
}

} // namespace detail

// ---------------------------------------------------------------------------
// The length-4 shortening

// S_n, supported on [0,4] after re-basing at degree 0. Three exact strands
// on the graded object
//   A_n | K_n+S_n+J_n | B_n+P_n+A_{n-1} | J_{n-1}+K_{n-1}+S_{n-1} | B_{n-1}
// for n >= 3; the n = 2 variant ends with the original tail P_1, P_0.
// The two J/K copies in the middle degrees are shared by role, not by name:
// slot E_n receives the witness extension (K_n for the top, J_n for the
// bottom), slot M_n feeds the mono into P_n (J_n top, K_n bottom) and slot
// T_{n-1} receives the epi out of P_n. With shared witnesses on a diagonal
// input both differentials then literally coincide.
template <class F>
BinaryComplex<F> build_S_n(const BinaryComplex<F>& b, std::size_t n,
                           const ShorteningChoices<F>& c) {
    using detail::Slot;
    if (n < 2) throw std::invalid_argument("build_S_n: n >= 2 required");
    auto fld = b.field();
    const auto wn = c.witness(n);
    auto jn = detail::j_blocks(wn), kn = detail::k_blocks(wn);
    detail::ComplexAssembler<F> a(fld, 4);

    a.add_slot(4, {'A', n}, wn.dim_a);
    a.add_slot(3, {'E', n}, c.jd(n));
    a.add_slot(3, {'S', n}, wn.dim_s);
    a.add_slot(3, {'M', n}, c.jd(n));

    Matrix<F> i_n = detail::mono_or_empty(b, c.top, n);
    Matrix<F> it_n = detail::mono_or_empty(b, c.bot, n);
    Matrix<F> q_n = detail::epi_or_empty(b, c.top, n);
    Matrix<F> qt_n = detail::epi_or_empty(b, c.bot, n);

    if (n >= 3) {
        const auto wm = c.witness(n - 1);
        auto jm = detail::j_blocks(wm), km = detail::k_blocks(wm);
        a.add_slot(2, {'B', n}, wn.dim_b);
        a.add_slot(2, {'P', n}, b.dim(n));
        a.add_slot(2, {'A', n - 1}, wm.dim_a);
        a.add_slot(1, {'T', n - 1}, c.jd(n - 1));
        a.add_slot(1, {'E', n - 1}, c.jd(n - 1));
        a.add_slot(1, {'S', n - 1}, wm.dim_s);
        a.add_slot(0, {'B', n - 1}, wm.dim_b);

        a.put(Side::Top, 4, {'E', n}, {'A', n}, kn.aX);
        a.put(Side::Top, 4, {'S', n}, {'A', n}, kn.aS);
        a.put(Side::Top, 3, {'B', n}, {'E', n}, kn.bX);
        a.put(Side::Top, 3, {'B', n}, {'S', n}, kn.bS);
        a.put(Side::Top, 3, {'P', n}, {'M', n}, i_n);
        a.put(Side::Top, 2, {'T', n - 1}, {'P', n}, q_n);
        a.put(Side::Top, 2, {'E', n - 1}, {'A', n - 1}, km.aX);
        a.put(Side::Top, 2, {'S', n - 1}, {'A', n - 1}, km.aS);
        a.put(Side::Top, 1, {'B', n - 1}, {'E', n - 1}, km.bX);
        a.put(Side::Top, 1, {'B', n - 1}, {'S', n - 1}, km.bS);

        a.put(Side::Bot, 4, {'E', n}, {'A', n}, jn.aX);
        a.put(Side::Bot, 4, {'S', n}, {'A', n}, jn.aS);
        a.put(Side::Bot, 3, {'B', n}, {'E', n}, jn.bX);
        a.put(Side::Bot, 3, {'B', n}, {'S', n}, jn.bS);
        a.put(Side::Bot, 3, {'P', n}, {'M', n}, it_n);
        a.put(Side::Bot, 2, {'T', n - 1}, {'P', n}, qt_n);
        a.put(Side::Bot, 2, {'E', n - 1}, {'A', n - 1}, jm.aX);
        a.put(Side::Bot, 2, {'S', n - 1}, {'A', n - 1}, jm.aS);
        a.put(Side::Bot, 1, {'B', n - 1}, {'E', n - 1}, jm.bX);
        a.put(Side::Bot, 1, {'B', n - 1}, {'S', n - 1}, jm.bS);
        return a.take();
    }

    // n = 2: the tail of the original complex rides along
    a.add_slot(2, {'B', 2}, wn.dim_b);
    a.add_slot(2, {'P', 2}, b.dim(2));
    a.add_slot(1, {'P', 1}, b.dim(1));
    a.add_slot(0, {'P', 0}, b.dim(0));

    a.put(Side::Top, 4, {'E', 2}, {'A', 2}, kn.aX);
    a.put(Side::Top, 4, {'S', 2}, {'A', 2}, kn.aS);
    a.put(Side::Top, 3, {'B', 2}, {'E', 2}, kn.bX);
    a.put(Side::Top, 3, {'B', 2}, {'S', 2}, kn.bS);
    a.put(Side::Top, 3, {'P', 2}, {'M', 2}, i_n);
    a.put(Side::Top, 2, {'P', 1}, {'P', 2}, detail::top_d(b, 2));
    a.put(Side::Top, 1, {'P', 0}, {'P', 1}, detail::top_d(b, 1));

    a.put(Side::Bot, 4, {'E', 2}, {'A', 2}, jn.aX);
    a.put(Side::Bot, 4, {'S', 2}, {'A', 2}, jn.aS);
    a.put(Side::Bot, 3, {'B', 2}, {'E', 2}, jn.bX);
    a.put(Side::Bot, 3, {'B', 2}, {'S', 2}, jn.bS);
    a.put(Side::Bot, 3, {'P', 2}, {'M', 2}, it_n);
    a.put(Side::Bot, 2, {'P', 1}, {'P', 2}, detail::bot_d(b, 2));
    a.put(Side::Bot, 1, {'P', 0}, {'P', 1}, detail::bot_d(b, 1));
    return a.take();
}

// [P] = sum_{n>=2} (-1)^n [S_n]; terms that are literally zero complexes are
// dropped. The n = 2 term is always present so the identity also covers
// complexes shorter than length two.
template <class F>
NenashevExpression<F> shorten_to_len4(const BinaryComplex<F>& b, const ShorteningChoices<F>& c) {
    NenashevExpression<F> e;
    const std::size_t k = support_length(b);
    for (std::size_t n = 2; n <= std::max<std::size_t>(2, k); ++n) {
        BinaryComplex<F> s = build_S_n(b, n, c);
        if (s.total_dim() == 0) continue;
        e.push(n % 2 == 0 ? 1 : -1, std::move(s));
    }
    return e;
}

template <class F>
NenashevExpression<F> shorten_to_len4(const BinaryComplex<F>& b) {
    return shorten_to_len4(b, canonical_choices(b));
}

// P', the complement piece of the S_n construction at degree n:
//   ... P_{n+2} | P_{n+1}+A_n | J_n+K_n+S_n | B_n
// realizing [P] = [S_{...}] - [P']. As in S_n the two middle copies are
// shared by role: T_n catches the epi out of P_{n+1}, E_n the extension.
template <class F>
BinaryComplex<F> build_P_prime(const BinaryComplex<F>& b, const ShorteningChoices<F>& c,
                               std::size_t n = 2) {
    using detail::Slot;
    if (n < 1) throw std::invalid_argument("build_P_prime: n >= 1 required");
    const std::size_t m = support_length(b);
    const std::size_t top_deg = std::max<std::size_t>(2, m >= n ? m - n + 1 : 0);
    const auto w = c.witness(n);
    auto jb = detail::j_blocks(w), kb = detail::k_blocks(w);
    detail::ComplexAssembler<F> a(b.field(), top_deg);

    a.add_slot(0, {'B', n}, w.dim_b);
    a.add_slot(1, {'T', n}, c.jd(n));
    a.add_slot(1, {'E', n}, c.jd(n));
    a.add_slot(1, {'S', n}, w.dim_s);
    a.add_slot(2, {'P', n + 1}, b.dim(n + 1));
    a.add_slot(2, {'A', n}, w.dim_a);
    for (std::size_t j = 3; j <= top_deg; ++j) a.add_slot(j, {'P', n + j - 1}, b.dim(n + j - 1));

    a.put(Side::Top, 1, {'B', n}, {'E', n}, kb.bX);
    a.put(Side::Top, 1, {'B', n}, {'S', n}, kb.bS);
    a.put(Side::Top, 2, {'T', n}, {'P', n + 1}, detail::epi_or_empty(b, c.top, n + 1));
    a.put(Side::Top, 2, {'E', n}, {'A', n}, kb.aX);
    a.put(Side::Top, 2, {'S', n}, {'A', n}, kb.aS);
    a.put(Side::Bot, 1, {'B', n}, {'E', n}, jb.bX);
    a.put(Side::Bot, 1, {'B', n}, {'S', n}, jb.bS);
    a.put(Side::Bot, 2, {'T', n}, {'P', n + 1}, detail::epi_or_empty(b, c.bot, n + 1));
    a.put(Side::Bot, 2, {'E', n}, {'A', n}, jb.aX);
    a.put(Side::Bot, 2, {'S', n}, {'A', n}, jb.aS);
    if (top_deg >= 3) {
        a.put(Side::Top, 3, {'P', n + 1}, {'P', n + 2}, detail::top_d(b, n + 2));
        a.put(Side::Bot, 3, {'P', n + 1}, {'P', n + 2}, detail::bot_d(b, n + 2));
    }
    for (std::size_t j = 4; j <= top_deg; ++j) {
        a.put(Side::Top, j, {'P', n + j - 2}, {'P', n + j - 1}, detail::top_d(b, n + j - 1));
        a.put(Side::Bot, j, {'P', n + j - 2}, {'P', n + j - 1}, detail::bot_d(b, n + j - 1));
    }
    return a.take();
}

// ---------------------------------------------------------------------------
// The length-2 pipeline (hat-P, Q, T, T')

// P-hat: pad degree 2 with J+K and degree 1 with identity straps so that
// both inclusions J >-> P_1 and K >-> P_1 become visible summands:
//   ... P_3 | P_2+J+K | J+P_1+K | P_0,  with [P-hat] = [P].
// Here J = J_1 and K = K_1 from the chosen factorizations; the copies are
// again shared by role (M feeds the mono, T catches the epi, I carries the
// identity strap), so diagonal inputs keep equal differentials.
template <class F>
BinaryComplex<F> build_hatP(const BinaryComplex<F>& b, const ShorteningChoices<F>& c) {
    using detail::Slot;
    const std::size_t m = support_length(b);
    if (m < 2) throw std::invalid_argument("build_hatP: support length >= 2 required");
    auto fld = b.field();
    const std::size_t j = c.jd(1);
    detail::ComplexAssembler<F> a(fld, std::max<std::size_t>(2, m));

    a.add_slot(0, {'P', 0}, b.dim(0));
    a.add_slot(1, {'T', 1}, j);
    a.add_slot(1, {'P', 1}, b.dim(1));
    a.add_slot(1, {'I', 1}, j);
    a.add_slot(2, {'P', 2}, b.dim(2));
    a.add_slot(2, {'M', 1}, j);
    a.add_slot(2, {'I', 1}, j);
    for (std::size_t d = 3; d <= m; ++d) a.add_slot(d, {'P', d}, b.dim(d));

    Matrix<F> id = Matrix<F>::identity(fld, j);
    a.put(Side::Top, 1, {'P', 0}, {'P', 1}, detail::top_d(b, 1));
    a.put(Side::Top, 2, {'T', 1}, {'P', 2}, c.top.epi(2));
    a.put(Side::Top, 2, {'P', 1}, {'M', 1}, c.top.mono(1));
    a.put(Side::Top, 2, {'I', 1}, {'I', 1}, id);
    a.put(Side::Bot, 1, {'P', 0}, {'P', 1}, detail::bot_d(b, 1));
    a.put(Side::Bot, 2, {'T', 1}, {'P', 2}, c.bot.epi(2));
    a.put(Side::Bot, 2, {'P', 1}, {'M', 1}, c.bot.mono(1));
    a.put(Side::Bot, 2, {'I', 1}, {'I', 1}, id);
    for (std::size_t d = 3; d <= m; ++d) {
        a.put(Side::Top, d, {'P', d - 1}, {'P', d}, detail::top_d(b, d));
        a.put(Side::Bot, d, {'P', d - 1}, {'P', d}, detail::bot_d(b, d));
    }
    return a.take();
}

// Q, one degree shorter than P for support length >= 3:
//   ... P_4 | P_3+K+J | P_2+P_1+J+K | J+P_0+K.
// The characteristic cross-over: the top differential sends P_1 to P_0
// through d'_1 (after K >-> P_1), the bottom through d_1 (after J >-> P_1).
template <class F>
BinaryComplex<F> build_Q(const BinaryComplex<F>& b, const ShorteningChoices<F>& c) {
    using detail::Slot;
    const std::size_t m = support_length(b);
    if (m < 2) throw std::invalid_argument("build_Q: support length >= 2 required");
    auto fld = b.field();
    const std::size_t j = c.jd(1), k = c.kd(1);
    const std::size_t top_deg = std::max<std::size_t>(2, m - 1);
    detail::ComplexAssembler<F> a(fld, top_deg);

    a.add_slot(0, {'J', 1}, j);
    a.add_slot(0, {'P', 0}, b.dim(0));
    a.add_slot(0, {'K', 1}, k);
    a.add_slot(1, {'P', 2}, b.dim(2));
    a.add_slot(1, {'P', 1}, b.dim(1));
    a.add_slot(1, {'J', 1}, j);
    a.add_slot(1, {'K', 1}, k);
    a.add_slot(2, {'P', 3}, b.dim(3));
    a.add_slot(2, {'K', 1}, k);
    a.add_slot(2, {'J', 1}, j);
    for (std::size_t d = 3; d <= top_deg; ++d) a.add_slot(d, {'P', d + 1}, b.dim(d + 1));

    Matrix<F> idj = Matrix<F>::identity(fld, j), idk = Matrix<F>::identity(fld, k);
    a.put(Side::Top, 1, {'J', 1}, {'P', 2}, c.top.epi(2));
    a.put(Side::Top, 1, {'P', 0}, {'P', 1}, detail::bot_d(b, 1)); // cross-over
    a.put(Side::Top, 1, {'K', 1}, {'K', 1}, idk);
    a.put(Side::Top, 2, {'P', 2}, {'P', 3}, detail::top_d(b, 3));
    a.put(Side::Top, 2, {'P', 1}, {'K', 1}, c.bot.mono(1));
    a.put(Side::Top, 2, {'J', 1}, {'J', 1}, idj);

    a.put(Side::Bot, 1, {'K', 1}, {'P', 2}, c.bot.epi(2));
    a.put(Side::Bot, 1, {'P', 0}, {'P', 1}, detail::top_d(b, 1)); // cross-over
    a.put(Side::Bot, 1, {'J', 1}, {'J', 1}, idj);
    a.put(Side::Bot, 2, {'P', 2}, {'P', 3}, detail::bot_d(b, 3));
    a.put(Side::Bot, 2, {'P', 1}, {'J', 1}, c.top.mono(1));
    a.put(Side::Bot, 2, {'K', 1}, {'K', 1}, idk);

    for (std::size_t d = 3; d <= top_deg; ++d) {
        a.put(Side::Top, d, {'P', d}, {'P', d + 1}, detail::top_d(b, d + 1));
        a.put(Side::Bot, d, {'P', d}, {'P', d + 1}, detail::bot_d(b, d + 1));
    }
    return a.take();
}

namespace detail {

// Vertical comparison maps v_n : hatP_n -> Q_{n-1} (top structure) and the
// primed family (bottom): the idempotents e_J / e_{P_2} / e_K of the display.
template <class F>
Matrix<F> hatq_vertical(const BinaryComplex<F>& b, const ShorteningChoices<F>& c, std::size_t n,
                        Side side, const BinaryComplex<F>& hat, const BinaryComplex<F>& q) {
    auto fld = b.field();
    const std::size_t j = c.jd(1);
    Matrix<F> v(fld, n >= 1 ? q.dim(n - 1) : 0, hat.dim(n));
    if (n == 1) {
        // hatP_1 = (T, P_1, I) -> Q_0 = (J, P_0, K): both verticals read the
        // T component; the top lands in the J slot, the bottom in the K slot.
        if (side == Side::Top)
            v.set_block(0, 0, Matrix<F>::identity(fld, j));
        else
            v.set_block(j + b.dim(0), 0, Matrix<F>::identity(fld, j));
    } else if (n == 2) {
        // hatP_2 = (P_2, J, K) -> Q_1 = (P_2, P_1, J, K): e_{P_2}
        v.set_block(0, 0, Matrix<F>::identity(fld, b.dim(2)));
    } else if (n == 3) {
        // hatP_3 = P_3 -> Q_2 = (P_3, K, J)
        v.set_block(0, 0, Matrix<F>::identity(fld, b.dim(3)));
    } else if (n >= 4) {
        v.set_block(0, 0, Matrix<F>::identity(fld, b.dim(n)));
    }
    return v;
}

} // namespace detail

// T: the total complex, shifted down by one, of the two-row comparison
// diagram between hat-P and Q[1]. Concretely T_n = Q_n (+) hatP_n with
// differential [[d_Q, (-1)^n v], [0, d_hatP]]; only the rows of the diagram
// are acyclic, which already makes T acyclic.
template <class F>
BinaryComplex<F> build_T(const BinaryComplex<F>& b, const ShorteningChoices<F>& c) {
    const std::size_t m = support_length(b);
    if (m < 2) throw std::invalid_argument("build_T: support length >= 2 required");
    auto fld = b.field();
    BinaryComplex<F> hat = build_hatP(b, c);
    BinaryComplex<F> q = build_Q(b, c);
    const std::size_t top_deg = std::max(hat.top_degree(), q.top_degree());

    std::vector<std::size_t> dims(top_deg + 1, 0);
    for (std::size_t n = 0; n <= top_deg; ++n) dims[n] = q.dim(n) + hat.dim(n);
    std::vector<Matrix<F>> top, bot;
    for (std::size_t n = 1; n <= top_deg; ++n) {
        Matrix<F> t(fld, dims[n - 1], dims[n]);
        Matrix<F> bo(fld, dims[n - 1], dims[n]);
        if (n <= q.top_degree()) {
            t.set_block(0, 0, q.top_diff(n));
            bo.set_block(0, 0, q.bot_diff(n));
        }
        if (n <= hat.top_degree()) {
            t.set_block(q.dim(n - 1), q.dim(n), hat.top_diff(n));
            bo.set_block(q.dim(n - 1), q.dim(n), hat.bot_diff(n));
        }
        Matrix<F> v = detail::hatq_vertical(b, c, n, Side::Top, hat, q);
        Matrix<F> vp = detail::hatq_vertical(b, c, n, Side::Bot, hat, q);
        if (n % 2 == 1) {
            v = v.negated();
            vp = vp.negated();
        }
        t.set_block(0, q.dim(n), v);
        bo.set_block(0, q.dim(n), vp);
        top.push_back(std::move(t));
        bot.push_back(std::move(bo));
    }
    return BinaryComplex<F>(ChainComplex<F>(fld, dims, std::move(top)),
                            ChainComplex<F>(fld, dims, std::move(bot)));
}

// T': what remains of T after splitting off the diagonal complexes
// Delta_{P_m}[m-1], ..., Delta_{P_2}[1]. The iterated kernels delete, degree
// by degree, the P-components of T above degree 2; what is left is the
// displayed [0,2] staircase complex on
//   K+J+J+K | P_1+J+K+J+P_1+K | J+P_0+K+P_0.
template <class F>
BinaryComplex<F> build_T_prime(const BinaryComplex<F>& b, const ShorteningChoices<F>& c) {
    const std::size_t m = support_length(b);
    if (m < 2) throw std::invalid_argument("build_T_prime: support length >= 2 required");
    auto fld = b.field();
    const std::size_t j = c.jd(1), k = c.kd(1);
    const std::size_t p0 = b.dim(0), p1 = b.dim(1);
    Matrix<F> idj = Matrix<F>::identity(fld, j), idk = Matrix<F>::identity(fld, k);
    const Matrix<F>& i1 = c.top.mono(1);
    const Matrix<F>& it1 = c.bot.mono(1);

    // degree 2: K_q | J_q | M_p | I_p    (Q_2 minus P_3, hatP_2 minus P_2)
    // degree 1: P1_q | J_q | K_q | T_p | P1_p | I_p
    // degree 0: J_q | P0_q | K_q | P0_p
    std::vector<std::size_t> dims = {j + p0 + k + p0, p1 + j + k + j + p1 + j, k + 3 * j};
    const std::size_t o2_Kq = 0, o2_Jq = k, o2_Mp = k + j, o2_Ip = k + 2 * j;
    const std::size_t o1_P1q = 0, o1_Jq = p1, o1_Kq = p1 + j, o1_Tp = p1 + j + k,
                      o1_P1p = p1 + 2 * j + k, o1_Ip = 2 * p1 + 2 * j + k;
    const std::size_t o0_Jq = 0, o0_P0q = j, o0_Kq = j + p0, o0_P0p = j + p0 + k;

    Matrix<F> t2(fld, dims[1], dims[2]), b2(fld, dims[1], dims[2]);
    t2.set_block(o1_P1q, o2_Kq, it1);
    t2.set_block(o1_Jq, o2_Jq, idj);
    t2.set_block(o1_P1p, o2_Mp, i1);
    t2.set_block(o1_Ip, o2_Ip, idj);
    b2.set_block(o1_P1q, o2_Jq, i1);
    b2.set_block(o1_Kq, o2_Kq, idk);
    b2.set_block(o1_P1p, o2_Mp, it1);
    b2.set_block(o1_Ip, o2_Ip, idj);

    Matrix<F> t1(fld, dims[0], dims[1]), b1(fld, dims[0], dims[1]);
    t1.set_block(o0_Jq, o1_Tp, idj.negated()); // (-1)^1 from the total-complex sign
    t1.set_block(o0_P0q, o1_P1q, detail::bot_d(b, 1));
    t1.set_block(o0_Kq, o1_Kq, idk);
    t1.set_block(o0_P0p, o1_P1p, detail::top_d(b, 1));
    b1.set_block(o0_Jq, o1_Jq, idj);
    b1.set_block(o0_P0q, o1_P1q, detail::top_d(b, 1));
    b1.set_block(o0_Kq, o1_Tp, idj.negated());
    b1.set_block(o0_P0p, o1_P1p, detail::bot_d(b, 1));

    std::vector<std::size_t> d = {dims[0], dims[1], dims[2]};
    return BinaryComplex<F>(ChainComplex<F>(fld, d, {t1, t2}),
                            ChainComplex<F>(fld, d, {b1, b2}));
}

// One shortening step: [P] = [J (+) J, id/tau] - [Q], where J is the image
// of the degree-2 top differential.
template <class F>
std::pair<BinaryComplex<F>, BinaryComplex<F>> shorten_step(const BinaryComplex<F>& b,
                                                           const ShorteningChoices<F>& c) {
    const std::size_t m = support_length(b);
    if (m < 2) throw std::invalid_argument("shorten_step: support length >= 2 required");
    return {swap_complex<F>(b.field(), c.jd(1)), build_Q(b, c)};
}

// ---------------------------------------------------------------------------
// P_k: the closed-form iterate of the shortening step

namespace detail {

// Component lists J_odd^k etc., ascending within each aggregate. J_0 and K_0
// are the shared P_0 slot.
inline std::vector<std::size_t> degrees_odd(std::size_t k) {
    std::vector<std::size_t> v;
    for (std::size_t n = 1; n <= k; n += 2) v.push_back(n);
    return v;
}

inline std::vector<std::size_t> degrees_even(std::size_t k, bool include_zero) {
    std::vector<std::size_t> v;
    if (include_zero) v.push_back(0);
    for (std::size_t n = 2; n <= k; n += 2) v.push_back(n);
    return v;
}

} // namespace detail

// The binary acyclic complex P_k of the iterated shortening, assembled
// directly from its strand description. Slot layout is fixed so that
// P_0 is the (trimmed) input and P_1 equals build_Q on the nose; for other
// k only dimensions and the torsion invariant are pinned by the display.
template <class F>
BinaryComplex<F> build_P_k(const BinaryComplex<F>& b, std::size_t k,
                           const ShorteningChoices<F>& c) {
    using detail::Slot;
    if (k == 0) return trimmed(b);
    const std::size_t m = support_length(b);
    if (m < 2) throw std::invalid_argument("build_P_k: support length >= 2 required");
    auto fld = b.field();
    const bool even = k % 2 == 0;
    const std::size_t top_deg = std::max<std::size_t>(2, m > k ? m - k : 0);
    detail::ComplexAssembler<F> a(fld, top_deg);

    auto jkey = [](std::size_t n) { return n == 0 ? Slot{'P', 0} : Slot{'J', n}; };
    auto kkey = [](std::size_t n) { return n == 0 ? Slot{'P', 0} : Slot{'K', n}; };
    auto odd = detail::degrees_odd(k);
    auto ev = detail::degrees_even(k, false);

    // degree 2: P_{k+2} | r6-sources | r7-sources | r2-sources | r3-sources
    a.add_slot(2, {'P', k + 2}, b.dim(k + 2));
    for (auto n : odd) a.add_slot(2, even ? Slot{'J', n} : Slot{'K', n}, even ? c.jd(n) : c.kd(n));
    for (auto n : ev) a.add_slot(2, even ? Slot{'K', n} : Slot{'J', n}, even ? c.kd(n) : c.jd(n));
    for (auto n : odd) a.add_slot(2, even ? Slot{'K', n} : Slot{'J', n}, even ? c.kd(n) : c.jd(n));
    for (auto n : ev) a.add_slot(2, even ? Slot{'J', n} : Slot{'K', n}, even ? c.jd(n) : c.kd(n));

    // degree 1: P_{k+1} | P_odd | P_ev | T2 | T3 | S4 | S5
    a.add_slot(1, {'P', k + 1}, b.dim(k + 1));
    for (auto n : odd) a.add_slot(1, {'P', n}, b.dim(n));
    for (auto n : ev) a.add_slot(1, {'P', n}, b.dim(n));
    for (auto n : odd) a.add_slot(1, even ? Slot{'K', n} : Slot{'J', n}, even ? c.kd(n) : c.jd(n));
    for (auto n : ev) a.add_slot(1, even ? Slot{'J', n} : Slot{'K', n}, even ? c.jd(n) : c.kd(n));
    for (auto n : ev) a.add_slot(1, even ? Slot{'K', n} : Slot{'J', n}, even ? c.kd(n) : c.jd(n));
    for (auto n : odd) a.add_slot(1, even ? Slot{'J', n} : Slot{'K', n}, even ? c.jd(n) : c.kd(n));

    // degree 0: X_k | r4-targets | r6-targets | r5-targets | r7-targets
    a.add_slot(0, jkey(k), k == 0 ? b.dim(0) : c.jd(k));
    if (even) {
        for (auto n : ev) a.add_slot(0, Slot{'K', n}, c.kd(n));
        for (auto n : detail::degrees_even(k - 1, true))
            a.add_slot(0, jkey(n), n == 0 ? b.dim(0) : c.jd(n));
        for (auto n : odd) a.add_slot(0, Slot{'J', n}, c.jd(n));
        for (auto n : detail::degrees_odd(k - 1)) a.add_slot(0, Slot{'K', n}, c.kd(n));
    } else {
        for (auto n : ev) a.add_slot(0, Slot{'J', n}, c.jd(n));
        for (auto n : detail::degrees_even(k - 1, true))
            a.add_slot(0, kkey(n), n == 0 ? b.dim(0) : c.kd(n));
        for (auto n : odd) a.add_slot(0, Slot{'K', n}, c.kd(n));
        for (auto n : detail::degrees_odd(k - 1)) a.add_slot(0, Slot{'J', n}, c.jd(n));
    }

    for (std::size_t d = 3; d <= top_deg; ++d) a.add_slot(d, {'P', k + d}, b.dim(k + d));

    auto idJ = [&](std::size_t n) { return Matrix<F>::identity(fld, c.jd(n)); };
    auto idK = [&](std::size_t n) { return Matrix<F>::identity(fld, c.kd(n)); };

    for (Side side : {Side::Top, Side::Bot}) {
        // jr: J carries the mono/epi strands on odd degrees (and K on even);
        // this holds on the top of even iterates and the bottom of odd ones.
        const bool jr = (side == Side::Top) == even;
        const auto& fJ = c.top;
        const auto& fK = c.bot;
        // (j -> j-1) for j >= 3, plus the tail P_{k+2} -> P_{k+1}
        for (std::size_t d = 3; d <= top_deg; ++d)
            a.put(side, d, {'P', k + d - 1}, {'P', k + d},
                  side == Side::Top ? detail::top_d(b, k + d) : detail::bot_d(b, k + d));
        a.put(side, 2, {'P', k + 1}, {'P', k + 2},
              side == Side::Top ? detail::top_d(b, k + 2) : detail::bot_d(b, k + 2));
        // (2 -> 1)
        for (auto n : odd) {
            if (jr) {
                a.put(side, 2, {'P', n}, {'J', n}, detail::mono_or_empty(b, fJ, n));
                a.put(side, 2, {'K', n}, {'K', n}, idK(n));
            } else {
                a.put(side, 2, {'P', n}, {'K', n}, detail::mono_or_empty(b, fK, n));
                a.put(side, 2, {'J', n}, {'J', n}, idJ(n));
            }
        }
        for (auto n : ev) {
            if (jr) {
                a.put(side, 2, {'P', n}, {'K', n}, detail::mono_or_empty(b, fK, n));
                a.put(side, 2, {'J', n}, {'J', n}, idJ(n));
            } else {
                a.put(side, 2, {'P', n}, {'J', n}, detail::mono_or_empty(b, fJ, n));
                a.put(side, 2, {'K', n}, {'K', n}, idK(n));
            }
        }
        // (1 -> 0)
        if (side == Side::Top)
            a.put(side, 1, jkey(k), {'P', k + 1}, detail::epi_or_empty(b, fJ, k + 1));
        else
            a.put(side, 1, kkey(k), {'P', k + 1}, detail::epi_or_empty(b, fK, k + 1));
        for (auto n : odd) {
            if (jr) {
                a.put(side, 1, jkey(n - 1), {'P', n}, detail::epi_or_empty(b, fJ, n));
                a.put(side, 1, jkey(n), {'J', n}, idJ(n));
            } else {
                a.put(side, 1, kkey(n - 1), {'P', n}, detail::epi_or_empty(b, fK, n));
                a.put(side, 1, kkey(n), {'K', n}, idK(n));
            }
        }
        for (auto n : ev) {
            if (jr) {
                a.put(side, 1, kkey(n - 1), {'P', n}, detail::epi_or_empty(b, fK, n));
                a.put(side, 1, kkey(n), {'K', n}, idK(n));
            } else {
                a.put(side, 1, jkey(n - 1), {'P', n}, detail::epi_or_empty(b, fJ, n));
                a.put(side, 1, jkey(n), {'J', n}, idJ(n));
            }
        }
    }
    return a.take();
}

// x(P, k) = (-1)^k [P_k] + sum_{n=1..k} [swap(J_n)]; the class is constant
// in k, which the oracle tests certify.
template <class F>
NenashevExpression<F> x_of(const BinaryComplex<F>& b, std::size_t k,
                           const ShorteningChoices<F>& c) {
    NenashevExpression<F> e;
    e.push(k % 2 == 0 ? 1 : -1, build_P_k(b, k, c));
    for (std::size_t n = 1; n <= k; ++n) e.push(1, swap_complex<F>(b.field(), c.jd(n)));
    return e;
}

// ---------------------------------------------------------------------------
// Psi: the Nenashev normal form

// Iterates shorten_step until the remainder has length two, then pads every
// term to exact [0,2] support. Inputs of support length <= 2 are already
// generators and come back as a single padded term; the zero complex gives
// the empty expression.
template <class F>
NenashevExpression<F> nenashev_form(const BinaryComplex<F>& b,
                                    const ChoicePolicy& policy = ChoicePolicy::canonical()) {
    NenashevExpression<F> e;
    const std::size_t k = support_length(b);
    if (k == 0 && b.total_dim() == 0) return e;
    if (k <= 2) {
        e.push(1, pad_to_degree(trimmed(b), 2));
        return e;
    }
    BinaryComplex<F> cur = trimmed(b);
    int parity = 1;
    std::uint64_t level = 0;
    while (support_length(cur) >= 3) {
        auto choices = make_choices(cur, policy, level++);
        auto [swap, q] = shorten_step(cur, choices);
        e.push(1, pad_to_degree(std::move(swap), 2)); // order two: sign is immaterial
        cur = std::move(q);
        parity = -parity;
    }
    e.push(parity, std::move(cur)); // (-1)^{k-2} = (-1)^k
    return e;
}

} // namespace bincx

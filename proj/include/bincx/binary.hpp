#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bincx/chain.hpp"

namespace bincx {

// One graded object with two independent acyclic differentials: the top
// family d and the bottom family d'.
template <class F>
class BinaryComplex {
public:
    using Desc = typename F::Desc;

    BinaryComplex(ChainComplex<F> top, ChainComplex<F> bot)
        : top_(std::move(top)), bot_(std::move(bot)) {
        if (top_.dims() != bot_.dims() || !(top_.field() == bot_.field()))
            throw std::invalid_argument("BinaryComplex: top and bottom must share the graded object");
    }

    static BinaryComplex zero(Desc fld) {
        return BinaryComplex(ChainComplex<F>::zero(fld), ChainComplex<F>::zero(fld));
    }

    Desc field() const { return top_.field(); }
    const std::vector<std::size_t>& dims() const { return top_.dims(); }
    std::size_t dim(std::size_t n) const { return top_.dim(n); }
    std::size_t top_degree() const { return top_.top_degree(); }
    std::size_t total_dim() const { return top_.total_dim(); }

    const ChainComplex<F>& top() const { return top_; }
    const ChainComplex<F>& bot() const { return bot_; }
    const Matrix<F>& top_diff(std::size_t n) const { return top_.diff(n); }
    const Matrix<F>& bot_diff(std::size_t n) const { return bot_.diff(n); }

    friend bool operator==(const BinaryComplex& a, const BinaryComplex& b) {
        return a.top_ == b.top_ && a.bot_ == b.bot_;
    }

private:
    ChainComplex<F> top_, bot_;
};

enum class Side { Top, Bot };

inline const char* side_name(Side s) { return s == Side::Top ? "top" : "bot"; }

struct InvalidBinary {
    Side side;
    std::size_t degree;
};

template <class F>
struct BinaryFactorizations {
    Factorization<F> top, bot; // J_n from the top, K_n from the bottom differential
};

template <class F>
using ValidateResult = std::variant<BinaryFactorizations<F>, InvalidBinary>;

template <class F>
ValidateResult<F> validate(const BinaryComplex<F>& b) {
    auto ft = factorize(b.top());
    if (auto* bad = std::get_if<NotAcyclic>(&ft)) return InvalidBinary{Side::Top, bad->degree};
    auto fb = factorize(b.bot());
    if (auto* bad = std::get_if<NotAcyclic>(&fb)) return InvalidBinary{Side::Bot, bad->degree};
    return BinaryFactorizations<F>{std::get<Factorization<F>>(std::move(ft)),
                                   std::get<Factorization<F>>(std::move(fb))};
}

template <class F>
bool is_valid(const BinaryComplex<F>& b) {
    return std::holds_alternative<BinaryFactorizations<F>>(validate(b));
}

template <class F>
BinaryFactorizations<F> must_validate(const BinaryComplex<F>& b) {
    auto r = validate(b);
    if (auto* bad = std::get_if<InvalidBinary>(&r))
        throw std::invalid_argument(std::string("binary complex invalid: ") + side_name(bad->side) +
                                    ", degree " + std::to_string(bad->degree));
    return std::get<BinaryFactorizations<F>>(std::move(r));
}

// Delta: duplicate the differential of an acyclic complex.
template <class F>
BinaryComplex<F> diagonal(const ChainComplex<F>& c) {
    must_factorize(c);
    return BinaryComplex<F>(c, c);
}

// Delta_M for a single object of dimension m: M -> M with both
// differentials the identity.
template <class F>
BinaryComplex<F> diagonal_object(typename F::Desc fld, std::size_t m) {
    return diagonal(ChainComplex<F>::single(fld, Matrix<F>::identity(fld, m)));
}

template <class F>
BinaryComplex<F> flip(const BinaryComplex<F>& b) {
    return BinaryComplex<F>(b.bot(), b.top());
}

template <class F>
BinaryComplex<F> shift_b(const BinaryComplex<F>& b, std::size_t i) {
    return BinaryComplex<F>(shift(b.top(), i), shift(b.bot(), i));
}

template <class F>
BinaryComplex<F> suspend_b(const BinaryComplex<F>& b, std::size_t i) {
    return BinaryComplex<F>(suspend(b.top(), i), suspend(b.bot(), i));
}

template <class F>
BinaryComplex<F> cone_b(const BinaryComplex<F>& b) {
    return BinaryComplex<F>(cone(b.top()), cone(b.bot()));
}

template <class F>
BinaryComplex<F> direct_sum_b(const BinaryComplex<F>& a, const BinaryComplex<F>& b) {
    return BinaryComplex<F>(direct_sum(a.top(), b.top()), direct_sum(a.bot(), b.bot()));
}

// Extends the grading with zero degrees so that top_degree() >= min_top.
template <class F>
BinaryComplex<F> pad_to_degree(const BinaryComplex<F>& b, std::size_t min_top) {
    if (b.top_degree() >= min_top) return b;
    return direct_sum_b(b, BinaryComplex<F>(
                               ChainComplex<F>(b.field(), std::vector<std::size_t>(min_top + 1, 0),
                                               std::vector<Matrix<F>>(min_top, Matrix<F>(b.field(), 0, 0))),
                               ChainComplex<F>(b.field(), std::vector<std::size_t>(min_top + 1, 0),
                                               std::vector<Matrix<F>>(min_top, Matrix<F>(b.field(), 0, 0)))));
}

// tau_J, the automorphism of J (+) J switching the summands.
template <class F>
Matrix<F> swap_automorphism(typename F::Desc fld, std::size_t j) {
    Matrix<F> t(fld, 2 * j, 2 * j);
    t.set_block(0, j, Matrix<F>::identity(fld, j));
    t.set_block(j, 0, Matrix<F>::identity(fld, j));
    return t;
}

// The order-two generator J (+) J -> J (+) J with top = id, bottom = tau_J,
// in degrees (1, 0).
template <class F>
BinaryComplex<F> swap_complex(typename F::Desc fld, std::size_t j) {
    return BinaryComplex<F>(ChainComplex<F>::single(fld, Matrix<F>::identity(fld, 2 * j)),
                            ChainComplex<F>::single(fld, swap_automorphism<F>(fld, j)));
}

// Degreewise change of basis: differentials become U_{n-1} d U_n^{-1} on
// both sides. kappa is invariant under this.
template <class F>
BinaryComplex<F> conjugate(const BinaryComplex<F>& b, const std::vector<Matrix<F>>& u) {
    if (u.size() != b.dims().size())
        throw std::invalid_argument("conjugate: one basis change per degree");
    std::vector<Matrix<F>> inv;
    for (const auto& m : u) inv.push_back(*inverse(m));
    std::vector<Matrix<F>> top, bot;
    for (std::size_t n = 1; n <= b.top_degree(); ++n) {
        top.push_back(u[n - 1] * b.top_diff(n) * inv[n]);
        bot.push_back(u[n - 1] * b.bot_diff(n) * inv[n]);
    }
    return BinaryComplex<F>(ChainComplex<F>(b.field(), b.dims(), std::move(top)),
                            ChainComplex<F>(b.field(), b.dims(), std::move(bot)));
}

// ---------------------------------------------------------------------------
// Binary double complexes

// Bigraded object on the rectangle [0,K] x [0,L] with four differential
// families. Horizontal differentials drop k, vertical ones drop l; each of
// (dh, dv) and (dph, dpv) commutes: dh dv = dv dh. Rows (fixed l) pair dh
// with dph, columns (fixed k) pair dv with dpv.
template <class F>
class BinaryDoubleComplex {
public:
    using Desc = typename F::Desc;

    BinaryDoubleComplex(Desc fld, std::vector<std::vector<std::size_t>> dims,
                        std::vector<std::vector<Matrix<F>>> dh,
                        std::vector<std::vector<Matrix<F>>> dv,
                        std::vector<std::vector<Matrix<F>>> dph,
                        std::vector<std::vector<Matrix<F>>> dpv)
        : fld_(fld), dims_(std::move(dims)), dh_(std::move(dh)), dv_(std::move(dv)),
          dph_(std::move(dph)), dpv_(std::move(dpv)) {
        if (dims_.empty() || dims_[0].empty())
            throw std::invalid_argument("BinaryDoubleComplex: empty grid");
        const std::size_t K = max_k(), L = max_l();
        for (const auto& row : dims_)
            if (row.size() != L + 1) throw std::invalid_argument("BinaryDoubleComplex: ragged dims");
        auto check_h = [&](const std::vector<std::vector<Matrix<F>>>& g) {
            if (g.size() != K) throw std::invalid_argument("BinaryDoubleComplex: bad dh size");
            for (std::size_t k = 1; k <= K; ++k) {
                if (g[k - 1].size() != L + 1) throw std::invalid_argument("BinaryDoubleComplex: bad dh row");
                for (std::size_t l = 0; l <= L; ++l)
                    if (g[k - 1][l].rows() != dims_[k - 1][l] || g[k - 1][l].cols() != dims_[k][l])
                        throw std::invalid_argument("BinaryDoubleComplex: dh shape mismatch");
            }
        };
        auto check_v = [&](const std::vector<std::vector<Matrix<F>>>& g) {
            if (g.size() != K + 1) throw std::invalid_argument("BinaryDoubleComplex: bad dv size");
            for (std::size_t k = 0; k <= K; ++k) {
                if (g[k].size() != L) throw std::invalid_argument("BinaryDoubleComplex: bad dv column");
                for (std::size_t l = 1; l <= L; ++l)
                    if (g[k][l - 1].rows() != dims_[k][l - 1] || g[k][l - 1].cols() != dims_[k][l])
                        throw std::invalid_argument("BinaryDoubleComplex: dv shape mismatch");
            }
        };
        check_h(dh_);
        check_h(dph_);
        check_v(dv_);
        check_v(dpv_);
    }

    Desc field() const { return fld_; }
    std::size_t max_k() const { return dims_.size() - 1; }
    std::size_t max_l() const { return dims_[0].size() - 1; }
    std::size_t dim(std::size_t k, std::size_t l) const { return dims_[k][l]; }

    const Matrix<F>& dh(std::size_t k, std::size_t l) const { return dh_[k - 1][l]; }
    const Matrix<F>& dv(std::size_t k, std::size_t l) const { return dv_[k][l - 1]; }
    const Matrix<F>& dph(std::size_t k, std::size_t l) const { return dph_[k - 1][l]; }
    const Matrix<F>& dpv(std::size_t k, std::size_t l) const { return dpv_[k][l - 1]; }

    BinaryComplex<F> row(std::size_t l) const {
        std::vector<std::size_t> dims(max_k() + 1);
        std::vector<Matrix<F>> top, bot;
        for (std::size_t k = 0; k <= max_k(); ++k) dims[k] = dim(k, l);
        for (std::size_t k = 1; k <= max_k(); ++k) {
            top.push_back(dh(k, l));
            bot.push_back(dph(k, l));
        }
        return BinaryComplex<F>(ChainComplex<F>(fld_, dims, std::move(top)),
                                ChainComplex<F>(fld_, dims, std::move(bot)));
    }

    BinaryComplex<F> column(std::size_t k) const {
        std::vector<std::size_t> dims(max_l() + 1);
        std::vector<Matrix<F>> top, bot;
        for (std::size_t l = 0; l <= max_l(); ++l) dims[l] = dim(k, l);
        for (std::size_t l = 1; l <= max_l(); ++l) {
            top.push_back(dv(k, l));
            bot.push_back(dpv(k, l));
        }
        return BinaryComplex<F>(ChainComplex<F>(fld_, dims, std::move(top)),
                                ChainComplex<F>(fld_, dims, std::move(bot)));
    }

private:
    Desc fld_;
    std::vector<std::vector<std::size_t>> dims_; // dims_[k][l]
    std::vector<std::vector<Matrix<F>>> dh_;     // dh_[k-1][l]
    std::vector<std::vector<Matrix<F>>> dv_;     // dv_[k][l-1]
    std::vector<std::vector<Matrix<F>>> dph_;
    std::vector<std::vector<Matrix<F>>> dpv_;
};

// Full definition check: squares vanish, the two structures commute, and
// every row and column is binary acyclic. Returns a defect description or
// nullopt when valid.
template <class F>
std::optional<std::string> double_complex_defect(const BinaryDoubleComplex<F>& d) {
    const std::size_t K = d.max_k(), L = d.max_l();
    for (std::size_t l = 0; l <= L; ++l)
        for (std::size_t k = 2; k <= K; ++k) {
            if (!(d.dh(k - 1, l) * d.dh(k, l)).is_zero()) return "dh∘dh != 0";
            if (!(d.dph(k - 1, l) * d.dph(k, l)).is_zero()) return "dph∘dph != 0";
        }
    for (std::size_t k = 0; k <= K; ++k)
        for (std::size_t l = 2; l <= L; ++l) {
            if (!(d.dv(k, l - 1) * d.dv(k, l)).is_zero()) return "dv∘dv != 0";
            if (!(d.dpv(k, l - 1) * d.dpv(k, l)).is_zero()) return "dpv∘dpv != 0";
        }
    for (std::size_t k = 1; k <= K; ++k)
        for (std::size_t l = 1; l <= L; ++l) {
            if (!(d.dv(k - 1, l) * d.dh(k, l) == d.dh(k, l - 1) * d.dv(k, l)))
                return "dh and dv do not commute at (" + std::to_string(k) + "," + std::to_string(l) + ")";
            if (!(d.dpv(k - 1, l) * d.dph(k, l) == d.dph(k, l - 1) * d.dpv(k, l)))
                return "dph and dpv do not commute at (" + std::to_string(k) + "," + std::to_string(l) + ")";
        }
    for (std::size_t l = 0; l <= L; ++l) {
        auto r = validate(d.row(l));
        if (auto* bad = std::get_if<InvalidBinary>(&r))
            return "row " + std::to_string(l) + " not binary acyclic (" + side_name(bad->side) +
                   ", degree " + std::to_string(bad->degree) + ")";
    }
    for (std::size_t k = 0; k <= K; ++k) {
        auto r = validate(d.column(k));
        if (auto* bad = std::get_if<InvalidBinary>(&r))
            return "column " + std::to_string(k) + " not binary acyclic (" + side_name(bad->side) +
                   ", degree " + std::to_string(bad->degree) + ")";
    }
    return std::nullopt;
}

template <class F>
bool is_valid_double(const BinaryDoubleComplex<F>& d) {
    return !double_complex_defect(d).has_value();
}

// Total complex with the usual sign trick. T_n = (+)_{k+l=n} P_{k,l} with
// blocks ordered by ascending k; on the (k,l) block the top differential is
// dh + (-1)^k dv, and likewise for the bottom with primes. The sign
// (-1)^k on the vertical differential is this library's fixed convention.
template <class F>
BinaryComplex<F> total_complex(const BinaryDoubleComplex<F>& d) {
    const std::size_t K = d.max_k(), L = d.max_l(), M = K + L;
    auto fld = d.field();
    // offsets of block (k, n-k) inside T_n
    std::vector<std::size_t> dims(M + 1, 0);
    std::vector<std::vector<std::size_t>> off(M + 1);
    for (std::size_t n = 0; n <= M; ++n) {
        off[n].assign(K + 1, 0);
        std::size_t pos = 0;
        for (std::size_t k = 0; k <= K; ++k) {
            off[n][k] = pos;
            if (n >= k && n - k <= L) pos += d.dim(k, n - k);
        }
        dims[n] = pos;
    }
    std::vector<Matrix<F>> top, bot;
    for (std::size_t n = 1; n <= M; ++n) {
        Matrix<F> t(fld, dims[n - 1], dims[n]);
        Matrix<F> b(fld, dims[n - 1], dims[n]);
        for (std::size_t k = 0; k <= K; ++k) {
            if (n < k || n - k > L) continue;
            const std::size_t l = n - k;
            if (d.dim(k, l) == 0) continue;
            if (k >= 1) {
                t.set_block(off[n - 1][k - 1], off[n][k], d.dh(k, l));
                b.set_block(off[n - 1][k - 1], off[n][k], d.dph(k, l));
            }
            if (l >= 1) {
                Matrix<F> mv = d.dv(k, l);
                Matrix<F> mpv = d.dpv(k, l);
                if (k % 2 == 1) {
                    mv = mv.negated();
                    mpv = mpv.negated();
                }
                t.set_block(off[n - 1][k], off[n][k], mv);
                b.set_block(off[n - 1][k], off[n][k], mpv);
            }
        }
        top.push_back(std::move(t));
        bot.push_back(std::move(b));
    }
    return BinaryComplex<F>(ChainComplex<F>(fld, dims, std::move(top)),
                            ChainComplex<F>(fld, dims, std::move(bot)));
}

// P_{k,l} = A_k (x) B_l with horizontal d_A (x) id and vertical id (x) d_B,
// separately for the top and bottom structures. Rows and columns are acyclic
// because tensoring with a fixed space preserves exactness over a field.
template <class F>
BinaryDoubleComplex<F> tensor_double(const BinaryComplex<F>& a, const BinaryComplex<F>& b) {
    if (!(a.field() == b.field())) throw std::invalid_argument("tensor_double: field mismatch");
    auto fld = a.field();
    const std::size_t K = a.top_degree(), L = b.top_degree();
    std::vector<std::vector<std::size_t>> dims(K + 1, std::vector<std::size_t>(L + 1, 0));
    for (std::size_t k = 0; k <= K; ++k)
        for (std::size_t l = 0; l <= L; ++l) dims[k][l] = a.dim(k) * b.dim(l);
    std::vector<std::vector<Matrix<F>>> dh, dv, dph, dpv;
    for (std::size_t k = 1; k <= K; ++k) {
        std::vector<Matrix<F>> rt, rb;
        for (std::size_t l = 0; l <= L; ++l) {
            Matrix<F> idb = Matrix<F>::identity(fld, b.dim(l));
            rt.push_back(kron(a.top_diff(k), idb));
            rb.push_back(kron(a.bot_diff(k), idb));
        }
        dh.push_back(std::move(rt));
        dph.push_back(std::move(rb));
    }
    for (std::size_t k = 0; k <= K; ++k) {
        std::vector<Matrix<F>> ct, cb;
        for (std::size_t l = 1; l <= L; ++l) {
            Matrix<F> ida = Matrix<F>::identity(fld, a.dim(k));
            ct.push_back(kron(ida, b.top_diff(l)));
            cb.push_back(kron(ida, b.bot_diff(l)));
        }
        dv.push_back(std::move(ct));
        dpv.push_back(std::move(cb));
    }
    return BinaryDoubleComplex<F>(fld, std::move(dims), std::move(dh), std::move(dv),
                                  std::move(dph), std::move(dpv));
}

// ---------------------------------------------------------------------------
// Formal signed combinations of binary complexes

// Free signed list; no cancellation is ever performed implicitly. Class
// equality is only ever decided through the torsion oracle.
template <class F>
struct NenashevExpression {
    struct Term {
        int sign; // +1 or -1
        BinaryComplex<F> complex;
    };
    std::vector<Term> terms;

    static NenashevExpression zero() { return {}; }

    void push(int sign, BinaryComplex<F> b) { terms.push_back({sign, std::move(b)}); }
};

template <class F>
NenashevExpression<F> expr_neg(NenashevExpression<F> e) {
    for (auto& t : e.terms) t.sign = -t.sign;
    return e;
}

template <class F>
NenashevExpression<F> expr_add(NenashevExpression<F> a, const NenashevExpression<F>& b) {
    for (const auto& t : b.terms) {
        if (!a.terms.empty() && !(t.complex.field() == a.terms.front().complex.field()))
            throw std::invalid_argument("expr_add: field mismatch");
        a.terms.push_back(t);
    }
    return a;
}

template <class F>
NenashevExpression<F> expr_scale(NenashevExpression<F> e, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("expr_scale: sign must be ±1");
    if (sign < 0) return expr_neg(std::move(e));
    return e;
}

} // namespace bincx

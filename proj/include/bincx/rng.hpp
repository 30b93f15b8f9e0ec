#pragma once

#include <cstdint>

#include "bincx/fp.hpp"
#include "bincx/matrix.hpp"
#include "bincx/rational.hpp"

namespace bincx {

// splitmix64. Self-contained so that seeded output is identical across
// platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform-ish in [0, n); modulo bias is irrelevant for test data
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    long long range(long long lo, long long hi) { // inclusive
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Derive an independent stream; used to make per-degree draws insensitive
    // to the order in which other components consume randomness.
    Rng fork(std::uint64_t salt) {
        return Rng(next() ^ (salt * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
    }

private:
    std::uint64_t state_;
};

// Small random scalars. Rationals are kept small so that exact Gaussian
// elimination on test corpora stays fast.
inline Rational random_scalar(RationalDesc, Rng& rng) {
    long long num = rng.range(-3, 3);
    long long den = rng.range(1, 2);
    return Rational(BigInt(num), BigInt(den));
}

inline Fp random_scalar(FpDesc d, Rng& rng) { return Fp(d, rng.below(d.p)); }

template <class F>
Matrix<F> random_matrix(typename F::Desc fld, std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix<F> m(fld, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = random_scalar(fld, rng);
    return m;
}

// Redraws until invertible; terminates fast at desk-scale dimensions and
// stays deterministic given the generator state.
template <class F>
Matrix<F> random_invertible(typename F::Desc fld, std::size_t n, Rng& rng) {
    while (true) {
        Matrix<F> m = random_matrix<F>(fld, n, n, rng);
        if (!det(m).is_zero()) return m;
    }
}

// Random matrix of full column rank.
template <class F>
Matrix<F> random_mono(typename F::Desc fld, std::size_t rows, std::size_t cols, Rng& rng) {
    if (cols > rows) throw std::invalid_argument("random_mono: cols > rows");
    while (true) {
        Matrix<F> m = random_matrix<F>(fld, rows, cols, rng);
        if (rank(m) == cols) return m;
    }
}

} // namespace bincx

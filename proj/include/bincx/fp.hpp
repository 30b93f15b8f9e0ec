#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bincx {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod_u64(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace detail

// Descriptor of a prime field F_p. The modulus is checked for primality and
// bounded below 2^61 so products of residues fit in 128-bit intermediates.
struct FpDesc {
    std::uint64_t p;

    explicit FpDesc(std::uint64_t modulus) : p(modulus) {
        if (p < 2 || p >= (1ULL << 61) || !detail::is_prime_u64(p))
            throw std::invalid_argument("FpDesc: modulus must be a prime below 2^61");
    }

    friend bool operator==(FpDesc a, FpDesc b) { return a.p == b.p; }
    friend bool operator!=(FpDesc a, FpDesc b) { return a.p != b.p; }
};

// Element of F_p with runtime modulus. Canonical representative in [0, p).
class Fp {
public:
    using Desc = FpDesc;

    Fp() : v_(0), p_(2) {} // default belongs to F_2; real code always uses zero(desc)
    Fp(Desc d, std::uint64_t v) : v_(v % d.p), p_(d.p) {}

    static Fp zero(Desc d) { return Fp(d, 0); }
    static Fp one(Desc d) { return Fp(d, 1); }
    static Fp from_int(Desc d, long long v) {
        std::uint64_t r = static_cast<std::uint64_t>(v % static_cast<long long>(d.p));
        if (v < 0) r += d.p; // v % p in (-p, 0] for negative v
        return Fp(d, r % d.p);
    }

    Desc desc() const { return Desc(p_); }
    std::uint64_t value() const { return v_; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1 % p_; }

    friend bool operator==(const Fp& a, const Fp& b) { return a.p_ == b.p_ && a.v_ == b.v_; }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    friend Fp operator+(const Fp& a, const Fp& b) {
        a.check(b);
        std::uint64_t s = a.v_ + b.v_;
        if (s >= a.p_) s -= a.p_;
        return Fp(a.p_, s, 0);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        a.check(b);
        std::uint64_t s = a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_;
        return Fp(a.p_, s, 0);
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        a.check(b);
        return Fp(a.p_, detail::mulmod_u64(a.v_, b.v_, a.p_), 0);
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }

    Fp operator-() const { return Fp(p_, v_ == 0 ? 0 : p_ - v_, 0); }

    Fp inv() const {
        if (v_ == 0) throw std::invalid_argument("Fp: inverse of zero");
        return Fp(p_, detail::powmod_u64(v_, p_ - 2, p_), 0);
    }

    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    std::string to_string() const { return std::to_string(v_); }

    // Strict: decimal residue in [0, p).
    static std::optional<Fp> parse(Desc d, std::string_view s) {
        if (s.empty() || s.size() > 20) return std::nullopt;
        std::uint64_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') return std::nullopt;
            if (v > (UINT64_MAX - static_cast<std::uint64_t>(c - '0')) / 10) return std::nullopt;
            v = v * 10 + static_cast<std::uint64_t>(c - '0');
        }
        if (v >= d.p) return std::nullopt;
        return Fp(d, v);
    }

private:
    std::uint64_t v_, p_;

    Fp(std::uint64_t p, std::uint64_t v, int) : v_(v), p_(p) {}

    void check(const Fp& o) const {
        if (p_ != o.p_) throw std::invalid_argument("Fp: mixed moduli");
    }
};

} // namespace bincx

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bincx {

// Arbitrary-precision signed integer, sign + magnitude in base 2^32.
// Limbs are little-endian and normalized: no trailing zero limbs, and the
// zero value has an empty limb vector with sign 0.
class BigInt {
public:
    BigInt() = default;

    BigInt(long long v) {
        if (v == 0) return;
        sign_ = v < 0 ? -1 : 1;
        // careful with LLONG_MIN
        unsigned long long m = v < 0 ? ~static_cast<unsigned long long>(v) + 1ULL
                                     : static_cast<unsigned long long>(v);
        while (m != 0) {
            limbs_.push_back(static_cast<std::uint32_t>(m & 0xffffffffULL));
            m >>= 32;
        }
    }

    static std::optional<BigInt> parse(std::string_view s) {
        if (s.empty()) return std::nullopt;
        int sign = 1;
        if (s[0] == '-') {
            sign = -1;
            s.remove_prefix(1);
        } else if (s[0] == '+') {
            s.remove_prefix(1);
        }
        if (s.empty()) return std::nullopt;
        BigInt r;
        for (char c : s) {
            if (c < '0' || c > '9') return std::nullopt;
            r.mul_small_inplace(10);
            r.add_small_inplace(static_cast<std::uint32_t>(c - '0'));
        }
        if (!r.limbs_.empty()) r.sign_ = sign;
        return r;
    }

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    int signum() const { return sign_; }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.sign_ == b.sign_ && a.limbs_ == b.limbs_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }

    // total order
    friend bool operator<(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
        int c = cmp_mag(a.limbs_, b.limbs_);
        return a.sign_ >= 0 ? c < 0 : c > 0;
    }
    friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

    BigInt operator-() const {
        BigInt r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.limbs_ = add_mag(a.limbs_, b.limbs_);
            r.sign_ = a.sign_;
            return r;
        }
        int c = cmp_mag(a.limbs_, b.limbs_);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.limbs_ = sub_mag(a.limbs_, b.limbs_);
            r.sign_ = a.sign_;
        } else {
            r.limbs_ = sub_mag(b.limbs_, a.limbs_);
            r.sign_ = b.sign_;
        }
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.limbs_ = mul_mag(a.limbs_, b.limbs_);
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    // Truncated division (C semantics): quotient rounds toward zero,
    // remainder has the sign of the dividend. Returns (quotient, remainder).
    static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b) {
        if (b.sign_ == 0) throw std::invalid_argument("BigInt: division by zero");
        if (a.sign_ == 0) return {BigInt(), BigInt()};
        auto [q, r] = divmod_mag(a.limbs_, b.limbs_);
        BigInt quot, rem;
        quot.limbs_ = std::move(q);
        rem.limbs_ = std::move(r);
        if (!quot.limbs_.empty()) quot.sign_ = a.sign_ * b.sign_;
        if (!rem.limbs_.empty()) rem.sign_ = a.sign_;
        return {std::move(quot), std::move(rem)};
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) { return divmod(a, b).first; }
    friend BigInt operator%(const BigInt& a, const BigInt& b) { return divmod(a, b).second; }

    static BigInt gcd(const BigInt& a, const BigInt& b) {
        // binary gcd on magnitudes
        if (a.is_zero()) return b.abs();
        if (b.is_zero()) return a.abs();
        BigInt x = a.abs(), y = b.abs();
        std::size_t shift = std::min(x.trailing_zero_bits(), y.trailing_zero_bits());
        x.shr_inplace(x.trailing_zero_bits());
        y.shr_inplace(y.trailing_zero_bits());
        while (true) {
            int c = cmp_mag(x.limbs_, y.limbs_);
            if (c == 0) break;
            if (c < 0) std::swap(x, y);
            x.limbs_ = sub_mag(x.limbs_, y.limbs_);
            if (x.limbs_.empty()) {
                x = y;
                break;
            }
            x.shr_inplace(x.trailing_zero_bits());
        }
        x.shl_inplace(shift);
        x.sign_ = 1;
        return x;
    }

    BigInt abs() const {
        BigInt r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    std::string to_string() const {
        if (sign_ == 0) return "0";
        // peel 9 decimal digits at a time
        std::vector<std::uint32_t> m = limbs_;
        std::string out;
        while (!m.empty()) {
            std::uint64_t rem = 0;
            for (std::size_t i = m.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | m[i];
                m[i] = static_cast<std::uint32_t>(cur / 1000000000ULL);
                rem = cur % 1000000000ULL;
            }
            while (!m.empty() && m.back() == 0) m.pop_back();
            for (int k = 0; k < 9; ++k) {
                out.push_back(static_cast<char>('0' + rem % 10));
                rem /= 10;
            }
        }
        while (out.size() > 1 && out.back() == '0') out.pop_back();
        if (sign_ < 0) out.push_back('-');
        std::reverse(out.begin(), out.end());
        return out;
    }

    // Value as long long; only valid when it fits.
    std::optional<long long> to_int64() const {
        if (limbs_.size() > 2) return std::nullopt;
        unsigned long long m = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) m = (m << 32) | limbs_[i];
        if (sign_ >= 0) {
            if (m > 0x7fffffffffffffffULL) return std::nullopt;
            return static_cast<long long>(m);
        }
        if (m > 0x8000000000000000ULL) return std::nullopt;
        return -static_cast<long long>(m - 1) - 1;
    }

private:
    int sign_ = 0;
    std::vector<std::uint32_t> limbs_;

    static void trim(std::vector<std::uint32_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<std::uint32_t> r(big.size() + 1, 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < big.size(); ++i) {
            std::uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0);
            r[i] = static_cast<std::uint32_t>(s);
            carry = s >> 32;
        }
        r[big.size()] = static_cast<std::uint32_t>(carry);
        trim(r);
        return r;
    }

    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r(a.size(), 0);
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::int64_t s = static_cast<std::int64_t>(a[i]) - borrow -
                             (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
            if (s < 0) {
                s += (1LL << 32);
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[i] = static_cast<std::uint32_t>(s);
        }
        trim(r);
        return r;
    }

    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r(a.size() + b.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::uint64_t cur = static_cast<std::uint64_t>(a[i]) * b[j] + r[i + j] + carry;
                r[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            std::size_t k = i + b.size();
            while (carry != 0) {
                std::uint64_t cur = r[k] + carry;
                r[k] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
                ++k;
            }
        }
        trim(r);
        return r;
    }

    // Knuth algorithm D on magnitudes; returns (quotient, remainder).
    static std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>
    divmod_mag(const std::vector<std::uint32_t>& u0, const std::vector<std::uint32_t>& v0) {
        if (cmp_mag(u0, v0) < 0) return {{}, u0};
        if (v0.size() == 1) {
            std::vector<std::uint32_t> q(u0.size(), 0);
            std::uint64_t rem = 0;
            for (std::size_t i = u0.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | u0[i];
                q[i] = static_cast<std::uint32_t>(cur / v0[0]);
                rem = cur % v0[0];
            }
            trim(q);
            std::vector<std::uint32_t> r;
            if (rem != 0) r.push_back(static_cast<std::uint32_t>(rem));
            return {q, r};
        }
        const std::size_t n = v0.size(), m = u0.size() - n;
        int shift = 0;
        for (std::uint32_t top = v0.back(); (top & 0x80000000U) == 0; top <<= 1) ++shift;
        std::vector<std::uint32_t> u(u0.size() + 1, 0), v(n, 0);
        // normalized copies
        for (std::size_t i = 0; i < u0.size(); ++i) {
            u[i] |= static_cast<std::uint32_t>((static_cast<std::uint64_t>(u0[i]) << shift));
            if (shift && i + 1 < u.size())
                u[i + 1] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(u0[i]) >> (32 - shift));
        }
        for (std::size_t i = 0; i < n; ++i) {
            v[i] |= static_cast<std::uint32_t>((static_cast<std::uint64_t>(v0[i]) << shift));
            if (shift && i + 1 < n)
                v[i + 1] |= static_cast<std::uint32_t>(static_cast<std::uint64_t>(v0[i]) >> (32 - shift));
        }
        std::vector<std::uint32_t> q(m + 1, 0);
        const std::uint64_t B = 1ULL << 32;
        for (std::size_t j = m + 1; j-- > 0;) {
            std::uint64_t num = (static_cast<std::uint64_t>(u[j + n]) << 32) | u[j + n - 1];
            std::uint64_t qhat = num / v[n - 1];
            std::uint64_t rhat = num % v[n - 1];
            while (qhat >= B ||
                   qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
                --qhat;
                rhat += v[n - 1];
                if (rhat >= B) break;
            }
            // multiply and subtract
            std::int64_t borrow = 0;
            std::uint64_t carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t p = qhat * v[i] + carry;
                carry = p >> 32;
                std::int64_t t = static_cast<std::int64_t>(u[i + j]) -
                                 static_cast<std::int64_t>(p & 0xffffffffULL) - borrow;
                if (t < 0) {
                    t += static_cast<std::int64_t>(B);
                    borrow = 1;
                } else {
                    borrow = 0;
                }
                u[i + j] = static_cast<std::uint32_t>(t);
            }
            std::int64_t t = static_cast<std::int64_t>(u[j + n]) -
                             static_cast<std::int64_t>(carry) - borrow;
            if (t < 0) {
                // qhat was one too large; add back
                t += static_cast<std::int64_t>(B);
                --qhat;
                std::uint64_t c2 = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    std::uint64_t s = static_cast<std::uint64_t>(u[i + j]) + v[i] + c2;
                    u[i + j] = static_cast<std::uint32_t>(s);
                    c2 = s >> 32;
                }
                t += static_cast<std::int64_t>(c2);
                t &= static_cast<std::int64_t>(B) - 1;
            }
            u[j + n] = static_cast<std::uint32_t>(t);
            q[j] = static_cast<std::uint32_t>(qhat);
        }
        trim(q);
        std::vector<std::uint32_t> r(u.begin(), u.begin() + n);
        if (shift) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                std::uint64_t cur = r[i] >> shift;
                if (i + 1 < r.size())
                    cur |= static_cast<std::uint64_t>(r[i + 1]) << (32 - shift);
                r[i] = static_cast<std::uint32_t>(cur);
            }
        }
        trim(r);
        return {q, r};
    }

    std::size_t trailing_zero_bits() const {
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            if (limbs_[i] != 0) {
                std::uint32_t x = limbs_[i];
                std::size_t b = 0;
                while ((x & 1) == 0) {
                    x >>= 1;
                    ++b;
                }
                return 32 * i + b;
            }
        }
        return 0;
    }

    void shr_inplace(std::size_t bits) {
        if (bits == 0 || limbs_.empty()) return;
        std::size_t drop = bits / 32, rem = bits % 32;
        if (drop >= limbs_.size()) {
            limbs_.clear();
            sign_ = 0;
            return;
        }
        limbs_.erase(limbs_.begin(), limbs_.begin() + static_cast<std::ptrdiff_t>(drop));
        if (rem) {
            for (std::size_t i = 0; i < limbs_.size(); ++i) {
                std::uint64_t cur = limbs_[i] >> rem;
                if (i + 1 < limbs_.size())
                    cur |= static_cast<std::uint64_t>(limbs_[i + 1]) << (32 - rem);
                limbs_[i] = static_cast<std::uint32_t>(cur);
            }
        }
        trim(limbs_);
        if (limbs_.empty()) sign_ = 0;
    }

    void shl_inplace(std::size_t bits) {
        if (bits == 0 || limbs_.empty()) return;
        std::size_t add = bits / 32, rem = bits % 32;
        limbs_.insert(limbs_.begin(), add, 0);
        if (rem) {
            limbs_.push_back(0);
            for (std::size_t i = limbs_.size(); i-- > add;) {
                std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) << rem;
                if (i > add) cur |= limbs_[i - 1] >> (32 - rem);
                limbs_[i] = static_cast<std::uint32_t>(cur);
            }
            trim(limbs_);
        }
    }

    void mul_small_inplace(std::uint32_t f) {
        std::uint64_t carry = 0;
        for (auto& l : limbs_) {
            std::uint64_t cur = static_cast<std::uint64_t>(l) * f + carry;
            l = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
        trim(limbs_);
        if (!limbs_.empty() && sign_ == 0) sign_ = 1;
        if (limbs_.empty()) sign_ = 0;
    }

    void add_small_inplace(std::uint32_t v) {
        std::uint64_t carry = v;
        for (std::size_t i = 0; i < limbs_.size() && carry; ++i) {
            std::uint64_t cur = limbs_[i] + carry;
            limbs_[i] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
        if (!limbs_.empty()) sign_ = sign_ == 0 ? 1 : sign_;
    }
};

} // namespace bincx

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bincx/bigint.hpp"

namespace bincx {

// Field descriptor for the rationals. Carries no data; every two
// descriptors compare equal.
struct RationalDesc {
    friend bool operator==(RationalDesc, RationalDesc) { return true; }
    friend bool operator!=(RationalDesc, RationalDesc) { return false; }
};

// Exact rational number. Canonical form: denominator > 0, gcd(num, den) = 1,
// zero is 0/1. All arithmetic is exact.
class Rational {
public:
    using Desc = RationalDesc;

    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { canonicalize(); }

    static Rational zero(Desc) { return Rational(); }
    static Rational one(Desc) { return Rational(1); }
    static Rational from_int(Desc, long long v) { return Rational(v); }

    Desc desc() const { return {}; }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_ == BigInt(1) && num_ == BigInt(1); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::invalid_argument("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Rational inv() const {
        if (is_zero()) throw std::invalid_argument("Rational: inverse of zero");
        return Rational(den_, num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    // "a" for integers, "a/b" with b > 0 and gcd(a, b) = 1 otherwise.
    std::string to_string() const {
        if (den_ == BigInt(1)) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

    static std::optional<Rational> parse(Desc, std::string_view s) {
        auto slash = s.find('/');
        if (slash == std::string_view::npos) {
            auto n = BigInt::parse(s);
            if (!n) return std::nullopt;
            return Rational(std::move(*n), BigInt(1));
        }
        auto n = BigInt::parse(s.substr(0, slash));
        auto d = BigInt::parse(s.substr(slash + 1));
        if (!n || !d || d->is_zero() || d->is_negative()) return std::nullopt;
        return Rational(std::move(*n), std::move(*d));
    }

private:
    BigInt num_, den_;

    void canonicalize() {
        if (den_.is_zero()) throw std::invalid_argument("Rational: zero denominator");
        if (den_.is_negative()) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        BigInt g = BigInt::gcd(num_, den_);
        if (g != BigInt(1)) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }
};

} // namespace bincx

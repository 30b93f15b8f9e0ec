#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "bincx/fp.hpp"
#include "bincx/rational.hpp"

namespace bincx {

// Runtime description of the coefficient field, as it appears in files and
// on the command line. Dispatch to the statically typed scalar types goes
// through with_field().
struct FieldSpec {
    enum class Kind { Rationals, PrimeField };

    Kind kind = Kind::Rationals;
    std::uint64_t p = 0; // meaningful iff kind == PrimeField

    static FieldSpec rationals() { return FieldSpec{Kind::Rationals, 0}; }
    static FieldSpec prime(std::uint64_t p) {
        FpDesc check(p); // validates primality and the 2^61 bound
        return FieldSpec{Kind::PrimeField, check.p};
    }

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
        return a.kind == b.kind && a.p == b.p;
    }

    std::string to_string() const {
        return kind == Kind::Rationals ? "Q" : "Fp:" + std::to_string(p);
    }

    // Accepts "Q", "q", "rationals", "Fp:<p>", "fp:<p>" or a bare prime.
    static std::optional<FieldSpec> parse(std::string_view s) {
        if (s == "Q" || s == "q" || s == "rationals") return rationals();
        if (s.substr(0, 3) == "Fp:" || s.substr(0, 3) == "fp:") s.remove_prefix(3);
        if (s.empty()) return std::nullopt;
        std::uint64_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') return std::nullopt;
            if (v > (UINT64_MAX - static_cast<std::uint64_t>(c - '0')) / 10) return std::nullopt;
            v = v * 10 + static_cast<std::uint64_t>(c - '0');
        }
        try {
            return prime(v);
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
    }
};

// Scalar type associated with a field descriptor.
template <class Desc>
struct scalar_for;
template <>
struct scalar_for<RationalDesc> {
    using type = Rational;
};
template <>
struct scalar_for<FpDesc> {
    using type = Fp;
};
template <class Desc>
using scalar_for_t = typename scalar_for<Desc>::type;

// Calls fn with the statically typed field descriptor.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.kind == FieldSpec::Kind::Rationals) return std::forward<Fn>(fn)(RationalDesc{});
    return std::forward<Fn>(fn)(FpDesc(spec.p));
}

inline FieldSpec spec_of(RationalDesc) { return FieldSpec::rationals(); }
inline FieldSpec spec_of(FpDesc d) { return FieldSpec{FieldSpec::Kind::PrimeField, d.p}; }

} // namespace bincx

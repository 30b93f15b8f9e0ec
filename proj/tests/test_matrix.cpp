#include <doctest.h>

#include "bincx/field.hpp"
#include "bincx/matrix.hpp"
#include "bincx/rng.hpp"

using namespace bincx;

namespace {
const RationalDesc Q{};

Matrix<Rational> qm(std::size_t r, std::size_t c, std::vector<std::vector<long long>> e) {
    return Matrix<Rational>::from_rows(Q, r, c, std::move(e));
}
} // namespace

TEST_CASE("rref: identity is fixed") {
    auto r = rref(Matrix<Rational>::identity(Q, 2));
    CHECK(r.reduced.is_identity());
    CHECK(r.pivots == std::vector<std::size_t>{0, 1});
    CHECK(r.rank == 2);
}

TEST_CASE("rref: rank one matrix") {
    auto r = rref(qm(2, 2, {{2, 4}, {1, 2}}));
    CHECK(r.reduced == qm(2, 2, {{1, 2}, {0, 0}}));
    CHECK(r.pivots == std::vector<std::size_t>{0});
    CHECK(r.rank == 1);
}

TEST_CASE("rref over a prime field") {
    FpDesc f5(5);
    auto m = Matrix<Fp>::from_rows(f5, 1, 1, {{3}});
    auto r = rref(m);
    CHECK(r.reduced.is_identity());
    CHECK(r.rank == 1);
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(Matrix<Rational>::identity(Q, 3)).cols() == 0);
    auto k = kernel_basis(qm(1, 2, {{1, 2}}));
    CHECK(k == qm(2, 1, {{-2}, {1}}));
    CHECK(kernel_basis(Matrix<Rational>(Q, 2, 2)) == Matrix<Rational>::identity(Q, 2));
}

TEST_CASE("image basis") {
    CHECK(image_basis(Matrix<Rational>::identity(Q, 3)).is_identity());
    auto b = image_basis(qm(2, 2, {{2, 4}, {1, 2}}));
    REQUIRE(b.cols() == 1);
    CHECK(b.at(0, 0) == Rational(1));
    CHECK(b.at(1, 0) == Rational(BigInt(1), BigInt(2)));
    CHECK(image_basis(Matrix<Rational>(Q, 2, 3)).cols() == 0);
}

TEST_CASE("solve_right") {
    auto b = qm(2, 1, {{3}, {4}});
    CHECK(*solve_right(Matrix<Rational>::identity(Q, 2), b) == b);
    CHECK(*solve_right(qm(1, 2, {{1, 0}}), qm(1, 1, {{1}})) == qm(2, 1, {{1}, {0}}));
    CHECK(!solve_right(qm(1, 1, {{0}}), qm(1, 1, {{1}})).has_value());
}

TEST_CASE("determinants") {
    CHECK(det(Matrix<Rational>::identity(Q, 3)) == Rational(1));
    CHECK(det(qm(2, 2, {{0, 1}, {1, 0}})) == Rational(-1)); // permutation sign
    CHECK(det(qm(2, 2, {{2, 1}, {1, 1}})) == Rational(1));
    CHECK(det(Matrix<Rational>(Q, 0, 0)) == Rational(1)); // empty product
}

TEST_CASE("inverse") {
    auto m = qm(2, 2, {{2, 1}, {1, 1}});
    auto inv = inverse(m);
    REQUIRE(inv.has_value());
    CHECK((*inv * m).is_identity());
    CHECK(!inverse(qm(2, 2, {{2, 4}, {1, 2}})).has_value());
}

TEST_CASE("stacking and sums") {
    auto a = qm(1, 1, {{1}}), b = qm(1, 1, {{2}});
    CHECK(hstack(a, b) == qm(1, 2, {{1, 2}}));
    CHECK(vstack(a, b) == qm(2, 1, {{1}, {2}}));
    CHECK(direct_sum(a, b) == qm(2, 2, {{1, 0}, {0, 2}}));
    CHECK(kron(qm(1, 2, {{1, 2}}), qm(2, 1, {{3}, {4}})) == qm(2, 2, {{3, 6}, {4, 8}}));
    CHECK(is_injective(qm(2, 1, {{1}, {0}})));
    CHECK(!is_surjective(qm(2, 1, {{1}, {0}})));
}

TEST_CASE("random matrix properties over Q and F7") {
    FpDesc f7(7);
    Rng rng(42);
    auto check_props = [&](auto desc) {
        using F = scalar_for_t<decltype(desc)>;
        for (int i = 0; i < 40; ++i) {
            std::size_t r = rng.below(5), c = rng.below(5);
            auto m = random_matrix<F>(desc, r, c, rng);
            auto k = kernel_basis(m);
            CHECK((m * k).is_zero());
            CHECK(rank(m) + k.cols() == c);
            auto rr = rref(m);
            CHECK(rref(rr.reduced).reduced == rr.reduced); // idempotent
            if (r == c && r > 0) {
                auto n = random_matrix<F>(desc, r, r, rng);
                CHECK(det(m * n) == det(m) * det(n));
                if (auto inv = inverse(m)) CHECK((*inv * m).is_identity());
            }
            // image basis spans: every column of m solves against it
            auto ib = image_basis(m);
            CHECK(solve_right(ib, m).has_value());
            CHECK(rank(ib) == ib.cols());
        }
    };
    check_props(Q);
    check_props(f7);
}

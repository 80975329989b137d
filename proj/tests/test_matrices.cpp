#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "tvc/matrix.hpp"

using namespace tvc;

namespace {
const Ring Z = Ring::integers();
const Ring Z6 = Ring::integers_mod(6);
}  // namespace

TEST_CASE("index sets") {
    IndexSet s{3, 1, 2};
    CHECK(s == IndexSet{1, 2, 3});
    CHECK(s.position_of(2) == 1);
    CHECK(s.at(2) == 3);
    CHECK(IndexSet{1, 2}.subset_of(s));
    CHECK_FALSE(IndexSet{1, 4}.subset_of(s));
    CHECK_THROWS_AS(IndexSet(std::vector<int>{0, 1}), std::invalid_argument);
    CHECK(s.without(2) == IndexSet{1, 3});
    CHECK(s.with(7) == IndexSet{1, 2, 3, 7});
}

TEST_CASE("submatrix keeps labels") {
    auto m = IndexedMatrix::from_ints(Z, {{1, 2}, {3, 4}});
    CHECK(submatrix(m, m.rows(), m.cols()) == m);
    auto s = submatrix(m, IndexSet{2}, IndexSet{1});
    CHECK(s.rows() == IndexSet{2});
    CHECK(s.at(2, 1) == RingElem(Z, 3));
    CHECK_THROWS_AS(submatrix(m, IndexSet{3}, IndexSet{1}), std::invalid_argument);
    // singleton braces convention: {r} and r address the same submatrix
    CHECK(submatrix(m, IndexSet{1}, IndexSet{1, 2}) ==
          submatrix(m, IndexSet(std::vector<int>{1}), m.cols()));
}

TEST_CASE("matmul examples") {
    auto m = IndexedMatrix::from_ints(Z, {{1, 1}, {1, 0}});
    auto id = IndexedMatrix::identity(Z, m.rows());
    CHECK(matmul(id, m) == m);
    CHECK(matmul(m, IndexedMatrix::from_ints(Z, {{1, 0}, {0, 1}})) == m);
    auto a = IndexedMatrix::from_ints(Z6, {{2, 3}});
    auto b = IndexedMatrix(Z6, IndexSet{1, 2}, IndexSet{1});
    b.set(1, 1, RingElem(Z6, 3));
    b.set(2, 1, RingElem(Z6, 2));
    auto prod = matmul(a, b);
    CHECK(prod.at(1, 1) == RingElem::zero(Z6));
    CHECK_THROWS_AS(matmul(a, a), std::invalid_argument);
}

TEST_CASE("determinant examples") {
    CHECK(determinant(IndexedMatrix::from_ints(Z, {{1, 1}, {1, 0}})) == RingElem(Z, -1));
    CHECK(determinant(IndexedMatrix::from_ints(Z6, {{2, 1}, {1, 2}})) == RingElem(Z6, 3));
    CHECK(determinant(IndexedMatrix::from_ints(Z, {{1, 2}, {1, 2}})) == RingElem::zero(Z));
    CHECK_THROWS_AS(determinant(IndexedMatrix::from_ints(Z, {{1, 2}})), std::invalid_argument);
}

TEST_CASE("determinant: cofactor agrees with elimination on larger sizes") {
    for (const Ring& ring : {Z, Z6, Ring::prime_field(5), Ring::rationals()}) {
        SplitMix64 rng(11);
        for (int trial = 0; trial < 40; ++trial) {
            auto m = test::random_matrix(ring, 5, 5, rng, 3);
            CHECK(determinant(m) == detail::det_cofactor(m, m.rows(), m.cols()));
        }
    }
}

TEST_CASE("invertibility via det-is-unit") {
    CHECK(is_invertible(IndexedMatrix::from_ints(Z, {{1, 1}, {1, 0}})));
    CHECK_FALSE(is_invertible(IndexedMatrix::from_ints(Z, {{2}})));
    CHECK_FALSE(is_invertible(IndexedMatrix::from_ints(Z6, {{2, 1}, {1, 2}})));
}

TEST_CASE("invertibility over Z/n agrees with exhaustive two-sided inverse search") {
    for (int n = 2; n <= 8; ++n) {
        Ring ring = Ring::integers_mod(n);
        SplitMix64 rng(static_cast<std::uint64_t>(n));
        // keep the enumeration tractable: n^(size^2) candidates per trial
        const int max_size = n <= 3 ? 3 : 2;
        for (int size = 1; size <= max_size; ++size) {
            for (int trial = 0; trial < 25; ++trial) {
                auto m = test::random_matrix(ring, size, size, rng);
                bool found = false;
                // enumerate all candidate inverses
                long long total = 1;
                for (int i = 0; i < size * size; ++i) total *= n;
                for (long long code = 0; code < total && !found; ++code) {
                    IndexedMatrix cand(ring, m.rows(), m.rows());
                    long long rem = code;
                    for (int i = 0; i < size * size; ++i) {
                        cand.set(i / size + 1, i % size + 1, RingElem(ring, Int(rem % n)));
                        rem /= n;
                    }
                    if (matmul(cand, m) == IndexedMatrix::identity(ring, m.rows()) &&
                        matmul(m, cand) == IndexedMatrix::identity(ring, m.rows()))
                        found = true;
                }
                REQUIRE(is_invertible(m) == found);
            }
        }
    }
}

TEST_CASE("matrix inverse examples") {
    auto id = IndexedMatrix::identity(Z, IndexSet{1, 2});
    CHECK(*try_matrix_inverse(id) == id);
    auto m = IndexedMatrix::from_ints(Z, {{1, 1}, {1, 0}});
    auto inv = try_matrix_inverse(m);
    REQUIRE(inv.has_value());
    CHECK(*inv == IndexedMatrix::from_ints(Z, {{0, 1}, {1, -1}}));
    CHECK_FALSE(try_matrix_inverse(IndexedMatrix::from_ints(Z6, {{2, 1}, {1, 2}})).has_value());
}

TEST_CASE("inverse multiplies to identity both ways") {
    for (const Ring& ring : {Z, Z6, Ring::prime_field(3), Ring::rationals()}) {
        SplitMix64 rng(5);
        int found = 0;
        for (int trial = 0; trial < 200 && found < 20; ++trial) {
            auto m = test::random_matrix(ring, 3, 3, rng);
            auto inv = try_matrix_inverse(m);
            if (!inv) continue;
            ++found;
            auto id = IndexedMatrix::identity(ring, m.rows());
            REQUIRE(matmul(*inv, m) == id);
            REQUIRE(matmul(m, *inv) == id);
        }
        CHECK(found > 0);
    }
}

TEST_CASE("matmul associativity and det multiplicativity") {
    for (const Ring& ring : {Z, Z6, Ring::rationals()}) {
        SplitMix64 rng(9);
        for (int trial = 0; trial < 50; ++trial) {
            int a = 1 + static_cast<int>(rng.below(4));
            int b = 1 + static_cast<int>(rng.below(4));
            int c = 1 + static_cast<int>(rng.below(4));
            int d = 1 + static_cast<int>(rng.below(4));
            auto x = test::random_matrix(ring, a, b, rng);
            auto y = test::random_matrix(ring, b, c, rng);
            auto z = test::random_matrix(ring, c, d, rng);
            CHECK(matmul(matmul(x, y), z) == matmul(x, matmul(y, z)));

            int s = 1 + static_cast<int>(rng.below(4));
            auto u = test::random_matrix(ring, s, s, rng);
            auto v = test::random_matrix(ring, s, s, rng);
            CHECK(determinant(matmul(u, v)) == determinant(u) * determinant(v));
        }
    }
}

TEST_CASE("row operations") {
    auto m = IndexedMatrix::from_ints(Z, {{2}, {3}});
    CHECK(row_op_scale(m, 1, RingElem::one(Z)) == m);
    CHECK(row_op_add(m, 1, 2, RingElem(Z, -1)) == IndexedMatrix::from_ints(Z, {{-1}, {3}}));
    CHECK_THROWS_AS(row_op_scale(m, 1, RingElem(Z, 2)), std::invalid_argument);
    CHECK_THROWS_AS(row_op_add(m, 1, 1, RingElem(Z, 1)), std::invalid_argument);

    // op then inverse op restores the matrix
    auto once = row_op_add(m, 2, 1, RingElem(Z, 5));
    CHECK(row_op_add(once, 2, 1, RingElem(Z, -5)) == m);
    auto scaled = row_op_scale(m, 2, RingElem(Z, -1));
    CHECK(row_op_scale(scaled, 2, RingElem(Z, -1)) == m);
}

TEST_CASE("row operations equal multiplication by invertible elementary matrices") {
    SplitMix64 rng(3);
    for (const Ring& ring : {Z, Z6, Ring::rationals()}) {
        for (int trial = 0; trial < 30; ++trial) {
            auto m = test::random_matrix(ring, 3, 4, rng);
            RingElem lam = test::random_elem(ring, rng);
            auto e = elementary_add(ring, m.rows(), 1, 3, lam);
            CHECK(matmul(e, m) == row_op_add(m, 1, 3, lam));
            CHECK(try_matrix_inverse(e).has_value());

            RingElem u = ring.kind() == RingKind::IntegersMod ? RingElem(ring, 5) : RingElem(ring, -1);
            auto es = elementary_scale(ring, m.rows(), 2, u);
            CHECK(matmul(es, m) == row_op_scale(m, 2, u));
            CHECK(try_matrix_inverse(es).has_value());
        }
    }
}

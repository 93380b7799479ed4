#include <catch2/catch_amalgamated.hpp>

#include "qchain/matrix.hpp"
#include "qchain/rand.hpp"

using namespace qchain;

namespace {

RationalMatrix mat(const std::vector<std::vector<long>>& rows) {
    std::vector<Vec> v;
    for (const auto& r : rows) {
        Vec row;
        for (long x : r)
            row.push_back(Rational(x));
        v.push_back(row);
    }
    return RationalMatrix::from_rows(v);
}

}  // namespace

TEST_CASE("rref of hand-checked examples") {
    RationalMatrix zero(2, 3);
    RrefResult rz = rref(zero);
    CHECK(rz.matrix.is_zero());
    CHECK(rz.pivots.empty());

    RrefResult ri = rref(RationalMatrix::identity(3));
    CHECK(ri.matrix == RationalMatrix::identity(3));
    CHECK(ri.pivots == std::vector<int>{0, 1, 2});

    RationalMatrix m = mat({{1, 2}, {2, 4}});
    RrefResult rm = rref(m);
    CHECK(rm.matrix == mat({{1, 2}, {0, 0}}));
    CHECK(rm.pivots == std::vector<int>{0});
    CHECK(rank(m) == 1);
}

TEST_CASE("kernel bases are exact and canonical") {
    CHECK(kernel_basis(RationalMatrix::identity(2)).empty());
    CHECK(kernel_basis(RationalMatrix(2, 2)).size() == 2);
    auto ker = kernel_basis(mat({{1, 2}, {2, 4}}));
    REQUIRE(ker.size() == 1);
    CHECK(ker[0][0] == Rational(-2));
    CHECK(ker[0][1] == Rational(1));
}

TEST_CASE("quotient_basis completes a basis of W to one of U") {
    Vec e1 = {Rational(1), Rational(0)}, e2 = {Rational(0), Rational(1)};
    CHECK(quotient_basis({e1, e2}, {}, 2).size() == 2);
    CHECK(quotient_basis({e1, e2}, {e1}, 2).size() == 1);
    Vec u1 = {Rational(1), Rational(1)}, u2 = {Rational(1), Rational(-1)};
    auto reps = quotient_basis({u1, u2}, {e1}, 2);
    REQUIRE(reps.size() == 1);
    CHECK(reps[0] == e2);  // canonical representative of the class of e2
    // containment violation
    Vec e3 = {Rational(0), Rational(0), Rational(1)};
    Vec f1 = {Rational(1), Rational(0), Rational(0)};
    CHECK_THROWS_AS(quotient_basis({f1}, {e3}, 3), invalid_input);
}

TEST_CASE("rank-nullity, transpose rank, rref idempotence on random matrices") {
    Rng rng(7);
    for (int t = 0; t < 30; ++t) {
        RationalMatrix m = random_matrix(rng, rng.uniform(0, 6), rng.uniform(0, 6));
        int rk = rank(m);
        CHECK(rk + static_cast<int>(kernel_basis(m).size()) == m.cols());
        CHECK(rank(m.transpose()) == rk);
        RrefResult r1 = rref(m);
        RrefResult r2 = rref(r1.matrix);
        CHECK(r1.matrix == r2.matrix);
        CHECK(r1.pivots == r2.pivots);
        for (const auto& v : kernel_basis(m)) {
            Vec prod = m.apply(v);
            for (const auto& x : prod)
                CHECK(x.is_zero());
        }
    }
}

TEST_CASE("dense and sparse elimination agree") {
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        RationalMatrix m = random_matrix(rng, rng.uniform(1, 7), rng.uniform(1, 7));
        RrefResult a = detail::rref_dense(m);
        RrefResult b = detail::rref_sparse(m);
        CHECK(a.matrix == b.matrix);
        CHECK(a.pivots == b.pivots);
    }
}

TEST_CASE("solve returns exact solutions and detects inconsistency") {
    RationalMatrix m = mat({{1, 2}, {3, 4}});
    Vec b = {Rational(5), Rational(6)};
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    Vec mx = m.apply(*x);
    CHECK(mx[0] == b[0]);
    CHECK(mx[1] == b[1]);
    RationalMatrix sing = mat({{1, 2}, {2, 4}});
    CHECK_FALSE(solve(sing, b).has_value());
    CHECK(solve(sing, Vec{Rational(1), Rational(2)}).has_value());
}

TEST_CASE("bounds and shape violations are rejected") {
    RationalMatrix m(2, 2);
    CHECK_THROWS_AS(m.at(2, 0), invalid_input);
    CHECK_THROWS_AS(m.set(0, 5, Rational(1)), invalid_input);
    CHECK_THROWS_AS(RationalMatrix(2, 2) * RationalMatrix(3, 3), invalid_input);
    CHECK_THROWS_AS(RationalMatrix(2, 2) + RationalMatrix(3, 3), invalid_input);
}

TEST_CASE("zero-dimensional matrices flow through the toolkit") {
    RationalMatrix a(0, 4);
    CHECK(rank(a) == 0);
    CHECK(kernel_basis(a).size() == 4);
    RationalMatrix b(3, 0);
    CHECK(rank(b) == 0);
    CHECK(kernel_basis(b).empty());
    CHECK((a * RationalMatrix(4, 0)).cols() == 0);
}

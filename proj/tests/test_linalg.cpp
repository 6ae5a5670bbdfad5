#include "doctest.h"
#include "sfh/errors.hpp"
#include "sfh/linalg_f2.hpp"
#include "sfh/linalg_int.hpp"
#include "sfh/rational_lp.hpp"

#include <random>

using namespace sfh;

TEST_CASE("f2 homology of the zero differential is the full space") {
    SparseMatrixF2 boundary(0, 3);
    SparseMatrixF2 next(3, 0);
    F2Homology h(boundary, next);
    CHECK(h.rank() == 3);
    for (int i = 0; i < 3; ++i) {
        BitVec e(3);
        e.set(i, true);
        CHECK(h.project(e).get(i));
    }
}

TEST_CASE("f2 homology of dy=x, dz=x has rank 1 represented by y+z") {
    // basis order x=0, y=1, z=2; boundary maps the group to itself
    SparseMatrixF2 d(3, 3);
    d.add(0, 1);
    d.add(0, 2);
    F2Homology h(d, d);
    CHECK(h.rank() == 1);
    BitVec yz(3);
    yz.set(1, true);
    yz.set(2, true);
    BitVec coords = h.project(yz);
    CHECK(coords.any());
}

TEST_CASE("f2 homology rejects non-complexes") {
    SparseMatrixF2 d(2, 2);
    d.add(0, 1);
    d.add(1, 0);
    CHECK_THROWS_AS(F2Homology(d, d), EngineError);
}

TEST_CASE("f2 rank-nullity") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        int r = 1 + int(rng() % 8), c = 1 + int(rng() % 8);
        SparseMatrixF2 m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (rng() % 2) m.add(i, j);
        SparseMatrixF2 zero(c, 0);
        F2Homology h(m, zero);
        CHECK(h.rank() + f2_rank(m) == c);
        for (const BitVec& k : f2_kernel(m)) CHECK_FALSE(m.apply(k).any());
    }
}

TEST_CASE("integer_solve identity") {
    IntegerMatrix a = IntegerMatrix::identity(3);
    std::vector<mpz_class> b = {5, -2, 7};
    auto res = integer_solve(a, b);
    CHECK(res.solvable_z);
    CHECK(res.solution == b);
    CHECK(res.kernel.empty());
}

TEST_CASE("integer_solve parity obstruction") {
    IntegerMatrix a(1, 1);
    a.at(0, 0) = 2;
    auto res = integer_solve(a, {mpz_class(1)});
    CHECK(res.solvable_q);
    CHECK_FALSE(res.solvable_z);
    res = integer_solve(a, {mpz_class(4)});
    CHECK(res.solvable_z);
    CHECK(res.solution[0] == 2);
}

TEST_CASE("integer_solve rationally unsolvable") {
    IntegerMatrix a(2, 1);
    a.at(0, 0) = 1;
    a.at(1, 0) = 1;
    auto res = integer_solve(a, {mpz_class(0), mpz_class(1)});
    CHECK_FALSE(res.solvable_q);
    CHECK_FALSE(res.solvable_z);
}

TEST_CASE("integer_solve randomized substitution check") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        int r = 1 + int(rng() % 5), c = 1 + int(rng() % 5);
        IntegerMatrix a(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) a.at(i, j) = int(rng() % 7) - 3;
        // build a rhs that is integrally solvable by construction
        std::vector<mpz_class> x0(c);
        for (int j = 0; j < c; ++j) x0[j] = int(rng() % 5) - 2;
        std::vector<mpz_class> b = a.apply(x0);
        auto res = integer_solve(a, b);
        REQUIRE(res.solvable_z);
        CHECK(a.apply(res.solution) == b);
        std::vector<mpz_class> zero(r, 0);
        for (auto& k : res.kernel) CHECK(a.apply(k) == zero);
        // kernel rank + rank = cols
        CHECK(int(res.kernel.size()) + integer_rank(a) == c);
    }
}

TEST_CASE("smith normal form invariants") {
    IntegerMatrix a(2, 2);
    a.at(0, 0) = 2;
    a.at(1, 1) = 3;
    auto s = smith_normal_form(a);
    CHECK(s.D.at(0, 0) == 1);
    CHECK(s.D.at(1, 1) == 6);
    CHECK(s.U.multiply(a).multiply(s.V).a == s.D.a);
    mpz_class du = s.U.determinant(), dv = s.V.determinant();
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
}

TEST_CASE("smith normal form of zero matrix") {
    IntegerMatrix a(2, 2);
    auto s = smith_normal_form(a);
    CHECK(s.D.is_zero());
}

TEST_CASE("smith normal form randomized") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        int r = 1 + int(rng() % 4), c = 1 + int(rng() % 4);
        IntegerMatrix a(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) a.at(i, j) = int(rng() % 9) - 4;
        auto s = smith_normal_form(a);
        CHECK(s.U.multiply(a).multiply(s.V).a == s.D.a);
        mpz_class du = s.U.determinant(), dv = s.V.determinant();
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
        int n = std::min(r, c);
        for (int t = 0; t + 1 < n; ++t) {
            if (s.D.at(t + 1, t + 1) != 0) {
                REQUIRE(s.D.at(t, t) != 0);
                CHECK(s.D.at(t + 1, t + 1) % s.D.at(t, t) == 0);
            }
        }
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (i != j) CHECK(s.D.at(i, j) == 0);
    }
}

TEST_CASE("exact LP basics") {
    // maximize x+y st x<=2, y<=3 -> 5
    LinearProgram lp;
    lp.A = {{1, 0}, {0, 1}};
    lp.b = {2, 3};
    lp.c = {1, 1};
    auto res = solve_lp(lp);
    REQUIRE(res.status == LPStatus::Optimal);
    CHECK(res.value == 5);

    // unbounded
    lp.A = {{-1, 0}};
    lp.b = {0};
    auto res2 = solve_lp(lp);
    CHECK(res2.status == LPStatus::Unbounded);

    // infeasible: x <= -1, x >= 0
    lp.A = {{1, 0}};
    lp.b = {-1};
    lp.c = {0, 0};
    auto res3 = solve_lp(lp);
    CHECK(res3.status == LPStatus::Infeasible);

    // phase-1 required but feasible: x >= 1 (as -x <= -1), x <= 3, max x
    lp.A = {{-1}, {1}};
    lp.b = {-1, 3};
    lp.c = {1};
    auto res4 = solve_lp(lp);
    REQUIRE(res4.status == LPStatus::Optimal);
    CHECK(res4.value == 3);
    // exact rationals: maximize x st 3x <= 1
    lp.A = {{3}};
    lp.b = {1};
    auto res5 = solve_lp(lp);
    REQUIRE(res5.status == LPStatus::Optimal);
    CHECK(res5.value == mpq_class(1, 3));
}

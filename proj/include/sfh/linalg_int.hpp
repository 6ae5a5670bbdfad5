#pragma once

#include <gmpxx.h>

#include <vector>

namespace sfh {

// Dense arbitrary-precision integer matrix (domain systems are small but
// elimination blows up fixed-width integers).
struct IntegerMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<mpz_class> a;  // row-major

    IntegerMatrix() = default;
    IntegerMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c, 0) {}

    mpz_class& at(int r, int c) { return a[size_t(r) * cols + c]; }
    const mpz_class& at(int r, int c) const { return a[size_t(r) * cols + c]; }

    static IntegerMatrix identity(int n);
    IntegerMatrix multiply(const IntegerMatrix& rhs) const;
    std::vector<mpz_class> apply(const std::vector<mpz_class>& v) const;
    bool is_zero() const;
    mpz_class determinant() const;  // small matrices only (used to check unimodularity)
};

struct IntSolveResult {
    bool solvable_q = false;  // solvable over the rationals
    bool solvable_z = false;  // solvable over the integers
    std::vector<mpz_class> solution;             // valid iff solvable_z
    std::vector<std::vector<mpz_class>> kernel;  // basis of the integer kernel lattice
};

// Solve A x = b over Z via column-style Hermite normal form. Always returns
// the kernel basis; distinguishes rationally-unsolvable from an integral
// obstruction.
IntSolveResult integer_solve(const IntegerMatrix& A, const std::vector<mpz_class>& b);

int integer_rank(const IntegerMatrix& A);

struct SNFResult {
    IntegerMatrix U;  // rows x rows, unimodular
    IntegerMatrix D;  // diagonal, d1 | d2 | ...
    IntegerMatrix V;  // cols x cols, unimodular
};

// U * A * V = D with nonnegative diagonal and divisibility chain.
SNFResult smith_normal_form(const IntegerMatrix& A);

}  // namespace sfh

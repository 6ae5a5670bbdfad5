#include "sfh/linalg_int.hpp"

#include <algorithm>

#include "sfh/errors.hpp"

namespace sfh {

IntegerMatrix IntegerMatrix::identity(int n) {
    IntegerMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::multiply(const IntegerMatrix& rhs) const {
    if (cols != rhs.rows) fail(ErrorCode::DimensionMismatch, "integer matrix product shape mismatch");
    IntegerMatrix out(rows, rhs.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            if (at(i, k) == 0) continue;
            for (int j = 0; j < rhs.cols; ++j) out.at(i, j) += at(i, k) * rhs.at(k, j);
        }
    return out;
}

std::vector<mpz_class> IntegerMatrix::apply(const std::vector<mpz_class>& v) const {
    if (int(v.size()) != cols) fail(ErrorCode::DimensionMismatch, "integer matrix apply shape mismatch");
    std::vector<mpz_class> out(rows, 0);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) out[i] += at(i, j) * v[j];
    return out;
}

bool IntegerMatrix::is_zero() const {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

mpz_class IntegerMatrix::determinant() const {
    if (rows != cols) fail(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
    // Bareiss fraction-free elimination.
    IntegerMatrix m = *this;
    int n = rows;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

namespace {

struct ColumnHNF {
    IntegerMatrix H;       // column echelon form
    IntegerMatrix U;       // A * U = H, U unimodular
    std::vector<int> pivot_row;  // pivot_row[j] for j < npiv
    int npiv = 0;
};

void col_addmul(IntegerMatrix& m, int dst, int src, const mpz_class& f) {
    if (f == 0) return;
    for (int i = 0; i < m.rows; ++i) m.at(i, dst) += f * m.at(i, src);
}
void col_swap(IntegerMatrix& m, int a, int b) {
    for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
}
void col_neg(IntegerMatrix& m, int c) {
    for (int i = 0; i < m.rows; ++i) m.at(i, c) = -m.at(i, c);
}

ColumnHNF column_hnf(const IntegerMatrix& A) {
    ColumnHNF out;
    out.H = A;
    out.U = IntegerMatrix::identity(A.cols);
    IntegerMatrix& H = out.H;
    IntegerMatrix& U = out.U;
    int k = 0;  // next pivot column
    for (int r = 0; r < A.rows && k < A.cols; ++r) {
        // Clear row r among columns >= k via gcd combinations.
        int nz = -1;
        for (int j = k; j < A.cols; ++j)
            if (H.at(r, j) != 0) {
                nz = j;
                break;
            }
        if (nz < 0) continue;
        if (nz != k) {
            col_swap(H, k, nz);
            col_swap(U, k, nz);
        }
        for (int j = k + 1; j < A.cols; ++j) {
            while (H.at(r, j) != 0) {
                mpz_class q = H.at(r, j) / H.at(r, k);  // truncated division is fine for the loop
                col_addmul(H, j, k, -q);
                col_addmul(U, j, k, -q);
                if (H.at(r, j) != 0) {
                    col_swap(H, k, j);
                    col_swap(U, k, j);
                }
            }
        }
        if (H.at(r, k) < 0) {
            col_neg(H, k);
            col_neg(U, k);
        }
        out.pivot_row.push_back(r);
        ++k;
    }
    out.npiv = k;
    return out;
}

}  // namespace

int integer_rank(const IntegerMatrix& A) { return column_hnf(A).npiv; }

IntSolveResult integer_solve(const IntegerMatrix& A, const std::vector<mpz_class>& b) {
    if (int(b.size()) != A.rows) fail(ErrorCode::DimensionMismatch, "integer_solve rhs length mismatch");
    ColumnHNF h = column_hnf(A);
    IntSolveResult res;
    for (int j = h.npiv; j < A.cols; ++j) {
        std::vector<mpz_class> k(A.cols);
        for (int i = 0; i < A.cols; ++i) k[i] = h.U.at(i, j);
        res.kernel.push_back(std::move(k));
    }
    // Forward substitution over Q on the pivot columns: H y = b.
    std::vector<mpq_class> residual(A.rows);
    for (int i = 0; i < A.rows; ++i) residual[i] = mpq_class(b[i]);
    std::vector<mpq_class> y(h.npiv, 0);
    for (int j = 0; j < h.npiv; ++j) {
        int r = h.pivot_row[j];
        y[j] = residual[r] / mpq_class(h.H.at(r, j));
        for (int i = 0; i < A.rows; ++i) residual[i] -= y[j] * mpq_class(h.H.at(i, j));
    }
    bool consistent = true;
    for (int i = 0; i < A.rows; ++i)
        if (residual[i] != 0) consistent = false;
    res.solvable_q = consistent;
    if (!consistent) return res;
    bool integral = true;
    for (int j = 0; j < h.npiv; ++j) {
        mpq_class c = y[j];
        c.canonicalize();
        if (c.get_den() != 1) integral = false;
    }
    res.solvable_z = integral;
    if (integral) {
        std::vector<mpz_class> x(A.cols, 0);
        for (int j = 0; j < h.npiv; ++j) {
            mpz_class yz = y[j].get_num() / y[j].get_den();
            for (int i = 0; i < A.cols; ++i) x[i] += yz * h.U.at(i, j);
        }
        res.solution = std::move(x);
    }
    return res;
}

SNFResult smith_normal_form(const IntegerMatrix& A) {
    SNFResult out;
    out.D = A;
    out.U = IntegerMatrix::identity(A.rows);
    out.V = IntegerMatrix::identity(A.cols);
    IntegerMatrix& D = out.D;
    IntegerMatrix& U = out.U;
    IntegerMatrix& V = out.V;

    auto row_addmul = [&](int dst, int src, const mpz_class& f) {
        if (f == 0) return;
        for (int j = 0; j < D.cols; ++j) D.at(dst, j) += f * D.at(src, j);
        for (int j = 0; j < U.cols; ++j) U.at(dst, j) += f * U.at(src, j);
    };
    auto row_swap = [&](int a, int b) {
        for (int j = 0; j < D.cols; ++j) std::swap(D.at(a, j), D.at(b, j));
        for (int j = 0; j < U.cols; ++j) std::swap(U.at(a, j), U.at(b, j));
    };
    auto row_neg = [&](int r) {
        for (int j = 0; j < D.cols; ++j) D.at(r, j) = -D.at(r, j);
        for (int j = 0; j < U.cols; ++j) U.at(r, j) = -U.at(r, j);
    };

    int n = std::min(A.rows, A.cols);
    for (int t = 0; t < n; ++t) {
        // Find a nonzero pivot in the trailing block.
        int pr = -1, pc = -1;
        for (int i = t; i < A.rows && pr < 0; ++i)
            for (int j = t; j < A.cols; ++j)
                if (D.at(i, j) != 0) {
                    pr = i;
                    pc = j;
                    break;
                }
        if (pr < 0) break;
        row_swap(t, pr);
        if (pc != t) {
            col_swap(D, t, pc);
            col_swap(V, t, pc);
        }
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < A.rows; ++i) {
                while (D.at(i, t) != 0) {
                    mpz_class q = D.at(i, t) / D.at(t, t);
                    row_addmul(i, t, -q);
                    if (D.at(i, t) != 0) row_swap(t, i);
                }
            }
            for (int j = t + 1; j < A.cols; ++j) {
                while (D.at(t, j) != 0) {
                    mpz_class q = D.at(t, j) / D.at(t, t);
                    col_addmul(D, j, t, -q);
                    col_addmul(V, j, t, -q);
                    if (D.at(t, j) != 0) {
                        col_swap(D, t, j);
                        col_swap(V, t, j);
                        clean = false;  // column swap may have dirtied column t below row t
                    }
                }
            }
            for (int i = t + 1; i < A.rows && clean; ++i)
                if (D.at(i, t) != 0) clean = false;
        }
        if (D.at(t, t) < 0) row_neg(t);
    }
    // Enforce the divisibility chain d_t | d_{t+1}; repeat until stable since
    // fixing a later pair can break an earlier one.
    bool chain_dirty = true;
    while (chain_dirty) {
    chain_dirty = false;
    for (int t = 0; t + 1 < n; ++t) {
        for (int s = t + 1; s < n; ++s) {
            if (D.at(s, s) == 0) continue;
            if (D.at(t, t) == 0 || D.at(s, s) % D.at(t, t) != 0) {
                chain_dirty = true;
                // Classical trick: add column s to column t, then re-reduce the 2x2 block.
                col_addmul(D, t, s, 1);
                col_addmul(V, t, s, 1);
                while (true) {
                    // clear D(s, t) and D(t, s) by gcd steps
                    bool done = true;
                    while (D.at(s, t) != 0) {
                        mpz_class q = D.at(s, t) / D.at(t, t);
                        row_addmul(s, t, -q);
                        if (D.at(s, t) != 0) {
                            row_swap(t, s);
                            done = false;
                        }
                    }
                    while (D.at(t, s) != 0) {
                        mpz_class q = D.at(t, s) / D.at(t, t);
                        col_addmul(D, s, t, -q);
                        col_addmul(V, s, t, -q);
                        if (D.at(t, s) != 0) {
                            col_swap(D, t, s);
                            col_swap(V, t, s);
                            done = false;
                        }
                    }
                    if (done && D.at(s, t) == 0 && D.at(t, s) == 0) break;
                }
                if (D.at(t, t) < 0) row_neg(t);
                if (D.at(s, s) < 0) row_neg(s);
            }
        }
    }
    }
    return out;
}

}  // namespace sfh

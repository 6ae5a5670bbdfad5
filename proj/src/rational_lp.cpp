#include "sfh/rational_lp.hpp"

#include <algorithm>

#include "sfh/errors.hpp"

namespace sfh {

namespace {

// Dictionary-form simplex (Chvatal). Variables: 0..n-1 original,
// n..n+m-1 slacks, n+m the phase-1 auxiliary.
struct Dict {
    int n = 0, m = 0;
    std::vector<int> basic;               // row -> var id
    std::vector<int> nonbasic;            // col -> var id
    std::vector<std::vector<mpq_class>> a;  // m x |nonbasic|: x_B[i] = b[i] - sum a[i][j] x_N[j]
    std::vector<mpq_class> b;
    std::vector<mpq_class> cbar;          // objective z = v + sum cbar[j] x_N[j]
    mpq_class v = 0;

    void pivot(int r, int c) {
        mpq_class p = a[r][c];
        int k = int(nonbasic.size());
        // Row r: express entering variable in terms of the rest.
        std::vector<mpq_class> row(k);
        mpq_class rb = b[r] / p;
        for (int j = 0; j < k; ++j) row[j] = a[r][j] / p;
        row[c] = mpq_class(1) / p;
        for (int i = 0; i < m; ++i) {
            if (i == r) continue;
            mpq_class f = a[i][c];
            if (f == 0) continue;
            b[i] -= f * rb;
            for (int j = 0; j < k; ++j)
                if (j != c) a[i][j] -= f * row[j];
            a[i][c] = -f * row[c];
        }
        mpq_class f = cbar[c];
        if (f != 0) {
            v += f * rb;
            for (int j = 0; j < k; ++j)
                if (j != c) cbar[j] -= f * row[j];
            cbar[c] = -f * row[c];
        }
        b[r] = rb;
        for (int j = 0; j < k; ++j) a[r][j] = row[j];
        a[r][c] = row[c];
        std::swap(basic[r], nonbasic[c]);
        // After the swap the column c now holds coefficients of the leaving
        // variable; the dictionary update above already accounts for it.
    }

    // Bland's rule simplex on the current dictionary. Returns false if
    // unbounded.
    bool optimize() {
        while (true) {
            int c = -1, cvar = -1;
            for (size_t j = 0; j < nonbasic.size(); ++j)
                if (cbar[j] > 0 && (cvar < 0 || nonbasic[j] < cvar)) {
                    c = int(j);
                    cvar = nonbasic[j];
                }
            if (c < 0) return true;
            int r = -1, rvar = -1;
            mpq_class best;
            for (int i = 0; i < m; ++i) {
                if (a[i][c] > 0) {
                    mpq_class ratio = b[i] / a[i][c];
                    if (r < 0 || ratio < best || (ratio == best && basic[i] < rvar)) {
                        r = i;
                        best = ratio;
                        rvar = basic[i];
                    }
                }
            }
            if (r < 0) return false;
            pivot(r, c);
        }
    }
};

}  // namespace

LPResult solve_lp(const LinearProgram& lp) {
    int m = int(lp.A.size());
    int n = int(lp.c.size());
    for (const auto& row : lp.A)
        if (int(row.size()) != n) fail(ErrorCode::DimensionMismatch, "LP row length mismatch");
    if (int(lp.b.size()) != m) fail(ErrorCode::DimensionMismatch, "LP rhs length mismatch");

    Dict d;
    d.n = n;
    d.m = m;
    d.basic.resize(m);
    d.nonbasic.resize(n);
    d.a.assign(m, std::vector<mpq_class>(n));
    d.b = lp.b;
    for (int i = 0; i < m; ++i) d.basic[i] = n + i;
    for (int j = 0; j < n; ++j) d.nonbasic[j] = j;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) d.a[i][j] = lp.A[i][j];

    bool need_phase1 = false;
    for (int i = 0; i < m; ++i)
        if (d.b[i] < 0) need_phase1 = true;

    if (need_phase1) {
        // Auxiliary variable x_aux with coefficient -1 in every row;
        // maximize -x_aux.
        int aux = n + m;
        for (int i = 0; i < m; ++i) d.a[i].push_back(-1);
        d.nonbasic.push_back(aux);
        d.cbar.assign(n + 1, 0);
        d.cbar[n] = -1;
        d.v = 0;
        // Initial pivot: aux enters, most negative b leaves.
        int r = 0;
        for (int i = 1; i < m; ++i)
            if (d.b[i] < d.b[r]) r = i;
        d.pivot(r, n);
        if (!d.optimize()) fail(ErrorCode::InternalError, "phase-1 LP unbounded");
        if (d.v != 0) {
            LPResult res;
            res.status = LPStatus::Infeasible;
            return res;
        }
        // Drive aux out of the basis if it lingers at value zero.
        for (int i = 0; i < m; ++i)
            if (d.basic[i] == aux) {
                int c = -1;
                for (size_t j = 0; j < d.nonbasic.size(); ++j)
                    if (d.a[i][j] != 0) {
                        c = int(j);
                        break;
                    }
                if (c < 0) fail(ErrorCode::InternalError, "cannot drive auxiliary variable out");
                d.pivot(i, c);
                break;
            }
        // Drop the aux column.
        int auxcol = -1;
        for (size_t j = 0; j < d.nonbasic.size(); ++j)
            if (d.nonbasic[j] == aux) auxcol = int(j);
        if (auxcol < 0) fail(ErrorCode::InternalError, "auxiliary variable not nonbasic");
        for (int i = 0; i < m; ++i) d.a[i].erase(d.a[i].begin() + auxcol);
        d.nonbasic.erase(d.nonbasic.begin() + auxcol);
        // Re-express the real objective through the current dictionary.
        d.cbar.assign(d.nonbasic.size(), 0);
        d.v = 0;
        auto orig_c = [&](int var) { return var < n ? lp.c[var] : mpq_class(0); };
        for (size_t j = 0; j < d.nonbasic.size(); ++j) d.cbar[j] += orig_c(d.nonbasic[j]);
        for (int i = 0; i < m; ++i) {
            mpq_class ci = orig_c(d.basic[i]);
            if (ci == 0) continue;
            d.v += ci * d.b[i];
            for (size_t j = 0; j < d.nonbasic.size(); ++j) d.cbar[j] -= ci * d.a[i][j];
        }
    } else {
        d.cbar.assign(n, 0);
        for (int j = 0; j < n; ++j) d.cbar[j] = lp.c[j];
    }

    LPResult res;
    if (!d.optimize()) {
        res.status = LPStatus::Unbounded;
        return res;
    }
    res.status = LPStatus::Optimal;
    res.value = d.v;
    res.x.assign(n, 0);
    for (int i = 0; i < m; ++i)
        if (d.basic[i] < n) res.x[d.basic[i]] = d.b[i];
    return res;
}

}  // namespace sfh

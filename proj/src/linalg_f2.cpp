#include "sfh/linalg_f2.hpp"

#include <algorithm>

#include "sfh/errors.hpp"

namespace sfh {

BitVec SparseMatrixF2::column(int c) const {
    BitVec v(rows);
    for (auto it = entries.lower_bound({0, 0}); it != entries.end(); ++it)
        if (it->second == c) v.flip(it->first);
    return v;
}

SparseMatrixF2 SparseMatrixF2::transpose() const {
    SparseMatrixF2 t(cols, rows);
    for (auto& [r, c] : entries) t.entries.insert({c, r});
    return t;
}

SparseMatrixF2 SparseMatrixF2::multiply(const SparseMatrixF2& rhs) const {
    if (cols != rhs.rows) fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    SparseMatrixF2 out(rows, rhs.cols);
    // columns of rhs pushed through this
    std::vector<std::vector<int>> col_of_this(cols);
    for (auto& [r, c] : entries) col_of_this[c].push_back(r);
    for (int j = 0; j < rhs.cols; ++j) {
        BitVec acc(rows);
        for (auto& [r, c] : rhs.entries)
            if (c == j)
                for (int i : col_of_this[r]) acc.flip(i);
        for (int i : acc.support()) out.entries.insert({i, j});
    }
    return out;
}

BitVec SparseMatrixF2::apply(const BitVec& v) const {
    BitVec out(rows);
    for (auto& [r, c] : entries)
        if (v.get(c)) out.flip(r);
    return out;
}

SparseMatrixF2 SparseMatrixF2::identity(int n) {
    SparseMatrixF2 m(n, n);
    for (int i = 0; i < n; ++i) m.entries.insert({i, i});
    return m;
}

SparseMatrixF2 SparseMatrixF2::kronecker(const SparseMatrixF2& a, const SparseMatrixF2& b) {
    SparseMatrixF2 out(a.rows * b.rows, a.cols * b.cols);
    for (auto& [ra, ca] : a.entries)
        for (auto& [rb, cb] : b.entries)
            out.entries.insert({ra * b.rows + rb, ca * b.cols + cb});
    return out;
}

namespace {

// Insert v into an echelon set keyed by lowest set bit; returns the residue
// after reduction (zero if dependent). aux travels with v under the same
// row operations when provided.
struct Echelon {
    // pivot -> (vector, aux)
    std::vector<std::pair<BitVec, BitVec>> rows;

    // Reduces v (and aux alongside) by existing rows; does not insert.
    void reduce(BitVec& v, BitVec* aux) const {
        bool changed = true;
        while (changed) {
            changed = false;
            int lo = v.lowest();
            if (lo < 0) return;
            for (auto& [rv, ra] : rows) {
                int rlo = rv.lowest();
                if (rlo >= 0 && v.get(rlo)) {
                    v ^= rv;
                    if (aux) *aux ^= ra;
                    changed = true;
                    break;
                }
            }
        }
    }
    bool insert(BitVec v, BitVec aux) {
        reduce(v, &aux);
        if (!v.any()) return false;
        rows.push_back({v, aux});
        // keep rows sorted by pivot for determinism
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            return a.first.lowest() < b.first.lowest();
        });
        return true;
    }
};

}  // namespace

int f2_rank(const SparseMatrixF2& m) {
    Echelon e;
    int r = 0;
    for (int j = 0; j < m.cols; ++j)
        if (e.insert(m.column(j), BitVec(0))) ++r;
    return r;
}

std::vector<BitVec> f2_kernel(const SparseMatrixF2& m) {
    // Column-reduce while tracking the combination of original columns.
    Echelon e;
    std::vector<BitVec> kernel;
    for (int j = 0; j < m.cols; ++j) {
        BitVec col = m.column(j);
        BitVec comb(m.cols);
        comb.set(j, true);
        e.reduce(col, &comb);
        if (!col.any())
            kernel.push_back(comb);
        else
            e.rows.push_back({col, comb});
        std::sort(e.rows.begin(), e.rows.end(), [](const auto& a, const auto& b) {
            return a.first.lowest() < b.first.lowest();
        });
    }
    return kernel;
}

F2Homology::F2Homology(const SparseMatrixF2& boundary, const SparseMatrixF2& next_boundary) {
    if (boundary.cols != next_boundary.rows)
        fail(ErrorCode::DimensionMismatch, "boundary/next_boundary shapes incompatible");
    if (!boundary.multiply(next_boundary).is_zero())
        fail(ErrorCode::NotAChainComplex, "boundary composed with next_boundary is nonzero");
    n_ = boundary.cols;
    boundary_ = boundary;

    // Image echelon first (aux coordinates all zero: boundaries vanish in
    // homology), then kernel vectors pick up fresh coordinates.
    Echelon e;
    for (int j = 0; j < next_boundary.cols; ++j)
        e.insert(next_boundary.column(j), BitVec(n_ + 1));  // aux sized later; placeholder

    std::vector<BitVec> ker = f2_kernel(boundary);
    // First pass to learn the rank so homology-coordinate vectors can be sized.
    Echelon probe = e;
    std::vector<BitVec> reps;
    for (const BitVec& k : ker) {
        BitVec v = k;
        probe.reduce(v, nullptr);
        if (v.any()) {
            reps.push_back(v);
            probe.rows.push_back({v, BitVec(0)});
            std::sort(probe.rows.begin(), probe.rows.end(), [](const auto& a, const auto& b) {
                return a.first.lowest() < b.first.lowest();
            });
        }
    }
    rank_ = int(reps.size());
    basis_ = reps;

    // Rebuild the echelon with correctly sized coordinate tracking.
    echelon_.clear();
    for (int j = 0; j < next_boundary.cols; ++j) {
        BitVec v = next_boundary.column(j);
        BitVec aux(rank_);
        Echelon tmp;
        tmp.rows = echelon_;
        tmp.reduce(v, &aux);
        if (v.any()) {
            echelon_.push_back({v, aux});
            std::sort(echelon_.begin(), echelon_.end(), [](const auto& a, const auto& b) {
                return a.first.lowest() < b.first.lowest();
            });
        }
    }
    for (int i = 0; i < rank_; ++i) {
        BitVec v = basis_[i];
        BitVec aux(rank_);
        aux.set(i, true);
        Echelon tmp;
        tmp.rows = echelon_;
        tmp.reduce(v, &aux);
        if (!v.any()) fail(ErrorCode::InternalError, "homology representative became dependent");
        echelon_.push_back({v, aux});
        std::sort(echelon_.begin(), echelon_.end(), [](const auto& a, const auto& b) {
            return a.first.lowest() < b.first.lowest();
        });
    }
}

BitVec F2Homology::project(const BitVec& v) const {
    if (v.size() != n_) fail(ErrorCode::DimensionMismatch, "projecting a vector of wrong length");
    if (boundary_.apply(v).any())
        fail(ErrorCode::NotAChainComplex, "projecting a chain that is not a cycle");
    BitVec w = v;
    BitVec aux(rank_);
    Echelon tmp;
    tmp.rows = echelon_;
    tmp.reduce(w, &aux);
    if (w.any()) fail(ErrorCode::InternalError, "cycle not reducible by kernel echelon");
    return aux;
}

}  // namespace sfh

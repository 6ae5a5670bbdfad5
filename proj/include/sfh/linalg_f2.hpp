#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace sfh {

// Dense bit vector over GF(2). All SFH matrices are tiny; this keeps the
// reduction code simple and deterministic.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(int n) : n_(n), w_((n + 63) / 64, 0) {}
    int size() const { return n_; }
    bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i, bool v) {
        if (v)
            w_[i >> 6] |= uint64_t(1) << (i & 63);
        else
            w_[i >> 6] &= ~(uint64_t(1) << (i & 63));
    }
    void flip(int i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }
    BitVec& operator^=(const BitVec& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool any() const {
        for (uint64_t w : w_)
            if (w) return true;
        return false;
    }
    // Smallest index of a set bit, or -1.
    int lowest() const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return int(k * 64 + __builtin_ctzll(w_[k]));
        return -1;
    }
    std::vector<int> support() const {
        std::vector<int> s;
        for (int i = 0; i < n_; ++i)
            if (get(i)) s.push_back(i);
        return s;
    }

  private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

struct SparseMatrixF2 {
    int rows = 0;
    int cols = 0;
    std::set<std::pair<int, int>> entries;  // (row, col), no duplicates by construction

    SparseMatrixF2() = default;
    SparseMatrixF2(int r, int c) : rows(r), cols(c) {}

    void add(int r, int c) {  // toggle (we work mod 2)
        auto it = entries.find({r, c});
        if (it == entries.end())
            entries.insert({r, c});
        else
            entries.erase(it);
    }
    bool get(int r, int c) const { return entries.count({r, c}) != 0; }
    bool is_zero() const { return entries.empty(); }

    BitVec column(int c) const;
    SparseMatrixF2 transpose() const;
    SparseMatrixF2 multiply(const SparseMatrixF2& rhs) const;  // this * rhs
    BitVec apply(const BitVec& v) const;
    bool operator==(const SparseMatrixF2& o) const {
        return rows == o.rows && cols == o.cols && entries == o.entries;
    }

    static SparseMatrixF2 identity(int n);
    // Kronecker product, row/col index = i_left * dim_right + i_right.
    static SparseMatrixF2 kronecker(const SparseMatrixF2& a, const SparseMatrixF2& b);
};

int f2_rank(const SparseMatrixF2& m);
// Basis of ker(m), deterministic (free columns in increasing order,
// smallest-index pivoting).
std::vector<BitVec> f2_kernel(const SparseMatrixF2& m);

// ker(boundary)/im(next_boundary) with a projection map onto the chosen basis.
class F2Homology {
  public:
    // boundary: k x n (n = dimension of the group whose homology we take);
    // next_boundary: n x m. Throws NotAChainComplex if boundary*next != 0.
    F2Homology(const SparseMatrixF2& boundary, const SparseMatrixF2& next_boundary);

    int rank() const { return rank_; }
    const std::vector<BitVec>& basis() const { return basis_; }
    int dim() const { return n_; }
    // Coordinates of a cycle in the homology basis. Throws if v is not a cycle.
    BitVec project(const BitVec& v) const;

  private:
    int n_ = 0;
    int rank_ = 0;
    std::vector<BitVec> basis_;  // representative cycles
    SparseMatrixF2 boundary_;
    // echelon rows used by project(): reduced vectors paired with the
    // homology coordinates accumulated while forming them
    std::vector<std::pair<BitVec, BitVec>> echelon_;
};

}  // namespace sfh

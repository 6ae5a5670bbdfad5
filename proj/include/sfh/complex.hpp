#pragma once

#include <gmpxx.h>

#include <vector>

#include "sfh/diagram.hpp"
#include "sfh/domains.hpp"
#include "sfh/linalg_f2.hpp"

namespace sfh {

// The SFH chain complex of a nice admissible diagram. boundary(y, x) = 1
// means y appears in dx; the matrix is block diagonal over Spin^c classes.
struct ChainComplex {
    std::vector<Generator> gens;
    SparseMatrixF2 boundary;
    SpincPartition spinc;
    std::vector<mpz_class> grading;  // relative within each class, base generator at 0
    std::vector<mpz_class> delta;    // grading divisor per class; 0 = absolute
};

ChainComplex differential_matrix(const Diagram& diag);

struct SFHResult {
    int total_rank = 0;
    std::vector<int> class_rank;
    std::vector<std::vector<BitVec>> class_basis;  // homology cycles over all generators
};

SFHResult compute_sfh(const Diagram& diag);
SFHResult compute_sfh(const ChainComplex& cx);

struct GradingResult {
    std::vector<int> members;        // generator indices of the class
    std::vector<mpz_class> grading;  // parallel to members
    mpz_class delta = 0;
};

GradingResult relative_grading(const ChainComplex& cx, int class_id);

// On a translate-type pair diagram (each curve pair bounds two bigons), pick
// per pair the crossing whose two bigons sit in its NE/SW quadrants -- the
// point both positive bigons emanate from -- and return the product generator.
Generator select_theta(const Diagram& diag);

}  // namespace sfh

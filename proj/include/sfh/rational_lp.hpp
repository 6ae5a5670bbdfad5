#pragma once

#include <gmpxx.h>

#include <vector>

namespace sfh {

// Exact rational linear program in standard inequality form:
//   maximize c^T x  subject to  A x <= b,  x >= 0.
// Dense two-phase simplex with Bland's rule; everything is exact, so the
// admissibility verdicts it backs are certificates, not heuristics.
struct LinearProgram {
    std::vector<std::vector<mpq_class>> A;
    std::vector<mpq_class> b;
    std::vector<mpq_class> c;
};

enum class LPStatus { Optimal, Unbounded, Infeasible };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    mpq_class value = 0;
    std::vector<mpq_class> x;
};

LPResult solve_lp(const LinearProgram& lp);

}  // namespace sfh

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sfh/complex.hpp"
#include "sfh/errors.hpp"
#include "sfh/triple.hpp"

namespace sfh {

// A chain map between two diagram complexes together with its descent to
// homology. The homology matrix concatenates the Spin^c class bases of both
// sides in class order; routing lists the target classes each source class
// actually hits.
struct InducedMap {
    Diagram source_diag, target_diag;
    ChainComplex source_cx, target_cx;
    SFHResult source, target;
    SparseMatrixF2 chain_matrix;  // target gens x source gens
    SparseMatrixF2 matrix;        // target homology basis x source homology basis
    std::map<int, std::vector<int>> routing;
    nlohmann::json provenance;
};

// Verify `chain` commutes with the differentials and project it to homology.
InducedMap descend_chain_map(const Diagram& src, const Diagram& tgt,
                             const SparseMatrixF2& chain, nlohmann::json provenance,
                             ErrorCode on_fail = ErrorCode::InternalError);

InducedMap one_handle_map(const Diagram& diag, const std::string& r1, const std::string& r2);

// The annulus to cancel is named by its circle pair; the parameterless form
// reads it from markings["annulus"].
InducedMap three_handle_map(const Diagram& diag, int alpha_circle, int beta_circle);
InducedMap three_handle_map(const Diagram& diag);

// Spin^c classes of triangle domains: two counted domains are equivalent iff
// their difference is an integer combination of (lifted) doubly-periodic
// domains of the three pair sub-diagrams.
struct TriangleSpincClass {
    int id = -1;
};

InducedMap triangle_map(const Diagram& triple, const Generator& theta,
                        std::optional<TriangleSpincClass> spinc_filter = std::nullopt);

// Number of triangle Spin^c classes a triple/theta supports (for filtering).
int triangle_class_count(const Diagram& triple, const Generator& theta);

InducedMap link_surgery_map(const Diagram& triple, const std::vector<int>& surgery_indices);

// maps[0] applied first.
InducedMap compose_special(const std::vector<InducedMap>& maps);

// Kronecker pairing between CF(Σ) and CF(−Σ); generators correspond by
// crossing ids.
struct DualityPairing {
    Diagram diag, reversed;
    int pair(const BitVec& a, const BitVec& b) const;
};

DualityPairing duality_pairing(const Diagram& diag);

}  // namespace sfh

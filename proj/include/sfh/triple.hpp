#pragma once

#include <map>
#include <string>
#include <vector>

#include "sfh/diagram.hpp"

namespace sfh {

// Per-crossing compass frame recovered from the boundary words: for every
// incident segment-end, the ray (E,N,W,S) it occupies, consistent with the
// stored quadrants. Used by the translate construction.
struct CrossingFrame {
    // key: (segment index, end-is-head); value: ray 0=E,1=N,2=W,3=S
    std::map<std::pair<int, bool>, int> end_ray;
};

std::vector<CrossingFrame> crossing_frames(const Diagram& diag);

// Extract the pair diagram on two of a triple's families, merging regions
// across the removed family. famX becomes the alpha family, famY the beta
// family; crossing ids and suture names survive, merged regions take the
// smallest constituent id.
Diagram pair_subdiagram(const Diagram& triple, int famX, int famY,
                        std::vector<int>* group_of = nullptr);

// Pairwise sub-diagram validity of a triple (each extraction revalidates).
void validate_triple(const Diagram& triple);

// Two-bigon translate normal form: every delta_i is a push-off of beta_i on
// its left side with one finger crossing beta_i twice (in segment 0). The
// markings carry the finger crossing names per index.
Diagram build_translate_triple(const Diagram& pair);

// Subordinate-condition check for a user triple: indices in surgery_indices
// must have |beta_i ∩ delta_i| = 1; all others must form translate pairs
// (two crossings, two bigons in the (beta,delta) sub-diagram). Returns the
// theta generator (triple crossing indices).
Generator subordinate_theta(const Diagram& triple, const std::vector<int>& surgery_indices);

}  // namespace sfh

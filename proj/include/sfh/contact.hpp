#pragma once

#include "sfh/cobordism.hpp"

namespace sfh {

// A distinguished generator on a diagram in the reversed-orientation
// convention. Valid when every region in an outgoing quadrant (NE/SW) of
// each coordinate touches the suture; all positive domains leave through
// those quadrants, so a valid marking is automatically a cycle.
struct EHMarking {
    Diagram diag;
    Generator x;
};

EHMarking eh_marking(const Diagram& diag, const std::vector<std::string>& crossing_ids);
void validate_eh_marking(const EHMarking& m);

struct EHClass {
    BitVec coords;        // concatenated class-basis coordinates, as in InducedMap
    int spinc_class = 0;  // class of the marked generator
    bool zero = true;
};

EHClass eh_class(const EHMarking& m);

// Homology coordinates of a chain-level cycle, in the same concatenated
// Spin^c class basis that InducedMap matrices act on.
BitVec homology_coordinates(const ChainComplex& cx, const SFHResult& sfh, const BitVec& cycle);

// Gluing data: the big diagram extends the flagged sub-diagram by whole
// surface components; x2 marks one point per complement circle pair and
// must satisfy the EHMarking outgoing condition inside the big diagram.
// Isolated components of the complement are declared as standard disk
// factors and only tracked in the provenance.
struct GluingData {
    Diagram big;
    std::vector<std::string> sub_regions;
    std::vector<std::string> x2;  // crossing ids of the complement marking
    int isolated_disks = 0;
};

// Reads sub_regions / x2 / isolated_disks from markings["glue"].
GluingData gluing_data(const Diagram& big);

// Extract the flagged sub-diagram; also the source of the gluing map.
Diagram sub_diagram(const GluingData& data);

InducedMap gluing_map(const GluingData& data);

struct PlanStep {
    enum Kind { Glue, OneHandle, LinkSurgery, ThreeHandle };
    Kind kind = OneHandle;
    GluingData glue;               // Glue
    std::string r1, r2;            // OneHandle feet
    Diagram triple;                // LinkSurgery
    std::vector<int> indices;      // LinkSurgery
    int alpha_circle = -1, beta_circle = -1;  // ThreeHandle; -1 = use marking
};

struct PlanResult {
    InducedMap map;                 // the composite
    std::vector<InducedMap> steps;  // per-step maps, in execution order
    nlohmann::json report;          // step provenance and class routing
};

PlanResult execute_plan(const Diagram& start, const std::vector<PlanStep>& steps);

}  // namespace sfh

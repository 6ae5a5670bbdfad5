#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace sfh {

// Internal construction helper: a diagram described by circuits and region
// boundary words only. Crossing quadrants are inferred from the words (each
// crossing admits exactly one consistent NE/NW/SW/SE assignment up to the
// 180-degree symmetry, which we fix by orienting the vertical circuit
// upward when possible).
struct RegionSpec {
    int genus = 0;
    bool touches_suture = false;
    std::vector<std::vector<std::string>> words;  // arc tokens, same syntax as files
};

struct DiagramSpec {
    int d = 0;
    bool triple = false;  // emit a delta family even when it has no circles
    std::vector<std::vector<std::string>> alphas, betas, deltas;
    std::map<std::string, RegionSpec> regions;
    nlohmann::json markings;  // optional
};

// Produces the canonical JSON form (quadrants filled in); throws
// InconsistentCellStructure if no consistent quadrant assignment exists.
nlohmann::json build_diagram_json(const DiagramSpec& spec);

}  // namespace sfh

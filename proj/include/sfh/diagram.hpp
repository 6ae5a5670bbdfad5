#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace sfh {

// Curve families. Diagrams carry two (alpha, beta) or three (alpha, beta,
// delta) families; sutures are boundary circles of the surface.
inline constexpr int FAM_A = 0;
inline constexpr int FAM_B = 1;
inline constexpr int FAM_D = 2;

// One entry of a region boundary word: either a whole suture circle or an
// oriented curve segment.
struct OArc {
    bool is_suture = false;
    int suture = -1;   // index into Diagram::sutures
    int seg = -1;      // index into Diagram::segments
    bool fwd = true;   // orientation along the circuit direction
    bool operator==(const OArc&) const = default;
};

struct Segment {
    int fam = -1;
    int circle = -1;
    int index = -1;      // position along the circuit; segment goes c[index] -> c[index+1]
    int tail = -1;       // crossing index; -1 when the circuit has no crossings
    int head = -1;
    int left = -1;       // region carrying the forward occurrence
    int right = -1;      // region carrying the backward occurrence
    bool closed() const { return tail < 0; }
};

// Quadrants in the fixed cyclic order: NE, NW, SW, SE. The lower-numbered
// family is locally horizontal.
struct Crossing {
    std::string id;
    std::array<int, 4> quad = {-1, -1, -1, -1};  // region indices
    int fam_h = -1, circ_h = -1, pos_h = -1;
    int fam_v = -1, circ_v = -1, pos_v = -1;
    int circle_of(int fam) const { return fam == fam_h ? circ_h : (fam == fam_v ? circ_v : -1); }
    bool on_family(int fam) const { return fam == fam_h || fam == fam_v; }
};

struct Region {
    std::string id;
    int genus = 0;
    bool touches_suture = false;
    std::vector<std::vector<OArc>> words;
    int corner_count = 0;  // derived: curve-type transitions in the words
    mpq_class chi() const { return mpq_class(2 - 2 * genus - int(words.size())); }
};

// A generator: one crossing per circle of each of two chosen families,
// stored as the crossing index per circle of the first family (sorted
// crossing index list is derived).
struct Generator {
    std::vector<int> crossings;  // sorted crossing indices, size d
    bool operator==(const Generator&) const = default;
    bool operator<(const Generator& o) const { return crossings < o.crossings; }
};

class Diagram {
  public:
    int nfam = 2;
    int d = 0;
    // circuits[fam][circle] = cyclic list of crossing ids
    std::vector<std::vector<std::vector<std::string>>> circuits;
    std::vector<Crossing> crossings;
    std::vector<std::string> crossing_ids;  // sorted; parallel to crossings
    std::vector<Region> regions;
    std::vector<std::string> region_ids;    // sorted; parallel to regions
    std::vector<Segment> segments;
    std::vector<std::string> sutures;       // sorted suture ids
    std::vector<int> suture_region;         // region index per suture
    nlohmann::json markings;                // pass-through marking block

    int crossing_index(const std::string& id) const;
    int region_index(const std::string& id) const;
    int segment_index(int fam, int circle, int index) const;
    int num_circles(int fam) const { return int(circuits[fam].size()); }
    const std::vector<std::string>& circuit(int fam, int circle) const {
        return circuits[fam][circle];
    }
    // interior = not touching the suture; these index Domain coefficients
    const std::vector<int>& interior_regions() const { return interior_; }
    int interior_pos(int region) const { return interior_pos_[region]; }

    std::string arc_name(const OArc& a) const;
    std::string describe_generator(const Generator& g) const;

    mpq_class euler_characteristic() const;

    bool is_pair() const { return nfam == 2; }

  private:
    friend Diagram validate_diagram(const nlohmann::json& raw);
    std::vector<int> interior_;
    std::vector<int> interior_pos_;
    std::map<std::string, int> crossing_idx_;
    std::map<std::string, int> region_idx_;
    std::map<std::tuple<int, int, int>, int> segment_idx_;
    void build_index_tables();
    void validate();
};

// Parse + validate the canonical textual (JSON) diagram format. Accepts both
// pair diagrams (alphas/betas) and triples (alphas/betas/deltas).
Diagram validate_diagram(const nlohmann::json& raw);
Diagram load_diagram(const std::string& path);
nlohmann::json diagram_to_json(const Diagram& diag);

// All perfect matchings of crossings between the circles of famX and famY,
// lexicographic by circle index then crossing id.
std::vector<Generator> enumerate_generators(const Diagram& diag, int famX = FAM_A,
                                            int famY = FAM_B);

Diagram reverse_orientation(const Diagram& diag);
Diagram disjoint_union(const Diagram& a, const Diagram& b);

struct OneHandleResult {
    Diagram diagram;
    std::string theta;  // the new distinguished crossing
    std::string low;    // the other new crossing
};
OneHandleResult attach_onehandle_annulus(const Diagram& diag, const std::string& r1,
                                         const std::string& r2);

struct NiceResult {
    bool nice = true;
    std::string witness;  // first offending region when not nice
};
NiceResult is_nice(const Diagram& diag);

}  // namespace sfh

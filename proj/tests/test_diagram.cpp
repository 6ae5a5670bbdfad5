#include "doctest.h"
#include "sfh/builder.hpp"
#include "sfh/diagram.hpp"
#include "sfh/errors.hpp"

#include <cstdlib>
#include <fstream>

using namespace sfh;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) {
    const char* dir = std::getenv("SFH_FIXTURES");
    REQUIRE(dir != nullptr);
    return std::string(dir) + "/" + name;
}

json fixture_json(const std::string& name) {
    std::ifstream in(fixture(name));
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const EngineError& e) {
        return e.code();
    }
    return ErrorCode::InternalError;  // no throw: callers expect a failure
}

}  // namespace

TEST_CASE("disk diagram validates and has one empty generator") {
    Diagram d = load_diagram(fixture("disk.json"));
    CHECK(d.d == 0);
    CHECK(d.euler_characteristic() == 1);
    CHECK(d.sutures == std::vector<std::string>{"S0"});
    auto gens = enumerate_generators(d);
    REQUIRE(gens.size() == 1);
    CHECK(gens[0].crossings.empty());
    CHECK(d.describe_generator(gens[0]) == "()");
    CHECK(is_nice(d).nice);
}

TEST_CASE("annulus diagram validates with two generators") {
    Diagram d = load_diagram(fixture("onehandle_annulus.json"));
    CHECK(d.d == 1);
    CHECK(d.euler_characteristic() == 0);
    CHECK(d.sutures.size() == 2);
    auto gens = enumerate_generators(d);
    REQUIRE(gens.size() == 2);
    CHECK(d.describe_generator(gens[0]) == "p");
    CHECK(d.describe_generator(gens[1]) == "q");
    CHECK(is_nice(d).nice);
    // interior regions are the two bigons
    CHECK(d.interior_regions().size() == 2);
}

TEST_CASE("builder infers the annulus quadrants from the words alone") {
    json fx = fixture_json("onehandle_annulus.json");
    DiagramSpec spec;
    spec.d = 1;
    spec.alphas = {{"p", "q"}};
    spec.betas = {{"p", "q"}};
    for (const auto& [id, reg] : fx["regions"].items()) {
        RegionSpec rs;
        rs.genus = reg["genus"].get<int>();
        rs.touches_suture = reg["touches_suture"].get<bool>();
        for (const auto& w : reg["boundary_words"])
            rs.words.push_back(w.get<std::vector<std::string>>());
        spec.regions[id] = rs;
    }
    json built = build_diagram_json(spec);
    CHECK(built["crossings"] == fx["crossings"]);
    Diagram d = validate_diagram(built);
    CHECK(enumerate_generators(d).size() == 2);
}

TEST_CASE("diagram json round-trip is byte-identical") {
    for (const char* name : {"disk.json", "onehandle_annulus.json"}) {
        Diagram d = load_diagram(fixture(name));
        json j1 = diagram_to_json(d);
        json j2 = diagram_to_json(validate_diagram(j1));
        CHECK(j1.dump() == j2.dump());
    }
}

TEST_CASE("orientation reversal is an involution") {
    for (const char* name : {"disk.json", "onehandle_annulus.json"}) {
        Diagram d = load_diagram(fixture(name));
        Diagram rr = reverse_orientation(reverse_orientation(d));
        CHECK(diagram_to_json(d).dump() == diagram_to_json(rr).dump());
    }
}

TEST_CASE("orientation reversal mirrors quadrants") {
    Diagram d = load_diagram(fixture("onehandle_annulus.json"));
    Diagram r = reverse_orientation(d);
    int p = d.crossing_index("p");
    int rp = r.crossing_index("p");
    CHECK(d.region_ids[d.crossings[p].quad[0]] == r.region_ids[r.crossings[rp].quad[1]]);
    CHECK(d.region_ids[d.crossings[p].quad[3]] == r.region_ids[r.crossings[rp].quad[2]]);
    CHECK(enumerate_generators(r).size() == 2);
}

TEST_CASE("disjoint union multiplies generator counts") {
    Diagram disk = load_diagram(fixture("disk.json"));
    Diagram ann = load_diagram(fixture("onehandle_annulus.json"));
    Diagram u1 = disjoint_union(disk, ann);
    CHECK(u1.d == 1);
    CHECK(enumerate_generators(u1).size() == 2);
    Diagram u2 = disjoint_union(ann, ann);
    CHECK(u2.d == 2);
    CHECK(enumerate_generators(u2).size() == 4);
    CHECK(u2.sutures.size() == 4);
    CHECK(u2.euler_characteristic() == 0);
}

TEST_CASE("one-handle attachment to the disk gives the punctured torus") {
    Diagram disk = load_diagram(fixture("disk.json"));
    OneHandleResult res = attach_onehandle_annulus(disk, "R", "R");
    CHECK(res.diagram.d == 1);
    CHECK(res.theta == "h0.p");
    CHECK(res.low == "h0.q");
    CHECK(enumerate_generators(res.diagram).size() == 2);
    // the tube adds a handle to the surface: genus 1, one suture
    CHECK(res.diagram.euler_characteristic() == -1);
    CHECK(is_nice(res.diagram).nice);
    // attaching both feet to R keeps a single suture-touching region
    int r = res.diagram.region_index("R");
    REQUIRE(r >= 0);
    CHECK(res.diagram.regions[r].touches_suture);
}

TEST_CASE("one-handle feet must touch the suture") {
    Diagram ann = load_diagram(fixture("onehandle_annulus.json"));
    CHECK(code_of([&] { attach_onehandle_annulus(ann, "b1", "n"); }) ==
          ErrorCode::RegionNotOnBoundary);
    CHECK(code_of([&] { attach_onehandle_annulus(ann, "n", "nope"); }) ==
          ErrorCode::MalformedInput);
    // attaching to two distinct legal regions works and raises the genus count
    OneHandleResult res = attach_onehandle_annulus(ann, "n", "s");
    CHECK(res.diagram.d == 2);
    CHECK(enumerate_generators(res.diagram).size() == 4);
}

TEST_CASE("iterated handles get fresh names") {
    Diagram disk = load_diagram(fixture("disk.json"));
    OneHandleResult r1 = attach_onehandle_annulus(disk, "R", "R");
    OneHandleResult r2 = attach_onehandle_annulus(r1.diagram, "R", "R");
    CHECK(r2.theta == "h1.p");
    CHECK(r2.diagram.d == 2);
    CHECK(enumerate_generators(r2.diagram).size() == 4);
}

TEST_CASE("closed surface components are rejected") {
    json j = {{"d", 0},
              {"alphas", json::array()},
              {"betas", json::array()},
              {"crossings", json::object()},
              {"regions",
               {{"T", {{"genus", 1}, {"boundary_words", json::array()}, {"touches_suture", false}}}}}};
    CHECK(code_of([&] { validate_diagram(j); }) == ErrorCode::UnbalancedDiagram);
}

TEST_CASE("homologically dependent families are rejected") {
    // two parallel alpha cores and two parallel beta cores on one annulus:
    // [a0] - [a1] bounds, so the alpha family is dependent in H1
    json j;
    j["d"] = 2;
    j["alphas"] = {json::array(), json::array()};
    j["betas"] = {json::array(), json::array()};
    j["crossings"] = json::object();
    j["regions"] = {
        {"r0", {{"genus", 0}, {"boundary_words", {{"S0"}, {"-A0.0"}}}, {"touches_suture", true}}},
        {"r1", {{"genus", 0}, {"boundary_words", {{"A0.0"}, {"-B0.0"}}}, {"touches_suture", false}}},
        {"r2", {{"genus", 0}, {"boundary_words", {{"B0.0"}, {"-A1.0"}}}, {"touches_suture", false}}},
        {"r3", {{"genus", 0}, {"boundary_words", {{"A1.0"}, {"-B1.0"}}}, {"touches_suture", false}}},
        {"r4", {{"genus", 0}, {"boundary_words", {{"B1.0"}, {"S1"}}}, {"touches_suture", true}}}};
    CHECK(code_of([&] { validate_diagram(j); }) == ErrorCode::UnbalancedDiagram);
}

TEST_CASE("single parallel core pair on an annulus is independent") {
    json j;
    j["d"] = 1;
    j["alphas"] = {json::array()};
    j["betas"] = {json::array()};
    j["crossings"] = json::object();
    j["regions"] = {
        {"n", {{"genus", 0}, {"boundary_words", {{"S0"}, {"-A0.0"}}}, {"touches_suture", true}}},
        {"m", {{"genus", 0}, {"boundary_words", {{"A0.0"}, {"-B0.0"}}}, {"touches_suture", false}}},
        {"s", {{"genus", 0}, {"boundary_words", {{"B0.0"}, {"S1"}}}, {"touches_suture", true}}}};
    Diagram d = validate_diagram(j);
    CHECK(d.euler_characteristic() == 0);
    // no crossings at all: no generators can be formed
    CHECK(enumerate_generators(d).empty());
}

TEST_CASE("validation rejects broken cell structure") {
    json good = fixture_json("onehandle_annulus.json");

    json j = good;
    j["crossings"]["p"][1] = "nowhere";
    CHECK(code_of([&] { validate_diagram(j); }) == ErrorCode::InconsistentCellStructure);

    j = good;
    j["crossings"]["p"] = {"b1", "n", "b2"};
    CHECK(code_of([&] { validate_diagram(j); }) == ErrorCode::MalformedInput);

    j = good;  // quadrant multiplicity off
    j["crossings"]["p"] = {"n", "n", "b2", "s"};
    CHECK(code_of([&] { validate_diagram(j); }) == ErrorCode::InconsistentCellStructure);

    j = good;  // segment used twice with the same orientation
    j["regions"]["b1"]["boundary_words"][0][0] = "A0.1";
    CHECK(code_of([&] { validate_diagram(j); }) == ErrorCode::InconsistentCellStructure);

    j = good;  // word breaks locality
    j["regions"]["n"]["boundary_words"][1] = {"B0.0", "-A0.0"};
    CHECK(code_of([&] { validate_diagram(j); }) == ErrorCode::InconsistentCellStructure);

    j = good;  // touches_suture flag wrong
    j["regions"]["b1"]["touches_suture"] = true;
    CHECK(code_of([&] { validate_diagram(j); }) == ErrorCode::InconsistentCellStructure);

    j = good;  // duplicate suture id
    j["regions"]["s"]["boundary_words"][0] = {"S0"};
    CHECK(code_of([&] { validate_diagram(j); }) == ErrorCode::InconsistentCellStructure);

    j = good;  // family size disagrees with d
    j["d"] = 2;
    CHECK(code_of([&] { validate_diagram(j); }) == ErrorCode::UnbalancedDiagram);

    j = good;  // bad token syntax
    j["regions"]["b1"]["boundary_words"][0][0] = "A0x0";
    CHECK(code_of([&] { validate_diagram(j); }) == ErrorCode::MalformedInput);
}

TEST_CASE("interior region with too many corners is not nice") {
    json j = fixture_json("onehandle_annulus.json");
    j["regions"]["b1"]["genus"] = 1;  // still a valid diagram, but not nice
    Diagram d = validate_diagram(j);
    NiceResult n = is_nice(d);
    CHECK_FALSE(n.nice);
    CHECK(n.witness == "b1");
}

TEST_CASE("euler characteristic matches genus and boundary count") {
    Diagram disk = load_diagram(fixture("disk.json"));
    CHECK(disk.euler_characteristic() == 1);  // genus 0, 1 boundary
    Diagram ann = load_diagram(fixture("onehandle_annulus.json"));
    CHECK(ann.euler_characteristic() == 0);  // genus 0, 2 boundaries
    OneHandleResult g1 = attach_onehandle_annulus(ann, "n", "n");
    CHECK(g1.diagram.euler_characteristic() == -2);  // genus adds when both feet share a region
}

#include "diagram_samples.hpp"
#include "doctest.h"
#include "sfh/complex.hpp"
#include "sfh/errors.hpp"
#include "sfh/triple.hpp"

using namespace sfh;
using samples::fixture;
using samples::wiggle_annulus;

TEST_CASE("translate triple over the one-handle annulus") {
    Diagram ann = fixture("onehandle_annulus.json");
    Diagram t = build_translate_triple(ann);
    REQUIRE(t.nfam == 3);
    validate_triple(t);
    // two beta-delta and two alpha-delta crossings per circle
    int bd = 0, ad = 0;
    for (const Crossing& c : t.crossings) {
        if (c.on_family(FAM_B) && c.on_family(FAM_D)) ++bd;
        if (c.on_family(FAM_A) && c.on_family(FAM_D)) ++ad;
    }
    CHECK(bd == 2);
    CHECK(ad == 2);
    Generator theta = subordinate_theta(t, {});
    CHECK(theta.crossings.size() == 1);
}

TEST_CASE("translate triple over the disk is trivial") {
    Diagram t = build_translate_triple(fixture("disk.json"));
    validate_triple(t);
    CHECK(t.crossings.empty());
    CHECK(subordinate_theta(t, {}).crossings.empty());
}

TEST_CASE("pair extraction undoes the push-off") {
    for (const char* name : {"onehandle_annulus.json", "figure5.json"}) {
        Diagram orig = fixture(name);
        Diagram t = build_translate_triple(orig);
        Diagram ab = pair_subdiagram(t, FAM_A, FAM_B);
        CHECK(ab.crossings.size() == orig.crossings.size());
        CHECK(ab.regions.size() == orig.regions.size());
        CHECK(ab.euler_characteristic() == orig.euler_characteristic());
        CHECK(compute_sfh(ab).total_rank == compute_sfh(orig).total_rank);
        // the push-off is an isotopic copy: same homology on (alpha, delta)
        Diagram ad = pair_subdiagram(t, FAM_A, FAM_D);
        CHECK(compute_sfh(ad).total_rank == compute_sfh(orig).total_rank);
        // each (beta, delta) pair is translate type
        Diagram bd = pair_subdiagram(t, FAM_B, FAM_D);
        Generator th = select_theta(bd);
        CHECK(int(th.crossings.size()) == orig.d);
    }
}

TEST_CASE("wiggle translate triples validate") {
    for (int k = 1; k <= 3; ++k) {
        Diagram t = build_translate_triple(wiggle_annulus(k));
        validate_triple(t);
        CHECK(subordinate_theta(t, {}).crossings.size() == 1);
    }
}

TEST_CASE("declared surgery index must meet delta once") {
    Diagram t = build_translate_triple(fixture("onehandle_annulus.json"));
    try {
        subordinate_theta(t, {0});
        FAIL("expected SubordinateConditionViolated");
    } catch (const EngineError& e) {
        CHECK(e.code() == ErrorCode::SubordinateConditionViolated);
        CHECK(std::string(e.what()).find("= 2") != std::string::npos);
    }
}

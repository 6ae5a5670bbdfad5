#include <map>

#include "diagram_samples.hpp"
#include "doctest.h"
#include "sfh/contact.hpp"
#include "sfh/errors.hpp"

using namespace sfh;
using samples::fixture;

namespace {

// the coordinate of the marked-pair generator whose outgoing quadrants touch
// the suture (the lower of the two annulus intersection points)
std::string low_point(const Diagram& d, int alpha_circle) {
    for (const Crossing& c : d.crossings) {
        if (c.circle_of(FAM_A) != alpha_circle) continue;
        if (d.regions[c.quad[0]].touches_suture && d.regions[c.quad[2]].touches_suture)
            return c.id;
    }
    FAIL("no suture-outgoing point on the circle");
    return {};
}

std::vector<std::string> regions_with_prefix(const Diagram& d, const std::string& pre) {
    std::vector<std::string> out;
    for (const Region& r : d.regions)
        if (r.id.rfind(pre, 0) == 0) out.push_back(r.id);
    return out;
}

std::vector<std::string> all_regions(const Diagram& d) {
    std::vector<std::string> out;
    for (const Region& r : d.regions) out.push_back(r.id);
    return out;
}

}  // namespace

TEST_CASE("figure-5 marked generator is a cycle with vanishing class") {
    Diagram d = fixture("figure5.json");
    EHMarking m = eh_marking(d, {"x"});
    validate_eh_marking(m);
    EHClass eh = eh_class(m);
    CHECK(eh.zero);
    CHECK(!eh.coords.any());
}

TEST_CASE("non-cycle markings are rejected") {
    Diagram d = fixture("figure5.json");
    for (const char* id : {"y", "z"}) {
        try {
            validate_eh_marking(eh_marking(d, {id}));
            FAIL("expected MarkingNotCycleCertified");
        } catch (const EngineError& e) {
            CHECK(e.code() == ErrorCode::MarkingNotCycleCertified);
        }
    }
}

TEST_CASE("disk empty marking is vacuously valid and nonzero") {
    Diagram d = fixture("disk.json");
    EHClass eh = eh_class(eh_marking(d, {}));
    CHECK(!eh.zero);
    CHECK(eh.coords.size() == 1);
}

TEST_CASE("annulus lower point gives a nonzero class, upper is rejected") {
    Diagram d = fixture("onehandle_annulus.json");
    EHClass eh = eh_class(eh_marking(d, {"q"}));
    CHECK(!eh.zero);
    try {
        validate_eh_marking(eh_marking(d, {"p"}));
        FAIL("expected MarkingNotCycleCertified");
    } catch (const EngineError& e) {
        CHECK(e.code() == ErrorCode::MarkingNotCycleCertified);
    }
}

TEST_CASE("trivial collar gluing is the identity") {
    for (const char* name : {"onehandle_annulus.json", "figure5.json"}) {
        Diagram d = fixture(name);
        GluingData g{d, all_regions(d), {}, 0};
        InducedMap m = gluing_map(g);
        CHECK(m.matrix == SparseMatrixF2::identity(m.source.total_rank));
    }
    // a product collar carried by a rank-1 disk component
    Diagram big = disjoint_union(fixture("onehandle_annulus.json"), fixture("disk.json"));
    GluingData g{big, regions_with_prefix(big, "l:"), {}, 1};
    InducedMap m = gluing_map(g);
    CHECK(m.source.total_rank == 2);
    CHECK(m.matrix == SparseMatrixF2::identity(2));
    CHECK(m.provenance.at("isolated_disks") == 1);
}

TEST_CASE("empty sub-diagram sends 1 to the EH class") {
    Diagram ann = fixture("onehandle_annulus.json");
    InducedMap m = gluing_map(GluingData{ann, {}, {"q"}, 0});
    CHECK(m.source.total_rank == 1);
    CHECK(m.matrix.column(0) == eh_class(eh_marking(ann, {"q"})).coords);

    Diagram f5 = fixture("figure5.json");
    InducedMap z = gluing_map(GluingData{f5, {}, {"x"}, 0});
    CHECK(z.matrix.is_zero());
}

TEST_CASE("nested gluings compose to the gluing of the union") {
    Diagram u2 = samples::union_annuli({"a", "b"});
    Diagram u3 = samples::union_annuli({"a", "b", "c"});
    std::string lb = low_point(u2, 1), lc = low_point(u3, 2);
    InducedMap m1 = gluing_map(GluingData{u2, regions_with_prefix(u2, "a."), {lb}, 0});
    std::vector<std::string> ab = regions_with_prefix(u3, "a.");
    std::vector<std::string> brs = regions_with_prefix(u3, "b.");
    ab.insert(ab.end(), brs.begin(), brs.end());
    InducedMap m2 = gluing_map(GluingData{u3, ab, {lc}, 0});
    InducedMap comp = compose_special({m1, m2});
    InducedMap whole = gluing_map(GluingData{u3, regions_with_prefix(u3, "a."), {lb, lc}, 0});
    CHECK(comp.matrix == whole.matrix);
    CHECK(whole.source.total_rank == 2);
    CHECK(whole.target.total_rank == 8);
}

TEST_CASE("gluing maps EH classes to EH classes") {
    Diagram u2 = samples::union_annuli({"a", "b"});
    std::string la = low_point(u2, 0), lb = low_point(u2, 1);
    GluingData g{u2, regions_with_prefix(u2, "a."), {lb}, 0};
    InducedMap m = gluing_map(g);
    EHClass sub_eh = eh_class(eh_marking(m.source_diag, {la}));
    EHClass big_eh = eh_class(eh_marking(u2, {la, lb}));
    CHECK(m.matrix.apply(sub_eh.coords) == big_eh.coords);
}

TEST_CASE("curves crossing the gluing region are rejected") {
    Diagram ann = fixture("onehandle_annulus.json");
    try {
        gluing_map(GluingData{ann, {"b1"}, {}, 0});
        FAIL("expected GluingConditionViolated");
    } catch (const EngineError& e) {
        CHECK(e.code() == ErrorCode::GluingConditionViolated);
    }
}

TEST_CASE("plan executing a trivial collar gluing is the identity") {
    Diagram ann = fixture("onehandle_annulus.json");
    PlanStep st;
    st.kind = PlanStep::Glue;
    st.glue = GluingData{ann, all_regions(ann), {}, 0};
    PlanResult res = execute_plan(ann, {st});
    CHECK(res.map.matrix == SparseMatrixF2::identity(2));
    CHECK(res.report.at("steps").size() == 1);
}

TEST_CASE("three-step plans execute associatively") {
    Diagram disk = fixture("disk.json");
    PlanStep s1;
    s1.kind = PlanStep::OneHandle;
    s1.r1 = s1.r2 = "R";
    PlanStep s2;
    s2.kind = PlanStep::LinkSurgery;
    s2.triple = samples::cancel_triple();
    s2.indices = {0};
    PlanResult pre = execute_plan(disk, {s1, s2});
    PlanStep s3;
    s3.kind = PlanStep::OneHandle;
    for (const Region& r : pre.map.target_diag.regions)
        if (r.touches_suture) s3.r1 = s3.r2 = r.id;
    PlanResult whole = execute_plan(disk, {s1, s2, s3});
    PlanResult first = execute_plan(disk, {s1});
    PlanResult rest = execute_plan(first.map.target_diag, {s2, s3});
    PlanResult last = execute_plan(pre.map.target_diag, {s3});
    SparseMatrixF2 left = compose_special({first.map, rest.map}).matrix;
    SparseMatrixF2 right = compose_special({pre.map, last.map}).matrix;
    CHECK(whole.map.matrix == left);
    CHECK(whole.map.matrix == right);
    // routing only connects the classes listed in the report
    auto soff = [&](const SFHResult& s) {
        std::vector<int> off(s.class_rank.size() + 1, 0);
        for (size_t c = 0; c < s.class_rank.size(); ++c) off[c + 1] = off[c] + s.class_rank[c];
        return off;
    };
    auto so = soff(whole.map.source), to = soff(whole.map.target);
    for (const auto& [r, c] : whole.map.matrix.entries) {
        int cs = int(std::upper_bound(so.begin(), so.end(), c) - so.begin()) - 1;
        int ct = int(std::upper_bound(to.begin(), to.end(), r) - to.begin()) - 1;
        const auto& v = whole.map.routing.at(cs);
        CHECK(std::find(v.begin(), v.end(), ct) != v.end());
    }
}

TEST_CASE("plans reject steps that do not start at the current diagram") {
    Diagram disk = fixture("disk.json");
    PlanStep st;
    st.kind = PlanStep::LinkSurgery;
    st.triple = samples::cancel_triple();
    st.indices = {0};
    try {
        execute_plan(disk, {st});
        FAIL("expected StepMismatch");
    } catch (const EngineError& e) {
        CHECK(e.code() == ErrorCode::StepMismatch);
    }
}

TEST_CASE("weinstein one-handle shadow carries the marked class back") {
    Diagram disk = fixture("disk.json");
    InducedMap m1 = one_handle_map(disk, "R", "R");
    Diagram big = m1.target_diag;
    std::string low = big.markings.at("annulus").at("low").get<std::string>();
    EHClass marked = eh_class(eh_marking(big, {low}));
    CHECK(!marked.zero);
    PlanStep st;
    st.kind = PlanStep::ThreeHandle;
    PlanResult plan = execute_plan(big, {st});
    BitVec image = plan.map.matrix.apply(marked.coords);
    CHECK(image == eh_class(eh_marking(plan.map.target_diag, {})).coords);
    CHECK(image.any());  // EH-nonvanishing propagates
}

TEST_CASE("zero classes stay zero under gluing") {
    Diagram f5 = fixture("figure5.json");
    GluingData g{f5, all_regions(f5), {}, 0};
    InducedMap m = gluing_map(g);
    EHClass eh = eh_class(eh_marking(f5, {"x"}));
    REQUIRE(eh.zero);
    CHECK(!m.matrix.apply(eh.coords).any());
}

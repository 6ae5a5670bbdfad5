#include <map>

#include "diagram_samples.hpp"
#include "doctest.h"
#include "sfh/cobordism.hpp"
#include "sfh/complex.hpp"
#include "sfh/domains.hpp"
#include "sfh/errors.hpp"
#include "sfh/triple.hpp"

using namespace sfh;
using samples::fixture;
using samples::wiggle_annulus;

namespace {

int gen_index(const Diagram& d, const ChainComplex& cx, const std::vector<std::string>& ids) {
    std::vector<std::string> want = ids;
    std::sort(want.begin(), want.end());
    for (size_t i = 0; i < cx.gens.size(); ++i) {
        std::vector<std::string> got;
        for (int c : cx.gens[i].crossings) got.push_back(d.crossings[c].id);
        std::sort(got.begin(), got.end());
        if (got == want) return int(i);
    }
    return -1;
}

bool column_zero(const SparseMatrixF2& m, int col) {
    for (const auto& [r, c] : m.entries)
        if (c == col) return false;
    return true;
}

}  // namespace

TEST_CASE("one-handle map on the disk") {
    Diagram disk = fixture("disk.json");
    InducedMap m = one_handle_map(disk, "R", "R");
    CHECK(m.source.total_rank == 1);
    CHECK(m.target.total_rank == 2);
    // chain level: the empty generator goes to {theta}
    std::string theta = m.provenance.at("theta").get<std::string>();
    int tgt = gen_index(m.target_diag, m.target_cx, {theta});
    REQUIRE(tgt >= 0);
    CHECK(m.chain_matrix.entries == std::set<std::pair<int, int>>{{tgt, 0}});
    CHECK(f2_rank(m.matrix) == 1);
    CHECK(m.routing.size() == 1);
}

TEST_CASE("rank doubling under one-handle attachment") {
    for (const char* name : {"disk.json", "onehandle_annulus.json", "figure5.json"}) {
        Diagram d = fixture(name);
        std::string foot;
        for (const Region& r : d.regions)
            if (r.touches_suture) foot = r.id;
        InducedMap m = one_handle_map(d, foot, foot);
        CHECK(m.target.total_rank == 2 * m.source.total_rank);
        CHECK(f2_rank(m.matrix) == m.source.total_rank);
    }
    Diagram w = wiggle_annulus(2);
    InducedMap m = one_handle_map(w, "n", "s");
    CHECK(m.target.total_rank == 2 * m.source.total_rank);
}

TEST_CASE("three-handle along the belt sphere of a one-handle") {
    Diagram disk = fixture("disk.json");
    InducedMap m1 = one_handle_map(disk, "R", "R");
    InducedMap m3 = three_handle_map(m1.target_diag);
    CHECK(m3.source.total_rank == 2);
    CHECK(m3.target.total_rank == 1);
    // chain level: [theta] dies, [low] survives
    std::string theta = m3.provenance.at("theta").get<std::string>();
    std::string low = m3.provenance.at("low").get<std::string>();
    int gt = gen_index(m3.source_diag, m3.source_cx, {theta});
    int gl = gen_index(m3.source_diag, m3.source_cx, {low});
    REQUIRE(gt >= 0);
    REQUIRE(gl >= 0);
    CHECK(column_zero(m3.chain_matrix, gt));
    CHECK(!column_zero(m3.chain_matrix, gl));
    // Both maps distinguish the higher-graded point of the annulus: the
    // one-handle creates it, the three-handle kills it. Their composite is
    // not a product cobordism (1- and 3-handles cannot cancel) and the
    // induced map vanishes.
    InducedMap comp = compose_special({m1, m3});
    CHECK(comp.matrix.is_zero());
    CHECK(comp.matrix.rows == 1);
    CHECK(comp.matrix.cols == 1);
}

TEST_CASE("three-handle map on the annulus fixture") {
    Diagram ann = fixture("onehandle_annulus.json");
    InducedMap m = three_handle_map(ann, 0, 0);
    CHECK(m.source.total_rank == 2);
    CHECK(m.target.total_rank == 1);
    CHECK(f2_rank(m.matrix) == 1);
}

TEST_CASE("marked circles crossing four times are rejected") {
    Diagram w = wiggle_annulus(2);
    try {
        three_handle_map(w, 0, 0);
        FAIL("expected MarkedSubdiagramInvalid");
    } catch (const EngineError& e) {
        CHECK(e.code() == ErrorCode::MarkedSubdiagramInvalid);
    }
}

TEST_CASE("composition rejects mismatched endpoints") {
    Diagram disk = fixture("disk.json");
    InducedMap m1 = one_handle_map(disk, "R", "R");
    try {
        compose_special({m1, m1});
        FAIL("expected DimensionMismatch");
    } catch (const EngineError& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}

TEST_CASE("one-handle plus canceling two-handle is the identity") {
    Diagram disk = fixture("disk.json");
    InducedMap m1 = one_handle_map(disk, "R", "R");
    Diagram t = samples::cancel_triple();
    InducedMap f = link_surgery_map(t, {0});
    CHECK(f.source.total_rank == 2);
    CHECK(f.target.total_rank == 1);
    InducedMap comp = compose_special({m1, f});
    CHECK(comp.matrix == SparseMatrixF2::identity(1));
}

TEST_CASE("two-handle plus canceling three-handle is the identity") {
    Diagram t = samples::cancel_triple(true);
    InducedMap f = link_surgery_map(t, {0});
    CHECK(f.source.total_rank == 1);
    CHECK(f.target.total_rank == 2);
    InducedMap m3 = three_handle_map(f.target_diag, 0, 0);
    InducedMap comp = compose_special({f, m3});
    CHECK(comp.matrix == SparseMatrixF2::identity(1));
}

namespace {

// Index of the higher-graded of the two generators of a rank-2 annulus-type
// complex (the connecting domain out of the higher point has Maslov index 1).
int higher_gen(const Diagram& d, const ChainComplex& cx) {
    REQUIRE(cx.gens.size() == 2);
    ConnectingDomainResult r = connecting_domain(d, cx.gens[0], cx.gens[1]);
    REQUIRE(r.solvable);
    return maslov_index(d, r.domain) == 1 ? 0 : 1;
}

std::vector<std::string> gen_ids_of(const Diagram& d, const Generator& g) {
    std::vector<std::string> out;
    for (int c : g.crossings) out.push_back(d.crossings[c].id);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("two-component surgery factors through the single components") {
    Diagram t = samples::cancel_triple();
    Diagram ab = pair_subdiagram(t, FAM_A, FAM_B);
    Diagram ad = pair_subdiagram(t, FAM_A, FAM_D);
    Diagram u = disjoint_union(t, t);
    InducedMap whole = link_surgery_map(u, {0, 1});
    // surgery on the first component only, translate on the second
    Diagram u1 = disjoint_union(t, build_translate_triple(ab));
    InducedMap f1 = link_surgery_map(u1, {0});
    // translate on the surgered first component, surgery on the second
    Diagram u2 = disjoint_union(build_translate_triple(ad), t);
    InducedMap f2 = link_surgery_map(u2, {1});
    CHECK(whole.source.total_rank == 4);
    CHECK(f1.source.total_rank == 4);
    CHECK(f1.target.total_rank == 2);
    CHECK(f2.source.total_rank == 2);
    CHECK(whole.target.total_rank == 1);
    CHECK(f2.target.total_rank == 1);
    // the sources agree generator by generator
    for (size_t i = 0; i < whole.source_cx.gens.size(); ++i)
        CHECK(gen_ids_of(whole.source_diag, whole.source_cx.gens[i]) ==
              gen_ids_of(f1.source_diag, f1.source_cx.gens[i]));
    // middle complexes carry different crossing names (one uses the push-off
    // circle); align them by relative grading before composing
    int hi_t = higher_gen(f1.target_diag, f1.target_cx);
    int hi_s = higher_gen(f2.source_diag, f2.source_cx);
    SparseMatrixF2 perm(2, 2);
    perm.add(hi_s, hi_t);
    perm.add(1 - hi_s, 1 - hi_t);
    SparseMatrixF2 comp = f2.matrix.multiply(perm).multiply(f1.matrix);
    CHECK(comp == whole.matrix);
}

TEST_CASE("maps on disjoint unions are tensor products of the blocks") {
    Diagram t = samples::cancel_triple();
    InducedMap f = link_surgery_map(t, {0});
    Diagram u = disjoint_union(t, t);
    InducedMap whole = link_surgery_map(u, {0, 1});
    SparseMatrixF2 kron(f.matrix.rows * f.matrix.rows, f.matrix.cols * f.matrix.cols);
    for (const auto& [r1, c1] : f.matrix.entries)
        for (const auto& [r2, c2] : f.matrix.entries)
            kron.add(r1 * f.matrix.rows + r2, c1 * f.matrix.cols + c2);
    CHECK(whole.matrix == kron);
}

TEST_CASE("translate triangle map is the identity") {
    std::vector<Diagram> cases = {fixture("disk.json"), fixture("onehandle_annulus.json"),
                                  fixture("figure5.json"), wiggle_annulus(2)};
    for (const Diagram& d : cases) {
        Diagram t = build_translate_triple(d);
        Generator theta = subordinate_theta(t, {});
        InducedMap m = triangle_map(t, theta);
        int rank = compute_sfh(differential_matrix(d)).total_rank;
        CHECK(m.source.total_rank == rank);
        CHECK(m.target.total_rank == rank);
        CHECK(m.matrix == SparseMatrixF2::identity(rank));
        CHECK(m.provenance.at("translate_type").get<bool>());
    }
}

TEST_CASE("spin-c filtered triangle maps sum to the unfiltered map") {
    Diagram t = build_translate_triple(fixture("figure5.json"));
    Generator theta = subordinate_theta(t, {});
    InducedMap whole = triangle_map(t, theta);
    int n = triangle_class_count(t, theta);
    REQUIRE(n >= 1);
    SparseMatrixF2 sum(whole.chain_matrix.rows, whole.chain_matrix.cols);
    for (int c = 0; c < n; ++c) {
        InducedMap part = triangle_map(t, theta, TriangleSpincClass{c});
        for (const auto& [r, cc] : part.chain_matrix.entries) sum.add(r, cc);
    }
    CHECK(sum == whole.chain_matrix);
}

TEST_CASE("empty surgery set gives the identity map") {
    Diagram t = build_translate_triple(fixture("onehandle_annulus.json"));
    InducedMap m = link_surgery_map(t, {});
    CHECK(m.provenance.at("op") == "link_surgery");
    CHECK(m.matrix == SparseMatrixF2::identity(2));
}

TEST_CASE("duality pairing is adjoint to the differential") {
    Diagram d = fixture("figure5.json");
    DualityPairing P = duality_pairing(d);
    ChainComplex cx = differential_matrix(d);
    ChainComplex cxr = differential_matrix(P.reversed);
    REQUIRE(cx.gens.size() == cxr.gens.size());
    // reversal preserves crossing ids, so generators line up index by index
    for (size_t i = 0; i < cx.gens.size(); ++i) {
        std::vector<std::string> a, b;
        for (int c : cx.gens[i].crossings) a.push_back(d.crossings[c].id);
        for (int c : cxr.gens[i].crossings) b.push_back(P.reversed.crossings[c].id);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }
    int n = int(cx.gens.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            BitVec ei(n), ej(n);
            ei.set(i, true);
            ej.set(j, true);
            CHECK(P.pair(ei, cx.boundary.apply(ej)) == P.pair(cxr.boundary.apply(ei), ej));
        }
}

TEST_CASE("one-handle map dualizes to the three-handle map") {
    Diagram disk = fixture("disk.json");
    InducedMap m1 = one_handle_map(disk, "R", "R");
    InducedMap m3 = three_handle_map(reverse_orientation(m1.target_diag));
    CHECK(m3.matrix == m1.matrix.transpose());
}

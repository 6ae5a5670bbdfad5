#include "sfh/cobordism.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "arc_token.hpp"
#include "sfh/domains.hpp"
#include "sfh/errors.hpp"
#include "sfh/linalg_int.hpp"

namespace sfh {

using nlohmann::json;

namespace {

std::vector<std::string> gen_ids(const Diagram& d, const Generator& g) {
    std::vector<std::string> ids;
    for (int c : g.crossings) ids.push_back(d.crossings[c].id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::map<std::vector<std::string>, int> gen_table(const Diagram& d,
                                                  const std::vector<Generator>& gens) {
    std::map<std::vector<std::string>, int> t;
    for (size_t i = 0; i < gens.size(); ++i) t[gen_ids(d, gens[i])] = int(i);
    return t;
}

std::vector<int> class_offsets(const SFHResult& s) {
    std::vector<int> off(s.class_rank.size() + 1, 0);
    for (size_t c = 0; c < s.class_rank.size(); ++c) off[c + 1] = off[c] + s.class_rank[c];
    return off;
}

}  // namespace

InducedMap descend_chain_map(const Diagram& src, const Diagram& tgt,
                             const SparseMatrixF2& chain, json provenance, ErrorCode on_fail) {
    InducedMap m;
    m.source_diag = src;
    m.target_diag = tgt;
    m.source_cx = differential_matrix(src);
    m.target_cx = differential_matrix(tgt);
    if (chain.rows != int(m.target_cx.gens.size()) || chain.cols != int(m.source_cx.gens.size()))
        fail(ErrorCode::DimensionMismatch, "chain matrix shape does not match the complexes");
    if (!(chain.multiply(m.source_cx.boundary) == m.target_cx.boundary.multiply(chain)))
        fail(on_fail, "map does not commute with the differentials");
    m.chain_matrix = chain;
    m.source = compute_sfh(m.source_cx);
    m.target = compute_sfh(m.target_cx);

    // per-target-class homology projectors on the boundary blocks
    int nt = int(m.target_cx.gens.size());
    int ncls = m.target_cx.spinc.num_classes;
    std::vector<std::vector<int>> members(ncls);
    std::vector<int> pos_in_class(nt, -1);
    for (int i = 0; i < nt; ++i) {
        int c = m.target_cx.spinc.class_of[i];
        pos_in_class[i] = int(members[c].size());
        members[c].push_back(i);
    }
    std::vector<F2Homology> hom;
    for (int c = 0; c < ncls; ++c) {
        int k = int(members[c].size());
        SparseMatrixF2 block(k, k);
        for (const auto& [r, cc] : m.target_cx.boundary.entries)
            if (m.target_cx.spinc.class_of[r] == c && m.target_cx.spinc.class_of[cc] == c)
                block.add(pos_in_class[r], pos_in_class[cc]);
        hom.emplace_back(block, block);
    }

    auto soff = class_offsets(m.source);
    auto toff = class_offsets(m.target);
    m.matrix = SparseMatrixF2(m.target.total_rank, m.source.total_rank);
    for (size_t cs = 0; cs < m.source.class_basis.size(); ++cs)
        for (size_t k = 0; k < m.source.class_basis[cs].size(); ++k) {
            int col = soff[cs] + int(k);
            BitVec image = chain.apply(m.source.class_basis[cs][k]);
            for (int ct = 0; ct < ncls; ++ct) {
                BitVec sub(int(members[ct].size()));
                for (size_t p = 0; p < members[ct].size(); ++p)
                    if (image.get(members[ct][p])) sub.set(int(p), true);
                if (!sub.any()) continue;
                BitVec coords = hom[ct].project(sub);
                bool hit = false;
                for (int j = 0; j < coords.size(); ++j)
                    if (coords.get(j)) {
                        m.matrix.add(toff[ct] + j, col);
                        hit = true;
                    }
                if (hit) {
                    auto& v = m.routing[int(cs)];
                    if (std::find(v.begin(), v.end(), ct) == v.end()) v.push_back(ct);
                }
            }
        }
    for (auto& [c, v] : m.routing) std::sort(v.begin(), v.end());
    m.provenance = std::move(provenance);
    return m;
}

InducedMap one_handle_map(const Diagram& diag, const std::string& r1, const std::string& r2) {
    OneHandleResult res = attach_onehandle_annulus(diag, r1, r2);
    Diagram tgt = res.diagram;
    if (tgt.markings.is_null()) tgt.markings = json::object();
    tgt.markings["annulus"] = {{"alpha", diag.num_circles(FAM_A)},
                               {"beta", diag.num_circles(FAM_B)},
                               {"theta", res.theta},
                               {"low", res.low}};
    auto sgens = enumerate_generators(diag);
    auto tgens = enumerate_generators(tgt);
    auto tt = gen_table(tgt, tgens);
    SparseMatrixF2 chain(int(tgens.size()), int(sgens.size()));
    for (size_t j = 0; j < sgens.size(); ++j) {
        auto ids = gen_ids(diag, sgens[j]);
        ids.push_back(res.theta);
        std::sort(ids.begin(), ids.end());
        chain.add(tt.at(ids), int(j));
    }
    return descend_chain_map(
        diag, tgt, chain,
        {{"op", "one_handle"}, {"r1", r1}, {"r2", r2}, {"theta", res.theta}, {"low", res.low}});
}

InducedMap three_handle_map(const Diagram& diag) {
    if (!diag.markings.is_object() || !diag.markings.contains("annulus"))
        fail(ErrorCode::MarkedSubdiagramInvalid, "diagram has no marked annulus");
    const json& a = diag.markings["annulus"];
    return three_handle_map(diag, a.at("alpha").get<int>(), a.at("beta").get<int>());
}

InducedMap three_handle_map(const Diagram& diag, int ai, int bi) {
    if (!diag.is_pair() || ai < 0 || ai >= diag.num_circles(FAM_A) || bi < 0 ||
        bi >= diag.num_circles(FAM_B))
        fail(ErrorCode::MarkedSubdiagramInvalid, "marked circles out of range");
    std::vector<int> on_pair;
    for (size_t c = 0; c < diag.crossings.size(); ++c) {
        const Crossing& cr = diag.crossings[c];
        bool on_a = cr.on_family(FAM_A) && cr.circle_of(FAM_A) == ai;
        bool on_b = cr.on_family(FAM_B) && cr.circle_of(FAM_B) == bi;
        if (on_a && on_b)
            on_pair.push_back(int(c));
        else if (on_a || on_b)
            fail(ErrorCode::MarkedSubdiagramInvalid,
                 "marked circle meets a curve outside the annulus at " + cr.id);
    }
    if (on_pair.size() != 2)
        fail(ErrorCode::MarkedSubdiagramInvalid, "marked pair meets in " +
                                                     std::to_string(on_pair.size()) +
                                                     " points, expected 2");
    auto is_lens = [&](int region) {
        const Region& r = diag.regions[region];
        if (r.genus != 0 || r.words.size() != 1 || r.words[0].size() != 2) return false;
        for (const OArc& arc : r.words[0]) {
            if (arc.is_suture) return false;
            const Segment& s = diag.segments[arc.seg];
            if (s.fam == FAM_A && s.circle != ai) return false;
            if (s.fam == FAM_B && s.circle != bi) return false;
        }
        return true;
    };
    int theta = -1, low = -1;
    for (int c : on_pair) {
        const Crossing& cr = diag.crossings[c];
        if (is_lens(cr.quad[0]) && is_lens(cr.quad[2])) {
            if (theta >= 0)
                fail(ErrorCode::MarkedSubdiagramInvalid, "annulus has two theta candidates");
            theta = c;
        } else {
            low = c;
        }
    }
    if (theta < 0 || low < 0)
        fail(ErrorCode::MarkedSubdiagramInvalid, "annulus bigons do not single out theta");
    std::vector<std::string> lens_names;
    std::vector<bool> is_lens_region(diag.regions.size(), false);
    for (int c : on_pair)
        for (int q : diag.crossings[c].quad)
            if (is_lens(q) && !is_lens_region[q]) {
                is_lens_region[q] = true;
                lens_names.push_back(diag.regions[q].id);
            }
    for (int c : on_pair)
        for (int q : diag.crossings[c].quad)
            if (!is_lens_region[q] && !diag.regions[q].touches_suture)
                fail(ErrorCode::MarkedSubdiagramInvalid,
                     "annulus side region " + diag.regions[q].id + " not on the boundary");

    // Excise the annulus pair from the textual form.
    json raw = diagram_to_json(diag);
    raw["d"] = diag.d - 1;
    raw["alphas"].erase(raw["alphas"].begin() + ai);
    raw["betas"].erase(raw["betas"].begin() + bi);
    for (int c : on_pair) raw["crossings"].erase(diag.crossings[c].id);
    auto fix_token = [&](const std::string& tok) -> std::string {
        detail::ArcToken a = detail::parse_token(tok);
        if (a.is_suture) return tok;
        int circ = a.circle;
        if (a.fam == FAM_A && circ > ai) --circ;
        if (a.fam == FAM_B && circ > bi) --circ;
        std::string t = std::string(1, a.fam == FAM_A ? 'A' : 'B') + std::to_string(circ) + "." +
                        std::to_string(a.index);
        return a.fwd ? t : "-" + t;
    };
    json regions = json::object();
    for (auto& [rid, rv] : raw["regions"].items()) {
        if (std::find(lens_names.begin(), lens_names.end(), rid) != lens_names.end()) continue;
        json words = json::array();
        for (const auto& word : rv["boundary_words"]) {
            bool on_annulus = true, off_annulus = true;
            for (const auto& tok : word) {
                detail::ArcToken a = detail::parse_token(tok.get<std::string>());
                bool marked = !a.is_suture && ((a.fam == FAM_A && a.circle == ai) ||
                                               (a.fam == FAM_B && a.circle == bi));
                (marked ? off_annulus : on_annulus) = false;
            }
            if (on_annulus) continue;  // a full annulus wall: drop it
            if (!off_annulus)
                fail(ErrorCode::MarkedSubdiagramInvalid,
                     "word of " + rid + " mixes annulus and outside arcs");
            json w = json::array();
            for (const auto& tok : word) w.push_back(fix_token(tok.get<std::string>()));
            words.push_back(w);
        }
        json e = rv;
        e["boundary_words"] = words;
        regions[rid] = e;
    }
    raw["regions"] = regions;
    if (raw.contains("markings") && raw["markings"].is_object())
        raw["markings"].erase("annulus");
    Diagram tgt = validate_diagram(raw);

    auto sgens = enumerate_generators(diag);
    auto tgens = enumerate_generators(tgt);
    auto tt = gen_table(tgt, tgens);
    const std::string low_id = diag.crossings[low].id;
    const std::string theta_id = diag.crossings[theta].id;
    SparseMatrixF2 chain(int(tgens.size()), int(sgens.size()));
    for (size_t j = 0; j < sgens.size(); ++j) {
        auto ids = gen_ids(diag, sgens[j]);
        auto it = std::find(ids.begin(), ids.end(), low_id);
        if (it == ids.end()) continue;  // contains theta: mapped to zero
        ids.erase(it);
        chain.add(tt.at(ids), int(j));
    }
    return descend_chain_map(diag, tgt, chain,
                             {{"op", "three_handle"},
                              {"alpha", ai},
                              {"beta", bi},
                              {"theta", theta_id},
                              {"low", low_id}});
}

// ---------------------------------------------------------------------------
// Triangle maps.
// ---------------------------------------------------------------------------

namespace {

// One pair sub-diagram of a triple together with the region-grouping map and
// a translation of triple generators into its own crossing indices.
struct SubPair {
    Diagram diag;
    std::vector<int> group_of;  // triple region index -> sub region index
    std::map<std::string, int> xidx;

    Generator translate(const Diagram& triple, const Generator& g) const {
        Generator out;
        for (int c : g.crossings) out.crossings.push_back(xidx.at(triple.crossings[c].id));
        std::sort(out.crossings.begin(), out.crossings.end());
        return out;
    }
};

SubPair make_sub(const Diagram& triple, int fx, int fy) {
    SubPair s;
    s.diag = pair_subdiagram(triple, fx, fy, &s.group_of);
    for (size_t i = 0; i < s.diag.crossings.size(); ++i) s.xidx[s.diag.crossings[i].id] = int(i);
    return s;
}

// A recorded triangle domain with its endpoints (theta is shared).
struct TriDomain {
    Generator x, y;
    std::vector<mpz_class> coeffs;
};

// Two triangle domains carry the same Spin^c structure iff their difference
// splits as lift(AB domain x2 -> x1) + lift(AD domain y1 -> y2) + lift(BD
// periodic domain). Solved as one stacked integer system: coefficient
// matching per triple interior region plus each sub-diagram's boundary-chain
// equations.
bool same_spinc(const Diagram& triple, const SubPair& ab, const SubPair& ad, const SubPair& bd,
                const Generator& theta, const TriDomain& a, const TriDomain& b) {
    const SubPair* subs[3] = {&ab, &ad, &bd};
    DomainSystem sys[3] = {
        domain_system(ab.diag, {ab.translate(triple, b.x), ab.translate(triple, a.x)}),
        domain_system(ad.diag, {ad.translate(triple, a.y), ad.translate(triple, b.y)}),
        domain_system(bd.diag, {bd.translate(triple, theta), bd.translate(triple, theta)})};
    int off[4] = {0, 0, 0, 0};
    int mrows[3];
    for (int s = 0; s < 3; ++s) {
        off[s + 1] = off[s] + int(subs[s]->diag.interior_regions().size());
        mrows[s] = sys[s].A.rows;
    }
    int m = int(triple.interior_regions().size());
    IntegerMatrix A(m + mrows[0] + mrows[1] + mrows[2], off[3]);
    std::vector<mpz_class> rhs(A.rows, 0);
    for (size_t r = 0; r < triple.regions.size(); ++r) {
        int tp = triple.interior_pos(int(r));
        if (tp < 0) continue;
        for (int s = 0; s < 3; ++s) {
            int sp = subs[s]->diag.interior_pos(subs[s]->group_of[r]);
            if (sp >= 0) A.at(tp, off[s] + sp) = 1;
        }
        rhs[tp] = b.coeffs[tp] - a.coeffs[tp];
    }
    int base = m;
    for (int s = 0; s < 3; ++s) {
        for (int i = 0; i < sys[s].A.rows; ++i) {
            for (int j = 0; j < sys[s].A.cols; ++j) A.at(base + i, off[s] + j) = sys[s].A.at(i, j);
            rhs[base + i] = sys[s].b[i];
        }
        base += sys[s].A.rows;
    }
    return integer_solve(A, rhs).solvable_z;
}

// Does the 0/1 domain decompose into d embedded triangles, one corner on each
// generator tuple per component?
bool decomposes(const Diagram& t, const std::vector<mpz_class>& co, const Generator& x,
                const Generator& theta, const Generator& y) {
    auto cf = [&](int r) {
        int p = t.interior_pos(r);
        return p < 0 ? mpz_class(0) : co[p];
    };
    int nr = int(t.regions.size());
    std::vector<int> parent(nr);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        return parent[a] == a ? a : parent[a] = find(parent[a]);
    };
    for (const Segment& s : t.segments)
        if (cf(s.left) == 1 && cf(s.right) == 1) parent[find(s.left)] = find(s.right);

    std::map<int, mpq_class> chi;
    std::map<int, std::array<int, 3>> corners;
    for (int r = 0; r < nr; ++r)
        if (cf(r) == 1) chi[find(r)] += t.regions[r].chi();
    for (const Segment& s : t.segments)
        if (!s.closed() && cf(s.left) == 1 && cf(s.right) == 1) chi[find(s.left)] -= 1;
    for (const Crossing& c : t.crossings) {
        bool full = true;
        for (int q : c.quad)
            if (cf(q) != 1) full = false;
        if (full) chi[find(c.quad[0])] += 1;
    }
    const Generator* parts[3] = {&x, &theta, &y};
    for (int p = 0; p < 3; ++p)
        for (int ci : parts[p]->crossings) {
            const Crossing& c = t.crossings[ci];
            mpz_class qs = 0;
            for (int q : c.quad) qs += cf(q);
            if (qs != 1) return false;
            for (int q : c.quad)
                if (cf(q) == 1) {
                    ++corners[find(q)][p];
                    break;
                }
        }
    if (int(chi.size()) != t.d) return false;
    for (const auto& [root, ch] : chi) {
        if (ch != 1) return false;
        auto it = corners.find(root);
        if (it == corners.end() || it->second != std::array<int, 3>{1, 1, 1}) return false;
    }
    return true;
}

struct TriangleCore {
    Diagram ab, ad;
    bool translate_type = true;
    bool all_decompose = true;
    std::vector<SparseMatrixF2> class_chain;  // per triangle Spin^c class
    SparseMatrixF2 total_chain;
};

TriangleCore triangle_core(const Diagram& triple, const Generator& theta) {
    if (triple.nfam != 3)
        fail(ErrorCode::MalformedInput, "triangle map needs a triple diagram");
    std::vector<bool> bseen(triple.num_circles(FAM_B), false),
        dseen(triple.num_circles(FAM_D), false);
    for (int ci : theta.crossings) {
        if (ci < 0 || ci >= int(triple.crossings.size()))
            fail(ErrorCode::MalformedInput, "theta coordinate out of range");
        const Crossing& c = triple.crossings[ci];
        if (!c.on_family(FAM_B) || !c.on_family(FAM_D))
            fail(ErrorCode::MalformedInput, "theta coordinate not on (beta, delta)");
        if (bseen[c.circle_of(FAM_B)] || dseen[c.circle_of(FAM_D)])
            fail(ErrorCode::MalformedInput, "theta repeats a circle");
        bseen[c.circle_of(FAM_B)] = dseen[c.circle_of(FAM_D)] = true;
    }
    for (bool b : bseen)
        if (!b) fail(ErrorCode::MalformedInput, "theta misses a beta circle");
    for (bool b : dseen)
        if (!b) fail(ErrorCode::MalformedInput, "theta misses a delta circle");
    if (!check_admissibility(triple).admissible)
        fail(ErrorCode::NotAdmissible, "triple diagram is not admissible");

    TriangleCore core;
    try {
        select_theta(pair_subdiagram(triple, FAM_B, FAM_D));
    } catch (const EngineError&) {
        core.translate_type = false;
    }
    SubPair ab = make_sub(triple, FAM_A, FAM_B);
    SubPair ad = make_sub(triple, FAM_A, FAM_D);
    SubPair bd = make_sub(triple, FAM_B, FAM_D);
    core.ab = ab.diag;
    core.ad = ad.diag;
    auto X = enumerate_generators(triple, FAM_A, FAM_B);
    auto Y = enumerate_generators(triple, FAM_A, FAM_D);
    auto xt = gen_table(core.ab, enumerate_generators(core.ab));
    auto yt = gen_table(core.ad, enumerate_generators(core.ad));

    std::vector<TriDomain> reps;
    core.total_chain = SparseMatrixF2(int(yt.size()), int(xt.size()));
    for (const Generator& x : X)
        for (const Generator& y : Y) {
            int col = xt.at(gen_ids(triple, x));
            int row = yt.at(gen_ids(triple, y));
            for (const auto& dom : enumerate_unit_domains(triple, {x, theta, y})) {
                Domain d{dom, {x, theta, y}};
                if (maslov_index(triple, d) != 0) continue;
                if (!decomposes(triple, dom, x, theta, y)) {
                    core.all_decompose = false;
                    continue;
                }
                TriDomain cand{x, y, dom};
                size_t cls = 0;
                for (; cls < reps.size(); ++cls)
                    if (same_spinc(triple, ab, ad, bd, theta, reps[cls], cand)) break;
                if (cls == reps.size()) {
                    reps.push_back(cand);
                    core.class_chain.emplace_back(int(yt.size()), int(xt.size()));
                }
                core.class_chain[cls].add(row, col);
                core.total_chain.add(row, col);
            }
        }
    if (!core.translate_type && !core.all_decompose)
        fail(ErrorCode::UncertifiedTriple,
             "a positive index-zero domain does not decompose into triangles");
    return core;
}

}  // namespace

int triangle_class_count(const Diagram& triple, const Generator& theta) {
    return int(triangle_core(triple, theta).class_chain.size());
}

InducedMap triangle_map(const Diagram& triple, const Generator& theta,
                        std::optional<TriangleSpincClass> spinc_filter) {
    TriangleCore core = triangle_core(triple, theta);
    SparseMatrixF2 chain = core.total_chain;
    json prov = {{"op", "triangle"},
                 {"theta", triple.describe_generator(theta)},
                 {"translate_type", core.translate_type},
                 {"classes", int(core.class_chain.size())}};
    if (spinc_filter) {
        int id = spinc_filter->id;
        if (id < 0 || id >= int(core.class_chain.size()))
            fail(ErrorCode::MalformedInput, "no such triangle Spin^c class");
        chain = core.class_chain[id];
        prov["spinc_filter"] = id;
    }
    return descend_chain_map(core.ab, core.ad, chain, prov);
}

InducedMap link_surgery_map(const Diagram& triple, const std::vector<int>& surgery_indices) {
    Generator theta = subordinate_theta(triple, surgery_indices);
    InducedMap m = triangle_map(triple, theta);
    m.provenance = {{"op", "link_surgery"},
                    {"indices", surgery_indices},
                    {"theta", triple.describe_generator(theta)}};
    return m;
}

InducedMap compose_special(const std::vector<InducedMap>& maps) {
    if (maps.empty()) fail(ErrorCode::DimensionMismatch, "nothing to compose");
    InducedMap out = maps[0];
    json steps = json::array();
    steps.push_back(out.provenance);
    for (size_t k = 1; k < maps.size(); ++k) {
        const InducedMap& g = maps[k];
        bool same = out.target_cx.gens.size() == g.source_cx.gens.size() &&
                    out.target_cx.boundary == g.source_cx.boundary;
        if (same)
            for (size_t i = 0; i < g.source_cx.gens.size(); ++i)
                if (gen_ids(out.target_diag, out.target_cx.gens[i]) !=
                    gen_ids(g.source_diag, g.source_cx.gens[i]))
                    same = false;
        if (!same)
            fail(ErrorCode::DimensionMismatch,
                 "adjacent maps do not share the same diagram identity");
        out.chain_matrix = g.chain_matrix.multiply(out.chain_matrix);
        out.matrix = g.matrix.multiply(out.matrix);
        out.target_diag = g.target_diag;
        out.target_cx = g.target_cx;
        out.target = g.target;
        steps.push_back(g.provenance);
    }
    // recompute routing from the composed blocks
    out.routing.clear();
    auto soff = class_offsets(out.source);
    auto toff = class_offsets(out.target);
    auto class_at = [](const std::vector<int>& off, int idx) {
        int c = 0;
        while (idx >= off[c + 1]) ++c;
        return c;
    };
    for (const auto& [r, c] : out.matrix.entries) {
        int cs = class_at(soff, c), ct = class_at(toff, r);
        auto& v = out.routing[cs];
        if (std::find(v.begin(), v.end(), ct) == v.end()) v.push_back(ct);
    }
    for (auto& [c, v] : out.routing) std::sort(v.begin(), v.end());
    out.provenance = {{"op", "compose"}, {"steps", steps}};
    return out;
}

int DualityPairing::pair(const BitVec& a, const BitVec& b) const {
    if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "pairing length mismatch");
    int s = 0;
    for (int i = 0; i < a.size(); ++i) s ^= int(a.get(i) && b.get(i));
    return s;
}

DualityPairing duality_pairing(const Diagram& diag) {
    return DualityPairing{diag, reverse_orientation(diag)};
}

}  // namespace sfh

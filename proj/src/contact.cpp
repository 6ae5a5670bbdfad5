#include "sfh/contact.hpp"

#include <algorithm>
#include <map>

#include "arc_token.hpp"
#include "sfh/errors.hpp"

namespace sfh {

using nlohmann::json;

namespace {

std::vector<std::string> gen_ids(const Diagram& d, const Generator& g) {
    std::vector<std::string> ids;
    for (int c : g.crossings) ids.push_back(d.crossings[c].id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

int find_gen(const Diagram& d, const std::vector<Generator>& gens,
             const std::vector<std::string>& want) {
    for (size_t i = 0; i < gens.size(); ++i)
        if (gen_ids(d, gens[i]) == want) return int(i);
    return -1;
}

// adjacency-by-content used between plan steps: same generators, same
// differential (region names are allowed to differ)
bool same_complex(const Diagram& da, const ChainComplex& ca, const Diagram& db,
                  const ChainComplex& cb) {
    if (ca.gens.size() != cb.gens.size()) return false;
    for (size_t i = 0; i < ca.gens.size(); ++i)
        if (gen_ids(da, ca.gens[i]) != gen_ids(db, cb.gens[i])) return false;
    return ca.boundary == cb.boundary;
}

}  // namespace

BitVec homology_coordinates(const ChainComplex& cx, const SFHResult& sfh, const BitVec& cycle) {
    int n = int(cx.gens.size());
    if (cycle.size() != n) fail(ErrorCode::DimensionMismatch, "cycle length mismatch");
    int ncls = cx.spinc.num_classes;
    std::vector<std::vector<int>> members(ncls);
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) {
        int c = cx.spinc.class_of[i];
        pos[i] = int(members[c].size());
        members[c].push_back(i);
    }
    std::vector<int> off(ncls + 1, 0);
    for (int c = 0; c < ncls; ++c) off[c + 1] = off[c] + sfh.class_rank[c];
    BitVec out(sfh.total_rank);
    for (int c = 0; c < ncls; ++c) {
        int k = int(members[c].size());
        BitVec sub(k);
        for (int p = 0; p < k; ++p)
            if (cycle.get(members[c][p])) sub.set(p, true);
        if (!sub.any()) continue;
        SparseMatrixF2 block(k, k);
        for (const auto& [r, cc] : cx.boundary.entries)
            if (cx.spinc.class_of[r] == c && cx.spinc.class_of[cc] == c)
                block.add(pos[r], pos[cc]);
        F2Homology hom(block, block);
        BitVec coords = hom.project(sub);
        for (int j = 0; j < coords.size(); ++j)
            if (coords.get(j)) out.set(off[c] + j, true);
    }
    return out;
}

EHMarking eh_marking(const Diagram& diag, const std::vector<std::string>& crossing_ids) {
    EHMarking m;
    m.diag = diag;
    for (const std::string& id : crossing_ids) {
        int c = diag.crossing_index(id);
        if (c < 0) fail(ErrorCode::MalformedInput, "unknown crossing " + id);
        m.x.crossings.push_back(c);
    }
    std::sort(m.x.crossings.begin(), m.x.crossings.end());
    return m;
}

void validate_eh_marking(const EHMarking& m) {
    const Diagram& d = m.diag;
    if (!d.is_pair()) fail(ErrorCode::MalformedInput, "EH markings live on pair diagrams");
    // one coordinate per circle of each family
    std::vector<int> seen_a(d.num_circles(FAM_A), 0), seen_b(d.num_circles(FAM_B), 0);
    for (int c : m.x.crossings) {
        ++seen_a[d.crossings[c].circle_of(FAM_A)];
        ++seen_b[d.crossings[c].circle_of(FAM_B)];
    }
    for (int v : seen_a)
        if (v != 1) fail(ErrorCode::MarkingNotCycleCertified, "marking is not a full generator");
    for (int v : seen_b)
        if (v != 1) fail(ErrorCode::MarkingNotCycleCertified, "marking is not a full generator");
    // outgoing quadrants must touch the suture
    for (int c : m.x.crossings)
        for (int q : {0, 2}) {
            const Region& r = d.regions[d.crossings[c].quad[q]];
            if (!r.touches_suture)
                fail(ErrorCode::MarkingNotCycleCertified,
                     "outgoing region " + r.id + " at " + d.crossings[c].id +
                         " does not touch the suture");
        }
    // the condition above forces the marked generator to be a cycle
    ChainComplex cx = differential_matrix(d);
    int idx = find_gen(d, cx.gens, gen_ids(d, m.x));
    if (idx < 0) fail(ErrorCode::InternalError, "marked generator not enumerated");
    for (const auto& [r, c] : cx.boundary.entries)
        if (c == idx)
            fail(ErrorCode::MarkingNotCycleCertified, "marked generator is not a cycle");
}

EHClass eh_class(const EHMarking& m) {
    validate_eh_marking(m);
    ChainComplex cx = differential_matrix(m.diag);
    SFHResult sfh = compute_sfh(cx);
    int idx = find_gen(m.diag, cx.gens, gen_ids(m.diag, m.x));
    BitVec unit(int(cx.gens.size()));
    unit.set(idx, true);
    EHClass out;
    out.coords = homology_coordinates(cx, sfh, unit);
    out.spinc_class = cx.spinc.class_of[idx];
    out.zero = !out.coords.any();
    return out;
}

GluingData gluing_data(const Diagram& big) {
    if (!big.markings.is_object() || !big.markings.contains("glue"))
        fail(ErrorCode::MalformedInput, "diagram carries no glue marking");
    const json& g = big.markings.at("glue");
    GluingData data;
    data.big = big;
    for (const auto& r : g.at("sub_regions")) data.sub_regions.push_back(r.get<std::string>());
    for (const auto& c : g.at("x2")) data.x2.push_back(c.get<std::string>());
    if (g.contains("isolated_disks")) data.isolated_disks = g.at("isolated_disks").get<int>();
    return data;
}

namespace {

// per family: flag of each circle -- 1 sub, 0 complement; mixed incidence
// is a gluing violation
std::vector<std::vector<int>> classify_circles(const GluingData& data) {
    const Diagram& d = data.big;
    std::vector<bool> is_sub(d.regions.size(), false);
    for (const std::string& rid : data.sub_regions) {
        int r = d.region_index(rid);
        if (r < 0) fail(ErrorCode::MalformedInput, "unknown region " + rid);
        is_sub[r] = true;
    }
    std::vector<std::vector<int>> flag(2);
    flag[FAM_A].assign(d.num_circles(FAM_A), -1);
    flag[FAM_B].assign(d.num_circles(FAM_B), -1);
    for (const Segment& s : d.segments)
        for (int r : {s.left, s.right}) {
            int v = is_sub[r] ? 1 : 0;
            int& f = flag[s.fam][s.circle];
            if (f == -1) f = v;
            if (f != v)
                fail(ErrorCode::GluingConditionViolated,
                     "a curve meets both the sub-diagram and its complement");
        }
    return flag;
}

}  // namespace

Diagram sub_diagram(const GluingData& data) {
    const Diagram& d = data.big;
    if (!d.is_pair()) fail(ErrorCode::MalformedInput, "gluing applies to pair diagrams");
    auto flag = classify_circles(data);
    int keep_a = int(std::count(flag[FAM_A].begin(), flag[FAM_A].end(), 1));
    int keep_b = int(std::count(flag[FAM_B].begin(), flag[FAM_B].end(), 1));
    if (keep_a != keep_b)
        fail(ErrorCode::GluingConditionViolated, "sub-diagram is unbalanced");
    // new index of each kept circle
    std::vector<std::vector<int>> renum(2);
    for (int fam : {FAM_A, FAM_B}) {
        int next = 0;
        for (int v : flag[fam]) renum[fam].push_back(v == 1 ? next++ : -1);
    }
    json raw = diagram_to_json(d);
    raw["d"] = keep_a;
    const char* keys[2] = {"alphas", "betas"};
    for (int fam : {FAM_A, FAM_B}) {
        json arr = json::array();
        for (size_t i = 0; i < raw[keys[fam]].size(); ++i)
            if (flag[fam][i] == 1) arr.push_back(raw[keys[fam]][i]);
        raw[keys[fam]] = arr;
    }
    json cr = json::object();
    for (const Crossing& c : d.crossings)
        if (flag[FAM_A][c.circle_of(FAM_A)] == 1) {
            json q = json::array();
            for (int r : c.quad) q.push_back(d.regions[r].id);
            cr[c.id] = q;
        }
    raw["crossings"] = cr;
    auto fix_token = [&](const std::string& tok) -> std::string {
        detail::ArcToken a = detail::parse_token(tok);
        if (a.is_suture) return tok;
        std::string t = std::string(1, a.fam == FAM_A ? 'A' : 'B') +
                        std::to_string(renum[a.fam][a.circle]) + "." + std::to_string(a.index);
        return a.fwd ? t : "-" + t;
    };
    json regions = json::object();
    for (const std::string& rid : data.sub_regions) {
        const json& rv = raw["regions"].at(rid);
        json words = json::array();
        for (const auto& word : rv["boundary_words"]) {
            json w = json::array();
            for (const auto& tok : word) {
                detail::ArcToken a = detail::parse_token(tok.get<std::string>());
                if (!a.is_suture && flag[a.fam][a.circle] != 1)
                    fail(ErrorCode::GluingConditionViolated,
                         "sub-region " + rid + " borders a complement curve");
                w.push_back(fix_token(tok.get<std::string>()));
            }
            words.push_back(w);
        }
        json e = rv;
        e["boundary_words"] = words;
        regions[rid] = e;
    }
    raw["regions"] = regions;
    if (raw.contains("markings") && raw["markings"].is_object()) raw["markings"].erase("glue");
    return validate_diagram(raw);
}

InducedMap gluing_map(const GluingData& data) {
    const Diagram& d = data.big;
    auto flag = classify_circles(data);
    // the complement marking: one coordinate per complement circle pair,
    // outgoing-region condition checked inside the big diagram
    std::vector<int> seen_a(d.num_circles(FAM_A), 0), seen_b(d.num_circles(FAM_B), 0);
    for (const std::string& id : data.x2) {
        int c = d.crossing_index(id);
        if (c < 0) fail(ErrorCode::MalformedInput, "unknown crossing " + id);
        const Crossing& cr = d.crossings[c];
        if (flag[FAM_A][cr.circle_of(FAM_A)] == 1 || flag[FAM_B][cr.circle_of(FAM_B)] == 1)
            fail(ErrorCode::GluingConditionViolated, "x'' touches a sub-diagram curve");
        ++seen_a[cr.circle_of(FAM_A)];
        ++seen_b[cr.circle_of(FAM_B)];
        for (int q : {0, 2})
            if (!d.regions[cr.quad[q]].touches_suture)
                fail(ErrorCode::GluingConditionViolated,
                     "outgoing region of x'' at " + id + " does not touch the suture");
    }
    for (int i = 0; i < d.num_circles(FAM_A); ++i)
        if (seen_a[i] != (flag[FAM_A][i] == 1 ? 0 : 1))
            fail(ErrorCode::GluingConditionViolated, "x'' is not a complement generator");
    for (int i = 0; i < d.num_circles(FAM_B); ++i)
        if (seen_b[i] != (flag[FAM_B][i] == 1 ? 0 : 1))
            fail(ErrorCode::GluingConditionViolated, "x'' is not a complement generator");

    Diagram sub = sub_diagram(data);
    auto sgens = enumerate_generators(sub);
    auto bgens = enumerate_generators(d);
    std::vector<std::string> x2 = data.x2;
    std::sort(x2.begin(), x2.end());
    SparseMatrixF2 chain(int(bgens.size()), int(sgens.size()));
    for (size_t j = 0; j < sgens.size(); ++j) {
        std::vector<std::string> ids = gen_ids(sub, sgens[j]);
        ids.insert(ids.end(), x2.begin(), x2.end());
        std::sort(ids.begin(), ids.end());
        int t = find_gen(d, bgens, ids);
        if (t < 0) fail(ErrorCode::InternalError, "composite generator not enumerated");
        chain.add(t, int(j));
    }
    json prov = {{"op", "glue"},
                 {"sub_regions", data.sub_regions},
                 {"x2", data.x2},
                 {"isolated_disks", data.isolated_disks},
                 {"contact_assumption", "asserted"}};
    return descend_chain_map(sub, d, chain, prov, ErrorCode::GluingConditionViolated);
}

PlanResult execute_plan(const Diagram& start, const std::vector<PlanStep>& steps) {
    PlanResult out;
    Diagram current = start;
    ChainComplex current_cx = differential_matrix(current);
    for (size_t s = 0; s < steps.size(); ++s) {
        const PlanStep& st = steps[s];
        InducedMap m;
        switch (st.kind) {
            case PlanStep::Glue:
                m = gluing_map(st.glue);
                break;
            case PlanStep::OneHandle:
                m = one_handle_map(current, st.r1, st.r2);
                break;
            case PlanStep::LinkSurgery:
                m = link_surgery_map(st.triple, st.indices);
                break;
            case PlanStep::ThreeHandle:
                m = st.alpha_circle >= 0 ? three_handle_map(current, st.alpha_circle,
                                                            st.beta_circle)
                                         : three_handle_map(current);
                break;
        }
        if (!same_complex(current, current_cx, m.source_diag, m.source_cx))
            fail(ErrorCode::StepMismatch,
                 "step " + std::to_string(s) + " does not start at the current diagram");
        current = m.target_diag;
        current_cx = m.target_cx;
        out.steps.push_back(std::move(m));
    }
    if (out.steps.empty()) {
        SparseMatrixF2 id = SparseMatrixF2::identity(int(current_cx.gens.size()));
        out.map = descend_chain_map(current, current, id, {{"op", "compose"}});
    } else if (out.steps.size() == 1) {
        out.map = out.steps[0];
    } else {
        out.map = compose_special(out.steps);
    }
    json rsteps = json::array();
    for (const InducedMap& m : out.steps) {
        json routing = json::object();
        for (const auto& [c, v] : m.routing) routing[std::to_string(c)] = v;
        rsteps.push_back({{"provenance", m.provenance}, {"routing", routing}});
    }
    json routing = json::object();
    for (const auto& [c, v] : out.map.routing) routing[std::to_string(c)] = v;
    out.report = {{"steps", rsteps},
                  {"routing", routing},
                  {"source_rank", out.map.source.total_rank},
                  {"target_rank", out.map.target.total_rank}};
    return out;
}

}  // namespace sfh

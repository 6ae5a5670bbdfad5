#include "sfh/triple.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "sfh/builder.hpp"
#include "sfh/errors.hpp"

namespace sfh {

using nlohmann::json;

namespace {

enum Ray { E = 0, N = 1, W = 2, S = 3 };

struct WordCorner {
    int region = -1;
    OArc in, out;
};

// Collect the (in, out) word corners of every crossing.
std::vector<std::vector<WordCorner>> word_corners(const Diagram& diag) {
    std::vector<std::vector<WordCorner>> out(diag.crossings.size());
    for (size_t r = 0; r < diag.regions.size(); ++r)
        for (const auto& word : diag.regions[r].words) {
            if (word.size() == 1 &&
                (word[0].is_suture || diag.segments[word[0].seg].closed()))
                continue;
            for (size_t k = 0; k < word.size(); ++k) {
                const OArc& s = word[k];
                const OArc& t = word[(k + 1) % word.size()];
                const Segment& seg = diag.segments[s.seg];
                int meet = s.fwd ? seg.head : seg.tail;
                out[meet].push_back(WordCorner{int(r), s, t});
            }
        }
    return out;
}

}  // namespace

std::vector<CrossingFrame> crossing_frames(const Diagram& diag) {
    auto corners = word_corners(diag);
    std::vector<CrossingFrame> frames(diag.crossings.size());
    for (size_t ci = 0; ci < diag.crossings.size(); ++ci) {
        const Crossing& c = diag.crossings[ci];
        if (corners[ci].size() != 4)
            fail(ErrorCode::InternalError, "crossing " + c.id + " lacks 4 corners");
        bool solved = false;
        for (bool up : {true, false}) {
            auto ray = [&](const OArc& a, bool departing) -> Ray {
                bool along = a.fwd == departing;
                if (diag.segments[a.seg].fam == c.fam_h) return along ? E : W;
                bool north = along == up;
                return north ? N : S;
            };
            std::array<int, 4> quad = {-1, -1, -1, -1};
            CrossingFrame frame;
            bool ok = true;
            for (const WordCorner& wc : corners[ci]) {
                Ray rin = ray(wc.in, false);
                Ray rout = ray(wc.out, true);
                if ((rout + 1) % 4 != rin) {
                    ok = false;
                    break;
                }
                int slot = rout == E ? 0 : rout == N ? 1 : rout == W ? 2 : 3;
                if (quad[slot] >= 0 || c.quad[slot] != wc.region) {
                    ok = false;
                    break;
                }
                quad[slot] = wc.region;
                frame.end_ray[{wc.in.seg, wc.in.fwd}] = rin;
                frame.end_ray[{wc.out.seg, !wc.out.fwd}] = rout;
            }
            if (ok) {
                frames[ci] = frame;
                solved = true;
                break;
            }
        }
        if (!solved)
            fail(ErrorCode::InternalError, "no compass frame at crossing " + c.id);
    }
    return frames;
}

// ---------------------------------------------------------------------------
// Translate construction: push every beta circle off to its left, crossing
// each alpha right next to the old crossing and crossing beta itself twice in
// a finger placed in segment 0. The strip between beta and its push-off is
// cut into two triangles, a chain of square chambers, and one bigon at the
// finger tip; the second (beta, delta) bigon is the long way around.
// ---------------------------------------------------------------------------

Diagram build_translate_triple(const Diagram& pair) {
    if (!pair.is_pair())
        fail(ErrorCode::MalformedInput, "translate construction needs a pair diagram");
    auto frames = crossing_frames(pair);

    // Fresh name prefix for the new crossings and regions.
    std::string prefix = "f";
    auto clashes = [&](const std::string& p) {
        for (const auto& id : pair.crossing_ids)
            if (id.compare(0, p.size(), p) == 0) return true;
        for (const auto& id : pair.region_ids)
            if (id.compare(0, p.size(), p) == 0) return true;
        return false;
    };
    while (clashes(prefix)) prefix += "f";

    int na = pair.num_circles(FAM_A);
    int nb = pair.num_circles(FAM_B);

    // Insertions into alpha circuits: per old alpha segment, the push-off
    // crossing adjacent to its tail and/or head crossing.
    std::vector<std::vector<std::string>> tail_d(na), head_d(na);
    for (int a = 0; a < na; ++a) {
        int len = std::max<int>(1, int(pair.circuit(FAM_A, a).size()));
        tail_d[a].assign(len, "");
        head_d[a].assign(len, "");
    }
    // Per beta circle i and crossing position k: which alpha arclet flanks it
    // (filled in after the insertions are numbered).
    struct Foot {
        int a_circ = -1;
        int a_seg = -1;     // old alpha segment carrying the arclet
        bool at_head = false;  // insertion adjacent to the segment's head
    };
    std::vector<std::vector<Foot>> feet(nb);

    for (int i = 0; i < nb; ++i) {
        const auto& cyc = pair.circuit(FAM_B, i);
        int m = int(cyc.size());
        feet[i].resize(m);
        for (int k = 0; k < m; ++k) {
            int ci = pair.crossing_index(cyc[k]);
            const Crossing& c = pair.crossings[ci];
            int out_seg = pair.segment_index(FAM_B, i, k);
            auto it = frames[ci].end_ray.find({out_seg, false});
            if (it == frames[ci].end_ray.end() || (it->second != N && it->second != S))
                fail(ErrorCode::InternalError, "beta not vertical at " + c.id);
            int left = it->second == N ? W : E;  // heading north: left is west
            int alen = int(pair.circuit(FAM_A, c.circ_h).size());
            int a_in = pair.segment_index(FAM_A, c.circ_h, (c.pos_h + alen - 1) % alen);
            int a_out = pair.segment_index(FAM_A, c.circ_h, c.pos_h);
            std::string dname = prefix + std::to_string(i) + ".d" + std::to_string(k);
            Foot f;
            f.a_circ = c.circ_h;
            if (frames[ci].end_ray.at({a_in, true}) == left) {
                f.a_seg = (c.pos_h + alen - 1) % alen;
                f.at_head = true;
                head_d[f.a_circ][f.a_seg] = dname;
            } else if (frames[ci].end_ray.at({a_out, false}) == left) {
                f.a_seg = c.pos_h;
                f.at_head = false;
                tail_d[f.a_circ][f.a_seg] = dname;
            } else {
                fail(ErrorCode::InternalError, "no alpha end on the left at " + c.id);
            }
            feet[i][k] = f;
        }
    }

    // New alpha circuits and the old-segment -> new-piece numbering.
    std::vector<std::vector<std::string>> new_alphas(na);
    // per circle: old segment -> {first new index, piece count}
    std::vector<std::vector<std::pair<int, int>>> apieces(na);
    for (int a = 0; a < na; ++a) {
        const auto& cyc = pair.circuit(FAM_A, a);
        int len = int(cyc.size());
        if (len == 0) {
            apieces[a] = {{0, 1}};
            continue;
        }
        apieces[a].resize(len);
        auto& out = new_alphas[a];
        for (int p = 0; p < len; ++p) {
            out.push_back(cyc[p]);
            int first = int(out.size()) - 1;
            if (!tail_d[a][p].empty()) out.push_back(tail_d[a][p]);
            if (!head_d[a][p].empty()) out.push_back(head_d[a][p]);
            apieces[a][p] = {first, int(out.size()) - first};
        }
    }
    auto atok = [&](int a, int idx) { return "A" + std::to_string(a) + "." + std::to_string(idx); };
    auto btok = [&](int i, int idx) { return "B" + std::to_string(i) + "." + std::to_string(idx); };
    auto dtok = [&](int i, int idx) { return "D" + std::to_string(i) + "." + std::to_string(idx); };

    // The remainder piece of an old alpha segment (the part outside any strip).
    auto a_remainder = [&](int a, int p) {
        auto [first, count] = apieces[a][p];
        (void)count;
        return first + (tail_d[a][p].empty() ? 0 : 1);
    };
    // The arclet token at beta crossing (i, k), directed d -> c when d2c.
    auto arclet = [&](int i, int k, bool d2c) {
        const Foot& f = feet[i][k];
        auto [first, count] = apieces[f.a_circ][f.a_seg];
        int idx = f.at_head ? first + count - 1 : first;
        // tail insertion: arclet runs c -> d; head insertion: d -> c
        bool fwd_is_d2c = f.at_head;
        std::string t = atok(f.a_circ, idx);
        return (d2c == fwd_is_d2c) ? t : "-" + t;
    };

    // New beta and delta circuits.
    std::vector<std::vector<std::string>> new_betas(nb), new_deltas(nb);
    json fingers = json::array();
    for (int i = 0; i < nb; ++i) {
        const auto& cyc = pair.circuit(FAM_B, i);
        int m = int(cyc.size());
        std::string t = prefix + std::to_string(i) + ".a";
        std::string u = prefix + std::to_string(i) + ".b";
        fingers.push_back({{"t", t}, {"u", u}});
        if (m == 0) {
            new_betas[i] = {t, u};
            new_deltas[i] = {t, u};
            continue;
        }
        new_betas[i].push_back(cyc[0]);
        new_betas[i].push_back(t);
        new_betas[i].push_back(u);
        for (int k = 1; k < m; ++k) new_betas[i].push_back(cyc[k]);
        new_deltas[i].push_back(prefix + std::to_string(i) + ".d0");
        new_deltas[i].push_back(t);
        new_deltas[i].push_back(u);
        for (int k = 1; k < m; ++k)
            new_deltas[i].push_back(prefix + std::to_string(i) + ".d" + std::to_string(k));
    }

    // Token substitution for the old region words.
    auto map_arc = [&](const OArc& arc) -> std::vector<std::string> {
        if (arc.is_suture) return {pair.sutures[arc.suture]};
        const Segment& s = pair.segments[arc.seg];
        std::vector<std::string> toks;
        if (s.fam == FAM_A) {
            toks = {atok(s.circle, s.closed() ? 0 : a_remainder(s.circle, s.index))};
            if (!arc.fwd)
                for (auto& tk : toks) tk = "-" + tk;
            return toks;
        }
        // Beta occurrences: the forward (left) side now borders the push-off,
        // the backward (right) side keeps beta except across the finger tip.
        int i = s.circle;
        int m = int(pair.circuit(FAM_B, i).size());
        if (m == 0) {
            if (arc.fwd) return {dtok(i, 1), btok(i, 0)};
            return {"-" + btok(i, 1), "-" + dtok(i, 0)};
        }
        if (s.index == 0) {
            if (arc.fwd) return {dtok(i, 0), btok(i, 1), dtok(i, 2)};
            return {"-" + btok(i, 2), "-" + dtok(i, 1), "-" + btok(i, 0)};
        }
        if (arc.fwd) return {dtok(i, s.index + 2)};
        return {"-" + btok(i, s.index + 2)};
    };

    DiagramSpec spec;
    spec.d = pair.d;
    spec.triple = true;
    spec.alphas = new_alphas;
    spec.betas = new_betas;
    spec.deltas = new_deltas;
    for (size_t r = 0; r < pair.regions.size(); ++r) {
        const Region& reg = pair.regions[r];
        RegionSpec rs;
        rs.genus = reg.genus;
        rs.touches_suture = reg.touches_suture;
        for (const auto& word : reg.words) {
            std::vector<std::string> w;
            for (const OArc& arc : word)
                for (const auto& tk : map_arc(arc)) w.push_back(tk);
            rs.words.push_back(w);
        }
        spec.regions[reg.id] = rs;
    }

    // Strip regions per beta circle.
    for (int i = 0; i < nb; ++i) {
        int m = int(pair.circuit(FAM_B, i).size());
        std::string base = prefix + std::to_string(i) + ".";
        if (m == 0) {
            spec.regions[base + "F"] = RegionSpec{0, false, {{dtok(i, 0), "-" + btok(i, 0)}}};
            spec.regions[base + "L"] = RegionSpec{0, false, {{btok(i, 1), "-" + dtok(i, 1)}}};
            continue;
        }
        spec.regions[base + "F"] = RegionSpec{0, false, {{dtok(i, 1), "-" + btok(i, 1)}}};
        spec.regions[base + "P1"] =
            RegionSpec{0, false, {{btok(i, 0), "-" + dtok(i, 0), arclet(i, 0, true)}}};
        spec.regions[base + "P2"] =
            RegionSpec{0, false, {{btok(i, 2), arclet(i, 1 % m, false), "-" + dtok(i, 2)}}};
        for (int k = 1; k < m; ++k)
            spec.regions[base + "K" + std::to_string(k)] =
                RegionSpec{0,
                           false,
                           {{btok(i, k + 2), arclet(i, (k + 1) % m, false), "-" + dtok(i, k + 2),
                             arclet(i, k, true)}}};
    }

    spec.markings = pair.markings.is_null() ? json::object() : pair.markings;
    spec.markings["translate"] = {{"fingers", fingers}};

    try {
        return validate_diagram(build_diagram_json(spec));
    } catch (const EngineError& e) {
        fail(ErrorCode::TranslateConstructionFailed, e.what());
    }
}

// ---------------------------------------------------------------------------
// Pair sub-diagram extraction with region merging.
// ---------------------------------------------------------------------------

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Diagram pair_subdiagram(const Diagram& triple, int famX, int famY, std::vector<int>* group_of) {
    if (triple.nfam != 3)
        fail(ErrorCode::MalformedInput, "pair extraction needs a triple diagram");
    if (famX == famY || famX < 0 || famY < 0 || famX > 2 || famY > 2)
        fail(ErrorCode::MalformedInput, "bad family pair");
    int famZ = 3 - famX - famY;

    auto survives = [&](const Crossing& c) {
        return c.on_family(famX) && c.on_family(famY);
    };

    // Filtered circuits and old -> new segment numbering for the two kept
    // families. newseg[fam][circle][old index] = new segment index.
    std::map<int, std::vector<std::vector<int>>> newseg;
    std::map<int, std::vector<std::vector<std::string>>> newcyc;
    for (int fam : {famX, famY}) {
        int n = triple.num_circles(fam);
        newseg[fam].resize(n);
        newcyc[fam].resize(n);
        for (int c = 0; c < n; ++c) {
            const auto& cyc = triple.circuit(fam, c);
            int len = int(cyc.size());
            if (len == 0) {
                newseg[fam][c] = {0};
                continue;
            }
            std::vector<int> sp;
            for (int p = 0; p < len; ++p)
                if (survives(triple.crossings[triple.crossing_index(cyc[p])])) {
                    sp.push_back(p);
                    newcyc[fam][c].push_back(cyc[p]);
                }
            newseg[fam][c].assign(len, 0);
            if (sp.empty()) continue;  // whole circle collapses to one closed segment
            for (int p = 0; p < len; ++p) {
                // new segment j covers old positions sp[j] .. sp[j+1]-1
                int j = int(std::upper_bound(sp.begin(), sp.end(), p) - sp.begin()) - 1;
                if (j < 0) j = int(sp.size()) - 1;
                newseg[fam][c][p] = j;
            }
        }
    }

    // Merge regions across removed-family segments; count the removed open
    // arcs per group (cutting along each raises chi by one).
    UnionFind uf(int(triple.regions.size()));
    std::vector<int> cut_arcs(triple.regions.size(), 0);
    for (const Segment& s : triple.segments)
        if (s.fam == famZ) uf.unite(s.left, s.right);
    for (const Segment& s : triple.segments)
        if (s.fam == famZ && !s.closed()) ++cut_arcs[uf.find(s.left)];

    // Occurrence table: for each removed-family segment, where its two
    // oriented occurrences live.
    struct Loc {
        int region = -1, word = -1, pos = -1;
    };
    std::map<std::pair<int, bool>, Loc> zloc;
    for (size_t r = 0; r < triple.regions.size(); ++r)
        for (size_t w = 0; w < triple.regions[r].words.size(); ++w) {
            const auto& word = triple.regions[r].words[w];
            for (size_t p = 0; p < word.size(); ++p) {
                const OArc& a = word[p];
                if (a.is_suture) continue;
                if (triple.segments[a.seg].fam == famZ)
                    zloc[{a.seg, a.fwd}] = Loc{int(r), int(w), int(p)};
            }
        }

    // Walk the merged boundaries.
    char letterX = 'A', letterY = 'B';
    auto token = [&](const OArc& a) -> std::string {
        const Segment& s = triple.segments[a.seg];
        char L = s.fam == famX ? letterX : letterY;
        int idx = s.closed() ? 0 : newseg[s.fam][s.circle][s.index];
        std::string t = std::string(1, L) + std::to_string(s.circle) + "." + std::to_string(idx);
        return a.fwd ? t : "-" + t;
    };
    std::set<std::tuple<int, int, int>> visited;
    // merged words per group root
    std::map<int, std::vector<std::vector<std::string>>> gwords;
    for (size_t r0 = 0; r0 < triple.regions.size(); ++r0)
        for (size_t w0 = 0; w0 < triple.regions[r0].words.size(); ++w0) {
            const auto& word0 = triple.regions[r0].words[w0];
            for (size_t p0 = 0; p0 < word0.size(); ++p0) {
                const OArc& start = word0[p0];
                if (start.is_suture) {
                    gwords[uf.find(int(r0))].push_back({triple.sutures[start.suture]});
                    continue;
                }
                if (triple.segments[start.seg].fam == famZ) continue;
                if (visited.count({int(r0), int(w0), int(p0)})) continue;
                std::vector<std::string> out;
                int r = int(r0), w = int(w0), p = int(p0);
                while (true) {
                    const auto& word = triple.regions[r].words[w];
                    const OArc& cur = word[p];
                    visited.insert({r, w, p});
                    out.push_back(token(cur));
                    // advance, jumping through removed-family arcs
                    int q = int((p + 1) % word.size());
                    int rr = r, ww = w;
                    while (true) {
                        const OArc& nx = triple.regions[rr].words[ww][q];
                        if (nx.is_suture || triple.segments[nx.seg].fam != famZ) break;
                        Loc l = zloc.at({nx.seg, !nx.fwd});
                        rr = l.region;
                        ww = l.word;
                        q = (l.pos + 1) % int(triple.regions[rr].words[ww].size());
                    }
                    if (rr == int(r0) && ww == int(w0) && q == int(p0)) break;
                    r = rr;
                    w = ww;
                    p = q;
                }
                // collapse cyclic runs of the same new segment
                std::vector<std::string> collapsed;
                for (const auto& t : out)
                    if (collapsed.empty() || collapsed.back() != t) collapsed.push_back(t);
                while (collapsed.size() > 1 && collapsed.front() == collapsed.back())
                    collapsed.pop_back();
                gwords[uf.find(int(r0))].push_back(collapsed);
            }
        }

    // Assemble raw JSON. Group names: smallest constituent region id.
    std::map<int, std::string> gname;
    std::map<int, mpq_class> gchi;
    std::map<int, bool> gtouch;
    for (size_t r = 0; r < triple.regions.size(); ++r) {
        int g = uf.find(int(r));
        const Region& reg = triple.regions[r];
        if (!gname.count(g) || reg.id < gname[g]) gname[g] = reg.id;
        gchi[g] += reg.chi();
        gtouch[g] = gtouch[g] || reg.touches_suture;
    }

    json raw;
    raw["d"] = triple.d;
    raw["alphas"] = newcyc[famX];
    raw["betas"] = newcyc[famY];
    json cr = json::object();
    for (const Crossing& c : triple.crossings) {
        if (!survives(c)) continue;
        json q = json::array();
        for (int qi : c.quad) q.push_back(gname.at(uf.find(qi)));
        cr[c.id] = q;
    }
    raw["crossings"] = cr;
    json rg = json::object();
    for (const auto& [g, words] : gwords) {
        mpq_class chi = gchi[g] - cut_arcs[g];
        mpq_class gen2 = 2 - chi - int(words.size());
        if (gen2 < 0 || gen2.get_den() != 1 || gen2.get_num() % 2 != 0)
            fail(ErrorCode::InternalError, "bad merged genus at " + gname[g]);
        rg[gname[g]] = {{"genus", int(mpz_class(gen2.get_num() / 2).get_si())},
                        {"boundary_words", words},
                        {"touches_suture", gtouch[g]}};
    }
    raw["regions"] = rg;
    Diagram out = validate_diagram(raw);
    if (group_of) {
        group_of->assign(triple.regions.size(), -1);
        for (size_t r = 0; r < triple.regions.size(); ++r)
            (*group_of)[r] = out.region_index(gname.at(uf.find(int(r))));
    }
    return out;
}

void validate_triple(const Diagram& triple) {
    pair_subdiagram(triple, FAM_A, FAM_B);
    pair_subdiagram(triple, FAM_B, FAM_D);
    pair_subdiagram(triple, FAM_A, FAM_D);
}

Generator subordinate_theta(const Diagram& triple, const std::vector<int>& surgery_indices) {
    if (triple.nfam != 3)
        fail(ErrorCode::MalformedInput, "subordinate check needs a triple diagram");
    std::set<int> surg(surgery_indices.begin(), surgery_indices.end());
    for (int i : surg)
        if (i < 0 || i >= triple.num_circles(FAM_B))
            fail(ErrorCode::MalformedInput, "surgery index out of range");
    Diagram bd = pair_subdiagram(triple, FAM_B, FAM_D);
    std::vector<int> chosen;
    for (int i = 0; i < triple.num_circles(FAM_B); ++i) {
        std::vector<std::string> on_pair;
        for (const Crossing& c : triple.crossings)
            if (c.on_family(FAM_B) && c.on_family(FAM_D)) {
                if (c.circle_of(FAM_B) == i && c.circle_of(FAM_D) == i)
                    on_pair.push_back(c.id);
                else if (c.circle_of(FAM_B) == i || c.circle_of(FAM_D) == i)
                    fail(ErrorCode::SubordinateConditionViolated,
                         "beta/delta circles do not pair off by index at " + c.id);
            }
        if (surg.count(i)) {
            if (on_pair.size() != 1)
                fail(ErrorCode::SubordinateConditionViolated,
                     "surgery index " + std::to_string(i) + " has |beta ∩ delta| = " +
                         std::to_string(on_pair.size()));
            chosen.push_back(triple.crossing_index(on_pair[0]));
            continue;
        }
        if (on_pair.size() != 2)
            fail(ErrorCode::SubordinateConditionViolated,
                 "translate index " + std::to_string(i) + " has |beta ∩ delta| = " +
                     std::to_string(on_pair.size()));
        // lens test in the extracted (beta, delta) diagram
        auto is_lens = [&](int region) {
            const Region& r = bd.regions[region];
            if (r.genus != 0 || r.words.size() != 1 || r.words[0].size() != 2) return false;
            for (const OArc& arc : r.words[0]) {
                if (arc.is_suture) return false;
                if (bd.segments[arc.seg].circle != i) return false;
            }
            return true;
        };
        int theta = -1;
        for (const std::string& id : on_pair) {
            const Crossing& c = bd.crossings[bd.crossing_index(id)];
            if (is_lens(c.quad[0]) && is_lens(c.quad[2])) {
                if (theta >= 0)
                    fail(ErrorCode::SubordinateConditionViolated,
                         "ambiguous theta on translate pair " + std::to_string(i));
                theta = triple.crossing_index(id);
            }
        }
        if (theta < 0)
            fail(ErrorCode::SubordinateConditionViolated,
                 "translate index " + std::to_string(i) + " has no two-bigon lens pair");
        chosen.push_back(theta);
    }
    Generator g;
    g.crossings = chosen;
    std::sort(g.crossings.begin(), g.crossings.end());
    return g;
}

}  // namespace sfh

#include "sfh/diagram.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "arc_token.hpp"
#include "sfh/errors.hpp"
#include "sfh/linalg_int.hpp"

namespace sfh {

using nlohmann::json;
using ParsedArc = detail::ArcToken;

namespace {

const char* fam_letter(int fam) {
    switch (fam) {
        case FAM_A: return "A";
        case FAM_B: return "B";
        case FAM_D: return "D";
    }
    return "?";
}

ParsedArc parse_arc_token(const std::string& tok) { return detail::parse_token(tok); }

}  // namespace

int Diagram::crossing_index(const std::string& id) const {
    auto it = crossing_idx_.find(id);
    return it == crossing_idx_.end() ? -1 : it->second;
}

int Diagram::region_index(const std::string& id) const {
    auto it = region_idx_.find(id);
    return it == region_idx_.end() ? -1 : it->second;
}

int Diagram::segment_index(int fam, int circle, int index) const {
    auto it = segment_idx_.find({fam, circle, index});
    return it == segment_idx_.end() ? -1 : it->second;
}

std::string Diagram::arc_name(const OArc& a) const {
    if (a.is_suture) return sutures[a.suture];
    const Segment& s = segments[a.seg];
    std::ostringstream os;
    if (!a.fwd) os << "-";
    os << fam_letter(s.fam) << s.circle << "." << s.index;
    return os.str();
}

std::string Diagram::describe_generator(const Generator& g) const {
    std::string out;
    for (size_t i = 0; i < g.crossings.size(); ++i) {
        if (i) out += ",";
        out += crossing_ids[g.crossings[i]];
    }
    if (out.empty()) out = "()";
    return out;
}

mpq_class Diagram::euler_characteristic() const {
    mpq_class chi = 0;
    for (const Region& r : regions) chi += r.chi();
    for (const Segment& s : segments)
        if (!s.closed()) chi -= 1;
    chi += int(crossings.size());
    return chi;
}

void Diagram::build_index_tables() {
    crossing_idx_.clear();
    region_idx_.clear();
    segment_idx_.clear();
    for (size_t i = 0; i < crossing_ids.size(); ++i) crossing_idx_[crossing_ids[i]] = int(i);
    for (size_t i = 0; i < region_ids.size(); ++i) region_idx_[region_ids[i]] = int(i);
    for (size_t i = 0; i < segments.size(); ++i) {
        const Segment& s = segments[i];
        segment_idx_[{s.fam, s.circle, s.index}] = int(i);
    }
    interior_.clear();
    interior_pos_.assign(regions.size(), -1);
    for (size_t i = 0; i < regions.size(); ++i)
        if (!regions[i].touches_suture) {
            interior_pos_[i] = int(interior_.size());
            interior_.push_back(int(i));
        }
}

void Diagram::validate() {
    // Family sizes against d.
    for (int f = 0; f < nfam; ++f)
        if (num_circles(f) != d)
            fail(ErrorCode::UnbalancedDiagram,
                 std::string("family ") + fam_letter(f) + " has " +
                     std::to_string(num_circles(f)) + " circles, d = " + std::to_string(d));

    // Each crossing lies on exactly one circuit of each of two distinct
    // families, exactly once.
    for (const Crossing& c : crossings) {
        if (c.fam_h < 0 || c.fam_v < 0)
            fail(ErrorCode::InconsistentCellStructure,
                 "crossing " + c.id + " does not lie on two circuits");
    }

    // Segment occurrences: forward and backward exactly once each.
    for (const Segment& s : segments) {
        if (s.left < 0 || s.right < 0)
            fail(ErrorCode::InconsistentCellStructure,
                 "segment " + arc_name(OArc{false, -1, segment_index(s.fam, s.circle, s.index), true}) +
                     " does not appear once with each orientation");
    }

    // Word locality: consecutive arcs share a crossing and alternate family;
    // closed arcs (sutures, zero-crossing circles) must stand alone.
    std::map<std::pair<int, int>, int> corner_count;  // (region, crossing) -> corners
    for (size_t ri = 0; ri < regions.size(); ++ri) {
        Region& r = regions[ri];
        bool word_has_suture = false;
        for (const auto& word : r.words) {
            if (word.empty())
                fail(ErrorCode::MalformedInput, "empty boundary word in region " + r.id);
            bool closed_word = word.size() == 1 &&
                               (word[0].is_suture || segments[word[0].seg].closed());
            if (closed_word) {
                if (word[0].is_suture) word_has_suture = true;
                continue;
            }
            for (size_t k = 0; k < word.size(); ++k) {
                const OArc& s = word[k];
                const OArc& t = word[(k + 1) % word.size()];
                if (s.is_suture || t.is_suture)
                    fail(ErrorCode::InconsistentCellStructure,
                         "suture arc mixed into a curve word in region " + r.id);
                const Segment& ss = segments[s.seg];
                const Segment& ts = segments[t.seg];
                if (ss.closed() || ts.closed())
                    fail(ErrorCode::InconsistentCellStructure,
                         "closed curve arc inside a longer word in region " + r.id);
                int meet = s.fwd ? ss.head : ss.tail;
                int start = t.fwd ? ts.tail : ts.head;
                if (meet != start)
                    fail(ErrorCode::InconsistentCellStructure,
                         "boundary word of region " + r.id + " breaks at " + arc_name(s) +
                             " -> " + arc_name(t));
                if (ss.fam == ts.fam)
                    fail(ErrorCode::InconsistentCellStructure,
                         "boundary word of region " + r.id + " has a cusp at crossing " +
                             crossings[meet].id);
                corner_count[{int(ri), meet}]++;
            }
        }
        int corners = 0;
        for (auto& [key, v] : corner_count)
            if (key.first == int(ri)) corners += v;
        r.corner_count = corners;
        if (r.touches_suture != word_has_suture)
            fail(ErrorCode::InconsistentCellStructure,
                 "region " + r.id + " touches_suture flag disagrees with its boundary words");
        if (r.chi() > 1)
            fail(ErrorCode::InconsistentCellStructure,
                 "region " + r.id + " has Euler characteristic > 1");
    }

    // Quadrant multiplicity must equal the corner count from the words.
    std::map<std::pair<int, int>, int> quad_count;  // (region, crossing)
    for (size_t ci = 0; ci < crossings.size(); ++ci)
        for (int qv : crossings[ci].quad) quad_count[{qv, int(ci)}]++;
    for (size_t ri = 0; ri < regions.size(); ++ri)
        for (size_t ci = 0; ci < crossings.size(); ++ci) {
            int qc = quad_count.count({int(ri), int(ci)}) ? quad_count[{int(ri), int(ci)}] : 0;
            int cc = corner_count.count({int(ri), int(ci)}) ? corner_count[{int(ri), int(ci)}] : 0;
            if (qc != cc)
                fail(ErrorCode::InconsistentCellStructure,
                     "region " + regions[ri].id + " at crossing " + crossings[ci].id +
                         ": quadrant multiplicity " + std::to_string(qc) + " vs corner count " +
                         std::to_string(cc));
        }

    // Connected components: every one must reach the suture, and its Euler
    // characteristic must be realizable by a nonnegative genus.
    int nr = int(regions.size());
    std::vector<int> comp(nr, -1);
    int ncomp = 0;
    for (int seed = 0; seed < nr; ++seed) {
        if (comp[seed] >= 0) continue;
        std::vector<int> stack = {seed};
        comp[seed] = ncomp;
        while (!stack.empty()) {
            int r = stack.back();
            stack.pop_back();
            auto push = [&](int nb) {
                if (nb >= 0 && comp[nb] < 0) {
                    comp[nb] = ncomp;
                    stack.push_back(nb);
                }
            };
            for (const Segment& s : segments)
                if (s.left == r)
                    push(s.right);
                else if (s.right == r)
                    push(s.left);
            for (const Crossing& c : crossings) {
                bool touch = false;
                for (int q : c.quad)
                    if (q == r) touch = true;
                if (touch)
                    for (int q : c.quad) push(q);
            }
        }
        ++ncomp;
    }
    for (int k = 0; k < ncomp; ++k) {
        mpq_class chi = 0;
        int boundary_circles = 0;
        bool has_suture = false;
        for (int r = 0; r < nr; ++r)
            if (comp[r] == k) {
                chi += regions[r].chi();
                if (regions[r].touches_suture) has_suture = true;
            }
        for (const Segment& s : segments)
            if (!s.closed() && comp[s.left] == k) chi -= 1;
        for (const Crossing& c : crossings)
            if (comp[c.quad[0]] == k) chi += 1;
        for (size_t si = 0; si < sutures.size(); ++si)
            if (comp[suture_region[si]] == k) ++boundary_circles;
        if (!has_suture)
            fail(ErrorCode::UnbalancedDiagram,
                 "closed surface component (component " + std::to_string(k) +
                     " has no suture)");
        mpq_class g2 = 2 - boundary_circles - chi;  // = 2*genus
        if (g2.get_den() != 1 || g2 < 0 || mpz_class(g2.get_num()) % 2 != 0)
            fail(ErrorCode::InconsistentCellStructure,
                 "component " + std::to_string(k) + " has impossible Euler characteristic");
    }

    // Rational independence of each curve family in H1 of the surface:
    // a dependence is a 2-chain over the regions whose boundary is a nonzero
    // combination of whole curves of that family.
    for (int fam = 0; fam < nfam; ++fam) {
        int ncirc = num_circles(fam);
        if (ncirc == 0) continue;
        // columns: n_R for all regions, then c_i per circle of fam
        int cols = nr + ncirc;
        std::vector<std::vector<mpz_class>> rows;
        for (const Segment& s : segments) {
            std::vector<mpz_class> row(cols, 0);
            row[s.left] += 1;
            row[s.right] -= 1;
            if (s.fam == fam) row[nr + s.circle] -= 1;
            rows.push_back(std::move(row));
        }
        for (size_t si = 0; si < sutures.size(); ++si) {
            std::vector<mpz_class> row(cols, 0);
            row[suture_region[si]] = 1;
            rows.push_back(std::move(row));
        }
        IntegerMatrix A(int(rows.size()), cols);
        for (int i = 0; i < A.rows; ++i)
            for (int j = 0; j < cols; ++j) A.at(i, j) = rows[i][j];
        auto sol = integer_solve(A, std::vector<mpz_class>(A.rows, 0));
        for (const auto& k : sol.kernel)
            for (int i = 0; i < ncirc; ++i)
                if (k[nr + i] != 0)
                    fail(ErrorCode::UnbalancedDiagram,
                         std::string("curve classes of family ") + fam_letter(fam) +
                             " are dependent in H1");
    }
}

Diagram validate_diagram(const json& raw) {
    if (!raw.is_object()) fail(ErrorCode::MalformedInput, "diagram file must be a JSON object");
    Diagram dg;
    try {
        dg.d = raw.at("d").get<int>();
        auto read_family = [&](const char* key) {
            std::vector<std::vector<std::string>> fam;
            for (const auto& circ : raw.at(key)) fam.push_back(circ.get<std::vector<std::string>>());
            return fam;
        };
        dg.circuits.push_back(read_family("alphas"));
        dg.circuits.push_back(read_family("betas"));
        if (raw.contains("deltas")) {
            dg.circuits.push_back(read_family("deltas"));
            dg.nfam = 3;
        }
        if (raw.contains("markings")) dg.markings = raw.at("markings");

        for (const auto& [id, val] : raw.at("regions").items()) dg.region_ids.push_back(id);
        std::sort(dg.region_ids.begin(), dg.region_ids.end());
        for (const auto& [id, val] : raw.at("crossings").items()) dg.crossing_ids.push_back(id);
        std::sort(dg.crossing_ids.begin(), dg.crossing_ids.end());

        std::map<std::string, int> ridx;
        for (size_t i = 0; i < dg.region_ids.size(); ++i) ridx[dg.region_ids[i]] = int(i);
        std::map<std::string, int> cidx;
        for (size_t i = 0; i < dg.crossing_ids.size(); ++i) cidx[dg.crossing_ids[i]] = int(i);

        dg.crossings.resize(dg.crossing_ids.size());
        for (const auto& [id, val] : raw.at("crossings").items()) {
            Crossing& c = dg.crossings[cidx[id]];
            c.id = id;
            auto quads = val.get<std::vector<std::string>>();
            if (quads.size() != 4)
                fail(ErrorCode::MalformedInput, "crossing " + id + " must list 4 quadrants");
            for (int q = 0; q < 4; ++q) {
                auto it = ridx.find(quads[q]);
                if (it == ridx.end())
                    fail(ErrorCode::InconsistentCellStructure,
                         "crossing " + id + " references unknown region " + quads[q]);
                c.quad[q] = it->second;
            }
        }

        // Circuits: place each crossing on its circuits.
        for (int f = 0; f < dg.nfam; ++f) {
            for (size_t circ = 0; circ < dg.circuits[f].size(); ++circ) {
                for (size_t pos = 0; pos < dg.circuits[f][circ].size(); ++pos) {
                    const std::string& id = dg.circuits[f][circ][pos];
                    auto it = cidx.find(id);
                    if (it == cidx.end())
                        fail(ErrorCode::InconsistentCellStructure,
                             "circuit references unknown crossing " + id);
                    Crossing& c = dg.crossings[it->second];
                    if (c.fam_h == f || c.fam_v == f || (c.fam_h >= 0 && c.fam_v >= 0))
                        fail(ErrorCode::InconsistentCellStructure,
                             "crossing " + id + " appears on too many circuits");
                    if (c.fam_h < 0) {
                        c.fam_h = f;
                        c.circ_h = int(circ);
                        c.pos_h = int(pos);
                    } else {
                        c.fam_v = f;
                        c.circ_v = int(circ);
                        c.pos_v = int(pos);
                    }
                }
            }
        }
        for (Crossing& c : dg.crossings) {
            if (c.fam_h < 0)
                fail(ErrorCode::InconsistentCellStructure,
                     "crossing " + c.id + " missing from all circuits");
        }

        // Segments.
        for (int f = 0; f < dg.nfam; ++f)
            for (size_t circ = 0; circ < dg.circuits[f].size(); ++circ) {
                const auto& cyc = dg.circuits[f][circ];
                int m = int(cyc.size());
                if (m == 0) {
                    Segment s;
                    s.fam = f;
                    s.circle = int(circ);
                    s.index = 0;
                    dg.segments.push_back(s);
                    continue;
                }
                for (int j = 0; j < m; ++j) {
                    Segment s;
                    s.fam = f;
                    s.circle = int(circ);
                    s.index = j;
                    s.tail = cidx.at(cyc[j]);
                    s.head = cidx.at(cyc[(j + 1) % m]);
                    dg.segments.push_back(s);
                }
            }
        std::map<std::tuple<int, int, int>, int> segidx;
        for (size_t i = 0; i < dg.segments.size(); ++i) {
            const Segment& s = dg.segments[i];
            segidx[{s.fam, s.circle, s.index}] = int(i);
        }

        // Regions and words.
        std::map<std::string, int> suture_ids;  // id -> region index
        dg.regions.resize(dg.region_ids.size());
        for (const auto& [id, val] : raw.at("regions").items()) {
            Region& r = dg.regions[ridx[id]];
            r.id = id;
            r.genus = val.at("genus").get<int>();
            if (r.genus < 0) fail(ErrorCode::MalformedInput, "negative genus in region " + id);
            r.touches_suture = val.at("touches_suture").get<bool>();
            for (const auto& word : val.at("boundary_words")) {
                std::vector<OArc> w;
                for (const auto& tokj : word) {
                    std::string tok = tokj.get<std::string>();
                    ParsedArc pa = parse_arc_token(tok);
                    OArc oa;
                    if (pa.is_suture) {
                        oa.is_suture = true;
                        if (!suture_ids.count(pa.suture)) {
                            suture_ids[pa.suture] = ridx[id];
                        } else {
                            fail(ErrorCode::InconsistentCellStructure,
                                 "suture " + pa.suture + " appears more than once");
                        }
                        oa.suture = -1;  // fixed up after sorting sutures
                    } else {
                        auto it = segidx.find({pa.fam, pa.circle, pa.index});
                        if (it == segidx.end())
                            fail(ErrorCode::InconsistentCellStructure,
                                 "region " + id + " references unknown segment " + tok);
                        oa.seg = it->second;
                        oa.fwd = pa.fwd;
                        Segment& s = dg.segments[oa.seg];
                        int& side = pa.fwd ? s.left : s.right;
                        if (side >= 0)
                            fail(ErrorCode::InconsistentCellStructure,
                                 "segment " + tok + " appears twice with the same orientation");
                        side = ridx[id];
                    }
                    w.push_back(oa);
                }
                r.words.push_back(std::move(w));
            }
        }
        for (auto& [sid, rix] : suture_ids) {
            dg.sutures.push_back(sid);
        }
        std::sort(dg.sutures.begin(), dg.sutures.end());
        dg.suture_region.resize(dg.sutures.size());
        std::map<std::string, int> sidx;
        for (size_t i = 0; i < dg.sutures.size(); ++i) {
            sidx[dg.sutures[i]] = int(i);
            dg.suture_region[i] = suture_ids[dg.sutures[i]];
        }
        // Second pass to set suture indices (needs the raw tokens again).
        for (const auto& [id, val] : raw.at("regions").items()) {
            Region& r = dg.regions[ridx[id]];
            size_t wi = 0;
            for (const auto& word : val.at("boundary_words")) {
                size_t ai = 0;
                for (const auto& tokj : word) {
                    ParsedArc pa = parse_arc_token(tokj.get<std::string>());
                    if (pa.is_suture) r.words[wi][ai].suture = sidx.at(pa.suture);
                    ++ai;
                }
                ++wi;
            }
        }
    } catch (const json::exception& e) {
        fail(ErrorCode::MalformedInput, std::string("bad diagram structure: ") + e.what());
    }

    dg.build_index_tables();
    dg.validate();
    return dg;
}

Diagram load_diagram(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::MalformedInput, "cannot open " + path);
    json raw;
    try {
        in >> raw;
    } catch (const json::exception& e) {
        fail(ErrorCode::MalformedInput, std::string("JSON parse error in ") + path + ": " + e.what());
    }
    return validate_diagram(raw);
}

json diagram_to_json(const Diagram& dg) {
    json out;
    out["d"] = dg.d;
    auto fam_json = [&](int f) {
        json arr = json::array();
        for (const auto& circ : dg.circuits[f]) arr.push_back(circ);
        return arr;
    };
    out["alphas"] = fam_json(FAM_A);
    out["betas"] = fam_json(FAM_B);
    if (dg.nfam == 3) out["deltas"] = fam_json(FAM_D);
    json cr = json::object();
    for (const Crossing& c : dg.crossings) {
        json quads = json::array();
        for (int q : c.quad) quads.push_back(dg.region_ids[q]);
        cr[c.id] = quads;
    }
    out["crossings"] = cr;
    json rg = json::object();
    for (const Region& r : dg.regions) {
        json words = json::array();
        for (const auto& w : r.words) {
            json word = json::array();
            for (const OArc& a : w) word.push_back(dg.arc_name(a));
            words.push_back(word);
        }
        rg[r.id] = {{"genus", r.genus},
                    {"boundary_words", words},
                    {"touches_suture", r.touches_suture}};
    }
    out["regions"] = rg;
    if (!dg.markings.is_null()) out["markings"] = dg.markings;
    return out;
}

std::vector<Generator> enumerate_generators(const Diagram& dg, int famX, int famY) {
    int n = dg.num_circles(famX);
    std::vector<Generator> out;
    if (dg.num_circles(famY) != n) return out;
    // Candidates per famX circle, sorted by crossing id.
    std::vector<std::vector<int>> cand(n);
    for (int i = 0; i < n; ++i)
        for (size_t ci = 0; ci < dg.crossings.size(); ++ci) {
            const Crossing& c = dg.crossings[ci];
            if (c.on_family(famX) && c.circle_of(famX) == i && c.on_family(famY))
                cand[i].push_back(int(ci));
        }
    // indices are already sorted by id because crossings are id-sorted
    std::vector<int> pick(n, -1);
    std::vector<bool> used_y(n, false);
    std::vector<int> chosen;
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n) {
            Generator g;
            g.crossings = chosen;
            std::sort(g.crossings.begin(), g.crossings.end());
            out.push_back(std::move(g));
            return;
        }
        for (int ci : cand[i]) {
            int yc = dg.crossings[ci].circle_of(famY);
            if (used_y[yc]) continue;
            used_y[yc] = true;
            chosen.push_back(ci);
            self(self, i + 1);
            chosen.pop_back();
            used_y[yc] = false;
        }
    };
    rec(rec, 0);
    return out;
}

Diagram reverse_orientation(const Diagram& dg) {
    json raw = diagram_to_json(dg);
    // Mirror quadrants: NE<->NW, SE<->SW (indices 0<->1, 3<->2).
    for (auto& [id, quads] : raw["crossings"].items()) {
        std::swap(quads[0], quads[1]);
        std::swap(quads[2], quads[3]);
    }
    // Reverse each boundary word and flip arc orientations.
    for (auto& [id, reg] : raw["regions"].items()) {
        for (auto& word : reg["boundary_words"]) {
            std::vector<std::string> toks = word.get<std::vector<std::string>>();
            std::reverse(toks.begin(), toks.end());
            for (std::string& t : toks) {
                if (t[0] == 'S') continue;
                if (t[0] == '-')
                    t = t.substr(1);
                else
                    t = "-" + t;
            }
            word = toks;
        }
    }
    return validate_diagram(raw);
}

Diagram disjoint_union(const Diagram& a, const Diagram& b) {
    if (a.nfam != b.nfam) fail(ErrorCode::DimensionMismatch, "disjoint union across arities");
    json ja = diagram_to_json(a);
    json jb = diagram_to_json(b);
    auto relabel = [&](json& j, const std::string& pre, int circle_shift_per_fam[3]) {
        json out;
        out["d"] = j["d"];
        const char* keys[3] = {"alphas", "betas", "deltas"};
        for (int f = 0; f < 3; ++f) {
            if (!j.contains(keys[f])) continue;
            json arr = json::array();
            for (auto& circ : j[keys[f]]) {
                std::vector<std::string> ids;
                for (auto& id : circ) ids.push_back(pre + id.get<std::string>());
                arr.push_back(ids);
            }
            out[keys[f]] = arr;
        }
        json cr = json::object();
        for (auto& [id, quads] : j["crossings"].items()) {
            json q = json::array();
            for (auto& r : quads) q.push_back(pre + r.get<std::string>());
            cr[pre + id] = q;
        }
        out["crossings"] = cr;
        json rg = json::object();
        for (auto& [id, reg] : j["regions"].items()) {
            json words = json::array();
            for (auto& word : reg["boundary_words"]) {
                json w = json::array();
                for (auto& tokj : word) {
                    std::string t = tokj.get<std::string>();
                    bool neg = t[0] == '-';
                    std::string body = neg ? t.substr(1) : t;
                    if (body[0] == 'S') {
                        w.push_back("S" + pre + body.substr(1));
                    } else {
                        char f = body[0];
                        int fi = (f == 'A') ? 0 : (f == 'B') ? 1 : 2;
                        auto dot = body.find('.');
                        int circ = std::stoi(body.substr(1, dot - 1)) + circle_shift_per_fam[fi];
                        std::string nt = std::string(1, f) + std::to_string(circ) + body.substr(dot);
                        w.push_back((neg ? "-" : "") + nt);
                    }
                }
                words.push_back(w);
            }
            rg[pre + id] = {{"genus", reg["genus"]},
                            {"boundary_words", words},
                            {"touches_suture", reg["touches_suture"]}};
        }
        out["regions"] = rg;
        return out;
    };
    int zero[3] = {0, 0, 0};
    int shift[3] = {a.num_circles(FAM_A), a.num_circles(FAM_B),
                    a.nfam == 3 ? a.num_circles(FAM_D) : 0};
    json la = relabel(ja, "l:", zero);
    json rb = relabel(jb, "r:", shift);
    json u;
    u["d"] = a.d + b.d;
    const char* keys[3] = {"alphas", "betas", "deltas"};
    for (int f = 0; f < a.nfam; ++f) {
        json arr = la[keys[f]];
        for (auto& circ : rb[keys[f]]) arr.push_back(circ);
        u[keys[f]] = arr;
    }
    json cr = la["crossings"];
    for (auto& [id, v] : rb["crossings"].items()) cr[id] = v;
    u["crossings"] = cr;
    json rg = la["regions"];
    for (auto& [id, v] : rb["regions"].items()) rg[id] = v;
    u["regions"] = rg;
    return validate_diagram(u);
}

OneHandleResult attach_onehandle_annulus(const Diagram& dg, const std::string& r1,
                                         const std::string& r2) {
    int i1 = dg.region_index(r1), i2 = dg.region_index(r2);
    if (i1 < 0 || i2 < 0)
        fail(ErrorCode::MalformedInput, "unknown region for one-handle attachment");
    if (!dg.regions[i1].touches_suture || !dg.regions[i2].touches_suture)
        fail(ErrorCode::RegionNotOnBoundary,
             "one-handle feet must lie in suture-touching regions");
    json raw = diagram_to_json(dg);
    // Fresh names for the handle cells.
    int k = 0;
    auto taken = [&](const std::string& s) {
        return raw["crossings"].contains(s) || raw["regions"].contains(s);
    };
    while (taken("h" + std::to_string(k) + ".p") || taken("h" + std::to_string(k) + ".q") ||
           taken("h" + std::to_string(k) + ".b1") || taken("h" + std::to_string(k) + ".b2"))
        ++k;
    std::string pre = "h" + std::to_string(k) + ".";
    std::string p = pre + "p", q = pre + "q", b1 = pre + "b1", b2 = pre + "b2";
    int na = dg.num_circles(FAM_A), nb = dg.num_circles(FAM_B);
    std::string sa0 = "A" + std::to_string(na) + ".0", sa1 = "A" + std::to_string(na) + ".1";
    std::string sb0 = "B" + std::to_string(nb) + ".0", sb1 = "B" + std::to_string(nb) + ".1";

    raw["d"] = dg.d + 1;
    raw["alphas"].push_back(std::vector<std::string>{p, q});
    raw["betas"].push_back(std::vector<std::string>{p, q});
    // Quadrants: at p the bigons sit NE/SW (both bigons emanate from p, the
    // distinguished point); at q they sit NW/SE.
    raw["crossings"][p] = {b1, r1, b2, r2};
    raw["crossings"][q] = {r1, b1, r2, b2};
    raw["regions"][b1] = {{"genus", 0},
                          {"boundary_words", json::array({json::array({sa0, "-" + sb0})})},
                          {"touches_suture", false}};
    raw["regions"][b2] = {{"genus", 0},
                          {"boundary_words", json::array({json::array({sb1, "-" + sa1})})},
                          {"touches_suture", false}};
    raw["regions"][r1]["boundary_words"].push_back(json::array({sb0, sa1}));
    raw["regions"][r2]["boundary_words"].push_back(json::array({"-" + sa0, "-" + sb1}));
    OneHandleResult res{validate_diagram(raw), p, q};
    return res;
}

NiceResult is_nice(const Diagram& dg) {
    for (const Region& r : dg.regions) {
        if (r.touches_suture) continue;
        bool disk = r.genus == 0 && r.words.size() == 1;
        if (!disk || (r.corner_count != 2 && r.corner_count != 4))
            return {false, r.id};
    }
    return {true, ""};
}

}  // namespace sfh

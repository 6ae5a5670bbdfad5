#include "sfh/builder.hpp"

#include <map>
#include <set>

#include "arc_token.hpp"
#include "sfh/errors.hpp"

namespace sfh {

using nlohmann::json;
using detail::ArcToken;

namespace {

// Rays at a crossing, counterclockwise.
enum Ray { E = 0, N = 1, W = 2, S = 3 };

struct Corner {
    std::string region;
    ArcToken in;   // arc arriving at the crossing
    ArcToken out;  // arc departing from it
};

}  // namespace

json build_diagram_json(const DiagramSpec& spec) {
    // Segment endpoints from the circuits.
    std::map<std::tuple<int, int, int>, std::pair<std::string, std::string>> seg_ends;
    std::set<std::string> crossing_ids;
    const std::vector<std::vector<std::vector<std::string>>> fams = {spec.alphas, spec.betas,
                                                                     spec.deltas};
    for (int f = 0; f < 3; ++f)
        for (size_t circ = 0; circ < fams[f].size(); ++circ) {
            const auto& cyc = fams[f][circ];
            int m = int(cyc.size());
            for (int j = 0; j < m; ++j) {
                seg_ends[{f, int(circ), j}] = {cyc[j], cyc[(j + 1) % m]};
                crossing_ids.insert(cyc[j]);
            }
        }

    // Collect the word corners of every crossing.
    std::map<std::string, std::vector<Corner>> corners;
    for (const auto& [rid, rs] : spec.regions)
        for (const auto& word : rs.words) {
            if (word.empty()) fail(ErrorCode::MalformedInput, "empty boundary word in " + rid);
            std::vector<ArcToken> arcs;
            for (const auto& tok : word) arcs.push_back(detail::parse_token(tok));
            bool closed = arcs.size() == 1 &&
                          (arcs[0].is_suture ||
                           !seg_ends.count({arcs[0].fam, arcs[0].circle, arcs[0].index}));
            if (closed) continue;
            for (size_t k = 0; k < arcs.size(); ++k) {
                const ArcToken& s = arcs[k];
                const ArcToken& t = arcs[(k + 1) % arcs.size()];
                if (s.is_suture || t.is_suture)
                    fail(ErrorCode::InconsistentCellStructure,
                         "suture arc mixed into a curve word in " + rid);
                auto it = seg_ends.find({s.fam, s.circle, s.index});
                if (it == seg_ends.end())
                    fail(ErrorCode::InconsistentCellStructure,
                         "unknown segment in word of " + rid);
                const std::string& meet = s.fwd ? it->second.second : it->second.first;
                corners[meet].push_back(Corner{rid, s, t});
            }
        }

    // Infer quadrants per crossing: the lower family is horizontal; try both
    // vertical orientations, exactly one places all four corners.
    json crossings = json::object();
    for (const std::string& cid : crossing_ids) {
        auto it = corners.find(cid);
        if (it == corners.end() || it->second.size() != 4)
            fail(ErrorCode::InconsistentCellStructure,
                 "crossing " + cid + " does not have exactly 4 word corners");
        int fam_h = 3, fam_v = -1;
        for (const Corner& c : it->second)
            for (int f : {c.in.fam, c.out.fam}) {
                fam_h = std::min(fam_h, f);
                fam_v = std::max(fam_v, f);
            }
        if (fam_h == fam_v)
            fail(ErrorCode::InconsistentCellStructure,
                 "crossing " + cid + " lies on a single family");
        std::array<std::string, 4> best;  // NE, NW, SW, SE
        int solutions = 0;
        for (bool up : {true, false}) {
            // Ray of an arc: `departing` means the ray points along the arc
            // out of the crossing, else against it.
            auto ray = [&](const ArcToken& a, bool departing) -> Ray {
                bool along = a.fwd == departing;
                if (a.fam == fam_h) return along ? E : W;
                bool north = along == up;
                return north ? N : S;
            };
            std::array<std::string, 4> quad;
            bool ok = true;
            for (const Corner& c : it->second) {
                Ray rin = ray(c.in, false);
                Ray rout = ray(c.out, true);
                // Region-on-left: the corner fills the sector from rout
                // counterclockwise to rin, which must be one quadrant wide.
                if ((rout + 1) % 4 != rin) {
                    ok = false;
                    break;
                }
                // Sector (E,N) is NE = slot 0, (N,W) NW = 1, (W,S) SW = 2,
                // (S,E) SE = 3.
                int slot = rout == E ? 0 : rout == N ? 1 : rout == W ? 2 : 3;
                if (!quad[slot].empty()) {
                    ok = false;
                    break;
                }
                quad[slot] = c.region;
            }
            if (ok) {
                if (solutions == 0) best = quad;
                ++solutions;
            }
        }
        if (solutions == 0)
            fail(ErrorCode::InconsistentCellStructure,
                 "no consistent quadrant assignment at crossing " + cid);
        crossings[cid] = {best[0], best[1], best[2], best[3]};
    }

    json out;
    out["d"] = spec.d;
    out["alphas"] = spec.alphas;
    out["betas"] = spec.betas;
    if (spec.triple || !spec.deltas.empty()) out["deltas"] = spec.deltas;
    out["crossings"] = crossings;
    json rg = json::object();
    for (const auto& [rid, rs] : spec.regions)
        rg[rid] = {{"genus", rs.genus},
                   {"boundary_words", rs.words},
                   {"touches_suture", rs.touches_suture}};
    out["regions"] = rg;
    if (!spec.markings.is_null()) out["markings"] = spec.markings;
    return out;
}

}  // namespace sfh

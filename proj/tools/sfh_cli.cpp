// Command-line front end: parses diagrams and plan files, dispatches the
// engine, and prints one canonical JSON report (or --summary for a short
// human-readable form). Exit status 0 on success, otherwise the ErrorCode.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sfh/cobordism.hpp"
#include "sfh/complex.hpp"
#include "sfh/contact.hpp"
#include "sfh/domains.hpp"
#include "sfh/errors.hpp"

using namespace sfh;
using nlohmann::json;

namespace {

long generator_cap() {
    const char* v = std::getenv("SFH_MAX_GENERATORS");
    return v ? std::atol(v) : 1000000;
}

void check_generator_cap(const Diagram& d) {
    long count = 1;
    std::vector<long> per(d.num_circles(FAM_A), 0);
    for (const Crossing& c : d.crossings) ++per[c.circle_of(FAM_A)];
    for (long v : per) {
        count *= std::max<long>(1, v);
        if (count > generator_cap())
            fail(ErrorCode::TruncationWithoutCertificate,
                 "generator count exceeds the safety cap; raise SFH_MAX_GENERATORS");
    }
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

json matrix_json(const SparseMatrixF2& m) {
    json entries = json::array();
    for (const auto& [r, c] : m.entries) entries.push_back({r, c});
    return {{"rows", m.rows}, {"cols", m.cols}, {"entries", entries}};
}

json routing_json(const std::map<int, std::vector<int>>& routing) {
    json out = json::object();
    for (const auto& [c, v] : routing) out[std::to_string(c)] = v;
    return out;
}

json map_json(const InducedMap& m) {
    return {{"source_rank", m.source.total_rank},
            {"target_rank", m.target.total_rank},
            {"chain_matrix", matrix_json(m.chain_matrix)},
            {"matrix", matrix_json(m.matrix)},
            {"routing", routing_json(m.routing)},
            {"provenance", m.provenance}};
}

json bitvec_json(const BitVec& v) {
    json out = json::array();
    for (int i : v.support()) out.push_back(i);
    return out;
}

struct Args {
    std::string verb;
    std::vector<std::string> pos;
    std::map<std::string, std::string> opts;
    bool summary = false;
};

Args parse_args(int argc, char** argv) {
    Args a;
    if (argc < 2) fail(ErrorCode::MalformedInput, "usage: sfh_cli <verb> [args]");
    a.verb = argv[1];
    for (int i = 2; i < argc; ++i) {
        std::string s = argv[i];
        if (s == "--summary") {
            a.summary = true;
        } else if (s.rfind("--", 0) == 0) {
            std::string key = s.substr(2);
            std::string val;
            if (i + 1 < argc) val = argv[++i];
            a.opts[key] = val;
        } else {
            a.pos.push_back(s);
        }
    }
    return a;
}

const std::string& positional(const Args& a, size_t i, const char* what) {
    if (i >= a.pos.size()) fail(ErrorCode::MalformedInput, std::string("missing ") + what);
    return a.pos[i];
}

json run_validate(const Args& a) {
    Diagram d = load_diagram(positional(a, 0, "diagram path"));
    return {{"valid", true},
            {"d", d.d},
            {"crossings", d.crossings.size()},
            {"regions", d.regions.size()},
            {"euler_characteristic", d.euler_characteristic().get_str()},
            {"diagram", diagram_to_json(d)}};
}

json run_generators(const Args& a) {
    Diagram d = load_diagram(positional(a, 0, "diagram path"));
    check_generator_cap(d);
    auto gens = enumerate_generators(d);
    json list = json::array();
    for (const Generator& g : gens) list.push_back(d.describe_generator(g));
    return {{"count", gens.size()}, {"generators", list}};
}

json run_spinc(const Args& a) {
    Diagram d = load_diagram(positional(a, 0, "diagram path"));
    check_generator_cap(d);
    auto gens = enumerate_generators(d);
    auto part = spinc_partition(d, gens);
    json classes = json::array();
    for (size_t i = 0; i < gens.size(); ++i)
        classes.push_back({{"generator", d.describe_generator(gens[i])},
                           {"class", part.class_of[i]}});
    return {{"num_classes", part.num_classes}, {"classes", classes}};
}

json run_admissible(const Args& a) {
    Diagram d = load_diagram(positional(a, 0, "diagram path"));
    auto lat = periodic_domain_basis(d);
    auto adm = check_admissibility(d);
    json cert = json::array();
    for (const mpz_class& v : adm.certificate) cert.push_back(v.get_str());
    return {{"admissible", adm.admissible},
            {"periodic_rank", lat.basis.size()},
            {"certificate", cert}};
}

json run_sfh(const Args& a) {
    Diagram d = load_diagram(positional(a, 0, "diagram path"));
    check_generator_cap(d);
    ChainComplex cx = differential_matrix(d);
    SFHResult sfh = compute_sfh(cx);
    return {{"generators", cx.gens.size()},
            {"num_classes", cx.spinc.num_classes},
            {"class_ranks", sfh.class_rank},
            {"total_rank", sfh.total_rank}};
}

json run_eh(const Args& a) {
    Diagram d = load_diagram(positional(a, 0, "diagram path"));
    std::vector<std::string> ids;
    if (a.opts.count("marking")) ids = split_csv(a.opts.at("marking"));
    EHClass eh = eh_class(eh_marking(d, ids));
    return {{"valid", true},
            {"marking", ids},
            {"spinc_class", eh.spinc_class},
            {"coords", bitvec_json(eh.coords)},
            {"zero", eh.zero}};
}

json run_map(const Args& a) {
    const std::string& kind = positional(a, 0, "map kind");
    if (kind == "onehandle") {
        Diagram d = load_diagram(positional(a, 1, "diagram path"));
        InducedMap m = one_handle_map(d, positional(a, 2, "foot region"),
                                      positional(a, 3, "foot region"));
        return map_json(m);
    }
    if (kind == "threehandle") {
        Diagram d = load_diagram(positional(a, 1, "diagram path"));
        InducedMap m = a.pos.size() >= 4
                           ? three_handle_map(d, std::stoi(a.pos[2]), std::stoi(a.pos[3]))
                           : three_handle_map(d);
        return map_json(m);
    }
    if (kind == "surgery") {
        Diagram t = load_diagram(positional(a, 1, "triple path"));
        std::vector<int> idx;
        if (a.pos.size() >= 3)
            for (const std::string& s : split_csv(a.pos[2])) idx.push_back(std::stoi(s));
        if (a.opts.count("class")) {
            Generator theta = subordinate_theta(t, idx);
            return map_json(
                triangle_map(t, theta, TriangleSpincClass{std::stoi(a.opts.at("class"))}));
        }
        return map_json(link_surgery_map(t, idx));
    }
    fail(ErrorCode::MalformedInput, "unknown map kind " + kind);
}

json run_glue(const Args& a) {
    Diagram d = load_diagram(positional(a, 0, "diagram path"));
    InducedMap m = gluing_map(gluing_data(d));
    return map_json(m);
}

PlanStep parse_step(const json& j, const std::string& dir) {
    auto path = [&](const std::string& p) {
        return p.find('/') == std::string::npos && !dir.empty() ? dir + "/" + p : p;
    };
    PlanStep st;
    std::string op = j.at("op").get<std::string>();
    if (op == "one_handle") {
        st.kind = PlanStep::OneHandle;
        st.r1 = j.at("r1").get<std::string>();
        st.r2 = j.at("r2").get<std::string>();
    } else if (op == "link_surgery") {
        st.kind = PlanStep::LinkSurgery;
        st.triple = load_diagram(path(j.at("triple").get<std::string>()));
        for (const auto& i : j.at("indices")) st.indices.push_back(i.get<int>());
    } else if (op == "three_handle") {
        st.kind = PlanStep::ThreeHandle;
        if (j.contains("alpha")) {
            st.alpha_circle = j.at("alpha").get<int>();
            st.beta_circle = j.at("beta").get<int>();
        }
    } else if (op == "glue") {
        st.kind = PlanStep::Glue;
        Diagram big = load_diagram(path(j.at("big").get<std::string>()));
        st.glue = gluing_data(big);
    } else {
        fail(ErrorCode::MalformedInput, "unknown plan step " + op);
    }
    return st;
}

json run_plan(const Args& a) {
    const std::string& p = positional(a, 0, "plan path");
    std::ifstream in(p);
    if (!in) fail(ErrorCode::MalformedInput, "cannot read " + p);
    json j = json::parse(in, nullptr, true, true);
    std::string dir;
    if (auto cut = p.find_last_of('/'); cut != std::string::npos) dir = p.substr(0, cut);
    Diagram start = load_diagram(j.at("start").get<std::string>().find('/') == std::string::npos &&
                                         !dir.empty()
                                     ? dir + "/" + j.at("start").get<std::string>()
                                     : j.at("start").get<std::string>());
    std::vector<PlanStep> steps;
    for (const auto& sj : j.at("steps")) steps.push_back(parse_step(sj, dir));
    PlanResult res = execute_plan(start, steps);
    json out = map_json(res.map);
    out["report"] = res.report;
    return out;
}

json run_pair(const Args& a) {
    Diagram d = load_diagram(positional(a, 0, "diagram path"));
    DualityPairing pr = duality_pairing(d);
    ChainComplex cx = differential_matrix(d);
    ChainComplex cxr = differential_matrix(pr.reversed);
    SFHResult sfh = compute_sfh(cx);
    SFHResult sfhr = compute_sfh(cxr);
    // pairing of the homology class representatives, class by class
    SparseMatrixF2 table(sfhr.total_rank, sfh.total_rank);
    int row = 0;
    for (const auto& cls_r : sfhr.class_basis)
        for (const BitVec& br : cls_r) {
            int col = 0;
            for (const auto& cls : sfh.class_basis)
                for (const BitVec& b : cls) {
                    if (pr.pair(b, br)) table.add(row, col);
                    ++col;
                }
            ++row;
        }
    return {{"rank", sfh.total_rank},
            {"reversed_rank", sfhr.total_rank},
            {"pairing", matrix_json(table)},
            {"nondegenerate", f2_rank(table) == sfh.total_rank}};
}

json run_rankfactor(const Args& a) {
    const std::string& csv = positional(a, 0, "point counts");
    long total = 0;
    json pts = json::array();
    for (const std::string& s : split_csv(csv)) {
        long p = std::atol(s.c_str());
        if (p <= 0 || p % 2 != 0)
            fail(ErrorCode::OddOrNonpositivePointCount,
                 "point counts must be positive even integers, got " + s);
        pts.push_back(p);
        total += p / 2 - 1;
    }
    return {{"points", pts}, {"rank_factor", total}};
}

std::string summarize(const std::string& verb, const json& r) {
    std::ostringstream s;
    if (verb == "validate")
        s << "valid diagram: d=" << r["d"] << ", " << r["crossings"] << " crossings, "
          << r["regions"] << " regions";
    else if (verb == "generators")
        s << r["count"] << " generators";
    else if (verb == "spinc")
        s << r["num_classes"] << " spin-c classes";
    else if (verb == "admissible")
        s << (r["admissible"].get<bool>() ? "admissible" : "NOT admissible") << ", periodic rank "
          << r["periodic_rank"];
    else if (verb == "sfh")
        s << "SFH total rank " << r["total_rank"] << " over " << r["num_classes"] << " classes";
    else if (verb == "eh")
        s << "EH " << (r["zero"].get<bool>() ? "= 0" : "nonzero") << " in class "
          << r["spinc_class"];
    else if (verb == "rankfactor")
        s << "rank factor " << r["rank_factor"];
    else if (verb == "pair")
        s << "pairing " << (r["nondegenerate"].get<bool>() ? "nondegenerate" : "degenerate")
          << ", rank " << r["rank"];
    else
        s << "map " << r["source_rank"] << " -> " << r["target_rank"] << ", "
          << r["matrix"]["entries"].size() << " matrix entries";
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    try {
        Args a = parse_args(argc, argv);
        json report;
        if (a.verb == "validate")
            report = run_validate(a);
        else if (a.verb == "generators")
            report = run_generators(a);
        else if (a.verb == "spinc")
            report = run_spinc(a);
        else if (a.verb == "admissible")
            report = run_admissible(a);
        else if (a.verb == "sfh")
            report = run_sfh(a);
        else if (a.verb == "eh")
            report = run_eh(a);
        else if (a.verb == "map")
            report = run_map(a);
        else if (a.verb == "glue")
            report = run_glue(a);
        else if (a.verb == "plan")
            report = run_plan(a);
        else if (a.verb == "pair")
            report = run_pair(a);
        else if (a.verb == "rankfactor")
            report = run_rankfactor(a);
        else
            fail(ErrorCode::MalformedInput, "unknown verb " + a.verb);
        if (a.summary)
            std::cout << summarize(a.verb, report) << "\n";
        else
            std::cout << report.dump(2) << "\n";
        return 0;
    } catch (const EngineError& e) {
        std::cerr << e.what() << "\n";
        return int(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

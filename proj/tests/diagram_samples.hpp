#pragma once

// Shared sample diagrams for the test suites: fixture loading and a
// parametric family of nice annulus diagrams ("wiggles") that compose well
// under handles, unions, and reversal.

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "sfh/builder.hpp"
#include "sfh/diagram.hpp"

namespace sfh::samples {

inline std::string fixture_path(const std::string& name) {
    const char* dir = std::getenv("SFH_FIXTURES");
    return std::string(dir ? dir : "tests/fixtures") + "/" + name;
}

inline Diagram fixture(const std::string& name) { return load_diagram(fixture_path(name)); }

// Annulus with one alpha core and one beta core crossing it 2k times: 2k
// lens regions alternating sides, boundary regions n (S0) and s (S1).
// k = 1 is the one-handle annulus. Always nice; SFH rank 2.
inline Diagram wiggle_annulus(int k) {
    DiagramSpec spec;
    spec.d = 1;
    std::vector<std::string> cyc;
    for (int j = 0; j < 2 * k; ++j) cyc.push_back("c" + std::to_string(j));
    spec.alphas = {cyc};
    spec.betas = {cyc};
    auto A = [&](int j) { return "A0." + std::to_string(j); };
    auto B = [&](int j) { return "B0." + std::to_string(j); };
    std::vector<std::string> north, south;
    for (int j = 0; j < 2 * k; ++j) {
        RegionSpec lens;
        lens.words = {j % 2 == 0 ? std::vector<std::string>{A(j), "-" + B(j)}
                                 : std::vector<std::string>{B(j), "-" + A(j)}};
        spec.regions["L" + std::to_string(j)] = lens;
        north.push_back(j % 2 == 0 ? B(j) : A(j));
    }
    south.push_back("-" + A(0));
    for (int j = 2 * k - 1; j >= 1; --j) south.push_back("-" + (j % 2 == 0 ? A(j) : B(j)));
    RegionSpec n{0, true, {{"S0"}, north}};
    RegionSpec s{0, true, {{"S1"}, south}};
    spec.regions["n"] = n;
    spec.regions["s"] = s;
    return validate_diagram(build_diagram_json(spec));
}

// Disjoint union of one-handle annuli built as a single spec, so crossing
// ids stay stable under sub-diagram extraction (disjoint_union would prefix
// every id). Component j uses circle index j and sutures S2j, S2j+1.
inline Diagram union_annuli(const std::vector<std::string>& prefixes) {
    DiagramSpec spec;
    spec.d = int(prefixes.size());
    for (size_t j = 0; j < prefixes.size(); ++j) {
        const std::string& P = prefixes[j];
        spec.alphas.push_back({P + ".c0", P + ".c1"});
        spec.betas.push_back({P + ".c0", P + ".c1"});
        auto A = [&](int i) { return "A" + std::to_string(j) + "." + std::to_string(i); };
        auto B = [&](int i) { return "B" + std::to_string(j) + "." + std::to_string(i); };
        spec.regions[P + ".L0"] = RegionSpec{0, false, {{A(0), "-" + B(0)}}};
        spec.regions[P + ".L1"] = RegionSpec{0, false, {{B(1), "-" + A(1)}}};
        spec.regions[P + ".n"] =
            RegionSpec{0, true, {{"S" + std::to_string(2 * j)}, {B(0), A(1)}}};
        spec.regions[P + ".s"] =
            RegionSpec{0, true, {{"S" + std::to_string(2 * j + 1)}, {"-" + A(0), "-" + B(1)}}};
    }
    return validate_diagram(build_diagram_json(spec));
}

// Canceling-pair surgery triple on a once-punctured torus. Curve a (alpha)
// and curve b are the two core circles of a one-handle stabilization, meeting
// at p and q; curve c is a dual circle meeting a once (at cd) and b once (at
// ce). Surgery along c against beta b undoes the stabilization. With
// swap_roles the roles of b and c as beta/delta are exchanged, giving the
// inverse-direction two-handle whose canceling three-handle lives on the
// (a, b) pair.
inline Diagram cancel_triple(bool swap_roles = false, const std::string& p = "h0.p",
                             const std::string& q = "h0.q") {
    DiagramSpec spec;
    spec.d = 1;
    spec.triple = true;
    std::vector<std::string> a = {"cd", p, q}, b = {"ce", p, q}, c = {"cd", "ce"};
    spec.alphas = {a};
    spec.betas = {swap_roles ? c : b};
    spec.deltas = {swap_roles ? b : c};
    char bl = swap_roles ? 'D' : 'B';  // tokens of curve b
    char cl = swap_roles ? 'B' : 'D';  // tokens of curve c
    auto A = [](int j) { return "A0." + std::to_string(j); };
    auto B = [&](int j) { return bl + ("0." + std::to_string(j)); };
    auto C = [&](int j) { return cl + ("0." + std::to_string(j)); };
    spec.regions["L"] = RegionSpec{0, false, {{A(1), "-" + B(1)}}};
    spec.regions["F2"] = RegionSpec{0, false, {{C(0), B(0), "-" + A(0)}}};
    spec.regions["F3"] = RegionSpec{0, false, {{B(2), "-" + C(0), "-" + A(2)}}};
    spec.regions["F4"] = RegionSpec{
        0,
        true,
        {{A(0), B(1), A(2), "-" + C(1), "-" + B(2), "-" + A(1), "-" + B(0), C(1)}, {"S0"}}};
    return validate_diagram(build_diagram_json(spec));
}

// Random small nice diagram: wiggles composed by disjoint union, one-handle
// attachment to suture regions, and orientation reversal.
inline Diagram random_nice_diagram(std::mt19937& rng) {
    auto base = [&]() { return wiggle_annulus(1 + int(rng() % 3)); };
    Diagram d = base();
    switch (rng() % 4) {
        case 0:
            break;
        case 1:
            d = disjoint_union(d, base());
            break;
        case 2: {
            std::vector<std::string> feet;
            for (const Region& r : d.regions)
                if (r.touches_suture) feet.push_back(r.id);
            const std::string& r1 = feet[rng() % feet.size()];
            const std::string& r2 = feet[rng() % feet.size()];
            d = attach_onehandle_annulus(d, r1, r2).diagram;
            break;
        }
        case 3:
            d = disjoint_union(d, fixture("disk.json"));
            break;
    }
    if (rng() % 2) d = reverse_orientation(d);
    return d;
}

}  // namespace sfh::samples

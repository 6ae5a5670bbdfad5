#include "sfh/complex.hpp"

#include <algorithm>

#include "sfh/errors.hpp"

namespace sfh {

namespace {

mpz_class coeff_of(const Diagram& diag, const std::vector<mpz_class>& coeffs, int region) {
    int p = diag.interior_pos(region);
    return p < 0 ? mpz_class(0) : coeffs[p];
}

// Empty embedded bigon/rectangle test for a {0,1} domain: one-quadrant
// corners at every moving coordinate, no static coordinate swallowed by the
// open interior, 1 or 2 moving pairs.
bool counts_for_differential(const Diagram& diag, const std::vector<mpz_class>& coeffs,
                             const Generator& x, const Generator& y) {
    bool nonzero = false;
    for (const mpz_class& c : coeffs)
        if (c != 0) nonzero = true;
    if (!nonzero) return false;
    std::vector<int> moving, statics;
    std::set_symmetric_difference(x.crossings.begin(), x.crossings.end(), y.crossings.begin(),
                                  y.crossings.end(), std::back_inserter(moving));
    std::set_intersection(x.crossings.begin(), x.crossings.end(), y.crossings.begin(),
                          y.crossings.end(), std::back_inserter(statics));
    if (moving.size() != 2 && moving.size() != 4) return false;
    for (int c : moving) {
        mpz_class qsum = 0;
        for (int q : diag.crossings[c].quad) qsum += coeff_of(diag, coeffs, q);
        if (qsum != 1) return false;
    }
    for (int c : statics) {
        bool interior = true;
        for (int q : diag.crossings[c].quad)
            if (coeff_of(diag, coeffs, q) != 1) interior = false;
        if (interior) return false;
    }
    return true;
}

mpz_class gcd_z(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

}  // namespace

ChainComplex differential_matrix(const Diagram& diag) {
    NiceResult nice = is_nice(diag);
    if (!nice.nice)
        fail(ErrorCode::NotNice, "region " + nice.witness + " is not a suture-free bigon/square");
    AdmissibilityResult adm = check_admissibility(diag);
    if (!adm.admissible)
        fail(ErrorCode::NotAdmissible, "diagram has a nonnegative periodic domain");

    ChainComplex cx;
    cx.gens = enumerate_generators(diag);
    int n = int(cx.gens.size());
    cx.spinc = spinc_partition(diag, cx.gens);
    cx.boundary = SparseMatrixF2(n, n);
    for (int xi = 0; xi < n; ++xi)
        for (int yi = 0; yi < n; ++yi) {
            if (xi == yi || cx.spinc.class_of[xi] != cx.spinc.class_of[yi]) continue;
            int parity = 0;
            for (const auto& coeffs : enumerate_unit_domains(diag, {cx.gens[xi], cx.gens[yi]})) {
                if (!counts_for_differential(diag, coeffs, cx.gens[xi], cx.gens[yi])) continue;
                Domain dom{coeffs, {cx.gens[xi], cx.gens[yi]}};
                if (maslov_index(diag, dom) == 1) parity ^= 1;
            }
            if (parity) cx.boundary.add(yi, xi);
        }

    // relative gradings: distance to the first generator of each class,
    // measured by the Maslov index of any connecting domain, mod delta
    PeriodicLattice lat = periodic_domain_basis(diag);
    std::vector<mpz_class> mus;
    for (const auto& b : lat.basis) {
        Generator base = cx.gens.empty() ? Generator{} : cx.gens[0];
        Domain per{b, {base, base}};
        mpq_class mu = maslov_index(diag, per);
        if (mu.get_den() != 1) fail(ErrorCode::InternalError, "non-integral periodic index");
        mus.push_back(mu.get_num());
    }
    cx.delta.assign(cx.spinc.num_classes, 0);
    for (int c = 0; c < cx.spinc.num_classes; ++c) {
        mpz_class g = 0;
        for (const mpz_class& m : mus) g = gcd_z(g, m);
        cx.delta[c] = g;
    }
    cx.grading.assign(n, 0);
    std::vector<int> base_of(cx.spinc.num_classes, -1);
    for (int i = 0; i < n; ++i)
        if (base_of[cx.spinc.class_of[i]] < 0) base_of[cx.spinc.class_of[i]] = i;
    for (int i = 0; i < n; ++i) {
        int c = cx.spinc.class_of[i];
        auto conn = connecting_domain(diag, cx.gens[i], cx.gens[base_of[c]]);
        if (!conn.solvable) fail(ErrorCode::InternalError, "class member without connecting domain");
        mpq_class mu = maslov_index(diag, conn.domain);
        if (mu.get_den() != 1) fail(ErrorCode::InternalError, "non-integral relative grading");
        mpz_class g = mu.get_num();
        if (cx.delta[c] > 0) {
            mpz_class r;
            mpz_fdiv_r(r.get_mpz_t(), g.get_mpz_t(), cx.delta[c].get_mpz_t());
            g = r;
        }
        cx.grading[i] = g;
    }
    return cx;
}

SFHResult compute_sfh(const ChainComplex& cx) {
    SFHResult out;
    int n = int(cx.gens.size());
    for (int c = 0; c < cx.spinc.num_classes; ++c) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (cx.spinc.class_of[i] == c) members.push_back(i);
        int m = int(members.size());
        SparseMatrixF2 block(m, m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (cx.boundary.entries.count({members[a], members[b]})) block.add(a, b);
        F2Homology h(block, block);
        out.class_rank.push_back(h.rank());
        out.total_rank += h.rank();
        std::vector<BitVec> basis;
        for (const BitVec& v : h.basis()) {
            BitVec full(n);
            for (int a = 0; a < m; ++a)
                if (v.get(a)) full.set(members[a], true);
            basis.push_back(full);
        }
        out.class_basis.push_back(std::move(basis));
    }
    return out;
}

SFHResult compute_sfh(const Diagram& diag) { return compute_sfh(differential_matrix(diag)); }

GradingResult relative_grading(const ChainComplex& cx, int class_id) {
    if (class_id < 0 || class_id >= cx.spinc.num_classes)
        fail(ErrorCode::MalformedInput, "no such Spin^c class");
    GradingResult out;
    out.delta = cx.delta[class_id];
    for (size_t i = 0; i < cx.gens.size(); ++i)
        if (cx.spinc.class_of[i] == class_id) {
            out.members.push_back(int(i));
            out.grading.push_back(cx.grading[i]);
        }
    return out;
}

Generator select_theta(const Diagram& diag) {
    if (!diag.is_pair()) fail(ErrorCode::NotTranslateType, "theta selection needs a pair diagram");
    auto is_lens = [&](int region, int a_circ, int b_circ) {
        const Region& r = diag.regions[region];
        if (r.genus != 0 || r.words.size() != 1 || r.words[0].size() != 2) return false;
        int seen_a = -1, seen_b = -1;
        for (const OArc& arc : r.words[0]) {
            if (arc.is_suture) return false;
            const Segment& s = diag.segments[arc.seg];
            if (s.fam == FAM_A) seen_a = s.circle;
            if (s.fam == FAM_B) seen_b = s.circle;
        }
        return seen_a == a_circ && seen_b == b_circ;
    };

    std::vector<int> chosen;
    std::vector<bool> b_used(diag.num_circles(FAM_B), false);
    for (int i = 0; i < diag.num_circles(FAM_A); ++i) {
        std::vector<int> on_pair;
        int partner = -1;
        for (size_t ci = 0; ci < diag.crossings.size(); ++ci) {
            const Crossing& c = diag.crossings[ci];
            if (!c.on_family(FAM_A) || c.circle_of(FAM_A) != i) continue;
            int b = c.circle_of(FAM_B);
            if (b < 0)
                fail(ErrorCode::NotTranslateType, "crossing " + c.id + " not on a beta circle");
            if (partner < 0) partner = b;
            if (b != partner)
                fail(ErrorCode::NotTranslateType, "curve meets more than one partner circle");
            on_pair.push_back(int(ci));
        }
        if (partner < 0 || on_pair.size() != 2 || b_used[partner])
            fail(ErrorCode::NotTranslateType, "curves do not pair off with two crossings each");
        b_used[partner] = true;
        int theta = -1;
        for (int ci : on_pair) {
            const Crossing& c = diag.crossings[ci];
            if (is_lens(c.quad[0], i, partner) && is_lens(c.quad[2], i, partner)) {
                if (theta >= 0)
                    fail(ErrorCode::NotTranslateType, "both crossings look like theta");
                theta = ci;
            }
        }
        if (theta < 0) fail(ErrorCode::NotTranslateType, "no crossing has both lens quadrants");
        chosen.push_back(theta);
    }
    Generator g;
    g.crossings = chosen;
    std::sort(g.crossings.begin(), g.crossings.end());
    return g;
}

}  // namespace sfh

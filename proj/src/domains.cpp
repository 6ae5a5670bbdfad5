#include "sfh/domains.hpp"

#include <algorithm>
#include <functional>

#include "sfh/errors.hpp"
#include "sfh/linalg_int.hpp"
#include "sfh/rational_lp.hpp"

namespace sfh {

namespace {

bool has_coord(const Generator& g, int ci) {
    return std::binary_search(g.crossings.begin(), g.crossings.end(), ci);
}

// Boundary-chain equations over the interior-region coefficients: at each
// crossing of each curve the chain multiplicities of the adjacent segments
// jump by the generator incidences. m(s) = n_left - n_right, boundary
// regions contribute 0.
DomainSystem build_system(const Diagram& diag, const std::vector<Generator>& endpoints) {
    int arity = int(endpoints.size());
    if (arity == 2 && !diag.is_pair())
        fail(ErrorCode::MalformedDomain, "bigon endpoints on a triple diagram");
    if (arity == 3 && diag.nfam != 3)
        fail(ErrorCode::MalformedDomain, "triangle endpoints on a pair diagram");
    if (arity != 2 && arity != 3) fail(ErrorCode::MalformedDomain, "endpoints must be 2 or 3 generators");
    int n = int(diag.interior_regions().size());

    auto rhs_for = [&](int fam, int ci) -> int {
        auto in = [&](const Generator& g) { return has_coord(g, ci) ? 1 : 0; };
        if (arity == 2) {
            const Generator &x = endpoints[0], &y = endpoints[1];
            return fam == FAM_A ? in(y) - in(x) : in(x) - in(y);
        }
        const Generator &x = endpoints[0], &t = endpoints[1], &y = endpoints[2];
        if (fam == FAM_A) return in(y) - in(x);
        if (fam == FAM_B) return in(x) - in(t);
        return in(t) - in(y);
    };

    std::vector<std::vector<mpz_class>> rows;
    std::vector<mpz_class> rhs;
    auto add_m = [&](std::vector<mpz_class>& row, int seg, int sign) {
        const Segment& s = diag.segments[seg];
        if (s.left >= 0 && diag.interior_pos(s.left) >= 0)
            row[diag.interior_pos(s.left)] += sign;
        if (s.right >= 0 && diag.interior_pos(s.right) >= 0)
            row[diag.interior_pos(s.right)] -= sign;
    };
    for (size_t ci = 0; ci < diag.crossings.size(); ++ci) {
        const Crossing& c = diag.crossings[ci];
        const int plc[2][3] = {{c.fam_h, c.circ_h, c.pos_h}, {c.fam_v, c.circ_v, c.pos_v}};
        for (const auto& [fam, circ, pos] : plc) {
            int m = int(diag.circuit(fam, circ).size());
            int s_out = diag.segment_index(fam, circ, pos);
            int s_in = diag.segment_index(fam, circ, (pos - 1 + m) % m);
            std::vector<mpz_class> row(n, 0);
            add_m(row, s_in, +1);
            add_m(row, s_out, -1);
            rows.push_back(std::move(row));
            rhs.push_back(rhs_for(fam, int(ci)));
        }
    }
    DomainSystem sys{IntegerMatrix(int(rows.size()), n), std::move(rhs)};
    for (int i = 0; i < sys.A.rows; ++i)
        for (int j = 0; j < n; ++j) sys.A.at(i, j) = rows[i][j];
    return sys;
}

ConnectingDomainResult solve_connecting(const Diagram& diag,
                                        const std::vector<Generator>& endpoints) {
    DomainSystem sys = build_system(diag, endpoints);
    IntSolveResult sol = integer_solve(sys.A, sys.b);
    ConnectingDomainResult out;
    out.solvable = sol.solvable_z;
    out.basis = std::move(sol.kernel);
    if (out.solvable) {
        out.domain.coeffs = std::move(sol.solution);
        out.domain.endpoints = endpoints;
    }
    return out;
}

// max c^T t over { C t <= d }, t free (split into u - v).
LPResult lp_free(const std::vector<std::vector<mpq_class>>& C, const std::vector<mpq_class>& d,
                 const std::vector<mpq_class>& c) {
    size_t k = c.size();
    LinearProgram lp;
    lp.b = d;
    for (const auto& row : C) {
        std::vector<mpq_class> r(2 * k);
        for (size_t j = 0; j < k; ++j) {
            r[j] = row[j];
            r[k + j] = -row[j];
        }
        lp.A.push_back(std::move(r));
    }
    lp.c.resize(2 * k);
    for (size_t j = 0; j < k; ++j) {
        lp.c[j] = c[j];
        lp.c[k + j] = -c[j];
    }
    LPResult res = solve_lp(lp);
    if (res.status == LPStatus::Optimal) {
        std::vector<mpq_class> t(k);
        for (size_t j = 0; j < k; ++j) t[j] = res.x[j] - res.x[k + j];
        res.x = std::move(t);
    }
    return res;
}

mpz_class floor_q(const mpq_class& q);
mpz_class ceil_q(const mpq_class& q);

// Enumerate every integer point of the bounded polytope { C t <= d } by
// branching on one coordinate at a time with exact LP bounds.
void dfs_lattice(std::vector<std::vector<mpq_class>>& C, std::vector<mpq_class>& d, size_t k,
                 std::vector<mpz_class>& tfix, size_t level,
                 const std::function<void(const std::vector<mpz_class>&)>& emit) {
    if (level == k) {
        emit(tfix);
        return;
    }
    std::vector<mpq_class> obj(k, 0);
    obj[level] = 1;
    LPResult hi = lp_free(C, d, obj);
    if (hi.status == LPStatus::Infeasible) return;
    obj[level] = -1;
    LPResult lo = lp_free(C, d, obj);
    if (hi.status != LPStatus::Optimal || lo.status != LPStatus::Optimal)
        fail(ErrorCode::InternalError, "bounded enumeration polytope reported unbounded");
    mpz_class lo_i = ceil_q(-lo.value), hi_i = floor_q(hi.value);
    for (mpz_class v = lo_i; v <= hi_i; ++v) {
        tfix[level] = v;
        std::vector<mpq_class> eq(k, 0);
        eq[level] = 1;
        C.push_back(eq);
        d.push_back(mpq_class(v));
        eq[level] = -1;
        C.push_back(std::move(eq));
        d.push_back(mpq_class(-v));
        dfs_lattice(C, d, k, tfix, level + 1, emit);
        C.pop_back();
        C.pop_back();
        d.pop_back();
        d.pop_back();
    }
}

mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

mpz_class ceil_q(const mpq_class& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

}  // namespace

DomainSystem domain_system(const Diagram& diag, const std::vector<Generator>& endpoints) {
    return build_system(diag, endpoints);
}

ConnectingDomainResult connecting_domain(const Diagram& diag, const Generator& x,
                                         const Generator& y) {
    return solve_connecting(diag, {x, y});
}

ConnectingDomainResult connecting_domain3(const Diagram& diag, const Generator& x,
                                          const Generator& theta, const Generator& y) {
    return solve_connecting(diag, {x, theta, y});
}

SpincPartition spinc_partition(const Diagram& diag, const std::vector<Generator>& gens) {
    SpincPartition part;
    part.class_of.assign(gens.size(), -1);
    std::vector<int> reps;
    for (size_t i = 0; i < gens.size(); ++i) {
        for (size_t c = 0; c < reps.size(); ++c)
            if (connecting_domain(diag, gens[reps[c]], gens[i]).solvable) {
                part.class_of[i] = int(c);
                break;
            }
        if (part.class_of[i] < 0) {
            part.class_of[i] = int(reps.size());
            reps.push_back(int(i));
        }
    }
    part.num_classes = int(reps.size());
    return part;
}

PeriodicLattice periodic_domain_basis(const Diagram& diag) {
    std::vector<Generator> empty(diag.nfam == 3 ? 3 : 2);
    DomainSystem sys = build_system(diag, empty);
    IntSolveResult sol = integer_solve(sys.A, sys.b);
    return PeriodicLattice{diag.nfam, std::move(sol.kernel)};
}

AdmissibilityResult check_admissibility(const Diagram& diag) {
    PeriodicLattice lat = periodic_domain_basis(diag);
    AdmissibilityResult out;
    size_t k = lat.basis.size();
    if (k == 0) return out;
    size_t n = diag.interior_regions().size();
    // maximize the total coefficient of B t subject to 0 <= B t <= 1;
    // a positive optimum exhibits a nonzero nonnegative periodic domain.
    LinearProgram lp;
    for (size_t i = 0; i < n; ++i) {
        std::vector<mpq_class> lo(2 * k), hi(2 * k);
        for (size_t j = 0; j < k; ++j) {
            mpq_class bij(lat.basis[j][i]);
            lo[j] = -bij;
            lo[k + j] = bij;
            hi[j] = bij;
            hi[k + j] = -bij;
        }
        lp.A.push_back(std::move(lo));
        lp.b.push_back(0);
        lp.A.push_back(std::move(hi));
        lp.b.push_back(1);
    }
    lp.c.assign(2 * k, 0);
    for (size_t j = 0; j < k; ++j) {
        mpq_class colsum = 0;
        for (size_t i = 0; i < n; ++i) colsum += mpq_class(lat.basis[j][i]);
        lp.c[j] = colsum;
        lp.c[k + j] = -colsum;
    }
    LPResult res = solve_lp(lp);
    if (res.status != LPStatus::Optimal)
        fail(ErrorCode::InternalError, "admissibility LP did not reach an optimum");
    if (res.value == 0) return out;
    out.admissible = false;
    // scale the rational witness to an integer periodic domain
    std::vector<mpq_class> dom(n, 0);
    mpz_class scale = 1;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < k; ++j)
            dom[i] += mpq_class(lat.basis[j][i]) * (res.x[j] - res.x[k + j]);
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), scale.get_mpz_t(), dom[i].get_den_mpz_t());
        scale = l;
    }
    out.certificate.resize(n);
    for (size_t i = 0; i < n; ++i) {
        mpq_class v = dom[i] * mpq_class(scale);
        out.certificate[i] = v.get_num();
        if (out.certificate[i] < 0)
            fail(ErrorCode::InternalError, "admissibility certificate went negative");
    }
    return out;
}

mpq_class maslov_index(const Diagram& diag, const Domain& dom) {
    const auto& interior = diag.interior_regions();
    if (dom.coeffs.size() != interior.size())
        fail(ErrorCode::MalformedDomain, "coefficient vector has the wrong length");
    for (const Generator& g : dom.endpoints) {
        if (int(g.crossings.size()) != diag.d)
            fail(ErrorCode::MalformedDomain, "endpoint is not a full generator");
        for (int c : g.crossings)
            if (c < 0 || c >= int(diag.crossings.size()))
                fail(ErrorCode::MalformedDomain, "endpoint coordinate out of range");
    }
    DomainSystem sys = build_system(diag, dom.endpoints);
    std::vector<mpz_class> lhs = sys.A.apply(dom.coeffs);
    if (lhs != sys.b)
        fail(ErrorCode::MalformedDomain, "coefficients violate the boundary-chain equations");

    auto coeff_of = [&](int region) -> mpq_class {
        int p = diag.interior_pos(region);
        return p < 0 ? mpq_class(0) : mpq_class(dom.coeffs[p]);
    };
    mpq_class mu = 0;
    for (size_t i = 0; i < interior.size(); ++i) {
        const Region& r = diag.regions[interior[i]];
        mpq_class euler = r.chi() - mpq_class(r.corner_count, 4);
        mu += mpq_class(dom.coeffs[i]) * euler;
    }
    for (const Generator& g : dom.endpoints)
        for (int c : g.crossings) {
            mpq_class np = 0;
            for (int q : diag.crossings[c].quad) np += coeff_of(q);
            mu += np / 4;
        }
    if (dom.endpoints.size() == 3) mu -= diag.d;
    return mu;
}

DomainEnumeration enumerate_positive_domains(const Diagram& diag,
                                             const std::vector<Generator>& endpoints,
                                             const mpq_class& index, long bound) {
    DomainEnumeration out;
    DomainSystem sys = build_system(diag, endpoints);
    IntSolveResult sol = integer_solve(sys.A, sys.b);
    if (!sol.solvable_z) return out;  // empty, certified
    const std::vector<mpz_class>& p = sol.solution;
    const auto& K = sol.kernel;
    size_t k = K.size(), n = p.size();

    auto emit = [&](const std::vector<mpz_class>& coeffs) {
        mpz_class total = 0;
        for (const mpz_class& c : coeffs) {
            if (c < 0) return;
            total += c;
        }
        if (total > bound) return;
        Domain d{coeffs, endpoints};
        if (maslov_index(diag, d) == index) out.domains.push_back(std::move(d));
    };

    if (k == 0) {
        emit(p);
        return out;
    }

    mpq_class psum = 0;
    for (const mpz_class& v : p) psum += mpq_class(v);
    // cone bound: maximize the total coefficient over all nonnegative real
    // solutions; completeness is certified when it stays within the cap
    std::vector<std::vector<mpq_class>> C;
    std::vector<mpq_class> d;
    for (size_t i = 0; i < n; ++i) {
        std::vector<mpq_class> row(k);
        for (size_t j = 0; j < k; ++j) row[j] = -mpq_class(K[j][i]);
        C.push_back(std::move(row));
        d.push_back(mpq_class(p[i]));
    }
    std::vector<mpq_class> colsum(k, 0);
    for (size_t j = 0; j < k; ++j)
        for (size_t i = 0; i < n; ++i) colsum[j] += mpq_class(K[j][i]);
    LPResult cert = lp_free(C, d, colsum);
    if (cert.status == LPStatus::Infeasible) return out;  // no nonnegative solutions at all
    if (cert.status == LPStatus::Unbounded || cert.value + psum > bound) {
        out.certified = false;
        fail(ErrorCode::TruncationWithoutCertificate,
             "positive domains may exceed the coefficient cap " + std::to_string(bound));
    }
    // keep the cap constraint in the DFS polytope as well
    {
        std::vector<mpq_class> row = colsum;
        C.push_back(std::move(row));
        d.push_back(mpq_class(bound) - psum);
    }

    std::vector<mpz_class> tfix(k, 0);
    dfs_lattice(C, d, k, tfix, 0, [&](const std::vector<mpz_class>& t) {
        std::vector<mpz_class> coeffs(p);
        for (size_t j = 0; j < k; ++j)
            for (size_t i = 0; i < n; ++i) coeffs[i] += t[j] * K[j][i];
        emit(coeffs);
    });
    std::sort(out.domains.begin(), out.domains.end(),
              [](const Domain& a, const Domain& b) { return a.coeffs < b.coeffs; });
    return out;
}

std::vector<std::vector<mpz_class>> enumerate_unit_domains(
    const Diagram& diag, const std::vector<Generator>& endpoints) {
    std::vector<std::vector<mpz_class>> out;
    DomainSystem sys = build_system(diag, endpoints);
    IntSolveResult sol = integer_solve(sys.A, sys.b);
    if (!sol.solvable_z) return out;
    const std::vector<mpz_class>& p = sol.solution;
    const auto& K = sol.kernel;
    size_t k = K.size(), n = p.size();
    auto emit = [&](const std::vector<mpz_class>& coeffs) {
        for (const mpz_class& c : coeffs)
            if (c < 0 || c > 1) return;
        out.push_back(coeffs);
    };
    if (k == 0) {
        emit(p);
        return out;
    }
    // box constraints 0 <= p + K t <= 1
    std::vector<std::vector<mpq_class>> C;
    std::vector<mpq_class> d;
    for (size_t i = 0; i < n; ++i) {
        std::vector<mpq_class> lo(k), hi(k);
        for (size_t j = 0; j < k; ++j) {
            lo[j] = -mpq_class(K[j][i]);
            hi[j] = mpq_class(K[j][i]);
        }
        C.push_back(std::move(lo));
        d.push_back(mpq_class(p[i]));
        C.push_back(std::move(hi));
        d.push_back(mpq_class(1) - mpq_class(p[i]));
    }
    std::vector<mpz_class> tfix(k, 0);
    dfs_lattice(C, d, k, tfix, 0, [&](const std::vector<mpz_class>& t) {
        std::vector<mpz_class> coeffs(p);
        for (size_t j = 0; j < k; ++j)
            for (size_t i = 0; i < n; ++i) coeffs[i] += t[j] * K[j][i];
        emit(coeffs);
    });
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace sfh

#pragma once

#include <gmpxx.h>

#include <vector>

#include "sfh/diagram.hpp"
#include "sfh/linalg_int.hpp"

namespace sfh {

// A 2-chain supported on the interior regions, connecting an ordered tuple of
// generators: (x, y) for bigon classes, (x, theta, y) for triangle classes.
// Coefficients are indexed by Diagram::interior_regions() position.
struct Domain {
    std::vector<mpz_class> coeffs;
    std::vector<Generator> endpoints;
};

// The boundary-chain equations A·m = b over the interior-region coefficients;
// solutions are exactly the domains with the given endpoints.
struct DomainSystem {
    IntegerMatrix A;
    std::vector<mpz_class> b;
};

DomainSystem domain_system(const Diagram& diag, const std::vector<Generator>& endpoints);

struct ConnectingDomainResult {
    bool solvable = false;                       // over the integers
    Domain domain;                               // meaningful iff solvable
    std::vector<std::vector<mpz_class>> basis;   // periodic-domain kernel lattice
};

// Solve the boundary-chain equations for a domain from x to y (pair
// diagrams), or across (x, theta, y) for triples. Unsolvable means the
// endpoints lie in different Spin^c classes; it is a value, not an error.
ConnectingDomainResult connecting_domain(const Diagram& diag, const Generator& x,
                                         const Generator& y);
ConnectingDomainResult connecting_domain3(const Diagram& diag, const Generator& x,
                                          const Generator& theta, const Generator& y);

struct SpincPartition {
    std::vector<int> class_of;  // per generator, classes numbered by first appearance
    int num_classes = 0;
};

SpincPartition spinc_partition(const Diagram& diag, const std::vector<Generator>& gens);

struct PeriodicLattice {
    int arity = 2;
    std::vector<std::vector<mpz_class>> basis;  // interior-region coefficient vectors
};

PeriodicLattice periodic_domain_basis(const Diagram& diag);

struct AdmissibilityResult {
    bool admissible = true;
    std::vector<mpz_class> certificate;  // nonzero nonnegative periodic domain if not
};

AdmissibilityResult check_admissibility(const Diagram& diag);

// Euler-measure + point-measure Maslov index; triangle classes subtract d.
// All constants are pinned by the calibration fixtures in the tests.
mpq_class maslov_index(const Diagram& diag, const Domain& dom);

struct DomainEnumeration {
    std::vector<Domain> domains;  // sorted by coefficient vector
    bool certified = true;        // the cone bound proved completeness
};

// All nonnegative domains with the given endpoints and Maslov index, with
// total coefficient sum at most `bound`. Throws TruncationWithoutCertificate
// when the cone bound cannot rule out solutions beyond the cap.
DomainEnumeration enumerate_positive_domains(const Diagram& diag,
                                             const std::vector<Generator>& endpoints,
                                             const mpq_class& index, long bound);

// All solutions of the boundary-chain system with coefficients in {0, 1};
// always finite, no index filter. Backs the nice-diagram differential.
std::vector<std::vector<mpz_class>> enumerate_unit_domains(
    const Diagram& diag, const std::vector<Generator>& endpoints);

}  // namespace sfh

#pragma once

#include "grasscoh/exact_linalg.hpp"
#include "grasscoh/graded_poly.hpp"
#include "grasscoh/quotient_ring.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace grasscoh {

/// Integral cohomology by degree. Degrees missing from `groups` are trivial.
struct CohomologyTable {
    std::map<int, AbelianGroup> groups;
    std::string space_label;
    int n = 0;
    int m = 0;
    std::optional<int> manifold_dimension;

    AbelianGroup group(int degree) const;
    std::size_t betti(int degree) const { return group(degree).free_rank; }
    /// Highest degree with a nontrivial group, or -1 for the empty table.
    int top_degree() const;
    /// Inserts g unless it is trivial.
    void set(int degree, AbelianGroup g);

    bool operator==(const CohomologyTable&) const = default;
};

/// Total space of the S^(2r-1)-bundle with Euler class e over an evenly graded, torsion-free
/// base: H^(2i) = coker(e : H^(2i-2r) -> H^(2i)), H^(2i+1) = ker(e : H^(2i+2-2r) -> H^(2i+2)).
/// The base's truncation degree is taken as its real dimension, so the result is set as a
/// closed manifold of dimension truncation + 2r - 1.
CohomologyTable sphere_bundle_cohomology(const PresentedGradedRing& base, const GradedPolynomial& euler, int r);

/// Hol1(Gr(n,m)), dimension 2n(m+1) + 2m - 3.
CohomologyTable hol1_table(int n, int m);

/// Rat1(Gr(n,m)) via its sphere bundle over P^(n-1); requires 1 <= n <= m.
CohomologyTable rat1_table(int n, int m);

struct DualityReport {
    bool betti_symmetric = true;
    bool torsion_dual = true;
    bool euler_characteristic_zero = true;
    std::vector<std::string> failures;

    bool passed() const { return betti_symmetric && torsion_dual && euler_characteristic_zero; }
};

/// Poincare duality checks for a closed orientable odd-dimensional manifold.
DualityReport verify_duality(const CohomologyTable& table);

}  // namespace grasscoh

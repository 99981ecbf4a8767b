#pragma once

#include "grasscoh/graded_poly.hpp"
#include "grasscoh/quotient_ring.hpp"

#include <string>

namespace grasscoh {

/// Total Chern class of a complex vector bundle of the given rank.
class BundleClass {
public:
    /// Throws std::invalid_argument unless the degree-0 part is 1 and nothing sits above degree 2*rank.
    BundleClass(int rank, GradedPolynomial total_chern);

    int rank() const { return rank_; }
    const GradedPolynomial& total_chern() const { return total_; }
    /// c_k, the degree-2k component (zero outside 0..rank).
    GradedPolynomial chern(int k) const;

    bool operator==(const BundleClass&) const = default;

private:
    int rank_;
    GradedPolynomial total_;
};

/// c_k(E^dual) = (-1)^k c_k(E).
BundleClass dual(const BundleClass& bundle);

/// E tensor L for a line bundle with c_1(L) = line:
/// c_k(E (x) L) = sum_{j<=k} binom(r-j, k-j) line^(k-j) c_j(E).
BundleClass tensor_line(const BundleClass& bundle, const GradedPolynomial& line);

/// Same, with every Chern class rewritten in the ring's core generators.
BundleClass tensor_line(const BundleClass& bundle, const GradedPolynomial& line, const PresentedGradedRing& ring);

/// Euler class of the Hol1(Gr(n,m)) sphere bundle over U(n+m)/U(1) x U(n-1) x U(m):
/// the top Chern class of (pullback of Q^dual) tensored with the line class x,
/// written in core generators of hol1_base(n, m).ring.
GradedPolynomial euler_class_hol1(int n, int m);

/// d/dx of sum_{i+j=m+1} x^i y^j, over the given generators.
GradedPolynomial euler_closed_form_g2(int m, const Generators& gens, const std::string& x, const std::string& y);

/// Same over a fresh generator list (x:2, y:2).
GradedPolynomial euler_closed_form_g2(int m);

}  // namespace grasscoh

#pragma once

#include "grasscoh/graded_poly.hpp"
#include "grasscoh/quotient_ring.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace grasscoh {

/// Partial flag manifold U(N)/U(a1) x ... x U(ak).
struct FlagSpec {
    std::vector<int> blocks;

    int total() const;
    int complex_dimension() const;  // sum over i<j of ai*aj
    void validate() const;
};

/// Name of the i-th Chern class of block j (both 1-based): "c{j}_{i}".
std::string chern_generator_name(int block, int index);

/// Baum presentation: block-wise Chern classes modulo the positive-degree parts of
/// prod_j (1 + c{j}_1 + ... + c{j}_{aj}) - 1. Truncation defaults to 2 * complex dimension.
PresentedGradedRing partial_flag_ring(const FlagSpec& spec, std::optional<int> truncation = std::nullopt);

/// Gr(n, m) = U(n+m)/U(n) x U(m), two-block form.
PresentedGradedRing grassmannian_ring(int n, int m, std::optional<int> truncation = std::nullopt);

/// P^m as the flag [1, m].
PresentedGradedRing projective_space_ring(int m, std::optional<int> truncation = std::nullopt);

/// Z[c1_1..c1_n] / (rho_1..rho_n) with rho_i = cbar_{m+i}, where cbar is the formal inverse
/// of the total Chern class: cbar_k = -sum_{i>=1} c_i cbar_{k-i}.
PresentedGradedRing grassmannian_reduced_presentation(int n, int m, std::optional<int> truncation = std::nullopt);

/// cbar_0..cbar_upto over the given generators (c_i = generator `names[i-1]`).
std::vector<GradedPolynomial> inverse_chern_classes(const Generators& gens, const std::vector<std::string>& names, int upto);

/// Base of the Hol1(Gr(n,m)) sphere bundle: U(n+m)/U(1) x U(n-1) x U(m). The empty middle
/// block for n = 1 is dropped, leaving P^m.
struct Hol1Base {
    int n = 0;
    int m = 0;
    FlagSpec spec;
    PresentedGradedRing ring;

    std::string line_generator() const;  // the U(1) class x
    int quotient_block() const;          // block index (1-based) of U(m)
};

Hol1Base hol1_base(int n, int m);

struct PullbackImages {
    GradedPolynomial p1_image;
    std::vector<GradedPolynomial> p2_c_images;     // index k: image of c_k(gamma_n), k = 0..n
    std::vector<GradedPolynomial> p2_cbar_images;  // index k: image of cbar_k = c_k(Q), k = 0..m
};

/// Effect of p1 : Fl -> P^{n+m-1} and p2 : Fl -> Gr(n,m) on Chern classes, written in the
/// core generators of the flag ring.
PullbackImages pullback_images(const Hol1Base& base);

/// Display names: x, y, z_k for [1,1,m]; x, z_k for [1,m]; c_i, cbar_j for two blocks.
std::map<std::string, std::string> display_aliases(const FlagSpec& spec);

}  // namespace grasscoh

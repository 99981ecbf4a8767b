#pragma once

#include "grasscoh/exact_linalg.hpp"
#include "grasscoh/graded_poly.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace grasscoh {

/// Raised when a computation needs a free graded piece but finds torsion.
class PresentationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Free basis of one graded piece of a presented ring.
///
/// Polynomials are expressed over the ring's full generator list; the reduction table
/// covers every degree-d monomial in the ring's core generators (those that survive
/// linear elimination, see PresentedGradedRing). Use reduce() for arbitrary input.
///
/// The basis is a set of monomials whenever one is found. Some lattices admit none (the
/// quotient is free but no subset of monomials spans it); the representatives are then
/// integer combinations of monomials and basis_monomials stays empty.
struct DegreeBasis {
    int degree = 0;
    std::vector<GradedPolynomial> representatives;
    std::vector<Monomial> basis_monomials;
    std::map<Monomial, IntVector> reduction;
    std::vector<Integer> torsion_report;
    std::size_t free_rank = 0;
    bool monomial_basis = true;

    std::size_t rank() const { return free_rank; }
    bool is_free() const { return torsion_report.empty(); }
};

using MonomialFilter = std::function<bool(const Monomial&)>;

/// Z[generators] / (relations), computed degree by degree up to truncation_degree.
///
/// Relations are split into homogeneous components at construction. Any relation of the
/// form +-g + f, with g a generator not occurring in f, is used to eliminate g (the last
/// such generator in declared order wins); the surviving "core" generators carry the
/// remaining relations. This is a ring isomorphism, so it changes no answer but keeps the
/// per-degree matrices small for flag manifolds, where a whole block of Chern classes is
/// determined by the others.
///
/// Immutable after construction. Degree bases are cached per ring (shared between copies);
/// the cache is mutex-guarded, so concurrent degree_basis calls are safe.
class PresentedGradedRing {
public:
    PresentedGradedRing(Generators gens, const std::vector<GradedPolynomial>& relations, int truncation_degree);

    const Generators& generators() const;
    const std::vector<GradedPolynomial>& relations() const;
    int truncation_degree() const;

    const std::vector<std::size_t>& core_generators() const;
    const std::vector<GradedPolynomial>& core_relations() const;
    /// Value substituted for an eliminated generator, nullopt for core generators.
    const std::optional<GradedPolynomial>& elimination(std::size_t generator) const;

    /// Rewrites p in core generators only.
    GradedPolynomial eliminate(const GradedPolynomial& p) const;

    /// All degree-d monomials in the core generators, graded-lex descending.
    std::vector<Monomial> core_monomials(int d) const;

    /// Copy with an empty cache whose degree bases use the core monomials accepted by
    /// `preferred` whenever they form a basis. Degrees where they do not are searched as usual.
    PresentedGradedRing with_preferred_basis(MonomialFilter preferred) const;
    const MonomialFilter& preferred_basis() const;

    struct State;

private:
    explicit PresentedGradedRing(std::shared_ptr<State> state) : state_(std::move(state)) {}

    std::shared_ptr<State> state_;

    friend const DegreeBasis& degree_basis(const PresentedGradedRing& ring, int d);
};

/// Graded piece of degree d. Odd degrees, negative degrees and degrees above the
/// truncation are the zero module.
const DegreeBasis& degree_basis(const PresentedGradedRing& ring, int d);

/// Coordinates of a homogeneous polynomial over degree_basis(deg p). The zero polynomial
/// needs an explicit degree.
IntVector reduce(const PresentedGradedRing& ring, const GradedPolynomial& p, std::optional<int> degree = std::nullopt);

/// sum of coordinates times basis representatives
GradedPolynomial normal_form(const PresentedGradedRing& ring, const GradedPolynomial& p);

/// Matrix of cup product by e from degree d to degree d + deg(e); columns are images of
/// the source basis. e_degree is required only when e is zero.
IntMatrix multiplication_matrix(const PresentedGradedRing& ring, const GradedPolynomial& e, int d,
                                std::optional<int> e_degree = std::nullopt);

/// Ranks of the graded pieces, index = degree, up to the truncation degree.
/// Throws PresentationError if any piece has torsion.
std::vector<std::size_t> poincare_polynomial(const PresentedGradedRing& ring);

/// Ranks over Q (torsion ignored).
std::vector<std::size_t> rational_poincare_polynomial(const PresentedGradedRing& ring);

/// "1+2t^2+3t^4"
std::string poincare_to_string(const std::vector<std::size_t>& coefficients);

/// The degree-d part of the relation ideal, as a Hermite form over core_monomials(d).
struct IdealSlice {
    std::vector<Monomial> monomials;
    HermiteForm lattice;
};

IdealSlice ideal_slice(const PresentedGradedRing& ring, int d);

/// Ideal membership for a homogeneous polynomial; works whether or not the quotient is free.
bool ideal_contains(const PresentedGradedRing& ring, const GradedPolynomial& p);

/// Whether two rings with the same core generators have identical relation ideals in degree d.
bool same_ideal_in_degree(const PresentedGradedRing& a, const PresentedGradedRing& b, int d);

}  // namespace grasscoh

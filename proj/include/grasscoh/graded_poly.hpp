#pragma once

#include "grasscoh/exact_linalg.hpp"

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace grasscoh {

/// A polynomial generator with its cohomological degree (always even, >= 2).
struct GeneratorSpec {
    std::string name;
    int degree = 2;

    bool operator==(const GeneratorSpec&) const = default;
};

/// Shared, immutable ordered generator list. Polynomials over "the same" list compare
/// their specs, so two independently built lists with equal contents are compatible.
using Generators = std::shared_ptr<const std::vector<GeneratorSpec>>;

/// Validates (even degree >= 2, unique names) and freezes a generator list.
Generators make_generators(std::vector<GeneratorSpec> specs);

bool same_generators(const Generators& a, const Generators& b);

/// Index of a generator by name; throws std::invalid_argument if absent.
std::size_t generator_index(const Generators& gens, const std::string& name);

struct Monomial {
    std::vector<int> exponents;

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;

    bool is_one() const;
};

int degree(const Monomial& m, const std::vector<GeneratorSpec>& gens);

/// Graded lexicographic order, largest first: higher degree wins, ties broken by
/// comparing exponents left to right over the declared generator order.
class GradedLexGreater {
public:
    GradedLexGreater() = default;
    explicit GradedLexGreater(std::vector<int> weights) : weights_(std::move(weights)) {}

    bool operator()(const Monomial& a, const Monomial& b) const;

private:
    std::vector<int> weights_;
};

/// Multivariate polynomial with unbounded integer coefficients in even-degree generators.
class GradedPolynomial {
public:
    using TermMap = std::map<Monomial, Integer, GradedLexGreater>;

    explicit GradedPolynomial(Generators gens);

    static GradedPolynomial constant(Generators gens, const Integer& c);
    static GradedPolynomial variable(Generators gens, const std::string& name);
    static GradedPolynomial term(Generators gens, Monomial m, const Integer& c);

    const Generators& generators() const { return gens_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    /// Zero counts as homogeneous of every degree.
    bool is_homogeneous() const;
    /// Degree of a nonzero homogeneous polynomial; nullopt for zero or mixed degrees.
    std::optional<int> homogeneous_degree() const;
    int max_degree() const;
    Integer coefficient(const Monomial& m) const;

    void add_term(const Monomial& m, const Integer& c);

    GradedPolynomial& operator+=(const GradedPolynomial& rhs);
    GradedPolynomial& operator-=(const GradedPolynomial& rhs);
    GradedPolynomial& operator*=(const Integer& c);

    friend GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial& b) { return a += b; }
    friend GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial& b) { return a -= b; }
    friend GradedPolynomial operator*(GradedPolynomial a, const Integer& c) { return a *= c; }
    friend GradedPolynomial operator*(const Integer& c, GradedPolynomial a) { return a *= c; }
    GradedPolynomial operator-() const;

    bool operator==(const GradedPolynomial& rhs) const;

private:
    void check_compatible(const GradedPolynomial& rhs) const;

    Generators gens_;
    TermMap terms_;
};

GradedPolynomial multiply(const GradedPolynomial& p, const GradedPolynomial& q);
GradedPolynomial operator*(const GradedPolynomial& p, const GradedPolynomial& q);
GradedPolynomial power(const GradedPolynomial& p, unsigned k);

GradedPolynomial partial_derivative(const GradedPolynomial& p, const std::string& generator);

GradedPolynomial homogeneous_component(const GradedPolynomial& p, int d);

/// Every monomial of cohomological degree exactly d, in graded-lex (descending) order.
std::vector<Monomial> monomials_of_degree(const std::vector<GeneratorSpec>& gens, int d);

/// Replace generator `index` by `value` everywhere in p.
GradedPolynomial substitute(const GradedPolynomial& p, std::size_t index, const GradedPolynomial& value);

/// Rewrite p over another generator list, matching generators by name. Generators of p
/// that are missing from `target` must not occur in p.
GradedPolynomial change_generators(const GradedPolynomial& p, const Generators& target);

/// "3x^2 + 2xy + y^2". Factors are joined with '*' when any printed name is longer than
/// one character. `aliases` renames generators for display only.
std::string to_string(const GradedPolynomial& p, const std::map<std::string, std::string>& aliases = {});
std::string to_string(const Monomial& m, const std::vector<GeneratorSpec>& gens,
                       const std::map<std::string, std::string>& aliases = {});

}  // namespace grasscoh

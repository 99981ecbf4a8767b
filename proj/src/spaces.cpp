#include "grasscoh/spaces.hpp"

#include <numeric>
#include <stdexcept>

namespace grasscoh {

int FlagSpec::total() const { return std::accumulate(blocks.begin(), blocks.end(), 0); }

int FlagSpec::complex_dimension() const {
    int d = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (std::size_t j = i + 1; j < blocks.size(); ++j) {
            d += blocks[i] * blocks[j];
        }
    }
    return d;
}

void FlagSpec::validate() const {
    if (blocks.empty()) {
        throw std::invalid_argument("flag needs at least one block");
    }
    for (int a : blocks) {
        if (a < 1) {
            throw std::invalid_argument("flag blocks must be positive");
        }
    }
}

std::string chern_generator_name(int block, int index) {
    return "c" + std::to_string(block) + "_" + std::to_string(index);
}

PresentedGradedRing partial_flag_ring(const FlagSpec& spec, std::optional<int> truncation) {
    spec.validate();
    std::vector<GeneratorSpec> specs;
    for (std::size_t j = 0; j < spec.blocks.size(); ++j) {
        for (int i = 1; i <= spec.blocks[j]; ++i) {
            specs.push_back({chern_generator_name(static_cast<int>(j) + 1, i), 2 * i});
        }
    }
    Generators gens = make_generators(std::move(specs));

    GradedPolynomial total = GradedPolynomial::constant(gens, 1);
    for (std::size_t j = 0; j < spec.blocks.size(); ++j) {
        GradedPolynomial block = GradedPolynomial::constant(gens, 1);
        for (int i = 1; i <= spec.blocks[j]; ++i) {
            block += GradedPolynomial::variable(gens, chern_generator_name(static_cast<int>(j) + 1, i));
        }
        total = total * block;
    }
    total -= GradedPolynomial::constant(gens, 1);
    PresentedGradedRing ring(gens, {total}, truncation.value_or(2 * spec.complex_dimension()));

    // When the last block is the one eliminated, the tower of Grassmann bundles gives a
    // monomial basis: in block j, total exponent at most n_(j+1) + ... + n_k.
    const std::size_t k = spec.blocks.size();
    const std::size_t last_block = gens->size() - static_cast<std::size_t>(spec.blocks.back());
    std::vector<std::size_t> expected(last_block);
    std::iota(expected.begin(), expected.end(), 0);
    if (k < 2 || ring.core_generators() != expected) {
        return ring;
    }
    std::vector<std::size_t> block_of;
    std::vector<int> bound;
    int remaining = spec.total();
    for (std::size_t j = 0; j + 1 < k; ++j) {
        remaining -= spec.blocks[j];
        bound.push_back(remaining);
        block_of.insert(block_of.end(), static_cast<std::size_t>(spec.blocks[j]), j);
    }
    return ring.with_preferred_basis([block_of, bound](const Monomial& m) {
        std::vector<int> used(bound.size(), 0);
        for (std::size_t i = 0; i < block_of.size(); ++i) {
            used[block_of[i]] += m.exponents[i];
        }
        for (std::size_t j = 0; j < bound.size(); ++j) {
            if (used[j] > bound[j]) {
                return false;
            }
        }
        return true;
    });
}

PresentedGradedRing grassmannian_ring(int n, int m, std::optional<int> truncation) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("Gr(n,m) needs n, m >= 1");
    }
    return partial_flag_ring(FlagSpec{{n, m}}, truncation);
}

PresentedGradedRing projective_space_ring(int m, std::optional<int> truncation) {
    if (m < 1) {
        throw std::invalid_argument("P^m needs m >= 1");
    }
    return partial_flag_ring(FlagSpec{{1, m}}, truncation);
}

std::vector<GradedPolynomial> inverse_chern_classes(const Generators& gens, const std::vector<std::string>& names,
                                                    int upto) {
    std::vector<GradedPolynomial> cbar{GradedPolynomial::constant(gens, 1)};
    const int n = static_cast<int>(names.size());
    for (int k = 1; k <= upto; ++k) {
        GradedPolynomial next(gens);
        for (int i = 1; i <= std::min(k, n); ++i) {
            next -= GradedPolynomial::variable(gens, names[static_cast<std::size_t>(i - 1)]) *
                    cbar[static_cast<std::size_t>(k - i)];
        }
        cbar.push_back(std::move(next));
    }
    return cbar;
}

PresentedGradedRing grassmannian_reduced_presentation(int n, int m, std::optional<int> truncation) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("Gr(n,m) needs n, m >= 1");
    }
    std::vector<GeneratorSpec> specs;
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) {
        names.push_back(chern_generator_name(1, i));
        specs.push_back({names.back(), 2 * i});
    }
    Generators gens = make_generators(std::move(specs));
    auto cbar = inverse_chern_classes(gens, names, m + n);
    std::vector<GradedPolynomial> rho(cbar.begin() + m + 1, cbar.end());
    return PresentedGradedRing(gens, rho, truncation.value_or(2 * n * m));
}

std::string Hol1Base::line_generator() const { return chern_generator_name(1, 1); }

int Hol1Base::quotient_block() const { return static_cast<int>(spec.blocks.size()); }

Hol1Base hol1_base(int n, int m) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("Hol1(Gr(n,m)) needs n, m >= 1");
    }
    FlagSpec spec{n == 1 ? std::vector<int>{1, m} : std::vector<int>{1, n - 1, m}};
    PresentedGradedRing ring = partial_flag_ring(spec);
    return Hol1Base{n, m, std::move(spec), std::move(ring)};
}

PullbackImages pullback_images(const Hol1Base& base) {
    const Generators& gens = base.ring.generators();
    GradedPolynomial x = GradedPolynomial::variable(gens, base.line_generator());

    // c(gamma_n) pulls back to (1 + x) * c(U(n-1) block)
    GradedPolynomial sub_total = GradedPolynomial::constant(gens, 1) + x;
    if (base.n > 1) {
        GradedPolynomial middle = GradedPolynomial::constant(gens, 1);
        for (int i = 1; i <= base.n - 1; ++i) {
            middle += GradedPolynomial::variable(gens, chern_generator_name(2, i));
        }
        sub_total = sub_total * middle;
    }
    PullbackImages out{x, {}, {}};
    for (int k = 0; k <= base.n; ++k) {
        out.p2_c_images.push_back(base.ring.eliminate(homogeneous_component(sub_total, 2 * k)));
    }
    out.p2_cbar_images.push_back(GradedPolynomial::constant(gens, 1));
    for (int k = 1; k <= base.m; ++k) {
        out.p2_cbar_images.push_back(
            base.ring.eliminate(GradedPolynomial::variable(gens, chern_generator_name(base.quotient_block(), k))));
    }
    return out;
}

std::map<std::string, std::string> display_aliases(const FlagSpec& spec) {
    std::map<std::string, std::string> a;
    const auto& b = spec.blocks;
    if (b.size() == 3 && b[0] == 1 && b[1] == 1) {
        a[chern_generator_name(1, 1)] = "x";
        a[chern_generator_name(2, 1)] = "y";
        for (int k = 1; k <= b[2]; ++k) {
            a[chern_generator_name(3, k)] = "z_" + std::to_string(k);
        }
    } else if (b.size() == 2 && b[0] == 1) {
        a[chern_generator_name(1, 1)] = "x";
        for (int k = 1; k <= b[1]; ++k) {
            a[chern_generator_name(2, k)] = "z_" + std::to_string(k);
        }
    } else if (b.size() == 2) {
        for (int k = 1; k <= b[0]; ++k) {
            a[chern_generator_name(1, k)] = "c_" + std::to_string(k);
        }
        for (int k = 1; k <= b[1]; ++k) {
            a[chern_generator_name(2, k)] = "cbar_" + std::to_string(k);
        }
    }
    return a;
}

}  // namespace grasscoh

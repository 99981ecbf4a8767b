#include "grasscoh/char_classes.hpp"

#include "grasscoh/spaces.hpp"

#include <stdexcept>

namespace grasscoh {

BundleClass::BundleClass(int rank, GradedPolynomial total_chern) : rank_(rank), total_(std::move(total_chern)) {
    if (rank_ < 0) {
        throw std::invalid_argument("bundle rank must be nonnegative");
    }
    if (homogeneous_component(total_, 0) != GradedPolynomial::constant(total_.generators(), 1)) {
        throw std::invalid_argument("total Chern class must start with 1");
    }
    for (const auto& [m, c] : total_.terms()) {
        const int d = degree(m, *total_.generators());
        if (d > 2 * rank_) {
            throw std::invalid_argument("total Chern class has a component above twice the rank");
        }
    }
}

GradedPolynomial BundleClass::chern(int k) const { return homogeneous_component(total_, 2 * k); }

BundleClass dual(const BundleClass& bundle) {
    GradedPolynomial total(bundle.total_chern().generators());
    for (int k = 0; k <= bundle.rank(); ++k) {
        GradedPolynomial ck = bundle.chern(k);
        total += (k % 2 == 0) ? ck : -ck;
    }
    return BundleClass(bundle.rank(), std::move(total));
}

namespace {

Integer binomial(int n, int k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
}

}  // namespace

BundleClass tensor_line(const BundleClass& bundle, const GradedPolynomial& line) {
    const auto& gens = bundle.total_chern().generators();
    if (!same_generators(gens, line.generators())) {
        throw std::invalid_argument("tensor_line: line class over different generators");
    }
    if (!line.is_zero() && line.homogeneous_degree() != 2) {
        throw std::invalid_argument("tensor_line: line class must be homogeneous of degree 2");
    }
    const int r = bundle.rank();
    std::vector<GradedPolynomial> line_powers{GradedPolynomial::constant(gens, 1)};
    for (int i = 1; i <= r; ++i) {
        line_powers.push_back(line_powers.back() * line);
    }
    GradedPolynomial total(gens);
    for (int k = 0; k <= r; ++k) {
        for (int j = 0; j <= k; ++j) {
            total += binomial(r - j, k - j) * (line_powers[static_cast<std::size_t>(k - j)] * bundle.chern(j));
        }
    }
    return BundleClass(r, std::move(total));
}

BundleClass tensor_line(const BundleClass& bundle, const GradedPolynomial& line, const PresentedGradedRing& ring) {
    BundleClass raw = tensor_line(bundle, line);
    return BundleClass(raw.rank(), ring.eliminate(raw.total_chern()));
}

GradedPolynomial euler_class_hol1(int n, int m) {
    Hol1Base base = hol1_base(n, m);
    PullbackImages images = pullback_images(base);
    GradedPolynomial q_total(base.ring.generators());
    for (const auto& c : images.p2_cbar_images) {
        q_total += c;
    }
    BundleClass q(m, std::move(q_total));
    BundleClass twisted = tensor_line(dual(q), images.p1_image, base.ring);
    return twisted.chern(m);
}

GradedPolynomial euler_closed_form_g2(int m, const Generators& gens, const std::string& x, const std::string& y) {
    if (m < 1) {
        throw std::invalid_argument("euler_closed_form_g2 needs m >= 1");
    }
    GradedPolynomial xp = GradedPolynomial::variable(gens, x);
    GradedPolynomial yp = GradedPolynomial::variable(gens, y);
    GradedPolynomial sum(gens);
    for (int i = 0; i <= m + 1; ++i) {
        sum += power(xp, static_cast<unsigned>(i)) * power(yp, static_cast<unsigned>(m + 1 - i));
    }
    return partial_derivative(sum, x);
}

GradedPolynomial euler_closed_form_g2(int m) {
    return euler_closed_form_g2(m, make_generators({{"x", 2}, {"y", 2}}), "x", "y");
}

}  // namespace grasscoh

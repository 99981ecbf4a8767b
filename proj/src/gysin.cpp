#include "grasscoh/gysin.hpp"

#include "grasscoh/char_classes.hpp"
#include "grasscoh/spaces.hpp"

#include <sstream>
#include <stdexcept>

namespace grasscoh {

AbelianGroup CohomologyTable::group(int degree) const {
    auto it = groups.find(degree);
    return it == groups.end() ? AbelianGroup{} : it->second;
}

int CohomologyTable::top_degree() const { return groups.empty() ? -1 : groups.rbegin()->first; }

void CohomologyTable::set(int degree, AbelianGroup g) {
    if (g.is_trivial()) {
        groups.erase(degree);
    } else {
        groups[degree] = std::move(g);
    }
}

CohomologyTable sphere_bundle_cohomology(const PresentedGradedRing& base, const GradedPolynomial& euler, int r) {
    if (r < 1) {
        throw std::invalid_argument("sphere bundle needs fiber S^(2r-1) with r >= 1");
    }
    if (!euler.is_zero() && euler.homogeneous_degree() != 2 * r) {
        throw std::invalid_argument("Euler class must be homogeneous of degree 2r");
    }
    const int top = base.truncation_degree();
    for (int d = 0; d <= top; d += 2) {
        const DegreeBasis& b = degree_basis(base, d);
        if (!b.is_free()) {
            throw PresentationError("base cohomology is not free in degree " + std::to_string(d));
        }
    }

    const int dim = top + 2 * r - 1;
    CohomologyTable table;
    table.manifold_dimension = dim;
    for (int k = 0; k <= dim + 2; ++k) {
        AbelianGroup g;
        if (k % 2 == 0) {
            g = cokernel_group(multiplication_matrix(base, euler, k - 2 * r, 2 * r));
        } else {
            g = AbelianGroup::free(kernel(multiplication_matrix(base, euler, k + 1 - 2 * r, 2 * r)).rank);
        }
        if (k > dim && !g.is_trivial()) {
            throw std::logic_error("sphere bundle has cohomology above its dimension");
        }
        table.set(k, std::move(g));
    }
    return table;
}

CohomologyTable hol1_table(int n, int m) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("Hol1(Gr(n,m)) needs n, m >= 1");
    }
    Hol1Base base = hol1_base(n, m);
    CohomologyTable t = sphere_bundle_cohomology(base.ring, euler_class_hol1(n, m), m);
    const int expected = 2 * n * (m + 1) + 2 * m - 3;
    if (t.manifold_dimension != expected) {
        throw std::logic_error("Hol1 dimension mismatch");
    }
    std::ostringstream label;
    label << "Hol1(Gr(" << n << "," << m << "))";
    t.space_label = label.str();
    t.n = n;
    t.m = m;
    return t;
}

CohomologyTable rat1_table(int n, int m) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("Rat1(Gr(n,m)) needs n, m >= 1");
    }
    if (n > m) {
        throw std::invalid_argument("Rat1(Gr(n,m)) is computed only for n <= m");
    }
    // sphere bundle of m copies of O(-1) over P^(n-1); Euler class (-u)^m
    PresentedGradedRing base = n == 1 ? PresentedGradedRing(make_generators({}), {}, 0) : projective_space_ring(n - 1);
    GradedPolynomial euler(base.generators());
    if (n > 1) {
        GradedPolynomial u = GradedPolynomial::variable(base.generators(), chern_generator_name(1, 1));
        euler = power(-u, static_cast<unsigned>(m));
    }
    CohomologyTable t = sphere_bundle_cohomology(base, euler, m);
    std::ostringstream label;
    label << "Rat1(Gr(" << n << "," << m << "))";
    t.space_label = label.str();
    t.n = n;
    t.m = m;
    return t;
}

DualityReport verify_duality(const CohomologyTable& table) {
    if (!table.manifold_dimension) {
        throw std::invalid_argument("verify_duality: manifold dimension not set");
    }
    const int d = *table.manifold_dimension;
    DualityReport report;
    long long chi = 0;
    for (int i = 0; i <= d; ++i) {
        if (table.betti(i) != table.betti(d - i)) {
            report.betti_symmetric = false;
            report.failures.push_back("b_" + std::to_string(i) + " != b_" + std::to_string(d - i));
        }
        chi += (i % 2 == 0 ? 1 : -1) * static_cast<long long>(table.betti(i));
    }
    for (int i = 0; i <= d + 1; ++i) {
        if (table.group(i).torsion != table.group(d - i + 1).torsion) {
            report.torsion_dual = false;
            report.failures.push_back("torsion of H^" + std::to_string(i) + " != torsion of H^" +
                                      std::to_string(d - i + 1));
        }
    }
    for (const auto& [deg, g] : table.groups) {
        if (deg < 0 || deg > d) {
            report.betti_symmetric = false;
            report.failures.push_back("nontrivial group outside 0.." + std::to_string(d) + " in degree " +
                                      std::to_string(deg));
        }
    }
    if (d % 2 == 1 && chi != 0) {
        report.euler_characteristic_zero = false;
        report.failures.push_back("Euler characteristic " + std::to_string(chi) + " != 0");
    }
    return report;
}

}  // namespace grasscoh

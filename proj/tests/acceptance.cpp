#include "grasscoh/char_classes.hpp"
#include "grasscoh/cli.hpp"
#include "grasscoh/gysin.hpp"
#include "grasscoh/render.hpp"
#include "grasscoh/spaces.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace grasscoh;

namespace {

constexpr double kTimeLimitSeconds = 10.0;

struct Outcome {
    bool passed = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

AbelianGroup Z(std::size_t r = 1) { return AbelianGroup::free(r); }

std::map<int, AbelianGroup> nontrivial(std::map<int, AbelianGroup> groups) {
    std::erase_if(groups, [](const auto& kv) { return kv.second.is_trivial(); });
    return groups;
}

std::vector<std::size_t> betti_vector(const CohomologyTable& t, int top) {
    std::vector<std::size_t> b;
    for (int i = 0; i <= top; ++i) {
        b.push_back(t.betti(i));
    }
    return b;
}

// Gaussian binomial [N choose k] in q = t^2, expanded in t, from the q-Pascal rule.
std::vector<std::size_t> gaussian_binomial_t(int N, int k) {
    std::vector<std::vector<std::vector<std::size_t>>> g(static_cast<std::size_t>(N) + 1);
    for (int a = 0; a <= N; ++a) {
        g[a].resize(static_cast<std::size_t>(a) + 1);
        for (int b = 0; b <= a; ++b) {
            if (b == 0 || b == a) {
                g[a][b] = {1};
                continue;
            }
            const auto& left = g[a - 1][b - 1];
            const auto& right = g[a - 1][b];
            std::vector<std::size_t> out(std::max(left.size(), right.size() + static_cast<std::size_t>(b)), 0);
            for (std::size_t i = 0; i < left.size(); ++i) {
                out[i] += left[i];
            }
            for (std::size_t i = 0; i < right.size(); ++i) {
                out[i + static_cast<std::size_t>(b)] += right[i];
            }
            g[a][b] = out;
        }
    }
    std::vector<std::size_t> t(2 * g[N][k].size() - 1, 0);
    for (std::size_t i = 0; i < g[N][k].size(); ++i) {
        t[2 * i] = g[N][k][i];
    }
    return t;
}

std::string join(const std::vector<std::size_t>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        os << (i ? "," : "") << v[i];
    }
    return os.str();
}

Outcome criterion1() {
    Outcome o;
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run({"hol1", "2", "2", "--format", "json"}, out, err);
    o.check(code == 0, "hol1 2 2 exits with 0");
    const CohomologyTable t = parse_table_json(out.str());
    const std::map<int, AbelianGroup> expected{
        {0, Z()},  {2, Z(2)}, {4, Z(2)},  {6, AbelianGroup{1, {4}}}, {7, Z()},
        {8, AbelianGroup{0, {4}}}, {9, Z(2)}, {11, Z(2)}, {13, Z()},
    };
    o.check(t.groups == expected, "groups of Hol1(Gr(2,2))");
    for (int i = 1; i <= 13; ++i) {
        o.note("H^" + std::to_string(i) + " = " + to_string(t.group(i)));
    }
    return o;
}

Outcome criterion2() {
    Outcome o;
    const CohomologyTable t = hol1_table(2, 2);
    const std::vector<std::size_t> expected{1, 0, 2, 0, 2, 0, 1, 1, 0, 2, 0, 2, 0, 1};
    const auto b = betti_vector(t, 13);
    o.check(b == expected, "rational Poincare series 1+2t^2+2t^4+t^6+t^7+2t^9+2t^11+t^13");
    o.check(t.top_degree() == 13, "nothing above degree 13");
    o.note("betti = " + join(b));
    return o;
}

Outcome criterion3() {
    Outcome o;
    const CohomologyTable t = hol1_table(2, 3);
    const std::vector<std::size_t> expected{1, 0, 2, 0, 3, 0, 3, 0, 2, 1, 1, 2, 0, 3, 0, 3, 0, 2, 0, 1};
    const auto b = betti_vector(t, 19);
    o.check(b == expected, "betti numbers of Hol1(Gr(2,3))");
    o.check(t.top_degree() == 19, "nothing above degree 19");
    for (int i = 0; i <= 19; ++i) {
        o.check(t.betti(i) == t.betti(19 - i), "b_" + std::to_string(i) + " = b_" + std::to_string(19 - i));
    }
    o.note("betti = " + join(b));
    return o;
}

Outcome criterion4() {
    Outcome o;
    const auto p = poincare_polynomial(partial_flag_ring(FlagSpec{{1, 1, 2}}));
    o.check(poincare_to_string(p) == "1+2t^2+3t^4+3t^6+2t^8+t^10", "Poincare polynomial of Fl(1,2,4)");
    std::size_t at_one = 0;
    for (auto c : p) {
        at_one += c;
    }
    o.check(at_one == 24 / (1 * 1 * 2), "value 12 at t = 1");
    o.note("P(t) = " + poincare_to_string(p) + ", P(1) = " + std::to_string(at_one));
    return o;
}

Outcome criterion5() {
    Outcome o;
    const Hol1Base b22 = hol1_base(2, 2);
    const auto e22 = euler_class_hol1(2, 2);
    const auto& g22 = b22.ring.generators();
    const auto x22 = GradedPolynomial::variable(g22, "c1_1");
    const auto y22 = GradedPolynomial::variable(g22, "c2_1");
    const auto lemma = Integer(3) * x22 * x22 + Integer(2) * x22 * y22 + y22 * y22;
    o.check(reduce(b22.ring, e22) == reduce(b22.ring, lemma), "e(2,2) = 3x^2 + 2xy + y^2 in the ring");
    o.note("e(2,2) = " + to_string(normal_form(b22.ring, e22), display_aliases(b22.spec)));
    for (int m = 1; m <= 6; ++m) {
        const Hol1Base base = hol1_base(2, m);
        const auto& g = base.ring.generators();
        const auto x = GradedPolynomial::variable(g, "c1_1");
        const auto y = GradedPolynomial::variable(g, "c2_1");
        // d/dx of sum_{i+j=m+1} x^i y^j
        GradedPolynomial derivative(g);
        for (int i = 1; i <= m + 1; ++i) {
            derivative += Integer(i) * power(x, static_cast<unsigned>(i - 1)) * power(y, static_cast<unsigned>(m + 1 - i));
        }
        o.check(reduce(base.ring, euler_class_hol1(2, m)) == reduce(base.ring, derivative),
                "e(2," + std::to_string(m) + ") agrees with the derivative formula");
    }
    return o;
}

Outcome criterion6() {
    Outcome o;
    const IntMatrix a{{3, -1}, {2, 2}, {1, 1}};
    const IntMatrix b{{1, 1, -3}, {-1, -1, -1}};
    const SmithDecomposition sa = smith_normal_form(a);
    const SmithDecomposition sb = smith_normal_form(b);
    o.check(sa.D == IntMatrix{{1, 0}, {0, 4}, {0, 0}}, "SNF of [[3,-1],[2,2],[1,1]] is diag(1,4)");
    o.check(sb.D == IntMatrix{{1, 0, 0}, {0, 4, 0}}, "SNF of [[1,1,-3],[-1,-1,-1]] is diag(1,4)");
    o.check(sa.U * a * sa.V == sa.D && sb.U * b * sb.V == sb.D, "U M V = D");
    o.check(abs(determinant(sa.U)) == 1 && abs(determinant(sa.V)) == 1 && abs(determinant(sb.U)) == 1 &&
                abs(determinant(sb.V)) == 1,
            "U and V unimodular");
    return o;
}

Outcome criterion7() {
    Outcome o;
    const auto baum = grassmannian_ring(2, 2);
    const auto reduced = grassmannian_reduced_presentation(2, 2);
    const auto& g = reduced.generators();
    const auto c1 = GradedPolynomial::variable(g, "c1_1");
    const auto c2 = GradedPolynomial::variable(g, "c1_2");
    const PresentedGradedRing literal(g, {c1 * c1 * c1 - Integer(2) * c1 * c2, c1 * c1 * c1 * c1 - Integer(2) * c2 * c2},
                                      baum.truncation_degree());

    const auto p_baum = poincare_polynomial(baum);
    o.note("Baum form: P(t) = " + poincare_to_string(p_baum));

    bool rho_ok = poincare_polynomial(reduced) == p_baum;
    for (int d = 0; d <= baum.truncation_degree(); d += 2) {
        rho_ok = rho_ok && same_ideal_in_degree(baum, reduced, d);
    }
    o.note(std::string("relations rho_1 = c1^3 - 2c1c2, rho_2 = c1^4 - 3c1^2c2 + c2^2: ") +
           (rho_ok ? "same Poincare polynomial and same ideal in every degree" : "MISMATCH"));
    o.check(rho_ok, "Baum form agrees with the rho presentation");

    bool same_ranks = true;
    std::string integral;
    try {
        same_ranks = poincare_polynomial(literal) == p_baum;
        integral = poincare_to_string(poincare_polynomial(literal));
    } catch (const PresentationError& e) {
        same_ranks = false;
        integral = e.what();
    }
    o.note("relations c1^3 - 2c1c2, c1^4 - 2c2^2: integral Poincare polynomial: " + integral);
    o.note("  rational Poincare polynomial: " + poincare_to_string(rational_poincare_polynomial(literal)));
    o.check(same_ranks, "equal Poincare polynomials for the relations c1^3 - 2c1c2, c1^4 - 2c2^2");
    for (int d = 0; d <= baum.truncation_degree(); d += 2) {
        const bool same = same_ideal_in_degree(baum, literal, d);
        o.check(same, "ideal membership agrees in degree " + std::to_string(d));
    }
    const auto witness = c1 * c1 * c2 - c2 * c2;
    o.note(std::string("  c1^2c2 - c2^2 in the Baum ideal: ") + (ideal_contains(baum, change_generators(witness, baum.generators())) ? "yes" : "no") +
           ", in (c1^3 - 2c1c2, c1^4 - 2c2^2): " + (ideal_contains(literal, witness) ? "yes" : "no") +
           ", twice it: " + (ideal_contains(literal, Integer(2) * witness) ? "yes" : "no"));
    return o;
}

Outcome criterion8() {
    Outcome o;
    std::size_t grass = 0;
    std::size_t flags = 0;
    for (int n = 1; n <= 7; ++n) {
        for (int m = n; n + m <= 8; ++m) {
            const std::string tag = "(" + std::to_string(n) + "," + std::to_string(m) + ")";
            o.check(poincare_polynomial(grassmannian_ring(n, m)) == gaussian_binomial_t(n + m, n),
                    "Gr" + tag + " Poincare polynomial equals the Gaussian binomial");
            ++grass;
            const Hol1Base base = hol1_base(n, m);
            bool free = true;
            for (int d = 0; d <= base.ring.truncation_degree(); d += 2) {
                free = free && degree_basis(base.ring, d).is_free();
            }
            o.check(free, "flag ring of the hol1 base " + tag + " is torsion-free");
            ++flags;
        }
    }
    std::size_t tables = 0;
    for (int n = 1; n <= 3; ++n) {
        for (int m = n; m <= 5; ++m) {
            const std::string tag = "(" + std::to_string(n) + "," + std::to_string(m) + ")";
            const CohomologyTable t = hol1_table(n, m);
            o.check(t.manifold_dimension == 2 * n * (m + 1) + 2 * m - 3, "dimension of Hol1" + tag);
            const DualityReport r = verify_duality(t);
            o.check(r.betti_symmetric && r.torsion_dual && r.euler_characteristic_zero, "duality for Hol1" + tag);
            ++tables;
        }
    }
    o.note(std::to_string(grass) + " Grassmannians, " + std::to_string(flags) + " flag rings, " +
           std::to_string(tables) + " hol1 tables");
    return o;
}

Outcome criterion9() {
    Outcome o;
    for (int n = 2; n <= 4; ++n) {
        for (int m = n; m <= 4; ++m) {
            const FlagSpec spec{{n - 1, 2, m - 1}};
            const auto ring = partial_flag_ring(spec, 2 * spec.complex_dimension() + 4);
            int top = -1;
            for (int d = 0; d <= ring.truncation_degree(); d += 2) {
                if (degree_basis(ring, d).free_rank > 0) {
                    top = d;
                }
            }
            const int expected = 2 * (n * m + n + m - 3);
            o.check(top == expected, "top degree for (n,m) = (" + std::to_string(n) + "," + std::to_string(m) + ")");
            o.note("(" + std::to_string(n) + "," + std::to_string(m) + "): top degree " + std::to_string(top) +
                   ", expected " + std::to_string(expected));
        }
    }
    return o;
}

Outcome criterion10() {
    Outcome o;
    for (int m = 2; m <= 5; ++m) {
        const CohomologyTable t = rat1_table(2, m);
        std::map<int, std::size_t> expected{{0, 1}, {2, 1}, {2 * m - 1, 1}, {2 * m + 1, 1}};
        for (int i = 0; i <= 2 * m + 3; ++i) {
            const auto it = expected.find(i);
            o.check(t.betti(i) == (it == expected.end() ? 0 : it->second),
                    "Rat1(Gr(2," + std::to_string(m) + ")) b_" + std::to_string(i));
        }
    }
    for (int m = 1; m <= 5; ++m) {
        const CohomologyTable t = rat1_table(1, m);
        for (int i = 0; i <= 2 * m + 1; ++i) {
            o.check(t.betti(i) == (i == 0 || i == 2 * m - 1 ? 1u : 0u),
                    "Rat1(P^" + std::to_string(m) + ") b_" + std::to_string(i));
        }
    }
    for (int m = 1; m <= 4; ++m) {
        // ST(P^m): Z in 0, 2, ..., 2m-2; Z/(m+1) in 2m; Z in 2m+1, 2m+3, ..., 4m-1
        std::map<int, AbelianGroup> st;
        for (int i = 0; i < m; ++i) {
            st[2 * i] = Z();
        }
        st[2 * m] = AbelianGroup{0, {m + 1}};
        for (int j = 1; j <= m; ++j) {
            st[2 * m + 2 * j - 1] = Z();
        }
        o.check(hol1_table(1, m).groups == nontrivial(st), "Hol1(P^" + std::to_string(m) + ") is ST(P^m)");
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"hol1 2 2 reproduces the integral cohomology of Hol1(Gr(2,2))", criterion1},
        {"rational Poincare series of Hol1(Gr(2,2))", criterion2},
        {"Betti numbers of Hol1(Gr(2,3)) and their symmetry", criterion3},
        {"Poincare polynomial of Fl(1,2,4)", criterion4},
        {"Euler class of Hol1(Gr(2,m))", criterion5},
        {"Smith normal forms of the Gysin matrices", criterion6},
        {"two presentations of Gr(2,2)", criterion7},
        {"Grassmannian, flag and duality property suite", criterion8},
        {"top degree of Fl(n-1,n+1)(C^(n+m))", criterion9},
        {"Rat1 and Hol1 of projective spaces", criterion10},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.passed = false;
            o.note(std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds >= kTimeLimitSeconds) {
            o.passed = false;
            o.note("took longer than the time limit");
        }
        failures += o.passed ? 0 : 1;
        std::ostringstream elapsed;
        elapsed.precision(3);
        elapsed << std::fixed << seconds;
        std::cout << "criterion " << (k + 1) << ": " << (o.passed ? "PASS" : "FAIL") << "  " << criteria[k].first
                  << " (" << elapsed.str() << " s)\n";
        for (const auto& n : o.notes) {
            std::cout << "    " << n << "\n";
        }
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}

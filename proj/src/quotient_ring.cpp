#include "grasscoh/quotient_ring.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace grasscoh {

struct PresentedGradedRing::State {
    Generators gens;
    std::vector<GradedPolynomial> relations;
    int truncation = 0;

    std::vector<std::size_t> core;
    std::vector<GradedPolynomial> core_relations;  // sorted by degree
    std::vector<std::optional<GradedPolynomial>> eliminated;
    MonomialFilter preferred;

    std::mutex cache_mutex;
    std::map<int, std::unique_ptr<DegreeBasis>> cache;
};

namespace {

GradedPolynomial apply_eliminations(const GradedPolynomial& p,
                                    const std::vector<std::optional<GradedPolynomial>>& eliminated) {
    GradedPolynomial out = p;
    for (std::size_t i = 0; i < eliminated.size(); ++i) {
        if (eliminated[i]) {
            out = substitute(out, i, *eliminated[i]);
        }
    }
    return out;
}

// Generator g such that r = c*g + f with c = +-1 and g absent from f; last in declared order.
std::optional<std::pair<std::size_t, Integer>> linear_generator(const GradedPolynomial& r,
                                                                const std::vector<std::optional<GradedPolynomial>>& eliminated) {
    const auto& gens = *r.generators();
    for (std::size_t k = gens.size(); k-- > 0;) {
        if (eliminated[k]) {
            continue;
        }
        Monomial g{std::vector<int>(gens.size(), 0)};
        g.exponents[k] = 1;
        const Integer c = r.coefficient(g);
        if (c != 1 && c != -1) {
            continue;
        }
        bool elsewhere = false;
        for (const auto& [m, v] : r.terms()) {
            if (m != g && m.exponents[k] != 0) {
                elsewhere = true;
                break;
            }
        }
        if (!elsewhere) {
            return std::make_pair(k, c);
        }
    }
    return std::nullopt;
}

}  // namespace

PresentedGradedRing::PresentedGradedRing(Generators gens, const std::vector<GradedPolynomial>& relations,
                                         int truncation_degree)
    : state_(std::make_shared<State>()) {
    if (!gens) {
        throw std::invalid_argument("PresentedGradedRing: null generator list");
    }
    if (truncation_degree < 0) {
        throw std::invalid_argument("PresentedGradedRing: negative truncation degree");
    }
    State& s = *state_;
    s.gens = std::move(gens);
    s.truncation = truncation_degree;

    for (const auto& r : relations) {
        if (!same_generators(r.generators(), s.gens)) {
            throw std::invalid_argument("PresentedGradedRing: relation over a different generator list");
        }
        std::vector<int> degrees;
        for (const auto& [m, c] : r.terms()) {
            degrees.push_back(degree(m, *s.gens));
        }
        std::sort(degrees.begin(), degrees.end());
        degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
        for (int d : degrees) {
            GradedPolynomial part = homogeneous_component(r, d);
            if (d == 0) {
                throw std::invalid_argument("PresentedGradedRing: relation has a nonzero constant term");
            }
            s.relations.push_back(std::move(part));
        }
    }

    std::vector<GradedPolynomial> sorted = s.relations;
    std::stable_sort(sorted.begin(), sorted.end(), [](const GradedPolynomial& a, const GradedPolynomial& b) {
        return a.max_degree() < b.max_degree();
    });

    s.eliminated.assign(s.gens->size(), std::nullopt);
    std::vector<GradedPolynomial> kept;
    for (const auto& raw : sorted) {
        GradedPolynomial r = apply_eliminations(raw, s.eliminated);
        if (r.is_zero()) {
            continue;
        }
        auto lin = linear_generator(r, s.eliminated);
        if (!lin) {
            kept.push_back(std::move(r));
            continue;
        }
        const auto [k, c] = *lin;
        Monomial g{std::vector<int>(s.gens->size(), 0)};
        g.exponents[k] = 1;
        // c*g + f = 0  =>  g = -c*f  (c = +-1)
        GradedPolynomial f = r - GradedPolynomial::term(s.gens, g, c);
        GradedPolynomial value = f * Integer(-c);
        for (auto& e : s.eliminated) {
            if (e) {
                e = substitute(*e, k, value);
            }
        }
        s.eliminated[k] = value;
        for (auto& kr : kept) {
            kr = substitute(kr, k, value);
        }
    }
    for (auto& kr : kept) {
        if (!kr.is_zero()) {
            s.core_relations.push_back(std::move(kr));
        }
    }
    for (std::size_t i = 0; i < s.gens->size(); ++i) {
        if (!s.eliminated[i]) {
            s.core.push_back(i);
        }
    }
}

const Generators& PresentedGradedRing::generators() const { return state_->gens; }
const std::vector<GradedPolynomial>& PresentedGradedRing::relations() const { return state_->relations; }
int PresentedGradedRing::truncation_degree() const { return state_->truncation; }
const std::vector<std::size_t>& PresentedGradedRing::core_generators() const { return state_->core; }
const std::vector<GradedPolynomial>& PresentedGradedRing::core_relations() const { return state_->core_relations; }

const std::optional<GradedPolynomial>& PresentedGradedRing::elimination(std::size_t generator) const {
    return state_->eliminated.at(generator);
}

GradedPolynomial PresentedGradedRing::eliminate(const GradedPolynomial& p) const {
    if (!same_generators(p.generators(), state_->gens)) {
        throw std::invalid_argument("polynomial is not over the ring's generators");
    }
    return apply_eliminations(p, state_->eliminated);
}

PresentedGradedRing PresentedGradedRing::with_preferred_basis(MonomialFilter preferred) const {
    auto s = std::make_shared<State>();
    s->gens = state_->gens;
    s->relations = state_->relations;
    s->truncation = state_->truncation;
    s->core = state_->core;
    s->core_relations = state_->core_relations;
    s->eliminated = state_->eliminated;
    s->preferred = std::move(preferred);
    return PresentedGradedRing(std::move(s));
}

const MonomialFilter& PresentedGradedRing::preferred_basis() const { return state_->preferred; }

std::vector<Monomial> PresentedGradedRing::core_monomials(int d) const {
    const auto& gens = *state_->gens;
    std::vector<GeneratorSpec> sub;
    for (auto i : state_->core) {
        sub.push_back(gens[i]);
    }
    std::vector<Monomial> out;
    for (auto& m : monomials_of_degree(sub, d)) {
        Monomial full{std::vector<int>(gens.size(), 0)};
        for (std::size_t k = 0; k < state_->core.size(); ++k) {
            full.exponents[state_->core[k]] = m.exponents[k];
        }
        out.push_back(std::move(full));
    }
    return out;
}

namespace {

Monomial product(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
        m.exponents[i] += b.exponents[i];
    }
    return m;
}

// Rows spanning the degree-d part of the core ideal, over `columns`.
std::vector<IntVector> relation_rows(const PresentedGradedRing& ring, int d, const std::vector<Monomial>& columns) {
    std::map<Monomial, std::size_t> index;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        index.emplace(columns[j], j);
    }
    std::vector<IntVector> rows;
    for (const auto& r : ring.core_relations()) {
        const int rd = r.max_degree();
        if (rd > d) {
            continue;
        }
        for (const auto& m : ring.core_monomials(d - rd)) {
            IntVector row(columns.size());
            bool nonzero = false;
            for (const auto& [rm, c] : r.terms()) {
                row[index.at(product(rm, m))] += c;
                nonzero = true;
            }
            if (nonzero) {
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

// Unit-pivot elimination over a dense row set. A column becomes a pivot only once the
// gcd of its entries among the unused rows is 1, so pivot rows always carry a 1.
class UnitPivotEliminator {
public:
    UnitPivotEliminator(std::vector<IntVector> rows, std::size_t cols) : rows_(std::move(rows)), cols_(cols) {
        pivot_row_.assign(cols_, std::nullopt);
        used_.assign(rows_.size(), false);
    }

    bool try_pivot(std::size_t col) {
        if (pivot_row_[col]) {
            return false;
        }
        std::vector<std::size_t> live;
        Integer g = 0;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (!used_[i] && rows_[i][col] != 0) {
                live.push_back(i);
                g = gcd(g, rows_[i][col]);
            }
        }
        if (live.empty() || g != 1) {
            return false;
        }
        // Euclid on the column until a single live row remains
        for (;;) {
            std::size_t best = live.front();
            for (auto i : live) {
                if (abs(rows_[i][col]) < abs(rows_[best][col])) {
                    best = i;
                }
            }
            std::vector<std::size_t> next{best};
            for (auto i : live) {
                if (i == best) {
                    continue;
                }
                Integer q = rows_[i][col] / rows_[best][col];
                axpy(i, best, -q);
                if (rows_[i][col] != 0) {
                    next.push_back(i);
                }
            }
            live = std::move(next);
            if (live.size() == 1) {
                break;
            }
        }
        const std::size_t p = live.front();
        if (rows_[p][col] < 0) {
            for (auto& v : rows_[p]) {
                v = -v;
            }
        }
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i != p && rows_[i][col] != 0) {
                Integer q = rows_[i][col];
                axpy(i, p, -q);
            }
        }
        used_[p] = true;
        pivot_row_[col] = p;
        return true;
    }

    bool is_pivot(std::size_t col) const { return pivot_row_[col].has_value(); }
    const IntVector& pivot_row(std::size_t col) const { return rows_[*pivot_row_[col]]; }

    std::vector<IntVector> leftover_rows() const {
        std::vector<IntVector> out;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (!used_[i] && std::any_of(rows_[i].begin(), rows_[i].end(), [](const Integer& v) { return v != 0; })) {
                out.push_back(rows_[i]);
            }
        }
        return out;
    }

private:
    void axpy(std::size_t dst, std::size_t src, const Integer& f) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (rows_[src][j] != 0) {
                rows_[dst][j] += f * rows_[src][j];
            }
        }
    }

    std::vector<IntVector> rows_;
    std::size_t cols_;
    std::vector<std::optional<std::size_t>> pivot_row_;
    std::vector<bool> used_;
};

// Pivots columns in the given order until no further unit pivot is possible.
void run_greedy(UnitPivotEliminator& elim, const std::vector<std::size_t>& order) {
    for (bool progress = true; progress;) {
        progress = false;
        for (auto j : order) {
            progress = elim.try_pivot(j) || progress;
        }
    }
}

// Pivot orders over columns labelled by monomials. Each order eliminates in lexicographic
// order with the largest exponent first; the first ranks the core generators last to
// first, the rest run through other rankings. Graded-lex smallest first comes second.
std::vector<std::vector<std::size_t>> pivot_orders(const std::vector<Monomial>& keys, const std::vector<std::size_t>& core,
                                                   const GradedLexGreater& greater) {
    constexpr std::size_t kMaxOrders = 24;
    auto lex = [&](const std::vector<std::size_t>& vars) {
        std::vector<std::size_t> order(keys.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            for (auto v : vars) {
                if (keys[a].exponents[v] != keys[b].exponents[v]) {
                    return keys[a].exponents[v] > keys[b].exponents[v];
                }
            }
            return false;
        });
        return order;
    };
    std::vector<std::size_t> vars(core.rbegin(), core.rend());
    std::vector<std::vector<std::size_t>> orders{lex(vars)};

    std::vector<std::size_t> ascending(keys.size());
    std::iota(ascending.begin(), ascending.end(), 0);
    std::stable_sort(ascending.begin(), ascending.end(),
                     [&](std::size_t a, std::size_t b) { return greater(keys[b], keys[a]); });
    orders.push_back(std::move(ascending));

    std::sort(vars.begin(), vars.end());
    do {
        if (vars != std::vector<std::size_t>(core.rbegin(), core.rend())) {
            orders.push_back(lex(vars));
        }
    } while (orders.size() < kMaxOrders && std::next_permutation(vars.begin(), vars.end()));
    return orders;
}

GradedLexGreater ring_order(const PresentedGradedRing& ring) {
    std::vector<int> w;
    for (const auto& g : *ring.generators()) {
        w.push_back(g.degree);
    }
    return GradedLexGreater(std::move(w));
}

// Z^cols / (row span of `rows`): a basis of the quotient, the coordinates of every column
// over it, and any torsion.
struct Quotient {
    std::vector<GradedPolynomial> representatives;
    std::vector<IntVector> column_coords;
    std::vector<Integer> torsion;
    std::size_t free_rank = 0;
};

bool is_monomial(const GradedPolynomial& p) { return p.terms().size() == 1 && p.terms().begin()->second == 1; }

// Columns carry a representative polynomial and a sort key (its leading monomial), which
// fixes the pivot order.
Quotient quotient_of(const PresentedGradedRing& ring, const std::vector<IntVector>& rows,
                     const std::vector<GradedPolynomial>& reps, const std::vector<Monomial>& keys,
                     const std::vector<std::size_t>& order) {
    const std::size_t n = reps.size();
    const GradedLexGreater greater = ring_order(ring);
    std::vector<std::size_t> desc(n);
    std::iota(desc.begin(), desc.end(), 0);
    std::stable_sort(desc.begin(), desc.end(), [&](std::size_t a, std::size_t b) { return greater(keys[a], keys[b]); });

    Quotient out;
    UnitPivotEliminator elim(rows, n);
    run_greedy(elim, order);

    std::optional<IntMatrix> projection;  // rows: new basis, columns: free columns
    std::vector<std::size_t> free_cols;
    std::vector<IntVector> leftover = elim.leftover_rows();
    if (!leftover.empty()) {
        IntMatrix rest = IntMatrix::from_rows(leftover, n);
        SmithDecomposition snf = smith_normal_form(rest);
        std::size_t pivots = 0;
        for (std::size_t j = 0; j < n; ++j) {
            pivots += elim.is_pivot(j) ? 1 : 0;
        }
        for (const auto& f : snf.invariant_factors) {
            if (f > 1) {
                out.torsion.push_back(f);
            }
        }
        out.free_rank = n - pivots - snf.rank();
        if (!out.torsion.empty()) {
            return out;
        }
        {
            // No unimodular choice of columns: project onto a complement of the leftover lattice.
            for (auto j : desc) {
                if (!elim.is_pivot(j)) {
                    free_cols.push_back(j);
                }
            }
            IntMatrix m(leftover.size(), free_cols.size());
            for (std::size_t i = 0; i < leftover.size(); ++i) {
                for (std::size_t k = 0; k < free_cols.size(); ++k) {
                    m(i, k) = leftover[i][free_cols[k]];
                }
            }
            const SmithDecomposition s = smith_normal_form(m);
            // Kernel of m (last columns of V) is saturated, so its transpose maps onto Z^q
            // with kernel exactly the row span of m.
            const std::size_t q = free_cols.size() - s.rank();
            IntMatrix kt(q, free_cols.size());
            for (std::size_t i = 0; i < q; ++i) {
                for (std::size_t k = 0; k < free_cols.size(); ++k) {
                    kt(i, k) = s.V(k, s.rank() + i);
                }
            }
            projection = kt;
        }
    }

    if (!projection) {
        for (auto j : desc) {
            if (!elim.is_pivot(j)) {
                free_cols.push_back(j);
            }
        }
        projection = IntMatrix::identity(free_cols.size());
        for (auto j : free_cols) {
            out.representatives.push_back(reps[j]);
        }
    } else {
        // Preimages of the unit vectors under the projection.
        const SmithDecomposition s = smith_normal_form(*projection);
        for (std::size_t i = 0; i < projection->rows(); ++i) {
            GradedPolynomial rep(ring.generators());
            for (std::size_t k = 0; k < free_cols.size(); ++k) {
                Integer c = 0;
                for (std::size_t t = 0; t < projection->rows(); ++t) {
                    c += s.V(k, t) * s.U(t, i);
                }
                if (c != 0) {
                    rep += reps[free_cols[k]] * c;
                }
            }
            out.representatives.push_back(std::move(rep));
        }
    }
    const IntMatrix& p = *projection;
    out.free_rank = p.rows();
    std::vector<std::optional<std::size_t>> free_pos(n);
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        free_pos[free_cols[k]] = k;
    }
    out.column_coords.assign(n, IntVector(p.rows()));
    for (std::size_t j = 0; j < n; ++j) {
        IntVector& coords = out.column_coords[j];
        if (free_pos[j]) {
            for (std::size_t i = 0; i < p.rows(); ++i) {
                coords[i] = p(i, *free_pos[j]);
            }
            continue;
        }
        const IntVector& row = elim.pivot_row(j);
        for (std::size_t k = 0; k < free_cols.size(); ++k) {
            const Integer& r = row[free_cols[k]];
            if (r == 0) {
                continue;
            }
            for (std::size_t i = 0; i < p.rows(); ++i) {
                coords[i] -= r * p(i, k);
            }
        }
    }
    return out;
}

Monomial generator_monomial(std::size_t gens, std::size_t g) {
    Monomial m{std::vector<int>(gens, 0)};
    m.exponents[g] = 1;
    return m;
}

// Looks for a monomial basis by unit-pivot elimination on the relation lattice (the kernel
// of the coordinate map), trying each of pivot_orders. On success the coordinates are
// rewritten over the surviving monomials.
void select_monomial_basis(const PresentedGradedRing& ring, DegreeBasis& out, const std::vector<Monomial>& monomials) {
    const std::size_t q = out.free_rank;
    const std::size_t n = monomials.size();
    IntMatrix coords(q, n);
    for (std::size_t j = 0; j < n; ++j) {
        const IntVector& v = out.reduction.at(monomials[j]);
        for (std::size_t i = 0; i < q; ++i) {
            coords(i, j) = v[i];
        }
    }
    const std::vector<IntVector> rows = kernel(coords).basis;
    for (const auto& order : pivot_orders(monomials, ring.core_generators(), ring_order(ring))) {
        UnitPivotEliminator elim(rows, n);
        run_greedy(elim, order);
        if (!elim.leftover_rows().empty()) {
            continue;
        }
        std::vector<std::size_t> basis_cols;
        std::vector<std::size_t> position(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            if (!elim.is_pivot(j)) {
                position[j] = basis_cols.size();
                basis_cols.push_back(j);
            }
        }
        if (basis_cols.size() != q) {
            throw std::logic_error("degree_basis: basis size does not match the rank");
        }
        out.representatives.clear();
        out.basis_monomials.clear();
        for (auto j : basis_cols) {
            out.basis_monomials.push_back(monomials[j]);
            out.representatives.push_back(GradedPolynomial::term(ring.generators(), monomials[j], 1));
        }
        for (std::size_t j = 0; j < n; ++j) {
            IntVector v(q);
            if (!elim.is_pivot(j)) {
                v[position[j]] = 1;
            } else {
                for (auto b : basis_cols) {
                    v[position[b]] = -elim.pivot_row(j)[b];
                }
            }
            out.reduction[monomials[j]] = std::move(v);
        }
        out.monomial_basis = true;
        return;
    }
}

void finish(const PresentedGradedRing& ring, DegreeBasis& out, Quotient&& q, const std::vector<Monomial>& monomials) {
    out.torsion_report = std::move(q.torsion);
    out.free_rank = q.free_rank;
    if (!out.torsion_report.empty()) {
        out.monomial_basis = false;
        return;
    }
    out.representatives = std::move(q.representatives);
    out.monomial_basis = std::all_of(out.representatives.begin(), out.representatives.end(), is_monomial);
    if (out.monomial_basis) {
        for (const auto& r : out.representatives) {
            out.basis_monomials.push_back(r.terms().begin()->first);
        }
        return;
    }
    select_monomial_basis(ring, out, monomials);
}

// All relations in degree d, one column per core monomial.
DegreeBasis direct_degree_basis(const PresentedGradedRing& ring, int d) {
    DegreeBasis out;
    out.degree = d;
    const std::vector<Monomial> columns = ring.core_monomials(d);
    std::vector<GradedPolynomial> reps;
    for (const auto& m : columns) {
        reps.push_back(GradedPolynomial::term(ring.generators(), m, 1));
    }
    Quotient q = quotient_of(ring, relation_rows(ring, d, columns), reps, columns,
                             pivot_orders(columns, ring.core_generators(), ring_order(ring)).front());
    if (q.torsion.empty()) {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            out.reduction.emplace(columns[j], q.column_coords[j]);
        }
    }
    finish(ring, out, std::move(q), columns);
    return out;
}

// Degree d built on the pieces of degree d - deg(g): the columns are products g * b with b
// a basis element one generator down, subject to the degree-d relations and to agreement
// between the different ways of splitting off a generator from each monomial.
DegreeBasis incremental_degree_basis(const PresentedGradedRing& ring, int d) {
    const auto& gens = *ring.generators();
    const auto& core = ring.core_generators();
    std::vector<const DegreeBasis*> lower(core.size(), nullptr);
    std::vector<std::size_t> offset(core.size(), 0);
    std::size_t n = 0;
    for (std::size_t g = 0; g < core.size(); ++g) {
        const int ld = d - gens[core[g]].degree;
        if (ld < 0) {
            continue;
        }
        lower[g] = &degree_basis(ring, ld);
        if (!lower[g]->is_free()) {
            return direct_degree_basis(ring, d);
        }
        offset[g] = n;
        n += lower[g]->rank();
    }

    DegreeBasis out;
    out.degree = d;
    std::vector<GradedPolynomial> reps;
    std::vector<Monomial> keys;
    for (std::size_t g = 0; g < core.size(); ++g) {
        if (!lower[g]) {
            continue;
        }
        const auto x = GradedPolynomial::term(ring.generators(), generator_monomial(gens.size(), core[g]), 1);
        for (const auto& r : lower[g]->representatives) {
            reps.push_back(x * r);
            keys.push_back(reps.back().terms().begin()->first);
        }
    }

    // phi_g(m): g * NF(m / g) as a vector over the columns
    auto split = [&](const Monomial& m, std::size_t g, const Integer& c, IntVector& row) {
        Monomial rest = m;
        --rest.exponents[core[g]];
        const IntVector& v = lower[g]->reduction.at(rest);
        for (std::size_t k = 0; k < v.size(); ++k) {
            row[offset[g] + k] += c * v[k];
        }
    };
    auto first_factor = [&](const Monomial& m) {
        for (std::size_t g = 0; g < core.size(); ++g) {
            if (m.exponents[core[g]] > 0) {
                return g;
            }
        }
        throw std::logic_error("degree_basis: constant monomial in positive degree");
    };

    const std::vector<Monomial> monomials = ring.core_monomials(d);
    std::vector<IntVector> rows;
    for (const auto& m : monomials) {
        const std::size_t g0 = first_factor(m);
        for (std::size_t g = g0 + 1; g < core.size(); ++g) {
            if (m.exponents[core[g]] == 0) {
                continue;
            }
            IntVector row(n);
            split(m, g0, 1, row);
            split(m, g, -1, row);
            if (std::any_of(row.begin(), row.end(), [](const Integer& v) { return v != 0; })) {
                rows.push_back(std::move(row));
            }
        }
    }
    for (const auto& r : ring.core_relations()) {
        if (r.max_degree() != d) {
            continue;
        }
        IntVector row(n);
        for (const auto& [m, c] : r.terms()) {
            split(m, first_factor(m), c, row);
        }
        rows.push_back(std::move(row));
    }

    const std::vector<std::size_t> lex = pivot_orders(keys, ring.core_generators(), ring_order(ring)).front();
    std::optional<Quotient> found;
    if (const auto& preferred = ring.preferred_basis()) {
        // Eliminate everything outside the preferred set, then repeated preferred monomials.
        std::vector<int> rank(n, 2);
        std::set<Monomial> seen;
        std::size_t expected = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (!is_monomial(reps[j]) || !preferred(keys[j])) {
                rank[j] = 0;
            } else if (!seen.insert(keys[j]).second) {
                rank[j] = 1;
            }
        }
        for (const auto& m : ring.core_monomials(d)) {
            expected += preferred(m) ? 1 : 0;
        }
        std::vector<std::size_t> order = lex;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
        Quotient q = quotient_of(ring, rows, reps, keys, order);
        if (q.torsion.empty() && q.free_rank == expected && q.representatives.size() == expected &&
            std::all_of(q.representatives.begin(), q.representatives.end(),
                        [&](const GradedPolynomial& r) { return is_monomial(r) && preferred(r.terms().begin()->first); })) {
            found = std::move(q);
        }
    }
    Quotient q = found ? std::move(*found) : quotient_of(ring, rows, reps, keys, lex);
    if (q.torsion.empty()) {
        for (const auto& m : monomials) {
            IntVector coords(q.free_rank);
            const std::size_t g = first_factor(m);
            Monomial rest = m;
            --rest.exponents[core[g]];
            const IntVector& v = lower[g]->reduction.at(rest);
            for (std::size_t k = 0; k < v.size(); ++k) {
                if (v[k] == 0) {
                    continue;
                }
                const IntVector& p = q.column_coords[offset[g] + k];
                for (std::size_t i = 0; i < coords.size(); ++i) {
                    coords[i] += v[k] * p[i];
                }
            }
            out.reduction.emplace(m, std::move(coords));
        }
    }
    finish(ring, out, std::move(q), monomials);
    return out;
}

DegreeBasis compute_degree_basis(const PresentedGradedRing& ring, int d) {
    if (d < 0 || d % 2 != 0 || d > ring.truncation_degree()) {
        DegreeBasis out;
        out.degree = d;
        return out;
    }
    if (d == 0) {
        return direct_degree_basis(ring, 0);
    }
    return incremental_degree_basis(ring, d);
}

}  // namespace

const DegreeBasis& degree_basis(const PresentedGradedRing& ring, int d) {
    auto& s = *ring.state_;
    {
        std::lock_guard<std::mutex> lock(s.cache_mutex);
        auto it = s.cache.find(d);
        if (it != s.cache.end()) {
            return *it->second;
        }
    }
    auto computed = std::make_unique<DegreeBasis>(compute_degree_basis(ring, d));
    std::lock_guard<std::mutex> lock(s.cache_mutex);
    auto [it, inserted] = s.cache.try_emplace(d, std::move(computed));
    return *it->second;
}

IntVector reduce(const PresentedGradedRing& ring, const GradedPolynomial& p, std::optional<int> degree) {
    if (!p.is_homogeneous()) {
        throw std::invalid_argument("reduce: polynomial is not homogeneous");
    }
    if (!degree) {
        degree = p.homogeneous_degree();
        if (!degree) {
            throw std::invalid_argument("reduce: zero polynomial needs an explicit degree");
        }
    } else if (!p.is_zero() && p.homogeneous_degree() != degree) {
        throw std::invalid_argument("reduce: polynomial degree does not match the requested degree");
    }
    const DegreeBasis& basis = degree_basis(ring, *degree);
    if (!basis.is_free()) {
        std::ostringstream msg;
        msg << "degree " << *degree << " piece has torsion";
        throw PresentationError(msg.str());
    }
    IntVector coords(basis.rank());
    if (basis.rank() == 0) {
        return coords;
    }
    const GradedPolynomial q = ring.eliminate(p);
    for (const auto& [m, c] : q.terms()) {
        const IntVector& v = basis.reduction.at(m);
        for (std::size_t k = 0; k < coords.size(); ++k) {
            coords[k] += c * v[k];
        }
    }
    return coords;
}

GradedPolynomial normal_form(const PresentedGradedRing& ring, const GradedPolynomial& p) {
    GradedPolynomial out(ring.generators());
    if (p.is_zero()) {
        return out;
    }
    const IntVector coords = reduce(ring, p);
    const DegreeBasis& basis = degree_basis(ring, *p.homogeneous_degree());
    for (std::size_t k = 0; k < coords.size(); ++k) {
        out += basis.representatives[k] * coords[k];
    }
    return out;
}

IntMatrix multiplication_matrix(const PresentedGradedRing& ring, const GradedPolynomial& e, int d,
                                std::optional<int> e_degree) {
    if (!e.is_homogeneous()) {
        throw std::invalid_argument("multiplication_matrix: class is not homogeneous");
    }
    if (!e.is_zero()) {
        if (e_degree && *e_degree != *e.homogeneous_degree()) {
            throw std::invalid_argument("multiplication_matrix: class degree mismatch");
        }
        e_degree = e.homogeneous_degree();
    } else if (!e_degree) {
        throw std::invalid_argument("multiplication_matrix: zero class needs an explicit degree");
    }
    const DegreeBasis& source = degree_basis(ring, d);
    const DegreeBasis& target = degree_basis(ring, d + *e_degree);
    if (!source.is_free() || !target.is_free()) {
        throw PresentationError("multiplication_matrix: source or target piece is not free");
    }
    IntMatrix m(target.rank(), source.rank());
    for (std::size_t j = 0; j < source.rank(); ++j) {
        GradedPolynomial image = e * source.representatives[j];
        IntVector col = reduce(ring, image, d + *e_degree);
        for (std::size_t i = 0; i < col.size(); ++i) {
            m(i, j) = col[i];
        }
    }
    return m;
}

std::vector<std::size_t> poincare_polynomial(const PresentedGradedRing& ring) {
    std::vector<std::size_t> coeffs(static_cast<std::size_t>(ring.truncation_degree()) + 1, 0);
    for (int d = 0; d <= ring.truncation_degree(); d += 2) {
        const DegreeBasis& b = degree_basis(ring, d);
        if (!b.torsion_report.empty()) {
            std::ostringstream msg;
            msg << "torsion in degree " << d << ":";
            for (const auto& t : b.torsion_report) {
                msg << " Z_" << t;
            }
            throw PresentationError(msg.str());
        }
        coeffs[static_cast<std::size_t>(d)] = b.rank();
    }
    return coeffs;
}

std::vector<std::size_t> rational_poincare_polynomial(const PresentedGradedRing& ring) {
    std::vector<std::size_t> coeffs(static_cast<std::size_t>(ring.truncation_degree()) + 1, 0);
    for (int d = 0; d <= ring.truncation_degree(); d += 2) {
        coeffs[static_cast<std::size_t>(d)] = degree_basis(ring, d).free_rank;
    }
    return coeffs;
}

std::string poincare_to_string(const std::vector<std::size_t>& coefficients) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t d = 0; d < coefficients.size(); ++d) {
        const std::size_t c = coefficients[d];
        if (c == 0) {
            continue;
        }
        if (!first) {
            os << '+';
        }
        first = false;
        if (d == 0) {
            os << c;
            continue;
        }
        if (c != 1) {
            os << c;
        }
        os << 't';
        if (d != 1) {
            os << '^' << d;
        }
    }
    return first ? "0" : os.str();
}

IdealSlice ideal_slice(const PresentedGradedRing& ring, int d) {
    IdealSlice s;
    s.monomials = ring.core_monomials(d);
    s.lattice = hermite_normal_form(IntMatrix::from_rows(relation_rows(ring, d, s.monomials), s.monomials.size()));
    return s;
}

bool ideal_contains(const PresentedGradedRing& ring, const GradedPolynomial& p) {
    if (p.is_zero()) {
        return true;
    }
    const auto d = p.homogeneous_degree();
    if (!d) {
        throw std::invalid_argument("ideal_contains: polynomial is not homogeneous");
    }
    IdealSlice s = ideal_slice(ring, *d);
    IntVector v(s.monomials.size());
    const GradedPolynomial q = ring.eliminate(p);
    for (std::size_t j = 0; j < s.monomials.size(); ++j) {
        v[j] = q.coefficient(s.monomials[j]);
    }
    return row_span_contains(s.lattice, v);
}

bool same_ideal_in_degree(const PresentedGradedRing& a, const PresentedGradedRing& b, int d) {
    auto core_specs = [](const PresentedGradedRing& r) {
        std::vector<GeneratorSpec> out;
        for (auto i : r.core_generators()) {
            out.push_back((*r.generators())[i]);
        }
        return out;
    };
    if (core_specs(a) != core_specs(b)) {
        throw std::invalid_argument("same_ideal_in_degree: rings have different core generators");
    }
    IdealSlice sa = ideal_slice(a, d);
    IdealSlice sb = ideal_slice(b, d);
    return sa.lattice.H == sb.lattice.H;
}

}  // namespace grasscoh

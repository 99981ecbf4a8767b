#include "grasscoh/exact_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace grasscoh {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw std::invalid_argument("IntMatrix: ragged initializer");
        }
        for (long v : r) {
            data_.emplace_back(v);
        }
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) {
            throw std::invalid_argument("IntMatrix::from_rows: row length mismatch");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

IntVector IntMatrix::row(std::size_t i) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        c[i] = (*this)(i, j);
    }
    return c;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix n = *this;
    for (auto& v : n.data_) {
        v = -v;
    }
    return n;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument("IntMatrix: dimension mismatch in product");
    }
    IntMatrix p(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& a = (*this)(i, k);
            if (a == 0) {
                continue;
            }
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                p(i, j) += a * rhs(k, j);
            }
        }
    }
    return p;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("IntMatrix: dimension mismatch in matrix-vector product");
    }
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out[i] += (*this)(i, j) * v[j];
        }
    }
    return out;
}

bool IntMatrix::operator==(const IntMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    for (std::size_t j = 0; j < cols_; ++j) {
        std::swap((*this)(a, j), (*this)(b, j));
    }
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        std::swap((*this)(i, a), (*this)(i, b));
    }
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (factor == 0) {
        return;
    }
    for (std::size_t j = 0; j < cols_; ++j) {
        if ((*this)(src, j) != 0) {
            (*this)(dst, j) += factor * (*this)(src, j);
        }
    }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (factor == 0) {
        return;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        if ((*this)(i, src) != 0) {
            (*this)(i, dst) += factor * (*this)(i, src);
        }
    }
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) {
        (*this)(i, j) = -(*this)(i, j);
    }
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) {
        (*this)(i, j) = -(*this)(i, j);
    }
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) {
            os << (j ? ", " : "") << m(i, j);
        }
        os << ']';
    }
    return os << ']';
}

AbelianGroup abelian_group_from_cyclic(std::size_t free_rank, std::vector<Integer> orders) {
    // Z/a + Z/b = Z/gcd(a,b) + Z/lcm(a,b), applied pairwise until the orders form a chain.
    std::vector<Integer> cyclic;
    for (auto& o : orders) {
        Integer a = abs(o);
        if (a == 0) {
            ++free_rank;
        } else if (a != 1) {
            cyclic.push_back(a);
        }
    }
    for (std::size_t i = 0; i < cyclic.size(); ++i) {
        for (std::size_t j = i + 1; j < cyclic.size(); ++j) {
            Integer g = gcd(cyclic[i], cyclic[j]);
            Integer l = lcm(cyclic[i], cyclic[j]);
            cyclic[i] = g;
            cyclic[j] = l;
        }
    }
    AbelianGroup out;
    out.free_rank = free_rank;
    for (auto& c : cyclic) {
        if (c != 1) {
            out.torsion.push_back(c);
        }
    }
    return out;
}

std::string to_string(const AbelianGroup& g) {
    if (g.is_trivial()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& t : g.torsion) {
        os << (first ? "" : " + ") << "Z_" << t;
        first = false;
    }
    if (g.free_rank > 0) {
        os << (first ? "" : " + ") << "Z";
        if (g.free_rank > 1) {
            os << '^' << g.free_rank;
        }
    }
    return os.str();
}

namespace {

// Locate the nonzero entry of least absolute value in the lower-right block starting at (t, t).
bool min_abs_entry(const IntMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < d.rows(); ++i) {
        for (std::size_t j = t; j < d.cols(); ++j) {
            const Integer& v = d(i, j);
            if (v == 0) {
                continue;
            }
            if (!found || abs(v) < best) {
                best = abs(v);
                pi = i;
                pj = j;
                found = true;
                if (best == 1) {
                    return true;
                }
            }
        }
    }
    return found;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();
    IntMatrix D = m;
    IntMatrix U = IntMatrix::identity(r);
    IntMatrix V = IntMatrix::identity(c);

    auto row_op = [&](std::size_t dst, std::size_t src, const Integer& f) {
        D.add_row_multiple(dst, src, f);
        U.add_row_multiple(dst, src, f);
    };
    auto col_op = [&](std::size_t dst, std::size_t src, const Integer& f) {
        D.add_col_multiple(dst, src, f);
        V.add_col_multiple(dst, src, f);
    };

    const std::size_t steps = std::min(r, c);
    for (std::size_t t = 0; t < steps; ++t) {
        std::size_t pi = 0;
        std::size_t pj = 0;
        if (!min_abs_entry(D, t, pi, pj)) {
            break;
        }
        D.swap_rows(t, pi);
        U.swap_rows(t, pi);
        D.swap_cols(t, pj);
        V.swap_cols(t, pj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (D(i, t) != 0) {
                    Integer q = D(i, t) / D(t, t);
                    row_op(i, t, -q);
                    clean = clean && D(i, t) == 0;
                }
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (D(t, j) != 0) {
                    Integer q = D(t, j) / D(t, t);
                    col_op(j, t, -q);
                    clean = clean && D(t, j) == 0;
                }
            }
            if (!clean) {
                // a remainder survived: bring the smallest one in row/column t to the pivot
                std::size_t bi = t;
                std::size_t bj = t;
                Integer best = abs(D(t, t));
                for (std::size_t i = t + 1; i < r; ++i) {
                    if (D(i, t) != 0 && abs(D(i, t)) < best) {
                        best = abs(D(i, t));
                        bi = i;
                        bj = t;
                    }
                }
                for (std::size_t j = t + 1; j < c; ++j) {
                    if (D(t, j) != 0 && abs(D(t, j)) < best) {
                        best = abs(D(t, j));
                        bi = t;
                        bj = j;
                    }
                }
                D.swap_rows(t, bi);
                U.swap_rows(t, bi);
                D.swap_cols(t, bj);
                V.swap_cols(t, bj);
                continue;
            }
            // divisibility fixup: pull an offending row into row t and repeat
            bool divides = true;
            for (std::size_t i = t + 1; i < r && divides; ++i) {
                for (std::size_t j = t + 1; j < c; ++j) {
                    if (D(i, j) % D(t, t) != 0) {
                        row_op(t, i, 1);
                        divides = false;
                        break;
                    }
                }
            }
            if (divides) {
                break;
            }
        }
        if (D(t, t) < 0) {
            D.negate_row(t);
            U.negate_row(t);
        }
    }

    SmithDecomposition out{std::move(U), std::move(D), std::move(V), {}};
    for (std::size_t t = 0; t < steps && out.D(t, t) != 0; ++t) {
        out.invariant_factors.push_back(out.D(t, t));
    }
    for (std::size_t t = 1; t < out.invariant_factors.size(); ++t) {
        if (out.invariant_factors[t] % out.invariant_factors[t - 1] != 0) {
            throw std::logic_error("smith_normal_form: divisibility chain violated");
        }
    }
    return out;
}

AbelianGroup cokernel_group(const IntMatrix& m) {
    SmithDecomposition s = smith_normal_form(m);
    AbelianGroup g;
    g.free_rank = m.rows() - s.rank();
    for (const auto& f : s.invariant_factors) {
        if (f > 1) {
            g.torsion.push_back(f);
        }
    }
    return g;
}

KernelBasis kernel(const IntMatrix& m) {
    SmithDecomposition s = smith_normal_form(m);
    KernelBasis k;
    for (std::size_t j = s.rank(); j < m.cols(); ++j) {
        k.basis.push_back(s.V.column(j));
    }
    k.rank = k.basis.size();
    return k;
}

HermiteForm hermite_normal_form(const IntMatrix& m) {
    IntMatrix H = m;
    const std::size_t r = H.rows();
    std::vector<std::size_t> pivots;
    std::size_t p = 0;
    for (std::size_t j = 0; j < H.cols() && p < r; ++j) {
        for (;;) {
            std::size_t best = r;
            for (std::size_t i = p; i < r; ++i) {
                if (H(i, j) != 0 && (best == r || abs(H(i, j)) < abs(H(best, j)))) {
                    best = i;
                }
            }
            if (best == r) {
                break;
            }
            H.swap_rows(p, best);
            bool clean = true;
            for (std::size_t i = p + 1; i < r; ++i) {
                if (H(i, j) != 0) {
                    Integer q = H(i, j) / H(p, j);
                    H.add_row_multiple(i, p, -q);
                    clean = clean && H(i, j) == 0;
                }
            }
            if (clean) {
                break;
            }
        }
        if (p < r && H(p, j) != 0) {
            if (H(p, j) < 0) {
                H.negate_row(p);
            }
            for (std::size_t i = 0; i < p; ++i) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), H(i, j).get_mpz_t(), H(p, j).get_mpz_t());
                H.add_row_multiple(i, p, -q);
            }
            pivots.push_back(j);
            ++p;
        }
    }
    IntMatrix trimmed(p, H.cols());
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < H.cols(); ++j) {
            trimmed(i, j) = H(i, j);
        }
    }
    return HermiteForm{std::move(trimmed), std::move(pivots)};
}

bool row_span_contains(const HermiteForm& h, const IntVector& v) {
    if (v.size() != h.H.cols()) {
        throw std::invalid_argument("row_span_contains: length mismatch");
    }
    IntVector w = v;
    for (std::size_t k = 0; k < h.pivot_cols.size(); ++k) {
        const std::size_t c = h.pivot_cols[k];
        if (w[c] == 0) {
            continue;
        }
        if (w[c] % h.H(k, c) != 0) {
            return false;
        }
        Integer q = w[c] / h.H(k, c);
        for (std::size_t j = c; j < w.size(); ++j) {
            w[j] -= q * h.H(k, j);
        }
    }
    return std::all_of(w.begin(), w.end(), [](const Integer& x) { return x == 0; });
}

Integer determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("determinant: matrix not square");
    }
    const std::size_t n = m.rows();
    if (n == 0) {
        return 1;
    }
    IntMatrix a = m;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t i = k + 1;
            while (i < n && a(i, k) == 0) {
                ++i;
            }
            if (i == n) {
                return 0;
            }
            a.swap_rows(k, i);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

}  // namespace grasscoh

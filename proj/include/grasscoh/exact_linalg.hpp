#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace grasscoh {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense integer matrix with exact (GMP) entries, stored row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVector row(std::size_t i) const;
    IntVector column(std::size_t j) const;

    IntMatrix transposed() const;
    IntMatrix operator-() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    IntVector operator*(const IntVector& v) const;

    bool operator==(const IntMatrix& rhs) const;
    bool is_zero() const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
    /// col[dst] += factor * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// U * M * V = D with U, V unimodular and D in canonical Smith form.
struct SmithDecomposition {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
    std::vector<Integer> invariant_factors;  // nonzero diagonal of D, d1 | d2 | ...

    std::size_t rank() const { return invariant_factors.size(); }
};

/// Finitely generated abelian group Z^free_rank + Z/t1 + ... + Z/tk, t1 | t2 | ... | tk, ti >= 2.
struct AbelianGroup {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const AbelianGroup& rhs) const = default;

    static AbelianGroup free(std::size_t rank) { return AbelianGroup{rank, {}}; }
};

/// Canonical group from an arbitrary list of cyclic orders (0 means Z, 1 is dropped).
AbelianGroup abelian_group_from_cyclic(std::size_t free_rank, std::vector<Integer> orders);

std::string to_string(const AbelianGroup& g);

SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Z^rows / (column span of m).
AbelianGroup cokernel_group(const IntMatrix& m);

struct KernelBasis {
    std::size_t rank = 0;
    std::vector<IntVector> basis;  // saturated integral basis of {v : m v = 0}
};

KernelBasis kernel(const IntMatrix& m);

/// Row-style Hermite normal form: zero rows dropped, pivots positive, entries above
/// each pivot reduced into [0, pivot).
struct HermiteForm {
    IntMatrix H;
    std::vector<std::size_t> pivot_cols;

    std::size_t rank() const { return pivot_cols.size(); }
};

HermiteForm hermite_normal_form(const IntMatrix& m);

/// Whether v lies in the integer row span encoded by a Hermite form.
bool row_span_contains(const HermiteForm& h, const IntVector& v);

/// Exact determinant by fraction-free elimination.
Integer determinant(const IntMatrix& m);

}  // namespace grasscoh

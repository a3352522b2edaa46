#pragma once

#include "toric/ints.hpp"

#include <optional>

namespace toric {

// Dense matrix of exact integers, row-major.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    Int& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows, int cols);

    std::vector<Int> row(int i) const;
    std::vector<std::vector<Int>> row_vectors() const;
    IntMatrix transposed() const;

    bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y);

// Determinant by fraction-free (Bareiss) elimination. Square input.
Int determinant(const IntMatrix& m);

// Rank over Q.
int rank_of(const IntMatrix& m);
int rank_of_rows(const std::vector<std::vector<Int>>& rows, int cols);

struct HermiteResult {
    IntMatrix h; // row-echelon Hermite form
    IntMatrix u; // unimodular, u * m == h
};

// Row-style Hermite normal form: pivots positive, entries above each
// pivot reduced into [0, pivot), zero rows at the bottom.
HermiteResult hermite_normal_form(const IntMatrix& m);

struct SmithResult {
    IntMatrix d;     // diagonal, d1 | d2 | ...
    IntMatrix left;  // unimodular
    IntMatrix right; // unimodular, left * m * right == d
};

SmithResult smith_normal_form(const IntMatrix& m);

// v / gcd(v). Errors on the zero vector.
std::vector<Int> primitive_vector(const std::vector<Int>& v);

// Basis (as rows) of {x in Z^cols : m x = 0}, x as a column vector.
// The returned lattice is saturated.
std::vector<std::vector<Int>> integer_kernel(const IntMatrix& m);

// Basis of the saturation Z^ambient_rank ∩ span_Q(span_vectors),
// canonicalized by Hermite form. Empty input gives an empty basis.
IntMatrix sublattice_basis(const std::vector<LatticeVector>& span_vectors, int ambient_rank);

// Solve x * basis_rows = v over Q. Empty result if inconsistent.
std::optional<std::vector<Rat>> solve_in_row_span(const IntMatrix& basis_rows,
                                                  const std::vector<Int>& v);

// Same, but demands an integral solution; errors otherwise. Used to
// express lattice points in coordinates of a saturated sublattice basis.
std::vector<Int> integral_coordinates(const IntMatrix& basis_rows, const std::vector<Int>& v);

} // namespace toric

#include "toric/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace toric {

std::string vec_to_string(const std::vector<Int>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    os << ")";
    return os.str();
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows, int cols) {
    IntMatrix m(static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows; ++i) {
        if (static_cast<int>(rows[i].size()) != cols)
            throw input_error("matrix row of wrong length");
        for (int j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

std::vector<Int> IntMatrix::row(int i) const {
    std::vector<Int> r(cols);
    for (int j = 0; j < cols; ++j) r[j] = at(i, j);
    return r;
}

std::vector<std::vector<Int>> IntMatrix::row_vectors() const {
    std::vector<std::vector<Int>> rs;
    rs.reserve(rows);
    for (int i = 0; i < rows; ++i) rs.push_back(row(i));
    return rs;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw input_error("matrix product shape mismatch");
    IntMatrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Int& xik = x.at(i, k);
            if (xik == 0) continue;
            for (int j = 0; j < y.cols; ++j) z.at(i, j) += xik * y.at(k, j);
        }
    return z;
}

Int determinant(const IntMatrix& m) {
    if (m.rows != m.cols) throw input_error("determinant of non-square matrix");
    int n = m.rows;
    if (n == 0) return 1;
    IntMatrix w = m;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
        prev = w.at(k, k);
    }
    return sign * w.at(n - 1, n - 1);
}

int rank_of_rows(const std::vector<std::vector<Int>>& rows, int cols) {
    return rank_of(IntMatrix::from_rows(rows, cols));
}

int rank_of(const IntMatrix& m) {
    // Gaussian elimination over Q.
    std::vector<std::vector<Rat>> w(m.rows, std::vector<Rat>(m.cols));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) w[i][j] = Rat(m.at(i, j));
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int p = -1;
        for (int i = rank; i < m.rows; ++i)
            if (w[i][col] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(w[rank], w[p]);
        for (int i = rank + 1; i < m.rows; ++i) {
            if (w[i][col] == 0) continue;
            Rat f = w[i][col] / w[rank][col];
            for (int j = col; j < m.cols; ++j) w[i][j] -= f * w[rank][j];
        }
        ++rank;
    }
    return rank;
}

namespace {

Int floor_div(const Int& a, const Int& b) {
    // b > 0 assumed
    Int q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

void add_row_multiple(IntMatrix& m, int dst, int src, const Int& factor) {
    for (int j = 0; j < m.cols; ++j) m.at(dst, j) += factor * m.at(src, j);
}

void swap_rows(IntMatrix& m, int i, int k) {
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(i, j), m.at(k, j));
}

void negate_row(IntMatrix& m, int i) {
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = -m.at(i, j);
}

void add_col_multiple(IntMatrix& m, int dst, int src, const Int& factor) {
    for (int i = 0; i < m.rows; ++i) m.at(i, dst) += factor * m.at(i, src);
}

void swap_cols(IntMatrix& m, int j, int k) {
    for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, j), m.at(i, k));
}

} // namespace

HermiteResult hermite_normal_form(const IntMatrix& m) {
    HermiteResult res{m, IntMatrix::identity(m.rows)};
    IntMatrix& h = res.h;
    IntMatrix& u = res.u;
    int pivot = 0;
    for (int col = 0; col < h.cols && pivot < h.rows; ++col) {
        // gcd reduction of the column below the pivot row
        for (;;) {
            int best = -1;
            for (int i = pivot; i < h.rows; ++i) {
                if (h.at(i, col) == 0) continue;
                if (best < 0 || abs(h.at(i, col)) < abs(h.at(best, col))) best = i;
            }
            if (best < 0) break;
            if (best != pivot) {
                swap_rows(h, pivot, best);
                swap_rows(u, pivot, best);
            }
            bool clean = true;
            for (int i = pivot + 1; i < h.rows; ++i) {
                if (h.at(i, col) == 0) continue;
                Int q = h.at(i, col) / h.at(pivot, col);
                add_row_multiple(h, i, pivot, -q);
                add_row_multiple(u, i, pivot, -q);
                if (h.at(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h.at(pivot, col) == 0) continue;
        if (h.at(pivot, col) < 0) {
            negate_row(h, pivot);
            negate_row(u, pivot);
        }
        for (int i = 0; i < pivot; ++i) {
            Int q = floor_div(h.at(i, col), h.at(pivot, col));
            if (q != 0) {
                add_row_multiple(h, i, pivot, -q);
                add_row_multiple(u, i, pivot, -q);
            }
        }
        ++pivot;
    }
    return res;
}

SmithResult smith_normal_form(const IntMatrix& m) {
    SmithResult res{m, IntMatrix::identity(m.rows), IntMatrix::identity(m.cols)};
    IntMatrix& d = res.d;
    IntMatrix& l = res.left;
    IntMatrix& r = res.right;
    int n = std::min(d.rows, d.cols);
    for (int t = 0; t < n; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block to (t,t)
            int bi = -1, bj = -1;
            for (int i = t; i < d.rows; ++i)
                for (int j = t; j < d.cols; ++j) {
                    if (d.at(i, j) == 0) continue;
                    if (bi < 0 || abs(d.at(i, j)) < abs(d.at(bi, bj))) { bi = i; bj = j; }
                }
            if (bi < 0) break;
            if (bi != t) { swap_rows(d, t, bi); swap_rows(l, t, bi); }
            if (bj != t) { swap_cols(d, t, bj); swap_cols(r, t, bj); }

            bool dirty = false;
            for (int i = t + 1; i < d.rows; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = d.at(i, t) / d.at(t, t);
                add_row_multiple(d, i, t, -q);
                add_row_multiple(l, i, t, -q);
                if (d.at(i, t) != 0) dirty = true;
            }
            for (int j = t + 1; j < d.cols; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = d.at(t, j) / d.at(t, t);
                add_col_multiple(d, j, t, -q);
                add_col_multiple(r, j, t, -q);
                if (d.at(t, j) != 0) dirty = true;
            }
            if (dirty) continue;

            // pivot must divide the rest of the block
            int oi = -1;
            for (int i = t + 1; i < d.rows && oi < 0; ++i)
                for (int j = t + 1; j < d.cols; ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) { oi = i; break; }
            if (oi >= 0) {
                add_row_multiple(d, t, oi, 1);
                add_row_multiple(l, t, oi, 1);
                continue;
            }
            break;
        }
        if (t < n && d.at(t, t) < 0) { negate_row(d, t); negate_row(l, t); }
        if (t < n && d.at(t, t) == 0) break; // trailing block is zero
    }
    return res;
}

std::vector<Int> primitive_vector(const std::vector<Int>& v) {
    if (is_zero(v)) throw input_error("primitive vector of the zero vector");
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    std::vector<Int> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] / g;
    return w;
}

std::vector<std::vector<Int>> integer_kernel(const IntMatrix& m) {
    SmithResult s = smith_normal_form(m);
    int n = std::min(m.rows, m.cols);
    int rank = 0;
    for (int i = 0; i < n; ++i)
        if (s.d.at(i, i) != 0) ++rank;
    // columns rank..cols-1 of `right` span the kernel
    std::vector<std::vector<Int>> basis;
    for (int j = rank; j < m.cols; ++j) {
        std::vector<Int> v(m.cols);
        for (int i = 0; i < m.cols; ++i) v[i] = s.right.at(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

IntMatrix sublattice_basis(const std::vector<LatticeVector>& span_vectors, int ambient_rank) {
    for (const auto& v : span_vectors)
        if (static_cast<int>(v.size()) != ambient_rank)
            throw input_error("span vector of wrong rank");
    IntMatrix a = IntMatrix::from_rows(span_vectors, ambient_rank);
    // saturation = vectors orthogonal to everything orthogonal to the span
    auto perp = integer_kernel(a);
    IntMatrix b = IntMatrix::from_rows(perp, ambient_rank);
    auto sat = integer_kernel(b);
    IntMatrix basis = IntMatrix::from_rows(sat, ambient_rank);
    HermiteResult h = hermite_normal_form(basis);
    auto rows = h.h.row_vectors();
    rows.resize(sat.size());
    return IntMatrix::from_rows(rows, ambient_rank);
}

std::optional<std::vector<Rat>> solve_in_row_span(const IntMatrix& basis_rows,
                                                  const std::vector<Int>& v) {
    if (static_cast<int>(v.size()) != basis_rows.cols)
        throw input_error("solve: vector of wrong rank");
    int r = basis_rows.rows, d = basis_rows.cols;
    // solve B^T x = v by Gaussian elimination over Q
    std::vector<std::vector<Rat>> w(d, std::vector<Rat>(r + 1));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < r; ++j) w[i][j] = Rat(basis_rows.at(j, i));
        w[i][r] = Rat(v[i]);
    }
    int row = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < r && row < d; ++col) {
        int p = -1;
        for (int i = row; i < d; ++i)
            if (w[i][col] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(w[row], w[p]);
        for (int i = 0; i < d; ++i) {
            if (i == row || w[i][col] == 0) continue;
            Rat f = w[i][col] / w[row][col];
            for (int j = col; j <= r; ++j) w[i][j] -= f * w[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (int i = row; i < d; ++i)
        if (w[i][r] != 0) return std::nullopt; // inconsistent
    std::vector<Rat> x(r, Rat(0));
    for (int i = 0; i < row; ++i) x[pivot_col[i]] = w[i][r] / w[i][pivot_col[i]];
    return x;
}

std::vector<Int> integral_coordinates(const IntMatrix& basis_rows, const std::vector<Int>& v) {
    auto x = solve_in_row_span(basis_rows, v);
    if (!x) throw input_error("vector " + vec_to_string(v) + " is outside the sublattice span");
    std::vector<Int> out(x->size());
    for (std::size_t i = 0; i < x->size(); ++i) {
        const Rat& q = (*x)[i];
        if (denominator(q) != 1)
            throw input_error("vector " + vec_to_string(v) + " is not a lattice point of the sublattice");
        out[i] = numerator(q);
    }
    return out;
}

} // namespace toric

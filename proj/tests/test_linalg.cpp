#include "toric/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace toric;

namespace {

IntMatrix rows(const std::vector<std::vector<long long>>& r, int cols) {
    std::vector<std::vector<Int>> v;
    for (const auto& row : r) v.emplace_back(row.begin(), row.end());
    return IntMatrix::from_rows(v, cols);
}

std::vector<Int> vec(const std::vector<long long>& v) { return std::vector<Int>(v.begin(), v.end()); }

} // namespace

TEST_CASE("hermite normal form on known cases") {
    auto check = [](const IntMatrix& m) {
        HermiteResult res = hermite_normal_form(m);
        CHECK(mat_mul(res.u, m) == res.h);
        Int det_u = determinant(res.u);
        CHECK((det_u == 1 || det_u == -1));
        // idempotence
        HermiteResult again = hermite_normal_form(res.h);
        CHECK(again.h == res.h);
        return res;
    };

    SUBCASE("identity") {
        auto res = check(IntMatrix::identity(2));
        CHECK(res.h == IntMatrix::identity(2));
        CHECK(res.u == IntMatrix::identity(2));
    }
    SUBCASE("already in form") {
        auto res = check(rows({{2, 0}, {0, 2}}, 2));
        CHECK(res.h == rows({{2, 0}, {0, 2}}, 2));
        CHECK(res.u == IntMatrix::identity(2));
    }
    SUBCASE("first-column gcd becomes the pivot") {
        auto res = check(rows({{2, 4}, {1, 3}}, 2));
        CHECK(res.h.at(0, 0) == 1);
    }
    SUBCASE("random matrices") {
        std::mt19937 rng(20240811);
        std::uniform_int_distribution<int> dim(1, 4), entry(-9, 9);
        for (int trial = 0; trial < 60; ++trial) {
            IntMatrix m(dim(rng), dim(rng));
            for (int i = 0; i < m.rows; ++i)
                for (int j = 0; j < m.cols; ++j) m.at(i, j) = entry(rng);
            check(m);
        }
    }
}

TEST_CASE("smith normal form") {
    auto check = [](const IntMatrix& m) {
        SmithResult s = smith_normal_form(m);
        CHECK(mat_mul(mat_mul(s.left, m), s.right) == s.d);
        Int dl = determinant(s.left), dr = determinant(s.right);
        CHECK((dl == 1 || dl == -1));
        CHECK((dr == 1 || dr == -1));
        int n = std::min(m.rows, m.cols);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) CHECK(s.d.at(i, j) == 0);
        for (int i = 0; i + 1 < n; ++i) {
            if (s.d.at(i + 1, i + 1) != 0) {
                REQUIRE(s.d.at(i, i) != 0);
                CHECK(s.d.at(i + 1, i + 1) % s.d.at(i, i) == 0);
            }
        }
        return s;
    };

    SUBCASE("identity") { CHECK(check(IntMatrix::identity(3)).d == IntMatrix::identity(3)); }
    SUBCASE("divisibility normalization") {
        auto s = check(rows({{2, 0}, {0, 3}}, 2));
        CHECK(s.d.at(0, 0) == 1);
        CHECK(s.d.at(1, 1) == 6);
    }
    SUBCASE("zero matrix") {
        auto s = check(IntMatrix(2, 2));
        CHECK(s.d == IntMatrix(2, 2));
    }
    SUBCASE("product of invariant factors is |det|") {
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> entry(-6, 6);
        for (int trial = 0; trial < 40; ++trial) {
            IntMatrix m(3, 3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m.at(i, j) = entry(rng);
            auto s = check(m);
            Int prod = s.d.at(0, 0) * s.d.at(1, 1) * s.d.at(2, 2);
            Int det = determinant(m);
            CHECK(prod == (det < 0 ? -det : det));
        }
    }
}

TEST_CASE("primitive vectors") {
    CHECK(primitive_vector(vec({2, 4})) == vec({1, 2}));
    CHECK(primitive_vector(vec({3, 2})) == vec({3, 2}));
    CHECK_THROWS_AS(primitive_vector(vec({0, 0})), input_error);
    // idempotent and direction preserving
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> entry(-8, 8);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Int> v(3);
        for (auto& x : v) x = entry(rng);
        if (is_zero(v)) continue;
        auto p = primitive_vector(v);
        CHECK(primitive_vector(p) == p);
        Int g = 0;
        for (const auto& x : p) g = gcd(g, x);
        CHECK(g == 1);
        // v = gcd * p exactly
        Int gv = 0;
        for (const auto& x : v) gv = gcd(gv, x);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == gv * p[i]);
    }
}

TEST_CASE("sublattice basis is the saturation") {
    SUBCASE("saturation of a line") {
        IntMatrix b = sublattice_basis({vec({2, 0})}, 2);
        REQUIRE(b.rows == 1);
        CHECK(b.row(0) == vec({1, 0}));
    }
    SUBCASE("standard basis") {
        IntMatrix b = sublattice_basis({vec({1, 0}), vec({0, 1})}, 2);
        CHECK(b == IntMatrix::identity(2));
    }
    SUBCASE("empty span") {
        IntMatrix b = sublattice_basis({}, 3);
        CHECK(b.rows == 0);
        CHECK(b.cols == 3);
    }
    SUBCASE("inputs are integer combinations of the basis; basis spans the same space") {
        std::mt19937 rng(1234);
        std::uniform_int_distribution<int> entry(-5, 5), count(1, 3);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<LatticeVector> span;
            int k = count(rng);
            for (int i = 0; i < k; ++i) {
                std::vector<Int> v(4);
                for (auto& x : v) x = entry(rng);
                span.push_back(v);
            }
            IntMatrix b = sublattice_basis(span, 4);
            CHECK(b.rows == rank_of_rows(span, 4));
            for (const auto& v : span) {
                if (is_zero(v)) continue;
                auto coords = integral_coordinates(b, v); // throws if not integral
                CHECK(static_cast<int>(coords.size()) == b.rows);
            }
        }
    }
}

TEST_CASE("integer kernel") {
    auto k = integer_kernel(rows({{1, 2, 3}}, 3));
    CHECK(k.size() == 2);
    for (const auto& v : k) CHECK(v[0] + 2 * v[1] + 3 * v[2] == 0);
    CHECK(integer_kernel(IntMatrix::identity(3)).empty());
}

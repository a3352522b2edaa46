#include "toric/polytopes.hpp"

#include "toric/cones.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toric {

namespace {

std::vector<std::vector<Int>> dedupe_sorted(std::vector<std::vector<Int>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<Int> sub(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

// Primitive normal of the hyperplane through r affinely independent
// points of Z^r, together with its offset.
std::pair<std::vector<Int>, Int> hyperplane_through(const std::vector<std::vector<Int>>& pts) {
    int r = static_cast<int>(pts[0].size());
    std::vector<std::vector<Int>> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
    auto kernel = integer_kernel(IntMatrix::from_rows(diffs, r));
    if (kernel.size() != 1)
        throw input_error("internal: hyperplane points are affinely dependent");
    std::vector<Int> n = primitive_vector(kernel[0]);
    return {n, dot(n, pts[0])};
}

Int abs_det_of_diffs(const std::vector<std::vector<Int>>& pts, const std::vector<Int>& apex) {
    int r = static_cast<int>(apex.size());
    std::vector<std::vector<Int>> rows;
    for (const auto& p : pts) rows.push_back(sub(p, apex));
    Int d = determinant(IntMatrix::from_rows(rows, r));
    return d < 0 ? -d : d;
}

} // namespace

AffineCoords to_affine_coords(const std::vector<LatticeVector>& points) {
    if (points.empty()) throw input_error("empty point set");
    AffineCoords ac;
    ac.anchor = points[0];
    std::vector<LatticeVector> diffs;
    for (const auto& p : points) diffs.push_back(sub(p, ac.anchor));
    ac.dir_basis = sublattice_basis(diffs, static_cast<int>(ac.anchor.size()));
    ac.dim = ac.dir_basis.rows;
    for (const auto& d : diffs) ac.coords.push_back(integral_coordinates(ac.dir_basis, d));
    return ac;
}

std::vector<HullFacet> polyhedron_facets(const std::vector<std::vector<Int>>& points,
                                         const std::vector<std::vector<Int>>& rays, int r) {
    if (points.empty()) throw input_error("polyhedron needs at least one point");
    std::vector<std::vector<Int>> lifted;
    for (const auto& p : points) {
        std::vector<Int> l = p;
        l.push_back(1);
        lifted.push_back(std::move(l));
    }
    for (const auto& v : rays) {
        std::vector<Int> l = v;
        l.push_back(0);
        lifted.push_back(std::move(l));
    }
    auto dual = dual_extreme_rays(lifted, r + 1);
    std::vector<HullFacet> facets;
    for (const auto& u : dual) {
        std::vector<Int> a(u.begin(), u.end() - 1);
        if (is_zero(a)) continue; // trivial inequality from the lifting direction
        facets.push_back(HullFacet{std::move(a), -u.back()});
    }
    return facets;
}

bool satisfies_facets(const std::vector<HullFacet>& facets, const std::vector<Int>& x) {
    for (const auto& f : facets)
        if (dot(f.normal, x) < f.offset) return false;
    return true;
}

std::vector<LatticeVector> convex_hull(const std::vector<LatticeVector>& points) {
    if (points.empty()) throw input_error("convex hull of an empty set");
    auto pts = dedupe_sorted(points);
    if (pts.size() == 1) return pts;
    AffineCoords ac = to_affine_coords(pts);
    if (ac.dim == 0) return {pts[0]};
    auto facets = polyhedron_facets(ac.coords, {}, ac.dim);
    std::vector<LatticeVector> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<std::vector<Int>> active;
        for (const auto& f : facets)
            if (dot(f.normal, ac.coords[i]) == f.offset) active.push_back(f.normal);
        if (!active.empty() && rank_of_rows(active, ac.dim) == ac.dim) out.push_back(pts[i]);
    }
    return out; // pts sorted, so out is canonical
}

LatticePolytope make_lattice_polytope(const std::vector<LatticeVector>& points,
                                      const IntMatrix& reference_lattice) {
    LatticePolytope p;
    p.vertices = convex_hull(points);
    p.reference_lattice = reference_lattice;
    std::vector<LatticeVector> diffs;
    for (const auto& v : p.vertices) diffs.push_back(sub(v, p.vertices[0]));
    p.affine_dim = rank_of_rows(diffs, static_cast<int>(p.vertices[0].size()));
    return p;
}

namespace {

// Vertex coordinates of the polytope in reference-lattice coordinates,
// translated by the first vertex.
std::vector<std::vector<Int>> lattice_coords(const LatticePolytope& p) {
    std::vector<std::vector<Int>> coords;
    for (const auto& v : p.vertices)
        coords.push_back(integral_coordinates(p.reference_lattice, sub(v, p.vertices[0])));
    return coords;
}

void check_volume_preconditions(const LatticePolytope& p) {
    if (p.vertices.empty()) throw input_error("volume of an empty polytope");
    if (p.affine_dim < p.reference_lattice.rows)
        throw input_error("degenerate polytope: affine dimension below the lattice rank");
    if (p.affine_dim > p.reference_lattice.rows)
        throw input_error("polytope affine dimension exceeds the lattice rank");
}

} // namespace

Int volume_times_factorial(const std::vector<std::vector<Int>>& points_in, int r) {
    auto pts = dedupe_sorted(points_in);
    if (static_cast<int>(pts.size()) < r + 1) return 0;

    // initial full-dimensional simplex, greedily in canonical order
    std::vector<int> simplex{0};
    std::vector<std::vector<Int>> diffs;
    for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
        if (static_cast<int>(simplex.size()) == r + 1) break;
        diffs.push_back(sub(pts[i], pts[simplex[0]]));
        if (rank_of_rows(diffs, r) == static_cast<int>(diffs.size()))
            simplex.push_back(i);
        else
            diffs.pop_back();
    }
    if (static_cast<int>(simplex.size()) != r + 1) return 0;

    std::vector<std::vector<Int>> apex_pts;
    for (std::size_t k = 1; k < simplex.size(); ++k) apex_pts.push_back(pts[simplex[k]]);
    Int volume = abs_det_of_diffs(apex_pts, pts[simplex[0]]);

    // scaled interior reference point: sum of the simplex vertices,
    // interpreted as centroid * (r+1)
    std::vector<Int> centroid_scaled(r, 0);
    for (int i : simplex)
        for (int j = 0; j < r; ++j) centroid_scaled[j] += pts[i][j];

    struct BFacet {
        std::vector<int> verts; // sorted point indices
        std::vector<Int> normal;
        Int offset; // inside: <normal, x> >= offset
    };
    auto make_facet = [&](std::vector<int> verts) {
        std::sort(verts.begin(), verts.end());
        std::vector<std::vector<Int>> vp;
        for (int i : verts) vp.push_back(pts[i]);
        auto [n, c] = hyperplane_through(vp);
        Int side = dot(n, centroid_scaled) - Int(r + 1) * c;
        if (side == 0) throw input_error("internal: reference point on a facet");
        if (side < 0) {
            for (Int& x : n) x = -x;
            c = -c;
        }
        return BFacet{std::move(verts), std::move(n), std::move(c)};
    };

    std::vector<BFacet> facets;
    for (int omit = 0; omit <= r; ++omit) {
        std::vector<int> verts;
        for (int k = 0; k <= r; ++k)
            if (k != omit) verts.push_back(simplex[k]);
        facets.push_back(make_facet(verts));
    }

    std::set<int> used(simplex.begin(), simplex.end());
    for (int qi = 0; qi < static_cast<int>(pts.size()); ++qi) {
        if (used.count(qi)) continue;
        const auto& q = pts[qi];
        std::vector<char> visible(facets.size(), 0);
        bool any = false;
        for (std::size_t fi = 0; fi < facets.size(); ++fi) {
            if (dot(facets[fi].normal, q) < facets[fi].offset) {
                visible[fi] = 1;
                any = true;
            }
        }
        if (!any) continue; // inside or on the boundary

        // cone the new point over every strictly visible facet
        for (std::size_t fi = 0; fi < facets.size(); ++fi) {
            if (!visible[fi]) continue;
            std::vector<std::vector<Int>> vp;
            for (int i : facets[fi].verts) vp.push_back(pts[i]);
            volume += abs_det_of_diffs(vp, q);
        }

        // horizon ridges: ridges of exactly one visible facet
        std::map<std::vector<int>, std::vector<std::size_t>> ridge_owners;
        for (std::size_t fi = 0; fi < facets.size(); ++fi) {
            for (std::size_t drop = 0; drop < facets[fi].verts.size(); ++drop) {
                std::vector<int> ridge;
                for (std::size_t k = 0; k < facets[fi].verts.size(); ++k)
                    if (k != drop) ridge.push_back(facets[fi].verts[k]);
                ridge_owners[ridge].push_back(fi);
            }
        }
        std::vector<BFacet> next;
        for (std::size_t fi = 0; fi < facets.size(); ++fi)
            if (!visible[fi]) next.push_back(facets[fi]);
        for (const auto& [ridge, owners] : ridge_owners) {
            int vis = 0;
            for (std::size_t fi : owners) vis += visible[fi];
            if (vis != 1 || owners.size() != 2) continue;
            std::vector<int> verts = ridge;
            verts.push_back(qi);
            next.push_back(make_facet(std::move(verts)));
        }
        facets = std::move(next);
    }
    return volume;
}

Int normalized_volume(const LatticePolytope& p) {
    check_volume_preconditions(p);
    int r = p.reference_lattice.rows;
    if (r == 0) return 1;
    return volume_times_factorial(lattice_coords(p), r);
}

namespace {

Int binomial(int n, int k) {
    Int b = 1;
    for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return b;
}

Int count_points_in_dilate(const std::vector<std::vector<Int>>& coords,
                           const std::vector<HullFacet>& facets, int r, int k) {
    std::vector<Int> lo(r), hi(r);
    for (int j = 0; j < r; ++j) {
        lo[j] = hi[j] = coords[0][j] * k;
        for (const auto& c : coords) {
            Int v = c[j] * k;
            if (v < lo[j]) lo[j] = v;
            if (v > hi[j]) hi[j] = v;
        }
    }
    Int cells = 1;
    for (int j = 0; j < r; ++j) cells *= hi[j] - lo[j] + 1;
    if (cells > 100000000)
        throw input_error("lattice point enumeration box too large for the counting oracle");

    Int count = 0;
    std::vector<Int> x = lo;
    for (;;) {
        bool inside = true;
        for (const auto& f : facets) {
            if (dot(f.normal, x) < f.offset * k) {
                inside = false;
                break;
            }
        }
        if (inside) ++count;
        int j = 0;
        while (j < r) {
            ++x[j];
            if (x[j] <= hi[j]) break;
            x[j] = lo[j];
            ++j;
        }
        if (j == r) break;
    }
    return count;
}

} // namespace

Int ehrhart_volume_oracle(const LatticePolytope& p) {
    check_volume_preconditions(p);
    int r = p.reference_lattice.rows;
    if (r == 0) return 1;
    auto coords = lattice_coords(p);
    auto facets = polyhedron_facets(coords, {}, r);
    // n! * leading Ehrhart coefficient by forward differences
    Int vol = 0;
    for (int j = 0; j <= r; ++j) {
        Int c = binomial(r, j) * count_points_in_dilate(coords, facets, r, j);
        vol += ((r - j) % 2 == 0) ? c : -c;
    }
    return vol;
}

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q) {
    if (p.vertices.empty() || q.vertices.empty())
        throw input_error("Minkowski sum of an empty polytope");
    if (p.vertices[0].size() != q.vertices[0].size())
        throw input_error("Minkowski sum of polytopes of different ambient rank");
    std::vector<LatticeVector> sums;
    for (const auto& a : p.vertices)
        for (const auto& b : q.vertices) {
            std::vector<Int> s(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
            sums.push_back(std::move(s));
        }
    return make_lattice_polytope(sums, p.reference_lattice);
}

Int mixed_volume(const std::vector<std::pair<LatticePolytope, int>>& slots,
                 const IntMatrix& lattice) {
    int n = 0;
    for (const auto& [p, mult] : slots) {
        if (mult < 0) throw input_error("negative multiplicity in mixed volume");
        n += mult;
    }
    if (n != lattice.rows)
        throw input_error("mixed volume: total multiplicity must equal the lattice rank");
    if (n == 0) return 1; // empty product convention
    if (n > 12) throw input_error("mixed volume: rank beyond supported desk scale");

    // entries in lattice coordinates, each polytope translated by its
    // own first vertex (mixed volume is translation invariant per slot)
    std::vector<std::vector<std::vector<Int>>> entry;
    for (const auto& [p, mult] : slots) {
        if (p.vertices.empty()) throw input_error("mixed volume of an empty polytope");
        std::vector<std::vector<Int>> coords;
        for (const auto& v : p.vertices)
            coords.push_back(integral_coordinates(lattice, sub(v, p.vertices[0])));
        for (int m = 0; m < mult; ++m) entry.push_back(coords);
    }

    // subset sums with hull pruning, built from the lowest set bit
    std::vector<std::vector<std::vector<Int>>> sum_pts(std::size_t(1) << n);
    Int acc = 0;
    for (unsigned s = 1; s < (1u << n); ++s) {
        unsigned low = s & (-s);
        int low_idx = __builtin_ctz(s);
        if (s == low) {
            sum_pts[s] = entry[low_idx];
        } else {
            std::vector<std::vector<Int>> pts;
            for (const auto& a : sum_pts[s ^ low])
                for (const auto& b : entry[low_idx]) {
                    std::vector<Int> v(a.size());
                    for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i] + b[i];
                    pts.push_back(std::move(v));
                }
            sum_pts[s] = convex_hull(pts);
        }
        Int v = volume_times_factorial(sum_pts[s], n);
        acc += (n - __builtin_popcount(s)) % 2 == 0 ? v : -v;
    }

    // acc = n! * sum (-1)^{n-|S|} vol(P_S), and the alternating sum of
    // Euclidean volumes is the normalized mixed volume itself
    Int fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    if (acc % fact != 0)
        throw input_error("internal: mixed volume inclusion-exclusion not divisible by n!");
    return acc / fact;
}

} // namespace toric

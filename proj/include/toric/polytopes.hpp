#pragma once

#include "toric/linalg.hpp"

namespace toric {

// Vertex-presented lattice polytope. Volumes are normalized against
// reference_lattice (rows = basis); the vertices must lie in a single
// coset of its rational span.
struct LatticePolytope {
    std::vector<LatticeVector> vertices; // minimal, canonically sorted
    IntMatrix reference_lattice;
    int affine_dim = 0;
};

// Minimal vertex set of conv(points), canonically sorted. Works in any
// ambient rank; degenerate inputs are fine.
std::vector<LatticeVector> convex_hull(const std::vector<LatticeVector>& points);

LatticePolytope make_lattice_polytope(const std::vector<LatticeVector>& points,
                                      const IntMatrix& reference_lattice);

// n! times the Euclidean volume in reference-lattice coordinates,
// n = affine_dim. Requires affine_dim == lattice rank; a point with a
// rank-0 lattice has volume 1 by convention.
Int normalized_volume(const LatticePolytope& p);

// Same value through a different route: lattice-point counts of the
// dilates kP, k = 0..n, combined by finite differences.
Int ehrhart_volume_oracle(const LatticePolytope& p);

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q);

// Normalized mixed volume of the multiset of polytopes (with
// multiplicities summing to the lattice rank), via inclusion-exclusion
// over volumes of subset Minkowski sums. Diagonal case reproduces
// normalized_volume.
Int mixed_volume(const std::vector<std::pair<LatticePolytope, int>>& slots,
                 const IntMatrix& lattice);

// --- full-dimensional kernels, shared with the Newton-polygon layer ---

// One valid inequality <normal, x> >= offset; for a facet the equality
// locus meets the polyhedron in dimension r-1.
struct HullFacet {
    std::vector<Int> normal;
    Int offset;
};

// Facets of conv(points) + cone(rays) in Z^r. Needs the result to be
// full-dimensional and pointed-at-infinity (rays from a pointed cone).
std::vector<HullFacet> polyhedron_facets(const std::vector<std::vector<Int>>& points,
                                         const std::vector<std::vector<Int>>& rays, int r);

bool satisfies_facets(const std::vector<HullFacet>& facets, const std::vector<Int>& x);

// r! * Euclidean volume of conv(points) in Z^r by incremental
// beneath-beyond triangulation; 0 for degenerate input.
Int volume_times_factorial(const std::vector<std::vector<Int>>& points, int r);

// Translate by the first point and express in a saturated basis of the
// direction lattice; coordinates of lattice points stay integral.
struct AffineCoords {
    LatticeVector anchor;
    IntMatrix dir_basis;
    std::vector<std::vector<Int>> coords;
    int dim = 0;
};

AffineCoords to_affine_coords(const std::vector<LatticeVector>& points);

} // namespace toric

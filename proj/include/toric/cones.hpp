#pragma once

#include "toric/linalg.hpp"

namespace toric {

// Extreme rays of the cone {u : <u, g> >= 0 for every generator g}.
// The generators must span R^rank. Rays come back primitive and
// lexicographically sorted; the result may be lower-dimensional.
std::vector<std::vector<Int>> dual_extreme_rays(const std::vector<std::vector<Int>>& generators,
                                                int rank);

// A full-dimensional, pointed pair (sigma in N, sigma-check in M).
// Both generator families are primitive extreme rays in canonical
// (lexicographic) order; faces of sigma-check index the torus orbits.
struct Cone {
    int rank = 0;
    std::vector<LatticeVector> gens_m; // extreme rays of sigma-check
    std::vector<DualVector> gens_n;    // extreme rays of sigma
};

Cone cone_from_dual_generators(const std::vector<LatticeVector>& gens_in_m, int rank);
Cone cone_from_generators(const std::vector<DualVector>& gens_in_n, int rank);

using FaceId = std::vector<int>;

std::string face_id_to_string(const FaceId& id);
FaceId face_id_from_string(const std::string& s);

struct Face {
    FaceId id;                // sorted indices of the sigma-check generators on the face
    int dim = 0;              // = rank of span_basis
    IntMatrix span_basis;     // rows: basis of M ∩ L(Delta), saturated
    std::vector<int> normals; // indices of the sigma generators vanishing on the face
};

// Every face exactly once, closed under intersection, sorted by
// (dim, id). Includes the zero face (empty id) and sigma-check itself.
std::vector<Face> enumerate_faces(const Cone& c);

const Face& find_face(const std::vector<Face>& faces, const FaceId& id);

// v assumed to lie in sigma-check.
bool face_contains(const Cone& c, const Face& f, const LatticeVector& v);

bool in_dual_cone(const Cone& c, const LatticeVector& v);

// Generators of the face expressed in span_basis coordinates (rank = dim).
std::vector<std::vector<Int>> face_generator_coords(const Cone& c, const Face& f);

// Polar cone of the face inside L(Delta)*, in coordinates dual to
// span_basis. The zero face has the trivial polar (flagged, not an error).
struct FacePolar {
    bool trivial = false;
    std::vector<DualVector> generators;
};

FacePolar polar_of_face(const Cone& c, const Face& f);

// u in the interior of the polar cone of the face (u given in the dual
// basis of span_basis).
bool in_polar_interior(const Cone& c, const Face& f, const DualVector& u);

// u in the (closed) polar cone of the face.
bool in_polar(const Cone& c, const Face& f, const DualVector& u);

// True iff the face of sigma dual to this face is generated by part of
// a Z-basis of N, i.e. the variety is smooth along the orbit.
bool smooth_along_orbit(const Cone& c, const Face& f);

// The dual cone is spanned by exactly the standard basis of Z^rank.
bool is_standard_octant(const Cone& c);

} // namespace toric

#pragma once

#include "toric/cones.hpp"
#include "toric/polytopes.hpp"

#include <map>
#include <string>

namespace toric {

// A regular function on the affine toric variety, given by its finite
// support inside sigma-check ∩ M with exact rational coefficients.
// Every formula downstream depends on the support only; coefficients
// are carried for record keeping.
struct ToricFunction {
    std::string name;
    std::map<LatticeVector, Rat> terms;
    bool generic_linear = false; // constructed by the generic-linear helper
};

ToricFunction make_toric_function(const std::string& name,
                                  const std::map<LatticeVector, Rat>& terms);

// Exponents must lie in sigma-check ∩ M and miss the origin.
void check_support_in_cone(const ToricFunction& fn, const Cone& c);

std::vector<LatticeVector> support_in_face(const ToricFunction& fn, const Cone& c, const Face& f);

// supp(fn) ∩ Delta nonempty, equivalently the Newton polygon meets the face.
bool meets_face(const ToricFunction& fn, const Cone& c, const Face& f);

// One compact (dim Delta - 1)-dimensional face of the restricted Newton
// polygon, with its primitive inner normal in the dual basis of the
// face lattice and the minimum pairing value on it.
struct NewtonFacet {
    std::vector<std::vector<Int>> vertex_coords; // face-lattice coordinates
    std::vector<LatticeVector> vertices_ambient;
    DualVector normal;
    Int level;
};

struct RestrictedNewtonData {
    FaceId face;
    int face_dim = 0;
    std::vector<NewtonFacet> facets; // sorted by normal
};

RestrictedNewtonData newton_restriction(const ToricFunction& fn, const Cone& c, const Face& f);

// conv(facet ∪ {0}) with the face lattice as reference. The facet must
// not have 0 in its affine hull.
LatticePolytope cone_over_facet(const LatticePolytope& facet, const IntMatrix& face_lattice);

struct SupportingFaceData {
    std::vector<std::vector<Int>> minimizing_coords; // face coordinates, sorted
    LatticePolytope polytope;                        // hull of the minimizing support points
    ToricFunction u_part;
    bool compact = false; // u interior to the polar of the face
    Int level;
};

// Minimizing face of <u,.> on the restricted Newton polygon; u in the
// closed polar cone of the face, in dual face-basis coordinates.
SupportingFaceData supporting_face(const ToricFunction& fn, const Cone& c, const Face& f,
                                   const DualVector& u);

// min <u, w> over the restricted polygon of f_k; u interior to the polar.
Int d_min(const ToricFunction& f_k, const Cone& c, const Face& f, const DualVector& u);

// Compact facets of the Newton polygon of (prod of priors meeting the
// face) * f_k restricted to the face, with the per-function supporting
// faces that Minkowski-decompose each facet.
struct ProductFacet {
    NewtonFacet facet;                            // gamma_i with u_i and level
    Int d;                                        // min of u_i over f_k's polygon
    std::vector<SupportingFaceData> summands;     // per j in I(Delta) then f_k
};

struct ProductPolygonData {
    FaceId face;
    int face_dim = 0;
    std::vector<int> prior_indices; // I(Delta), indices into the priors list
    int m_delta = 1;                // #I(Delta) + 1
    std::vector<ProductFacet> facets;
};

ProductPolygonData product_polygon(const std::vector<ToricFunction>& priors,
                                   const ToricFunction& f_k, const Cone& c, const Face& f);

// Facets of the full Newton polyhedron conv(supp) + sigma-check in M.
std::vector<HullFacet> newton_polyhedron_facets(const ToricFunction& fn, const Cone& c);

bool in_newton_polyhedron(const std::vector<HullFacet>& facets, const LatticeVector& v);

// Support points that are vertices of the Newton polyhedron.
std::vector<LatticeVector> essential_support(const ToricFunction& fn, const Cone& c);

} // namespace toric

#pragma once

#include "toric/invariants.hpp"

namespace toric {

// One-parameter polynomial deformation base + sum of theta_i(t) * h_i.
// The parameter functions are labels only; every check is supports-only.
struct Deformation {
    ToricFunction base;
    std::vector<ToricFunction> perturbations;
    std::string parameter = "t";
};

struct ConstancyWitness {
    std::string perturbation;
    LatticeVector point;
    DualVector normal; // ambient facet normal of the base Newton polyhedron
    Int value;
    Int level; // violated: <normal, point> < level
};

struct ConstancyResult {
    bool pass = false;
    std::optional<ConstancyWitness> witness;
    // the sufficient condition: per face, compact facets of the
    // perturbations' polygons are disjoint from those of the base
    bool facet_disjointness = true;
};

// PASS iff the Newton polyhedron of base + perturbations equals the
// base polyhedron; on failure the witness is a support point strictly
// below a facet of the base polyhedron.
ConstancyResult newton_constancy_check(const Deformation& d, const Cone& c,
                                       const std::vector<Face>& faces);

struct FamilyReport {
    ConstancyResult f_check;
    ConstancyResult g_check;
    bool certified = false; // member reports recompute identically
    InvariantReport morse;  // common Morse-count report of the family
    std::vector<std::string> hypotheses;
};

// Gate both families on polygon constancy, compute the Morse-count
// bundle from the base supports, recompute it from the union supports
// and certify the two agree literally.
FamilyReport family_invariant_report(const Deformation& f_fam, const Deformation& g_fam,
                                     const Cone& c, const std::vector<Face>& faces,
                                     const EuTable& eu_x, const EuTable& eu_xg, int workers = 1);

} // namespace toric

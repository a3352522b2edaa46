#include "toric/family.hpp"

#include <algorithm>
#include <sstream>

namespace toric {

namespace {

std::vector<Int> sub(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

// exact membership of a lattice point in conv(points)
bool point_in_polytope(const std::vector<LatticeVector>& points, const LatticeVector& x) {
    AffineCoords ac = to_affine_coords(points);
    auto rel = solve_in_row_span(ac.dir_basis, sub(x, ac.anchor));
    if (!rel) return false; // outside the affine hull
    std::vector<Int> xc(rel->size());
    for (std::size_t i = 0; i < rel->size(); ++i) {
        if (denominator((*rel)[i]) != 1) return false; // lattice x vs saturated basis
        xc[i] = numerator((*rel)[i]);
    }
    if (ac.dim == 0) return x == points[0];
    auto facets = polyhedron_facets(ac.coords, {}, ac.dim);
    return satisfies_facets(facets, xc);
}

// compact-facet disjointness of the perturbation polygons from the
// base polygon, face by face
bool facet_disjointness_condition(const ToricFunction& base, const ToricFunction& h,
                                  const Cone& c, const std::vector<Face>& faces) {
    for (const Face& face : faces) {
        if (face.dim < 1) continue;
        if (!meets_face(h, c, face) || !meets_face(base, c, face)) continue;
        auto hb = newton_restriction(h, c, face);
        auto fb = newton_restriction(base, c, face);
        for (const auto& hf : hb.facets)
            for (const auto& ff : fb.facets) {
                // gamma ∩ beta nonempty iff 0 lies in gamma + (-beta)
                std::vector<LatticeVector> diffs;
                for (const auto& a : hf.vertex_coords)
                    for (const auto& b : ff.vertex_coords) diffs.push_back(sub(a, b));
                if (point_in_polytope(diffs, LatticeVector(face.dim, 0))) return false;
            }
    }
    return true;
}

} // namespace

ConstancyResult newton_constancy_check(const Deformation& d, const Cone& c,
                                       const std::vector<Face>& faces) {
    ConstancyResult res;
    res.pass = true;
    auto base_facets = newton_polyhedron_facets(d.base, c);
    for (const auto& h : d.perturbations) {
        check_support_in_cone(h, c);
        for (const auto& [exp, coeff] : h.terms) {
            for (const auto& facet : base_facets) {
                Int v = dot(facet.normal, exp);
                if (v >= facet.offset) continue;
                res.pass = false;
                if (!res.witness)
                    res.witness = ConstancyWitness{h.name, exp, facet.normal, v, facet.offset};
            }
        }
    }
    res.facet_disjointness = true;
    for (const auto& h : d.perturbations)
        if (!facet_disjointness_condition(d.base, h, c, faces)) {
            res.facet_disjointness = false;
            break;
        }
    return res;
}

namespace {

std::string witness_text(const std::string& family, const ConstancyWitness& w) {
    std::ostringstream os;
    os << "Newton polygon of family '" << family << "' is not constant: support point "
       << vec_to_string(w.point) << " of '" << w.perturbation << "' lies below the facet <"
       << vec_to_string(w.normal) << ",x> >= " << w.level << " (value " << w.value << ")";
    return os.str();
}

ToricFunction union_function(const Deformation& d) {
    std::map<LatticeVector, Rat> terms = d.base.terms;
    for (const auto& h : d.perturbations)
        for (const auto& [exp, coeff] : h.terms) terms.emplace(exp, coeff);
    ToricFunction u = make_toric_function(d.base.name + "+perturbations", terms);
    u.generic_linear = d.base.generic_linear;
    return u;
}

bool rows_equal(const std::vector<TermRow>& a, const std::vector<TermRow>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].face != b[i].face || a[i].dim != b[i].dim || a[i].m_delta != b[i].m_delta ||
            a[i].sign != b[i].sign || a[i].magnitude != b[i].magnitude || a[i].dk != b[i].dk ||
            !(a[i].eu == b[i].eu) || !(a[i].contribution == b[i].contribution))
            return false;
    }
    return true;
}

bool corrections_equal(const std::vector<CorrectionRow>& a, const std::vector<CorrectionRow>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].face != b[i].face || a[i].chi != b[i].chi || !(a[i].eu_x == b[i].eu_x) ||
            !(a[i].eu_xg == b[i].eu_xg))
            return false;
    }
    return true;
}

} // namespace

FamilyReport family_invariant_report(const Deformation& f_fam, const Deformation& g_fam,
                                     const Cone& c, const std::vector<Face>& faces,
                                     const EuTable& eu_x, const EuTable& eu_xg, int workers) {
    FamilyReport rep;
    rep.f_check = newton_constancy_check(f_fam, c, faces);
    if (!rep.f_check.pass)
        throw input_error(witness_text(f_fam.base.name, *rep.f_check.witness));
    rep.g_check = newton_constancy_check(g_fam, c, faces);
    if (!rep.g_check.pass)
        throw input_error(witness_text(g_fam.base.name, *rep.g_check.witness));

    rep.morse = morse_count(f_fam.base, g_fam.base, c, faces, eu_x, eu_xg, workers);

    // every member of the family shares the supports' combinatorics;
    // recompute from the union supports and demand literal agreement
    InvariantReport again = morse_count(union_function(f_fam), union_function(g_fam), c, faces,
                                        eu_x, eu_xg, workers);
    rep.certified = rep.morse.total == again.total && *rep.morse.b_x == *again.b_x &&
                    *rep.morse.b_xg == *again.b_xg && rows_equal(rep.morse.rows, again.rows) &&
                    corrections_equal(rep.morse.corrections, again.corrections);
    if (!rep.certified)
        throw std::logic_error("family report is not support-stable; this is a bug");

    rep.hypotheses = rep.morse.hypotheses;
    rep.hypotheses.push_back("Newton polygon constancy of both families verified");
    rep.hypotheses.push_back("the family of hypersurface functions is admissible (asserted)");
    rep.hypotheses.push_back("tractability holds for every member pair (asserted)");
    return rep;
}

} // namespace toric

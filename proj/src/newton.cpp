#include "toric/newton.hpp"

#include <algorithm>

namespace toric {

ToricFunction make_toric_function(const std::string& name,
                                  const std::map<LatticeVector, Rat>& terms) {
    if (terms.empty()) throw input_error("function '" + name + "' has no terms");
    std::size_t rank = terms.begin()->first.size();
    for (const auto& [exp, coeff] : terms) {
        if (exp.size() != rank)
            throw input_error("function '" + name + "': exponent of wrong rank");
        if (is_zero(exp))
            throw input_error("function '" + name + "' has a term with exponent 0; " +
                              "the function must vanish at the fixed point");
        if (coeff == 0)
            throw input_error("function '" + name + "': zero coefficient at " + vec_to_string(exp));
    }
    return ToricFunction{name, terms, false};
}

void check_support_in_cone(const ToricFunction& fn, const Cone& c) {
    for (const auto& [exp, coeff] : fn.terms) {
        if (static_cast<int>(exp.size()) != c.rank)
            throw input_error("function '" + fn.name + "': exponent of wrong rank");
        if (!in_dual_cone(c, exp))
            throw input_error("function '" + fn.name + "': support " + vec_to_string(exp) +
                              " outside dual cone");
    }
}

std::vector<LatticeVector> support_in_face(const ToricFunction& fn, const Cone& c, const Face& f) {
    std::vector<LatticeVector> pts;
    for (const auto& [exp, coeff] : fn.terms)
        if (face_contains(c, f, exp)) pts.push_back(exp);
    return pts;
}

bool meets_face(const ToricFunction& fn, const Cone& c, const Face& f) {
    return !support_in_face(fn, c, f).empty();
}

namespace {

std::vector<std::vector<Int>> to_face_coords(const Face& f, const std::vector<LatticeVector>& pts) {
    std::vector<std::vector<Int>> coords;
    for (const auto& p : pts) coords.push_back(integral_coordinates(f.span_basis, p));
    return coords;
}

LatticeVector from_face_coords(const Face& f, const std::vector<Int>& x) {
    LatticeVector v(f.span_basis.cols, 0);
    for (int i = 0; i < f.span_basis.rows; ++i)
        for (int j = 0; j < f.span_basis.cols; ++j) v[j] += x[i] * f.span_basis.at(i, j);
    return v;
}

// compact facets of conv(points) + face cone, in face coordinates
std::vector<NewtonFacet> compact_facets(const Cone& c, const Face& f,
                                        const std::vector<std::vector<Int>>& points) {
    int r = f.dim;
    auto face_cone = face_generator_coords(c, f);
    std::vector<NewtonFacet> out;
    for (const auto& hf : polyhedron_facets(points, face_cone, r)) {
        bool interior = true; // normal strictly positive on the face cone
        for (const auto& g : face_cone)
            if (dot(hf.normal, g) <= 0) { interior = false; break; }
        if (!interior) continue;
        NewtonFacet nf;
        nf.normal = hf.normal;
        nf.level = hf.offset;
        std::vector<std::vector<Int>> minimizing;
        for (const auto& p : points)
            if (dot(hf.normal, p) == hf.offset) minimizing.push_back(p);
        nf.vertex_coords = convex_hull(minimizing);
        for (const auto& x : nf.vertex_coords) nf.vertices_ambient.push_back(from_face_coords(f, x));
        out.push_back(std::move(nf));
    }
    std::sort(out.begin(), out.end(),
              [](const NewtonFacet& a, const NewtonFacet& b) { return a.normal < b.normal; });
    return out;
}

} // namespace

RestrictedNewtonData newton_restriction(const ToricFunction& fn, const Cone& c, const Face& f) {
    auto supp = support_in_face(fn, c, f);
    if (supp.empty())
        throw input_error("function '" + fn.name + "': Newton polygon misses face " +
                          face_id_to_string(f.id));
    RestrictedNewtonData data;
    data.face = f.id;
    data.face_dim = f.dim;
    data.facets = compact_facets(c, f, to_face_coords(f, supp));
    return data;
}

LatticePolytope cone_over_facet(const LatticePolytope& facet, const IntMatrix& face_lattice) {
    if (facet.vertices.empty()) throw input_error("cone over an empty facet");
    std::vector<LatticeVector> pts = facet.vertices;
    pts.emplace_back(pts[0].size(), 0);
    LatticePolytope coned = make_lattice_polytope(pts, face_lattice);
    if (coned.affine_dim != facet.affine_dim + 1)
        throw input_error("cone over facet: 0 lies in the affine hull of the facet");
    return coned;
}

SupportingFaceData supporting_face(const ToricFunction& fn, const Cone& c, const Face& f,
                                   const DualVector& u) {
    if (!in_polar(c, f, u))
        throw input_error("functional " + vec_to_string(u) +
                          " is outside the polar cone of face " + face_id_to_string(f.id));
    auto supp = support_in_face(fn, c, f);
    if (supp.empty())
        throw input_error("function '" + fn.name + "': Newton polygon misses face " +
                          face_id_to_string(f.id));
    auto coords = to_face_coords(f, supp);
    Int best = dot(u, coords[0]);
    for (const auto& x : coords) best = std::min(best, dot(u, x));

    SupportingFaceData out;
    out.level = best;
    out.compact = in_polar_interior(c, f, u);
    std::map<LatticeVector, Rat> part;
    std::vector<LatticeVector> min_ambient;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (dot(u, coords[i]) != best) continue;
        out.minimizing_coords.push_back(coords[i]);
        min_ambient.push_back(supp[i]);
        part[supp[i]] = fn.terms.at(supp[i]);
    }
    std::sort(out.minimizing_coords.begin(), out.minimizing_coords.end());
    out.polytope = make_lattice_polytope(min_ambient, f.span_basis);
    out.u_part = ToricFunction{fn.name + "^u", std::move(part), false};
    return out;
}

Int d_min(const ToricFunction& f_k, const Cone& c, const Face& f, const DualVector& u) {
    if (!in_polar_interior(c, f, u))
        throw input_error("functional " + vec_to_string(u) +
                          " is not interior to the polar cone of face " + face_id_to_string(f.id));
    auto supp = support_in_face(f_k, c, f);
    if (supp.empty())
        throw input_error("function '" + f_k.name + "': Newton polygon misses face " +
                          face_id_to_string(f.id));
    auto coords = to_face_coords(f, supp);
    Int best = dot(u, coords[0]);
    for (const auto& x : coords) best = std::min(best, dot(u, x));
    return best;
}

ProductPolygonData product_polygon(const std::vector<ToricFunction>& priors,
                                   const ToricFunction& f_k, const Cone& c, const Face& f) {
    auto supp_k = support_in_face(f_k, c, f);
    if (supp_k.empty())
        throw input_error("function '" + f_k.name + "': Newton polygon misses face " +
                          face_id_to_string(f.id));
    ProductPolygonData data;
    data.face = f.id;
    data.face_dim = f.dim;
    for (int j = 0; j < static_cast<int>(priors.size()); ++j)
        if (meets_face(priors[j], c, f)) data.prior_indices.push_back(j);
    data.m_delta = static_cast<int>(data.prior_indices.size()) + 1;

    // Minkowski sum of the participating support sets, in face coordinates
    auto sum_pts = to_face_coords(f, supp_k);
    for (int j : data.prior_indices) {
        auto pts_j = to_face_coords(f, support_in_face(priors[j], c, f));
        std::vector<std::vector<Int>> sums;
        for (const auto& a : sum_pts)
            for (const auto& b : pts_j) {
                std::vector<Int> s(a.size());
                for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
                sums.push_back(std::move(s));
            }
        sum_pts = convex_hull(sums);
    }

    for (auto& nf : compact_facets(c, f, sum_pts)) {
        ProductFacet pf;
        pf.facet = nf;
        pf.d = d_min(f_k, c, f, nf.normal);
        for (int j : data.prior_indices)
            pf.summands.push_back(supporting_face(priors[j], c, f, nf.normal));
        pf.summands.push_back(supporting_face(f_k, c, f, nf.normal));
        data.facets.push_back(std::move(pf));
    }
    return data;
}

std::vector<HullFacet> newton_polyhedron_facets(const ToricFunction& fn, const Cone& c) {
    std::vector<std::vector<Int>> supp;
    for (const auto& [exp, coeff] : fn.terms) supp.push_back(exp);
    return polyhedron_facets(supp, c.gens_m, c.rank);
}

bool in_newton_polyhedron(const std::vector<HullFacet>& facets, const LatticeVector& v) {
    return satisfies_facets(facets, v);
}

std::vector<LatticeVector> essential_support(const ToricFunction& fn, const Cone& c) {
    auto facets = newton_polyhedron_facets(fn, c);
    std::vector<LatticeVector> out;
    for (const auto& [exp, coeff] : fn.terms) {
        std::vector<std::vector<Int>> active;
        for (const auto& hf : facets)
            if (dot(hf.normal, exp) == hf.offset) active.push_back(hf.normal);
        if (!active.empty() && rank_of_rows(active, c.rank) == c.rank) out.push_back(exp);
    }
    return out;
}

} // namespace toric

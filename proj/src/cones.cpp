#include "toric/cones.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace toric {

namespace {

// Rays of the simplicial cone {u : <u, v_i> >= 0} for linearly
// independent v_1..v_d: the columns of V^{-1}, cleared of denominators.
std::vector<std::vector<Int>> simplicial_dual_rays(const std::vector<std::vector<Int>>& vs,
                                                   int rank) {
    IntMatrix v = IntMatrix::from_rows(vs, rank);
    std::vector<std::vector<Int>> rays;
    for (int j = 0; j < rank; ++j) {
        // solve V r = e_j over Q, clear denominators
        std::vector<Int> e(rank, 0);
        e[j] = 1;
        auto x = solve_in_row_span(v.transposed(), e);
        if (!x) throw input_error("internal: singular simplicial system");
        Int lcm_den = 1;
        for (const Rat& q : *x) lcm_den = lcm(lcm_den, denominator(q));
        std::vector<Int> r(rank);
        for (int i = 0; i < rank; ++i)
            r[i] = numerator((*x)[i]) * (lcm_den / denominator((*x)[i]));
        rays.push_back(primitive_vector(r));
    }
    return rays;
}

} // namespace

std::vector<std::vector<Int>> dual_extreme_rays(const std::vector<std::vector<Int>>& generators,
                                                int rank) {
    for (const auto& g : generators)
        if (static_cast<int>(g.size()) != rank)
            throw input_error("cone generator of wrong rank");
    // greedy selection of an independent starting subset, in input order
    std::vector<int> start;
    std::vector<std::vector<Int>> picked;
    for (int i = 0; i < static_cast<int>(generators.size()); ++i) {
        if (static_cast<int>(start.size()) == rank) break;
        picked.push_back(generators[i]);
        if (rank_of_rows(picked, rank) == static_cast<int>(picked.size()))
            start.push_back(i);
        else
            picked.pop_back();
    }
    if (static_cast<int>(start.size()) != rank)
        throw input_error("cone generators do not span the ambient space");

    std::vector<std::vector<Int>> rays = simplicial_dual_rays(picked, rank);
    std::vector<bool> processed(generators.size(), false);
    for (int i : start) processed[i] = true;

    // active-constraint sets over processed generators, one per ray
    auto active_set = [&](const std::vector<Int>& r) {
        std::set<int> z;
        for (int i = 0; i < static_cast<int>(generators.size()); ++i)
            if (processed[i] && dot(generators[i], r) == 0) z.insert(i);
        return z;
    };
    std::vector<std::set<int>> active;
    for (const auto& r : rays) active.push_back(active_set(r));

    for (int i = 0; i < static_cast<int>(generators.size()); ++i) {
        if (processed[i]) continue;
        const auto& g = generators[i];
        std::vector<Int> value(rays.size());
        bool any_negative = false;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            value[k] = dot(g, rays[k]);
            if (value[k] < 0) any_negative = true;
        }
        processed[i] = true;
        if (!any_negative) {
            for (std::size_t k = 0; k < rays.size(); ++k)
                if (value[k] == 0) active[k].insert(i);
            continue;
        }
        std::vector<std::vector<Int>> next;
        std::vector<std::set<int>> next_active;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            if (value[k] < 0) continue;
            next.push_back(rays[k]);
            auto z = active[k];
            if (value[k] == 0) z.insert(i);
            next_active.push_back(std::move(z));
        }
        // adjacent (positive, negative) pairs produce the cut rays
        for (std::size_t p = 0; p < rays.size(); ++p) {
            if (value[p] <= 0) continue;
            for (std::size_t q = 0; q < rays.size(); ++q) {
                if (value[q] >= 0) continue;
                std::set<int> common;
                std::set_intersection(active[p].begin(), active[p].end(),
                                      active[q].begin(), active[q].end(),
                                      std::inserter(common, common.begin()));
                bool adjacent = true;
                for (std::size_t s = 0; s < rays.size(); ++s) {
                    if (s == p || s == q) continue;
                    if (std::includes(active[s].begin(), active[s].end(),
                                      common.begin(), common.end())) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent) continue;
                std::vector<Int> r(rank);
                for (int t = 0; t < rank; ++t)
                    r[t] = value[p] * rays[q][t] - value[q] * rays[p][t];
                r = primitive_vector(r);
                next.push_back(r);
                next_active.push_back(active_set(r));
            }
        }
        rays = std::move(next);
        active = std::move(next_active);
    }

    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    return rays;
}

namespace {

Cone cone_from_both(const std::vector<std::vector<Int>>& primary, int rank, bool primary_is_m) {
    if (rank < 1) throw input_error("lattice rank must be at least 1");
    if (primary.empty()) throw input_error("cone needs at least one generator");
    for (const auto& g : primary) {
        if (static_cast<int>(g.size()) != rank) throw input_error("cone generator of wrong rank");
        if (is_zero(g)) throw input_error("zero vector among cone generators");
    }
    if (rank_of_rows(primary, rank) != rank)
        throw input_error(primary_is_m ? "dual cone generators do not span M"
                                       : "cone generators do not span N");
    auto other = dual_extreme_rays(primary, rank);
    if (rank_of_rows(other, rank) != rank)
        throw input_error("cone contains a line");
    auto canonical = dual_extreme_rays(other, rank);

    // keep the extreme rays in the order the caller listed them, so face
    // ids stay aligned with the input; every extreme ray is parallel to
    // some input generator
    std::vector<std::vector<Int>> ordered;
    for (const auto& g : primary) {
        auto p = primitive_vector(g);
        if (std::find(canonical.begin(), canonical.end(), p) == canonical.end()) continue;
        if (std::find(ordered.begin(), ordered.end(), p) == ordered.end()) ordered.push_back(p);
    }
    if (ordered.size() != canonical.size())
        throw input_error("internal: extreme ray not among the input generators");
    canonical = std::move(ordered);

    Cone c;
    c.rank = rank;
    if (primary_is_m) {
        c.gens_m = canonical;
        c.gens_n = other;
    } else {
        c.gens_n = canonical;
        c.gens_m = other;
    }
    return c;
}

} // namespace

Cone cone_from_dual_generators(const std::vector<LatticeVector>& gens_in_m, int rank) {
    return cone_from_both(gens_in_m, rank, true);
}

Cone cone_from_generators(const std::vector<DualVector>& gens_in_n, int rank) {
    return cone_from_both(gens_in_n, rank, false);
}

std::string face_id_to_string(const FaceId& id) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < id.size(); ++i) {
        if (i) os << ",";
        os << id[i];
    }
    os << "}";
    return os.str();
}

FaceId face_id_from_string(const std::string& s) {
    std::string t = s;
    if (t.size() >= 2 && t.front() == '{' && t.back() == '}') t = t.substr(1, t.size() - 2);
    FaceId id;
    std::istringstream is(t);
    std::string part;
    while (std::getline(is, part, ',')) {
        if (part.empty()) continue;
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(part, &pos);
        } catch (const std::exception&) {
            throw input_error("malformed face id '" + s + "'");
        }
        if (pos != part.size() || v < 0) throw input_error("malformed face id '" + s + "'");
        id.push_back(v);
    }
    std::sort(id.begin(), id.end());
    if (std::adjacent_find(id.begin(), id.end()) != id.end())
        throw input_error("face id '" + s + "' repeats a generator index");
    return id;
}

std::vector<Face> enumerate_faces(const Cone& c) {
    int ng = static_cast<int>(c.gens_m.size());
    // generator index set of each facet of sigma-check
    std::vector<std::set<int>> facet_sets;
    for (const auto& n : c.gens_n) {
        std::set<int> s;
        for (int i = 0; i < ng; ++i)
            if (dot(n, c.gens_m[i]) == 0) s.insert(i);
        facet_sets.push_back(std::move(s));
    }
    std::set<int> full;
    for (int i = 0; i < ng; ++i) full.insert(i);

    std::set<std::set<int>> seen{full};
    std::vector<std::set<int>> queue{full};
    while (!queue.empty()) {
        std::set<int> s = queue.back();
        queue.pop_back();
        for (const auto& fs : facet_sets) {
            std::set<int> t;
            std::set_intersection(s.begin(), s.end(), fs.begin(), fs.end(),
                                  std::inserter(t, t.begin()));
            if (seen.insert(t).second) queue.push_back(t);
        }
    }

    std::vector<Face> faces;
    for (const auto& s : seen) {
        Face f;
        f.id.assign(s.begin(), s.end());
        std::vector<LatticeVector> gens;
        for (int i : f.id) gens.push_back(c.gens_m[i]);
        f.span_basis = sublattice_basis(gens, c.rank);
        f.dim = f.span_basis.rows;
        for (int j = 0; j < static_cast<int>(facet_sets.size()); ++j)
            if (std::includes(facet_sets[j].begin(), facet_sets[j].end(), s.begin(), s.end()))
                f.normals.push_back(j);
        faces.push_back(std::move(f));
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.id < b.id;
    });
    return faces;
}

const Face& find_face(const std::vector<Face>& faces, const FaceId& id) {
    for (const Face& f : faces)
        if (f.id == id) return f;
    throw input_error("unknown face " + face_id_to_string(id));
}

bool face_contains(const Cone& c, const Face& f, const LatticeVector& v) {
    for (int j : f.normals)
        if (dot(c.gens_n[j], v) != 0) return false;
    return true;
}

bool in_dual_cone(const Cone& c, const LatticeVector& v) {
    for (const auto& n : c.gens_n)
        if (dot(n, v) < 0) return false;
    return true;
}

std::vector<std::vector<Int>> face_generator_coords(const Cone& c, const Face& f) {
    std::vector<std::vector<Int>> coords;
    for (int i : f.id) coords.push_back(integral_coordinates(f.span_basis, c.gens_m[i]));
    return coords;
}

FacePolar polar_of_face(const Cone& c, const Face& f) {
    FacePolar p;
    if (f.dim == 0) {
        p.trivial = true;
        return p;
    }
    p.generators = dual_extreme_rays(face_generator_coords(c, f), f.dim);
    return p;
}

bool in_polar_interior(const Cone& c, const Face& f, const DualVector& u) {
    if (static_cast<int>(u.size()) != f.dim)
        throw input_error("functional of wrong rank for this face");
    if (f.dim == 0) return true;
    for (const auto& g : face_generator_coords(c, f))
        if (dot(u, g) <= 0) return false;
    return true;
}

bool in_polar(const Cone& c, const Face& f, const DualVector& u) {
    if (static_cast<int>(u.size()) != f.dim)
        throw input_error("functional of wrong rank for this face");
    for (const auto& g : face_generator_coords(c, f))
        if (dot(u, g) < 0) return false;
    return true;
}

bool is_standard_octant(const Cone& c) {
    if (static_cast<int>(c.gens_m.size()) != c.rank) return false;
    std::vector<LatticeVector> basis;
    for (int i = 0; i < c.rank; ++i) {
        LatticeVector e(c.rank, 0);
        e[i] = 1;
        basis.push_back(std::move(e));
    }
    auto gens = c.gens_m;
    std::sort(gens.begin(), gens.end());
    std::sort(basis.begin(), basis.end());
    return gens == basis;
}

bool smooth_along_orbit(const Cone& c, const Face& f) {
    if (f.normals.empty()) return true; // dense orbit
    std::vector<std::vector<Int>> rows;
    for (int j : f.normals) rows.push_back(c.gens_n[j]);
    IntMatrix b = IntMatrix::from_rows(rows, c.rank);
    if (rank_of(b) != b.rows) return false; // dual face not simplicial
    SmithResult s = smith_normal_form(b);
    for (int i = 0; i < b.rows; ++i)
        if (s.d.at(i, i) != 1) return false;
    return true;
}

} // namespace toric

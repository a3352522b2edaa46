#include "toric/invariants.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace toric {

std::string EuSymbol::to_string() const {
    if (!stratum_label.empty()) return "Eu_" + variety + "(" + stratum_label + ")";
    return "Eu_" + variety + "(" + face_id_to_string(face) + ")";
}

AffineExpr AffineExpr::value(Int v) {
    AffineExpr e;
    e.constant = std::move(v);
    return e;
}

AffineExpr AffineExpr::symbol(const EuSymbol& s) {
    AffineExpr e;
    e.coeffs[s] = 1;
    return e;
}

AffineExpr& AffineExpr::operator+=(const AffineExpr& o) {
    constant += o.constant;
    for (const auto& [s, k] : o.coeffs) {
        Int& c = coeffs[s];
        c += k;
        if (c == 0) coeffs.erase(s);
    }
    return *this;
}

AffineExpr& AffineExpr::operator-=(const AffineExpr& o) { return *this += o.scaled(-1); }

AffineExpr AffineExpr::operator+(const AffineExpr& o) const {
    AffineExpr e = *this;
    e += o;
    return e;
}

AffineExpr AffineExpr::operator-(const AffineExpr& o) const {
    AffineExpr e = *this;
    e -= o;
    return e;
}

AffineExpr AffineExpr::scaled(const Int& k) const {
    AffineExpr e;
    if (k == 0) return e;
    e.constant = constant * k;
    for (const auto& [s, c] : coeffs) e.coeffs[s] = c * k;
    return e;
}

bool AffineExpr::operator==(const AffineExpr& o) const {
    return constant == o.constant && coeffs == o.coeffs;
}

std::string AffineExpr::to_string() const {
    if (coeffs.empty()) {
        std::ostringstream os;
        os << constant;
        return os.str();
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, c] : coeffs) {
        Int a = c < 0 ? Int(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (a != 1) os << a << "*";
        os << s.to_string();
    }
    if (constant != 0) {
        Int a = constant < 0 ? Int(-constant) : constant;
        os << (constant < 0 ? " - " : " + ") << a;
    }
    return os.str();
}

AffineExpr EuTable::get(const FaceId& id) const {
    auto it = entries.find(id);
    if (it != entries.end()) return AffineExpr::value(it->second.value);
    return AffineExpr::symbol(EuSymbol{variety, id, {}});
}

namespace {

std::string missing_entries_message(const std::string& variety, const std::vector<FaceId>& ids) {
    std::ostringstream os;
    os << "missing Euler obstruction entries (" << variety << ") for faces: ";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) os << ", ";
        os << face_id_to_string(ids[i]);
    }
    return os.str();
}

// sum of Vol_Z over the cones Gamma_i on one face
Int face_volume_sum(const ToricFunction& f, const Cone& c, const Face& face) {
    auto data = newton_restriction(f, c, face);
    Int sum = 0;
    for (const auto& facet : data.facets) {
        if (facet.level <= 0)
            throw input_error("internal: compact facet at non-positive level");
        auto pts = facet.vertex_coords;
        pts.emplace_back(face.dim, 0);
        sum += volume_times_factorial(pts, face.dim);
    }
    return sum;
}

std::string render_m_relation(const AffineExpr& m_expr) {
    AffineExpr lhs = m_expr;
    bool negate = !lhs.coeffs.empty() && lhs.coeffs.begin()->second < 0;
    if (negate) lhs = lhs.scaled(-1);
    return lhs.to_string() + " = " + (negate ? "-m" : "m");
}

std::vector<FaceId> symbol_faces(const AffineExpr& e) {
    std::vector<FaceId> ids;
    for (const auto& [s, c] : e.coeffs) ids.push_back(s.face);
    return ids;
}

} // namespace

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    int count = static_cast<int>(std::min<std::size_t>(workers, n));
    pool.reserve(count);
    for (int t = 0; t < count; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    for (std::size_t i = 0; i < n; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
}

EuTable resolve_eu_table(const Cone& c, const std::vector<Face>& faces,
                         const std::map<FaceId, Int>& user_entries, const std::string& variety,
                         const ToricFunction* g) {
    if (variety != "X" && variety != "Xg")
        throw input_error("Euler obstruction table label must be X or Xg");
    EuTable t;
    t.variety = variety;

    bool smooth_hypersurface_germ = false;
    if (variety == "Xg" && g && is_standard_octant(c)) {
        for (int i = 0; i < c.rank; ++i) {
            LatticeVector e(c.rank, 0);
            e[i] = 1;
            if (g->terms.count(e)) { smooth_hypersurface_germ = true; break; }
        }
    }

    for (const Face& f : faces) {
        bool provable;
        if (variety == "X")
            provable = smooth_along_orbit(c, f);
        else if (smooth_hypersurface_germ)
            provable = true;
        else
            provable = g && smooth_along_orbit(c, f) && meets_face(*g, c, f);
        if (provable) t.entries[f.id] = EuTable::Entry{1, "default-smooth"};
    }

    for (const auto& [id, value] : user_entries) {
        find_face(faces, id); // validates the id
        auto it = t.entries.find(id);
        if (it != t.entries.end() && it->second.value != value)
            throw input_error("Euler obstruction " + value.str() + " on face " +
                              face_id_to_string(id) + " contradicts the provable value " +
                              it->second.value.str() + " (" + variety + ")");
        t.entries[id] = EuTable::Entry{value, "user"};
    }
    return t;
}

std::vector<FaceId> critical_orbits(const ToricFunction& g, const Cone& c,
                                    const std::vector<Face>& faces) {
    std::vector<FaceId> out;
    for (const Face& f : faces) {
        if (f.dim == 0) continue;
        if (!meets_face(g, c, f)) out.push_back(f.id);
    }
    return out;
}

Int chi_orbit(const ToricFunction& f, const Cone& c, const Face& face) {
    if (face.dim < 1)
        throw input_error("chi is defined on positive-dimensional faces only");
    if (!meets_face(f, c, face))
        throw input_error("function '" + f.name + "' misses face " + face_id_to_string(face.id) +
                          "; this is a critical orbit of the function");
    Int sum = face_volume_sum(f, c, face);
    return face.dim % 2 == 1 ? sum : -sum;
}

InvariantReport brasselet_hypersurface(const ToricFunction& f, const Cone& c,
                                       const std::vector<Face>& faces, const EuTable& eu,
                                       bool allow_symbolic, int workers) {
    std::vector<const Face*> active;
    for (const Face& face : faces)
        if (face.dim >= 1 && meets_face(f, c, face)) active.push_back(&face);

    std::vector<Int> vols(active.size());
    parallel_for(active.size(), workers,
                 [&](std::size_t i) { vols[i] = face_volume_sum(f, c, *active[i]); });

    InvariantReport rep;
    rep.kind = "brasselet";
    rep.hypotheses.push_back("function '" + f.name + "' is non-degenerate (asserted)");
    std::vector<FaceId> missing;
    for (std::size_t i = 0; i < active.size(); ++i) {
        const Face& face = *active[i];
        TermRow row;
        row.face = face.id;
        row.dim = face.dim;
        row.sign = face.dim % 2 == 1 ? 1 : -1;
        row.magnitude = vols[i];
        if (!eu.known(face.id)) missing.push_back(face.id);
        row.eu = eu.get(face.id);
        row.contribution = row.eu.scaled(Int(row.sign) * row.magnitude);
        rep.total += row.contribution;
        rep.rows.push_back(std::move(row));
    }
    if (!allow_symbolic && !missing.empty())
        throw input_error(missing_entries_message(eu.variety, missing));
    return rep;
}

Int k_coefficient(const ProductFacet& pf, int face_dim, int m_delta) {
    if (face_dim < m_delta)
        throw input_error("K coefficient undefined: face dimension below m(Delta)");
    int vol_dim = face_dim - 1;
    if (vol_dim == 0) return 1; // point facet convention

    // direction lattice of the facet inside the face lattice
    std::vector<std::vector<Int>> diffs;
    const auto& verts = pf.facet.vertex_coords;
    for (std::size_t i = 1; i < verts.size(); ++i) {
        std::vector<Int> d(verts[i].size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = verts[i][j] - verts[0][j];
        diffs.push_back(std::move(d));
    }
    IntMatrix dir = sublattice_basis(diffs, face_dim);
    if (dir.rows != vol_dim)
        throw input_error("internal: product facet of unexpected dimension");

    std::vector<LatticePolytope> summand_polys;
    for (const auto& s : pf.summands)
        summand_polys.push_back(make_lattice_polytope(s.minimizing_coords, dir));

    // compositions a_1..a_m of vol_dim with a_q >= 1 for q < m, a_m >= 0
    Int total = 0;
    std::vector<int> alpha(m_delta, 0);
    std::function<void(int, int)> rec = [&](int slot, int remaining) {
        if (slot == m_delta - 1) {
            alpha[slot] = remaining;
            std::vector<std::pair<LatticePolytope, int>> slots;
            for (int j = 0; j < m_delta; ++j)
                if (alpha[j] > 0) slots.emplace_back(summand_polys[j], alpha[j]);
            total += mixed_volume(slots, dir);
            return;
        }
        int mandatory = m_delta - 1 - (slot + 1); // later slots still needing >= 1
        for (int a = 1; a + mandatory <= remaining; ++a) {
            alpha[slot] = a;
            rec(slot + 1, remaining - a);
        }
    };
    rec(0, vol_dim);
    return total;
}

InvariantReport brasselet_complete_intersection(const std::vector<ToricFunction>& priors,
                                                const ToricFunction& f_k, const Cone& c,
                                                const std::vector<Face>& faces, const EuTable& eu,
                                                bool allow_symbolic, int workers) {
    std::vector<const Face*> active;
    for (const Face& face : faces) {
        if (face.dim < 1 || !meets_face(f_k, c, face)) continue;
        int m_delta = 1;
        for (const auto& p : priors)
            if (meets_face(p, c, face)) ++m_delta;
        if (face.dim < m_delta) continue; // excluded by the formula's range
        active.push_back(&face);
    }

    struct FaceTerm {
        int m_delta;
        Int dk_sum;
        std::vector<std::pair<Int, Int>> dk;
    };
    std::vector<FaceTerm> terms(active.size());
    parallel_for(active.size(), workers, [&](std::size_t i) {
        const Face& face = *active[i];
        ProductPolygonData data = product_polygon(priors, f_k, c, face);
        FaceTerm t;
        t.m_delta = data.m_delta;
        t.dk_sum = 0;
        for (const auto& pf : data.facets) {
            Int k = k_coefficient(pf, face.dim, data.m_delta);
            t.dk.emplace_back(pf.d, k);
            t.dk_sum += pf.d * k;
        }
        terms[i] = std::move(t);
    });

    InvariantReport rep;
    rep.kind = "brasselet-ci";
    {
        std::ostringstream os;
        os << "(";
        for (const auto& p : priors) os << "'" << p.name << "',";
        os << "'" << f_k.name << "') is non-degenerate as a tuple (asserted)";
        rep.hypotheses.push_back(os.str());
    }
    std::vector<FaceId> missing;
    for (std::size_t i = 0; i < active.size(); ++i) {
        const Face& face = *active[i];
        TermRow row;
        row.face = face.id;
        row.dim = face.dim;
        row.m_delta = terms[i].m_delta;
        row.sign = (face.dim - terms[i].m_delta) % 2 == 0 ? 1 : -1;
        row.magnitude = terms[i].dk_sum;
        row.dk = terms[i].dk;
        if (!eu.known(face.id)) missing.push_back(face.id);
        row.eu = eu.get(face.id);
        row.contribution = row.eu.scaled(Int(row.sign) * row.magnitude);
        rep.total += row.contribution;
        rep.rows.push_back(std::move(row));
    }
    if (!allow_symbolic && !missing.empty())
        throw input_error(missing_entries_message(eu.variety, missing));
    return rep;
}

InvariantReport morse_count(const ToricFunction& f, const ToricFunction& g, const Cone& c,
                            const std::vector<Face>& faces, const EuTable& eu_x,
                            const EuTable& eu_xg, int workers,
                            const std::vector<RefinedStratum>* refined) {
    for (const Face& face : faces) {
        if (face.dim < 1) continue;
        if (!meets_face(f, c, face) && !meets_face(g, c, face))
            throw input_error("hypothesis violation: '" + f.name + "' and '" + g.name +
                              "' are both critical along the orbit of face " +
                              face_id_to_string(face.id));
    }

    InvariantReport rep;
    rep.kind = "morse";
    rep.hypotheses.push_back("function '" + f.name + "' is non-degenerate (asserted)");
    rep.hypotheses.push_back("function '" + g.name + "' is non-degenerate (asserted)");
    rep.hypotheses.push_back("'" + g.name + "' is tractable at the origin with respect to the " +
                             "good stratification induced by '" + f.name + "' (asserted)");
    rep.hypotheses.push_back("the orbit decomposition of the hypersurface is a Whitney "
                             "stratification (asserted)");

    InvariantReport bx = brasselet_hypersurface(f, c, faces, eu_x, false, workers);
    rep.b_x = bx.total;

    AffineExpr b_xg;
    if (f.generic_linear) {
        rep.hypotheses.push_back("'" + f.name + "' is a generic linear form: B_{f,Xg}(0) is "
                                 "identified with Eu_Xg at the origin orbit");
        b_xg = eu_xg.get(FaceId{});
    } else {
        rep.hypotheses.push_back("('" + g.name + "','" + f.name + "') is non-degenerate as a "
                                 "pair (asserted)");
        InvariantReport ci =
            brasselet_complete_intersection({g}, f, c, faces, eu_xg, true, workers);
        b_xg = ci.total;
        rep.rows = std::move(ci.rows);
    }
    rep.b_xg = b_xg;

    AffineExpr correction_sum;
    if (refined && !refined->empty()) {
        // the caller took responsibility for refining the critical locus;
        // each stratum enters with its supplied chi and Eu values
        rep.hypotheses.push_back("correction strata supplied by the caller (Whitney refinement "
                                 "of the critical locus asserted)");
        for (const RefinedStratum& w : *refined) {
            if (w.label.empty()) throw input_error("refined stratum without a label");
            CorrectionRow row;
            row.label = w.label;
            row.chi = w.chi;
            row.eu_x = w.eu_x ? AffineExpr::value(*w.eu_x)
                              : AffineExpr::symbol(EuSymbol{"X", {}, w.label});
            row.eu_xg = w.eu_xg ? AffineExpr::value(*w.eu_xg)
                                : AffineExpr::symbol(EuSymbol{"Xg", {}, w.label});
            row.contribution = (row.eu_x - row.eu_xg).scaled(row.chi);
            correction_sum += row.contribution;
            rep.corrections.push_back(std::move(row));
        }
    } else {
        std::vector<FaceId> missing_x;
        for (const FaceId& id : critical_orbits(g, c, faces)) {
            const Face& face = find_face(faces, id);
            CorrectionRow row;
            row.face = id;
            row.dim = face.dim;
            row.chi = chi_orbit(f, c, face);
            if (!eu_x.known(id)) missing_x.push_back(id);
            row.eu_x = eu_x.get(id);
            row.eu_xg = eu_xg.get(id);
            row.contribution = (row.eu_x - row.eu_xg).scaled(row.chi);
            correction_sum += row.contribution;
            rep.corrections.push_back(std::move(row));
        }
        if (!missing_x.empty()) throw input_error(missing_entries_message("X", missing_x));
    }

    Int sign_d = c.rank % 2 == 1 ? 1 : -1;
    rep.total = (bx.total - b_xg - correction_sum).scaled(sign_d);
    if (rep.total.is_constant())
        rep.m_value = rep.total.constant;
    else
        rep.relation = render_m_relation(rep.total);
    return rep;
}

InvariantReport milnor_cn_relation(const ToricFunction& g, const Cone& c,
                                   const std::vector<Face>& faces, const EuTable& eu_xg,
                                   MilnorMode mode) {
    if (!is_standard_octant(c))
        throw input_error("the corollary relation requires the standard octant cone");

    InvariantReport rep;
    rep.kind = "milnor-cn";
    rep.hypotheses.push_back("function '" + g.name + "' is non-degenerate (asserted)");
    rep.hypotheses.push_back("'" + g.name + "' is tractable at the origin with respect to the "
                             "good stratification induced by a generic linear form (asserted)");
    rep.hypotheses.push_back("the orbit decomposition of the hypersurface is a Whitney "
                             "stratification (asserted)");

    AffineExpr lhs = eu_xg.get(FaceId{});
    Int rhs_const = 1;
    for (const FaceId& id : critical_orbits(g, c, faces)) {
        const Face& face = find_face(faces, id);
        Int s = face.dim % 2 == 0 ? 1 : -1;
        TermRow row;
        row.face = id;
        row.dim = face.dim;
        row.sign = static_cast<int>(s);
        row.magnitude = 1;
        row.eu = eu_xg.get(id);
        row.contribution = row.eu.scaled(s);
        lhs += row.contribution;
        rhs_const += s;
        rep.rows.push_back(std::move(row));
    }

    Int sign_n = c.rank % 2 == 0 ? 1 : -1;
    rep.total = (lhs - AffineExpr::value(rhs_const)).scaled(sign_n);
    if (rep.total.is_constant()) {
        rep.m_value = rep.total.constant;
        rep.relation = "m = " + rep.total.constant.str();
    } else {
        if (mode == MilnorMode::SolveForM)
            throw input_error(missing_entries_message("Xg", symbol_faces(rep.total)));
        rep.relation = render_m_relation(rep.total);
    }
    return rep;
}

ToricFunction generic_linear_form(const Cone& c,
                                  const std::vector<LatticeVector>* semigroup_gens) {
    const std::vector<LatticeVector>& supp = semigroup_gens ? *semigroup_gens : c.gens_m;
    if (supp.empty()) throw input_error("generic linear form needs a nonempty support");
    std::map<LatticeVector, Rat> terms;
    for (const auto& v : supp) terms[v] = 1;
    ToricFunction l = make_toric_function("l", terms);
    check_support_in_cone(l, c);
    l.generic_linear = true;
    return l;
}

} // namespace toric

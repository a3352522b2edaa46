#pragma once

#include "toric/newton.hpp"

#include <functional>
#include <optional>

namespace toric {

// Unknown Euler obstruction entry, e.g. Eu_Xg({2}); caller-labelled
// refinement strata use the label instead of a face id.
struct EuSymbol {
    std::string variety; // "X" or "Xg"
    FaceId face;
    std::string stratum_label;

    bool operator<(const EuSymbol& o) const {
        if (variety != o.variety) return variety < o.variety;
        if (face.size() != o.face.size()) return face.size() < o.face.size();
        if (face != o.face) return face < o.face;
        return stratum_label < o.stratum_label;
    }
    bool operator==(const EuSymbol& o) const {
        return variety == o.variety && face == o.face && stratum_label == o.stratum_label;
    }
    std::string to_string() const;
};

// Integer-affine expression over Eu symbols; the value type of every
// report entry, so unknown table entries flow through the formulas and
// come out as linear relations.
struct AffineExpr {
    Int constant = 0;
    std::map<EuSymbol, Int> coeffs;

    static AffineExpr value(Int v);
    static AffineExpr symbol(const EuSymbol& s);

    bool is_constant() const { return coeffs.empty(); }
    AffineExpr& operator+=(const AffineExpr& o);
    AffineExpr& operator-=(const AffineExpr& o);
    AffineExpr operator+(const AffineExpr& o) const;
    AffineExpr operator-(const AffineExpr& o) const;
    AffineExpr scaled(const Int& k) const;
    bool operator==(const AffineExpr& o) const;
    std::string to_string() const;
};

// Face-indexed Euler obstruction assignments for one variety; faces
// without an entry are unknown and surface as symbols.
struct EuTable {
    std::string variety; // "X" or "Xg"
    struct Entry {
        Int value;
        std::string provenance; // "default-smooth" or "user"
    };
    std::map<FaceId, Entry> entries;

    bool known(const FaceId& id) const { return entries.count(id) != 0; }
    AffineExpr get(const FaceId& id) const;
};

// Fill smooth-locus defaults (Eu = 1) and merge user entries. A user
// value contradicting a provable default is an error. For the
// hypersurface table the defaults additionally require the orbit to
// meet the Newton polygon of g (orbits inside {g = 0} stay unknown);
// when the germ of the hypersurface is provably smooth (smooth ambient
// octant and a linear term in g) every face defaults to 1.
EuTable resolve_eu_table(const Cone& c, const std::vector<Face>& faces,
                         const std::map<FaceId, Int>& user_entries, const std::string& variety,
                         const ToricFunction* g);

// Faces (never the zero face) whose orbit misses the Newton polygon of
// g; the orbits along which a non-degenerate g is everywhere critical.
std::vector<FaceId> critical_orbits(const ToricFunction& g, const Cone& c,
                                    const std::vector<Face>& faces);

// Euler characteristic of the orbit slice of the Milnor fiber:
// (-1)^(dim-1) * sum of the normalized volumes of the cones over the
// compact facets of the restricted Newton polygon.
Int chi_orbit(const ToricFunction& f, const Cone& c, const Face& face);

struct TermRow {
    FaceId face;
    int dim = 0;
    int m_delta = 1; // complete-intersection rows only
    int sign = 1;
    Int magnitude;                         // sum of volumes, or sum of d*K
    std::vector<std::pair<Int, Int>> dk;   // per-facet (d_i, K_i), CI rows only
    AffineExpr eu;
    AffineExpr contribution;
};

struct CorrectionRow {
    FaceId face;
    std::string label; // set instead of the face for refined strata
    int dim = 0;
    Int chi;
    AffineExpr eu_x;
    AffineExpr eu_xg;
    AffineExpr contribution; // chi * (eu_x - eu_xg)
};

struct InvariantReport {
    std::string kind;
    std::vector<std::string> hypotheses;
    std::vector<TermRow> rows;
    std::vector<CorrectionRow> corrections; // morse only
    AffineExpr total;                       // B value, or the m expression
    std::optional<AffineExpr> b_x, b_xg;    // morse only
    std::optional<Int> m_value;             // morse / milnor-cn, when determined
    std::optional<std::string> relation;    // rendered when symbolic
};

// Hypersurface Brasselet number: per-face (-1)^(dim-1) * sum Vol * Eu.
InvariantReport brasselet_hypersurface(const ToricFunction& f, const Cone& c,
                                       const std::vector<Face>& faces, const EuTable& eu,
                                       bool allow_symbolic = false, int workers = 1);

// The composition-sum coefficient K_i of one product-polygon facet:
// mixed volumes of the summand supporting faces over the compositions
// (a_1..a_m), a_q >= 1 below the last slot, summing to dim-1.
Int k_coefficient(const ProductFacet& pf, int face_dim, int m_delta);

// Complete-intersection Brasselet number via the product polygon:
// per-face (-1)^(dim - m) * sum_i d_i K_i * Eu over faces with
// dim >= m(Delta) meeting the polygon of f_k.
InvariantReport brasselet_complete_intersection(const std::vector<ToricFunction>& priors,
                                                const ToricFunction& f_k, const Cone& c,
                                                const std::vector<Face>& faces, const EuTable& eu,
                                                bool allow_symbolic = false, int workers = 1);

// One caller-supplied stratum of a refined critical-locus
// stratification: its fiber Euler characteristic and the two Euler
// obstructions, either of which may be left unknown.
struct RefinedStratum {
    std::string label;
    Int chi;
    std::optional<Int> eu_x;
    std::optional<Int> eu_xg;
};

// Stratified Morse point count of a partial morsefication of g on the
// Milnor fiber of f: m = (-1)^(d-1) [B_{f,X} - B_{f,Xg} - corrections].
// B_{f,Xg} is taken as Eu_Xg(origin) when f is a generic linear form,
// and expanded through the complete-intersection formula otherwise.
// The corrections run over the critical orbits, or over the supplied
// refined strata when the orbit decomposition needed a refinement.
// Unknown hypersurface Eu entries produce a linear relation in place of
// a number.
InvariantReport morse_count(const ToricFunction& f, const ToricFunction& g, const Cone& c,
                            const std::vector<Face>& faces, const EuTable& eu_x,
                            const EuTable& eu_xg, int workers = 1,
                            const std::vector<RefinedStratum>* refined = nullptr);

enum class MilnorMode { SolveForM, EmitRelation };

// Octant-only corollary relation between the hypersurface Euler
// obstructions along critical orbits and the Morse count.
InvariantReport milnor_cn_relation(const ToricFunction& g, const Cone& c,
                                   const std::vector<Face>& faces, const EuTable& eu_xg,
                                   MilnorMode mode);

// Linear form supported on the given semigroup generators (or the dual
// cone rays when none are given), with placeholder coefficients.
ToricFunction generic_linear_form(const Cone& c,
                                  const std::vector<LatticeVector>* semigroup_gens);

// Deterministic fan-out helper: runs body(0..n-1) on up to `workers`
// threads; the lowest-index exception wins.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

} // namespace toric

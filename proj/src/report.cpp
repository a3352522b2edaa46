#include "toric/report.hpp"

#include <sstream>

namespace toric {

std::string int_str(const Int& v) { return v.str(); }

std::string format_table(const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return "";
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
    }
    std::ostringstream os;
    for (const auto& row : rows) {
        os << "  ";
        for (std::size_t j = 0; j < row.size(); ++j) {
            os << row[j];
            if (j + 1 < row.size())
                os << std::string(width[j] - row[j].size() + 2, ' ');
        }
        os << "\n";
    }
    return os.str();
}

std::string function_to_string(const ToricFunction& fn) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [exp, coeff] : fn.terms) {
        if (first) {
            if (coeff < 0) os << "-";
            first = false;
        } else {
            os << (coeff < 0 ? " - " : " + ");
        }
        Rat a = coeff < 0 ? Rat(-coeff) : coeff;
        if (a != 1) os << a << "*";
        os << "x^" << vec_to_string(exp);
    }
    return os.str();
}

ojson expr_json(const AffineExpr& e) {
    if (e.is_constant()) return ojson{{"value", int_str(e.constant)}};
    ojson terms = ojson::object();
    for (const auto& [s, c] : e.coeffs) terms[s.to_string()] = int_str(c);
    return ojson{{"expression", e.to_string()}, {"constant", int_str(e.constant)}, {"terms", terms}};
}

std::string expr_str(const AffineExpr& e) { return e.to_string(); }

ojson faces_json(const Cone& c, const std::vector<Face>& faces) {
    ojson arr = ojson::array();
    for (const Face& f : faces) {
        ojson g = ojson::array();
        for (int i : f.id) g.push_back(i);
        ojson gens = ojson::array();
        for (int i : f.id) {
            ojson v = ojson::array();
            for (const Int& x : c.gens_m[i]) v.push_back(int_str(x));
            gens.push_back(v);
        }
        arr.push_back(ojson{{"id", face_id_to_string(f.id)},
                            {"dim", f.dim},
                            {"generator_indices", g},
                            {"generators", gens},
                            {"smooth_orbit", smooth_along_orbit(c, f)}});
    }
    return arr;
}

std::vector<std::vector<std::string>> faces_table(const Cone& c, const std::vector<Face>& faces) {
    std::vector<std::vector<std::string>> rows{{"id", "dim", "smooth", "generators"}};
    for (const Face& f : faces) {
        std::string gens;
        for (int i : f.id) {
            if (!gens.empty()) gens += " ";
            gens += vec_to_string(c.gens_m[i]);
        }
        if (gens.empty()) gens = "-";
        rows.push_back({face_id_to_string(f.id), std::to_string(f.dim),
                        smooth_along_orbit(c, f) ? "yes" : "no", gens});
    }
    return rows;
}

ojson problem_echo_json(const ProblemFile& p, const Cone& c,
                        const std::map<std::string, ToricFunction>& functions) {
    ojson echo;
    echo["lattice_rank"] = p.lattice_rank;
    auto vecs = [](const std::vector<std::vector<Int>>& vs) {
        ojson arr = ojson::array();
        for (const auto& v : vs) {
            ojson jv = ojson::array();
            for (const Int& x : v) jv.push_back(int_str(x));
            arr.push_back(jv);
        }
        return arr;
    };
    echo["dual_cone_generators"] = vecs(c.gens_m);
    echo["cone_generators"] = vecs(c.gens_n);
    if (p.semigroup_generators) echo["semigroup_generators"] = vecs(*p.semigroup_generators);
    ojson fns = ojson::object();
    for (const auto& [name, fn] : functions) {
        ojson supp = ojson::array();
        for (const auto& [exp, coeff] : fn.terms) {
            ojson jv = ojson::array();
            for (const Int& x : exp) jv.push_back(int_str(x));
            supp.push_back(jv);
        }
        fns[name] = ojson{{"support", supp}, {"generic_linear", fn.generic_linear}};
    }
    echo["functions"] = fns;
    ojson hyp = ojson::array();
    for (const auto& h : p.hypotheses) hyp.push_back(h);
    echo["asserted_hypotheses"] = hyp;
    return echo;
}

std::vector<std::string> problem_echo_human(const ProblemFile& p, const Cone& c,
                                            const std::map<std::string, ToricFunction>& functions) {
    std::vector<std::string> lines;
    lines.push_back("rank: " + std::to_string(p.lattice_rank));
    std::string gm, gn;
    for (const auto& v : c.gens_m) gm += (gm.empty() ? "" : " ") + vec_to_string(v);
    for (const auto& v : c.gens_n) gn += (gn.empty() ? "" : " ") + vec_to_string(v);
    lines.push_back("dual cone generators (in M): " + gm);
    lines.push_back("cone generators (in N): " + gn);
    if (p.semigroup_generators) {
        std::string sg;
        for (const auto& v : *p.semigroup_generators)
            sg += (sg.empty() ? "" : " ") + vec_to_string(v);
        lines.push_back("semigroup generators: " + sg);
    }
    for (const auto& [name, fn] : functions)
        lines.push_back("function " + name + ": " + function_to_string(fn) +
                        (fn.generic_linear ? "   [generic linear]" : ""));
    if (!p.hypotheses.empty()) {
        lines.push_back("asserted hypotheses:");
        for (const auto& h : p.hypotheses) lines.push_back("  - " + h);
    }
    return lines;
}

ojson term_rows_json(const std::vector<TermRow>& rows, bool ci) {
    ojson arr = ojson::array();
    for (const TermRow& r : rows) {
        ojson row;
        row["face"] = face_id_to_string(r.face);
        row["dim"] = r.dim;
        if (ci) row["m_delta"] = r.m_delta;
        row["sign"] = r.sign;
        row[ci ? "dk_sum" : "vol_sum"] = int_str(r.magnitude);
        if (ci) {
            ojson dk = ojson::array();
            for (const auto& [d, k] : r.dk)
                dk.push_back(ojson{{"d", int_str(d)}, {"k", int_str(k)}});
            row["facets"] = dk;
        }
        row["eu"] = expr_json(r.eu);
        row["contribution"] = expr_json(r.contribution);
        arr.push_back(std::move(row));
    }
    return arr;
}

std::vector<std::vector<std::string>> term_rows_table(const std::vector<TermRow>& rows, bool ci) {
    std::vector<std::vector<std::string>> tab;
    if (ci)
        tab.push_back({"face", "dim", "m", "sign", "d*K", "sum", "eu", "contribution"});
    else
        tab.push_back({"face", "dim", "sign", "sum_vol", "eu", "contribution"});
    for (const TermRow& r : rows) {
        std::vector<std::string> row{face_id_to_string(r.face), std::to_string(r.dim)};
        if (ci) row.push_back(std::to_string(r.m_delta));
        row.push_back(r.sign > 0 ? "+" : "-");
        if (ci) {
            std::string dk;
            for (const auto& [d, k] : r.dk)
                dk += (dk.empty() ? "" : " ") + d.str() + "*" + k.str();
            if (dk.empty()) dk = "-";
            row.push_back(dk);
        }
        row.push_back(int_str(r.magnitude));
        row.push_back(expr_str(r.eu));
        row.push_back(expr_str(r.contribution));
        tab.push_back(std::move(row));
    }
    return tab;
}

ojson invariant_report_json(const InvariantReport& rep) {
    ojson out;
    out["kind"] = rep.kind;
    ojson hyp = ojson::array();
    for (const auto& h : rep.hypotheses) hyp.push_back(h);
    out["hypotheses"] = hyp;
    if (!rep.rows.empty() || rep.kind == "brasselet" || rep.kind == "brasselet-ci")
        out["terms"] = term_rows_json(rep.rows, rep.kind == "brasselet-ci" || rep.kind == "morse");
    if (rep.b_x) out["b_x"] = expr_json(*rep.b_x);
    if (rep.b_xg) out["b_xg"] = expr_json(*rep.b_xg);
    if (!rep.corrections.empty() || rep.kind == "morse") {
        ojson arr = ojson::array();
        for (const CorrectionRow& r : rep.corrections) {
            ojson row;
            if (r.label.empty()) {
                row["face"] = face_id_to_string(r.face);
                row["dim"] = r.dim;
            } else {
                row["stratum"] = r.label;
            }
            row["chi"] = int_str(r.chi);
            row["eu_x"] = expr_json(r.eu_x);
            row["eu_xg"] = expr_json(r.eu_xg);
            row["contribution"] = expr_json(r.contribution);
            arr.push_back(std::move(row));
        }
        out["corrections"] = arr;
    }
    if (rep.kind == "morse" || rep.kind == "milnor-cn") {
        out["m_expression"] = expr_json(rep.total);
        if (rep.m_value) out["m"] = int_str(*rep.m_value);
        if (rep.relation) out["relation"] = *rep.relation;
    } else {
        out["total"] = expr_json(rep.total);
    }
    return out;
}

void invariant_report_human(std::vector<std::string>& lines, const InvariantReport& rep) {
    lines.push_back("hypotheses:");
    for (const auto& h : rep.hypotheses) lines.push_back("  - " + h);
    bool ci_rows = rep.kind == "brasselet-ci" || rep.kind == "morse";
    if (!rep.rows.empty()) {
        lines.push_back(rep.kind == "milnor-cn" ? "critical-orbit terms:" : "terms:");
        if (rep.kind == "milnor-cn") {
            std::vector<std::vector<std::string>> tab{{"face", "dim", "sign", "eu", "contribution"}};
            for (const TermRow& r : rep.rows)
                tab.push_back({face_id_to_string(r.face), std::to_string(r.dim),
                               r.sign > 0 ? "+" : "-", expr_str(r.eu), expr_str(r.contribution)});
            lines.push_back(format_table(tab));
        } else {
            lines.push_back(format_table(term_rows_table(rep.rows, ci_rows)));
        }
    }
    if (rep.b_x) lines.push_back("B_f_X = " + expr_str(*rep.b_x));
    if (rep.b_xg) lines.push_back("B_f_Xg = " + expr_str(*rep.b_xg));
    if (!rep.corrections.empty()) {
        lines.push_back("critical-locus corrections:");
        std::vector<std::vector<std::string>> tab{
            {"stratum", "dim", "chi", "eu_x", "eu_xg", "contribution"}};
        for (const CorrectionRow& r : rep.corrections)
            tab.push_back({r.label.empty() ? face_id_to_string(r.face) : r.label,
                           r.label.empty() ? std::to_string(r.dim) : std::string("-"),
                           int_str(r.chi), expr_str(r.eu_x), expr_str(r.eu_xg),
                           expr_str(r.contribution)});
        lines.push_back(format_table(tab));
    } else if (rep.kind == "morse") {
        lines.push_back("critical-locus corrections: none");
    }
    if (rep.kind == "morse" || rep.kind == "milnor-cn") {
        if (rep.m_value)
            lines.push_back("m = " + int_str(*rep.m_value));
        else
            lines.push_back("relation: " + *rep.relation);
    } else {
        lines.push_back("total: " + expr_str(rep.total));
    }
}

ojson constancy_json(const ConstancyResult& r) {
    ojson out;
    out["newton_constancy"] = r.pass ? "PASS" : "FAIL";
    if (r.witness) {
        ojson w;
        w["perturbation"] = r.witness->perturbation;
        ojson pt = ojson::array();
        for (const Int& x : r.witness->point) pt.push_back(int_str(x));
        w["point"] = pt;
        ojson nm = ojson::array();
        for (const Int& x : r.witness->normal) nm.push_back(int_str(x));
        w["facet_normal"] = nm;
        w["value"] = int_str(r.witness->value);
        w["level"] = int_str(r.witness->level);
        out["witness"] = w;
    }
    out["facet_disjointness_sufficient_condition"] = r.facet_disjointness;
    return out;
}

void constancy_human(std::vector<std::string>& lines, const std::string& role,
                     const ConstancyResult& r) {
    lines.push_back("family " + role + ": Newton polygon constancy " +
                    (r.pass ? "PASS" : "FAIL"));
    if (r.witness)
        lines.push_back("  witness: point " + vec_to_string(r.witness->point) + " of '" +
                        r.witness->perturbation + "' pairs to " + int_str(r.witness->value) +
                        " < " + int_str(r.witness->level) + " against facet normal " +
                        vec_to_string(r.witness->normal));
    lines.push_back(std::string("  facet-disjointness sufficient condition: ") +
                    (r.facet_disjointness ? "holds" : "does not hold"));
}

std::string render_document(const std::string& command, const ProblemFile& p, const Cone& c,
                            const std::map<std::string, ToricFunction>& functions,
                            const ojson& result, const std::vector<std::string>& result_human,
                            bool as_json) {
    if (as_json) {
        ojson doc;
        doc["format_version"] = 1;
        doc["command"] = command;
        doc["problem"] = problem_echo_json(p, c, functions);
        doc["faces"] = faces_json(c, enumerate_faces(c));
        doc["result"] = result;
        return doc.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "# " << command << "\n";
    for (const auto& line : problem_echo_human(p, c, functions)) os << line << "\n";
    os << "faces:\n" << format_table(faces_table(c, enumerate_faces(c)));
    for (const auto& line : result_human) os << line << "\n";
    return os.str();
}

} // namespace toric

#include "toric/commands.hpp"

#include "toric/report.hpp"

#include <algorithm>
#include <sstream>

namespace toric {

namespace {

struct Context {
    Cone cone;
    std::vector<Face> faces;
    std::map<std::string, ToricFunction> functions;
};

Context build_context(const ProblemFile& p) {
    Context ctx;
    ctx.cone = p.generators_are_dual ? cone_from_dual_generators(p.generators, p.lattice_rank)
                                     : cone_from_generators(p.generators, p.lattice_rank);
    ctx.faces = enumerate_faces(ctx.cone);
    if (p.semigroup_generators) {
        for (const auto& v : *p.semigroup_generators) {
            if (is_zero(v)) throw input_error("zero vector among semigroup generators");
            if (!in_dual_cone(ctx.cone, v))
                throw input_error("semigroup generator " + vec_to_string(v) +
                                  " outside dual cone");
        }
    }
    for (const auto& [name, spec] : p.functions) {
        if (spec.generic_linear) {
            ToricFunction fn = generic_linear_form(
                ctx.cone, p.semigroup_generators ? &*p.semigroup_generators : nullptr);
            fn.name = name;
            ctx.functions.emplace(name, std::move(fn));
        } else {
            ToricFunction fn = make_toric_function(name, spec.terms);
            check_support_in_cone(fn, ctx.cone);
            ctx.functions.emplace(name, std::move(fn));
        }
    }
    return ctx;
}

const ToricFunction& get_function(const Context& ctx, const std::string& name,
                                  const std::string& flag) {
    if (name.empty()) throw input_error("missing function name (" + flag + ")");
    auto it = ctx.functions.find(name);
    if (it == ctx.functions.end()) throw input_error("unknown function '" + name + "'");
    return it->second;
}

EuTable table_x(const Context& ctx, const ProblemFile& p) {
    return resolve_eu_table(ctx.cone, ctx.faces, p.eu_x, "X", nullptr);
}

EuTable table_xg(const Context& ctx, const ProblemFile& p, const ToricFunction& g) {
    return resolve_eu_table(ctx.cone, ctx.faces, p.eu_xg, "Xg", &g);
}

std::vector<const Face*> selected_faces(const Context& ctx, const CommandOptions& opt) {
    std::vector<const Face*> out;
    if (!opt.face.empty()) {
        out.push_back(&find_face(ctx.faces, face_id_from_string(opt.face)));
    } else {
        for (const Face& f : ctx.faces) out.push_back(&f);
    }
    return out;
}

std::vector<LatticeVector> parse_points_arg(const std::string& text, int rank) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const std::exception& e) {
        throw input_error(std::string("malformed --points argument: ") + e.what());
    }
    if (!j.is_array() || j.empty()) throw input_error("--points expects a nonempty vertex list");
    std::vector<LatticeVector> pts;
    for (const auto& v : j) {
        if (!v.is_array() || static_cast<int>(v.size()) != rank)
            throw input_error("--points vertex of wrong rank");
        LatticeVector x;
        for (const auto& c : v) {
            if (c.is_number_integer())
                x.emplace_back(c.get<long long>());
            else if (c.is_string())
                x.emplace_back(Int(c.get<std::string>()));
            else
                throw input_error("--points entries must be integers");
        }
        pts.push_back(std::move(x));
    }
    return pts;
}

ojson vec_json(const std::vector<Int>& v) {
    ojson a = ojson::array();
    for (const Int& x : v) a.push_back(int_str(x));
    return a;
}

// Direction-lattice polytope from raw points; the reference is the
// saturated lattice of the affine hull, so lower-dimensional inputs work.
LatticePolytope polytope_on_direction_lattice(const std::vector<LatticeVector>& pts, int rank) {
    std::vector<LatticeVector> diffs;
    for (std::size_t k = 1; k < pts.size(); ++k) {
        LatticeVector v(pts[k].size());
        for (std::size_t t = 0; t < v.size(); ++t) v[t] = pts[k][t] - pts[0][t];
        diffs.push_back(std::move(v));
    }
    return make_lattice_polytope(pts, sublattice_basis(diffs, rank));
}

// ---- individual commands ----

void cmd_faces(const Context&, ojson& result, std::vector<std::string>& human) {
    result = ojson::object(); // face table already part of every document
    human.push_back("(see the face table above)");
}

void cmd_orbits(const Context& ctx, const CommandOptions& opt, ojson& result,
                std::vector<std::string>& human) {
    const ToricFunction& g = get_function(ctx, opt.function, "--function");
    auto orbits = critical_orbits(g, ctx.cone, ctx.faces);
    ojson arr = ojson::array();
    std::string list;
    for (const FaceId& id : orbits) {
        const Face& f = find_face(ctx.faces, id);
        arr.push_back(ojson{{"face", face_id_to_string(id)}, {"dim", f.dim}});
        list += (list.empty() ? "" : " ") + face_id_to_string(id);
    }
    result["function"] = g.name;
    result["critical_orbits"] = arr;
    human.push_back("critical orbits of '" + g.name + "': " + (list.empty() ? "none" : list));
}

void cmd_newton(const Context& ctx, const CommandOptions& opt, ojson& result,
                std::vector<std::string>& human) {
    const ToricFunction& fn = get_function(ctx, opt.function, "--function");
    ojson arr = ojson::array();
    std::vector<std::vector<std::string>> tab{{"face", "facet", "normal", "level", "vertices"}};
    for (const Face* f : selected_faces(ctx, opt)) {
        if (!opt.face.empty() && !meets_face(fn, ctx.cone, *f))
            throw input_error("function '" + fn.name + "': Newton polygon misses face " +
                              face_id_to_string(f->id));
        if (f->dim < 1 || !meets_face(fn, ctx.cone, *f)) continue;
        RestrictedNewtonData data = newton_restriction(fn, ctx.cone, *f);
        for (std::size_t i = 0; i < data.facets.size(); ++i) {
            const NewtonFacet& nf = data.facets[i];
            ojson verts = ojson::array();
            std::string vtext;
            for (const auto& v : nf.vertices_ambient) {
                verts.push_back(vec_json(v));
                vtext += (vtext.empty() ? "" : " ") + vec_to_string(v);
            }
            arr.push_back(ojson{{"face", face_id_to_string(f->id)},
                                {"facet", static_cast<int>(i)},
                                {"normal", vec_json(nf.normal)},
                                {"level", int_str(nf.level)},
                                {"vertices", verts}});
            tab.push_back({face_id_to_string(f->id), std::to_string(i), vec_to_string(nf.normal),
                           int_str(nf.level), vtext});
        }
    }
    result["function"] = fn.name;
    result["facets"] = arr;
    human.push_back("compact facets of the restricted Newton polygons of '" + fn.name + "':");
    human.push_back(format_table(tab));
}

void cmd_chi(const Context& ctx, const CommandOptions& opt, ojson& result,
             std::vector<std::string>& human) {
    const ToricFunction& fn = get_function(ctx, opt.function, "--function");
    ojson arr = ojson::array();
    std::vector<std::vector<std::string>> tab{{"face", "dim", "chi"}};
    for (const Face* f : selected_faces(ctx, opt)) {
        if (opt.face.empty() && (f->dim < 1 || !meets_face(fn, ctx.cone, *f))) continue;
        Int chi = chi_orbit(fn, ctx.cone, *f); // throws on an explicit bad face
        arr.push_back(ojson{{"face", face_id_to_string(f->id)}, {"dim", f->dim},
                            {"chi", int_str(chi)}});
        tab.push_back({face_id_to_string(f->id), std::to_string(f->dim), int_str(chi)});
    }
    result["function"] = fn.name;
    result["chi"] = arr;
    human.push_back("orbit Euler characteristics of the Milnor fiber of '" + fn.name + "':");
    human.push_back(format_table(tab));
}

void cmd_volume(const Context& ctx, const ProblemFile& p, const CommandOptions& opt, ojson& result,
                std::vector<std::string>& human) {
    if (!opt.points.empty()) {
        auto pts = parse_points_arg(opt.points[0], p.lattice_rank);
        LatticePolytope poly = polytope_on_direction_lattice(pts, p.lattice_rank);
        Int vol = normalized_volume(poly);
        result["normalized_volume"] = int_str(vol);
        human.push_back("normalized volume: " + int_str(vol));
        return;
    }
    const ToricFunction& fn = get_function(ctx, opt.function, "--function");
    ojson arr = ojson::array();
    std::vector<std::vector<std::string>> tab{{"face", "facet", "normal", "vol"}};
    for (const Face* f : selected_faces(ctx, opt)) {
        if (!opt.face.empty() && !meets_face(fn, ctx.cone, *f))
            throw input_error("function '" + fn.name + "': Newton polygon misses face " +
                              face_id_to_string(f->id));
        if (f->dim < 1 || !meets_face(fn, ctx.cone, *f)) continue;
        RestrictedNewtonData data = newton_restriction(fn, ctx.cone, *f);
        for (std::size_t i = 0; i < data.facets.size(); ++i) {
            auto pts = data.facets[i].vertex_coords;
            pts.emplace_back(f->dim, 0);
            Int vol = volume_times_factorial(pts, f->dim);
            arr.push_back(ojson{{"face", face_id_to_string(f->id)},
                                {"facet", static_cast<int>(i)},
                                {"vol", int_str(vol)}});
            tab.push_back({face_id_to_string(f->id), std::to_string(i),
                           vec_to_string(data.facets[i].normal), int_str(vol)});
        }
    }
    result["function"] = fn.name;
    result["volumes"] = arr;
    human.push_back("normalized volumes of the cones over the compact facets ('" + fn.name +
                    "'):");
    human.push_back(format_table(tab));
}

void cmd_mixed_volume(const ProblemFile& p, const CommandOptions& opt, ojson& result,
                      std::vector<std::string>& human) {
    if (opt.points.empty()) throw input_error("mixed-volume needs at least one --points list");
    if (!opt.mults.empty() && opt.mults.size() != opt.points.size())
        throw input_error("--mult count must match --points count");
    IntMatrix lattice = IntMatrix::identity(p.lattice_rank);
    std::vector<std::pair<LatticePolytope, int>> slots;
    for (std::size_t i = 0; i < opt.points.size(); ++i) {
        auto pts = parse_points_arg(opt.points[i], p.lattice_rank);
        int mult = opt.mults.empty() ? 1 : opt.mults[i];
        slots.emplace_back(make_lattice_polytope(pts, lattice), mult);
    }
    Int mv = mixed_volume(slots, lattice);
    result["mixed_volume"] = int_str(mv);
    human.push_back("mixed volume: " + int_str(mv));
}

void cmd_brasselet(const Context& ctx, const ProblemFile& p, const CommandOptions& opt,
                   ojson& result, std::vector<std::string>& human) {
    const ToricFunction& fn = get_function(ctx, opt.function, "--function");
    InvariantReport rep =
        brasselet_hypersurface(fn, ctx.cone, ctx.faces, table_x(ctx, p), false, opt.workers);
    result = invariant_report_json(rep);
    invariant_report_human(human, rep);
}

void cmd_brasselet_ci(const Context& ctx, const ProblemFile& p, const CommandOptions& opt,
                      ojson& result, std::vector<std::string>& human) {
    const ToricFunction& f_k = get_function(ctx, opt.f_name, "--f");
    std::vector<ToricFunction> priors;
    if (!opt.priors.empty()) {
        std::istringstream is(opt.priors);
        std::string name;
        while (std::getline(is, name, ','))
            priors.push_back(get_function(ctx, name, "--priors"));
    }
    EuTable eu = priors.empty()
                     ? table_x(ctx, p)
                     : (priors.size() == 1
                            ? table_xg(ctx, p, priors[0])
                            : resolve_eu_table(ctx.cone, ctx.faces, p.eu_xg, "Xg", nullptr));
    InvariantReport rep = brasselet_complete_intersection(priors, f_k, ctx.cone, ctx.faces, eu,
                                                          false, opt.workers);
    result = invariant_report_json(rep);
    invariant_report_human(human, rep);
}

void cmd_morse(const Context& ctx, const ProblemFile& p, const CommandOptions& opt, ojson& result,
               std::vector<std::string>& human) {
    const ToricFunction& f = get_function(ctx, opt.f_name, "--f");
    const ToricFunction& g = get_function(ctx, opt.g_name, "--g");
    std::vector<RefinedStratum> refined;
    for (const auto& w : p.refined_strata)
        refined.push_back(RefinedStratum{w.label, w.chi, w.eu_x, w.eu_xg});
    InvariantReport rep = morse_count(f, g, ctx.cone, ctx.faces, table_x(ctx, p),
                                      table_xg(ctx, p, g), opt.workers,
                                      refined.empty() ? nullptr : &refined);
    result = invariant_report_json(rep);
    invariant_report_human(human, rep);
}

void cmd_milnor_cn(const Context& ctx, const ProblemFile& p, const CommandOptions& opt,
                   ojson& result, std::vector<std::string>& human) {
    const ToricFunction& g = get_function(ctx, opt.g_name.empty() ? opt.function : opt.g_name,
                                          "--g");
    MilnorMode mode;
    if (opt.mode == "relation")
        mode = MilnorMode::EmitRelation;
    else if (opt.mode == "solve")
        mode = MilnorMode::SolveForM;
    else
        throw input_error("milnor-cn --mode must be relation or solve");
    InvariantReport rep = milnor_cn_relation(g, ctx.cone, ctx.faces, table_xg(ctx, p, g), mode);
    result = invariant_report_json(rep);
    invariant_report_human(human, rep);
}

Deformation build_deformation(const Context& ctx, const FamilySpec& spec) {
    Deformation d;
    d.base = get_function(ctx, spec.base, "family base");
    d.parameter = spec.parameter;
    for (const auto& name : spec.perturbations)
        d.perturbations.push_back(get_function(ctx, name, "family perturbation"));
    return d;
}

void cmd_family_check(const Context& ctx, const ProblemFile& p, const CommandOptions& opt,
                      ojson& result, std::vector<std::string>& human) {
    if (p.families.empty()) throw input_error("problem file has no family section");
    bool both = p.families.count("f") && p.families.count("g");
    if (both) {
        Deformation f_fam = build_deformation(ctx, p.families.at("f"));
        Deformation g_fam = build_deformation(ctx, p.families.at("g"));
        FamilyReport rep = family_invariant_report(f_fam, g_fam, ctx.cone, ctx.faces,
                                                   table_x(ctx, p),
                                                   table_xg(ctx, p, g_fam.base), opt.workers);
        result["f"] = constancy_json(rep.f_check);
        result["g"] = constancy_json(rep.g_check);
        result["member_reports_identical"] = rep.certified;
        ojson hyp = ojson::array();
        for (const auto& h : rep.hypotheses) hyp.push_back(h);
        result["hypotheses"] = hyp;
        result["morse"] = invariant_report_json(rep.morse);
        constancy_human(human, "f", rep.f_check);
        constancy_human(human, "g", rep.g_check);
        human.push_back(std::string("member reports identical across the family: ") +
                        (rep.certified ? "yes" : "no"));
        invariant_report_human(human, rep.morse);
    } else {
        for (const auto& [role, spec] : p.families) {
            Deformation d = build_deformation(ctx, spec);
            ConstancyResult r = newton_constancy_check(d, ctx.cone, ctx.faces);
            result[role] = constancy_json(r);
            constancy_human(human, role, r);
        }
    }
}

using CheckSink = std::function<void(const std::string&, const Int&, const Int&)>;

// Milnor-number cross-check for simple staircases over the octant: one
// compact facet per face, every axis met. The volumes on this route
// come from lattice-point counting, so it shares nothing with the
// triangulation path used by the Brasselet formula.
void kouchnirenko_check(const Context& ctx, const ProblemFile& p, const ToricFunction& fn,
                        const CheckSink& add, std::vector<std::string>& notes) {
    if (!is_standard_octant(ctx.cone)) return;
    int n = ctx.cone.rank;
    for (const Face& f : ctx.faces)
        if (f.dim == 1 && !meets_face(fn, ctx.cone, f)) {
            notes.push_back("note: '" + fn.name +
                            "' is not convenient; Milnor-number cross-check skipped");
            return;
        }
    Int mu = (n % 2 == 0) ? 1 : -1;
    for (const Face& f : ctx.faces) {
        if (f.dim < 1) continue;
        RestrictedNewtonData data = newton_restriction(fn, ctx.cone, f);
        if (data.facets.size() != 1) {
            notes.push_back("note: '" + fn.name +
                            "' has a non-simple staircase; Milnor-number cross-check skipped");
            return;
        }
        auto pts = data.facets[0].vertex_coords;
        pts.emplace_back(f.dim, 0);
        Int vol = ehrhart_volume_oracle(make_lattice_polytope(pts, IntMatrix::identity(f.dim)));
        mu += (n - f.dim) % 2 == 0 ? vol : -vol;
    }
    InvariantReport b = brasselet_hypersurface(fn, ctx.cone, ctx.faces, table_x(ctx, p), false, 1);
    Int expected = Int(1) + ((n % 2 == 1) ? mu : -mu); // 1 + (-1)^(n-1) mu
    add("'" + fn.name + "': Brasselet total vs 1 + (-1)^(n-1) * counted Milnor number",
        b.total.constant, expected);
}

void cmd_oracle(const Context& ctx, const ProblemFile& p, const CommandOptions& opt, ojson& result,
                std::vector<std::string>& human) {
    ojson checks = ojson::array();
    std::vector<std::vector<std::string>> tab{{"check", "lhs", "rhs", "agree"}};
    bool all = true;
    CheckSink add = [&](const std::string& name, const Int& lhs, const Int& rhs) {
        bool ok = lhs == rhs;
        all = all && ok;
        checks.push_back(ojson{{"check", name}, {"lhs", int_str(lhs)}, {"rhs", int_str(rhs)},
                               {"agree", ok}});
        tab.push_back({name, int_str(lhs), int_str(rhs), ok ? "yes" : "no"});
    };
    std::vector<std::string> notes;

    for (std::size_t i = 0; i < opt.points.size(); ++i) {
        auto pts = parse_points_arg(opt.points[i], p.lattice_rank);
        LatticePolytope poly = polytope_on_direction_lattice(pts, p.lattice_rank);
        add("points #" + std::to_string(i) + ": triangulation vs counting",
            normalized_volume(poly), ehrhart_volume_oracle(poly));
    }

    std::vector<std::string> names;
    if (!opt.function.empty())
        names.push_back(opt.function);
    else
        for (const auto& [name, fn] : ctx.functions) names.push_back(name);

    for (const auto& name : names) {
        const ToricFunction& fn = get_function(ctx, name, "--function");
        for (const Face& f : ctx.faces) {
            if (f.dim < 1 || !meets_face(fn, ctx.cone, f)) continue;
            RestrictedNewtonData data = newton_restriction(fn, ctx.cone, f);
            for (std::size_t i = 0; i < data.facets.size(); ++i) {
                auto pts = data.facets[i].vertex_coords;
                pts.emplace_back(f.dim, 0);
                LatticePolytope poly = make_lattice_polytope(pts, IntMatrix::identity(f.dim));
                add("'" + name + "' face " + face_id_to_string(f.id) + " facet " +
                        std::to_string(i) + ": triangulation vs counting",
                    normalized_volume(poly), ehrhart_volume_oracle(poly));
            }
        }
        kouchnirenko_check(ctx, p, fn, add, notes);
    }

    result["checks"] = checks;
    result["all_agree"] = all;
    ojson jn = ojson::array();
    for (const auto& s : notes) jn.push_back(s);
    result["notes"] = jn;
    human.push_back("independent cross-checks:");
    human.push_back(format_table(tab));
    for (const auto& s : notes) human.push_back(s);
    human.push_back(std::string("all agree: ") + (all ? "yes" : "no"));
    if (!all) throw input_error("oracle cross-check disagreement");
}

} // namespace

std::string run_command(const ProblemFile& problem, const CommandOptions& opt) {
    static const std::vector<std::string> commands = {
        "faces",    "orbits",       "newton", "chi",       "volume",       "mixed-volume",
        "brasselet", "brasselet-ci", "morse",  "milnor-cn", "family-check", "oracle"};
    if (std::find(commands.begin(), commands.end(), opt.command) == commands.end())
        throw input_error("unknown command '" + opt.command + "'");
    if (opt.workers < 1) throw input_error("--parallel must be at least 1");

    Context ctx = build_context(problem);
    ojson result = ojson::object();
    std::vector<std::string> human;

    if (opt.command == "faces")
        cmd_faces(ctx, result, human);
    else if (opt.command == "orbits")
        cmd_orbits(ctx, opt, result, human);
    else if (opt.command == "newton")
        cmd_newton(ctx, opt, result, human);
    else if (opt.command == "chi")
        cmd_chi(ctx, opt, result, human);
    else if (opt.command == "volume")
        cmd_volume(ctx, problem, opt, result, human);
    else if (opt.command == "mixed-volume")
        cmd_mixed_volume(problem, opt, result, human);
    else if (opt.command == "brasselet")
        cmd_brasselet(ctx, problem, opt, result, human);
    else if (opt.command == "brasselet-ci")
        cmd_brasselet_ci(ctx, problem, opt, result, human);
    else if (opt.command == "morse")
        cmd_morse(ctx, problem, opt, result, human);
    else if (opt.command == "milnor-cn")
        cmd_milnor_cn(ctx, problem, opt, result, human);
    else if (opt.command == "family-check")
        cmd_family_check(ctx, problem, opt, result, human);
    else
        cmd_oracle(ctx, problem, opt, result, human);

    return render_document(opt.command, problem, ctx.cone, ctx.functions, result, human,
                           opt.json);
}

} // namespace toric

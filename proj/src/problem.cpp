#include "toric/problem.hpp"

#include <json.hpp>

#include <algorithm>

namespace toric {

using nlohmann::json;

Rat parse_rational(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    if (s.empty()) throw input_error("empty rational literal");
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!is_int(s)) throw input_error("malformed rational '" + text + "'");
        return Rat(Int(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) throw input_error("malformed rational '" + text + "'");
    Int d(den);
    if (d == 0) throw input_error("rational '" + text + "' has zero denominator");
    return Rat(Int(num), d);
}

namespace {

std::vector<Int> parse_int_vector(const json& j, int rank, const std::string& where) {
    if (!j.is_array()) throw input_error(where + ": expected an integer vector");
    if (rank >= 0 && static_cast<int>(j.size()) != rank)
        throw input_error(where + ": vector length " + std::to_string(j.size()) +
                          " does not match lattice rank " + std::to_string(rank));
    std::vector<Int> v;
    for (const auto& x : j) {
        if (x.is_number_integer())
            v.emplace_back(x.get<long long>());
        else if (x.is_string())
            v.emplace_back(Int(x.get<std::string>()));
        else
            throw input_error(where + ": entries must be integers");
    }
    return v;
}

std::vector<std::vector<Int>> parse_vector_list(const json& j, int rank, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw input_error(where + ": expected a nonempty list of vectors");
    std::vector<std::vector<Int>> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_int_vector(j[i], rank, where + "[" + std::to_string(i) + "]"));
    return out;
}

FunctionSpec parse_function(const json& j, int rank, const std::string& name) {
    FunctionSpec spec;
    if (!j.is_object()) throw input_error("function '" + name + "': expected an object");
    if (j.value("generic_linear", false)) {
        spec.generic_linear = true;
        if (j.contains("terms"))
            throw input_error("function '" + name + "': generic_linear functions take no terms");
        return spec;
    }
    if (!j.contains("terms"))
        throw input_error("function '" + name + "': missing terms");
    const json& terms = j.at("terms");
    if (!terms.is_array() || terms.empty())
        throw input_error("function '" + name + "': terms must be a nonempty list");
    for (const auto& t : terms) {
        if (!t.is_object() || !t.contains("exp") || !t.contains("coeff"))
            throw input_error("function '" + name + "': each term needs exp and coeff");
        auto exp = parse_int_vector(t.at("exp"), rank, "function '" + name + "' term");
        if (is_zero(exp))
            throw input_error("function '" + name + "': term with exponent " +
                              vec_to_string(exp) + "; the function must vanish at the fixed point");
        Rat coeff;
        if (t.at("coeff").is_number_integer())
            coeff = Rat(t.at("coeff").get<long long>());
        else if (t.at("coeff").is_string())
            coeff = parse_rational(t.at("coeff").get<std::string>());
        else
            throw input_error("function '" + name + "': coeff must be a string rational");
        if (coeff == 0)
            throw input_error("function '" + name + "': zero coefficient at " + vec_to_string(exp));
        if (!spec.terms.emplace(std::move(exp), std::move(coeff)).second)
            throw input_error("function '" + name + "': repeated exponent");
    }
    return spec;
}

std::map<FaceId, Int> parse_eu_map(const json& j, const std::string& where) {
    std::map<FaceId, Int> out;
    if (!j.is_object()) throw input_error(where + ": expected an object keyed by face id");
    for (const auto& [key, value] : j.items()) {
        FaceId id = face_id_from_string(key);
        Int v;
        if (value.is_number_integer())
            v = Int(value.get<long long>());
        else if (value.is_string())
            v = Int(value.get<std::string>());
        else
            throw input_error(where + ": entry for " + key + " must be an integer");
        if (!out.emplace(std::move(id), std::move(v)).second)
            throw input_error(where + ": repeated face id " + key);
    }
    return out;
}

FamilySpec parse_family(const json& j, const std::string& role) {
    if (!j.is_object() || !j.contains("base"))
        throw input_error("family '" + role + "': expected an object with a base function");
    FamilySpec spec;
    spec.base = j.at("base").get<std::string>();
    if (j.contains("perturbations"))
        for (const auto& p : j.at("perturbations")) spec.perturbations.push_back(p.get<std::string>());
    spec.parameter = j.value("parameter", role == "g" ? std::string("s") : std::string("t"));
    return spec;
}

} // namespace

ProblemFile parse_problem(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("malformed problem file: ") + e.what());
    }
    if (!j.is_object()) throw input_error("problem file must be a JSON object");

    static const std::vector<std::string> known = {
        "version",       "lattice_rank",       "cone_generators", "dual_cone_generators",
        "semigroup_generators", "functions",   "euler_obstruction", "hypotheses", "family",
        "refined_strata"};
    for (const auto& [key, value] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw input_error("unknown problem field '" + key + "'");

    ProblemFile p;
    p.version = j.value("version", 1);
    if (p.version != 1) throw input_error("unsupported problem format version");
    if (!j.contains("lattice_rank") || !j.at("lattice_rank").is_number_integer())
        throw input_error("missing integer lattice_rank");
    p.lattice_rank = j.at("lattice_rank").get<int>();
    if (p.lattice_rank < 1) throw input_error("lattice_rank must be at least 1");

    bool has_n = j.contains("cone_generators");
    bool has_m = j.contains("dual_cone_generators");
    if (has_n == has_m)
        throw input_error("exactly one of cone_generators and dual_cone_generators is required");
    p.generators_are_dual = has_m;
    p.generators = parse_vector_list(j.at(has_m ? "dual_cone_generators" : "cone_generators"),
                                     p.lattice_rank,
                                     has_m ? "dual_cone_generators" : "cone_generators");

    if (j.contains("semigroup_generators"))
        p.semigroup_generators =
            parse_vector_list(j.at("semigroup_generators"), p.lattice_rank, "semigroup_generators");

    if (j.contains("functions")) {
        if (!j.at("functions").is_object()) throw input_error("functions must be an object");
        for (const auto& [name, def] : j.at("functions").items()) {
            if (name.empty()) throw input_error("function with empty name");
            p.functions[name] = parse_function(def, p.lattice_rank, name);
        }
    }

    if (j.contains("euler_obstruction")) {
        const json& eu = j.at("euler_obstruction");
        if (!eu.is_object()) throw input_error("euler_obstruction must be an object");
        for (const auto& [key, value] : eu.items()) {
            if (key == "X")
                p.eu_x = parse_eu_map(value, "euler_obstruction.X");
            else if (key == "Xg")
                p.eu_xg = parse_eu_map(value, "euler_obstruction.Xg");
            else
                throw input_error("euler_obstruction tables must be keyed X or Xg");
        }
    }

    if (j.contains("hypotheses")) {
        if (!j.at("hypotheses").is_array()) throw input_error("hypotheses must be a list");
        for (const auto& h : j.at("hypotheses")) p.hypotheses.push_back(h.get<std::string>());
    }

    if (j.contains("family")) {
        const json& fam = j.at("family");
        if (!fam.is_object()) throw input_error("family must be an object keyed by role");
        for (const auto& [role, def] : fam.items()) {
            if (role != "f" && role != "g")
                throw input_error("family roles must be 'f' or 'g'");
            p.families[role] = parse_family(def, role);
        }
    }

    if (j.contains("refined_strata")) {
        const json& rs = j.at("refined_strata");
        if (!rs.is_array()) throw input_error("refined_strata must be a list");
        for (const auto& w : rs) {
            RefinedStratumSpec spec;
            if (!w.is_object() || !w.contains("label") || !w.contains("chi"))
                throw input_error("each refined stratum needs a label and a chi value");
            spec.label = w.at("label").get<std::string>();
            if (spec.label.empty()) throw input_error("refined stratum with an empty label");
            if (!w.at("chi").is_number_integer())
                throw input_error("refined stratum '" + spec.label + "': chi must be an integer");
            spec.chi = Int(w.at("chi").get<long long>());
            if (w.contains("eu_X") && !w.at("eu_X").is_null())
                spec.eu_x = Int(w.at("eu_X").get<long long>());
            if (w.contains("eu_Xg") && !w.at("eu_Xg").is_null())
                spec.eu_xg = Int(w.at("eu_Xg").get<long long>());
            p.refined_strata.push_back(std::move(spec));
        }
    }
    return p;
}

} // namespace toric

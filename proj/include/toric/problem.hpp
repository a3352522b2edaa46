#pragma once

#include "toric/ints.hpp"
#include "toric/cones.hpp"

#include <map>
#include <optional>
#include <string>

namespace toric {

struct FunctionSpec {
    std::map<LatticeVector, Rat> terms;
    bool generic_linear = false;
};

struct FamilySpec {
    std::string base;
    std::vector<std::string> perturbations;
    std::string parameter = "t";
};

// Caller-supplied correction stratum for the refined Morse-count form.
struct RefinedStratumSpec {
    std::string label;
    Int chi;
    std::optional<Int> eu_x;
    std::optional<Int> eu_xg;
};

// Parsed, schema-validated problem document. Cone-dependent checks
// (supports inside the dual cone, face ids in the Eu tables) run when
// the cone is assembled by the command layer.
struct ProblemFile {
    int version = 1;
    int lattice_rank = 0;
    bool generators_are_dual = true; // true: sigma-check in M; false: sigma in N
    std::vector<std::vector<Int>> generators;
    std::optional<std::vector<LatticeVector>> semigroup_generators;
    std::map<std::string, FunctionSpec> functions;
    std::map<FaceId, Int> eu_x;
    std::map<FaceId, Int> eu_xg;
    std::vector<std::string> hypotheses;
    std::map<std::string, FamilySpec> families; // keyed by role, "f" and/or "g"
    std::vector<RefinedStratumSpec> refined_strata;
};

ProblemFile parse_problem(const std::string& text);

Rat parse_rational(const std::string& text);

} // namespace toric

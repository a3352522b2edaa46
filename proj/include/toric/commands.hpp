#pragma once

#include "toric/problem.hpp"

#include <string>
#include <vector>

namespace toric {

struct CommandOptions {
    std::string command;
    std::string function;            // --function
    std::string f_name;              // --f
    std::string g_name;              // --g
    std::string priors;              // --priors, comma-separated names
    std::string face;                // --face, e.g. "{0,2}"
    std::vector<std::string> points; // --points, JSON vertex lists
    std::vector<int> mults;          // --mult, parallel to points
    std::string mode = "relation";   // milnor-cn: relation | solve
    bool json = false;
    int workers = 1;
};

// Executes one subcommand against a parsed problem and returns the
// rendered document. Throws input_error for schema/hypothesis problems.
std::string run_command(const ProblemFile& problem, const CommandOptions& opt);

} // namespace toric

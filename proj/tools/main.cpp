#include "toric/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw toric::input_error("cannot open problem file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact combinatorial invariants of non-degenerate germs on affine toric "
                 "varieties"};
    app.require_subcommand(1);
    app.fallthrough(); // --json / --parallel may follow the subcommand

    toric::CommandOptions opt;
    std::string problem_path;

    bool json = false;
    int workers = 1;
    app.add_flag("--json", json, "emit the machine-readable document");
    app.add_option("--parallel", workers, "worker threads for per-face computations")
        ->check(CLI::PositiveNumber);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("problem", problem_path, "problem file (JSON)")->required();
    };

    struct SubSpec {
        const char* name;
        const char* desc;
    };
    const std::vector<SubSpec> subs = {
        {"faces", "enumerate the faces of the dual cone"},
        {"orbits", "critical orbits of a function"},
        {"newton", "compact facets of the restricted Newton polygons"},
        {"chi", "orbit Euler characteristics of the Milnor fiber"},
        {"volume", "normalized volumes of the cones over compact facets"},
        {"mixed-volume", "normalized mixed volume of vertex-listed polytopes"},
        {"brasselet", "Brasselet number of a function on the toric variety"},
        {"brasselet-ci", "Brasselet number on a complete intersection"},
        {"morse", "stratified Morse point count of a partial morsefication"},
        {"milnor-cn", "octant corollary relation for the Morse count"},
        {"family-check", "Newton polygon constancy and family invariance"},
        {"oracle", "independent volume / counting / Milnor-number cross-checks"},
    };
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.desc);
        add_common(sub);
        sub->add_option("--function", opt.function, "function name");
        sub->add_option("--f", opt.f_name, "numerator function (f)");
        sub->add_option("--g", opt.g_name, "hypersurface function (g)");
        sub->add_option("--priors", opt.priors, "comma-separated prior functions");
        sub->add_option("--face", opt.face, "face id, e.g. {0,2}");
        sub->add_option("--points", opt.points, "polytope vertex list (JSON), repeatable");
        sub->add_option("--mult", opt.mults, "multiplicity per --points entry");
        sub->add_option("--mode", opt.mode, "milnor-cn: relation | solve");
    }

    CLI11_PARSE(app, argc, argv);
    opt.command = app.get_subcommands().front()->get_name();
    opt.json = json;
    opt.workers = workers;

    try {
        toric::ProblemFile problem = toric::parse_problem(read_file(problem_path));
        std::cout << toric::run_command(problem, opt);
        return 0;
    } catch (const toric::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

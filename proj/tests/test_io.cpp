#include "toric/commands.hpp"
#include "toric/report.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace toric;

namespace {

const char* kCuspProblem = R"({
  "version": 1,
  "lattice_rank": 2,
  "dual_cone_generators": [[1,0],[0,1]],
  "functions": {
    "f": {"terms": [{"exp": [2,0], "coeff": "1"}, {"exp": [0,3], "coeff": "1"}]},
    "g": {"terms": [{"exp": [0,2], "coeff": "1"}, {"exp": [3,0], "coeff": "-1"}]},
    "l": {"generic_linear": true}
  },
  "euler_obstruction": {"Xg": {"{}": 2}},
  "hypotheses": ["g is tractable with respect to the stratification induced by l"]
})";

const char* kWhiskeredCuspProblem = R"({
  "version": 1,
  "lattice_rank": 3,
  "dual_cone_generators": [[1,0,0],[0,1,0],[0,0,1]],
  "functions": {
    "g": {"terms": [{"exp": [0,2,0], "coeff": "1"},
                     {"exp": [3,0,0], "coeff": "-1"},
                     {"exp": [2,0,2], "coeff": "-1"}]},
    "l": {"generic_linear": true}
  }
})";

CommandOptions opts(const std::string& command) {
    CommandOptions o;
    o.command = command;
    return o;
}

} // namespace

TEST_CASE("problem parsing") {
    SUBCASE("minimal file parses with four derivable faces") {
        ProblemFile p = parse_problem(kCuspProblem);
        CHECK(p.lattice_rank == 2);
        CHECK(p.functions.size() == 3);
        CHECK(p.eu_xg.at(FaceId{}) == 2);
        std::string out = run_command(p, opts("faces"));
        CHECK(out.find("{0,1}") != std::string::npos);
    }
    SUBCASE("zero exponent is rejected naming the term") {
        CHECK_THROWS_WITH_AS(
            parse_problem(R"({"version":1,"lattice_rank":2,
              "dual_cone_generators":[[1,0],[0,1]],
              "functions":{"f":{"terms":[{"exp":[0,0],"coeff":"1"}]}}})"),
            doctest::Contains("vanish at the fixed point"), input_error);
    }
    SUBCASE("support outside the dual cone is rejected") {
        ProblemFile p = parse_problem(R"({"version":1,"lattice_rank":2,
          "dual_cone_generators":[[1,0],[0,1]],
          "functions":{"f":{"terms":[{"exp":[-1,2],"coeff":"1"}]}}})");
        CHECK_THROWS_WITH_AS(run_command(p, opts("faces")),
                             doctest::Contains("outside dual cone"), input_error);
    }
    SUBCASE("schema violations") {
        CHECK_THROWS_AS(parse_problem("not json"), input_error);
        CHECK_THROWS_AS(parse_problem(R"({"lattice_rank":2})"), input_error);
        CHECK_THROWS_AS(parse_problem(R"({"lattice_rank":0,
          "dual_cone_generators":[[1]]})"), input_error);
        CHECK_THROWS_AS(parse_problem(R"({"lattice_rank":2,
          "cone_generators":[[1,0],[0,1]],
          "dual_cone_generators":[[1,0],[0,1]]})"), input_error);
        CHECK_THROWS_AS(parse_problem(R"({"lattice_rank":2,
          "dual_cone_generators":[[1,0],[0,1]], "unknown_field": 3})"), input_error);
        CHECK_THROWS_AS(parse_problem(R"({"lattice_rank":2,
          "dual_cone_generators":[[1,0],[0,1]],
          "functions":{"f":{"terms":[{"exp":[1,0],"coeff":"0"}]}}})"), input_error);
        CHECK_THROWS_AS(parse_problem(R"({"lattice_rank":2,
          "dual_cone_generators":[[1,0],[0,1]],
          "functions":{"f":{"terms":[{"exp":[1],"coeff":"1"}]}}})"), input_error);
    }
    SUBCASE("rational literals") {
        CHECK(parse_rational("3/2") == Rat(3, 2));
        CHECK(parse_rational("-1") == Rat(-1));
        CHECK(parse_rational(" 5 / 10 ") == Rat(1, 2));
        CHECK_THROWS_AS(parse_rational("1/0"), input_error);
        CHECK_THROWS_AS(parse_rational("a/b"), input_error);
        CHECK_THROWS_AS(parse_rational("1.5"), input_error);
    }
}

TEST_CASE("command output is deterministic and parallel-independent") {
    ProblemFile p = parse_problem(kCuspProblem);
    for (const char* cmd : {"faces", "brasselet", "morse"}) {
        CommandOptions o = opts(cmd);
        if (std::string(cmd) == "brasselet") o.function = "f";
        if (std::string(cmd) == "morse") {
            o.f_name = "l";
            o.g_name = "g";
        }
        std::string first = run_command(p, o);
        std::string second = run_command(p, o);
        CHECK(first == second);
        o.workers = 4;
        CHECK(run_command(p, o) == first);
        o.json = true;
        std::string js = run_command(p, o);
        o.workers = 1;
        CHECK(run_command(p, o) == js);
    }
}

TEST_CASE("brasselet through the command layer") {
    ProblemFile p = parse_problem(kCuspProblem);
    CommandOptions o = opts("brasselet");
    o.function = "f";
    o.json = true;
    ojson doc = ojson::parse(run_command(p, o));
    CHECK(doc["command"] == "brasselet");
    CHECK(doc["result"]["total"]["value"] == "-1");
    // round-trip: the three term contributions re-sum to the total
    Int sum = 0;
    for (const auto& row : doc["result"]["terms"])
        sum += Int(row["contribution"]["value"].get<std::string>());
    CHECK(sum == -1);

    // human form carries the same total
    o.json = false;
    std::string human = run_command(p, o);
    CHECK(human.find("total: -1") != std::string::npos);
}

TEST_CASE("morse and milnor through the command layer") {
    ProblemFile p = parse_problem(kCuspProblem);
    SUBCASE("cusp morse count is 1") {
        CommandOptions o = opts("morse");
        o.f_name = "l";
        o.g_name = "g";
        o.json = true;
        ojson doc = ojson::parse(run_command(p, o));
        CHECK(doc["result"]["m"] == "1");
    }
    SUBCASE("milnor-cn solves with the supplied multiplicity") {
        CommandOptions o = opts("milnor-cn");
        o.g_name = "g";
        o.mode = "solve";
        o.json = true;
        ojson doc = ojson::parse(run_command(p, o));
        CHECK(doc["result"]["m"] == "1");
    }
    SUBCASE("whiskered cusp emits the relation") {
        ProblemFile wc = parse_problem(kWhiskeredCuspProblem);
        CommandOptions o = opts("milnor-cn");
        o.g_name = "g";
        o.json = true;
        ojson doc = ojson::parse(run_command(wc, o));
        CHECK(doc["result"]["relation"] == "Eu_Xg({}) - Eu_Xg({2}) = -m");
        CommandOptions m = opts("morse");
        m.f_name = "l";
        m.g_name = "g";
        m.json = true;
        ojson mdoc = ojson::parse(run_command(wc, m));
        CHECK(mdoc["result"]["relation"] == "Eu_Xg({}) - Eu_Xg({2}) = -m");
    }
    SUBCASE("refined strata from the problem file drive the corrections") {
        ProblemFile wc = parse_problem(R"({
          "version": 1, "lattice_rank": 3,
          "dual_cone_generators": [[1,0,0],[0,1,0],[0,0,1]],
          "functions": {
            "g": {"terms": [{"exp": [0,2,0], "coeff": "1"},
                             {"exp": [3,0,0], "coeff": "-1"},
                             {"exp": [2,0,2], "coeff": "-1"}]},
            "l": {"generic_linear": true}
          },
          "refined_strata": [{"label": "W1", "chi": 1, "eu_X": 1}]
        })");
        CommandOptions o = opts("morse");
        o.f_name = "l";
        o.g_name = "g";
        o.json = true;
        ojson doc = ojson::parse(run_command(wc, o));
        CHECK(doc["result"]["relation"] == "Eu_Xg({}) - Eu_Xg(W1) = -m");
        CHECK(doc["result"]["corrections"][0]["stratum"] == "W1");
    }
    SUBCASE("orbits lists the single critical orbit") {
        ProblemFile wc = parse_problem(kWhiskeredCuspProblem);
        CommandOptions o = opts("orbits");
        o.function = "g";
        o.json = true;
        ojson doc = ojson::parse(run_command(wc, o));
        REQUIRE(doc["result"]["critical_orbits"].size() == 1);
        CHECK(doc["result"]["critical_orbits"][0]["face"] == "{2}");
    }
}

TEST_CASE("volume, mixed-volume and oracle commands") {
    ProblemFile p = parse_problem(kCuspProblem);
    SUBCASE("direct polytope volume") {
        CommandOptions o = opts("volume");
        o.points = {"[[0,0],[2,0],[0,3]]"};
        o.json = true;
        ojson doc = ojson::parse(run_command(p, o));
        CHECK(doc["result"]["normalized_volume"] == "6");
    }
    SUBCASE("mixed volume of the Bernstein pair") {
        CommandOptions o = opts("mixed-volume");
        o.points = {"[[2,0],[0,1]]", "[[1,0],[0,2]]"};
        o.json = true;
        ojson doc = ojson::parse(run_command(p, o));
        CHECK(doc["result"]["mixed_volume"] == "3");
    }
    SUBCASE("oracle agrees with itself across routes") {
        CommandOptions o = opts("oracle");
        o.json = true;
        ojson doc = ojson::parse(run_command(p, o));
        CHECK(doc["result"]["all_agree"] == true);
        CHECK(doc["result"]["checks"].size() > 0);
    }
}

TEST_CASE("eu errors carry the exact face list") {
    // A1 germ with a generic linear form but no Eu entry for the origin:
    // fine for brasselet (the origin face never meets the polygon)
    ProblemFile p = parse_problem(R"({
      "version": 1, "lattice_rank": 2,
      "dual_cone_generators": [[0,1],[2,1]],
      "semigroup_generators": [[0,1],[1,1],[2,1]],
      "functions": {"l": {"generic_linear": true}}
    })");
    CommandOptions o = opts("brasselet");
    o.function = "l";
    o.json = true;
    ojson doc = ojson::parse(run_command(p, o));
    CHECK(doc["result"]["total"]["value"] == "0");

    // morse on the same germ needs Eu_Xg at the origin and must say so
    ProblemFile p2 = parse_problem(R"({
      "version": 1, "lattice_rank": 2,
      "dual_cone_generators": [[0,1],[2,1]],
      "semigroup_generators": [[0,1],[1,1],[2,1]],
      "functions": {"l": {"generic_linear": true},
                     "g": {"terms": [{"exp": [2,1], "coeff": "1"}, {"exp": [0,1], "coeff": "1"}]}}
    })");
    CommandOptions m = opts("morse");
    m.f_name = "l";
    m.g_name = "g";
    std::string out = run_command(p2, m);
    CHECK(out.find("relation") != std::string::npos);
}

TEST_CASE("golden files pin the output formats") {
    auto slurp = [](const std::string& rel) {
        std::ifstream in(std::string(TORIC_TEST_DIR) + "/" + rel, std::ios::binary);
        REQUIRE(in.good());
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    {
        ProblemFile p = parse_problem(slurp("fixtures/cusp.json"));
        CommandOptions o = opts("brasselet");
        o.function = "f";
        CHECK(run_command(p, o) == slurp("golden/cusp_brasselet.txt"));
    }
    {
        ProblemFile p = parse_problem(slurp("fixtures/whiskered_cusp.json"));
        CommandOptions o = opts("milnor-cn");
        o.g_name = "g";
        o.json = true;
        CHECK(run_command(p, o) == slurp("golden/whiskered_cusp_milnor.json"));
    }
}

TEST_CASE("unknown commands and bad flags") {
    ProblemFile p = parse_problem(kCuspProblem);
    CHECK_THROWS_AS(run_command(p, opts("summon")), input_error);
    CommandOptions o = opts("brasselet");
    o.function = "nope";
    CHECK_THROWS_WITH_AS(run_command(p, o), doctest::Contains("unknown function"), input_error);
    CommandOptions v = opts("volume");
    CHECK_THROWS_AS(run_command(p, v), input_error); // needs --function or --points
}

#include "doctest.h"

#include "sofft/error.hpp"
#include "sofft/problem.hpp"

#include <string>

using namespace sofft;

namespace {

const std::string header = R"(
[problem]
name = "t"
base = ["x", "y"]
fields = ["u"]
order = 2
params = ["q"]

[lagrangian]
L = "1/2*u[2,0]^2 - q*u"
)";

std::string fixture_path(const std::string& name) { return std::string(SOFFT_FIXTURE_DIR) + "/" + name; }

} // namespace

TEST_CASE("shipped fixtures load") {
    const auto plate = load_problem(fixture_path("plate.toml"));
    CHECK(plate.name == "plate");
    CHECK(plate.section_kind == "upsilon");
    CHECK(plate.problem.chart.m() == 2);
    CHECK(plate.values.at("q") == 3);
    REQUIRE(plate.section);
    CHECK(plate.section->images.size() == 7);

    const auto kdv = load_problem(fixture_path("kdv.toml"));
    CHECK(kdv.section_kind == "sigma");
    const auto g = kdv.effective_grid();
    REQUIRE(g.axes.size() == 2);
    CHECK(g.axes[0].count == 41);
    CHECK(g.axes[1].count == 11);
    CHECK(g.params.at("c") == 4);

    const auto fo = load_problem(fixture_path("firstorder.toml"));
    CHECK(fo.problem.chart.k() == 2);
    CHECK(fo.problem.L.str() == "1/2*u[0,1]^2 - 1/2*u[1,0]^2 - 1/2*u^2*k");
}

TEST_CASE("default grid") {
    const auto pf = parse_problem(header);
    const Grid g = pf.effective_grid();
    REQUIRE(g.axes.size() == 2);
    CHECK(g.axes[0].name == "x");
    CHECK(g.axes[0].min == -1);
    CHECK(g.axes[0].max == 1);
    CHECK(g.axes[0].count == 11);
    CHECK_FALSE(pf.section);
    CHECK_FALSE(pf.solution);
}

TEST_CASE("TOML syntax errors carry a location") {
    try {
        (void)parse_problem("[problem\nname = 1\n", "bad.toml");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).rfind("bad.toml:1:", 0) == 0);
    }
}

TEST_CASE("expression errors name the key") {
    try {
        (void)parse_problem(header + "[solution]\nu = \"x +* y\"\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("solution.u") != std::string::npos);
    }
}

TEST_CASE("rejected inputs") {
    CHECK_THROWS_AS((void)parse_problem("[lagrangian]\nL = \"u\"\n"), ParseError);
    CHECK_THROWS_AS((void)parse_problem(header + "[values]\nk = 1\n"), ParseError);
    CHECK_THROWS_AS((void)parse_problem(header + "[solution]\nu = \"u[1,0]\"\n"), ParseError);
    CHECK_THROWS_AS((void)parse_problem(header + "[solution]\nv = \"x\"\nu = \"x\"\n"), ParseError);
    CHECK_THROWS_AS((void)parse_problem(header + "[section]\nkind = \"other\"\n"), ParseError);
    CHECK_THROWS_AS((void)parse_problem(header + "[section]\nkind = \"sigma\"\n\"u[1,0]\" = \"0\"\n"), ParseError);
    CHECK_THROWS_AS((void)parse_problem(header + "[grid]\nx = [0, 1, 3]\n"), ParseError);
    CHECK_THROWS_AS((void)parse_problem(header + "[grid]\nx = [1, 0, 3]\ny = [0, 1, 3]\n"), PreconditionError);
    CHECK_THROWS_AS((void)load_problem("/nonexistent/file.toml"), PreconditionError);
}

TEST_CASE("order must be 1 or 2") {
    std::string text = header;
    text.replace(text.find("order = 2"), 9, "order = 3");
    CHECK_THROWS_AS((void)parse_problem(text), PreconditionError);
}

TEST_CASE("third-order Lagrangian is a precondition error") {
    std::string text = header;
    text.replace(text.find("u[2,0]^2"), 8, "u[3,0]^2");
    CHECK_THROWS((void)parse_problem(text));
}

TEST_CASE("first-order files are read on J1 and used on J2") {
    std::string text = header;
    text.replace(text.find("order = 2"), 9, "order = 1");
    CHECK_THROWS_AS((void)parse_problem(text), ParseError);
    text.replace(text.find("u[2,0]^2"), 8, "u[1,0]^2");
    const auto pf = parse_problem(text);
    CHECK(pf.problem.chart.k() == 2);
    CHECK(euler_lagrange(pf.problem).equations[0].residual.str() == "u[2,0] + q");
}

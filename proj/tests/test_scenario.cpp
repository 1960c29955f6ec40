#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "parmax/scenario.hpp"

using namespace parmax;

namespace {

const char* kGoodConfig = R"(
[scenario]
name = demo
description = small demo run
seed = 3

[grid]
n = 1
R = 1.0
T = 0.5
Nx = 21
Nt = 11

[operator]
family = constant
sigma = 1.0
b1 = 0.25
c = 0.5

[exponents]
p0 = 2
q0 = 2
p1 = 1
q1 = inf

[forcing]
kind = sine
value = 1.0

[checks]
run = degeneracy, verify_bound
)";

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() / ("parmax_test_" + tag);
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("scenario parsing: good config") {
    const Scenario s = parse_scenario_text(kGoodConfig);
    CHECK(s.name == "demo");
    CHECK(s.seed == 3);
    CHECK(s.nx == 21);
    CHECK(s.family == "constant");
    CHECK(s.family_params.at("b1") == doctest::Approx(0.25));
    CHECK(s.exponents0().p == Exponent::integer(2));
    REQUIRE(s.e1_list.size() == 1);
    CHECK(s.e1_list[0].q.is_infinite());
    CHECK(s.checks.size() == 2);
}

TEST_CASE("scenario parsing: errors name the offending key") {
    const auto expect_error_mentioning = [](const std::string& text, const std::string& needle) {
        try {
            (void)parse_scenario_text(text);
            FAIL_CHECK("expected a config error mentioning '" << needle << "'");
        } catch (const std::exception& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error_mentioning("[scenario]\nname = x\n[checks]\nrun = bogus\n", "bogus");
    expect_error_mentioning("[scenario]\nname = x\nwhat = 1\n[checks]\nrun = bony\n", "what");
    expect_error_mentioning("[grid]\nn = 1\n", "name");
    expect_error_mentioning(
        "[scenario]\nname = x\n[exponents]\np0 = 1\nq0 = 1\n[checks]\nrun = bony\n",
        "n/p + 1/q");
    expect_error_mentioning("[scenario]\nkey without equals\n", "key = value");
    expect_error_mentioning("[scenario]\nname = x\n[nosuch]\nq = 1\n[checks]\nrun = bony\n",
                            "nosuch");
}

TEST_CASE("malformed config produces no partial reports") {
    TempDir dir("malformed");
    CHECK_THROWS(parse_scenario_text("[scenario]\nname = broken\n"));
    CHECK(std::filesystem::is_empty(dir.path));
}

TEST_CASE("deterministic reports: identical scenario and seed give identical bytes") {
    const Scenario s = parse_scenario_text(kGoodConfig);
    TempDir a("det_a"), b("det_b");
    const auto ra = run_scenario(s, a.path.string());
    const auto rb = run_scenario(s, b.path.string());
    CHECK(ra.ok);
    CHECK(rb.ok);
    for (const auto& check : {"degeneracy", "verify_bound"}) {
        const auto fa = a.path / ("demo." + std::string(check) + ".json");
        const auto fb = b.path / ("demo." + std::string(check) + ".json");
        REQUIRE(std::filesystem::exists(fa));
        CHECK(slurp(fa.string()) == slurp(fb.string()));
    }
    // Summary CSV also byte-stable.
    CHECK(slurp((a.path / "demo.summary.csv").string()) ==
          slurp((b.path / "demo.summary.csv").string()));
}

TEST_CASE("forcing builders") {
    const Cylinder g(1, 1.0, 1.0, 11, 7);
    const auto neg = build_forcing(g, "nonpositive", 2.0, 0);
    CHECK(neg.max_value() <= 0.0);
    const auto r1 = build_forcing(g, "random_smooth", 1.0, 42);
    const auto r2 = build_forcing(g, "random_smooth", 1.0, 42);
    const auto r3 = build_forcing(g, "random_smooth", 1.0, 43);
    bool same = true, differs = false;
    for (std::size_t f = 0; f < g.node_count(); ++f) {
        same = same && r1.at_flat(f) == r2.at_flat(f);
        differs = differs || r1.at_flat(f) != r3.at_flat(f);
    }
    CHECK(same);
    CHECK(differs);
    CHECK_THROWS(build_forcing(g, "nope", 1.0, 0));
}

TEST_CASE("bundled scenarios parse and the baseline runs clean") {
    const std::string dir = PARMAX_SCENARIO_DIR;
    for (const auto& name :
         {"remark41_alpha2.scn", "remark41_alpha2_2d.scn", "remark41_alpha15.scn",
          "heat_baseline.scn", "rescale_negative_c.scn", "composite_barrier.scn",
          "bony_bump.scn"}) {
        const Scenario s = parse_scenario_file(dir + "/" + name);
        CHECK_FALSE(s.description.empty());
    }
    TempDir out("baseline");
    const Scenario s = parse_scenario_file(dir + "/heat_baseline.scn");
    const auto outcome = run_scenario(s, out.path.string());
    CHECK(outcome.ok);
    CHECK(std::filesystem::exists(out.path / "heat_baseline.verify_bound.json"));
    const std::string json = slurp((out.path / "heat_baseline.verify_bound.json").string());
    CHECK(json.find("\"lhs_sup\": 0.0") != std::string::npos);
}

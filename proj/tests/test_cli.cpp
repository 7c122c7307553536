// Copyright 2026 The Isochrone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "isochrone/cli.hpp"

using namespace isochrone;
using namespace isochrone::cli;

namespace {

std::vector<std::vector<double>> parse_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::stringstream ss(text);
    std::string line;
    std::getline(ss, line); // header
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("family grammar") {
    SUBCASE("case insensitive with parameters") {
        const Family f = make_family("Stillinger:Lambda=2,A=-1", 1.0);
        CHECK(f.canonical == "stillinger:lambda=2,a=-1");
        CHECK_FALSE(f.implicit);
    }
    SUBCASE("implicit entries are addressable") {
        CHECK(make_family("quintic", 1.0).implicit);
        CHECK(make_family("exp:rho=1", 1.0).implicit);
        CHECK(make_family("stillinger-f:lambda=1,a=1", 1.0).implicit);
        CHECK(make_family("dorignac-f:beta=1", 1.0).implicit);
        CHECK(make_family("quintic-circle", 1.0).implicit);
    }
    SUBCASE("json family specs are accepted") {
        const Family f = make_family(R"({"kind":"stillinger","lambda":1.0,"a":1.0})", 1.0);
        CHECK_FALSE(f.implicit);
        CHECK(f.h(1.0) == doctest::Approx(2.0 * std::sqrt(10.0) - 7.0).epsilon(1e-14));
        RunConfig cfg;
        cfg.command = Command::Sample;
        cfg.family = R"({"kind":"bogus"})";
        CHECK(run(cfg).exit_code == 2);
    }
    SUBCASE("unknown names and stray parameters rejected") {
        CHECK_THROWS_AS(make_family("nope", 1.0), std::invalid_argument);
        CHECK_THROWS_AS(make_family("harmonic:a=1", 1.0), std::invalid_argument);
        CHECK_THROWS_AS(make_family("rational:q=1", 1.0), std::invalid_argument);
        CHECK_THROWS_AS(make_family("stillinger:lambda", 1.0), std::invalid_argument);
    }
    SUBCASE("family parameter errors surface as exit 2 through run()") {
        RunConfig cfg;
        cfg.command = Command::Sample;
        cfg.family = "stillinger:lambda=-1";
        const CmdResult res = run(cfg);
        CHECK(res.exit_code == 2);
        CHECK(res.report["error"].get<std::string>().find("lambda") != std::string::npos);
    }
}

TEST_CASE("sample command") {
    SUBCASE("five quintic rows include the origin") {
        RunConfig cfg;
        cfg.command = Command::Sample;
        cfg.family = "quintic";
        cfg.range = {{-2.0, 2.0}};
        cfg.points = 5;
        const CmdResult res = run(cfg);
        REQUIRE(res.exit_code == 0);
        const auto rows = parse_csv(res.output);
        REQUIRE(rows.size() == 5);
        CHECK(rows[2][0] == 0.0);
        CHECK(rows[2][1] == 0.0); // h(0) = 0
    }
    SUBCASE("stillinger margin column is nonnegative") {
        RunConfig cfg;
        cfg.command = Command::Sample;
        cfg.family = "stillinger:lambda=1,a=1";
        cfg.range = {{-5.0, 5.0}};
        cfg.points = 101;
        const CmdResult res = run(cfg);
        REQUIRE(res.exit_code == 0);
        for (const auto& row : parse_csv(res.output))
            CHECK(row[4] >= -1e-12);
    }
    SUBCASE("lambert h column decreases down the rows") {
        RunConfig cfg;
        cfg.command = Command::Sample;
        cfg.family = "lambert:rho=1,a=1";
        cfg.range = {{-5.0, 5.0}};
        cfg.points = 51;
        const CmdResult res = run(cfg);
        REQUIRE(res.exit_code == 0);
        const auto rows = parse_csv(res.output);
        for (size_t i = 0; i + 1 < rows.size(); ++i)
            CHECK(rows[i + 1][1] < rows[i][1]);
    }
    SUBCASE("range outside the domain is a parameter error") {
        RunConfig cfg;
        cfg.command = Command::Sample;
        cfg.family = "rational:a=1"; // domain (-1, inf)
        cfg.range = {{-3.0, 3.0}};
        cfg.points = 11;
        const CmdResult res = run(cfg);
        CHECK(res.exit_code == 2);
        CHECK(res.report["error"].get<std::string>().find("domain") != std::string::npos);
    }
}

TEST_CASE("verify-involution command") {
    RunConfig cfg;
    cfg.command = Command::VerifyInvolution;
    cfg.family = "dorignac:beta=1";
    const CmdResult res = run(cfg);
    CHECK(res.exit_code == 0);
    CHECK(res.report["check"] == "involution");
    CHECK(res.report["pass"] == true);
    CHECK(res.report["max_defect"].get<double>() < 1e-9);
    CHECK(res.report["detail"].contains("slope_defect"));
}

TEST_CASE("verify-isochrony command") {
    SUBCASE("dorignac passes with default energies") {
        RunConfig cfg;
        cfg.command = Command::VerifyIsochrony;
        cfg.family = "dorignac:beta=1";
        const CmdResult res = run(cfg);
        CHECK(res.exit_code == 0);
        CHECK(res.report["pass"] == true);
        CHECK(res.report["max_defect"].get<double>() < 1e-6);
        CHECK(res.report["detail"]["rows"].size() == 11);
    }
    SUBCASE("harmonic is tight") {
        RunConfig cfg;
        cfg.command = Command::VerifyIsochrony;
        cfg.family = "harmonic";
        cfg.energies = {0.01, 1.0, 100.0};
        const CmdResult res = run(cfg);
        CHECK(res.exit_code == 0);
        CHECK(res.report["max_defect"].get<double>() < 1e-8);
    }
    SUBCASE("quartic control fails and names the first offending energy") {
        RunConfig cfg;
        cfg.command = Command::VerifyIsochrony;
        cfg.family = "quartic-control";
        cfg.energies = {0.5, 2.0};
        const CmdResult res = run(cfg);
        CHECK(res.exit_code == 1);
        CHECK(res.report["pass"] == false);
        CHECK(res.report["detail"]["first_failure"]["energy"].get<double>() == 0.5);
    }
}

TEST_CASE("verify-inequality and verify-necessary commands") {
    for (const char* fam : {"rational:a=1", "stillinger:lambda=1,a=1",
                            "dorignac:beta=1", "lambert:rho=1,a=1"}) {
        RunConfig cfg;
        cfg.command = Command::VerifyInequality;
        cfg.family = fam;
        CAPTURE(fam);
        CHECK(run(cfg).exit_code == 0);
        cfg.command = Command::VerifyNecessary;
        CHECK(run(cfg).exit_code == 0);
    }
    RunConfig cfg;
    cfg.command = Command::VerifyNecessary;
    cfg.family = "quartic-control";
    const CmdResult res = run(cfg);
    CHECK(res.exit_code == 1);
    CHECK(res.report["detail"]["v4_residual"].get<double>() > 1.0);
}

TEST_CASE("compare-gcmp command") {
    SUBCASE("b = 2, c = 1.25 reduces to stillinger lambda = 0.25, a = 1") {
        RunConfig cfg;
        cfg.command = Command::CompareGcmp;
        cfg.b = 2.0;
        cfg.c = 1.25;
        const CmdResult res = run(cfg);
        CHECK(res.exit_code == 0);
        CHECK(res.report["params"]["lambda"].get<double>() == doctest::Approx(0.25));
        CHECK(res.report["params"]["a"].get<double>() == doctest::Approx(1.0));
    }
    SUBCASE("b = 0 is linear for any omega") {
        RunConfig cfg;
        cfg.command = Command::CompareGcmp;
        cfg.b = 0.0;
        cfg.c = 1.0;
        cfg.omega = 3.0;
        CHECK(run(cfg).exit_code == 0);
    }
    SUBCASE("degenerate b^2 = 4c rejected with the condition named") {
        RunConfig cfg;
        cfg.command = Command::CompareGcmp;
        cfg.b = 2.0;
        cfg.c = 1.0;
        const CmdResult res = run(cfg);
        CHECK(res.exit_code == 2);
        CHECK(res.report["error"].get<std::string>().find("b^2 - 4c") != std::string::npos);
    }
}

TEST_CASE("export command emits the potential table") {
    RunConfig cfg;
    cfg.command = Command::Export;
    cfg.family = "dorignac:beta=1";
    cfg.range = {{-2.0, 2.0}};
    cfg.points = 21;
    const CmdResult res = run(cfg);
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.rfind("x,V,g,margin\n", 0) == 0);
    CHECK(parse_csv(res.output).size() == 21);
}

TEST_CASE("identical configs give byte-identical output") {
    RunConfig cfg;
    cfg.command = Command::Sample;
    cfg.family = "exp:rho=1";
    cfg.range = {{-3.0, 3.0}};
    cfg.points = 101;
    const CmdResult a = run(cfg);
    const CmdResult b = run(cfg);
    CHECK(a.output == b.output);

    cfg.command = Command::VerifyIsochrony;
    cfg.family = "stillinger:lambda=1,a=1";
    cfg.energies = {0.1, 1.0, 10.0};
    const CmdResult c = run(cfg);
    const CmdResult d = run(cfg);
    CHECK(c.output == d.output);
}

#ifdef ISOCHRONE_CLI_PATH
TEST_CASE("binary smoke test: determinism and exit codes") {
    const std::string bin = ISOCHRONE_CLI_PATH;
    const std::string out1 = "/tmp/isochrone_cli_test_1.csv";
    const std::string out2 = "/tmp/isochrone_cli_test_2.csv";
    const std::string cmd = bin +
        " sample --family quintic --range -2:2 --points 41 --output ";
    REQUIRE(std::system((cmd + out1).c_str()) == 0);
    REQUIRE(std::system((cmd + out2).c_str()) == 0);
    const std::string s1 = slurp(out1), s2 = slurp(out2);
    CHECK_FALSE(s1.empty());
    CHECK(s1 == s2);

    // exit 1 for a failed check, exit 2 for a bad family
    const int fail = std::system((bin +
        " verify-isochrony --family quartic-control --energies 1 --output /dev/null").c_str());
    CHECK(WEXITSTATUS(fail) == 1);
    const int usage = std::system((bin + " sample --family nope --output /dev/null 2>/dev/null").c_str());
    CHECK(WEXITSTATUS(usage) == 2);
}
#endif

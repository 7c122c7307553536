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

#ifndef ISOCHRONE_CLI_HPP
#define ISOCHRONE_CLI_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "isochrone/involution.hpp"
#include "isochrone/potential.hpp"

namespace isochrone::cli {

enum class Command {
    List,
    Sample,
    VerifyInvolution,
    VerifyIsochrony,
    VerifyInequality,
    VerifyNecessary,
    CompareGcmp,
    Export,
};

enum class Format { Csv, Json };

struct RunConfig {
    Command command = Command::List;
    std::string family;
    double omega = 1.0;
    std::optional<std::pair<double, double>> range; // lo:hi
    int points = 1001;
    std::vector<double> energies;                   // empty -> logspace(1e-2, 1e2, 11)
    std::optional<double> tolerance;                // per-command default when absent
    double ode_tol = 1e-10;
    Format format = Format::Csv;
    double b = 0.0, c = 0.0;                        // compare-gcmp parameters
    int threads = -1;                               // -1: use ISOCHRONE_THREADS (0 = auto)
};

/// Exit codes: 0 = pass, 1 = check failed, 2 = usage/parameter error.
struct CmdResult {
    int exit_code = 0;
    std::string output;     ///< what goes to the output target (CSV table or JSON text)
    nlohmann::json report;  ///< structured report for verify/compare commands
};

/// Family addressing grammar: name[:key=val,...], case-insensitive. Closed
/// forms: harmonic, rational:a=, stillinger:lambda=,a=, dorignac:beta=,
/// lambert:rho=,a=. Implicit catalog: quintic, quintic-circle, exp:rho=,
/// stillinger-f:lambda=,a=, dorignac-f:beta=. Control: quartic-control.
struct Family {
    std::string canonical;
    bool implicit = false;
    Involution h;
    Potential potential;
};

Family make_family(const std::string& spec, double omega);

/// Names accepted by make_family.
std::vector<std::string> family_names();

CmdResult run(const RunConfig& cfg); // dispatch on cfg.command; maps errors to exit 2

CmdResult cmd_list(const RunConfig& cfg);
CmdResult cmd_sample(const RunConfig& cfg);
CmdResult cmd_verify_involution(const RunConfig& cfg);
CmdResult cmd_verify_isochrony(const RunConfig& cfg);
CmdResult cmd_verify_inequality(const RunConfig& cfg);
CmdResult cmd_verify_necessary(const RunConfig& cfg);
CmdResult cmd_compare_gcmp(const RunConfig& cfg);
CmdResult cmd_export(const RunConfig& cfg);

/// Full command line: parse argv, run, write the output target. Returns the
/// process exit code.
int main_impl(int argc, const char* const* argv);

} // namespace isochrone::cli

#endif

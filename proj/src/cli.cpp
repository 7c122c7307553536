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

#include "isochrone/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "isochrone/dynamics.hpp"
#include "isochrone/families.hpp"
#include "isochrone/implicit.hpp"
#include "isochrone/numerics.hpp"

namespace isochrone::cli {

namespace {

using numerics::format_double;

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double to_double(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument("cannot parse " + what + " '" + s + "' as a number");
    }
}

std::map<std::string, double> parse_params(const std::string& text) {
    std::map<std::string, double> params;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("family parameter '" + item + "' is not key=value");
        params[lower(item.substr(0, eq))] = to_double(item.substr(eq + 1), "parameter");
    }
    return params;
}

double take(std::map<std::string, double>& params, const std::string& key, double fallback) {
    const auto it = params.find(key);
    if (it == params.end()) return fallback;
    const double v = it->second;
    params.erase(it);
    return v;
}

void reject_leftovers(const std::map<std::string, double>& params, const std::string& family) {
    if (!params.empty())
        throw std::invalid_argument("family '" + family + "' does not take parameter '" +
                                    params.begin()->first + "'");
}

int resolve_threads(const RunConfig& cfg) {
    if (cfg.threads >= 0) return cfg.threads;
    if (const char* env = std::getenv("ISOCHRONE_THREADS")) {
        try {
            return std::max(0, std::stoi(env));
        } catch (...) {
            return 0;
        }
    }
    return 0;
}

std::vector<double> grid_for(const Family& fam, const RunConfig& cfg) {
    if (cfg.range)
        return numerics::chebyshev_points(cfg.range->first, cfg.range->second, cfg.points);
    return numerics::default_grid(fam.h.domain(), cfg.points);
}

std::pair<double, double> sample_range(const Family& fam, const RunConfig& cfg) {
    if (cfg.range) return *cfg.range;
    const Interval& J = fam.h.domain();
    const double cap = 5.0;
    const double a_raw = J.finite_lo() ? J.lo() : -cap;
    const double b_raw = J.finite_hi() ? J.hi() : cap;
    const double width = b_raw - a_raw;
    return {J.finite_lo() ? J.lo() + 0.01 * width : a_raw,
            J.finite_hi() ? J.hi() - 0.01 * width : b_raw};
}

nlohmann::json base_report(const std::string& check, nlohmann::json params) {
    nlohmann::json j;
    j["check"] = check;
    j["params"] = std::move(params);
    j["max_defect"] = 0.0;
    j["pass"] = false;
    return j;
}

std::string csv_row(std::initializer_list<double> values) {
    std::string row;
    bool first = true;
    for (double v : values) {
        if (!first) row += ',';
        row += format_double(v);
        first = false;
    }
    row += '\n';
    return row;
}

/// Largest admissible sweep energy for domains with a finite wall: cap so
/// turning points stay ~1e-3 (relative) away from the wall.
double energy_cap(const Potential& p) {
    const Interval& J = p.domain();
    double cap = std::numeric_limits<double>::infinity();
    if (J.finite_lo()) cap = std::min(cap, p.V(J.lo() + 1e-3 * std::fabs(J.lo())));
    if (J.finite_hi()) cap = std::min(cap, p.V(J.hi() - 1e-3 * std::fabs(J.hi())));
    return 0.99 * cap;
}

} // namespace

std::vector<std::string> family_names() {
    return {"harmonic",  "rational",    "stillinger",    "dorignac",   "lambert",
            "quintic",   "quintic-circle", "exp",        "stillinger-f", "dorignac-f",
            "quartic-control"};
}

Family make_family(const std::string& spec, double omega) {
    auto closed = [&](Involution h, Potential pot, std::string canonical) {
        return Family{std::move(canonical), false, std::move(h), std::move(pot)};
    };

    // JSON family specs are accepted verbatim, e.g. {"kind":"stillinger","lambda":1,"a":1}
    if (!spec.empty() && spec.front() == '{') {
        const FamilySpec fs = FamilySpec::from_json(nlohmann::json::parse(spec));
        Involution h = make_involution(fs);
        std::string canonical = fs.to_json().dump();
        switch (fs.kind) {
            case FamilySpec::Kind::Rational:
                return closed(std::move(h), rational_potential(fs.a, omega), canonical);
            case FamilySpec::Kind::Stillinger:
                return closed(std::move(h), stillinger_potential(fs.lambda, fs.a, omega),
                              canonical);
            case FamilySpec::Kind::Dorignac:
                return closed(std::move(h), dorignac_potential(fs.beta, omega), canonical);
            case FamilySpec::Kind::LambertExp:
                return closed(std::move(h), lambert_potential(fs.rho, fs.a, omega), canonical);
        }
    }

    const auto colon = spec.find(':');
    const std::string name = lower(colon == std::string::npos ? spec : spec.substr(0, colon));
    auto params = colon == std::string::npos ? std::map<std::string, double>{}
                                             : parse_params(spec.substr(colon + 1));
    auto implicit = [&](SymmetricImplicit f, std::string canonical) {
        Involution h = implicit_involution(f);
        Potential pot = potential_from_involution(h, omega);
        return Family{std::move(canonical), true, std::move(h), std::move(pot)};
    };

    if (name == "harmonic") {
        reject_leftovers(params, name);
        return closed(rational_involution(0.0), harmonic_potential(omega), "harmonic");
    }
    if (name == "rational") {
        const double a = take(params, "a", 1.0);
        reject_leftovers(params, name);
        return closed(rational_involution(a), rational_potential(a, omega),
                      "rational:a=" + format_double(a));
    }
    if (name == "stillinger") {
        const double lambda = take(params, "lambda", 1.0);
        const double a = take(params, "a", 1.0);
        reject_leftovers(params, name);
        return closed(stillinger_involution(lambda, a), stillinger_potential(lambda, a, omega),
                      "stillinger:lambda=" + format_double(lambda) + ",a=" + format_double(a));
    }
    if (name == "dorignac") {
        const double beta = take(params, "beta", 1.0);
        reject_leftovers(params, name);
        return closed(dorignac_involution(beta), dorignac_potential(beta, omega),
                      "dorignac:beta=" + format_double(beta));
    }
    if (name == "lambert") {
        const double rho = take(params, "rho", 1.0);
        const double a = take(params, "a", 1.0);
        reject_leftovers(params, name);
        return closed(lambert_involution(rho, a), lambert_potential(rho, a, omega),
                      "lambert:rho=" + format_double(rho) + ",a=" + format_double(a));
    }
    if (name == "quartic-control") {
        reject_leftovers(params, name);
        Potential pot = quartic_control(omega);
        Involution h = pot.involution();
        return Family{"quartic-control", false, std::move(h), std::move(pot)};
    }
    if (name == "quintic") {
        reject_leftovers(params, name);
        return implicit(quintic_f(), "quintic");
    }
    if (name == "quintic-circle") {
        reject_leftovers(params, name);
        return implicit(quintic_circle_f(), "quintic-circle");
    }
    if (name == "exp") {
        const double rho = take(params, "rho", 1.0);
        reject_leftovers(params, name);
        return implicit(exponential_f(rho), "exp:rho=" + format_double(rho));
    }
    if (name == "stillinger-f") {
        const double lambda = take(params, "lambda", 1.0);
        const double a = take(params, "a", 1.0);
        reject_leftovers(params, name);
        return implicit(stillinger_quadratic_f(lambda, a),
                        "stillinger-f:lambda=" + format_double(lambda) + ",a=" + format_double(a));
    }
    if (name == "dorignac-f") {
        const double beta = take(params, "beta", 1.0);
        reject_leftovers(params, name);
        return implicit(dorignac_f(beta), "dorignac-f:beta=" + format_double(beta));
    }
    throw std::invalid_argument("unknown family '" + name + "'; see the list command");
}

CmdResult cmd_list(const RunConfig& cfg) {
    CmdResult res;
    nlohmann::json j;
    j["families"] = family_names();
    j["grammar"] = "name[:key=val,...] (case-insensitive)";
    if (cfg.format == Format::Json) {
        res.output = j.dump(2) + "\n";
    } else {
        for (const auto& n : family_names()) res.output += n + "\n";
    }
    res.report = std::move(j);
    return res;
}

CmdResult cmd_sample(const RunConfig& cfg) {
    CmdResult res;
    const Family fam = make_family(cfg.family, cfg.omega);
    if (cfg.points < 2) throw std::invalid_argument("sample: require points >= 2");
    const auto [lo, hi] = sample_range(fam, cfg);
    if (!(lo < hi)) throw std::invalid_argument("sample: require range lo < hi");
    const double w2_8 = 0.125 * cfg.omega * cfg.omega;

    nlohmann::json rows = nlohmann::json::array();
    std::string csv = "x,h,V,g,margin\n";
    for (int i = 0; i < cfg.points; ++i) {
        const double x = lo + (hi - lo) * i / (cfg.points - 1.0);
        const double hx = fam.h(x);
        const double V = fam.potential.V(x);
        const double g = fam.potential.g(x);
        const double margin = V - w2_8 * x * x;
        csv += csv_row({x, hx, V, g, margin});
        rows.push_back({x, hx, V, g, margin});
    }
    nlohmann::json j;
    j["family"] = fam.canonical;
    j["omega"] = cfg.omega;
    j["columns"] = {"x", "h", "V", "g", "margin"};
    j["rows"] = std::move(rows);
    res.output = cfg.format == Format::Json ? j.dump(2) + "\n" : csv;
    res.report = std::move(j);
    return res;
}

CmdResult cmd_verify_involution(const RunConfig& cfg) {
    CmdResult res;
    const Family fam = make_family(cfg.family, cfg.omega);
    const auto grid = grid_for(fam, cfg);
    const InvolutionCheck rep = check_involution(fam.h, grid);
    const double tol = cfg.tolerance.value_or(fam.implicit ? 1e-7 : 1e-9);

    const bool pass = rep.max_identity_defect <= tol && rep.origin_defect <= 1e-12 &&
                      rep.slope_defect <= 1e-5 && rep.max_monotonicity_violation == 0.0;
    nlohmann::json j = base_report("involution", {{"family", fam.canonical},
                                                  {"points", cfg.points},
                                                  {"tolerance", tol}});
    j["max_defect"] = rep.max_identity_defect;
    j["pass"] = pass;
    j["detail"] = {{"max_identity_defect", rep.max_identity_defect},
                   {"max_monotonicity_violation", rep.max_monotonicity_violation},
                   {"origin_defect", rep.origin_defect},
                   {"slope_defect", rep.slope_defect}};
    if (!pass)
        j["detail"]["first_failure"] = {{"x", rep.worst_identity_x},
                                        {"identity_defect", rep.max_identity_defect}};
    res.exit_code = pass ? 0 : 1;
    res.output = j.dump(2) + "\n";
    res.report = std::move(j);
    return res;
}

CmdResult cmd_verify_isochrony(const RunConfig& cfg) {
    CmdResult res;
    const Family fam = make_family(cfg.family, cfg.omega);
    const double tol = cfg.tolerance.value_or(1e-6);
    std::vector<double> energies =
        cfg.energies.empty() ? numerics::logspace(1e-2, 1e2, 11) : cfg.energies;
    const double cap = energy_cap(fam.potential);
    size_t skipped = 0;
    if (std::isfinite(cap)) {
        const auto end = std::remove_if(energies.begin(), energies.end(),
                                        [cap](double e) { return e > cap; });
        skipped = std::distance(end, energies.end());
        energies.erase(end, energies.end());
    }
    if (energies.empty())
        throw std::invalid_argument("verify-isochrony: no admissible energies (domain cap " +
                                    format_double(cap) + ")");

    const SweepResult sweep =
        isochrony_sweep(fam.potential, energies, cfg.ode_tol, resolve_threads(cfg));

    const bool pass = sweep.summary.failures == 0 &&
                      sweep.summary.max_rel_period_deviation <= tol;
    nlohmann::json j = base_report("isochrony", {{"family", fam.canonical},
                                                 {"omega", cfg.omega},
                                                 {"tolerance", tol},
                                                 {"ode_tol", cfg.ode_tol}});
    j["max_defect"] = sweep.summary.max_rel_period_deviation;
    j["pass"] = pass;

    nlohmann::json rows = nlohmann::json::array();
    std::string csv =
        "energy,x_minus,x_plus,T_quadrature,T_ode,T_expected,rel_deviation,energy_drift\n";
    nlohmann::json first_failure;
    for (const auto& r : sweep.reports) {
        if (!r.ok()) {
            if (first_failure.is_null())
                first_failure = {{"energy", r.energy}, {"error", r.error}};
            rows.push_back({{"energy", r.energy}, {"error", r.error}});
            continue;
        }
        const double dev = r.rel_deviation();
        if (first_failure.is_null() && dev > tol)
            first_failure = {{"energy", r.energy}, {"rel_deviation", dev}};
        csv += csv_row({r.energy, r.x_minus, r.x_plus, r.T_quadrature, r.T_ode, r.T_expected,
                        dev, r.max_energy_drift});
        rows.push_back({{"energy", r.energy},
                        {"x_minus", r.x_minus},
                        {"x_plus", r.x_plus},
                        {"T_quadrature", r.T_quadrature},
                        {"T_ode", r.T_ode},
                        {"T_expected", r.T_expected},
                        {"rel_deviation", dev},
                        {"energy_drift", r.max_energy_drift}});
    }
    j["detail"] = {{"rows", std::move(rows)},
                   {"failures", sweep.summary.failures},
                   {"energies_skipped_by_domain_cap", skipped}};
    if (!first_failure.is_null()) j["detail"]["first_failure"] = first_failure;

    res.exit_code = pass ? 0 : 1;
    res.output = cfg.format == Format::Json ? j.dump(2) + "\n" : csv;
    res.report = std::move(j);
    return res;
}

CmdResult cmd_verify_inequality(const RunConfig& cfg) {
    CmdResult res;
    const Family fam = make_family(cfg.family, cfg.omega);
    const auto grid = grid_for(fam, cfg);
    const InequalityReport rep = check_global_inequality(fam.potential, grid);

    const bool pass = rep.violations.empty();
    nlohmann::json j = base_report("inequality", {{"family", fam.canonical},
                                                  {"omega", cfg.omega},
                                                  {"points", cfg.points}});
    j["max_defect"] = std::max(0.0, -rep.min_margin);
    j["pass"] = pass;
    j["detail"] = {{"min_margin", rep.min_margin},
                   {"min_margin_x", rep.min_margin_x},
                   {"violations", rep.violations.size()}};
    if (!pass)
        j["detail"]["first_failure"] = {{"x", rep.violations.front().x},
                                        {"margin", rep.violations.front().margin}};
    res.exit_code = pass ? 0 : 1;
    res.output = j.dump(2) + "\n";
    res.report = std::move(j);
    return res;
}

CmdResult cmd_verify_necessary(const RunConfig& cfg) {
    CmdResult res;
    const Family fam = make_family(cfg.family, cfg.omega);
    const double tol = cfg.tolerance.value_or(1e-4);
    const NecessaryConditionsReport rep = check_necessary_conditions(fam.potential);

    const double worst = std::max(rep.v4_residual, rep.v6_residual);
    const bool pass = worst < tol;
    nlohmann::json j = base_report("necessary-conditions", {{"family", fam.canonical},
                                                            {"omega", cfg.omega},
                                                            {"tolerance", tol}});
    j["max_defect"] = worst;
    j["pass"] = pass;
    j["detail"] = {{"v4_residual", rep.v4_residual},
                   {"v6_residual", rep.v6_residual},
                   {"derivatives", rep.derivatives},
                   {"fit_residual", rep.fit_residual},
                   {"conditioning_warning", rep.conditioning_warning}};
    res.exit_code = pass ? 0 : 1;
    res.output = j.dump(2) + "\n";
    res.report = std::move(j);
    return res;
}

CmdResult cmd_compare_gcmp(const RunConfig& cfg) {
    CmdResult res;
    // g_cmp validates the globality condition b^2 - 4c < 0 and throws
    const auto g1 = g_cmp(cfg.omega, cfg.b, cfg.c);
    const double lambda = cfg.c - 0.25 * cfg.b * cfg.b;
    const double a = 0.5 * cfg.b;
    const Potential still = stillinger_potential(lambda, a, cfg.omega);

    const auto range = cfg.range.value_or(std::make_pair(-10.0, 10.0));
    const auto grid = numerics::chebyshev_points(range.first, range.second, cfg.points);
    double max_diff = 0.0, max_g = 0.0, worst_x = 0.0;
    for (double x : grid) {
        const double ga = g1(x), gb = still.g(x);
        const double diff = std::fabs(ga - gb);
        if (diff > max_diff) {
            max_diff = diff;
            worst_x = x;
        }
        max_g = std::max(max_g, std::fabs(gb));
    }
    const double threshold = 1e-9 * (1.0 + max_g);
    const bool pass = max_diff < threshold;

    nlohmann::json j = base_report("compare-gcmp", {{"b", cfg.b},
                                                    {"c", cfg.c},
                                                    {"omega", cfg.omega},
                                                    {"lambda", lambda},
                                                    {"a", a}});
    j["max_defect"] = max_diff;
    j["pass"] = pass;
    j["detail"] = {{"threshold", threshold}, {"max_abs_g", max_g}};
    if (!pass) j["detail"]["first_failure"] = {{"x", worst_x}, {"abs_difference", max_diff}};
    res.exit_code = pass ? 0 : 1;
    res.output = j.dump(2) + "\n";
    res.report = std::move(j);
    return res;
}

CmdResult cmd_export(const RunConfig& cfg) {
    CmdResult res;
    const Family fam = make_family(cfg.family, cfg.omega);
    if (cfg.points < 2) throw std::invalid_argument("export: require points >= 2");
    const auto [lo, hi] = sample_range(fam, cfg);
    const double w2_8 = 0.125 * cfg.omega * cfg.omega;

    nlohmann::json rows = nlohmann::json::array();
    std::string csv = "x,V,g,margin\n";
    for (int i = 0; i < cfg.points; ++i) {
        const double x = lo + (hi - lo) * i / (cfg.points - 1.0);
        const double V = fam.potential.V(x);
        const double g = fam.potential.g(x);
        csv += csv_row({x, V, g, V - w2_8 * x * x});
        rows.push_back({x, V, g, V - w2_8 * x * x});
    }
    nlohmann::json j;
    j["family"] = fam.canonical;
    j["omega"] = cfg.omega;
    j["columns"] = {"x", "V", "g", "margin"};
    j["rows"] = std::move(rows);
    res.output = cfg.format == Format::Json ? j.dump(2) + "\n" : csv;
    res.report = std::move(j);
    return res;
}

CmdResult run(const RunConfig& cfg) {
    try {
        switch (cfg.command) {
            case Command::List:             return cmd_list(cfg);
            case Command::Sample:           return cmd_sample(cfg);
            case Command::VerifyInvolution: return cmd_verify_involution(cfg);
            case Command::VerifyIsochrony:  return cmd_verify_isochrony(cfg);
            case Command::VerifyInequality: return cmd_verify_inequality(cfg);
            case Command::VerifyNecessary:  return cmd_verify_necessary(cfg);
            case Command::CompareGcmp:      return cmd_compare_gcmp(cfg);
            case Command::Export:           return cmd_export(cfg);
        }
        throw std::logic_error("unknown command");
    } catch (const std::exception& e) {
        CmdResult res;
        res.exit_code = 2;
        nlohmann::json j;
        j["error"] = e.what();
        res.report = j;
        res.output = j.dump(2) + "\n";
        return res;
    }
}

int main_impl(int argc, const char* const* argv) {
    CLI::App app{"isochronous potentials from involutions: construct, sample, verify"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string range_text, energies_text, format_text = "csv", output_path;
    double tolerance_in = 0.0;
    bool tolerance_set = false;

    auto add_common = [&](CLI::App* sub, bool with_family) {
        if (with_family)
            sub->add_option("--family,-f", cfg.family, "family spec, name[:key=val,...]")
                ->required();
        sub->add_option("--omega,-w", cfg.omega, "angular frequency (default 1)");
        sub->add_option("--range,-r", range_text, "evaluation range lo:hi");
        sub->add_option("--points,-n", cfg.points, "grid size (default 1001)");
        sub->add_option_function<double>(
               "--tolerance,-t", [&](double v) { tolerance_in = v; tolerance_set = true; },
               "pass/fail tolerance (per-command default)");
        sub->add_option("--format", format_text, "csv or json");
        sub->add_option("--output,-o", output_path, "output file (default stdout)");
        sub->add_option("--threads", cfg.threads, "sweep parallelism (0 = auto)");
    };

    auto* list = app.add_subcommand("list", "list builtin families and catalog entries");
    add_common(list, false);
    auto* sample = app.add_subcommand("sample", "tabulate x, h, V, g, margin");
    add_common(sample, true);
    auto* vinv = app.add_subcommand("verify-involution", "audit h(h(x)) = x and friends");
    add_common(vinv, true);
    auto* viso = app.add_subcommand("verify-isochrony",
                                    "compare orbit periods against 2*pi/omega");
    add_common(viso, true);
    viso->add_option("--energies,-E", energies_text,
                     "energy list 'a,b,c' or logspace 'lo:hi:n' (default 1e-2:1e2:11)");
    viso->add_option("--ode-tol", cfg.ode_tol, "ODE oracle local tolerance (default 1e-10)");
    auto* vineq = app.add_subcommand("verify-inequality",
                                     "check V(x) >= omega^2 x^2 / 8 on a grid");
    add_common(vineq, true);
    auto* vnec = app.add_subcommand("verify-necessary",
                                    "check the local derivative identities at 0");
    add_common(vnec, true);
    auto* gcmp = app.add_subcommand("compare-gcmp",
                                    "compare the (b, c) force law with its stillinger form");
    add_common(gcmp, false);
    gcmp->add_option("--b", cfg.b, "parameter b")->required();
    gcmp->add_option("--c", cfg.c, "parameter c")->required();
    auto* exp_cmd = app.add_subcommand("export", "write potential samples x, V, g, margin");
    add_common(exp_cmd, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (list->parsed()) cfg.command = Command::List;
        if (sample->parsed()) cfg.command = Command::Sample;
        if (vinv->parsed()) cfg.command = Command::VerifyInvolution;
        if (viso->parsed()) cfg.command = Command::VerifyIsochrony;
        if (vineq->parsed()) cfg.command = Command::VerifyInequality;
        if (vnec->parsed()) cfg.command = Command::VerifyNecessary;
        if (gcmp->parsed()) cfg.command = Command::CompareGcmp;
        if (exp_cmd->parsed()) cfg.command = Command::Export;

        if (tolerance_set) {
            if (!(tolerance_in > 0.0))
                throw std::invalid_argument("tolerance must be > 0");
            cfg.tolerance = tolerance_in;
        }
        if (cfg.points < 2) throw std::invalid_argument("points must be >= 2");
        const std::string fmt = lower(format_text);
        if (fmt == "csv") cfg.format = Format::Csv;
        else if (fmt == "json") cfg.format = Format::Json;
        else throw std::invalid_argument("format must be csv or json");

        if (!range_text.empty()) {
            const auto colon = range_text.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("range must be lo:hi");
            cfg.range = {to_double(range_text.substr(0, colon), "range lo"),
                         to_double(range_text.substr(colon + 1), "range hi")};
            if (!(cfg.range->first < cfg.range->second))
                throw std::invalid_argument("range requires lo < hi");
        }
        if (!energies_text.empty()) {
            if (energies_text.find(',') != std::string::npos) {
                std::stringstream ss(energies_text);
                std::string item;
                while (std::getline(ss, item, ','))
                    cfg.energies.push_back(to_double(item, "energy"));
            } else if (std::count(energies_text.begin(), energies_text.end(), ':') == 2) {
                const auto c1 = energies_text.find(':');
                const auto c2 = energies_text.find(':', c1 + 1);
                cfg.energies = numerics::logspace(
                    to_double(energies_text.substr(0, c1), "energy lo"),
                    to_double(energies_text.substr(c1 + 1, c2 - c1 - 1), "energy hi"),
                    static_cast<int>(to_double(energies_text.substr(c2 + 1), "energy count")));
            } else {
                cfg.energies.push_back(to_double(energies_text, "energy"));
            }
            for (double e : cfg.energies)
                if (!(e > 0.0)) throw std::invalid_argument("energies must be > 0");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const CmdResult res = run(cfg);

    if (output_path.empty() || output_path == "-") {
        std::cout << res.output;
    } else {
        std::ofstream out(output_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output file '" << output_path << "'\n";
            return 2;
        }
        out << res.output;
    }
    if (res.exit_code != 0 && res.report.is_object()) {
        if (res.report.contains("error"))
            std::cerr << "error: " << res.report["error"].get<std::string>() << "\n";
        else if (res.report.contains("detail") && res.report["detail"].contains("first_failure"))
            std::cerr << "check failed: first offending point "
                      << res.report["detail"]["first_failure"].dump() << "\n";
        else
            std::cerr << "check failed\n";
    }
    return res.exit_code;
}

} // namespace isochrone::cli

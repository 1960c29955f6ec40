// Command line front end: scenario runner plus direct subcommands for
// solving, norm queries, bound verification and the barrier/counterexample
// studies. Reports are JSON (byte-stable per scenario + seed) and CSV.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "parmax/estimates.hpp"
#include "parmax/io.hpp"
#include "parmax/mixed_norm.hpp"
#include "parmax/scenario.hpp"
#include "parmax/solver.hpp"

namespace {

using parmax::Scenario;

std::string resolve_out_dir(const std::string& flag_value) {
    std::string dir = flag_value.empty() ? parmax::default_output_dir() : flag_value;
    std::filesystem::create_directories(dir);
    return dir;
}

void print_outcome(const Scenario& s, const parmax::ScenarioOutcome& outcome) {
    for (const auto& check : outcome.checks) {
        std::printf("[%s] %-14s %s%s%s\n", s.name.c_str(), check.check.c_str(),
                    check.pass ? "pass" : "FAIL",
                    check.hypotheses_valid ? "" : " (hypotheses violated, informational)",
                    check.detail.empty() ? "" : ("  " + check.detail).c_str());
    }
    for (const auto& file : outcome.written_files) std::printf("  wrote %s\n", file.c_str());
}

Scenario load_scenario(const std::string& path, int nx_override, int nt_override) {
    Scenario s = parmax::parse_scenario_file(path);
    if (nx_override > 0) s.nx = nx_override;
    if (nt_override > 0) s.nt = nt_override;
    return s;
}

int run_single_check(const std::string& path, const std::string& check,
                     const std::string& out_flag, int nx, int nt) {
    Scenario s = load_scenario(path, nx, nt);
    s.checks = {check};
    const auto outcome = parmax::run_scenario(s, resolve_out_dir(out_flag));
    print_outcome(s, outcome);
    return outcome.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parmax: maximum-principle estimates for parabolic operators on desk-scale grids"};
    app.require_subcommand(1);

    std::string out_dir_flag;
    app.add_option("--out", out_dir_flag, "Output directory (default $PARMAX_OUTPUT_DIR or '.')");

    // ---- solve ----
    auto* solve_cmd = app.add_subcommand("solve", "Solve Lu = f and write the solution CSV");
    std::string solve_scenario, solve_family, solve_forcing, solve_drift, solve_name;
    std::vector<std::string> solve_params;
    int solve_nx = 0, solve_nt = 0, solve_dim = 1;
    double solve_R = 1.0, solve_T = 1.0, solve_theta = 1.0, solve_fvalue = 1.0;
    solve_cmd->add_option("--scenario", solve_scenario, "Scenario file (flags override)");
    solve_cmd->add_option("--family", solve_family,
                          "Coefficient family (heat, constant, singular_drift, anisotropic, composite)");
    solve_cmd->add_option("--param", solve_params, "Family parameter key=value (repeatable)");
    solve_cmd->add_option("--n", solve_dim, "Spatial dimension (1 or 2)");
    solve_cmd->add_option("--R", solve_R, "Spatial radius");
    solve_cmd->add_option("--T", solve_T, "Final time");
    solve_cmd->add_option("--nx", solve_nx, "Spatial node count per axis");
    solve_cmd->add_option("--nt", solve_nt, "Time level count");
    solve_cmd->add_option("--theta", solve_theta, "Implicitness parameter in [0,1]");
    solve_cmd->add_option("--drift", solve_drift, "upwind | central");
    solve_cmd->add_option("--forcing", solve_forcing, "Forcing kind");
    solve_cmd->add_option("--forcing-value", solve_fvalue, "Forcing amplitude");
    solve_cmd->add_option("--name", solve_name, "Run name for output files");
    solve_cmd->callback([&]() {
        Scenario s;
        if (!solve_scenario.empty()) {
            s = load_scenario(solve_scenario, solve_nx, solve_nt);
        } else {
            if (solve_family.empty())
                throw CLI::ValidationError("solve needs --scenario or --family");
            s.name = solve_name.empty() ? "solve_run" : solve_name;
            s.checks = {"norms"};
            s.dim = solve_dim;
            s.radius = solve_R;
            s.final_time = solve_T;
            if (solve_nx > 0) s.nx = solve_nx;
            if (solve_nt > 0) s.nt = solve_nt;
        }
        if (!solve_family.empty()) {
            s.family = solve_family;
            s.family_params.clear();
            for (const auto& kv : solve_params) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw CLI::ValidationError("--param expects key=value, got '" + kv + "'");
                s.family_params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
            }
        }
        if (!solve_forcing.empty()) {
            s.forcing_kind = solve_forcing;
            s.forcing_value = solve_fvalue;
        }
        if (solve_cmd->count("--theta")) s.scheme.theta = solve_theta;
        if (!solve_drift.empty()) {
            if (solve_drift == "upwind") s.scheme.drift = parmax::DriftScheme::Upwind;
            else if (solve_drift == "central") s.scheme.drift = parmax::DriftScheme::Central;
            else throw CLI::ValidationError("--drift must be upwind or central");
        }
        if (!solve_name.empty()) s.name = solve_name;
        const auto grid = s.make_grid();
        const auto op = parmax::build_coefficient_family(grid, s.family, s.family_params);
        const auto f = parmax::build_forcing(grid, s.forcing_kind, s.forcing_value, s.seed);
        const auto solved = parmax::solve_forward(op, f, s.scheme);
        const std::string dir = resolve_out_dir(out_dir_flag);
        const std::string csv = dir + "/" + s.name + ".solution.csv";
        parmax::write_grid_function_csv_file(csv, solved.u);
        const std::string gridfile = dir + "/" + s.name + ".grid.txt";
        parmax::write_grid_record_file(gridfile, grid);
        nlohmann::ordered_json j;
        j["schema_version"] = 1;
        j["check"] = "solve";
        j["scenario"] = s.name;
        j["residual_inf"] = solved.residual_inf;
        j["monotone_guaranteed"] = solved.monotone_guaranteed;
        j["max_u"] = solved.u.max_value();
        j["min_u"] = solved.u.min_value();
        const std::string jpath = dir + "/" + s.name + ".solve.json";
        std::ofstream(jpath) << j.dump(2) << "\n";
        std::printf("solution: %s\nresidual_inf: %.3e\n", csv.c_str(), solved.residual_inf);
        std::printf("wrote %s and %s\n", jpath.c_str(), gridfile.c_str());
    });

    // ---- norm ----
    auto* norm_cmd = app.add_subcommand("norm", "Mixed norm of a grid function CSV");
    std::string norm_grid, norm_input, norm_p = "2", norm_q = "2", norm_order = "auto";
    std::string norm_weight, norm_restriction, norm_json;
    norm_cmd->add_option("--grid", norm_grid, "Grid record file")->required();
    norm_cmd->add_option("--input", norm_input, "Grid function CSV")->required();
    norm_cmd->add_option("--p", norm_p, "Spatial exponent (number, fraction or inf)");
    norm_cmd->add_option("--q", norm_q, "Temporal exponent");
    norm_cmd->add_option("--order", norm_order, "auto | space | time");
    norm_cmd->add_option("--weight", norm_weight, "Weight grid function CSV (w > 0)");
    norm_cmd->add_option("--restriction", norm_restriction,
                         "Restriction CSV: nodes with value > 0 are kept");
    norm_cmd->add_option("--json", norm_json, "Write a JSON detail record to this path");
    norm_cmd->callback([&]() {
        const auto grid = parmax::read_grid_record_file(norm_grid);
        const auto u = parmax::read_grid_function_csv_file(norm_input, grid);
        parmax::MixedNormSpec spec;
        spec.exps = {parmax::Exponent::parse(norm_p), parmax::Exponent::parse(norm_q)};
        if (norm_order == "space") spec.order = parmax::NormOrder::SpaceOuter;
        else if (norm_order == "time") spec.order = parmax::NormOrder::TimeOuter;
        else if (norm_order != "auto") throw CLI::ValidationError("--order must be auto|space|time");
        if (!norm_weight.empty())
            spec.weight = parmax::read_grid_function_csv_file(norm_weight, grid);
        if (!norm_restriction.empty()) {
            const auto r = parmax::read_grid_function_csv_file(norm_restriction, grid);
            std::vector<std::uint8_t> member(grid.node_count());
            for (std::size_t i = 0; i < member.size(); ++i) member[i] = r.values()[i] > 0.0;
            spec.restriction = parmax::PositivitySet(grid, std::move(member));
        }
        const double value = parmax::mixed_norm(u, spec);
        std::printf("%.17g\n", value);
        if (!norm_json.empty()) {
            nlohmann::ordered_json j;
            j["schema_version"] = 1;
            j["check"] = "norm";
            j["p"] = spec.exps.p.str();
            j["q"] = spec.exps.q.str();
            j["order"] = norm_order;
            j["weighted"] = !norm_weight.empty();
            j["restricted"] = !norm_restriction.empty();
            j["value"] = value;
            std::ofstream(norm_json) << j.dump(2) << "\n";
        }
    });

    // ---- scenario-driven single checks ----
    struct SingleCheck {
        const char* command;
        const char* check;
        const char* help;
    };
    const std::vector<SingleCheck> singles = {
        {"verify-bound", "verify_bound", "Evaluate the bound ratio report for a scenario"},
        {"bony-check", "bony", "Bony-type maximum principle check for a scenario"},
        {"counterexample", "counterexample", "Singular-drift sharpness study for a scenario"},
        {"barrier", "barrier", "Barrier construction and verification for a scenario"},
    };
    struct SingleState {
        std::string scenario;
        int nx = 0, nt = 0;
        int rc = 0;
    };
    std::vector<std::shared_ptr<SingleState>> single_states;
    for (const auto& sc : singles) {
        auto state = std::make_shared<SingleState>();
        single_states.push_back(state);
        auto* cmd = app.add_subcommand(sc.command, sc.help);
        cmd->add_option("--scenario", state->scenario, "Scenario file")->required();
        cmd->add_option("--nx", state->nx, "Override spatial node count");
        cmd->add_option("--nt", state->nt, "Override time level count");
        const std::string check_name = sc.check;
        cmd->callback([&, state, check_name]() {
            state->rc = run_single_check(state->scenario, check_name, out_dir_flag, state->nx,
                                         state->nt);
        });
    }

    // ---- scan ----
    auto* scan_cmd = app.add_subcommand(
        "scan", "Refinement sweep: bound ratio across a list of grid sizes");
    std::string scan_scenario;
    std::vector<int> scan_nx;
    scan_cmd->add_option("--scenario", scan_scenario, "Scenario file")->required();
    scan_cmd->add_option("--nx", scan_nx, "Grid sizes, e.g. --nx 41 81 161")->required();
    scan_cmd->callback([&]() {
        const std::string dir = resolve_out_dir(out_dir_flag);
        Scenario base = parmax::parse_scenario_file(scan_scenario);
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        std::string csv = "nx,nt,lhs_sup,rhs_norm,ratio,hypotheses_valid\n";
        for (const int nx : scan_nx) {
            Scenario s = base;
            s.nx = nx;
            s.nt = nx;
            const auto grid = s.make_grid();
            const auto op = parmax::build_coefficient_family(grid, s.family, s.family_params);
            const auto f = parmax::build_forcing(grid, s.forcing_kind, s.forcing_value, s.seed);
            const auto report =
                parmax::verify_bound(op, f, s.exponents0(), s.e1_list, s.scheme);
            rows.push_back(nlohmann::ordered_json{{"nx", nx},
                                                  {"nt", nx},
                                                  {"lhs_sup", report.lhs_sup},
                                                  {"rhs_norm", report.rhs_norm},
                                                  {"ratio", report.ratio},
                                                  {"hypotheses_valid", report.hypotheses_valid}});
            char line[160];
            std::snprintf(line, sizeof(line), "%d,%d,%.17g,%.17g,%.17g,%d\n", nx, nx,
                          report.lhs_sup, report.rhs_norm, report.ratio,
                          report.hypotheses_valid ? 1 : 0);
            csv += line;
        }
        nlohmann::ordered_json j;
        j["schema_version"] = 1;
        j["check"] = "scan";
        j["scenario"] = base.name;
        j["rows"] = rows;
        const std::string jpath = dir + "/" + base.name + ".scan.json";
        const std::string cpath = dir + "/" + base.name + ".scan.csv";
        std::ofstream(jpath) << j.dump(2) << "\n";
        std::ofstream(cpath) << csv;
        std::printf("%s", csv.c_str());
        std::printf("wrote %s and %s\n", jpath.c_str(), cpath.c_str());
    });

    // ---- run (batch) ----
    auto* run_cmd = app.add_subcommand("run", "Run one or more scenario files");
    std::vector<std::string> run_files;
    run_cmd->add_option("scenarios", run_files, "Scenario files")->required();
    int run_rc = 0;
    run_cmd->callback([&]() {
        const std::string dir = resolve_out_dir(out_dir_flag);
        for (const auto& path : run_files) {
            const Scenario s = parmax::parse_scenario_file(path);
            const auto outcome = parmax::run_scenario(s, dir);
            print_outcome(s, outcome);
            if (!outcome.ok) run_rc = 1;
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    int rc = run_rc;
    for (const auto& state : single_states) rc = rc ? rc : state->rc;
    return rc;
}

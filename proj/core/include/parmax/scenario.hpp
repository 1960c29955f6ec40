#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parmax/barrier.hpp"
#include "parmax/coefficients.hpp"
#include "parmax/estimates.hpp"
#include "parmax/exponents.hpp"
#include "parmax/grid.hpp"
#include "parmax/solver.hpp"

namespace parmax {

/// One experiment: grid, operator family, exponents, forcing, checks.
/// Parsed from a flat key-value sectioned text file.
struct Scenario {
    std::string name;
    std::string description;
    long seed = 0;

    int dim = 1;
    double radius = 1.0;
    double final_time = 1.0;
    int nx = 41;
    int nt = 41;

    std::string family = "heat";
    std::map<std::string, double> family_params;

    std::optional<ExponentPair> e0;  // defaults to (n+1, n+1)
    std::vector<ExponentPair> e1_list;

    std::string forcing_kind = "constant";
    double forcing_value = 1.0;

    SchemeConfig scheme;
    std::vector<std::string> checks;  // subset of the known check names
    bool write_csv = false;

    Cylinder make_grid() const { return Cylinder(dim, radius, final_time, nx, nt); }
    ExponentPair exponents0() const {
        return e0 ? *e0 : ExponentPair{Exponent::integer(dim + 1), Exponent::integer(dim + 1)};
    }
};

Scenario parse_scenario_text(const std::string& text, const std::string& origin = "<memory>");
Scenario parse_scenario_file(const std::string& path);

/// Deterministic forcing fields: constant, bump, nonpositive, sine,
/// random_smooth (seeded low-frequency trigonometric series).
GridFunction build_forcing(const Cylinder& grid, const std::string& kind, double value,
                           long seed);

struct CheckOutcome {
    std::string check;
    bool hypotheses_valid = true;
    bool pass = true;
    std::string detail;
    std::string report_path;
};

struct ScenarioOutcome {
    bool ok = true;  // every hypothesis-valid check passed
    std::vector<CheckOutcome> checks;
    std::vector<std::string> written_files;
};

/// Runs the requested checks in dependency order and writes one JSON
/// report per check plus a combined CSV summary. Reports are byte-stable
/// for a fixed scenario and seed; the timestamp goes to a separate
/// .meta.json file.
ScenarioOutcome run_scenario(const Scenario& s, const std::string& out_dir);

/// $PARMAX_OUTPUT_DIR when set, "." otherwise.
std::string default_output_dir();

// JSON emission (schema_version 1), shared by run_scenario and the CLI.
std::string estimate_report_json(const EstimateReport& report, const std::string& scenario);
std::string bony_result_json(const BonyResult& result, const Cylinder& grid,
                             const std::string& scenario);
std::string counterexample_report_json(const CounterexampleReport& report,
                                       const std::string& scenario);

struct BarrierCheckReport {
    double tol = 0.0;
    // Direct barrier: L B = |b| by the monotone solver.
    double solver_residual = 0.0;
    double solver_barrier_sup = 0.0;
    double solver_barrier_slack = 0.0;
    bool solver_barrier_pass = false;
    // Radial + composed barrier (composite drifts only).
    bool composed_built = false;
    double radial_sup = 0.0;
    double radial_slope = 0.0;
    double composed_slack = 0.0;
    bool composed_pass = false;
    std::optional<RadialBarrier> radial;  // profile, for CSV emission
};

BarrierCheckReport run_barrier_check(const OperatorCoefficients& op,
                                     const std::vector<ExponentPair>& e1_list,
                                     const SchemeConfig& scheme, double r_outer_factor = 1.1,
                                     int ode_steps = 4096);
std::string barrier_check_json(const BarrierCheckReport& report, const std::string& scenario);

/// The radial barrier profile as CSV (r, v, v', f).
std::string radial_barrier_csv(const RadialBarrier& barrier);

}  // namespace parmax

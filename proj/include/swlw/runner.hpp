#pragma once
// Simulation orchestration for the CLI: builds the scenario and stepper from a
// RunConfig, runs the time loop, and writes deterministic artifacts
// (diagnostics.csv, an echoed config, a final snapshot; a state dump on
// failure). Exit codes: 0 ok, 2 config error, 3 invariant violation,
// 4 divergence.

#include <string>
#include <vector>

#include "swlw/config.hpp"
#include "swlw/diagnostics.hpp"
#include "swlw/scenarios.hpp"

namespace swlw {

// shortest decimal that round-trips the double exactly
std::string format_double(double x);

std::string diagnostics_csv_header();

struct RunArtifacts {
    SimState final_state;
    std::vector<EnergyLedgerEntry> ledger; // at the diagnostic cadence
    double max_divh = 0.0;                 // across all accepted steps
    double max_jrho_err = 0.0;             // across diagnostic rows
    int picard_iters_max = 0;
    double picard_ratio_max = 0.0;
    int cfl_warnings = 0;
};

// core run; out_dir empty means no files are written
RunArtifacts simulate(const RunConfig& cfg, const std::string& out_dir);

int cli_simulate(const std::string& config_path, const std::string& out_override);

} // namespace swlw

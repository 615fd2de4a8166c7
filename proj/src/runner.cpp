#include "swlw/runner.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "swlw/errors.hpp"
#include "swlw/snapshot.hpp"

namespace swlw {

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

std::string diagnostics_csv_header() {
    return "step,t,E_total,E_kin,E_int,E_mag,E_psi_grad,E_psi_quartic,E_coupling,"
           "D,D_cum,residual,mass_rho,psi_mass,rho_min,rho_max,jrho_min,jrho_max,"
           "jrho_err,divH_inf,psi_max,defgrad_inf,map_inverse_err,eb_err,"
           "liouville_gap,F_mean,F_min,F_max,F_l2,omega_l2,Lambda_l2,picard_iters,"
           "picard_max_ratio,momentum_residual,cfl,cfl_exceeded";
}

namespace {

struct CsvRow {
    std::vector<double> nums; // everything but the two ints
};

void write_row(std::ofstream& os, int step, const SimState& state,
               const EnergyLedgerEntry& e, const Stepper& stepper,
               const PicardReport& rep, RunArtifacts& art) {
    const ScalarField& rho0 = stepper.rho0();
    BoundsReport bounds = bounds_report(state, rho0);
    if (!bounds.jrho_within_bounds)
        throw InvariantViolation("J/rho left the [1/max(rho0), 1/min(rho0)] band");
    const double jerr = jrho_check(state, rho0);
    art.max_jrho_err = std::max(art.max_jrho_err, jerr);

    // interaction force and effective flux for the flux statistics
    ComplexField psi_euler = compose_to_euler(state.psi, state.map);
    ScalarField jr = stepper.j_over_rho(state.map);
    InteractionForce fo =
        interaction_force(state.rho, psi_euler, jr, stepper.coupling());
    FluxStats fstats = flux_stats(
        effective_flux(state.u, state.rho, state.H, fo.f, stepper.fluid()));

    const double inv_err = map_inverse_error(state.map);
    const double eb_err = eb_identity_error(state.map);
    const double lv_gap = liouville_gap(state.map);

    double ratio_max = 0.0;
    for (double r : rep.contraction_ratios) ratio_max = std::max(ratio_max, r);

    if (!os.is_open()) return;
    os << step;
    const double cols[] = {state.t,
                           e.total,
                           e.kinetic,
                           e.internal,
                           e.magnetic,
                           e.psi_grad,
                           e.psi_quartic,
                           e.coupling,
                           e.dissipation,
                           e.d_cum,
                           e.residual,
                           mean(state.rho),
                           nls_mass(state.psi),
                           bounds.rho_min,
                           bounds.rho_max,
                           bounds.jrho_min,
                           bounds.jrho_max,
                           jerr,
                           bounds.divh_inf,
                           bounds.psi_max,
                           bounds.defgrad_inf,
                           inv_err,
                           eb_err,
                           lv_gap,
                           fstats.F.mean,
                           fstats.F.min,
                           fstats.F.max,
                           fstats.F.l2,
                           fstats.omega.l2,
                           fstats.Lambda.l2};
    for (double c : cols) os << ',' << format_double(c);
    os << ',' << rep.iterations << ',' << format_double(ratio_max) << ','
       << format_double(rep.momentum_residual) << ',' << format_double(rep.cfl) << ','
       << (rep.cfl_exceeded ? 1 : 0) << '\n';
}

} // namespace

RunArtifacts simulate(const RunConfig& cfg, const std::string& out_dir) {
    SimState state = make_initial_state(cfg);
    CouplingSpec coupling(cfg.coupling);
    Stepper stepper(cfg.fluid, cfg.magnetic, coupling, cfg.stepper, state.rho);
    EnergyTracker tracker(cfg.fluid, cfg.magnetic, coupling);

    std::ofstream csv;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream echo(out_dir + "/config.txt", std::ios::trunc);
        echo << config_to_text(cfg);
        if (!cfg.warnings.empty()) {
            std::ofstream warn(out_dir + "/warnings.txt", std::ios::trunc);
            for (const auto& w : cfg.warnings) warn << w << '\n';
        }
        csv.open(out_dir + "/diagnostics.csv", std::ios::trunc);
        csv << diagnostics_csv_header() << '\n';
    }

    RunArtifacts art{state, {}, 0.0, 0.0, 0, 0.0, 0};
    const int interval = cfg.output.diagnostic_interval;
    const int total_steps = int(std::llround(cfg.t_end / cfg.stepper.dt));

    try {
        StepSink sink = [&](const SimState& s, const PicardReport& rep, int step) {
            art.max_divh = std::max(art.max_divh, linf_norm(divergence(s.H)));
            art.picard_iters_max = std::max(art.picard_iters_max, rep.iterations);
            for (double r : rep.contraction_ratios)
                art.picard_ratio_max = std::max(art.picard_ratio_max, r);
            if (rep.cfl_exceeded) ++art.cfl_warnings;
            if (step % interval == 0 || step == total_steps) {
                art.final_state = s; // dump candidate if a later check throws
                const EnergyLedgerEntry& e = tracker.update(s);
                write_row(csv, step, s, e, stepper, rep, art);
            }
        };
        art.final_state = run(stepper, std::move(state), cfg.t_end, sink);
        art.ledger = tracker.history();
    } catch (...) {
        if (!out_dir.empty()) {
            // best-effort dump of the last accepted state for post-mortem
            try {
                write_snapshot(out_dir + "/state_dump.snap", art.final_state);
            } catch (...) {
            }
        }
        throw;
    }

    if (!out_dir.empty() && cfg.output.snapshot_final)
        write_snapshot(out_dir + "/final.snap", art.final_state);
    return art;
}

int cli_simulate(const std::string& config_path, const std::string& out_override) {
    RunConfig cfg;
    try {
        cfg = parse_config_file(config_path);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    if (!out_override.empty()) cfg.output.dir = out_override;
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
    try {
        RunArtifacts art = simulate(cfg, cfg.output.dir);
        std::cout << "final t = " << format_double(art.final_state.t)
                  << ", max |div H| = " << format_double(art.max_divh)
                  << ", max Picard iterations = " << art.picard_iters_max << '\n';
        if (art.cfl_warnings > 0)
            std::cerr << "warning: advective CFL exceeded cfl_max on " << art.cfl_warnings
                      << " steps\n";
        return 0;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 3;
    } catch (const PicardDivergence& e) {
        std::cerr << "divergence: " << e.what() << '\n';
        return 4;
    }
}

} // namespace swlw

#pragma once
// Run configuration: flat INI-style sections, key = value, '#' comments.
// parse_config validates everything and reports every violation at once,
// naming the offending key. beta <= 4/3 is accepted with a recorded warning
// (the no-vacuum guarantee of the underlying theory is void there).

#include <string>
#include <vector>

#include "swlw/coupling.hpp"
#include "swlw/fluid.hpp"
#include "swlw/magnetics.hpp"
#include "swlw/stepper.hpp"

namespace swlw {

struct ScenarioConfig {
    std::string name = "equilibrium";
    unsigned long seed = 1234;
    // equilibrium
    double rho0 = 1.0;
    double psi_amp = 1.0;
    int psi_k1 = 1, psi_k2 = 0;
    // smooth-random (band-limited, seeded)
    double rho_amp = 0.2;
    double u_amp = 0.05;
    double H_amp = 0.05;
    int kmax = 3;
    // shear family u = (ux sin(2 pi x2), uy sin(2 pi x1))
    double shear_ux = 0.0;
    double shear_uy = 1.0;
    double shear_rho = 0.0;
    // perturbed-pair: smooth-random base plus delta * profile on all fields
    double perturb_delta = 0.0;
};

struct OutputConfig {
    std::string dir = "out";
    int diagnostic_interval = 10; // steps between diagnostics rows
    bool snapshot_final = true;
};

struct RunConfig {
    int n = 64;
    double t_end = 0.1;
    FluidParams fluid;
    MagneticParams magnetic;
    CouplingSpec::Params coupling;
    ScenarioConfig scenario;
    StepConfig stepper; // carries dt
    OutputConfig output;
    std::vector<std::string> warnings;
};

// throws ConfigError listing every violation
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// the documented defaults, echoed as parseable text
std::string config_to_text(const RunConfig& cfg);

} // namespace swlw

#pragma once
// Coupled time integrator. Each step runs a Picard fixed-point iteration over
// the operator K: given a trial velocity, K solves (in order) continuity, the
// flow map, the NLS, the magnetic field, and finally the linearized momentum
// equation, returning the new velocity. The iteration u^(k+1) = K(u^(k)) is
// warm-started from the previous velocity and accepted when the relative
// update is below picard_tol in the composite ||.||_2 + sqrt(dt) ||grad .||_2
// norm (the per-step stand-in for the F_T norm the contraction is measured in).
//
// Advective sub-problems freeze the velocity at the midpoint average
// (u_n + u_guess)/2 over the step; the momentum solve is backward Euler with
// coefficients at t+dt. The NLS potential uses the mid-step specific volume
// from the Picard iterate's half-advanced map and density.

#include <functional>
#include <utility>
#include <vector>

#include "swlw/coupling.hpp"
#include "swlw/fluid.hpp"
#include "swlw/grid.hpp"
#include "swlw/lagrangian.hpp"
#include "swlw/magnetics.hpp"
#include "swlw/momentum.hpp"
#include "swlw/schrodinger.hpp"

namespace swlw {

struct SimState {
    ScalarField rho;
    VectorField u;
    VectorField H;
    ComplexField psi; // on the Lagrangian grid
    FlowMapState map;
    double t = 0.0;
};

struct StepConfig {
    double dt = 1e-3;
    double picard_tol = 1e-8; // relative update, composite norm
    int max_picard = 25;
    double cfl_max = 0.5;    // advisory threshold
    double inner_tol = 1e-12; // momentum inner relaxation tolerance
    int max_inner = 200;
    double j_min = 1e-6;
    double div_h_max = 1e-10;    // solenoidality gate per accepted step
    bool freeze_velocity = false; // hold u fixed (decoupling oracle mode)

    void validate() const;
};

struct PicardReport {
    int iterations = 0;
    std::vector<double> update_norms;
    std::vector<double> contraction_ratios; // norms[k+1]/norms[k]
    double cfl = 0.0;
    bool cfl_exceeded = false;
    double momentum_residual = 0.0;
};

// everything one application of K produces
struct KSubStates {
    ScalarField rho;     // at t+dt
    ScalarField rho_mid; // at t+dt/2
    FlowMapState map;    // at t+dt
    ScalarField v_mid;   // specific volume on the Lagrangian grid at t+dt/2
    ComplexField psi;
    VectorField H;
    VectorField v; // K(u_guess)
    InnerSolveReport inner;
};

class Stepper {
  public:
    Stepper(FluidParams fluid, MagneticParams magnetic, CouplingSpec coupling,
            StepConfig config, ScalarField rho0);

    KSubStates k_apply(const SimState& state, const VectorField& u_guess) const;
    std::pair<SimState, PicardReport> advance(const SimState& state) const;

    // J/rho evaluated through the particle-path invariant 1/rho0(y(t,x))
    ScalarField j_over_rho(const FlowMapState& map) const;

    const StepConfig& config() const { return config_; }
    const FluidParams& fluid() const { return fluid_; }
    const MagneticParams& magnetic() const { return magnetic_; }
    const CouplingSpec& coupling() const { return coupling_; }
    const ScalarField& rho0() const { return rho0_; }

  private:
    FluidParams fluid_;
    MagneticParams magnetic_;
    CouplingSpec coupling_;
    StepConfig config_;
    ScalarField rho0_;
};

// step sink: called with the state after every accepted step (and once with
// the initial state, step index 0 and a default report)
using StepSink = std::function<void(const SimState&, const PicardReport&, int step)>;

// fixed-dt loop to t_end (rounded to a whole number of steps)
SimState run(const Stepper& stepper, SimState state, double t_end,
             const StepSink& sink = nullptr);

// composite per-step norm ||w||_2 + sqrt(dt) ||grad w||_2
double f_norm(const VectorField& w, double dt);

void validate_state(const SimState& state, const StepConfig& cfg);

} // namespace swlw

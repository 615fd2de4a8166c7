#pragma once
// Independently coded reference solvers used only by the verification suites.
// They share the FFT wrappers and field containers with the main code but
// re-implement the discrete schemes from scratch (own stage sequencing, own
// spectral loops, own fixed-point iterations), so a wiring bug in the coupled
// stepper cannot cancel out here.

#include "swlw/coupling.hpp"
#include "swlw/fluid.hpp"
#include "swlw/grid.hpp"

namespace swlw {

struct RefNsState {
    ScalarField rho;
    VectorField u;
};

// decoupled compressible Navier-Stokes: spectral RK3 continuity plus
// backward-Euler momentum (mean-lambda split), Picard-iterated per step
RefNsState reference_ns_run(RefNsState state, const FluidParams& par, double dt, int steps,
                            double picard_tol, int max_picard, double inner_tol,
                            int max_inner);

// standalone split-step cubic NLS with a fixed specific-volume field
ComplexField reference_nls_run(ComplexField psi, const ScalarField& v_y,
                               const CouplingSpec& spec, double dt, int steps);

} // namespace swlw

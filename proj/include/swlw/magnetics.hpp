#pragma once
// Magnetic field evolution: H_t + u.grad H - H.grad u + H div u = nu Lap H
// with div H = 0 enforced by spectral Leray projection. Diffusion is handled
// by the exact per-mode integrating factor; advection and stretch are explicit
// SSP-RK3 with dealiased products. The projection runs after every stage so
// the stretch term sees a solenoidal field down to round-off.

#include "swlw/grid.hpp"

namespace swlw {

struct MagneticParams {
    double nu = 0.05; // magnetic diffusivity, > 0
    void validate() const;
};

// remove the gradient part; mean (zero mode) is untouched; idempotent
VectorField project_divfree(const VectorField& H);

// one step with u frozen; input is assumed solenoidal, output is solenoidal
VectorField induction_step(const VectorField& H, const VectorField& u, double dt,
                           const MagneticParams& p);

} // namespace swlw

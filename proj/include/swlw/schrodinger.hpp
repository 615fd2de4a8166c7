#pragma once
// Cubic NLS on the Lagrangian torus with the flow-coupled potential:
// i psi_t + Lap_y psi = |psi|^2 psi + alpha g(v) h'(|psi|^2) psi.
// Strang splitting: half-step phase rotation by the (real) potential, exact
// per-mode linear step, half-step rotation. Every sub-flow is an L2 isometry,
// so the discrete mass is conserved to round-off.

#include "swlw/coupling.hpp"
#include "swlw/grid.hpp"

namespace swlw {

// V = |psi|^2 + alpha g(v) h'(|psi|^2); v_y is the specific volume 1/rho
// composed onto the Lagrangian grid, strictly positive
ScalarField nls_potential(const ComplexField& psi, const ScalarField& v_y,
                          const CouplingSpec& spec);

// one Strang step with v_y frozen (the stepper passes the mid-step map's v)
ComplexField nls_step(const ComplexField& psi, const ScalarField& v_y,
                      const CouplingSpec& spec, double dt);

// integral of |psi|^2 over the Lagrangian torus
double nls_mass(const ComplexField& psi);

// integral of 1/2 |grad_y psi|^2 + 1/4 |psi|^4 + alpha g(v) h(|psi|^2)
double nls_energy(const ComplexField& psi, const ScalarField& v_y,
                  const CouplingSpec& spec);

} // namespace swlw

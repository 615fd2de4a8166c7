#pragma once
// Built-in reproducible initial conditions: `equilibrium` (plane-wave psi over
// a still uniform fluid), `smooth-random` (seeded band-limited fields),
// `shear` (sine shear family), `perturbed-pair` (smooth-random base plus a
// delta-scaled perturbation profile, for the continuous-dependence test).

#include "swlw/config.hpp"
#include "swlw/stepper.hpp"

namespace swlw {

SimState make_initial_state(const RunConfig& cfg);

// band-limited random field, max-normalized to amp; deterministic in the seed
ScalarField random_band_field(Grid g, unsigned long seed, double amp, int kmax);

// base + delta * profile on every field (H perturbation projected div-free)
SimState perturb_state(const SimState& base, double delta, unsigned long seed, int kmax);

} // namespace swlw

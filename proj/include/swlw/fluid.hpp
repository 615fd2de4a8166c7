#pragma once
// Density evolution and fluid constitutive laws: pressure p = a rho^gamma,
// bulk viscosity lambda = b rho^beta, internal energy, and two continuity
// solvers. The spectral conservative solver is the default (exact mass); the
// semi-Lagrangian characteristics solver mirrors the constructive scheme and
// is positive by construction, kept as a cross-check oracle.

#include <functional>
#include <utility>

#include "swlw/grid.hpp"

namespace swlw {

struct FluidParams {
    double a = 1.0;     // pressure coefficient, > 0
    double gamma = 2.0; // adiabatic exponent, > 1
    double mu = 0.05;   // shear viscosity, > 0
    double b = 1.0;     // bulk viscosity coefficient, > 0
    double beta = 2.0;  // bulk viscosity exponent; > 4/3 for the no-vacuum theory

    void validate() const; // throws on hard violations (beta <= 4/3 is warn-only)
    bool no_vacuum_guarantee() const { return beta > 4.0 / 3.0; }
};

ScalarField pressure(const ScalarField& rho, const FluidParams& p);
ScalarField lambda_visc(const ScalarField& rho, const FluidParams& p);
// e(rho) = a rho^(gamma-1)/(gamma-1), the antiderivative of p(s)/s^2 with
// base point 0 (keeps e >= 0 for gamma > 1)
ScalarField internal_energy(const ScalarField& rho, const FluidParams& p);

// advective CFL number |u|_inf * dt / h (advisory; caller decides policy)
double cfl_number(const VectorField& u, double dt);

// optional manufactured source, sampled at the RK stage times
using SourceFn = std::function<ScalarField(double t)>;

// conservative form rho_t = -div(rho u) + source, SSP-RK3 with 2/3 dealiasing;
// u is frozen over the step; preserves mean(rho) to round-off
ScalarField continuity_step_spectral(const ScalarField& rho, const VectorField& u,
                                     double dt, double t = 0.0,
                                     const SourceFn& source = nullptr);

// semi-Lagrangian: backward RK4 characteristic trace, log-density transport
// plus the exponential divergence factor; output strictly positive whenever
// the input is
ScalarField continuity_step_characteristics(const ScalarField& rho, const VectorField& u,
                                            double dt);

std::pair<double, double> density_bounds(const ScalarField& rho);

} // namespace swlw

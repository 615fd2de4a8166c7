#pragma once
// Lagrangian transformation bookkeeping: the map y(t,x) stored as identity
// plus periodic displacement, forward particle positions x(t,y) (with y0 = id
// the inverse map is the flow of u), the deformation gradient E = grad_x y,
// its inverse B = dx/dy along particles, and the Jacobian. E is evolved by an
// Eulerian transport-stretch PDE and B by a per-particle ODE; both are kept
// and cross-checked rather than declaring either canonical.

#include <array>

#include "swlw/grid.hpp"

namespace swlw {

struct FlowMapState {
    Grid grid;
    VectorField disp;             // y(t,x) = x + disp(t,x), disp periodic
    std::vector<double> xp1, xp2; // particle positions x(t,y) per Lagrangian node
    TensorField defgrad;          // E on the Eulerian grid
    TensorField inv_defgrad;      // B at particles (Lagrangian grid)
    std::vector<double> jtilde;   // Liouville-evolved Jacobian along particles
    double time = 0.0;

    static FlowMapState identity(Grid g);
};

// spectral RK3 transport of the displacement: d_t + u.grad d = -u
void advance_y(FlowMapState& state, const VectorField& u, double dt);

// joint per-particle RK4 for dx/dt = u(x), dB/dt = (grad u)(x) B and
// d(log Jtilde)/dt = -div u(x); u frozen over the step
void advance_particles(FlowMapState& state, const VectorField& u, double dt);

// two dt/2 substeps sharing one velocity probe; records the midpoint positions
void advance_particles_two_halves(FlowMapState& state, const VectorField& u, double dt,
                                  std::vector<double>& mid1, std::vector<double>& mid2);

// spectral RK3 for E_t + u.grad E + E grad u = 0
void advance_E(FlowMapState& state, const VectorField& u, double dt);

// J = det E on the Eulerian grid; throws InvariantViolation when the map
// degenerates (min J <= j_min)
ScalarField jacobian(const FlowMapState& state, double j_min = 1e-6);

// f(y(t,x)): pull a Lagrangian-grid field back to the Eulerian grid
ScalarField compose_to_euler(const ScalarField& f_y, const FlowMapState& state);
ComplexField compose_to_euler(const ComplexField& f_y, const FlowMapState& state);

// f(x(t,y)): push an Eulerian field to the Lagrangian grid
ScalarField compose_to_lagr(const ScalarField& f_x, const FlowMapState& state);

// -- consistency diagnostics -------------------------------------------------

// Linf over particles of the periodic distance between y(x(t,y)) and y
double map_inverse_error(const FlowMapState& state);
// Linf of E(x(t,y)) B(t,y) - Id
double eb_identity_error(const FlowMapState& state);
// relative Linf gap between det E at particles and the Liouville jtilde
double liouville_gap(const FlowMapState& state);

struct NormEquivalence {
    double ratio;  // ||f o x||_{H^m(Lagrangian)} / ||f||_{H^m(Eulerian)}
    double bound;  // C from measured ||E||_inf, ||B||_inf, J extrema
    bool within;   // ratio in [1/C, C]
};
NormEquivalence norm_equivalence_report(const ScalarField& f, const FlowMapState& state,
                                        int order);

double tensor_linf(const TensorField& t);

} // namespace swlw

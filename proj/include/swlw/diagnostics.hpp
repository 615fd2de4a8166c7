#pragma once
// Every checkable identity and bound of the model: the energy identity
// E(t) + int_0^t D = E(0), per-component energy bookkeeping, the J/rho
// particle-path invariant, density/field bounds, effective-flux statistics,
// and the relative-energy distance between two runs.

#include <vector>

#include "swlw/momentum.hpp"
#include "swlw/stepper.hpp"

namespace swlw {

struct EnergyLedgerEntry {
    double t = 0.0;
    // components (all nonnegative by construction)
    double kinetic = 0.0;     // 1/2 int rho |u|^2
    double internal = 0.0;    // int rho e(rho)
    double magnetic = 0.0;    // 1/2 int |H|^2
    double psi_grad = 0.0;    // 1/2 int |grad_y psi|^2
    double psi_quartic = 0.0; // 1/4 int |psi|^4
    double coupling = 0.0;    // alpha int g(v) h(|psi|^2)
    double total = 0.0;       // sum of the six
    double dissipation = 0.0; // D(t)
    double d_cum = 0.0;       // trapezoidal int_0^t D
    double residual = 0.0;    // total + d_cum - E(0)
};

EnergyLedgerEntry total_energy(const SimState& state, const FluidParams& fluid,
                               const CouplingSpec& spec);

double dissipation(const SimState& state, const FluidParams& fluid,
                   const MagneticParams& magnetic);

// accumulates the ledger over a run (trapezoidal dissipation integral)
class EnergyTracker {
  public:
    EnergyTracker(FluidParams fluid, MagneticParams magnetic, CouplingSpec spec)
        : fluid_(fluid), magnetic_(magnetic), spec_(std::move(spec)) {}

    const EnergyLedgerEntry& update(const SimState& state);
    const std::vector<EnergyLedgerEntry>& history() const { return history_; }

  private:
    FluidParams fluid_;
    MagneticParams magnetic_;
    CouplingSpec spec_;
    std::vector<EnergyLedgerEntry> history_;
};

// |residual(t)| / E(0) for each recorded entry (empty history gives empty)
std::vector<double> energy_identity_series(const std::vector<EnergyLedgerEntry>& history);

// max relative error of J/rho against the particle-path value 1/rho0(y(t,x))
double jrho_check(const SimState& state, const ScalarField& rho0);

struct BoundsReport {
    double rho_min = 0.0, rho_max = 0.0;
    double jrho_min = 0.0, jrho_max = 0.0; // extrema of J/rho = det E / rho
    double divh_inf = 0.0;
    double psi_max = 0.0;
    double defgrad_inf = 0.0;
    // (max rho0)^-1 <= J/rho <= (min rho0)^-1 within a small relative slack
    bool jrho_within_bounds = true;
};
BoundsReport bounds_report(const SimState& state, const ScalarField& rho0,
                           double slack = 1e-3);

struct FieldStats {
    double mean = 0.0, min = 0.0, max = 0.0, l2 = 0.0;
};
struct FluxStats {
    FieldStats F, omega, Lambda;
};
FluxStats flux_stats(const FluxFields& flux);

struct RelativeEnergy {
    double rho_term = 0.0;    // int |rhoA - rhoB|^2
    double u_term = 0.0;      // int rhoA |uA - uB|^2
    double h_term = 0.0;      // int |HA - HB|^2
    double psi_term = 0.0;    // int |psiA - psiB|^2
    double grad_u_cum = 0.0;  // int_0^t int |grad(uA - uB)|^2
    double grad_h_cum = 0.0;  // int_0^t int |grad(HA - HB)|^2
    double total() const {
        return rho_term + u_term + h_term + psi_term + grad_u_cum + grad_h_cum;
    }
};

// instantaneous terms only (cumulative fields left at zero)
RelativeEnergy relative_energy(const SimState& a, const SimState& b);

// adds the trapezoidal cumulative gradient terms across snapshots
class RelativeEnergyTracker {
  public:
    RelativeEnergy update(const SimState& a, const SimState& b);

  private:
    bool primed_ = false;
    double last_t_ = 0.0;
    double last_gu_ = 0.0, last_gh_ = 0.0;
    double gu_cum_ = 0.0, gh_cum_ = 0.0;
};

} // namespace swlw

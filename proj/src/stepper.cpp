#include "swlw/stepper.hpp"

#include <cmath>
#include <stdexcept>

#include "swlw/errors.hpp"

namespace swlw {

namespace {

VectorField midpoint(const VectorField& a, const VectorField& b) {
    VectorField out(a.grid);
    for (std::size_t i = 0; i < out.c1.size(); ++i) {
        out.c1[i] = 0.5 * (a.c1[i] + b.c1[i]);
        out.c2[i] = 0.5 * (a.c2[i] + b.c2[i]);
    }
    return out;
}

void require_positive(const ScalarField& f, const char* what) {
    for (double x : f.v)
        if (!(x > 0.0)) throw InvariantViolation(std::string(what) + " lost positivity");
}

} // namespace

void StepConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("stepper: dt must be > 0");
    if (!(picard_tol > 0.0)) throw std::invalid_argument("stepper: picard_tol must be > 0");
    if (max_picard < 1) throw std::invalid_argument("stepper: max_picard must be >= 1");
    if (!(inner_tol > 0.0)) throw std::invalid_argument("stepper: inner_tol must be > 0");
}

double f_norm(const VectorField& w, double dt) {
    ScalarField w1{w.grid}, w2{w.grid};
    w1.v = w.c1;
    w2.v = w.c2;
    const double l2 = l2_norm(w);
    const double g1 = l2_norm(gradient(w1));
    const double g2 = l2_norm(gradient(w2));
    return l2 + std::sqrt(dt) * std::sqrt(g1 * g1 + g2 * g2);
}

void validate_state(const SimState& state, const StepConfig& cfg) {
    require_positive(state.rho, "density");
    if (!all_finite(state.u) || !all_finite(state.H) || !all_finite(state.psi))
        throw InvariantViolation("state contains non-finite values");
    const double divh = linf_norm(divergence(state.H));
    if (divh > cfg.div_h_max)
        throw InvariantViolation("div H exceeds gate: " + std::to_string(divh));
    (void)jacobian(state.map, cfg.j_min); // throws when the map degenerates
}

Stepper::Stepper(FluidParams fluid, MagneticParams magnetic, CouplingSpec coupling,
                 StepConfig config, ScalarField rho0)
    : fluid_(fluid), magnetic_(magnetic), coupling_(std::move(coupling)),
      config_(config), rho0_(std::move(rho0)) {
    fluid_.validate();
    magnetic_.validate();
    config_.validate();
    require_positive(rho0_, "initial density");
}

ScalarField Stepper::j_over_rho(const FlowMapState& map) const {
    ScalarField r0y = compose_to_euler(rho0_, map);
    ScalarField out(map.grid);
    for (std::size_t i = 0; i < out.v.size(); ++i) {
        if (!(r0y.v[i] > 0.0))
            throw InvariantViolation("rho0 composed with the map lost positivity");
        out.v[i] = 1.0 / r0y.v[i];
    }
    return out;
}

KSubStates Stepper::k_apply(const SimState& state, const VectorField& u_guess) const {
    const double dt = config_.dt;
    KSubStates ks;

    const VectorField u_half = midpoint(state.u, u_guess);

    // (a) continuity, two half steps so the midpoint density is available
    ks.rho_mid = continuity_step_spectral(state.rho, u_half, 0.5 * dt);
    require_positive(ks.rho_mid, "density (midpoint)");
    ks.rho = continuity_step_spectral(ks.rho_mid, u_half, 0.5 * dt);
    require_positive(ks.rho, "density");

    // (b) flow map: particles to the midpoint, then on to t+dt
    ks.map = state.map;
    std::vector<double> xp1_mid, xp2_mid;
    advance_particles_two_halves(ks.map, u_half, dt, xp1_mid, xp2_mid);
    advance_y(ks.map, u_half, dt);
    advance_E(ks.map, u_half, dt);
    ks.map.time = state.map.time + dt;
    (void)jacobian(ks.map, config_.j_min);

    // (c) NLS with the mid-step specific volume v = 1/rho at the mid particles
    {
        Interpolant rho_ip(ks.rho_mid);
        ks.v_mid = ScalarField(state.rho.grid);
        for (std::size_t i = 0; i < ks.v_mid.v.size(); ++i) {
            const double r = rho_ip.eval(xp1_mid[i], xp2_mid[i]);
            if (!(r > 0.0))
                throw InvariantViolation("interpolated mid-step density lost positivity");
            ks.v_mid.v[i] = 1.0 / r;
        }
    }
    ks.psi = nls_step(state.psi, ks.v_mid, coupling_, dt);

    // (d) magnetic field
    ks.H = induction_step(state.H, u_half, dt, magnetic_);

    // (e) linearized momentum, backward Euler at t+dt
    ComplexField psi_euler = compose_to_euler(ks.psi, ks.map);
    ScalarField jr = j_over_rho(ks.map);
    MomentumRhs rhs = assemble_rhs(ks.rho, ks.H, psi_euler, jr, fluid_, coupling_);
    ks.v = solve_linear_momentum(ks.rho, u_guess, rhs.total, state.u, dt,
                                 config_.inner_tol, config_.max_inner, fluid_, &ks.inner);
    return ks;
}

std::pair<SimState, PicardReport> Stepper::advance(const SimState& state) const {
    const double dt = config_.dt;
    PicardReport report;

    if (config_.freeze_velocity) {
        KSubStates ks = k_apply(state, state.u);
        SimState next{std::move(ks.rho), state.u,        std::move(ks.H),
                      std::move(ks.psi), std::move(ks.map), state.t + dt};
        report.cfl = cfl_number(state.u, dt);
        report.cfl_exceeded = report.cfl > config_.cfl_max;
        validate_state(next, config_);
        return {std::move(next), std::move(report)};
    }

    VectorField u_prev = state.u;
    KSubStates ks;
    int stall = 0;
    bool converged = false;
    for (int it = 0; it < config_.max_picard; ++it) {
        ks = k_apply(state, u_prev);
        report.iterations = it + 1;

        VectorField diff(state.u.grid);
        for (std::size_t i = 0; i < diff.c1.size(); ++i) {
            diff.c1[i] = ks.v.c1[i] - u_prev.c1[i];
            diff.c2[i] = ks.v.c2[i] - u_prev.c2[i];
        }
        const double upd = f_norm(diff, dt);
        if (!report.update_norms.empty()) {
            const double ratio = upd / report.update_norms.back();
            report.contraction_ratios.push_back(ratio);
            stall = ratio >= 1.0 ? stall + 1 : 0;
            if (stall >= 3)
                throw PicardDivergence(
                    "Picard iteration not contracting for 3 consecutive iterations "
                    "(try a smaller dt)");
        }
        report.update_norms.push_back(upd);
        u_prev = ks.v;

        if (upd <= config_.picard_tol * std::max(f_norm(ks.v, dt), 1e-30)) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw PicardDivergence("Picard iteration exceeded max_picard = " +
                               std::to_string(config_.max_picard));

    report.momentum_residual = ks.inner.residual_rel;
    report.cfl = cfl_number(midpoint(state.u, ks.v), dt);
    report.cfl_exceeded = report.cfl > config_.cfl_max;

    SimState next{std::move(ks.rho), std::move(ks.v),   std::move(ks.H),
                  std::move(ks.psi), std::move(ks.map), state.t + dt};
    validate_state(next, config_);
    return {std::move(next), std::move(report)};
}

SimState run(const Stepper& stepper, SimState state, double t_end, const StepSink& sink) {
    const double dt = stepper.config().dt;
    const int steps = int(std::llround(t_end / dt));
    if (sink) sink(state, PicardReport{}, 0);
    for (int s = 1; s <= steps; ++s) {
        auto [next, report] = stepper.advance(state);
        state = std::move(next);
        if (sink) sink(state, report, s);
    }
    return state;
}

} // namespace swlw

#include "swlw/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "swlw/errors.hpp"

namespace swlw {

namespace {

// specific volume 1/rho on the Lagrangian grid through the current particles
ScalarField specific_volume_lagr(const SimState& state) {
    ScalarField r = compose_to_lagr(state.rho, state.map);
    for (double& x : r.v) {
        if (!(x > 0.0))
            throw InvariantViolation("specific volume: composed density nonpositive");
        x = 1.0 / x;
    }
    return r;
}

FieldStats stats_of(const ScalarField& f) {
    FieldStats s;
    s.min = f.v.empty() ? 0.0 : f.v[0];
    s.max = s.min;
    double acc = 0.0, sq = 0.0;
    for (double x : f.v) {
        acc += x;
        sq += x * x;
        s.min = std::min(s.min, x);
        s.max = std::max(s.max, x);
    }
    s.mean = acc / double(f.grid.size());
    s.l2 = std::sqrt(sq / double(f.grid.size()));
    return s;
}

double grad_l2_sq(const VectorField& w) {
    TensorField g = jacobian_matrix(w);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.a11.size(); ++i)
        acc += g.a11[i] * g.a11[i] + g.a12[i] * g.a12[i] + g.a21[i] * g.a21[i] +
               g.a22[i] * g.a22[i];
    return acc / double(w.grid.size());
}

} // namespace

EnergyLedgerEntry total_energy(const SimState& state, const FluidParams& fluid,
                               const CouplingSpec& spec) {
    EnergyLedgerEntry e;
    e.t = state.t;
    const std::size_t n2 = state.rho.grid.size();

    ScalarField en = internal_energy(state.rho, fluid);
    double kin = 0.0, inte = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < n2; ++i) {
        const double u2 = state.u.c1[i] * state.u.c1[i] + state.u.c2[i] * state.u.c2[i];
        kin += 0.5 * state.rho.v[i] * u2;
        inte += state.rho.v[i] * en.v[i];
        mag += 0.5 * (state.H.c1[i] * state.H.c1[i] + state.H.c2[i] * state.H.c2[i]);
    }
    e.kinetic = kin / double(n2);
    e.internal = inte / double(n2);
    e.magnetic = mag / double(n2);

    ScalarField v_y = specific_volume_lagr(state);
    double quart = 0.0, coup = 0.0;
    for (std::size_t i = 0; i < n2; ++i) {
        const double s = std::norm(state.psi.v[i]);
        quart += 0.25 * s * s;
        coup += spec.alpha() * spec.g_eval(v_y.v[i]) * spec.h_eval(s);
    }
    e.psi_quartic = quart / double(n2);
    e.coupling = coup / double(n2);

    // gradient term spectrally (Parseval)
    {
        SpectralScalar s = forward_transform(state.psi);
        const Grid g = state.psi.grid;
        double acc = 0.0;
        for (int iy = 0; iy < g.n; ++iy) {
            const double k2 = 2 * std::numbers::pi * g.kderiv(iy);
            for (int ix = 0; ix < g.n; ++ix) {
                const double k1 = 2 * std::numbers::pi * g.kderiv(ix);
                acc += (k1 * k1 + k2 * k2) * std::norm(s.c[std::size_t(iy) * g.n + ix]);
            }
        }
        e.psi_grad = 0.5 * acc / (double(n2) * double(n2));
    }

    e.total = e.kinetic + e.internal + e.magnetic + e.psi_grad + e.psi_quartic + e.coupling;
    return e;
}

double dissipation(const SimState& state, const FluidParams& fluid,
                   const MagneticParams& magnetic) {
    const std::size_t n2 = state.rho.grid.size();
    TensorField gu = jacobian_matrix(state.u);
    ScalarField lam = lambda_visc(state.rho, fluid);
    double acc = 0.0;
    for (std::size_t i = 0; i < n2; ++i) {
        const double grad2 = gu.a11[i] * gu.a11[i] + gu.a12[i] * gu.a12[i] +
                             gu.a21[i] * gu.a21[i] + gu.a22[i] * gu.a22[i];
        const double div = gu.a11[i] + gu.a22[i];
        acc += fluid.mu * grad2 + (lam.v[i] + fluid.mu) * div * div;
    }
    return acc / double(n2) + magnetic.nu * grad_l2_sq(state.H);
}

const EnergyLedgerEntry& EnergyTracker::update(const SimState& state) {
    EnergyLedgerEntry e = total_energy(state, fluid_, spec_);
    e.dissipation = dissipation(state, fluid_, magnetic_);
    if (history_.empty()) {
        e.d_cum = 0.0;
        e.residual = 0.0;
    } else {
        const EnergyLedgerEntry& prev = history_.back();
        e.d_cum = prev.d_cum + 0.5 * (e.t - prev.t) * (e.dissipation + prev.dissipation);
        e.residual = e.total + e.d_cum - history_.front().total;
    }
    history_.push_back(e);
    return history_.back();
}

std::vector<double> energy_identity_series(const std::vector<EnergyLedgerEntry>& history) {
    std::vector<double> out;
    if (history.empty()) return out;
    const double e0 = history.front().total;
    out.reserve(history.size());
    for (const auto& e : history) out.push_back(std::abs(e.residual) / e0);
    return out;
}

double jrho_check(const SimState& state, const ScalarField& rho0) {
    ScalarField j = jacobian(state.map);
    ScalarField r0y = compose_to_euler(rho0, state.map);
    double err = 0.0;
    for (std::size_t i = 0; i < j.v.size(); ++i) {
        const double got = j.v[i] / state.rho.v[i];
        const double want = 1.0 / r0y.v[i];
        err = std::max(err, std::abs(got - want) / std::abs(want));
    }
    return err;
}

BoundsReport bounds_report(const SimState& state, const ScalarField& rho0, double slack) {
    BoundsReport r;
    auto [lo, hi] = density_bounds(state.rho);
    r.rho_min = lo;
    r.rho_max = hi;

    ScalarField j = jacobian(state.map);
    r.jrho_min = 1e300;
    r.jrho_max = -1e300;
    for (std::size_t i = 0; i < j.v.size(); ++i) {
        const double q = j.v[i] / state.rho.v[i];
        r.jrho_min = std::min(r.jrho_min, q);
        r.jrho_max = std::max(r.jrho_max, q);
    }
    auto [r0lo, r0hi] = density_bounds(rho0);
    r.jrho_within_bounds = r.jrho_min >= (1.0 / r0hi) * (1.0 - slack) &&
                           r.jrho_max <= (1.0 / r0lo) * (1.0 + slack);

    r.divh_inf = linf_norm(divergence(state.H));
    r.psi_max = linf_norm(state.psi);
    r.defgrad_inf = tensor_linf(state.map.defgrad);
    return r;
}

FluxStats flux_stats(const FluxFields& flux) {
    FluxStats s;
    s.F = stats_of(flux.F);
    s.omega = stats_of(flux.omega);
    s.Lambda = stats_of(flux.Lambda);
    return s;
}

RelativeEnergy relative_energy(const SimState& a, const SimState& b) {
    if (!(a.rho.grid == b.rho.grid))
        throw std::invalid_argument("relative_energy: grid mismatch");
    RelativeEnergy r;
    const std::size_t n2 = a.rho.grid.size();
    for (std::size_t i = 0; i < n2; ++i) {
        const double dr = a.rho.v[i] - b.rho.v[i];
        const double du1 = a.u.c1[i] - b.u.c1[i], du2 = a.u.c2[i] - b.u.c2[i];
        const double dh1 = a.H.c1[i] - b.H.c1[i], dh2 = a.H.c2[i] - b.H.c2[i];
        r.rho_term += dr * dr;
        r.u_term += a.rho.v[i] * (du1 * du1 + du2 * du2);
        r.h_term += dh1 * dh1 + dh2 * dh2;
        r.psi_term += std::norm(a.psi.v[i] - b.psi.v[i]);
    }
    r.rho_term /= double(n2);
    r.u_term /= double(n2);
    r.h_term /= double(n2);
    r.psi_term /= double(n2);
    return r;
}

RelativeEnergy RelativeEnergyTracker::update(const SimState& a, const SimState& b) {
    RelativeEnergy r = relative_energy(a, b);
    VectorField du(a.u.grid), dh(a.u.grid);
    for (std::size_t i = 0; i < du.c1.size(); ++i) {
        du.c1[i] = a.u.c1[i] - b.u.c1[i];
        du.c2[i] = a.u.c2[i] - b.u.c2[i];
        dh.c1[i] = a.H.c1[i] - b.H.c1[i];
        dh.c2[i] = a.H.c2[i] - b.H.c2[i];
    }
    const double gu = grad_l2_sq(du);
    const double gh = grad_l2_sq(dh);
    if (primed_) {
        const double dt = a.t - last_t_;
        gu_cum_ += 0.5 * dt * (gu + last_gu_);
        gh_cum_ += 0.5 * dt * (gh + last_gh_);
    }
    primed_ = true;
    last_t_ = a.t;
    last_gu_ = gu;
    last_gh_ = gh;
    r.grad_u_cum = gu_cum_;
    r.grad_h_cum = gh_cum_;
    return r;
}

} // namespace swlw

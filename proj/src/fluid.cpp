#include "swlw/fluid.hpp"

#include <cmath>
#include <stdexcept>

namespace swlw {

namespace {

void require_positive(const ScalarField& rho, const char* who) {
    for (double x : rho.v)
        if (!(x > 0.0)) throw std::invalid_argument(std::string(who) + ": nonpositive density");
}

ScalarField pow_field(const ScalarField& rho, double expo, double coeff) {
    ScalarField out(rho.grid);
    for (std::size_t i = 0; i < rho.v.size(); ++i) out.v[i] = coeff * std::pow(rho.v[i], expo);
    return out;
}

// -div(rho u) + source, products dealiased
ScalarField continuity_rhs(const ScalarField& rho, const VectorField& u, double t,
                           const SourceFn& source) {
    VectorField flux(rho.grid);
    for (std::size_t i = 0; i < rho.v.size(); ++i) {
        flux.c1[i] = rho.v[i] * u.c1[i];
        flux.c2[i] = rho.v[i] * u.c2[i];
    }
    ScalarField rhs = divergence(dealias(flux));
    for (double& x : rhs.v) x = -x;
    if (source) {
        ScalarField s = source(t);
        for (std::size_t i = 0; i < rhs.v.size(); ++i) rhs.v[i] += s.v[i];
    }
    return rhs;
}

} // namespace

void FluidParams::validate() const {
    if (!(a > 0.0)) throw std::invalid_argument("fluid: a must be > 0");
    if (!(gamma > 1.0)) throw std::invalid_argument("fluid: gamma must be > 1");
    if (!(mu > 0.0)) throw std::invalid_argument("fluid: mu must be > 0");
    if (!(b > 0.0)) throw std::invalid_argument("fluid: b must be > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("fluid: beta must be > 0");
}

ScalarField pressure(const ScalarField& rho, const FluidParams& p) {
    require_positive(rho, "pressure");
    return pow_field(rho, p.gamma, p.a);
}

ScalarField lambda_visc(const ScalarField& rho, const FluidParams& p) {
    require_positive(rho, "lambda_visc");
    return pow_field(rho, p.beta, p.b);
}

ScalarField internal_energy(const ScalarField& rho, const FluidParams& p) {
    require_positive(rho, "internal_energy");
    return pow_field(rho, p.gamma - 1.0, p.a / (p.gamma - 1.0));
}

double cfl_number(const VectorField& u, double dt) {
    double vmax = 0.0;
    for (std::size_t i = 0; i < u.c1.size(); ++i)
        vmax = std::max(vmax, std::max(std::abs(u.c1[i]), std::abs(u.c2[i])));
    return vmax * dt / u.grid.h;
}

ScalarField continuity_step_spectral(const ScalarField& rho, const VectorField& u,
                                     double dt, double t, const SourceFn& source) {
    require_positive(rho, "continuity_step_spectral");
    const std::size_t m = rho.v.size();

    ScalarField k1 = continuity_rhs(rho, u, t, source);
    ScalarField s1(rho.grid);
    for (std::size_t i = 0; i < m; ++i) s1.v[i] = rho.v[i] + dt * k1.v[i];

    ScalarField k2 = continuity_rhs(s1, u, t + dt, source);
    ScalarField s2(rho.grid);
    for (std::size_t i = 0; i < m; ++i)
        s2.v[i] = 0.75 * rho.v[i] + 0.25 * (s1.v[i] + dt * k2.v[i]);

    ScalarField k3 = continuity_rhs(s2, u, t + 0.5 * dt, source);
    ScalarField out(rho.grid);
    for (std::size_t i = 0; i < m; ++i)
        out.v[i] = (1.0 / 3.0) * rho.v[i] + (2.0 / 3.0) * (s2.v[i] + dt * k3.v[i]);
    return out;
}

ScalarField continuity_step_characteristics(const ScalarField& rho, const VectorField& u,
                                            double dt) {
    require_positive(rho, "continuity_step_characteristics");
    const Grid g = rho.grid;

    ScalarField logrho(g);
    for (std::size_t i = 0; i < rho.v.size(); ++i) logrho.v[i] = std::log(rho.v[i]);
    Interpolant lr(logrho);

    ScalarField f1(g), f2(g);
    f1.v = u.c1;
    f2.v = u.c2;
    Interpolant u1(f1), u2(f2);
    Interpolant dv(divergence(u));

    // backward trace: ds runs from the arrival time to the departure time;
    // state is (position, accumulated div u along the path)
    ScalarField out(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            double x1 = ix * g.h, x2 = iy * g.h, acc = 0.0;
            auto rhs = [&](double p1, double p2, double& d1, double& d2, double& da) {
                d1 = -u1.eval(p1, p2);
                d2 = -u2.eval(p1, p2);
                da = dv.eval(p1, p2);
            };
            double a1, a2, aa, b1, b2, ba, c1, c2, ca, d1, d2, da;
            rhs(x1, x2, a1, a2, aa);
            rhs(x1 + 0.5 * dt * a1, x2 + 0.5 * dt * a2, b1, b2, ba);
            rhs(x1 + 0.5 * dt * b1, x2 + 0.5 * dt * b2, c1, c2, ca);
            rhs(x1 + dt * c1, x2 + dt * c2, d1, d2, da);
            const double q1 = x1 + dt / 6.0 * (a1 + 2 * b1 + 2 * c1 + d1);
            const double q2 = x2 + dt / 6.0 * (a2 + 2 * b2 + 2 * c2 + d2);
            acc = dt / 6.0 * (aa + 2 * ba + 2 * ca + da);
            out(ix, iy) = std::exp(lr.eval(q1, q2) - acc);
        }
    return out;
}

std::pair<double, double> density_bounds(const ScalarField& rho) {
    double lo = rho.v.empty() ? 0.0 : rho.v[0];
    double hi = lo;
    for (double x : rho.v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return {lo, hi};
}

} // namespace swlw

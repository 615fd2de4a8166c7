#include "swlw/mms.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "swlw/runner.hpp"
#include "swlw/scenarios.hpp"
#include "swlw/schrodinger.hpp"

namespace swlw {

namespace {

constexpr double pi = std::numbers::pi;

double lsq_order(const std::vector<double>& dts, const std::vector<double>& errs) {
    // slope of log(err) against log(dt)
    const std::size_t n = dts.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(dts[i]), y = std::log(std::max(errs[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double linf_diff(const ComplexField& a, const ComplexField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
    return m;
}

double linf_diff(const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.c1.size(); ++i) {
        m = std::max(m, std::abs(a.c1[i] - b.c1[i]));
        m = std::max(m, std::abs(a.c2[i] - b.c2[i]));
    }
    return m;
}

MmsReport nls_report(int levels) {
    MmsReport rep;
    rep.solver = "nls-strang";
    Grid g = Grid::make(32);
    CouplingSpec::Params cp;
    cp.alpha = 0.0;
    CouplingSpec spec(cp);
    ScalarField v_y(g, 1.0);

    ComplexField psi0(g);
    {
        ScalarField re = random_band_field(g, 91u, 0.4, 2);
        ScalarField im = random_band_field(g, 92u, 0.4, 2);
        for (std::size_t i = 0; i < psi0.v.size(); ++i) psi0.v[i] = {re.v[i], im.v[i]};
    }
    const double T = 0.04;
    const double dt0 = 4e-3;

    // fine reference for self-convergence
    const double dt_ref = dt0 / std::pow(2.0, levels + 2);
    ComplexField ref = psi0;
    for (int s = 0; s < int(std::round(T / dt_ref)); ++s) ref = nls_step(ref, v_y, spec, dt_ref);

    for (int l = 0; l < levels; ++l) {
        const double dt = dt0 / std::pow(2.0, l);
        ComplexField psi = psi0;
        for (int s = 0; s < int(std::round(T / dt)); ++s) psi = nls_step(psi, v_y, spec, dt);
        rep.dts.push_back(dt);
        rep.errors.push_back(linf_diff(psi, ref));
    }
    rep.observed_order = lsq_order(rep.dts, rep.errors);

    // spatial floor: plane wave with constant potential, phase analytic
    {
        const int k1 = 2, k2 = 1;
        const double A = 0.5;
        ComplexField pw(g);
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix) {
                const double ph = 2 * pi * (k1 * ix * g.h + k2 * iy * g.h);
                pw.v[std::size_t(iy) * g.n + ix] = A * cplx(std::cos(ph), std::sin(ph));
            }
        const double dt = 1e-3;
        const int steps = 40;
        ComplexField out = pw;
        for (int s = 0; s < steps; ++s) out = nls_step(out, v_y, spec, dt);
        const double omega = 4 * pi * pi * (k1 * k1 + k2 * k2) + A * A;
        double err = 0.0;
        for (std::size_t i = 0; i < out.v.size(); ++i) {
            const cplx want = pw.v[i] * cplx(std::cos(omega * dt * steps),
                                             -std::sin(omega * dt * steps));
            err = std::max(err, std::abs(out.v[i] - want));
        }
        rep.spatial_floor = err;
    }
    return rep;
}

MmsReport momentum_report(int levels) {
    MmsReport rep;
    rep.solver = "momentum-backward-euler";
    Grid g = Grid::make(32);
    FluidParams par;
    ScalarField rho(g);
    VectorField u_adv(g), w(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const std::size_t i = std::size_t(iy) * g.n + ix;
            const double x1 = ix * g.h, x2 = iy * g.h;
            rho.v[i] = 1.0 + 0.2 * std::cos(2 * pi * x1);
            u_adv.c1[i] = 0.3 * std::sin(2 * pi * x2);
            u_adv.c2[i] = 0.2 * std::cos(2 * pi * x1);
            w.c1[i] = std::sin(2 * pi * x2);
            w.c2[i] = 0.5 * std::cos(2 * pi * x1);
        }
    auto amp = [](double t) { return 1.0 + 0.5 * std::sin(3.0 * t); };
    auto amp_t = [](double t) { return 1.5 * std::cos(3.0 * t); };
    auto exact = [&](double t) {
        VectorField v(g);
        for (std::size_t i = 0; i < v.c1.size(); ++i) {
            v.c1[i] = amp(t) * w.c1[i];
            v.c2[i] = amp(t) * w.c2[i];
        }
        return v;
    };
    auto advection = [&](const VectorField& v) {
        ScalarField v1{g}, v2{g};
        v1.v = v.c1;
        v2.v = v.c2;
        VectorField g1 = gradient(v1), g2 = gradient(v2);
        VectorField out(g);
        for (std::size_t i = 0; i < out.c1.size(); ++i) {
            out.c1[i] = u_adv.c1[i] * g1.c1[i] + u_adv.c2[i] * g1.c2[i];
            out.c2[i] = u_adv.c1[i] * g2.c1[i] + u_adv.c2[i] * g2.c2[i];
        }
        return dealias(out);
    };
    auto rhs_at = [&](double t) {
        VectorField lam = lame_apply(exact(t), rho, par);
        VectorField adv = advection(exact(t));
        VectorField r(g);
        for (std::size_t i = 0; i < r.c1.size(); ++i) {
            r.c1[i] = rho.v[i] * (amp_t(t) * w.c1[i] + adv.c1[i]) + lam.c1[i];
            r.c2[i] = rho.v[i] * (amp_t(t) * w.c2[i] + adv.c2[i]) + lam.c2[i];
        }
        return r;
    };
    const double T = 0.2;
    const double dt0 = 2e-2;
    for (int l = 0; l < levels; ++l) {
        const double dt = dt0 / std::pow(2.0, l);
        VectorField v = exact(0.0);
        const int steps = int(std::round(T / dt));
        for (int s = 0; s < steps; ++s)
            v = solve_linear_momentum(rho, u_adv, rhs_at((s + 1) * dt), v, dt, 1e-12, 200, par);
        rep.dts.push_back(dt);
        rep.errors.push_back(linf_diff(v, exact(T)));
    }
    rep.observed_order = lsq_order(rep.dts, rep.errors);

    // steady manufactured solution: the solve reproduces it to the tolerance
    {
        VectorField vs = exact(0.4);
        VectorField lam = lame_apply(vs, rho, par);
        VectorField adv = advection(vs);
        VectorField r(g);
        for (std::size_t i = 0; i < r.c1.size(); ++i) {
            r.c1[i] = rho.v[i] * adv.c1[i] + lam.c1[i];
            r.c2[i] = rho.v[i] * adv.c2[i] + lam.c2[i];
        }
        VectorField v = solve_linear_momentum(rho, u_adv, r, vs, 1e-3, 1e-13, 200, par);
        rep.spatial_floor = linf_diff(v, vs);
    }
    return rep;
}

MmsReport coupled_report(const RunConfig& base, int levels) {
    MmsReport rep;
    rep.solver = "coupled-step";
    RunConfig cfg = base;
    cfg.n = 32;
    cfg.scenario.name = "smooth-random";
    cfg.scenario.seed = 2024;
    cfg.stepper.picard_tol = 1e-11;

    const double T = 0.02;
    const double dt0 = 2e-3;
    auto final_u = [&](double dt) {
        RunConfig c = cfg;
        c.stepper.dt = dt;
        c.t_end = T;
        SimState s = make_initial_state(c);
        Stepper st(c.fluid, c.magnetic, CouplingSpec(c.coupling), c.stepper, s.rho);
        return run(st, std::move(s), T).u;
    };
    VectorField ref = final_u(dt0 / std::pow(2.0, levels + 1));
    for (int l = 0; l < levels; ++l) {
        const double dt = dt0 / std::pow(2.0, l);
        rep.dts.push_back(dt);
        rep.errors.push_back(linf_diff(final_u(dt), ref));
    }
    rep.observed_order = lsq_order(rep.dts, rep.errors);

    // spatial floor of the coupled step: the continuity solver with a steady
    // manufactured source holds the manufactured density exactly
    {
        Grid g = Grid::make(32);
        ScalarField target(g);
        VectorField u(g);
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix) {
                const std::size_t i = std::size_t(iy) * g.n + ix;
                target.v[i] = 1.0 + 0.3 * std::sin(2 * pi * ix * g.h);
                u.c1[i] = 0.2 * std::sin(2 * pi * ix * g.h);
                u.c2[i] = 0.1 * std::cos(2 * pi * iy * g.h);
            }
        VectorField flux(g);
        for (std::size_t i = 0; i < flux.c1.size(); ++i) {
            flux.c1[i] = target.v[i] * u.c1[i];
            flux.c2[i] = target.v[i] * u.c2[i];
        }
        ScalarField src = divergence(dealias(flux));
        SourceFn fn = [&](double) { return src; };
        ScalarField rho = target;
        for (int s = 0; s < 50; ++s) rho = continuity_step_spectral(rho, u, 1e-3, 0.0, fn);
        double err = 0.0;
        for (std::size_t i = 0; i < rho.v.size(); ++i)
            err = std::max(err, std::abs(rho.v[i] - target.v[i]));
        rep.spatial_floor = err;
    }
    return rep;
}

} // namespace

std::vector<MmsReport> run_mms(const RunConfig& cfg, int levels) {
    if (levels < 2) levels = 2;
    std::vector<MmsReport> out;
    out.push_back(nls_report(levels));
    out.push_back(momentum_report(levels));
    out.push_back(coupled_report(cfg, levels));
    return out;
}

std::string mms_to_text(const std::vector<MmsReport>& reports) {
    std::ostringstream os;
    for (const auto& r : reports) {
        os << r.solver << ": observed order " << format_double(r.observed_order)
           << ", spatial floor " << format_double(r.spatial_floor) << "\n";
        for (std::size_t i = 0; i < r.dts.size(); ++i)
            os << "  dt = " << format_double(r.dts[i])
               << "  error = " << format_double(r.errors[i]) << "\n";
    }
    return os.str();
}

} // namespace swlw

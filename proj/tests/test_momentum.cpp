#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swlw/momentum.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace swlw;

namespace {

constexpr double pi = std::numbers::pi;

ScalarField sample(Grid g, auto&& fn) {
    ScalarField f(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) f(ix, iy) = fn(ix * g.h, iy * g.h);
    return f;
}

VectorField vsample(Grid g, auto&& f1, auto&& f2) {
    VectorField u(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            u.c1[std::size_t(iy) * g.n + ix] = f1(ix * g.h, iy * g.h);
            u.c2[std::size_t(iy) * g.n + ix] = f2(ix * g.h, iy * g.h);
        }
    return u;
}

double linf_diff(const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.c1.size(); ++i) {
        m = std::max(m, std::abs(a.c1[i] - b.c1[i]));
        m = std::max(m, std::abs(a.c2[i] - b.c2[i]));
    }
    return m;
}

// 6th-order centered difference, the independent oracle for spectral assembly
ScalarField fd_deriv(const ScalarField& f, int axis) {
    const int n = f.grid.n;
    const double h = f.grid.h;
    ScalarField d(f.grid);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            auto at = [&](int o) {
                const int jx = axis == 0 ? (ix + o + 3 * n) % n : ix;
                const int jy = axis == 1 ? (iy + o + 3 * n) % n : iy;
                return f(jx, jy);
            };
            d(ix, iy) = (-at(-3) + 9 * at(-2) - 45 * at(-1) + 45 * at(1) - 9 * at(2) +
                         at(3)) /
                        (60 * h);
        }
    return d;
}

} // namespace

TEST_CASE("lame_apply: constant-lambda shear reduces to -mu Lap u") {
    Grid g = Grid::make(64);
    FluidParams par;
    par.mu = 0.3;
    VectorField u = vsample(g, [](double, double x2) { return std::sin(2 * pi * x2); },
                            [](double, double) { return 0.0; });
    ScalarField rho(g, 1.0); // lambda(1) = b, constant
    VectorField lu = lame_apply(u, rho, par);
    double err = 0.0;
    for (std::size_t i = 0; i < lu.c1.size(); ++i) {
        err = std::max(err, std::abs(lu.c1[i] - par.mu * 4 * pi * pi * u.c1[i]));
        err = std::max(err, std::abs(lu.c2[i]));
    }
    CHECK(err < 1e-10);

    CHECK(linf_norm(lame_apply(VectorField(g), rho, par)) < 1e-14);
    VectorField cu(g);
    for (auto& x : cu.c1) x = 0.8;
    for (auto& x : cu.c2) x = -0.3;
    CHECK(linf_norm(lame_apply(cu, rho, par)) < 1e-12);
}

TEST_CASE("interaction force: decoupled, constant, and out-of-support cases") {
    Grid g = Grid::make(32);
    ComplexField psi(g, cplx(0.6, 0.3));
    ScalarField rho(g, 1.0);
    ScalarField jr(g, 1.0);

    CouplingSpec::Params p0;
    p0.alpha = 0.0;
    auto fo = interaction_force(rho, psi, jr, CouplingSpec(p0));
    CHECK(linf_norm(fo.f) == 0.0);
    CHECK(linf_norm(fo.grad_f) < 1e-14);

    CouplingSpec spec; // alpha=1
    auto fc = interaction_force(rho, psi, jr, spec);
    const double want = spec.g_prime(1.0) * spec.h_eval(std::norm(psi.v[0]));
    CHECK(fc.f.v[7] == doctest::Approx(want).epsilon(1e-12));
    CHECK(linf_norm(fc.grad_f) < 1e-10); // gradient of a constant

    // 1/rho outside supp g' everywhere -> f identically zero
    ScalarField thin(g, 1.0 / 3.0); // v = 3 > v_hi = 2
    auto fz = interaction_force(thin, psi, jr, spec);
    CHECK(linf_norm(fz.f) == 0.0);
}

TEST_CASE("assemble_rhs: null cases and constant H") {
    Grid g = Grid::make(32);
    FluidParams par;
    CouplingSpec::Params p0;
    p0.alpha = 0.0;
    CouplingSpec off(p0);
    ScalarField rho(g, 1.2);
    ScalarField jr(g, 1.0);
    ComplexField psi(g);

    MomentumRhs r = assemble_rhs(rho, VectorField(g), psi, jr, par, off);
    CHECK(linf_norm(r.total) < 1e-11);

    VectorField hc(g);
    for (auto& x : hc.c1) x = 0.5;
    for (auto& x : hc.c2) x = -0.25;
    MomentumRhs r2 = assemble_rhs(rho, hc, psi, jr, par, off);
    CHECK(linf_norm(r2.lorentz) < 1e-12);
}

TEST_CASE("assemble_rhs matches a term-by-term finite-difference oracle") {
    Grid g = Grid::make(64);
    FluidParams par;
    par.a = 0.9;
    par.gamma = 1.6;
    CouplingSpec spec;
    ScalarField rho = sample(g, [](double x1, double x2) {
        return 1.0 + 0.2 * std::sin(2 * pi * x1) + 0.1 * std::cos(2 * pi * x2);
    });
    VectorField H = vsample(g, [](double, double x2) { return 0.3 * std::sin(2 * pi * x2); },
                            [](double x1, double) { return 0.2 * std::cos(2 * pi * x1); });
    ComplexField psi(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const double ph = 2 * pi * (ix * g.h);
            psi.v[std::size_t(iy) * g.n + ix] =
                0.8 * cplx(std::cos(ph), std::sin(ph)) * (1.0 + 0.3 * std::sin(2 * pi * iy * g.h));
        }
    ScalarField jr = sample(g, [](double x1, double) { return 1.0 + 0.05 * std::cos(2 * pi * x1); });

    MomentumRhs r = assemble_rhs(rho, H, psi, jr, par, spec);

    // oracle, all derivatives by 6th-order finite differences
    ScalarField h1{g}, h2{g};
    h1.v = H.c1;
    h2.v = H.c2;
    ScalarField p = pressure(rho, par);
    ScalarField f(g);
    for (std::size_t i = 0; i < f.v.size(); ++i)
        f.v[i] = spec.alpha() * spec.g_prime(1.0 / rho.v[i]) *
                 spec.h_eval(std::norm(psi.v[i])) * jr.v[i];
    ScalarField h11 = fd_deriv(h1, 0), h12 = fd_deriv(h1, 1);
    ScalarField h21 = fd_deriv(h2, 0), h22 = fd_deriv(h2, 1);
    ScalarField habs(g);
    for (std::size_t i = 0; i < habs.v.size(); ++i)
        habs.v[i] = H.c1[i] * H.c1[i] + H.c2[i] * H.c2[i];

    double err = 0.0;
    ScalarField dh1 = fd_deriv(habs, 0), dh2 = fd_deriv(habs, 1);
    ScalarField dp1 = fd_deriv(p, 0), dp2 = fd_deriv(p, 1);
    ScalarField df1 = fd_deriv(f, 0), df2 = fd_deriv(f, 1);
    for (std::size_t i = 0; i < f.v.size(); ++i) {
        const double w1 = H.c1[i] * h11.v[i] + H.c2[i] * h12.v[i] - 0.5 * dh1.v[i] -
                          dp1.v[i] + df1.v[i];
        const double w2 = H.c1[i] * h21.v[i] + H.c2[i] * h22.v[i] - 0.5 * dh2.v[i] -
                          dp2.v[i] + df2.v[i];
        err = std::max(err, std::abs(r.total.c1[i] - w1));
        err = std::max(err, std::abs(r.total.c2[i] - w2));
    }
    CHECK(err < 1e-6);
}

TEST_CASE("momentum solve: zero data gives zero") {
    Grid g = Grid::make(32);
    FluidParams par;
    ScalarField rho(g, 1.0);
    VectorField v = solve_linear_momentum(rho, VectorField(g), VectorField(g),
                                          VectorField(g), 1e-3, 1e-12, 50, par);
    CHECK(linf_norm(v) < 1e-14);
}

TEST_CASE("momentum solve: per-mode closed form for an eigenfunction rhs") {
    Grid g = Grid::make(32);
    FluidParams par;
    par.mu = 0.4;
    const double rho0 = 1.3;
    ScalarField rho(g, rho0);
    // rhs along e1 varying in x2: kappa-perpendicular, eigenvalue mu |kappa|^2
    VectorField rhs = vsample(g, [](double, double x2) { return std::sin(2 * pi * x2); },
                              [](double, double) { return 0.0; });
    VectorField u_n = vsample(g, [](double, double x2) { return 0.5 * std::cos(2 * pi * x2); },
                              [](double, double) { return 0.0; });
    const double dt = 2e-3;
    InnerSolveReport rep;
    VectorField v =
        solve_linear_momentum(rho, VectorField(g), rhs, u_n, dt, 1e-13, 60, par, &rep);
    CHECK(rep.converged);
    CHECK(rep.residual_rel < 10 * 1e-10);

    const double eig = par.mu * 4 * pi * pi;
    double err = 0.0;
    for (std::size_t i = 0; i < v.c1.size(); ++i) {
        const double want = (u_n.c1[i] + dt * rhs.c1[i] / rho0) / (1.0 + dt * eig / rho0);
        err = std::max(err, std::abs(v.c1[i] - want));
        err = std::max(err, std::abs(v.c2[i]));
    }
    CHECK(err < 1e-10);
}

TEST_CASE("momentum solve is linear in (rhs, u_n)") {
    Grid g = Grid::make(32);
    FluidParams par;
    ScalarField rho = sample(g, [](double x1, double x2) {
        return 1.0 + 0.15 * std::sin(2 * pi * x1) * std::cos(2 * pi * x2);
    });
    VectorField u_adv = vsample(g, [](double, double x2) { return 0.2 * std::sin(2 * pi * x2); },
                                [](double x1, double) { return 0.1 * std::sin(2 * pi * x1); });
    std::mt19937_64 rng(42);
    std::normal_distribution<double> dist;
    auto randvec = [&] {
        VectorField v(g);
        for (int k = 0; k < 3; ++k) {
            const double a1 = dist(rng), a2 = dist(rng), p1 = dist(rng), p2 = dist(rng);
            for (int iy = 0; iy < g.n; ++iy)
                for (int ix = 0; ix < g.n; ++ix) {
                    const std::size_t i = std::size_t(iy) * g.n + ix;
                    v.c1[i] += a1 * std::sin(2 * pi * ((k + 1) * ix * g.h) + p1);
                    v.c2[i] += a2 * std::cos(2 * pi * ((k + 1) * iy * g.h) + p2);
                }
        }
        return v;
    };
    VectorField r1 = randvec(), r2 = randvec(), n1 = randvec(), n2 = randvec();
    const double dt = 1e-3, tol = 1e-13;
    VectorField v1 = solve_linear_momentum(rho, u_adv, r1, n1, dt, tol, 80, par);
    VectorField v2 = solve_linear_momentum(rho, u_adv, r2, n2, dt, tol, 80, par);
    const double ca = 0.7, cb = -1.3;
    VectorField rc(g), nc(g);
    for (std::size_t i = 0; i < rc.c1.size(); ++i) {
        rc.c1[i] = ca * r1.c1[i] + cb * r2.c1[i];
        rc.c2[i] = ca * r1.c2[i] + cb * r2.c2[i];
        nc.c1[i] = ca * n1.c1[i] + cb * n2.c1[i];
        nc.c2[i] = ca * n1.c2[i] + cb * n2.c2[i];
    }
    VectorField vc = solve_linear_momentum(rho, u_adv, rc, nc, dt, tol, 80, par);
    double err = 0.0;
    for (std::size_t i = 0; i < vc.c1.size(); ++i) {
        err = std::max(err, std::abs(vc.c1[i] - ca * v1.c1[i] - cb * v2.c1[i]));
        err = std::max(err, std::abs(vc.c2[i] - ca * v1.c2[i] - cb * v2.c2[i]));
    }
    CHECK(err < 1e-10);
}

TEST_CASE("momentum solve: manufactured solution converges at first order in time") {
    Grid g = Grid::make(32);
    FluidParams par;
    ScalarField rho = sample(g, [](double x1, double) {
        return 1.0 + 0.2 * std::cos(2 * pi * x1);
    });
    VectorField u_adv = vsample(g, [](double, double x2) { return 0.3 * std::sin(2 * pi * x2); },
                                [](double x1, double) { return 0.2 * std::cos(2 * pi * x1); });
    VectorField w = vsample(g, [](double, double x2) { return std::sin(2 * pi * x2); },
                            [](double x1, double) { return 0.5 * std::cos(2 * pi * x1); });
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
    // rhs built from the discrete spatial operators so the measured error is
    // purely temporal
    auto rhs_at = [&](double t) {
        VectorField adv = lame_apply(exact(t), rho, par);
        VectorField ug(g);
        {
            ScalarField w1{g}, w2{g};
            w1.v = exact(t).c1;
            w2.v = exact(t).c2;
            VectorField g1 = gradient(w1), g2 = gradient(w2);
            for (std::size_t i = 0; i < ug.c1.size(); ++i) {
                ug.c1[i] = u_adv.c1[i] * g1.c1[i] + u_adv.c2[i] * g1.c2[i];
                ug.c2[i] = u_adv.c1[i] * g2.c1[i] + u_adv.c2[i] * g2.c2[i];
            }
            ug = dealias(ug);
        }
        VectorField r(g);
        for (std::size_t i = 0; i < r.c1.size(); ++i) {
            r.c1[i] = rho.v[i] * (amp_t(t) * w.c1[i] + ug.c1[i]) + adv.c1[i];
            r.c2[i] = rho.v[i] * (amp_t(t) * w.c2[i] + ug.c2[i]) + adv.c2[i];
        }
        return r;
    };
    const double T = 0.2;
    std::vector<double> errs;
    for (double dt : {2e-2, 1e-2, 5e-3}) {
        VectorField v = exact(0.0);
        const int steps = int(std::round(T / dt));
        for (int s = 0; s < steps; ++s)
            v = solve_linear_momentum(rho, u_adv, rhs_at((s + 1) * dt), v, dt, 1e-12, 120, par);
        errs.push_back(linf_diff(v, exact(T)));
    }
    const double order = std::log2(errs[0] / errs[1]);
    const double order2 = std::log2(errs[1] / errs[2]);
    CHECK(order > 0.9);
    CHECK(order2 > 0.9);

    // steady manufactured solution: spatial error at the solver floor
    VectorField vs = exact(0.317);
    VectorField r(g);
    {
        VectorField adv = lame_apply(vs, rho, par);
        ScalarField w1{g}, w2{g};
        w1.v = vs.c1;
        w2.v = vs.c2;
        VectorField g1 = gradient(w1), g2 = gradient(w2);
        VectorField ug(g);
        for (std::size_t i = 0; i < ug.c1.size(); ++i) {
            ug.c1[i] = u_adv.c1[i] * g1.c1[i] + u_adv.c2[i] * g1.c2[i];
            ug.c2[i] = u_adv.c1[i] * g2.c1[i] + u_adv.c2[i] * g2.c2[i];
        }
        ug = dealias(ug);
        for (std::size_t i = 0; i < r.c1.size(); ++i) {
            r.c1[i] = rho.v[i] * ug.c1[i] + adv.c1[i];
            r.c2[i] = rho.v[i] * ug.c2[i] + adv.c2[i];
        }
    }
    VectorField vsolve = solve_linear_momentum(rho, u_adv, r, vs, 1e-3, 1e-13, 120, par);
    CHECK(linf_diff(vsolve, vs) < 1e-10);
}

TEST_CASE("effective flux formula, Lambda(1) = 0, and Lambda'(rho) rho = 2mu + lambda") {
    Grid g = Grid::make(32);
    FluidParams par;
    par.mu = 0.25;
    par.a = 1.1;
    par.gamma = 1.5;
    const double rho0 = 1.4, f0 = 0.3;
    FluxFields fx = effective_flux(VectorField(g), ScalarField(g, rho0), VectorField(g),
                                   ScalarField(g, f0), par);
    CHECK(fx.F.v[3] == doctest::Approx(-1.1 * std::pow(rho0, 1.5) + f0).epsilon(1e-13));
    CHECK(linf_norm(fx.omega) < 1e-14);

    FluxFields at1 = effective_flux(VectorField(g), ScalarField(g, 1.0), VectorField(g),
                                    ScalarField(g), par);
    CHECK(linf_norm(at1.Lambda) < 1e-15);

    // Lambda'(rho) rho = 2 mu + lambda(rho) by central differences
    par.b = 1.8;
    par.beta = 2.3;
    for (double r0 : {0.6, 1.0, 1.7}) {
        const double d = 1e-6;
        FluxFields up = effective_flux(VectorField(g), ScalarField(g, r0 + d), VectorField(g),
                                       ScalarField(g), par);
        FluxFields dn = effective_flux(VectorField(g), ScalarField(g, r0 - d), VectorField(g),
                                       ScalarField(g), par);
        const double fd = (up.Lambda.v[0] - dn.Lambda.v[0]) / (2 * d);
        const double want = (2 * par.mu + par.b * std::pow(r0, par.beta)) / r0;
        CHECK(std::abs(fd - want) < 1e-6);
    }
}

TEST_CASE("Lambda transport residual vanishes at rest and is O(dt) on smooth flow") {
    Grid g = Grid::make(64);
    FluidParams par;
    ScalarField rho = sample(g, [](double x1, double x2) {
        return 1.0 + 0.2 * std::sin(2 * pi * x1) * std::cos(2 * pi * x2);
    });
    // at rest: D_t Lambda = 0 and F + p + |H|^2/2 - f = (2mu+lambda) div 0 = 0
    ScalarField res0 = lambda_transport_residual(rho, rho, VectorField(g), VectorField(g),
                                                 ScalarField(g), 1e-3, par);
    CHECK(linf_norm(res0) < 1e-12);

    VectorField u = vsample(g, [](double x1, double) { return 0.3 * std::sin(2 * pi * x1); },
                            [](double, double x2) { return 0.2 * std::cos(2 * pi * x2); });
    auto res_at = [&](double dt) {
        ScalarField next = continuity_step_spectral(rho, u, dt);
        ScalarField f(g);
        return l2_norm(lambda_transport_residual(rho, next, u, VectorField(g), f, dt, par));
    };
    const double r1 = res_at(1e-3);
    const double r2 = res_at(5e-4);
    CHECK(r1 / r2 > 1.7);
    CHECK(r1 / r2 < 2.3);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swlw/fluid.hpp"

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

ScalarField random_positive(Grid g, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.5, 2.0);
    ScalarField f(g);
    for (auto& x : f.v) x = dist(rng);
    return f;
}

double linf_diff(const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
    return m;
}

} // namespace

TEST_CASE("pressure power law") {
    Grid g = Grid::make(16);
    FluidParams p;
    p.a = 1.0;
    p.gamma = 2.0;
    CHECK(pressure(ScalarField(g, 2.0), p).v[5] == doctest::Approx(4.0).epsilon(1e-15));
    p.a = 1.7;
    CHECK(pressure(ScalarField(g, 1.0), p).v[0] == doctest::Approx(1.7).epsilon(1e-15));

    // pointwise scalar-loop oracle on random positive densities
    p.a = 0.8;
    p.gamma = 1.4;
    ScalarField rho = random_positive(g, 5u);
    ScalarField pr = pressure(rho, p);
    for (std::size_t i = 0; i < rho.v.size(); ++i)
        CHECK(pr.v[i] == doctest::Approx(0.8 * std::pow(rho.v[i], 1.4)).epsilon(1e-14));

    ScalarField bad(g, 1.0);
    bad.v[3] = 0.0;
    CHECK_THROWS(pressure(bad, p));
}

TEST_CASE("bulk viscosity power law") {
    Grid g = Grid::make(8);
    FluidParams p;
    p.b = 1.0;
    p.beta = 2.0;
    CHECK(lambda_visc(ScalarField(g, 3.0), p).v[1] == doctest::Approx(9.0).epsilon(1e-15));
    p.b = 2.5;
    CHECK(lambda_visc(ScalarField(g, 1.0), p).v[0] == doctest::Approx(2.5).epsilon(1e-15));
    p.b = 0.6;
    p.beta = 1.7;
    ScalarField rho = random_positive(g, 6u);
    ScalarField lam = lambda_visc(rho, p);
    for (std::size_t i = 0; i < rho.v.size(); ++i)
        CHECK(lam.v[i] == doctest::Approx(0.6 * std::pow(rho.v[i], 1.7)).epsilon(1e-14));
}

TEST_CASE("internal energy closed form and defining relation") {
    Grid g = Grid::make(8);
    FluidParams p;
    p.a = 1.0;
    p.gamma = 2.0;
    // integral of a s^(gamma-2) from 0 to rho
    CHECK(internal_energy(ScalarField(g, 2.0), p).v[0] == doctest::Approx(2.0).epsilon(1e-14));
    p.a = 1.3;
    CHECK(internal_energy(ScalarField(g, 1.0), p).v[0] == doctest::Approx(1.3).epsilon(1e-14));

    // d e / d rho = p / rho^2 by central differences
    p.a = 0.9;
    p.gamma = 1.6;
    for (double rho0 : {0.7, 1.0, 1.8}) {
        const double d = 1e-5;
        ScalarField up(g, rho0 + d), dn(g, rho0 - d), at(g, rho0);
        const double fd =
            (internal_energy(up, p).v[0] - internal_energy(dn, p).v[0]) / (2 * d);
        const double want = pressure(at, p).v[0] / (rho0 * rho0);
        CHECK(std::abs(fd - want) < 1e-6);
    }
}

TEST_CASE("spectral continuity: zero velocity is the identity") {
    Grid g = Grid::make(32);
    ScalarField rho = random_positive(g, 9u);
    ScalarField out = continuity_step_spectral(rho, VectorField(g), 1e-2);
    CHECK(linf_diff(rho, out) < 1e-14);
}

TEST_CASE("spectral continuity: divergence-free transport preserves L2 and mass") {
    Grid g = Grid::make(64);
    ScalarField rho = sample(g, [](double x1, double x2) {
        return 1.0 + 0.3 * std::sin(2 * pi * x1) * std::cos(2 * pi * x2);
    });
    VectorField u(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix)
            u.c1[std::size_t(iy) * g.n + ix] = std::sin(2 * pi * iy * g.h);
    const double l2_0 = l2_norm(rho);
    const double mass0 = mean(rho);
    const double dt = 1e-3;
    double worst_mass_step = 0.0;
    for (int s = 0; s < 100; ++s) {
        const double before = mean(rho);
        rho = continuity_step_spectral(rho, u, dt);
        worst_mass_step = std::max(worst_mass_step, std::abs(mean(rho) - before));
    }
    CHECK(std::abs(l2_norm(rho) - l2_0) < 1e-8);
    CHECK(worst_mass_step < 1e-13);
    CHECK(std::abs(mean(rho) - mass0) < 1e-12);
}

TEST_CASE("spectral continuity: manufactured source gives temporal order >= 2.9") {
    Grid g = Grid::make(32);
    VectorField u(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            u.c1[std::size_t(iy) * g.n + ix] = 0.2 * std::sin(2 * pi * ix * g.h);
            u.c2[std::size_t(iy) * g.n + ix] = 0.1 * std::cos(2 * pi * iy * g.h);
        }
    auto exact = [&](double t) {
        return sample(g, [&](double x1, double x2) {
            return 1.0 + 0.3 * std::sin(2 * pi * x1) * std::cos(3 * t) +
                   0.2 * std::cos(2 * pi * x2) * std::sin(2 * t);
        });
    };
    SourceFn source = [&](double t) {
        return sample(g, [&](double x1, double x2) {
            const double rho = 1.0 + 0.3 * std::sin(2 * pi * x1) * std::cos(3 * t) +
                               0.2 * std::cos(2 * pi * x2) * std::sin(2 * t);
            const double rho_t = -0.9 * std::sin(2 * pi * x1) * std::sin(3 * t) +
                                 0.4 * std::cos(2 * pi * x2) * std::cos(2 * t);
            const double d1rho = 0.3 * 2 * pi * std::cos(2 * pi * x1) * std::cos(3 * t);
            const double d2rho = -0.2 * 2 * pi * std::sin(2 * pi * x2) * std::sin(2 * t);
            const double u1 = 0.2 * std::sin(2 * pi * x1);
            const double u2 = 0.1 * std::cos(2 * pi * x2);
            const double divu = 0.2 * 2 * pi * std::cos(2 * pi * x1) -
                                0.1 * 2 * pi * std::sin(2 * pi * x2);
            return rho_t + d1rho * u1 + d2rho * u2 + rho * divu;
        });
    };
    const double T = 0.1;
    std::vector<double> errs;
    for (double dt : {1e-2, 5e-3, 2.5e-3}) {
        ScalarField rho = exact(0.0);
        double t = 0.0;
        const int steps = int(std::round(T / dt));
        for (int s = 0; s < steps; ++s) {
            rho = continuity_step_spectral(rho, u, dt, t, source);
            t += dt;
        }
        errs.push_back(linf_diff(rho, exact(T)));
    }
    const double order1 = std::log2(errs[0] / errs[1]);
    const double order2 = std::log2(errs[1] / errs[2]);
    CHECK(order1 > 2.9);
    CHECK(order2 > 2.9);
}

TEST_CASE("characteristics continuity: identity at zero velocity") {
    Grid g = Grid::make(32);
    ScalarField rho = sample(g, [](double x1, double x2) {
        return 1.0 + 0.4 * std::cos(2 * pi * (x1 + x2));
    });
    ScalarField out = continuity_step_characteristics(rho, VectorField(g), 1e-2);
    CHECK(linf_diff(rho, out) < 1e-13);
}

TEST_CASE("characteristics continuity: rigid translation transports exactly") {
    Grid g = Grid::make(64);
    auto rho0 = [](double x1, double x2) {
        return 1.0 + 0.3 * std::sin(2 * pi * x1) + 0.1 * std::cos(2 * pi * x2);
    };
    ScalarField rho = sample(g, rho0);
    VectorField u(g);
    const double c = 0.37;
    for (auto& x : u.c1) x = c;
    const double dt = 1e-2;
    const int steps = 20;
    for (int s = 0; s < steps; ++s) rho = continuity_step_characteristics(rho, u, dt);
    const double shift = c * dt * steps;
    ScalarField want = sample(g, [&](double x1, double x2) {
        return rho0(wrap01(x1 - shift), x2);
    });
    CHECK(linf_diff(rho, want) < 5e-6); // ~20 steps of B-spline interp error
}

TEST_CASE("characteristics output stays positive on rough positive data") {
    Grid g = Grid::make(32);
    ScalarField rho = random_positive(g, 13u); // deliberately non-smooth
    VectorField u(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            u.c1[std::size_t(iy) * g.n + ix] = std::sin(2 * pi * iy * g.h);
            u.c2[std::size_t(iy) * g.n + ix] = std::cos(2 * pi * ix * g.h);
        }
    for (int s = 0; s < 10; ++s) {
        rho = continuity_step_characteristics(rho, u, 5e-3);
        for (double x : rho.v) CHECK(x > 0.0);
    }
}

TEST_CASE("the two continuity solvers agree on smooth data") {
    Grid g = Grid::make(64);
    ScalarField rho_a = sample(g, [](double x1, double x2) {
        return 1.0 + 0.2 * std::sin(2 * pi * x1) * std::cos(2 * pi * x2);
    });
    ScalarField rho_b = rho_a;
    VectorField u(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            u.c1[std::size_t(iy) * g.n + ix] = 0.3 * std::sin(2 * pi * iy * g.h);
            u.c2[std::size_t(iy) * g.n + ix] = 0.2 * std::cos(2 * pi * ix * g.h);
        }
    const double dt = 1e-3;
    for (int s = 0; s < 100; ++s) {
        rho_a = continuity_step_spectral(rho_a, u, dt);
        rho_b = continuity_step_characteristics(rho_b, u, dt);
    }
    CHECK(linf_diff(rho_a, rho_b) < 1e-4);
}

TEST_CASE("density bounds and CFL report") {
    Grid g = Grid::make(64);
    CHECK(density_bounds(ScalarField(g, 1.0)) == std::pair{1.0, 1.0});
    ScalarField rho = sample(g, [](double x1, double) {
        return 1.0 + 0.5 * std::sin(2 * pi * x1);
    });
    auto [lo, hi] = density_bounds(rho);
    CHECK(lo == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(hi == doctest::Approx(1.5).epsilon(1e-3));

    // monotone under pointwise scaling
    ScalarField rho2 = rho;
    for (auto& x : rho2.v) x *= 2.0;
    auto [lo2, hi2] = density_bounds(rho2);
    CHECK(lo2 == doctest::Approx(2 * lo));
    CHECK(hi2 == doctest::Approx(2 * hi));

    VectorField u(g);
    for (auto& x : u.c1) x = 2.0;
    CHECK(cfl_number(u, 1e-2) == doctest::Approx(2.0 * 1e-2 * 64).epsilon(1e-12));
}

TEST_CASE("fluid parameter validation") {
    FluidParams p;
    p.gamma = 1.0;
    CHECK_THROWS(p.validate());
    p = {};
    p.mu = 0.0;
    CHECK_THROWS(p.validate());
    p = {};
    p.beta = 1.0; // allowed, only the no-vacuum guarantee is void
    p.validate();
    CHECK(!p.no_vacuum_guarantee());
}

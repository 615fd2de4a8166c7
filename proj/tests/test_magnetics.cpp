#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swlw/magnetics.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace swlw;

namespace {

constexpr double pi = std::numbers::pi;

VectorField random_vec(Grid g, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    VectorField v(g);
    for (auto& x : v.c1) x = dist(rng);
    for (auto& x : v.c2) x = dist(rng);
    return v;
}

double linf_diff(const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.c1.size(); ++i) {
        m = std::max(m, std::abs(a.c1[i] - b.c1[i]));
        m = std::max(m, std::abs(a.c2[i] - b.c2[i]));
    }
    return m;
}

} // namespace

TEST_CASE("projection fixes divergence-free fields") {
    Grid g = Grid::make(32);
    VectorField h(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            // curl of a stream function: automatically solenoidal
            const double x1 = ix * g.h, x2 = iy * g.h;
            h.c1[std::size_t(iy) * g.n + ix] = 2 * pi * std::cos(2 * pi * x2);
            h.c2[std::size_t(iy) * g.n + ix] = -2 * pi * std::sin(2 * pi * x1);
        }
    CHECK(linf_diff(project_divfree(h), h) < 1e-13);
}

TEST_CASE("projection annihilates gradients and preserves the mean") {
    Grid g = Grid::make(32);
    ScalarField phi(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix)
            phi(ix, iy) = std::sin(2 * pi * ix * g.h) * std::cos(2 * pi * 3 * iy * g.h);
    VectorField gp = gradient(phi);
    CHECK(linf_norm(project_divfree(gp)) < 1e-11);

    VectorField c(g);
    for (auto& x : c.c1) x = 1.5;
    for (auto& x : c.c2) x = -0.5;
    CHECK(linf_diff(project_divfree(c), c) < 1e-14);
}

TEST_CASE("projection is idempotent and output is solenoidal") {
    Grid g = Grid::make(64);
    VectorField h = random_vec(g, 3u);
    VectorField p1 = project_divfree(h);
    VectorField p2 = project_divfree(p1);
    CHECK(linf_diff(p1, p2) < 1e-13);
    CHECK(linf_norm(divergence(p1)) < 1e-10);
}

TEST_CASE("induction with u=0 decays each mode by the exact heat kernel") {
    Grid g = Grid::make(32);
    MagneticParams mp;
    mp.nu = 0.07;
    // div-free two-mode field
    VectorField h(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const double x1 = ix * g.h, x2 = iy * g.h;
            h.c1[std::size_t(iy) * g.n + ix] = std::sin(2 * pi * x2) + std::cos(2 * pi * 3 * x2);
            h.c2[std::size_t(iy) * g.n + ix] = std::sin(2 * pi * 2 * x1);
        }
    const double dt = 2e-3;
    const int steps = 25;
    VectorField out = h;
    for (int s = 0; s < steps; ++s) out = induction_step(out, VectorField(g), dt, mp);
    const double t = dt * steps;
    double err = 0.0;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const double x1 = ix * g.h, x2 = iy * g.h;
            const double k1 = 4 * pi * pi; // |2 pi k|^2 for |k|=1
            const double k2 = 4 * pi * pi * 4;
            const double k3 = 4 * pi * pi * 9;
            const double w1 = std::sin(2 * pi * x2) * std::exp(-mp.nu * k1 * t) +
                              std::cos(2 * pi * 3 * x2) * std::exp(-mp.nu * k3 * t);
            const double w2 = std::sin(2 * pi * 2 * x1) * std::exp(-mp.nu * k2 * t);
            err = std::max(err, std::abs(h.c1[0] * 0 + out.c1[std::size_t(iy) * g.n + ix] - w1));
            err = std::max(err, std::abs(out.c2[std::size_t(iy) * g.n + ix] - w2));
        }
    CHECK(err < 1e-10);
}

TEST_CASE("zero field stays zero; constant field is undamped") {
    Grid g = Grid::make(16);
    MagneticParams mp;
    VectorField zero(g);
    CHECK(linf_norm(induction_step(zero, random_vec(g, 5u), 1e-2, mp)) < 1e-14);

    VectorField c(g);
    for (auto& x : c.c1) x = 0.7;
    VectorField out = induction_step(c, VectorField(g), 1e-2, mp);
    CHECK(linf_diff(out, c) < 1e-13);
}

TEST_CASE("generic flow keeps div H at round-off and u=0 energy monotone") {
    Grid g = Grid::make(64);
    MagneticParams mp;
    mp.nu = 0.02;
    VectorField h = project_divfree(random_vec(g, 8u));
    h = dealias(h);
    VectorField u(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            u.c1[std::size_t(iy) * g.n + ix] = 0.4 * std::sin(2 * pi * iy * g.h);
            u.c2[std::size_t(iy) * g.n + ix] = 0.3 * std::cos(2 * pi * ix * g.h);
        }
    for (int s = 0; s < 40; ++s) {
        h = induction_step(h, u, 1e-3, mp);
        CHECK(linf_norm(divergence(h)) < 1e-10);
    }

    VectorField hd = project_divfree(random_vec(g, 9u));
    double prev = l2_norm(hd);
    for (int s = 0; s < 20; ++s) {
        hd = induction_step(hd, VectorField(g), 1e-3, mp);
        const double now = l2_norm(hd);
        CHECK(now <= prev + 1e-14);
        prev = now;
    }
}

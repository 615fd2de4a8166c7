#include "swlw/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "swlw/magnetics.hpp"

namespace swlw {

namespace {

constexpr double pi = std::numbers::pi;

ComplexField plane_wave(Grid g, double amp, int k1, int k2) {
    ComplexField psi(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const double ph = 2 * pi * (k1 * ix * g.h + k2 * iy * g.h);
            psi.v[std::size_t(iy) * g.n + ix] = amp * cplx(std::cos(ph), std::sin(ph));
        }
    return psi;
}

SimState equilibrium(const RunConfig& cfg, Grid g) {
    SimState s;
    s.rho = ScalarField(g, cfg.scenario.rho0);
    s.u = VectorField(g);
    s.H = VectorField(g);
    s.psi = plane_wave(g, cfg.scenario.psi_amp, cfg.scenario.psi_k1, cfg.scenario.psi_k2);
    s.map = FlowMapState::identity(g);
    return s;
}

SimState smooth_random(const RunConfig& cfg, Grid g) {
    const auto& sc = cfg.scenario;
    SimState s;
    s.rho = random_band_field(g, sc.seed, sc.rho_amp, sc.kmax);
    for (auto& x : s.rho.v) x += 1.0;
    s.u = VectorField(g);
    s.u.c1 = random_band_field(g, sc.seed + 1, sc.u_amp, sc.kmax).v;
    s.u.c2 = random_band_field(g, sc.seed + 2, sc.u_amp, sc.kmax).v;
    VectorField h(g);
    h.c1 = random_band_field(g, sc.seed + 3, sc.H_amp, sc.kmax).v;
    h.c2 = random_band_field(g, sc.seed + 4, sc.H_amp, sc.kmax).v;
    s.H = project_divfree(h);
    ScalarField re = random_band_field(g, sc.seed + 5, sc.psi_amp, sc.kmax);
    ScalarField im = random_band_field(g, sc.seed + 6, sc.psi_amp, sc.kmax);
    s.psi = ComplexField(g);
    for (std::size_t i = 0; i < s.psi.v.size(); ++i) s.psi.v[i] = {re.v[i], im.v[i]};
    s.map = FlowMapState::identity(g);
    return s;
}

SimState shear(const RunConfig& cfg, Grid g) {
    const auto& sc = cfg.scenario;
    SimState s;
    s.rho = ScalarField(g);
    s.u = VectorField(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const std::size_t i = std::size_t(iy) * g.n + ix;
            const double x1 = ix * g.h, x2 = iy * g.h;
            s.rho.v[i] = 1.0 + sc.shear_rho * std::cos(2 * pi * x2);
            s.u.c1[i] = sc.shear_ux * std::sin(2 * pi * x2);
            s.u.c2[i] = sc.shear_uy * std::sin(2 * pi * x1);
        }
    s.H = VectorField(g);
    s.psi = ComplexField(g);
    s.map = FlowMapState::identity(g);
    return s;
}

} // namespace

ScalarField random_band_field(Grid g, unsigned long seed, double amp, int kmax) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    ScalarField f(g);
    // fixed mode order; half-plane so every mode is an independent draw
    for (int k2 = -kmax; k2 <= kmax; ++k2)
        for (int k1 = 0; k1 <= kmax; ++k1) {
            if (k1 == 0 && k2 <= 0) continue;
            const double a = dist(rng), b = dist(rng);
            for (int iy = 0; iy < g.n; ++iy)
                for (int ix = 0; ix < g.n; ++ix) {
                    const double ph = 2 * pi * (k1 * ix * g.h + k2 * iy * g.h);
                    f(ix, iy) += a * std::cos(ph) + b * std::sin(ph);
                }
        }
    const double m = linf_norm(f);
    if (m > 0.0)
        for (auto& x : f.v) x *= amp / m;
    return f;
}

SimState perturb_state(const SimState& base, double delta, unsigned long seed, int kmax) {
    const Grid g = base.rho.grid;
    SimState s = base;
    ScalarField p0 = random_band_field(g, seed, 1.0, kmax);
    ScalarField p1 = random_band_field(g, seed + 1, 1.0, kmax);
    ScalarField p2 = random_band_field(g, seed + 2, 1.0, kmax);
    VectorField hp(g);
    hp.c1 = random_band_field(g, seed + 3, 1.0, kmax).v;
    hp.c2 = random_band_field(g, seed + 4, 1.0, kmax).v;
    hp = project_divfree(hp);
    ScalarField p5 = random_band_field(g, seed + 5, 1.0, kmax);
    ScalarField p6 = random_band_field(g, seed + 6, 1.0, kmax);
    for (std::size_t i = 0; i < s.rho.v.size(); ++i) {
        s.rho.v[i] += delta * p0.v[i];
        s.u.c1[i] += delta * p1.v[i];
        s.u.c2[i] += delta * p2.v[i];
        s.H.c1[i] += delta * hp.c1[i];
        s.H.c2[i] += delta * hp.c2[i];
        s.psi.v[i] += delta * cplx(p5.v[i], p6.v[i]);
    }
    return s;
}

SimState make_initial_state(const RunConfig& cfg) {
    Grid g = Grid::make(cfg.n);
    const std::string& name = cfg.scenario.name;
    if (name == "equilibrium") return equilibrium(cfg, g);
    if (name == "smooth-random") return smooth_random(cfg, g);
    if (name == "shear") return shear(cfg, g);
    if (name == "perturbed-pair") {
        SimState base = smooth_random(cfg, g);
        if (cfg.scenario.perturb_delta == 0.0) return base;
        return perturb_state(base, cfg.scenario.perturb_delta, cfg.scenario.seed + 100,
                             cfg.scenario.kmax);
    }
    throw std::invalid_argument("unknown scenario: " + name);
}

} // namespace swlw

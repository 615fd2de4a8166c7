#include "swlw/schrodinger.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swlw {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// pointwise phase rotation psi <- exp(-i V dt) psi; |psi| untouched
void rotate(ComplexField& psi, const ScalarField& V, double dt) {
    for (std::size_t i = 0; i < psi.v.size(); ++i) {
        const double th = -V.v[i] * dt;
        psi.v[i] *= cplx(std::cos(th), std::sin(th));
    }
}

} // namespace

ScalarField nls_potential(const ComplexField& psi, const ScalarField& v_y,
                          const CouplingSpec& spec) {
    if (!(psi.grid == v_y.grid)) throw std::invalid_argument("nls_potential: grid mismatch");
    ScalarField V(psi.grid);
    for (std::size_t i = 0; i < V.v.size(); ++i) {
        if (!(v_y.v[i] > 0.0))
            throw std::invalid_argument("nls_potential: nonpositive specific volume");
        const double s = std::norm(psi.v[i]);
        V.v[i] = s + spec.alpha() * spec.g_eval(v_y.v[i]) * spec.h_prime(s);
    }
    // the cubic product enters through V; keep it band-limited
    return dealias(V);
}

ComplexField nls_step(const ComplexField& psi, const ScalarField& v_y,
                      const CouplingSpec& spec, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("nls_step: dt must be > 0");
    ComplexField out = psi;
    rotate(out, nls_potential(out, v_y, spec), 0.5 * dt);

    SpectralScalar s = forward_transform(out);
    const Grid g = psi.grid;
    for (int iy = 0; iy < g.n; ++iy) {
        const double k2 = two_pi * g.kderiv(iy);
        for (int ix = 0; ix < g.n; ++ix) {
            const double k1 = two_pi * g.kderiv(ix);
            const double th = -(k1 * k1 + k2 * k2) * dt;
            s.c[std::size_t(iy) * g.n + ix] *= cplx(std::cos(th), std::sin(th));
        }
    }
    out = inverse_transform_complex(s);

    rotate(out, nls_potential(out, v_y, spec), 0.5 * dt);
    return out;
}

double nls_mass(const ComplexField& psi) {
    double acc = 0.0;
    for (const cplx& z : psi.v) acc += std::norm(z);
    return acc / double(psi.grid.size());
}

double nls_energy(const ComplexField& psi, const ScalarField& v_y,
                  const CouplingSpec& spec) {
    const Grid g = psi.grid;
    SpectralScalar s = forward_transform(psi);
    double grad = 0.0;
    for (int iy = 0; iy < g.n; ++iy) {
        const double k2 = two_pi * g.kderiv(iy);
        for (int ix = 0; ix < g.n; ++ix) {
            const double k1 = two_pi * g.kderiv(ix);
            grad += (k1 * k1 + k2 * k2) * std::norm(s.c[std::size_t(iy) * g.n + ix]);
        }
    }
    const double n2 = double(g.size());
    grad *= 0.5 / (n2 * n2);

    double pot = 0.0;
    for (std::size_t i = 0; i < psi.v.size(); ++i) {
        const double sq = std::norm(psi.v[i]);
        pot += 0.25 * sq * sq + spec.alpha() * spec.g_eval(v_y.v[i]) * spec.h_eval(sq);
    }
    return grad + pot / n2;
}

} // namespace swlw

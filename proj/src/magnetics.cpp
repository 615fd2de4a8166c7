#include "swlw/magnetics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swlw {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct SpecVec {
    SpectralScalar c1, c2;
    explicit SpecVec(Grid g) : c1(g), c2(g) {}
};

SpecVec to_spec(const VectorField& v) {
    ScalarField f1{v.grid}, f2{v.grid};
    f1.v = v.c1;
    f2.v = v.c2;
    SpecVec s(v.grid);
    s.c1 = forward_transform(f1);
    s.c2 = forward_transform(f2);
    return s;
}

VectorField to_phys(const SpecVec& s) {
    VectorField v(s.c1.grid);
    v.c1 = inverse_transform_real(s.c1).v;
    v.c2 = inverse_transform_real(s.c2).v;
    return v;
}

void project_inplace(SpecVec& s) {
    const Grid g = s.c1.grid;
    for (int iy = 0; iy < g.n; ++iy) {
        const double k2 = two_pi * g.kderiv(iy);
        for (int ix = 0; ix < g.n; ++ix) {
            const double k1 = two_pi * g.kderiv(ix);
            const double kk = k1 * k1 + k2 * k2;
            if (kk == 0.0) continue;
            const std::size_t i = std::size_t(iy) * g.n + ix;
            const cplx kdot = (k1 * s.c1.c[i] + k2 * s.c2.c[i]) / kk;
            s.c1.c[i] -= k1 * kdot;
            s.c2.c[i] -= k2 * kdot;
        }
    }
}

// advection + stretch terms: N_i = -(u.grad)H_i + (H.grad)u_i - H_i div u
SpecVec stretch_advect(const SpecVec& hs, const VectorField& u, const TensorField& du,
                       const ScalarField& divu) {
    const Grid g = hs.c1.grid;
    VectorField h = to_phys(hs);
    VectorField gh1(g), gh2(g); // gradients of the two components
    {
        ScalarField h1{g}, h2{g};
        h1.v = h.c1;
        h2.v = h.c2;
        gh1 = gradient(h1);
        gh2 = gradient(h2);
    }
    VectorField n(g);
    for (std::size_t i = 0; i < n.c1.size(); ++i) {
        n.c1[i] = -(u.c1[i] * gh1.c1[i] + u.c2[i] * gh1.c2[i]) +
                  (h.c1[i] * du.a11[i] + h.c2[i] * du.a12[i]) - h.c1[i] * divu.v[i];
        n.c2[i] = -(u.c1[i] * gh2.c1[i] + u.c2[i] * gh2.c2[i]) +
                  (h.c1[i] * du.a21[i] + h.c2[i] * du.a22[i]) - h.c2[i] * divu.v[i];
    }
    SpecVec ns = to_spec(n);
    dealias_inplace(ns.c1);
    dealias_inplace(ns.c2);
    return ns;
}

// multiply every mode by exp(-nu |kappa|^2 s); s may be negative inside the
// RK combination, always paired with a larger earlier decay
void decay_inplace(SpecVec& s, double nu, double t) {
    const Grid g = s.c1.grid;
    for (int iy = 0; iy < g.n; ++iy) {
        const double k2 = two_pi * g.ksigned(iy);
        for (int ix = 0; ix < g.n; ++ix) {
            const double k1 = two_pi * g.ksigned(ix);
            const double f = std::exp(-nu * (k1 * k1 + k2 * k2) * t);
            const std::size_t i = std::size_t(iy) * g.n + ix;
            s.c1.c[i] *= f;
            s.c2.c[i] *= f;
        }
    }
}

} // namespace

void MagneticParams::validate() const {
    if (!(nu > 0.0)) throw std::invalid_argument("magnetics: nu must be > 0");
}

VectorField project_divfree(const VectorField& H) {
    SpecVec s = to_spec(H);
    project_inplace(s);
    return to_phys(s);
}

VectorField induction_step(const VectorField& H, const VectorField& u, double dt,
                           const MagneticParams& p) {
    const Grid g = H.grid;
    const TensorField du = jacobian_matrix(u);
    ScalarField divu(g);
    for (std::size_t i = 0; i < divu.v.size(); ++i) divu.v[i] = du.a11[i] + du.a22[i];

    // integrating-factor SSP-RK3 in the transformed variable w = E(-t) H
    SpecVec hn = to_spec(H);
    project_inplace(hn);

    // stage 1: H1 = E(dt) (Hn + dt N(Hn))
    SpecVec n0 = stretch_advect(hn, u, du, divu);
    SpecVec h1(g);
    for (std::size_t i = 0; i < h1.c1.c.size(); ++i) {
        h1.c1.c[i] = hn.c1.c[i] + dt * n0.c1.c[i];
        h1.c2.c[i] = hn.c2.c[i] + dt * n0.c2.c[i];
    }
    SpecVec keep = h1; // Hn + dt N(Hn), reused below without back-multiplying
    decay_inplace(h1, p.nu, dt);
    project_inplace(h1);

    // stage 2: H2 = 3/4 E(dt/2) Hn + 1/4 E(dt/2) keep + dt/4 E(-dt/2) N(H1)
    SpecVec n1 = stretch_advect(h1, u, du, divu);
    decay_inplace(n1, p.nu, -0.5 * dt);
    SpecVec h2(g);
    {
        SpecVec a = hn, b = keep;
        decay_inplace(a, p.nu, 0.5 * dt);
        decay_inplace(b, p.nu, 0.5 * dt);
        for (std::size_t i = 0; i < h2.c1.c.size(); ++i) {
            h2.c1.c[i] = 0.75 * a.c1.c[i] + 0.25 * b.c1.c[i] + 0.25 * dt * n1.c1.c[i];
            h2.c2.c[i] = 0.75 * a.c2.c[i] + 0.25 * b.c2.c[i] + 0.25 * dt * n1.c2.c[i];
        }
    }
    project_inplace(h2);

    // stage 3: H_{n+1} = 1/3 E(dt) Hn + 2/3 E(dt/2) (H2 + dt N(H2))
    SpecVec n2 = stretch_advect(h2, u, du, divu);
    SpecVec tail = h2;
    for (std::size_t i = 0; i < tail.c1.c.size(); ++i) {
        tail.c1.c[i] += dt * n2.c1.c[i];
        tail.c2.c[i] += dt * n2.c2.c[i];
    }
    decay_inplace(tail, p.nu, 0.5 * dt);
    SpecVec head = hn;
    decay_inplace(head, p.nu, dt);
    SpecVec out(g);
    for (std::size_t i = 0; i < out.c1.c.size(); ++i) {
        out.c1.c[i] = (1.0 / 3.0) * head.c1.c[i] + (2.0 / 3.0) * tail.c1.c[i];
        out.c2.c[i] = (1.0 / 3.0) * head.c2.c[i] + (2.0 / 3.0) * tail.c2.c[i];
    }
    project_inplace(out);
    return to_phys(out);
}

} // namespace swlw

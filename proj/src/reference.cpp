#include "swlw/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swlw {

namespace {

constexpr double tau = 2.0 * std::numbers::pi;

using Spec = std::vector<cplx>;

Spec fwd(const Grid& g, const std::vector<double>& v) {
    ScalarField f(g);
    f.v = v;
    return forward_transform(f).c;
}

std::vector<double> bwd(const Grid& g, Spec s) {
    SpectralScalar sp(g);
    sp.c = std::move(s);
    return inverse_transform_real(sp).v;
}

void mask23(const Grid& g, Spec& s) {
    const int cut = g.n / 3;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix)
            if (std::abs(g.ksigned(ix)) > cut || std::abs(g.ksigned(iy)) > cut)
                s[std::size_t(iy) * g.n + ix] = {};
}

std::vector<double> cut_field(const Grid& g, const std::vector<double>& v) {
    Spec s = fwd(g, v);
    mask23(g, s);
    return bwd(g, std::move(s));
}

// d/dx_axis via ik multiplication (Nyquist treated as zero)
std::vector<double> ddx(const Grid& g, const std::vector<double>& v, int axis) {
    Spec s = fwd(g, v);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const double k = tau * (axis == 0 ? g.kderiv(ix) : g.kderiv(iy));
            cplx& c = s[std::size_t(iy) * g.n + ix];
            c = cplx(-k * c.imag(), k * c.real());
        }
    return bwd(g, std::move(s));
}

// -div(rho u), product cut to the 2/3 band before differentiating
std::vector<double> continuity_rhs(const Grid& g, const std::vector<double>& rho,
                                   const VectorField& u) {
    std::vector<double> f1(rho.size()), f2(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        f1[i] = rho[i] * u.c1[i];
        f2[i] = rho[i] * u.c2[i];
    }
    std::vector<double> d1 = ddx(g, cut_field(g, f1), 0);
    std::vector<double> d2 = ddx(g, cut_field(g, f2), 1);
    std::vector<double> out(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) out[i] = -d1[i] - d2[i];
    return out;
}

std::vector<double> rk3_density(const Grid& g, std::vector<double> rho,
                                const VectorField& u, double dt) {
    std::vector<double> k1 = continuity_rhs(g, rho, u);
    std::vector<double> s1(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) s1[i] = rho[i] + dt * k1[i];
    std::vector<double> k2 = continuity_rhs(g, s1, u);
    std::vector<double> s2(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i)
        s2[i] = 0.75 * rho[i] + 0.25 * (s1[i] + dt * k2[i]);
    std::vector<double> k3 = continuity_rhs(g, s2, u);
    for (std::size_t i = 0; i < rho.size(); ++i)
        rho[i] = rho[i] / 3.0 + 2.0 / 3.0 * (s2[i] + dt * k3[i]);
    return rho;
}

double field_mean(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / double(v.size());
}

// one backward-Euler momentum solve, mean-coefficient split iterated to tol
VectorField be_momentum(const Grid& g, const std::vector<double>& rho,
                        const VectorField& u_adv, const VectorField& rhs,
                        const VectorField& u_n, double dt, const FluidParams& par,
                        double tol, int max_inner) {
    const std::size_t m = g.size();
    std::vector<double> lam(m);
    for (std::size_t i = 0; i < m; ++i) lam[i] = par.b * std::pow(rho[i], par.beta);
    const double lam_bar = field_mean(lam);
    const double rho_bar = field_mean(rho);

    auto cinv_spec = [&](Spec s1, Spec s2) {
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix) {
                const double k1 = tau * g.kderiv(ix), k2 = tau * g.kderiv(iy);
                const double kk = k1 * k1 + k2 * k2;
                const double a = rho_bar / dt + par.mu * kk;
                const double b = par.mu + lam_bar;
                const std::size_t i = std::size_t(iy) * g.n + ix;
                const cplx kd = (k1 * s1[i] + k2 * s2[i]) / (a + b * kk);
                s1[i] = (s1[i] - b * k1 * kd) / a;
                s2[i] = (s2[i] - b * k2 * kd) / a;
            }
        VectorField out(g);
        out.c1 = bwd(g, std::move(s1));
        out.c2 = bwd(g, std::move(s2));
        return out;
    };

    std::vector<double> R1(m), R2(m);
    {
        std::vector<double> p1(m), p2(m);
        for (std::size_t i = 0; i < m; ++i) {
            p1[i] = rho[i] * u_n.c1[i];
            p2[i] = rho[i] * u_n.c2[i];
        }
        p1 = cut_field(g, p1);
        p2 = cut_field(g, p2);
        for (std::size_t i = 0; i < m; ++i) {
            R1[i] = rhs.c1[i] + p1[i] / dt;
            R2[i] = rhs.c2[i] + p2[i] / dt;
        }
    }

    Spec Rs1 = fwd(g, R1), Rs2 = fwd(g, R2);

    VectorField v = u_adv;
    for (int it = 0; it < max_inner; ++it) {
        // fused remainder: one pointwise pass, one band cut, derivative
        // factors in spectral space
        std::vector<double> g11 = ddx(g, v.c1, 0), g12 = ddx(g, v.c1, 1);
        std::vector<double> g21 = ddx(g, v.c2, 0), g22 = ddx(g, v.c2, 1);
        std::vector<double> w1(m), w2(m), q(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double adv1 = u_adv.c1[i] * g11[i] + u_adv.c2[i] * g12[i];
            const double adv2 = u_adv.c1[i] * g21[i] + u_adv.c2[i] * g22[i];
            w1[i] = (rho[i] - rho_bar) * v.c1[i] / dt + rho[i] * adv1;
            w2[i] = (rho[i] - rho_bar) * v.c2[i] / dt + rho[i] * adv2;
            q[i] = (lam[i] - lam_bar) * (g11[i] + g22[i]);
        }
        Spec n1 = fwd(g, w1), n2 = fwd(g, w2), qs = fwd(g, q);
        mask23(g, n1);
        mask23(g, n2);
        mask23(g, qs);
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix) {
                const double k1 = tau * g.kderiv(ix), k2 = tau * g.kderiv(iy);
                const std::size_t i = std::size_t(iy) * g.n + ix;
                n1[i] -= cplx(-k1 * qs[i].imag(), k1 * qs[i].real());
                n2[i] -= cplx(-k2 * qs[i].imag(), k2 * qs[i].real());
                n1[i] = Rs1[i] - n1[i];
                n2[i] = Rs2[i] - n2[i];
            }
        VectorField vn = cinv_spec(std::move(n1), std::move(n2));
        double dn = 0.0, nn = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double d1 = vn.c1[i] - v.c1[i], d2 = vn.c2[i] - v.c2[i];
            dn += d1 * d1 + d2 * d2;
            nn += vn.c1[i] * vn.c1[i] + vn.c2[i] * vn.c2[i];
        }
        v = vn;
        if (std::sqrt(dn) <= tol * std::max(std::sqrt(nn), 1e-30)) return v;
    }
    throw std::runtime_error("reference_ns: inner iteration did not converge");
}

double composite_norm(const Grid& g, const VectorField& w, double dt) {
    double l2 = 0.0;
    for (std::size_t i = 0; i < w.c1.size(); ++i)
        l2 += w.c1[i] * w.c1[i] + w.c2[i] * w.c2[i];
    l2 = std::sqrt(l2 / double(g.size()));
    std::vector<double> d[4] = {ddx(g, w.c1, 0), ddx(g, w.c1, 1), ddx(g, w.c2, 0),
                                ddx(g, w.c2, 1)};
    double gs = 0.0;
    for (const auto& e : d)
        for (double x : e) gs += x * x;
    gs = std::sqrt(gs / double(g.size()));
    return l2 + std::sqrt(dt) * gs;
}

} // namespace

RefNsState reference_ns_run(RefNsState state, const FluidParams& par, double dt, int steps,
                            double picard_tol, int max_picard, double inner_tol,
                            int max_inner) {
    const Grid g = state.rho.grid;
    const std::size_t m = g.size();
    for (int s = 0; s < steps; ++s) {
        VectorField guess = state.u;
        VectorField accepted = guess;
        std::vector<double> rho_next;
        bool done = false;
        for (int it = 0; it < max_picard && !done; ++it) {
            VectorField u_half(g);
            for (std::size_t i = 0; i < m; ++i) {
                u_half.c1[i] = 0.5 * (state.u.c1[i] + guess.c1[i]);
                u_half.c2[i] = 0.5 * (state.u.c2[i] + guess.c2[i]);
            }
            std::vector<double> mid = rk3_density(g, state.rho.v, u_half, 0.5 * dt);
            rho_next = rk3_density(g, mid, u_half, 0.5 * dt);

            std::vector<double> p(m);
            for (std::size_t i = 0; i < m; ++i) p[i] = par.a * std::pow(rho_next[i], par.gamma);
            VectorField rhs(g);
            rhs.c1 = ddx(g, p, 0);
            rhs.c2 = ddx(g, p, 1);
            for (std::size_t i = 0; i < m; ++i) {
                rhs.c1[i] = -rhs.c1[i];
                rhs.c2[i] = -rhs.c2[i];
            }
            VectorField v = be_momentum(g, rho_next, guess, rhs, state.u, dt, par,
                                        inner_tol, max_inner);
            VectorField diff(g);
            for (std::size_t i = 0; i < m; ++i) {
                diff.c1[i] = v.c1[i] - guess.c1[i];
                diff.c2[i] = v.c2[i] - guess.c2[i];
            }
            const double upd = composite_norm(g, diff, dt);
            accepted = v;
            if (upd <= picard_tol * std::max(composite_norm(g, v, dt), 1e-30)) done = true;
            guess = v;
        }
        if (!done) throw std::runtime_error("reference_ns: Picard did not converge");
        state.u = accepted;
        state.rho.v = rho_next;
    }
    return state;
}

ComplexField reference_nls_run(ComplexField psi, const ScalarField& v_y,
                               const CouplingSpec& spec, double dt, int steps) {
    const Grid g = psi.grid;
    auto half_rotation = [&](ComplexField& w) {
        ScalarField V(g);
        for (std::size_t i = 0; i < w.v.size(); ++i) {
            const double s = std::norm(w.v[i]);
            V.v[i] = s + spec.alpha() * spec.g_eval(v_y.v[i]) * spec.h_prime(s);
        }
        SpectralScalar vs = forward_transform(V);
        mask23(g, vs.c);
        V = inverse_transform_real(vs);
        for (std::size_t i = 0; i < w.v.size(); ++i) {
            const double th = -0.5 * dt * V.v[i];
            w.v[i] *= cplx(std::cos(th), std::sin(th));
        }
    };
    for (int s = 0; s < steps; ++s) {
        half_rotation(psi);
        SpectralScalar sp = forward_transform(psi);
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix) {
                const double k1 = tau * g.kderiv(ix), k2 = tau * g.kderiv(iy);
                const double th = -(k1 * k1 + k2 * k2) * dt;
                sp.c[std::size_t(iy) * g.n + ix] *= cplx(std::cos(th), std::sin(th));
            }
        psi = inverse_transform_complex(sp);
        half_rotation(psi);
    }
    return psi;
}

} // namespace swlw

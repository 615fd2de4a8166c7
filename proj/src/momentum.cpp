#include "swlw/momentum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "swlw/errors.hpp"

namespace swlw {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

ScalarField comp(const Grid& g, const std::vector<double>& v) {
    ScalarField f(g);
    f.v = v;
    return f;
}

// dealiased pointwise product
ScalarField mul(const ScalarField& a, const ScalarField& b) {
    ScalarField out(a.grid);
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = a.v[i] * b.v[i];
    return dealias(out);
}

VectorField mulv(const ScalarField& a, const VectorField& v) {
    VectorField out(v.grid);
    for (std::size_t i = 0; i < out.c1.size(); ++i) {
        out.c1[i] = a.v[i] * v.c1[i];
        out.c2[i] = a.v[i] * v.c2[i];
    }
    return dealias(out);
}

// (w.grad)v, dealiased
VectorField advect_vec(const VectorField& w, const VectorField& v) {
    VectorField g1 = gradient(comp(v.grid, v.c1));
    VectorField g2 = gradient(comp(v.grid, v.c2));
    VectorField out(v.grid);
    for (std::size_t i = 0; i < out.c1.size(); ++i) {
        out.c1[i] = w.c1[i] * g1.c1[i] + w.c2[i] * g1.c2[i];
        out.c2[i] = w.c1[i] * g2.c1[i] + w.c2[i] * g2.c2[i];
    }
    return dealias(out);
}

// L with a constant bulk coefficient: -mu Lap v - (mu + lam) grad div v
VectorField lame_const(const VectorField& v, double mu, double lam) {
    ScalarField v1 = comp(v.grid, v.c1), v2 = comp(v.grid, v.c2);
    ScalarField l1 = laplacian(v1), l2 = laplacian(v2);
    VectorField gd = gradient(divergence(v));
    VectorField out(v.grid);
    for (std::size_t i = 0; i < out.c1.size(); ++i) {
        out.c1[i] = -mu * l1.v[i] - (mu + lam) * gd.c1[i];
        out.c2[i] = -mu * l2.v[i] - (mu + lam) * gd.c2[i];
    }
    return out;
}

} // namespace

VectorField lame_apply(const VectorField& u, const ScalarField& rho, const FluidParams& par) {
    ScalarField lam = lambda_visc(rho, par); // validates rho > 0
    ScalarField du = divergence(u);
    ScalarField lam_du = mul(lam, du);
    VectorField grad_lam_du = gradient(lam_du);
    VectorField rest = lame_const(u, par.mu, 0.0); // -mu Lap u - mu grad div u
    VectorField out(u.grid);
    for (std::size_t i = 0; i < out.c1.size(); ++i) {
        out.c1[i] = rest.c1[i] - grad_lam_du.c1[i];
        out.c2[i] = rest.c2[i] - grad_lam_du.c2[i];
    }
    return out;
}

InteractionForce interaction_force(const ScalarField& rho, const ComplexField& psi_on_euler,
                                   const ScalarField& j_over_rho, const CouplingSpec& spec) {
    InteractionForce out;
    out.f = ScalarField(rho.grid);
    for (std::size_t i = 0; i < rho.v.size(); ++i) {
        if (!(rho.v[i] > 0.0))
            throw std::invalid_argument("interaction_force: nonpositive density");
        if (!(j_over_rho.v[i] > 0.0))
            throw InvariantViolation("interaction_force: degenerate map (J/rho <= 0)");
        const double s = std::norm(psi_on_euler.v[i]);
        out.f.v[i] = spec.alpha() * spec.g_prime(1.0 / rho.v[i]) * spec.h_eval(s) *
                     j_over_rho.v[i];
    }
    out.f = dealias(out.f);
    out.grad_f = gradient(out.f);
    return out;
}

MomentumRhs assemble_rhs(const ScalarField& rho, const VectorField& H,
                         const ComplexField& psi_on_euler, const ScalarField& j_over_rho,
                         const FluidParams& par, const CouplingSpec& spec) {
    MomentumRhs out;

    // H.grad H - 1/2 grad |H|^2
    VectorField hgh = advect_vec(H, H);
    ScalarField h2(rho.grid);
    for (std::size_t i = 0; i < h2.v.size(); ++i)
        h2.v[i] = H.c1[i] * H.c1[i] + H.c2[i] * H.c2[i];
    h2 = dealias(h2);
    VectorField gh2 = gradient(h2);
    out.lorentz = VectorField(rho.grid);
    for (std::size_t i = 0; i < hgh.c1.size(); ++i) {
        out.lorentz.c1[i] = hgh.c1[i] - 0.5 * gh2.c1[i];
        out.lorentz.c2[i] = hgh.c2[i] - 0.5 * gh2.c2[i];
    }

    out.pressure_grad = gradient(pressure(rho, par));
    out.interaction_grad = interaction_force(rho, psi_on_euler, j_over_rho, spec).grad_f;

    out.total = VectorField(rho.grid);
    for (std::size_t i = 0; i < out.total.c1.size(); ++i) {
        out.total.c1[i] =
            out.lorentz.c1[i] - out.pressure_grad.c1[i] + out.interaction_grad.c1[i];
        out.total.c2[i] =
            out.lorentz.c2[i] - out.pressure_grad.c2[i] + out.interaction_grad.c2[i];
    }
    return out;
}

VectorField solve_linear_momentum(const ScalarField& rho, const VectorField& u_adv,
                                  const VectorField& rhs, const VectorField& u_n, double dt,
                                  double tol, int max_inner, const FluidParams& par,
                                  InnerSolveReport* report) {
    const Grid g = rho.grid;
    const std::size_t m = g.size();
    ScalarField lam = lambda_visc(rho, par);
    const double lam_bar = mean(lam);
    const double rho_bar = mean(rho);

    // deviation fields for the remainder terms
    ScalarField lam_dev(g), rho_dev(g);
    for (std::size_t i = 0; i < m; ++i) {
        lam_dev.v[i] = lam.v[i] - lam_bar;
        rho_dev.v[i] = rho.v[i] - rho_bar;
    }

    // R = rhs + rho u_n / dt
    VectorField R(g);
    {
        VectorField run = mulv(rho, u_n);
        for (std::size_t i = 0; i < m; ++i) {
            R.c1[i] = rhs.c1[i] + run.c1[i] / dt;
            R.c2[i] = rhs.c2[i] + run.c2[i] / dt;
        }
    }

    // remainder in one fused pass: all pointwise products assembled in
    // physical space, dealiased once, derivative factors applied in spectral
    // space. N(v) = (rho - rho_bar) v/dt + rho (u_adv.grad)v
    //              - grad((lambda - lam_bar) div v)
    ScalarField w1(g), w2(g), q(g);
    auto apply_remainder_spectral = [&](const VectorField& v, SpectralScalar& n1,
                                        SpectralScalar& n2) {
        SpectralScalar s1 = forward_transform(comp(g, v.c1));
        SpectralScalar s2 = forward_transform(comp(g, v.c2));
        SpectralScalar d11 = spectral_derivative(s1, 0), d12 = spectral_derivative(s1, 1);
        SpectralScalar d21 = spectral_derivative(s2, 0), d22 = spectral_derivative(s2, 1);
        ScalarField g11 = inverse_transform_real(d11);
        ScalarField g12 = inverse_transform_real(d12);
        ScalarField g21 = inverse_transform_real(d21);
        ScalarField g22 = inverse_transform_real(d22);
        for (std::size_t i = 0; i < m; ++i) {
            const double adv1 = u_adv.c1[i] * g11.v[i] + u_adv.c2[i] * g12.v[i];
            const double adv2 = u_adv.c1[i] * g21.v[i] + u_adv.c2[i] * g22.v[i];
            w1.v[i] = rho_dev.v[i] * v.c1[i] / dt + rho.v[i] * adv1;
            w2.v[i] = rho_dev.v[i] * v.c2[i] / dt + rho.v[i] * adv2;
            q.v[i] = lam_dev.v[i] * (g11.v[i] + g22.v[i]);
        }
        n1 = forward_transform(w1);
        n2 = forward_transform(w2);
        SpectralScalar qs = forward_transform(q);
        dealias_inplace(n1);
        dealias_inplace(n2);
        dealias_inplace(qs);
        for (int iy = 0; iy < g.n; ++iy) {
            const double k2 = two_pi * g.kderiv(iy);
            for (int ix = 0; ix < g.n; ++ix) {
                const double k1 = two_pi * g.kderiv(ix);
                const std::size_t i = std::size_t(iy) * g.n + ix;
                // subtract grad q: N -= i kappa q
                n1.c[i] -= cplx(-k1 * qs.c[i].imag(), k1 * qs.c[i].real());
                n2.c[i] -= cplx(-k2 * qs.c[i].imag(), k2 * qs.c[i].real());
            }
        }
    };

    SpectralScalar Rs1 = forward_transform(comp(g, R.c1));
    SpectralScalar Rs2 = forward_transform(comp(g, R.c2));

    // exact per-mode inverse of C = rho_bar/dt I + mu |kappa|^2 I
    //                              + (mu + lam_bar) kappa kappa^T
    auto apply_cinv = [&](SpectralScalar& s1, SpectralScalar& s2) {
        for (int iy = 0; iy < g.n; ++iy) {
            const double k2 = two_pi * g.kderiv(iy);
            for (int ix = 0; ix < g.n; ++ix) {
                const double k1 = two_pi * g.kderiv(ix);
                const double kk = k1 * k1 + k2 * k2;
                const double a = rho_bar / dt + par.mu * kk;
                const double b = par.mu + lam_bar;
                const std::size_t i = std::size_t(iy) * g.n + ix;
                const cplx kdot = (k1 * s1.c[i] + k2 * s2.c[i]) / (a + b * kk);
                s1.c[i] = (s1.c[i] - b * k1 * kdot) / a;
                s2.c[i] = (s2.c[i] - b * k2 * kdot) / a;
            }
        }
    };

    // warm start from the advecting field: inside the Picard loop it is the
    // previous iterate and already close to the solution
    VectorField v = u_adv;
    InnerSolveReport rep;
    SpectralScalar n1(g), n2(g);
    for (int it = 0; it < max_inner; ++it) {
        apply_remainder_spectral(v, n1, n2);
        for (std::size_t i = 0; i < m; ++i) {
            n1.c[i] = Rs1.c[i] - n1.c[i];
            n2.c[i] = Rs2.c[i] - n2.c[i];
        }
        apply_cinv(n1, n2);
        VectorField vnext(g);
        vnext.c1 = inverse_transform_real(n1).v;
        vnext.c2 = inverse_transform_real(n2).v;
        double dn = 0.0, vn = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double d1 = vnext.c1[i] - v.c1[i], d2 = vnext.c2[i] - v.c2[i];
            dn += d1 * d1 + d2 * d2;
            vn += vnext.c1[i] * vnext.c1[i] + vnext.c2[i] * vnext.c2[i];
        }
        v = vnext;
        rep.iterations = it + 1;
        if (std::sqrt(dn) <= tol * std::max(std::sqrt(vn), 1e-30)) {
            rep.converged = true;
            break;
        }
    }
    if (!rep.converged)
        throw PicardDivergence("momentum inner relaxation did not converge in " +
                               std::to_string(max_inner) + " iterations (dt too large?)");

    if (report) {
        // residual of the discrete equation A v = R with A = C + N
        apply_remainder_spectral(v, n1, n2);
        SpectralScalar s1 = forward_transform(comp(g, v.c1));
        SpectralScalar s2 = forward_transform(comp(g, v.c2));
        double rn = 0.0, Rn = 0.0;
        for (int iy = 0; iy < g.n; ++iy) {
            const double k2 = two_pi * g.kderiv(iy);
            for (int ix = 0; ix < g.n; ++ix) {
                const double k1 = two_pi * g.kderiv(ix);
                const double kk = k1 * k1 + k2 * k2;
                const double a = rho_bar / dt + par.mu * kk;
                const double b = par.mu + lam_bar;
                const std::size_t i = std::size_t(iy) * g.n + ix;
                const cplx kdot = k1 * s1.c[i] + k2 * s2.c[i];
                const cplx r1 = a * s1.c[i] + b * k1 * kdot + n1.c[i] - Rs1.c[i];
                const cplx r2 = a * s2.c[i] + b * k2 * kdot + n2.c[i] - Rs2.c[i];
                rn += std::norm(r1) + std::norm(r2);
                Rn += std::norm(Rs1.c[i]) + std::norm(Rs2.c[i]);
            }
        }
        rep.residual_rel = std::sqrt(rn) / std::max(std::sqrt(Rn), 1e-30);
        *report = rep;
    }
    return v;
}

FluxFields effective_flux(const VectorField& u, const ScalarField& rho, const VectorField& H,
                          const ScalarField& f, const FluidParams& par) {
    FluxFields out;
    ScalarField lam = lambda_visc(rho, par);
    ScalarField du = divergence(u);
    ScalarField p = pressure(rho, par);
    out.F = ScalarField(rho.grid);
    for (std::size_t i = 0; i < rho.v.size(); ++i) {
        const double h2 = H.c1[i] * H.c1[i] + H.c2[i] * H.c2[i];
        out.F.v[i] =
            (2.0 * par.mu + lam.v[i]) * du.v[i] - p.v[i] - 0.5 * h2 + f.v[i];
    }
    out.omega = curl_z(u);
    out.Lambda = ScalarField(rho.grid);
    for (std::size_t i = 0; i < rho.v.size(); ++i)
        out.Lambda.v[i] = 2.0 * par.mu * std::log(rho.v[i]) +
                          (par.b / par.beta) * (std::pow(rho.v[i], par.beta) - 1.0);
    return out;
}

ScalarField lambda_transport_residual(const ScalarField& rho0, const ScalarField& rho1,
                                      const VectorField& u1, const VectorField& H1,
                                      const ScalarField& f1, double dt,
                                      const FluidParams& par) {
    FluxFields flux0 = effective_flux(u1, rho0, H1, f1, par); // only Lambda used
    FluxFields flux1 = effective_flux(u1, rho1, H1, f1, par);
    ScalarField p1 = pressure(rho1, par);
    VectorField glam = gradient(flux1.Lambda);
    ScalarField res(rho0.grid);
    for (std::size_t i = 0; i < res.v.size(); ++i) {
        const double ddt = (flux1.Lambda.v[i] - flux0.Lambda.v[i]) / dt;
        const double adv = u1.c1[i] * glam.c1[i] + u1.c2[i] * glam.c2[i];
        const double h2 = H1.c1[i] * H1.c1[i] + H1.c2[i] * H1.c2[i];
        res.v[i] = ddt + adv + flux1.F.v[i] + p1.v[i] + 0.5 * h2 - f1.v[i];
    }
    return res;
}

} // namespace swlw

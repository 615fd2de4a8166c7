#include "swlw/lagrangian.hpp"

#include <cmath>
#include <stdexcept>

#include "swlw/errors.hpp"
#include "swlw/parallel.hpp"

namespace swlw {

namespace {

// periodic signed distance on the unit torus
double torus_dist(double a, double b) {
    double d = a - b;
    d -= std::round(d);
    return d;
}

ScalarField component(const Grid& g, const std::vector<double>& v) {
    ScalarField f(g);
    f.v = v;
    return f;
}

// u.grad f, product dealiased
ScalarField advect(const VectorField& u, const ScalarField& f) {
    VectorField gf = gradient(f);
    ScalarField out(f.grid);
    for (std::size_t i = 0; i < out.v.size(); ++i)
        out.v[i] = u.c1[i] * gf.c1[i] + u.c2[i] * gf.c2[i];
    return dealias(out);
}

// frozen velocity and its derivatives as interpolants for particle work
struct VelocityProbe {
    Interpolant u1, u2, g11, g12, g21, g22;

    explicit VelocityProbe(const VectorField& u, const TensorField& grad)
        : u1(component(u.grid, u.c1)), u2(component(u.grid, u.c2)),
          g11(component(u.grid, grad.a11)), g12(component(u.grid, grad.a12)),
          g21(component(u.grid, grad.a21)), g22(component(u.grid, grad.a22)) {}
};

// per-particle joint state for the RK4 stage arithmetic
struct ParticleState {
    double x1, x2;
    double b11, b12, b21, b22;
    double logj;
};

ParticleState rhs(const VelocityProbe& v, const ParticleState& s) {
    ParticleState d;
    d.x1 = v.u1.eval(s.x1, s.x2);
    d.x2 = v.u2.eval(s.x1, s.x2);
    const double g11 = v.g11.eval(s.x1, s.x2);
    const double g12 = v.g12.eval(s.x1, s.x2);
    const double g21 = v.g21.eval(s.x1, s.x2);
    const double g22 = v.g22.eval(s.x1, s.x2);
    d.b11 = g11 * s.b11 + g12 * s.b21;
    d.b12 = g11 * s.b12 + g12 * s.b22;
    d.b21 = g21 * s.b11 + g22 * s.b21;
    d.b22 = g21 * s.b12 + g22 * s.b22;
    d.logj = -(g11 + g22);
    return d;
}

ParticleState axpy(const ParticleState& s, double a, const ParticleState& d) {
    return {s.x1 + a * d.x1,   s.x2 + a * d.x2,   s.b11 + a * d.b11,
            s.b12 + a * d.b12, s.b21 + a * d.b21, s.b22 + a * d.b22,
            s.logj + a * d.logj};
}

} // namespace

FlowMapState FlowMapState::identity(Grid g) {
    FlowMapState st;
    st.grid = g;
    st.disp = VectorField(g);
    st.xp1.resize(g.size());
    st.xp2.resize(g.size());
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            st.xp1[std::size_t(iy) * g.n + ix] = ix * g.h;
            st.xp2[std::size_t(iy) * g.n + ix] = iy * g.h;
        }
    st.defgrad = TensorField(g, 1.0);
    st.inv_defgrad = TensorField(g, 1.0);
    st.jtilde.assign(g.size(), 1.0);
    st.time = 0.0;
    return st;
}

void advance_y(FlowMapState& state, const VectorField& u, double dt) {
    const std::size_t m = state.grid.size();
    auto rhs_disp = [&](const VectorField& d) {
        ScalarField d1 = component(state.grid, d.c1);
        ScalarField d2 = component(state.grid, d.c2);
        ScalarField a1 = advect(u, d1);
        ScalarField a2 = advect(u, d2);
        VectorField out(state.grid);
        for (std::size_t i = 0; i < m; ++i) {
            out.c1[i] = -a1.v[i] - u.c1[i];
            out.c2[i] = -a2.v[i] - u.c2[i];
        }
        return out;
    };

    VectorField& d = state.disp;
    VectorField k1 = rhs_disp(d);
    VectorField s1(state.grid);
    for (std::size_t i = 0; i < m; ++i) {
        s1.c1[i] = d.c1[i] + dt * k1.c1[i];
        s1.c2[i] = d.c2[i] + dt * k1.c2[i];
    }
    VectorField k2 = rhs_disp(s1);
    VectorField s2(state.grid);
    for (std::size_t i = 0; i < m; ++i) {
        s2.c1[i] = 0.75 * d.c1[i] + 0.25 * (s1.c1[i] + dt * k2.c1[i]);
        s2.c2[i] = 0.75 * d.c2[i] + 0.25 * (s1.c2[i] + dt * k2.c2[i]);
    }
    VectorField k3 = rhs_disp(s2);
    for (std::size_t i = 0; i < m; ++i) {
        d.c1[i] = (1.0 / 3.0) * d.c1[i] + (2.0 / 3.0) * (s2.c1[i] + dt * k3.c1[i]);
        d.c2[i] = (1.0 / 3.0) * d.c2[i] + (2.0 / 3.0) * (s2.c2[i] + dt * k3.c2[i]);
    }
}

namespace {

void advance_particles_probe(FlowMapState& state, const VelocityProbe& probe, double dt) {
    const std::size_t m = state.grid.size();
    parallel_for(m, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
        ParticleState s{state.xp1[i],
                        state.xp2[i],
                        state.inv_defgrad.a11[i],
                        state.inv_defgrad.a12[i],
                        state.inv_defgrad.a21[i],
                        state.inv_defgrad.a22[i],
                        0.0};
        ParticleState k1 = rhs(probe, s);
        ParticleState k2 = rhs(probe, axpy(s, 0.5 * dt, k1));
        ParticleState k3 = rhs(probe, axpy(s, 0.5 * dt, k2));
        ParticleState k4 = rhs(probe, axpy(s, dt, k3));
        auto comb = [&](double sv, double a, double b, double c, double d) {
            return sv + dt / 6.0 * (a + 2 * b + 2 * c + d);
        };
        state.xp1[i] = wrap01(comb(s.x1, k1.x1, k2.x1, k3.x1, k4.x1));
        state.xp2[i] = wrap01(comb(s.x2, k1.x2, k2.x2, k3.x2, k4.x2));
        state.inv_defgrad.a11[i] = comb(s.b11, k1.b11, k2.b11, k3.b11, k4.b11);
        state.inv_defgrad.a12[i] = comb(s.b12, k1.b12, k2.b12, k3.b12, k4.b12);
        state.inv_defgrad.a21[i] = comb(s.b21, k1.b21, k2.b21, k3.b21, k4.b21);
        state.inv_defgrad.a22[i] = comb(s.b22, k1.b22, k2.b22, k3.b22, k4.b22);
        state.jtilde[i] *= std::exp(comb(0.0, k1.logj, k2.logj, k3.logj, k4.logj));
    }
    });
}

} // namespace

void advance_particles(FlowMapState& state, const VectorField& u, double dt) {
    VelocityProbe probe(u, jacobian_matrix(u));
    advance_particles_probe(state, probe, dt);
}

void advance_particles_two_halves(FlowMapState& state, const VectorField& u, double dt,
                                  std::vector<double>& mid1, std::vector<double>& mid2) {
    VelocityProbe probe(u, jacobian_matrix(u));
    advance_particles_probe(state, probe, 0.5 * dt);
    mid1 = state.xp1;
    mid2 = state.xp2;
    advance_particles_probe(state, probe, 0.5 * dt);
}

void advance_E(FlowMapState& state, const VectorField& u, double dt) {
    const TensorField du = jacobian_matrix(u);
    const std::size_t m = state.grid.size();

    // RHS for one tensor component row: -(u.grad)E - E Du, dealiased products
    auto rhs_tensor = [&](const TensorField& e) {
        TensorField out(state.grid);
        ScalarField e11 = component(state.grid, e.a11);
        ScalarField e12 = component(state.grid, e.a12);
        ScalarField e21 = component(state.grid, e.a21);
        ScalarField e22 = component(state.grid, e.a22);
        ScalarField t11 = advect(u, e11), t12 = advect(u, e12);
        ScalarField t21 = advect(u, e21), t22 = advect(u, e22);
        ScalarField p11(state.grid), p12(state.grid), p21(state.grid), p22(state.grid);
        for (std::size_t i = 0; i < m; ++i) {
            p11.v[i] = e.a11[i] * du.a11[i] + e.a12[i] * du.a21[i];
            p12.v[i] = e.a11[i] * du.a12[i] + e.a12[i] * du.a22[i];
            p21.v[i] = e.a21[i] * du.a11[i] + e.a22[i] * du.a21[i];
            p22.v[i] = e.a21[i] * du.a12[i] + e.a22[i] * du.a22[i];
        }
        p11 = dealias(p11);
        p12 = dealias(p12);
        p21 = dealias(p21);
        p22 = dealias(p22);
        for (std::size_t i = 0; i < m; ++i) {
            out.a11[i] = -t11.v[i] - p11.v[i];
            out.a12[i] = -t12.v[i] - p12.v[i];
            out.a21[i] = -t21.v[i] - p21.v[i];
            out.a22[i] = -t22.v[i] - p22.v[i];
        }
        return out;
    };

    auto lincomb = [&](const TensorField& a, double ca, const TensorField& b, double cb,
                       double cdt, const TensorField& k) {
        TensorField out(state.grid);
        for (std::size_t i = 0; i < m; ++i) {
            out.a11[i] = ca * a.a11[i] + cb * (b.a11[i] + cdt * k.a11[i]);
            out.a12[i] = ca * a.a12[i] + cb * (b.a12[i] + cdt * k.a12[i]);
            out.a21[i] = ca * a.a21[i] + cb * (b.a21[i] + cdt * k.a21[i]);
            out.a22[i] = ca * a.a22[i] + cb * (b.a22[i] + cdt * k.a22[i]);
        }
        return out;
    };

    TensorField& e = state.defgrad;
    TensorField k1 = rhs_tensor(e);
    TensorField s1 = lincomb(e, 0.0, e, 1.0, dt, k1);
    TensorField k2 = rhs_tensor(s1);
    TensorField s2 = lincomb(e, 0.75, s1, 0.25, dt, k2);
    TensorField k3 = rhs_tensor(s2);
    e = lincomb(e, 1.0 / 3.0, s2, 2.0 / 3.0, dt, k3);
}

ScalarField jacobian(const FlowMapState& state, double j_min) {
    ScalarField j(state.grid);
    const auto& e = state.defgrad;
    double lo = 1e300;
    for (std::size_t i = 0; i < j.v.size(); ++i) {
        j.v[i] = e.a11[i] * e.a22[i] - e.a12[i] * e.a21[i];
        lo = std::min(lo, j.v[i]);
    }
    if (lo <= j_min)
        throw InvariantViolation("jacobian: flow map degenerate (min J = " +
                                 std::to_string(lo) + ")");
    return j;
}

ScalarField compose_to_euler(const ScalarField& f_y, const FlowMapState& state) {
    Interpolant ip(f_y);
    ScalarField out(state.grid);
    const Grid g = state.grid;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const std::size_t i = std::size_t(iy) * g.n + ix;
            out.v[i] = ip.eval(ix * g.h + state.disp.c1[i], iy * g.h + state.disp.c2[i]);
        }
    return out;
}

ComplexField compose_to_euler(const ComplexField& f_y, const FlowMapState& state) {
    Interpolant ip(f_y);
    ComplexField out(state.grid);
    const Grid g = state.grid;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const std::size_t i = std::size_t(iy) * g.n + ix;
            out.v[i] =
                ip.eval_complex(ix * g.h + state.disp.c1[i], iy * g.h + state.disp.c2[i]);
        }
    return out;
}

ScalarField compose_to_lagr(const ScalarField& f_x, const FlowMapState& state) {
    Interpolant ip(f_x);
    ScalarField out(state.grid);
    parallel_for(out.v.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            out.v[i] = ip.eval(state.xp1[i], state.xp2[i]);
    });
    return out;
}

double map_inverse_error(const FlowMapState& state) {
    const Grid g = state.grid;
    ScalarField d1 = component(g, state.disp.c1);
    ScalarField d2 = component(g, state.disp.c2);
    Interpolant i1(d1), i2(d2);
    double err = 0.0;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const std::size_t i = std::size_t(iy) * g.n + ix;
            const double y1 = state.xp1[i] + i1.eval(state.xp1[i], state.xp2[i]);
            const double y2 = state.xp2[i] + i2.eval(state.xp1[i], state.xp2[i]);
            err = std::max(err, std::abs(torus_dist(y1, ix * g.h)));
            err = std::max(err, std::abs(torus_dist(y2, iy * g.h)));
        }
    return err;
}

double eb_identity_error(const FlowMapState& state) {
    const Grid g = state.grid;
    Interpolant e11(component(g, state.defgrad.a11));
    Interpolant e12(component(g, state.defgrad.a12));
    Interpolant e21(component(g, state.defgrad.a21));
    Interpolant e22(component(g, state.defgrad.a22));
    double err = 0.0;
    for (std::size_t i = 0; i < state.xp1.size(); ++i) {
        const double x1 = state.xp1[i], x2 = state.xp2[i];
        const double a = e11.eval(x1, x2), b = e12.eval(x1, x2);
        const double c = e21.eval(x1, x2), d = e22.eval(x1, x2);
        const auto& ib = state.inv_defgrad;
        err = std::max(err, std::abs(a * ib.a11[i] + b * ib.a21[i] - 1.0));
        err = std::max(err, std::abs(a * ib.a12[i] + b * ib.a22[i]));
        err = std::max(err, std::abs(c * ib.a11[i] + d * ib.a21[i]));
        err = std::max(err, std::abs(c * ib.a12[i] + d * ib.a22[i] - 1.0));
    }
    return err;
}

double liouville_gap(const FlowMapState& state) {
    ScalarField j = jacobian(state);
    Interpolant ij(j);
    double err = 0.0;
    for (std::size_t i = 0; i < state.xp1.size(); ++i) {
        const double det_at_particle = ij.eval(state.xp1[i], state.xp2[i]);
        err = std::max(err,
                       std::abs(det_at_particle - state.jtilde[i]) / state.jtilde[i]);
    }
    return err;
}

double tensor_linf(const TensorField& t) {
    double m = 0.0;
    for (std::size_t i = 0; i < t.a11.size(); ++i) {
        m = std::max(m, std::abs(t.a11[i]));
        m = std::max(m, std::abs(t.a12[i]));
        m = std::max(m, std::abs(t.a21[i]));
        m = std::max(m, std::abs(t.a22[i]));
    }
    return m;
}

NormEquivalence norm_equivalence_report(const ScalarField& f, const FlowMapState& state,
                                        int order) {
    if (order != 0 && order != 1)
        throw std::invalid_argument("norm_equivalence_report: order must be 0 or 1");
    ScalarField fl = compose_to_lagr(f, state);

    auto hm = [&](const ScalarField& a) {
        double s = l2_norm(a);
        if (order == 1) {
            const double gs = l2_norm(gradient(a));
            s = std::sqrt(s * s + gs * gs);
        }
        return s;
    };
    const double ne = hm(f);
    const double nl = hm(fl);
    if (ne == 0.0) throw std::invalid_argument("norm_equivalence_report: zero field");

    ScalarField j = jacobian(state); // throws if degenerate
    double jmax = 0.0, jmin = 1e300;
    for (double x : j.v) {
        jmax = std::max(jmax, x);
        jmin = std::min(jmin, x);
    }
    double c = std::sqrt(std::max(jmax, 1.0 / jmin));
    if (order == 1) {
        const double einf = tensor_linf(state.defgrad);
        const double binf = tensor_linf(state.inv_defgrad);
        c *= std::max({1.0, einf, binf});
    }
    NormEquivalence rep;
    rep.ratio = nl / ne;
    rep.bound = c;
    // small slack: the composed field carries interpolation error
    const double slack = 1e-6 * std::max(1.0, rep.ratio);
    rep.within = rep.ratio >= 1.0 / c - slack && rep.ratio <= c + slack;
    return rep;
}

} // namespace swlw

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swlw/grid.hpp"

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

ScalarField random_field(Grid g, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ScalarField f(g);
    for (auto& x : f.v) x = dist(rng);
    return f;
}

} // namespace

TEST_CASE("transform of a constant keeps only the zero mode") {
    Grid g = Grid::make(16);
    ScalarField f(g, 3.25);
    SpectralScalar s = forward_transform(f);
    CHECK(s.c[0].real() == doctest::Approx(3.25 * g.size()).epsilon(1e-14));
    double off = 0.0;
    for (std::size_t i = 1; i < s.c.size(); ++i) off = std::max(off, std::abs(s.c[i]));
    CHECK(off < 1e-10);
}

TEST_CASE("sin(2 pi x1) produces the conjugate mode pair k=(+-1,0)") {
    Grid g = Grid::make(32);
    ScalarField f = sample(g, [](double x1, double) { return std::sin(2 * pi * x1); });
    SpectralScalar s = forward_transform(f);
    // expected: f_hat(1,0) = -i n^2/2, f_hat(n-1,0) = +i n^2/2
    const double half = g.size() / 2.0;
    CHECK(std::abs(s.c[1] - cplx(0.0, -half)) < 1e-9);
    CHECK(std::abs(s.c[g.n - 1] - cplx(0.0, half)) < 1e-9);
    double rest = 0.0;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix)
            if (!(iy == 0 && (ix == 1 || ix == g.n - 1)))
                rest = std::max(rest, std::abs(s.c[std::size_t(iy) * g.n + ix]));
    CHECK(rest < 1e-9);
}

TEST_CASE("random field round-trips through the transform pair") {
    Grid g = Grid::make(64);
    ScalarField f = random_field(g, 7u);
    ScalarField back = inverse_transform_real(forward_transform(f));
    double err = 0.0;
    for (std::size_t i = 0; i < f.v.size(); ++i) err = std::max(err, std::abs(f.v[i] - back.v[i]));
    CHECK(err / linf_norm(f) < 1e-12);
}

TEST_CASE("Parseval: physical and spectral L2 norms agree") {
    Grid g = Grid::make(64);
    ScalarField f = random_field(g, 11u);
    CHECK(l2_norm(f) == doctest::Approx(spectral_l2_norm(forward_transform(f))).epsilon(1e-12));
}

TEST_CASE("gradient of sin(2 pi x1) is (2 pi cos(2 pi x1), 0)") {
    Grid g = Grid::make(32);
    ScalarField f = sample(g, [](double x1, double) { return std::sin(2 * pi * x1); });
    VectorField gr = gradient(f);
    double err = 0.0;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            err = std::max(err, std::abs(gr.c1[std::size_t(iy) * g.n + ix] -
                                         2 * pi * std::cos(2 * pi * ix * g.h)));
            err = std::max(err, std::abs(gr.c2[std::size_t(iy) * g.n + ix]));
        }
    CHECK(err < 1e-11);
}

TEST_CASE("divergence of u=(sin(2 pi x2),0) vanishes") {
    Grid g = Grid::make(32);
    VectorField u(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix)
            u.c1[std::size_t(iy) * g.n + ix] = std::sin(2 * pi * iy * g.h);
    CHECK(linf_norm(divergence(u)) < 1e-12);
}

TEST_CASE("curl_z follows d2u1 - d1u2, cross-checked against finite differences") {
    Grid g = Grid::make(64);
    VectorField u(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix)
            u.c1[std::size_t(iy) * g.n + ix] = std::sin(2 * pi * iy * g.h);
    ScalarField w = curl_z(u);
    double err = 0.0;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix)
            err = std::max(err, std::abs(w(ix, iy) - 2 * pi * std::cos(2 * pi * iy * g.h)));
    CHECK(err < 1e-11);

    // oracle: 4th-order finite differences on a generic smooth pair
    VectorField v(g);
    ScalarField a = sample(g, [](double x1, double x2) {
        return std::sin(2 * pi * x2) * std::cos(4 * pi * x1);
    });
    ScalarField b = sample(g, [](double x1, double x2) {
        return std::cos(2 * pi * x1) * std::sin(4 * pi * x2);
    });
    v.c1 = a.v;
    v.c2 = b.v;
    ScalarField wz = curl_z(v);
    ScalarField a2(g), b2(g);
    { // d a / d x2 via the 1-D stencil along axis 1
        const int n = g.n;
        const double h = g.h;
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                auto at = [&](int d) { return a(ix, (iy + d + 2 * n) % n); };
                a2(ix, iy) = (-at(2) + 8 * at(1) - 8 * at(-1) + at(-2)) / (12 * h);
            }
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                auto at = [&](int d) { return b((ix + d + 2 * n) % n, iy); };
                b2(ix, iy) = (-at(2) + 8 * at(1) - 8 * at(-1) + at(-2)) / (12 * h);
            }
    }
    double fd_err = 0.0;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix)
            fd_err = std::max(fd_err, std::abs(wz(ix, iy) - (a2(ix, iy) - b2(ix, iy))));
    CHECK(fd_err < 2e-4); // FD truncation, not spectral error
}

TEST_CASE("single resolved mode differentiates exactly") {
    Grid g = Grid::make(64);
    for (int k : {1, 5, 13}) {
        ScalarField f = sample(g, [&](double x1, double) { return std::cos(2 * pi * k * x1); });
        VectorField gr = gradient(f);
        double err = 0.0;
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix)
                err = std::max(err, std::abs(gr.c1[std::size_t(iy) * g.n + ix] +
                                             2 * pi * k * std::sin(2 * pi * k * ix * g.h)));
        CHECK(err < 1e-10 * (k + 1));
    }
}

TEST_CASE("dealias leaves band-limited fields untouched and kills high modes") {
    Grid g = Grid::make(32); // kcut = 10
    ScalarField low = sample(g, [](double x1, double x2) {
        return std::sin(2 * pi * 3 * x1) + std::cos(2 * pi * 7 * x2);
    });
    ScalarField lo2 = dealias(low);
    double err = 0.0;
    for (std::size_t i = 0; i < low.v.size(); ++i) err = std::max(err, std::abs(low.v[i] - lo2.v[i]));
    CHECK(err < 1e-12);

    const int khigh = g.n / 2 - 1; // 15 > 10
    ScalarField hi = sample(g, [&](double x1, double) { return std::cos(2 * pi * khigh * x1); });
    CHECK(linf_norm(dealias(hi)) < 1e-12);
}

TEST_CASE("dealiased product equals the double-resolution projected product") {
    Grid g = Grid::make(32);
    Grid g2 = Grid::make(64);
    const int kcut = g.n / 3;
    auto fa = [](double x1, double x2) {
        return std::sin(2 * pi * 5 * x1) + 0.5 * std::cos(2 * pi * (3 * x1 + 8 * x2));
    };
    auto fb = [](double x1, double x2) {
        return std::cos(2 * pi * 9 * x2) + 0.25 * std::sin(2 * pi * (10 * x1 - 2 * x2));
    };
    ScalarField a = sample(g, fa), b = sample(g, fb);
    ScalarField prod(g);
    for (std::size_t i = 0; i < prod.v.size(); ++i) prod.v[i] = a.v[i] * b.v[i];
    SpectralScalar sp = forward_transform(prod);
    dealias_inplace(sp);

    // oracle: exact product on the 2n grid, truncated to the same band
    ScalarField a2 = sample(g2, fa), b2 = sample(g2, fb);
    ScalarField prod2(g2);
    for (std::size_t i = 0; i < prod2.v.size(); ++i) prod2.v[i] = a2.v[i] * b2.v[i];
    SpectralScalar sp2 = forward_transform(prod2);

    double err = 0.0;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const int k1 = g.ksigned(ix), k2 = g.ksigned(iy);
            if (std::abs(k1) > kcut || std::abs(k2) > kcut) continue;
            const int jx = (k1 + g2.n) % g2.n, jy = (k2 + g2.n) % g2.n;
            const cplx want = sp2.c[std::size_t(jy) * g2.n + jx] / double(g2.size());
            const cplx got = sp.c[std::size_t(iy) * g.n + ix] / double(g.size());
            err = std::max(err, std::abs(want - got));
        }
    CHECK(err < 1e-12);
}

TEST_CASE("interpolation is exact at grid nodes") {
    Grid g = Grid::make(32);
    ScalarField f = random_field(g, 3u);
    Interpolant ip(f);
    double err = 0.0;
    for (int iy = 0; iy < g.n; iy += 3)
        for (int ix = 0; ix < g.n; ix += 3)
            err = std::max(err, std::abs(ip.eval(ix * g.h, iy * g.h) - f(ix, iy)));
    CHECK(err < 1e-12);
}

TEST_CASE("interp hits sin(2 pi x1) at x1=0.25 on n=64") {
    Grid g = Grid::make(64);
    ScalarField f = sample(g, [](double x1, double) { return std::sin(2 * pi * x1); });
    auto vals = interp(f, {{0.25, 0.37}});
    CHECK(std::abs(vals[0] - 1.0) < 1e-6);
}

TEST_CASE("interp error decays at least 3rd order for a shifted plane wave") {
    auto fn = [](double x1, double x2) { return std::sin(2 * pi * (3 * x1 + 2 * x2) + 0.7); };
    std::vector<double> errs;
    for (int n : {16, 32, 64}) {
        Grid g = Grid::make(n);
        Interpolant ip(sample(g, fn));
        double err = 0.0;
        for (int i = 0; i < 101; ++i) {
            const double x1 = wrap01(0.013 + 0.61803398875 * i);
            const double x2 = wrap01(0.472 + 0.7548776662 * i);
            err = std::max(err, std::abs(ip.eval(x1, x2) - fn(x1, x2)));
        }
        errs.push_back(err);
    }
    CHECK(errs[0] / errs[1] > 8.0);
    CHECK(errs[1] / errs[2] > 8.0);
}

TEST_CASE("interp is linear in the field and reproduces constants") {
    Grid g = Grid::make(16);
    ScalarField c(g, 2.5);
    Interpolant ipc(c);
    CHECK(ipc.eval(0.123, 0.456) == doctest::Approx(2.5).epsilon(1e-13));

    ScalarField a = random_field(g, 21u), b = random_field(g, 22u);
    ScalarField combo(g);
    for (std::size_t i = 0; i < combo.v.size(); ++i) combo.v[i] = 2.0 * a.v[i] - 3.0 * b.v[i];
    Interpolant ipa(a), ipb(b), ipx(combo);
    for (auto [x1, x2] : {std::pair{0.11, 0.93}, {0.5, 0.01}, {0.77, 0.33}}) {
        CHECK(ipx.eval(x1, x2) ==
              doctest::Approx(2.0 * ipa.eval(x1, x2) - 3.0 * ipb.eval(x1, x2)).epsilon(1e-12));
    }
}

TEST_CASE("complex interpolation matches per-part scalar interpolation") {
    Grid g = Grid::make(32);
    ComplexField f(g);
    ScalarField re = random_field(g, 31u), im = random_field(g, 32u);
    for (std::size_t i = 0; i < f.v.size(); ++i) f.v[i] = {re.v[i], im.v[i]};
    Interpolant ip(f), ipr(re), ipi(im);
    const cplx z = ip.eval_complex(0.21, 0.68);
    CHECK(std::abs(z - cplx(ipr.eval(0.21, 0.68), ipi.eval(0.21, 0.68))) < 1e-13);
}

TEST_CASE("grid construction rejects bad sizes") {
    CHECK_THROWS(Grid::make(6));
    CHECK_THROWS(Grid::make(24));
    CHECK(Grid::make(8).h * 8 == 1.0);
}

TEST_CASE("laplacian matches gradient-divergence composition") {
    Grid g = Grid::make(64);
    ScalarField f = sample(g, [](double x1, double x2) {
        return std::sin(2 * pi * 2 * x1) * std::cos(2 * pi * 5 * x2);
    });
    ScalarField lap = laplacian(f);
    ScalarField lap2 = divergence(gradient(f));
    double err = 0.0;
    for (std::size_t i = 0; i < lap.v.size(); ++i)
        err = std::max(err, std::abs(lap.v[i] - lap2.v[i]));
    CHECK(err < 1e-8);
}

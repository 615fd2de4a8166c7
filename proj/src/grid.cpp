#include "swlw/grid.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include <fftw3.h>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

namespace swlw {

namespace {

// field-sized buffers churn fast; keep big blocks on the heap instead of
// round-tripping through mmap on every transform
const bool malloc_tuned = [] {
#if defined(__GLIBC__)
    mallopt(M_MMAP_THRESHOLD, 64 << 20);
#endif
    return true;
}();

std::vector<cplx>& scratch_buffer(std::size_t size) {
    thread_local std::vector<cplx> buf;
    if (buf.size() < size) buf.resize(size);
    return buf;
}

constexpr double two_pi = 2.0 * std::numbers::pi;

// One c2c plan pair per grid size. FFTW_ESTIMATE keeps planning deterministic;
// FFTW_UNALIGNED lets the cached plan run on any caller-provided buffers.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int n) {
    static std::mutex mut;
    static std::unordered_map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mut);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<cplx> a(std::size_t(n) * n), b(std::size_t(n) * n);
    auto* ap = reinterpret_cast<fftw_complex*>(a.data());
    auto* bp = reinterpret_cast<fftw_complex*>(b.data());
    PlanPair p;
    // ESTIMATE keeps plan selection deterministic across runs; buffers all come
    // from operator new (16-byte aligned), matching the probe buffers here
    p.fwd = fftw_plan_dft_2d(n, n, ap, bp, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_2d(n, n, ap, bp, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
    return cache.emplace(n, p).first->second;
}

void execute(fftw_plan plan, const cplx* in, cplx* out) {
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void check_grid(const Grid& g) {
    if (g.n < 8) throw std::invalid_argument("grid too small");
}

} // namespace

// multiply mode k by i*kappa_axis, axis 0 -> x1, 1 -> x2
SpectralScalar spectral_derivative(const SpectralScalar& s, int axis) {
    SpectralScalar out(s.grid);
    const int n = s.grid.n;
    for (int iy = 0; iy < n; ++iy) {
        const double k2 = two_pi * s.grid.kderiv(iy);
        for (int ix = 0; ix < n; ++ix) {
            const double k1 = two_pi * s.grid.kderiv(ix);
            const double k = axis == 0 ? k1 : k2;
            const cplx c = s.c[std::size_t(iy) * n + ix];
            out.c[std::size_t(iy) * n + ix] = cplx(-k * c.imag(), k * c.real());
        }
    }
    return out;
}

Grid Grid::make(int n) {
    if (n < 8 || (n & (n - 1)) != 0)
        throw std::invalid_argument("grid size must be a power of two >= 8");
    Grid g;
    g.n = n;
    g.h = 1.0 / n;
    return g;
}

SpectralScalar forward_transform(const ScalarField& f) {
    check_grid(f.grid);
    std::vector<cplx>& in = scratch_buffer(f.grid.size());
    for (std::size_t i = 0; i < f.v.size(); ++i) in[i] = f.v[i];
    SpectralScalar out(f.grid);
    execute(plans_for(f.grid.n).fwd, in.data(), out.c.data());
    return out;
}

SpectralScalar forward_transform(const ComplexField& f) {
    check_grid(f.grid);
    SpectralScalar out(f.grid);
    execute(plans_for(f.grid.n).fwd, f.v.data(), out.c.data());
    return out;
}

ScalarField inverse_transform_real(const SpectralScalar& s) {
    check_grid(s.grid);
    std::vector<cplx>& out = scratch_buffer(s.grid.size());
    execute(plans_for(s.grid.n).bwd, s.c.data(), out.data());
    ScalarField f(s.grid);
    const double scale = 1.0 / double(s.grid.size());
    for (std::size_t i = 0; i < f.v.size(); ++i) f.v[i] = out[i].real() * scale;
    return f;
}

ComplexField inverse_transform_complex(const SpectralScalar& s) {
    check_grid(s.grid);
    ComplexField f(s.grid);
    execute(plans_for(s.grid.n).bwd, s.c.data(), f.v.data());
    const double scale = 1.0 / double(s.grid.size());
    for (auto& z : f.v) z *= scale;
    return f;
}

VectorField gradient(const ScalarField& f) {
    SpectralScalar s = forward_transform(f);
    VectorField g(f.grid);
    g.c1 = inverse_transform_real(spectral_derivative(s, 0)).v;
    g.c2 = inverse_transform_real(spectral_derivative(s, 1)).v;
    return g;
}

ScalarField divergence(const VectorField& u) {
    ScalarField f1{u.grid};
    f1.v = u.c1;
    ScalarField f2{u.grid};
    f2.v = u.c2;
    SpectralScalar d1 = spectral_derivative(forward_transform(f1), 0);
    SpectralScalar d2 = spectral_derivative(forward_transform(f2), 1);
    for (std::size_t i = 0; i < d1.c.size(); ++i) d1.c[i] += d2.c[i];
    return inverse_transform_real(d1);
}

ScalarField curl_z(const VectorField& u) {
    ScalarField f1{u.grid};
    f1.v = u.c1;
    ScalarField f2{u.grid};
    f2.v = u.c2;
    SpectralScalar d2u1 = spectral_derivative(forward_transform(f1), 1);
    SpectralScalar d1u2 = spectral_derivative(forward_transform(f2), 0);
    for (std::size_t i = 0; i < d2u1.c.size(); ++i) d2u1.c[i] -= d1u2.c[i];
    return inverse_transform_real(d2u1);
}

ScalarField laplacian(const ScalarField& f) {
    SpectralScalar s = forward_transform(f);
    const int n = f.grid.n;
    for (int iy = 0; iy < n; ++iy) {
        const double k2 = two_pi * f.grid.kderiv(iy);
        for (int ix = 0; ix < n; ++ix) {
            const double k1 = two_pi * f.grid.kderiv(ix);
            s.c[std::size_t(iy) * n + ix] *= -(k1 * k1 + k2 * k2);
        }
    }
    return inverse_transform_real(s);
}

TensorField jacobian_matrix(const VectorField& u) {
    ScalarField f1{u.grid};
    f1.v = u.c1;
    ScalarField f2{u.grid};
    f2.v = u.c2;
    SpectralScalar s1 = forward_transform(f1);
    SpectralScalar s2 = forward_transform(f2);
    TensorField t(u.grid);
    t.a11 = inverse_transform_real(spectral_derivative(s1, 0)).v;
    t.a12 = inverse_transform_real(spectral_derivative(s1, 1)).v;
    t.a21 = inverse_transform_real(spectral_derivative(s2, 0)).v;
    t.a22 = inverse_transform_real(spectral_derivative(s2, 1)).v;
    return t;
}

void dealias_inplace(SpectralScalar& s) {
    const int n = s.grid.n;
    const int kcut = n / 3;
    for (int iy = 0; iy < n; ++iy) {
        const int k2 = std::abs(s.grid.ksigned(iy));
        for (int ix = 0; ix < n; ++ix) {
            const int k1 = std::abs(s.grid.ksigned(ix));
            if (k1 > kcut || k2 > kcut) s.c[std::size_t(iy) * n + ix] = cplx{};
        }
    }
}

ScalarField dealias(const ScalarField& f) {
    SpectralScalar s = forward_transform(f);
    dealias_inplace(s);
    return inverse_transform_real(s);
}

VectorField dealias(const VectorField& u) {
    ScalarField f1{u.grid};
    f1.v = u.c1;
    ScalarField f2{u.grid};
    f2.v = u.c2;
    VectorField out(u.grid);
    out.c1 = dealias(f1).v;
    out.c2 = dealias(f2).v;
    return out;
}

ComplexField dealias(const ComplexField& f) {
    SpectralScalar s = forward_transform(f);
    dealias_inplace(s);
    return inverse_transform_complex(s);
}

double mean(const ScalarField& f) {
    double acc = 0.0;
    for (double x : f.v) acc += x;
    return acc / double(f.grid.size());
}

double l2_norm(const ScalarField& f) {
    double acc = 0.0;
    for (double x : f.v) acc += x * x;
    return std::sqrt(acc / double(f.grid.size()));
}

double l2_norm(const VectorField& u) {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.c1.size(); ++i)
        acc += u.c1[i] * u.c1[i] + u.c2[i] * u.c2[i];
    return std::sqrt(acc / double(u.grid.size()));
}

double l2_norm(const ComplexField& f) {
    double acc = 0.0;
    for (const cplx& z : f.v) acc += std::norm(z);
    return std::sqrt(acc / double(f.grid.size()));
}

double linf_norm(const ScalarField& f) {
    double m = 0.0;
    for (double x : f.v) m = std::max(m, std::abs(x));
    return m;
}

double linf_norm(const VectorField& u) {
    double m = 0.0;
    for (std::size_t i = 0; i < u.c1.size(); ++i)
        m = std::max(m, std::hypot(u.c1[i], u.c2[i]));
    return m;
}

double linf_norm(const ComplexField& f) {
    double m = 0.0;
    for (const cplx& z : f.v) m = std::max(m, std::abs(z));
    return m;
}

double spectral_l2_norm(const SpectralScalar& s) {
    double acc = 0.0;
    for (const cplx& z : s.c) acc += std::norm(z);
    const double n2 = double(s.grid.size());
    return std::sqrt(acc / (n2 * n2));
}

bool all_finite(const ScalarField& f) {
    for (double x : f.v)
        if (!std::isfinite(x)) return false;
    return true;
}

bool all_finite(const VectorField& u) {
    for (double x : u.c1)
        if (!std::isfinite(x)) return false;
    for (double x : u.c2)
        if (!std::isfinite(x)) return false;
    return true;
}

bool all_finite(const ComplexField& f) {
    for (const cplx& z : f.v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double wrap01(double x) {
    double y = x - std::floor(x);
    if (y >= 1.0) y = 0.0; // floor rounding at the seam
    return y;
}

// -- Interpolant -------------------------------------------------------------

namespace {

// Periodic prefilter: divide the DFT by the cubic B-spline symbol per axis,
// so that the spline interpolates the samples exactly.
std::vector<double> bspline_coeffs(const SpectralScalar& s, bool imag_part) {
    const int n = s.grid.n;
    SpectralScalar t(s.grid);
    std::vector<double> symbol(n);
    for (int i = 0; i < n; ++i)
        symbol[i] = (4.0 + 2.0 * std::cos(two_pi * s.grid.ksigned(i) / double(n))) / 6.0;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const std::size_t id = std::size_t(iy) * n + ix;
            t.c[id] = s.c[id] / (symbol[ix] * symbol[iy]);
        }
    ComplexField f = inverse_transform_complex(t);
    std::vector<double> out(s.grid.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = imag_part ? f.v[i].imag() : f.v[i].real();
    return out;
}

inline void bspline_weights(double f, double w[4]) {
    const double f2 = f * f, f3 = f2 * f;
    w[0] = (1.0 - 3.0 * f + 3.0 * f2 - f3) / 6.0;
    w[1] = (4.0 - 6.0 * f2 + 3.0 * f3) / 6.0;
    w[2] = (1.0 + 3.0 * f + 3.0 * f2 - 3.0 * f3) / 6.0;
    w[3] = f3 / 6.0;
}

double eval_coeffs(const std::vector<double>& c, const Grid& g, double x1, double x2) {
    const int n = g.n;
    const double t1 = wrap01(x1) * n;
    const double t2 = wrap01(x2) * n;
    int i1 = int(std::floor(t1));
    int i2 = int(std::floor(t2));
    const double f1 = t1 - i1;
    const double f2 = t2 - i2;
    double w1[4], w2[4];
    bspline_weights(f1, w1);
    bspline_weights(f2, w2);
    double acc = 0.0;
    for (int m = 0; m < 4; ++m) {
        const int iy = (i2 + m - 1 + n) % n;
        double row = 0.0;
        for (int l = 0; l < 4; ++l) {
            const int ix = (i1 + l - 1 + n) % n;
            row += w1[l] * c[std::size_t(iy) * n + ix];
        }
        acc += w2[m] * row;
    }
    return acc;
}

} // namespace

Interpolant::Interpolant(const ScalarField& f) : grid_(f.grid) {
    re_ = bspline_coeffs(forward_transform(f), false);
}

Interpolant::Interpolant(const ComplexField& f) : grid_(f.grid) {
    SpectralScalar s = forward_transform(f);
    re_ = bspline_coeffs(s, false);
    im_ = bspline_coeffs(s, true);
}

double Interpolant::eval(double x1, double x2) const {
    return eval_coeffs(re_, grid_, x1, x2);
}

cplx Interpolant::eval_complex(double x1, double x2) const {
    const double re = eval_coeffs(re_, grid_, x1, x2);
    const double im = im_.empty() ? 0.0 : eval_coeffs(im_, grid_, x1, x2);
    return {re, im};
}

std::vector<double> interp(const ScalarField& f,
                           const std::vector<std::array<double, 2>>& points) {
    Interpolant ip(f);
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(ip.eval(p[0], p[1]));
    return out;
}

} // namespace swlw

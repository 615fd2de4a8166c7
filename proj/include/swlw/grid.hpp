#pragma once
// Uniform periodic N x N grid on the unit torus [0,1)^2: field containers,
// FFT-based spectral transforms and derivatives, 2/3-rule dealiasing, and
// periodic bicubic (prefiltered B-spline) interpolation for off-grid queries.
//
// Layout: row-major, v[iy*n + ix] is the sample at (x1,x2) = (ix*h, iy*h).
// All operations are pure; fields are plain value types.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace swlw {

using cplx = std::complex<double>;

struct Grid {
    int n = 0;      // samples per axis (power of two, >= 8)
    double h = 0.0; // spacing; h*n == 1 exactly

    static Grid make(int n);

    std::size_t size() const { return std::size_t(n) * n; }
    // signed integer wavenumber for FFT index i (Nyquist kept positive)
    int ksigned(int i) const { return i <= n / 2 ? i : i - n; }
    // wavenumber used by derivative-type operators: the Nyquist mode has no
    // sign-consistent derivative on a real grid and is treated as zero
    int kderiv(int i) const { return 2 * i == n ? 0 : ksigned(i); }
    bool operator==(const Grid&) const = default;
};

struct ScalarField {
    Grid grid;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(Grid g, double fill = 0.0) : grid(g), v(g.size(), fill) {}
    double& operator()(int ix, int iy) { return v[std::size_t(iy) * grid.n + ix]; }
    double operator()(int ix, int iy) const { return v[std::size_t(iy) * grid.n + ix]; }
};

struct VectorField {
    Grid grid;
    std::vector<double> c1, c2; // components along x1 and x2

    VectorField() = default;
    explicit VectorField(Grid g, double fill = 0.0)
        : grid(g), c1(g.size(), fill), c2(g.size(), fill) {}
};

struct ComplexField {
    Grid grid;
    std::vector<cplx> v;

    ComplexField() = default;
    explicit ComplexField(Grid g, cplx fill = {}) : grid(g), v(g.size(), fill) {}
};

// 2x2 tensor field (used for the deformation gradient and its inverse)
struct TensorField {
    Grid grid;
    std::vector<double> a11, a12, a21, a22;

    TensorField() = default;
    explicit TensorField(Grid g, double diag = 0.0)
        : grid(g), a11(g.size(), diag), a12(g.size(), 0.0), a21(g.size(), 0.0),
          a22(g.size(), diag) {}
};

// Unnormalized forward DFT coefficients, c[ky*n + kx].
struct SpectralScalar {
    Grid grid;
    std::vector<cplx> c;

    SpectralScalar() = default;
    explicit SpectralScalar(Grid g) : grid(g), c(g.size(), cplx{}) {}
};

// -- transforms ------------------------------------------------------------

SpectralScalar forward_transform(const ScalarField& f);
SpectralScalar forward_transform(const ComplexField& f);
ScalarField inverse_transform_real(const SpectralScalar& s);
ComplexField inverse_transform_complex(const SpectralScalar& s);

// -- spectral derivatives (exact for resolved modes) ------------------------

VectorField gradient(const ScalarField& f);
// derivative applied to raw coefficients (axis 0 -> x1, 1 -> x2)
SpectralScalar spectral_derivative(const SpectralScalar& s, int axis);
ScalarField divergence(const VectorField& u);
// curl_z(u) = d2 u1 - d1 u2
ScalarField curl_z(const VectorField& u);
ScalarField laplacian(const ScalarField& f);
// gradient of each component: row i of the result is grad(u_i), i.e.
// a(i,j) = d u_i / d x_j
TensorField jacobian_matrix(const VectorField& u);

// -- dealiasing (2/3 rule: zero modes with |k_i| > n/3) ----------------------

void dealias_inplace(SpectralScalar& s);
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& u);
ComplexField dealias(const ComplexField& f);

// -- reductions --------------------------------------------------------------

double mean(const ScalarField& f);
double l2_norm(const ScalarField& f);  // sqrt(integral of f^2 over the torus)
double l2_norm(const VectorField& u);
double l2_norm(const ComplexField& f);
double linf_norm(const ScalarField& f);
double linf_norm(const VectorField& u);
double linf_norm(const ComplexField& f);
double spectral_l2_norm(const SpectralScalar& s); // Parseval companion of l2_norm
bool all_finite(const ScalarField& f);
bool all_finite(const VectorField& u);
bool all_finite(const ComplexField& f);

// -- interpolation -----------------------------------------------------------

// Periodic bicubic interpolation via a spectrally prefiltered cubic B-spline:
// exact at grid nodes, reproduces constants, 4th-order accurate off grid.
// Chosen over trigonometric evaluation for O(1) per-query cost; swap here if
// spectral accuracy at off-grid points is ever needed.
class Interpolant {
  public:
    explicit Interpolant(const ScalarField& f);
    explicit Interpolant(const ComplexField& f);

    double eval(double x1, double x2) const;      // scalar payload
    cplx eval_complex(double x1, double x2) const; // complex payload
    const Grid& grid() const { return grid_; }

  private:
    Grid grid_;
    std::vector<double> re_, im_; // B-spline coefficients (im_ empty for real)
};

// One-shot convenience: values of f at a list of (x1,x2) positions.
std::vector<double> interp(const ScalarField& f,
                           const std::vector<std::array<double, 2>>& points);

double wrap01(double x); // wrap into [0,1)

} // namespace swlw

#pragma once
// Interaction coefficient alpha and the coupling functions g, h.
//
// g' is a C-infinity bump supported in [v_lo, v_hi] subset of (0,inf); h' is a
// C-infinity cutoff equal to h_amp on [0, s_max/2] and smoothly zero beyond
// s_max. Both primitives vanish at 0 and are nondecreasing. g has no closed
// form; it is tabulated once from high-accuracy quadrature and evaluated by
// cubic Hermite interpolation (table error below 1e-10).

#include <vector>

namespace swlw {

class CouplingSpec {
  public:
    struct Params {
        double alpha = 1.0;
        double v_lo = 0.5;
        double v_hi = 2.0;
        double g_amp = 1.0;
        double s_max = 4.0;
        double h_amp = 1.0;
    };

    CouplingSpec() : CouplingSpec(Params{}) {}
    explicit CouplingSpec(const Params& p);

    double alpha() const { return p_.alpha; }
    const Params& params() const { return p_; }

    // g and derivatives; argument is the specific volume v = 1/rho >= 0
    double g_eval(double v) const;
    double g_prime(double v) const;
    double g_second(double v) const;

    // h and derivative; argument is the intensity s = |psi|^2 >= 0
    double h_eval(double s) const;
    double h_prime(double s) const;

  private:
    Params p_;
    std::vector<double> g_table_;  // cumulative integral of g' on [v_lo, v_hi]
    std::vector<double> h_table_;  // cumulative integral of the h' shoulder
    double g_total_ = 0.0;         // g(v_hi)
    double h_shoulder_total_ = 0.0;
};

} // namespace swlw

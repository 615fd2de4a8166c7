#include "swlw/coupling.hpp"

#include <cmath>
#include <stdexcept>

namespace swlw {

namespace {

constexpr int table_intervals = 4096;

// C-infinity bump on (0,1), zero elsewhere (all derivatives vanish at 0,1)
double bump(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return std::exp(-1.0 / (t * (1.0 - t)));
}

double bump_dt(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double w = t * (1.0 - t);
    return bump(t) * (1.0 - 2.0 * t) / (w * w);
}

// C-infinity step from 1 (t<=0) down to 0 (t>=1)
double smooth_step_down(double t) {
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    const double qa = std::exp(-1.0 / (1.0 - t));
    const double qb = std::exp(-1.0 / t);
    return qa / (qa + qb);
}

// cumulative Simpson table of fn over [a,b]; table[i] = integral up to node i
std::vector<double> cumulative_table(double a, double b, auto&& fn) {
    std::vector<double> table(table_intervals + 1, 0.0);
    const double dx = (b - a) / table_intervals;
    for (int i = 0; i < table_intervals; ++i) {
        const double x0 = a + i * dx;
        const double x1 = x0 + dx;
        const double seg = dx / 6.0 * (fn(x0) + 4.0 * fn(0.5 * (x0 + x1)) + fn(x1));
        table[i + 1] = table[i] + seg;
    }
    return table;
}

// cubic Hermite on the table cell containing x; deriv supplies exact f'
double table_eval(const std::vector<double>& table, double a, double b, double x,
                  auto&& deriv) {
    const double dx = (b - a) / table_intervals;
    int i = int((x - a) / dx);
    if (i < 0) i = 0;
    if (i >= table_intervals) i = table_intervals - 1;
    const double x0 = a + i * dx;
    const double t = (x - x0) / dx;
    const double y0 = table[i], y1 = table[i + 1];
    const double m0 = deriv(x0) * dx, m1 = deriv(x0 + dx) * dx;
    const double t2 = t * t, t3 = t2 * t;
    const double val = (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 +
                       (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1;
    // the tabulated primitives are nondecreasing; keep cell values bracketed
    return std::min(std::max(val, y0), y1);
}

} // namespace

CouplingSpec::CouplingSpec(const Params& p) : p_(p) {
    if (!(p.alpha >= 0.0)) throw std::invalid_argument("coupling: alpha must be >= 0");
    if (!(0.0 < p.v_lo && p.v_lo < p.v_hi))
        throw std::invalid_argument("coupling: need 0 < v_lo < v_hi");
    if (!(p.g_amp > 0.0)) throw std::invalid_argument("coupling: g_amp must be > 0");
    if (!(p.s_max > 0.0)) throw std::invalid_argument("coupling: s_max must be > 0");
    if (!(p.h_amp > 0.0)) throw std::invalid_argument("coupling: h_amp must be > 0");

    g_table_ = cumulative_table(p.v_lo, p.v_hi, [&](double v) { return g_prime(v); });
    g_total_ = g_table_.back();

    const double s_on = 0.5 * p.s_max;
    h_table_ = cumulative_table(s_on, p.s_max, [&](double s) { return h_prime(s); });
    h_shoulder_total_ = h_table_.back();
}

double CouplingSpec::g_prime(double v) const {
    if (v < 0.0) throw std::invalid_argument("g_prime: negative specific volume");
    return p_.g_amp * bump((v - p_.v_lo) / (p_.v_hi - p_.v_lo));
}

double CouplingSpec::g_second(double v) const {
    if (v < 0.0) throw std::invalid_argument("g_second: negative specific volume");
    const double span = p_.v_hi - p_.v_lo;
    return p_.g_amp * bump_dt((v - p_.v_lo) / span) / span;
}

double CouplingSpec::g_eval(double v) const {
    if (v < 0.0) throw std::invalid_argument("g_eval: negative specific volume");
    if (v <= p_.v_lo) return 0.0;
    if (v >= p_.v_hi) return g_total_;
    return table_eval(g_table_, p_.v_lo, p_.v_hi, v, [&](double x) { return g_prime(x); });
}

double CouplingSpec::h_prime(double s) const {
    if (s < 0.0) throw std::invalid_argument("h_prime: negative intensity");
    const double s_on = 0.5 * p_.s_max;
    if (s <= s_on) return p_.h_amp;
    return p_.h_amp * smooth_step_down((s - s_on) / (p_.s_max - s_on));
}

double CouplingSpec::h_eval(double s) const {
    if (s < 0.0) throw std::invalid_argument("h_eval: negative intensity");
    const double s_on = 0.5 * p_.s_max;
    if (s <= s_on) return p_.h_amp * s;
    const double base = p_.h_amp * s_on;
    if (s >= p_.s_max) return base + h_shoulder_total_;
    return base +
           table_eval(h_table_, s_on, p_.s_max, s, [&](double x) { return h_prime(x); });
}

} // namespace swlw

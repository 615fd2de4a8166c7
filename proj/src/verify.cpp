#include "swlw/verify.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "swlw/diagnostics.hpp"
#include "swlw/mms.hpp"
#include "swlw/reference.hpp"
#include "swlw/runner.hpp"
#include "swlw/scenarios.hpp"

namespace swlw {

namespace {

constexpr double pi = std::numbers::pi;

std::string fmt(double x) { return format_double(x); }

RunConfig base_config() { return parse_config(""); }

Stepper make_stepper(const RunConfig& cfg, const SimState& s) {
    return Stepper(cfg.fluid, cfg.magnetic, CouplingSpec(cfg.coupling), cfg.stepper, s.rho);
}

// ---- criterion 1: equilibrium exactness -----------------------------------

CriterionResult crit_equilibrium() {
    CriterionResult r{1, "equilibrium exactness", false, ""};
    RunConfig cfg = base_config();
    cfg.n = 64;
    cfg.stepper.dt = 1e-3;
    cfg.t_end = 0.1;
    cfg.scenario.name = "equilibrium";

    const auto t0 = std::chrono::steady_clock::now();
    SimState s = make_initial_state(cfg);
    const ComplexField psi0 = s.psi;
    Stepper st = make_stepper(cfg, s);
    s = run(st, std::move(s), cfg.t_end);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const double umax = linf_norm(s.u);
    double rho_err = 0.0;
    for (double x : s.rho.v) rho_err = std::max(rho_err, std::abs(x - 1.0));

    const CouplingSpec& spec = st.coupling();
    const double omega =
        4 * pi * pi + 1.0 + spec.alpha() * spec.g_eval(1.0) * spec.h_prime(1.0);
    double phase_err = 0.0;
    for (std::size_t i = 0; i < s.psi.v.size(); ++i) {
        const cplx want =
            psi0.v[i] * cplx(std::cos(omega * cfg.t_end), -std::sin(omega * cfg.t_end));
        phase_err = std::max(phase_err, std::abs(s.psi.v[i] - want));
    }
    r.passed = umax <= 1e-8 && rho_err <= 1e-10 && phase_err <= 1e-6 && seconds <= 30.0;
    r.details = "max|u| = " + fmt(umax) + " (<=1e-8), max|rho-1| = " + fmt(rho_err) +
                " (<=1e-10), psi phase err = " + fmt(phase_err) +
                " (<=1e-6), runtime = " + fmt(seconds) + " s (<=30)";
    return r;
}

// ---- criterion 2: energy identity ------------------------------------------

double energy_residual(double dt) {
    RunConfig cfg = base_config();
    cfg.n = 64;
    cfg.stepper.dt = dt;
    cfg.t_end = 0.2;
    cfg.scenario.name = "smooth-random";
    cfg.output.diagnostic_interval = 1;
    RunArtifacts art = simulate(cfg, "");
    return std::abs(art.ledger.back().residual) / art.ledger.front().total;
}

CriterionResult crit_energy() {
    CriterionResult r{2, "energy identity", false, ""};
    const double res1 = energy_residual(1e-3);
    const double res2 = energy_residual(5e-4);
    const double ratio = res1 / res2;
    r.passed = res1 <= 5e-4 && ratio >= 1.8;
    r.details = "residual(dt=1e-3) = " + fmt(res1) + " (<=5e-4), residual(dt=5e-4) = " +
                fmt(res2) + ", ratio = " + fmt(ratio) + " (>=1.8)";
    return r;
}

// ---- criterion 3: conservation ---------------------------------------------

CriterionResult crit_conservation() {
    CriterionResult r{3, "mass conservation", false, ""};
    RunConfig cfg = base_config();
    cfg.n = 64;
    cfg.stepper.dt = 1e-3;
    cfg.scenario.name = "smooth-random";
    SimState s = make_initial_state(cfg);
    Stepper st = make_stepper(cfg, s);
    const double psi_mass0 = nls_mass(s.psi);
    double worst_step_drift = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double before = mean(s.rho);
        auto [next, rep] = st.advance(s);
        (void)rep;
        s = std::move(next);
        worst_step_drift = std::max(worst_step_drift, std::abs(mean(s.rho) - before));
    }
    const double psi_drift = std::abs(nls_mass(s.psi) - psi_mass0);
    r.passed = worst_step_drift <= 1e-12 && psi_drift <= 1e-11;
    r.details = "max per-step rho mass drift = " + fmt(worst_step_drift) +
                " (<=1e-12), psi mass drift over run = " + fmt(psi_drift) + " (<=1e-11)";
    return r;
}

// ---- criterion 4: solenoidality --------------------------------------------

CriterionResult crit_solenoidality() {
    CriterionResult r{4, "solenoidality", false, ""};
    double worst = 0.0;
    for (const char* name : {"equilibrium", "smooth-random", "shear"}) {
        RunConfig cfg = base_config();
        cfg.n = 64;
        cfg.stepper.dt = 1e-3;
        cfg.t_end = 0.05;
        cfg.scenario.name = name;
        if (std::string(name) == "shear") {
            cfg.scenario.shear_ux = 0.3;
            cfg.scenario.shear_uy = 0.5;
        }
        RunArtifacts art = simulate(cfg, "");
        worst = std::max(worst, art.max_divh);
    }
    r.passed = worst <= 1e-10;
    r.details = "max ||div H||_inf over representative runs = " + fmt(worst) +
                " (<=1e-10); the stepper additionally gates every accepted step of "
                "every run at this threshold";
    return r;
}

// ---- criterion 5: Lagrangian consistency -----------------------------------

struct MapErrors {
    double jrho, inverse, eb, liouville;
};

MapErrors shear_map_errors(int n, double dt) {
    RunConfig cfg = base_config();
    cfg.n = n;
    cfg.stepper.dt = dt;
    cfg.t_end = 0.5;
    cfg.scenario.name = "shear";
    cfg.scenario.shear_ux = 0.3;
    cfg.scenario.shear_uy = 0.5;
    cfg.scenario.shear_rho = 0.05;
    SimState s = make_initial_state(cfg);
    ScalarField rho0 = s.rho;
    Stepper st = make_stepper(cfg, s);
    s = run(st, std::move(s), cfg.t_end);
    MapErrors e;
    e.jrho = jrho_check(s, rho0);
    e.inverse = map_inverse_error(s.map);
    e.eb = eb_identity_error(s.map);
    e.liouville = liouville_gap(s.map);
    return e;
}

CriterionResult crit_lagrangian() {
    CriterionResult r{5, "Lagrangian consistency", false, ""};
    // space-time refinement: dt scales with h so every error component
    // (interpolation and time discretization alike) must at least halve
    MapErrors e64 = shear_map_errors(64, 1e-3);
    MapErrors e128 = shear_map_errors(128, 5e-4);
    const bool tol64 = e64.jrho <= 1e-4 && e64.inverse <= 1e-4 && e64.eb <= 1e-4 &&
                       e64.liouville <= 1e-4;
    const bool halved = e128.jrho <= 0.5 * e64.jrho && e128.inverse <= 0.5 * e64.inverse &&
                        e128.eb <= 0.5 * e64.eb && e128.liouville <= 0.5 * e64.liouville;
    r.passed = tol64 && halved;
    r.details = "n=64: J/rho = " + fmt(e64.jrho) + ", y(x) = " + fmt(e64.inverse) +
                ", E.B-Id = " + fmt(e64.eb) + ", detE vs Liouville = " + fmt(e64.liouville) +
                " (all <=1e-4); n=128: " + fmt(e128.jrho) + ", " + fmt(e128.inverse) + ", " +
                fmt(e128.eb) + ", " + fmt(e128.liouville) + " (each <= half of n=64)";
    return r;
}

// ---- criterion 6: Picard contraction ---------------------------------------

CriterionResult crit_contraction() {
    CriterionResult r{6, "Picard contraction", false, ""};
    RunConfig cfg = base_config();
    cfg.n = 64;
    cfg.stepper.dt = 1e-3;
    cfg.scenario.name = "smooth-random";
    SimState s = make_initial_state(cfg);
    Stepper st = make_stepper(cfg, s);
    int iters_max = 0;
    double ratio_max = 0.0, first_ratio = 0.0;
    for (int k = 0; k < 3; ++k) {
        auto [next, rep] = st.advance(s);
        iters_max = std::max(iters_max, rep.iterations);
        for (double q : rep.contraction_ratios) ratio_max = std::max(ratio_max, q);
        if (k == 0 && !rep.contraction_ratios.empty())
            first_ratio = rep.contraction_ratios.front();
        s = std::move(next);
    }

    RunConfig cfg2 = cfg;
    cfg2.stepper.dt = 5e-4;
    SimState s2 = make_initial_state(cfg2);
    Stepper st2 = make_stepper(cfg2, s2);
    auto [next2, rep2] = st2.advance(s2);
    (void)next2;
    const double first_ratio_half =
        rep2.contraction_ratios.empty() ? 0.0 : rep2.contraction_ratios.front();

    r.passed = iters_max <= 8 && ratio_max < 0.5 && first_ratio_half < first_ratio;
    r.details = "iterations <= " + std::to_string(iters_max) + " (<=8), max ratio = " +
                fmt(ratio_max) + " (<0.5), first ratio " + fmt(first_ratio) + " -> " +
                fmt(first_ratio_half) + " when dt halves (must decrease)";
    return r;
}

// ---- criterion 7: continuous dependence -------------------------------------

double pair_distance(double delta) {
    RunConfig cfg = base_config();
    cfg.n = 64;
    cfg.stepper.dt = 1e-3;
    cfg.scenario.name = "perturbed-pair";
    SimState base = make_initial_state(cfg); // delta = 0 gives the base
    SimState pert = perturb_state(base, delta, cfg.scenario.seed + 100, cfg.scenario.kmax);
    Stepper st_base = make_stepper(cfg, base);
    Stepper st_pert = make_stepper(cfg, pert);
    RelativeEnergyTracker tracker;
    tracker.update(base, pert);
    const int steps = 200; // t = 0.2
    RelativeEnergy dist;
    for (int k = 0; k < steps; ++k) {
        base = st_base.advance(base).first;
        pert = st_pert.advance(pert).first;
        dist = tracker.update(base, pert);
    }
    return dist.total();
}

CriterionResult crit_dependence() {
    CriterionResult r{7, "continuous dependence", false, ""};
    const double delta = 1e-3;
    const double d1 = pair_distance(delta);
    const double d2 = pair_distance(0.5 * delta);
    const double ratio = d1 / d2;
    r.passed = ratio >= 3.4 && ratio <= 4.6;
    r.details = "distance(delta) = " + fmt(d1) + ", distance(delta/2) = " + fmt(d2) +
                ", ratio = " + fmt(ratio) + " (in [3.4, 4.6])";
    return r;
}

// ---- criterion 8: no-vacuum monitor -----------------------------------------

CriterionResult crit_bounds() {
    CriterionResult r{8, "no-vacuum monitor", false, ""};
    RunConfig cfg = base_config();
    cfg.n = 64;
    cfg.stepper.dt = 1e-3;
    cfg.t_end = 0.5;
    cfg.fluid.beta = 2.0;
    cfg.scenario.name = "smooth-random"; // rho0 in [0.8, 1.2]
    SimState s = make_initial_state(cfg);
    Stepper st = make_stepper(cfg, s);
    double lo = 1e300, hi = 0.0;
    StepSink sink = [&](const SimState& state, const PicardReport&, int) {
        auto [a, b] = density_bounds(state.rho);
        lo = std::min(lo, a);
        hi = std::max(hi, b);
    };
    run(st, std::move(s), cfg.t_end, sink);
    r.passed = lo >= 0.4 && hi <= 2.4;
    r.details = "min rho = " + fmt(lo) + " (>=0.4), max rho = " + fmt(hi) +
                " (<=2.4) over t in [0, 0.5] (monitor, not a proof)";
    return r;
}

// ---- criterion 9: decoupling oracles ----------------------------------------

CriterionResult crit_decoupling() {
    CriterionResult r{9, "decoupling oracles", false, ""};

    // (a) alpha = 0, H = 0: coupled stepper against the reference NS code
    RunConfig cfg = base_config();
    cfg.n = 32;
    cfg.stepper.dt = 1e-3;
    cfg.t_end = 0.1;
    cfg.coupling.alpha = 0.0;
    cfg.scenario.name = "smooth-random";
    cfg.scenario.H_amp = 0.0;
    cfg.stepper.picard_tol = 1e-12;
    cfg.stepper.inner_tol = 1e-13;
    cfg.stepper.max_picard = 60;
    SimState s = make_initial_state(cfg);
    RefNsState ref{s.rho, s.u};
    Stepper st = make_stepper(cfg, s);
    s = run(st, std::move(s), cfg.t_end);
    ref = reference_ns_run(std::move(ref), cfg.fluid, cfg.stepper.dt, 100,
                           cfg.stepper.picard_tol, cfg.stepper.max_picard,
                           cfg.stepper.inner_tol, cfg.stepper.max_inner);
    double ns_err = 0.0;
    for (std::size_t i = 0; i < s.u.c1.size(); ++i) {
        ns_err = std::max(ns_err, std::abs(s.u.c1[i] - ref.u.c1[i]));
        ns_err = std::max(ns_err, std::abs(s.u.c2[i] - ref.u.c2[i]));
        ns_err = std::max(ns_err, std::abs(s.rho.v[i] - ref.rho.v[i]));
    }

    // (b) frozen velocity: coupled stepper against the standalone NLS
    RunConfig cfg2 = base_config();
    cfg2.n = 32;
    cfg2.stepper.dt = 1e-3;
    cfg2.t_end = 0.1;
    cfg2.stepper.freeze_velocity = true;
    cfg2.scenario.name = "smooth-random";
    cfg2.scenario.u_amp = 0.0;
    cfg2.scenario.H_amp = 0.0;
    cfg2.scenario.rho_amp = 0.0; // rho constant 1 so v_y is exactly 1
    SimState s2 = make_initial_state(cfg2);
    ComplexField psi_ref = s2.psi;
    Stepper st2 = make_stepper(cfg2, s2);
    s2 = run(st2, std::move(s2), cfg2.t_end);
    psi_ref = reference_nls_run(std::move(psi_ref), ScalarField(Grid::make(cfg2.n), 1.0),
                                st2.coupling(), cfg2.stepper.dt, 100);
    double nls_err = 0.0;
    for (std::size_t i = 0; i < s2.psi.v.size(); ++i)
        nls_err = std::max(nls_err, std::abs(s2.psi.v[i] - psi_ref.v[i]));

    r.passed = ns_err <= 1e-8 && nls_err <= 1e-10;
    r.details = "NS decoupling Linf gap = " + fmt(ns_err) +
                " (<=1e-8), frozen-u NLS gap = " + fmt(nls_err) + " (<=1e-10)";
    return r;
}

// ---- criterion 10: MMS convergence ------------------------------------------

CriterionResult crit_mms() {
    CriterionResult r{10, "MMS convergence", false, ""};
    std::vector<MmsReport> reps = run_mms(base_config(), 3);
    double nls_order = 0, mom_order = 0, coupled_order = 0, floor_max = 0;
    for (const auto& m : reps) {
        if (m.solver == "nls-strang") nls_order = m.observed_order;
        if (m.solver == "momentum-backward-euler") mom_order = m.observed_order;
        if (m.solver == "coupled-step") coupled_order = m.observed_order;
        floor_max = std::max(floor_max, m.spatial_floor);
    }
    r.passed = nls_order >= 1.9 && mom_order >= 0.9 && coupled_order >= 0.9 &&
               floor_max <= 1e-10;
    r.details = "NLS order = " + fmt(nls_order) + " (>=1.9), momentum order = " +
                fmt(mom_order) + " (>=0.9), coupled order = " + fmt(coupled_order) +
                " (>=0.9), max spatial floor = " + fmt(floor_max) + " (<=1e-10)";
    return r;
}

} // namespace

std::vector<std::string> verify_suites() {
    return {"equilibrium", "energy",      "conservation", "solenoidality",
            "lagrangian",  "contraction", "dependence",   "bounds",
            "decoupling",  "mms",         "all"};
}

std::vector<CriterionResult> run_verify_suite(const std::string& suite) {
    std::vector<CriterionResult> out;
    auto want = [&](const char* name) { return suite == name || suite == "all"; };
    if (want("equilibrium")) out.push_back(crit_equilibrium());
    if (want("energy")) out.push_back(crit_energy());
    if (want("conservation")) out.push_back(crit_conservation());
    if (want("solenoidality")) out.push_back(crit_solenoidality());
    if (want("lagrangian")) out.push_back(crit_lagrangian());
    if (want("contraction")) out.push_back(crit_contraction());
    if (want("dependence")) out.push_back(crit_dependence());
    if (want("bounds")) out.push_back(crit_bounds());
    if (want("decoupling")) out.push_back(crit_decoupling());
    if (want("mms")) out.push_back(crit_mms());
    if (out.empty()) {
        std::string msg = "unknown suite '" + suite + "'; available:";
        for (const auto& s : verify_suites()) msg += " " + s;
        throw std::invalid_argument(msg);
    }
    return out;
}

std::string verify_results_json(const std::vector<CriterionResult>& results) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : results)
        j.push_back({{"criterion", r.id},
                     {"name", r.name},
                     {"passed", r.passed},
                     {"details", r.details}});
    bool all = true;
    for (const auto& r : results) all = all && r.passed;
    return nlohmann::json{{"results", j}, {"all_passed", all}}.dump(2);
}

} // namespace swlw

#include "swlw/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "swlw/errors.hpp"

namespace swlw {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

struct Parser {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    double num(const std::string& key, const std::string& val, double fallback) {
        try {
            std::size_t pos = 0;
            const double x = std::stod(val, &pos);
            if (pos != val.size()) throw std::invalid_argument("");
            if (!std::isfinite(x)) throw std::invalid_argument("");
            return x;
        } catch (...) {
            errors.push_back(key + ": not a number ('" + val + "')");
            return fallback;
        }
    }

    long integer(const std::string& key, const std::string& val, long fallback) {
        try {
            std::size_t pos = 0;
            const long x = std::stol(val, &pos);
            if (pos != val.size()) throw std::invalid_argument("");
            return x;
        } catch (...) {
            errors.push_back(key + ": not an integer ('" + val + "')");
            return fallback;
        }
    }

    bool boolean(const std::string& key, const std::string& val, bool fallback) {
        if (val == "true" || val == "1") return true;
        if (val == "false" || val == "0") return false;
        errors.push_back(key + ": not a boolean ('" + val + "')");
        return fallback;
    }
};

const std::set<std::string> known_scenarios = {"equilibrium", "smooth-random", "shear",
                                               "perturbed-pair"};

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    Parser p;

    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                p.errors.push_back("line " + std::to_string(lineno) + ": malformed section");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section != "grid" && section != "time" && section != "fluid" &&
                section != "magnetic" && section != "coupling" && section != "scenario" &&
                section != "stepper" && section != "output")
                p.errors.push_back("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            p.errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (section == "grid") {
            if (key == "n") cfg.n = int(p.integer(qual, val, cfg.n));
            else p.errors.push_back("unknown key " + qual);
        } else if (section == "time") {
            if (key == "dt") cfg.stepper.dt = p.num(qual, val, cfg.stepper.dt);
            else if (key == "t_end") cfg.t_end = p.num(qual, val, cfg.t_end);
            else p.errors.push_back("unknown key " + qual);
        } else if (section == "fluid") {
            if (key == "a") cfg.fluid.a = p.num(qual, val, cfg.fluid.a);
            else if (key == "gamma") cfg.fluid.gamma = p.num(qual, val, cfg.fluid.gamma);
            else if (key == "mu") cfg.fluid.mu = p.num(qual, val, cfg.fluid.mu);
            else if (key == "b") cfg.fluid.b = p.num(qual, val, cfg.fluid.b);
            else if (key == "beta") cfg.fluid.beta = p.num(qual, val, cfg.fluid.beta);
            else p.errors.push_back("unknown key " + qual);
        } else if (section == "magnetic") {
            if (key == "nu") cfg.magnetic.nu = p.num(qual, val, cfg.magnetic.nu);
            else p.errors.push_back("unknown key " + qual);
        } else if (section == "coupling") {
            if (key == "alpha") cfg.coupling.alpha = p.num(qual, val, cfg.coupling.alpha);
            else if (key == "v_lo") cfg.coupling.v_lo = p.num(qual, val, cfg.coupling.v_lo);
            else if (key == "v_hi") cfg.coupling.v_hi = p.num(qual, val, cfg.coupling.v_hi);
            else if (key == "g_amp") cfg.coupling.g_amp = p.num(qual, val, cfg.coupling.g_amp);
            else if (key == "s_max") cfg.coupling.s_max = p.num(qual, val, cfg.coupling.s_max);
            else if (key == "h_amp") cfg.coupling.h_amp = p.num(qual, val, cfg.coupling.h_amp);
            else p.errors.push_back("unknown key " + qual);
        } else if (section == "scenario") {
            auto& sc = cfg.scenario;
            if (key == "name") sc.name = val;
            else if (key == "seed") sc.seed = (unsigned long)p.integer(qual, val, (long)sc.seed);
            else if (key == "rho0") sc.rho0 = p.num(qual, val, sc.rho0);
            else if (key == "psi_amp") sc.psi_amp = p.num(qual, val, sc.psi_amp);
            else if (key == "psi_k1") sc.psi_k1 = int(p.integer(qual, val, sc.psi_k1));
            else if (key == "psi_k2") sc.psi_k2 = int(p.integer(qual, val, sc.psi_k2));
            else if (key == "rho_amp") sc.rho_amp = p.num(qual, val, sc.rho_amp);
            else if (key == "u_amp") sc.u_amp = p.num(qual, val, sc.u_amp);
            else if (key == "H_amp") sc.H_amp = p.num(qual, val, sc.H_amp);
            else if (key == "kmax") sc.kmax = int(p.integer(qual, val, sc.kmax));
            else if (key == "shear_ux") sc.shear_ux = p.num(qual, val, sc.shear_ux);
            else if (key == "shear_uy") sc.shear_uy = p.num(qual, val, sc.shear_uy);
            else if (key == "shear_rho") sc.shear_rho = p.num(qual, val, sc.shear_rho);
            else if (key == "perturb_delta") sc.perturb_delta = p.num(qual, val, sc.perturb_delta);
            else p.errors.push_back("unknown key " + qual);
        } else if (section == "stepper") {
            auto& st = cfg.stepper;
            if (key == "picard_tol") st.picard_tol = p.num(qual, val, st.picard_tol);
            else if (key == "max_picard") st.max_picard = int(p.integer(qual, val, st.max_picard));
            else if (key == "cfl_max") st.cfl_max = p.num(qual, val, st.cfl_max);
            else if (key == "inner_tol") st.inner_tol = p.num(qual, val, st.inner_tol);
            else if (key == "max_inner") st.max_inner = int(p.integer(qual, val, st.max_inner));
            else if (key == "freeze_velocity")
                st.freeze_velocity = p.boolean(qual, val, st.freeze_velocity);
            else p.errors.push_back("unknown key " + qual);
        } else if (section == "output") {
            if (key == "dir") cfg.output.dir = val;
            else if (key == "diagnostic_interval")
                cfg.output.diagnostic_interval =
                    int(p.integer(qual, val, cfg.output.diagnostic_interval));
            else if (key == "snapshot_final")
                cfg.output.snapshot_final = p.boolean(qual, val, cfg.output.snapshot_final);
            else p.errors.push_back("unknown key " + qual);
        } else {
            p.errors.push_back("key outside a section: " + key);
        }
    }

    // invariant checks, each named with the offending key
    if (cfg.n < 8 || (cfg.n & (cfg.n - 1)) != 0)
        p.errors.push_back("grid.n: must be a power of two >= 8");
    if (!(cfg.stepper.dt > 0.0)) p.errors.push_back("time.dt: must be > 0");
    if (!(cfg.t_end >= 0.0)) p.errors.push_back("time.t_end: must be >= 0");
    if (!(cfg.fluid.a > 0.0)) p.errors.push_back("fluid.a: must be > 0");
    if (!(cfg.fluid.gamma > 1.0)) p.errors.push_back("fluid.gamma: must be > 1");
    if (!(cfg.fluid.mu > 0.0)) p.errors.push_back("fluid.mu: must be > 0");
    if (!(cfg.fluid.b > 0.0)) p.errors.push_back("fluid.b: must be > 0");
    if (!(cfg.fluid.beta > 0.0)) p.errors.push_back("fluid.beta: must be > 0");
    else if (!(cfg.fluid.beta > 4.0 / 3.0))
        p.warnings.push_back("fluid.beta <= 4/3: no-vacuum guarantee void");
    if (!(cfg.magnetic.nu > 0.0)) p.errors.push_back("magnetic.nu: must be > 0");
    if (!(cfg.coupling.alpha >= 0.0)) p.errors.push_back("coupling.alpha: must be >= 0");
    if (!(cfg.coupling.v_lo > 0.0 && cfg.coupling.v_lo < cfg.coupling.v_hi))
        p.errors.push_back("coupling.v_lo/v_hi: need 0 < v_lo < v_hi");
    if (!(cfg.coupling.g_amp > 0.0)) p.errors.push_back("coupling.g_amp: must be > 0");
    if (!(cfg.coupling.s_max > 0.0)) p.errors.push_back("coupling.s_max: must be > 0");
    if (!(cfg.coupling.h_amp > 0.0)) p.errors.push_back("coupling.h_amp: must be > 0");
    if (!known_scenarios.count(cfg.scenario.name))
        p.errors.push_back("scenario.name: unknown scenario '" + cfg.scenario.name + "'");
    if (!(cfg.scenario.rho0 > 0.0)) p.errors.push_back("scenario.rho0: must be > 0");
    if (cfg.scenario.kmax < 1) p.errors.push_back("scenario.kmax: must be >= 1");
    if (!(cfg.stepper.picard_tol > 0.0)) p.errors.push_back("stepper.picard_tol: must be > 0");
    if (cfg.stepper.max_picard < 1) p.errors.push_back("stepper.max_picard: must be >= 1");
    if (!(cfg.stepper.inner_tol > 0.0)) p.errors.push_back("stepper.inner_tol: must be > 0");
    if (cfg.stepper.max_inner < 1) p.errors.push_back("stepper.max_inner: must be >= 1");
    if (cfg.output.diagnostic_interval < 1)
        p.errors.push_back("output.diagnostic_interval: must be >= 1");

    if (!p.errors.empty()) throw ConfigError(p.errors);
    cfg.warnings = p.warnings;
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError({"cannot open config file: " + path});
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_text(const RunConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "[grid]\nn = " << cfg.n << "\n\n";
    os << "[time]\ndt = " << cfg.stepper.dt << "\nt_end = " << cfg.t_end << "\n\n";
    os << "[fluid]\na = " << cfg.fluid.a << "\ngamma = " << cfg.fluid.gamma
       << "\nmu = " << cfg.fluid.mu << "\nb = " << cfg.fluid.b
       << "\nbeta = " << cfg.fluid.beta << "\n\n";
    os << "[magnetic]\nnu = " << cfg.magnetic.nu << "\n\n";
    os << "[coupling]\nalpha = " << cfg.coupling.alpha << "\nv_lo = " << cfg.coupling.v_lo
       << "\nv_hi = " << cfg.coupling.v_hi << "\ng_amp = " << cfg.coupling.g_amp
       << "\ns_max = " << cfg.coupling.s_max << "\nh_amp = " << cfg.coupling.h_amp << "\n\n";
    const auto& sc = cfg.scenario;
    os << "[scenario]\nname = " << sc.name << "\nseed = " << sc.seed
       << "\nrho0 = " << sc.rho0 << "\npsi_amp = " << sc.psi_amp
       << "\npsi_k1 = " << sc.psi_k1 << "\npsi_k2 = " << sc.psi_k2
       << "\nrho_amp = " << sc.rho_amp << "\nu_amp = " << sc.u_amp
       << "\nH_amp = " << sc.H_amp << "\nkmax = " << sc.kmax
       << "\nshear_ux = " << sc.shear_ux << "\nshear_uy = " << sc.shear_uy
       << "\nshear_rho = " << sc.shear_rho << "\nperturb_delta = " << sc.perturb_delta
       << "\n\n";
    const auto& st = cfg.stepper;
    os << "[stepper]\npicard_tol = " << st.picard_tol << "\nmax_picard = " << st.max_picard
       << "\ncfl_max = " << st.cfl_max << "\ninner_tol = " << st.inner_tol
       << "\nmax_inner = " << st.max_inner
       << "\nfreeze_velocity = " << (st.freeze_velocity ? "true" : "false") << "\n\n";
    os << "[output]\ndir = " << cfg.output.dir
       << "\ndiagnostic_interval = " << cfg.output.diagnostic_interval
       << "\nsnapshot_final = " << (cfg.output.snapshot_final ? "true" : "false") << "\n";
    return os.str();
}

} // namespace swlw

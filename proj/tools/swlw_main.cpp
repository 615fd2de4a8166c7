// swlw: 2-D periodic short wave-long wave interaction simulator.
// Subcommands: simulate (run a configured scenario and write diagnostics),
// verify (run the acceptance suites, JSON report), mms (convergence studies).

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "swlw/errors.hpp"
#include "swlw/mms.hpp"
#include "swlw/runner.hpp"
#include "swlw/verify.hpp"

int main(int argc, char** argv) {
    CLI::App app{"short wave-long wave interaction simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir, suite;
    int levels = 3;

    CLI::App* sim = app.add_subcommand("simulate", "run a scenario from a config file");
    sim->add_option("--config", config_path, "path to the INI config")->required();
    sim->add_option("--out", out_dir, "output directory (overrides [output] dir)");

    CLI::App* ver = app.add_subcommand("verify", "run an acceptance suite");
    ver->add_option("--suite", suite, "suite name (see --help-suites) or 'all'")->required();

    CLI::App* mms = app.add_subcommand("mms", "manufactured-solution convergence study");
    mms->add_option("--config", config_path, "path to the INI config (optional)");
    mms->add_option("--levels", levels, "number of dt refinements (default 3)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return swlw::cli_simulate(config_path, out_dir);

        if (ver->parsed()) {
            std::vector<swlw::CriterionResult> results;
            try {
                results = swlw::run_verify_suite(suite);
            } catch (const std::invalid_argument& e) {
                std::cerr << e.what() << '\n';
                return 2;
            }
            std::cout << swlw::verify_results_json(results) << '\n';
            for (const auto& r : results)
                if (!r.passed) return 1;
            return 0;
        }

        if (mms->parsed()) {
            swlw::RunConfig cfg;
            try {
                cfg = config_path.empty() ? swlw::parse_config("")
                                          : swlw::parse_config_file(config_path);
            } catch (const swlw::ConfigError& e) {
                std::cerr << e.what() << '\n';
                return 2;
            }
            std::cout << swlw::mms_to_text(swlw::run_mms(cfg, levels));
            return 0;
        }
    } catch (const swlw::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 3;
    } catch (const swlw::PicardDivergence& e) {
        std::cerr << "divergence: " << e.what() << '\n';
        return 4;
    }
    return 0;
}

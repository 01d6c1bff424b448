#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qphase/config.hpp"
#include "qphase/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"phase-space wave mechanics engine"};
    app.set_version_flag("--version", std::string("qphase ") + qphase::k_version);
    app.require_subcommand(1);

    std::string config_path, out_dir;
    bool check = false;

    CLI::App* run = app.add_subcommand("run", "execute a scenario described by a config file");
    run->add_option("config", config_path, "config file (section.key = value lines)")
        ->required();
    run->add_flag("--check", check, "apply the scenario's pass/fail thresholds (exit 4 on failure)");
    run->add_option("--out", out_dir, "output directory (overrides output.directory)");

    CLI::App* validate = app.add_subcommand("validate", "parse a config file and report every problem");
    validate->add_option("config", config_path, "config file to validate")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        // CLI11 exits 0 for --help/--version; anything else is a usage error.
        return code == 0 ? 0 : qphase::k_exit_config;
    }

    qphase::ParseResult parsed = qphase::parse_config_file(config_path);
    if (!parsed.config) {
        std::cerr << qphase::render_errors(parsed.errors);
        return qphase::k_exit_config;
    }

    if (validate->parsed()) {
        std::cout << qphase::echo_config(*parsed.config);
        return qphase::k_exit_ok;
    }
    return qphase::run_scenario(*parsed.config, check, out_dir);
}

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qphase/grid.hpp"
#include "qphase/stationary.hpp"

namespace qphase {

enum class Scenario {
    free_wave,
    free_packet,
    harmonic_evolve,
    harmonic_stationary,
    quantize,
    two_slit,
    uncertainty_suite,
    relativistic_table,
    oracle_compare,
};

const char* scenario_name(Scenario s);

/// One run, fully described. Everything except run.scenario has a default;
/// the defaults match the documented minimal free_wave run (hbar = m = 1,
/// 256 x 256 grid on [-10, 10] x [-5, 5], truncating boundary).
struct RunConfig {
    Scenario scenario = Scenario::free_wave;

    // grid block
    double q_min = -10.0, q_max = 10.0;
    double p_min = -5.0, p_max = 5.0;
    int nq = 256, np = 256;
    BoundaryRule boundary = BoundaryRule::truncate;

    // physics block
    double hbar = 1.0, m = 1.0, omega = 1.0, c = 1000.0;
    double p0 = 1.0, q0 = 0.0;
    double sigma_q = 1.0, sigma_p = 0.5;
    double sigma_p_cells = 3.0;  // plane-wave momentum profile width, in cells
    double beta = 0.0;           // HO envelope parameter; 0 picks hbar * omega

    // slit block
    double slit_separation = 1.5;
    double slit_sigma = 0.6;
    double slit_sigma_p = 0.0;  // 0 picks 2 hbar / slit_sigma
    double slit_screen_distance = 1.5;

    // quantize block
    StandingBranch branch = StandingBranch::cosine;
    int n_max = 4;

    // time block
    double dt = 0.01;
    double t_final = 1.0;
    int snapshot_every = 0;  // extra field snapshots every k steps; 0 = ends only

    // output block
    std::string out_dir = ".";
    int precision = 6;  // display digits in summary.txt; CSVs are exact
};

struct ConfigError {
    int line = 0;  // 0 = no specific line (e.g. missing key)
    std::string message;
};

struct ParseResult {
    std::optional<RunConfig> config;  // set iff errors is empty
    std::vector<ConfigError> errors;
};

/// Parses `section.key = value` lines ('#' starts a comment). Collects every
/// error (unknown key, bad value, out-of-range, duplicate, missing scenario)
/// rather than stopping at the first.
ParseResult parse_config(const std::string& text);

/// Reads the file and parses it; a missing file is reported as an error.
ParseResult parse_config_file(const std::string& path);

/// One line per error, "line N: message" (or just the message when N = 0).
std::string render_errors(const std::vector<ConfigError>& errors);

/// The config as canonical `section.key = value` lines (used by summary.txt).
std::string echo_config(const RunConfig& cfg);

}  // namespace qphase

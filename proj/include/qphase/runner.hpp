#pragma once

#include <string>

#include "qphase/config.hpp"

namespace qphase {

inline constexpr const char* k_version = "1.0.0";

inline constexpr int k_exit_ok = 0;
inline constexpr int k_exit_config = 2;
inline constexpr int k_exit_runtime = 3;
inline constexpr int k_exit_check = 4;

/// Executes the scenario and writes fields_t<k>.csv, marginal_q_t<k>.csv,
/// metrics.csv and summary.txt into the output directory (out_dir overrides
/// cfg.out_dir when nonempty). Scenario check values are always computed and
/// written to the summary; with check = true a failed check turns into exit
/// code 4. Module preconditions rejected at build time (std::invalid_argument)
/// map to exit 2 — the config asked for something invalid — while runtime
/// aborts such as the boundary-leak monitor (std::runtime_error) map to 3.
int run_scenario(const RunConfig& cfg, bool check = false,
                 const std::string& out_dir = {});

}  // namespace qphase

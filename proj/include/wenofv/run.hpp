#pragma once

#include <filesystem>

#include "wenofv/config.hpp"

namespace wenofv {

// Stable exit-code contract for scripting.
inline constexpr int exit_success = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_numerical_failure = 3;

// Artifact root: $WENOFV_OUTPUT_ROOT when set, "./out" otherwise.
std::filesystem::path output_root();
// Where this config's artifacts land: output.dir when set, otherwise
// output_root()/<problem name>.
std::filesystem::path output_directory(const run_config& c);

// Each subcommand executes the parsed config, leaves its artifacts plus a
// manifest.json in output_directory(c), and returns an exit code. Failures
// after parsing still write the manifest (status and diagnostics recorded).
int run_single(const run_config& c);     // one simulation to t_end
int run_study(const run_config& c);      // advection convergence table
int run_reference(const run_config& c);  // compute + cache a fine-grid reference

}  // namespace wenofv

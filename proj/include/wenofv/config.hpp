#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wenofv/problems.hpp"
#include "wenofv/solver.hpp"

namespace wenofv {

enum class config_error_kind {
  unknown_key,
  unknown_value,
  type_mismatch,
  missing_required,
  io_error,
};

// Thrown for any malformed or unreadable configuration. what() carries a
// formatted "origin:line: message" diagnostic; kind/key/line expose the same
// information for programmatic handling. line is 1-based and 0 when the
// error is not tied to a file line (overrides, missing keys, I/O).
class config_error : public std::runtime_error {
 public:
  config_error(config_error_kind kind, std::string key, int line, const std::string& what_arg)
      : std::runtime_error(what_arg), kind(kind), key(std::move(key)), line(line) {}

  config_error_kind kind;
  std::string key;
  int line;
};

// Fully resolved run configuration. Optional fields stay empty when neither
// the file nor an override set them; the resolve_* helpers below fill those
// from the problem catalog. Everything else carries its documented default.
struct run_config {
  std::string problem;  // required; a catalog problem name

  std::optional<int> nx;       // problem.nx
  std::optional<int> ny;       // problem.ny (2D problems only; ignored for 1D)
  std::optional<double> t_end; // problem.t_end
  std::optional<double> gamma; // problem.gamma
  std::optional<rt_speed_mode> rt_sound_speed;  // problem.rt_sound_speed

  recon_order scheme = recon_order::weno6;      // scheme.kind
  weight_scheme weights{};                      // scheme.weights/p/q/epsilon
  recon_vars vars = recon_vars::characteristic; // variables
  flux_kind flux = flux_kind::hllc;             // flux

  dt_law law = dt_law::cfl;  // time.dt_law
  double cfl = 0.5;          // time.cfl
  double dt_coef = 0.2;      // time.dt_coef (the c in dt = c dx laws)

  exec_mode exec = exec_mode::openmp;  // run.exec

  std::optional<std::string> output_dir;  // output.dir
  std::vector<std::string> formats;       // output.formats; empty = pick by dimension
  long long every_steps = 0;              // output.every_steps; 0 = final only
  double every_time = 0.0;                // output.every_time; 0 = final only

  std::vector<int> study_resolutions{40, 80, 160};  // study.resolutions
  std::vector<weight_kind> study_weights{weight_kind::linear, weight_kind::js,
                                         weight_kind::z};  // study.weights

  std::optional<int> reference_n;            // reference.n
  std::optional<std::string> reference_dir;  // reference.dir

  bool operator==(const run_config&) const = default;
};

// Parses line-oriented "section.key = value" text ('#' starts a comment,
// blank lines ignored, later assignments win), then applies "key=value"
// override strings in order. Throws config_error; unknown keys and values
// are rejected rather than ignored. origin names the source in diagnostics.
run_config parse_config_text(std::string_view text, const std::vector<std::string>& overrides = {},
                             std::string_view origin = "<config>");

// Same, reading the file at path.
run_config parse_config(const std::string& path, const std::vector<std::string>& overrides = {});

// Canonical serialization: one "key = value" line per setting in a fixed
// order, optional keys only when set, floats in shortest round-trip form.
// parse_config_text(echo_config(c)) == c for every valid c.
std::string echo_config(const run_config& c);

// Catalog spec for c.problem with the problem.* overrides applied.
problem_spec resolve_problem(const run_config& c);
// Reconstruction selection (order, projection variables, weights).
recon_config resolve_recon(const run_config& c);
// Step-size controls; t_end falls back to the problem default.
time_controls resolve_time(const run_config& c, const problem_spec& ps);

}  // namespace wenofv

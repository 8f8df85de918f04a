#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wenofv/euler.hpp"
#include "wenofv/field.hpp"
#include "wenofv/problems.hpp"

namespace wenofv {

// 1D profile with header "x, rho, U, p", one row per cell. All floats are
// printed with 17 significant digits so a re-read reproduces the stored
// doubles exactly. 2D fields get the column set "x, y, rho, u, v, p".
void write_profile_csv(const std::filesystem::path& path, const conserved_field& f,
                       const gas_model& gas);

// Legacy ASCII VTK structured-points snapshot: density and pressure as
// cell-data scalars, velocity as a 3-component cell-data vector (w = 0).
void write_vtk(const std::filesystem::path& path, const conserved_field& f, const gas_model& gas,
               std::string_view title);

// Convergence table in the published layout: one row per mesh with an
// L1/order pair of columns per scheme ("mesh, linear_L1, linear_order, ...").
// The mesh column counts cells per unit length of the x extent; the order
// cell of the coarsest row is empty. All reports must share one resolutions
// list (std::invalid_argument otherwise).
void write_study_csv(const std::filesystem::path& path, const grid& g,
                     const std::vector<error_report>& reports);

// Writes stem.csv / stem.vtk under dir for each requested format; an empty
// format list defaults to csv for 1D fields and vtk for 2D. Creates dir if
// needed and returns the files written.
std::vector<std::filesystem::path> emit_outputs(const std::filesystem::path& dir,
                                                std::string_view stem, const conserved_field& f,
                                                const gas_model& gas,
                                                const std::vector<std::string>& formats);

// Everything a finished (or crashed) invocation leaves behind for scripting.
struct run_manifest {
  std::string command;  // run | study | reference
  std::string status;   // success | numerical_failure
  std::string version;
  std::string config_echo;
  double wall_seconds = 0.0;
  long steps = 0;
  double t_final = 0.0;
  std::array<double, 4> initial_totals{};
  std::array<double, 4> final_totals{};
  std::string failure;  // empty on success
  std::vector<std::string> artifacts;
};

// Pretty-printed JSON, parent directories created on demand. Written for
// every run including failed ones; conservation drift is stored alongside
// the raw tallies.
void write_manifest(const std::filesystem::path& path, const run_manifest& m);

}  // namespace wenofv

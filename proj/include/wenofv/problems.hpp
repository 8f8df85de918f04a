#pragma once

// Benchmark problem catalog: initial conditions (cell-averaged), boundary
// setups, exact and fine-grid reference solutions, error norms, and the
// convergence-order tabulator.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wenofv/solver.hpp"

namespace wenofv {

enum class problem_id {
  advect_sine,
  blast_wave,
  shu_osher,
  titarev_toro,
  double_mach,
  riemann2d_shocks,
  riemann2d_contacts,
  rayleigh_taylor,
};

// Evaluation point of the sound speed in the Rayleigh-Taylor seed velocity
// -0.025 c cos(8 pi x): "local" uses c(x,y) of the layer's own state at each
// quadrature point; "uniform" freezes c at the light-fluid interface value.
enum class rt_speed_mode { local, uniform };

struct problem_spec {
  problem_id id = problem_id::advect_sine;
  gas_model gas{};
  grid g{};
  boundary_spec bc{};
  source_spec source{};
  time_controls time{};
  rt_speed_mode rt_c = rt_speed_mode::local;
};

// Catalog defaults (domain, IC parameters, BCs, gamma, t_end, resolution).
problem_spec make_problem(problem_id id);
// Same with the resolution overridden (ny ignored for 1D problems).
problem_spec make_problem(problem_id id, int nx, int ny);

std::string_view problem_name(problem_id id);
std::optional<problem_id> problem_from_name(std::string_view name);

// Cell averages of the initial condition on the given grid (which may be a
// refinement of spec.g but must span the same domain). Smooth profiles are
// averaged with 5-point Gauss quadrature per cell; piecewise-constant data
// are split by exact sub-cell volume fractions.
conserved_field init_problem(const problem_spec& spec, const grid& g);
conserved_field init_problem(const problem_spec& spec);

primitive_state exact_advect_sine(double x, double t);
// Exact cell averages of the advected density profile.
std::vector<double> exact_advect_density_averages(const grid& g, double t);

struct norm_pair {
  double l1 = 0.0;
  double linf = 0.0;
};

// Density-error norms against per-cell reference averages (row-major).
norm_pair error_norms(const conserved_field& f, const std::vector<double>& reference_density);
// Same against a finer snapshot whose resolution is an integer multiple per
// axis; the snapshot is block-averaged onto the coarse grid first.
norm_pair error_norms(const conserved_field& f, const conserved_field& reference);

// orders[k] = log2(errors[k] / errors[k+1]).
std::vector<double> convergence_orders(const std::vector<double>& errors);

struct error_report {
  recon_config scheme;
  std::vector<int> resolutions;
  std::vector<double> l1;
  std::vector<double> linf;
  std::vector<double> orders;
};

// Runs each (scheme, N) advection case to t_end under the given step law and
// tabulates L1/Linf errors and orders. Only the smooth advection problem has
// the exact solution this needs.
std::vector<error_report> convergence_study(const problem_spec& spec,
                                            const std::vector<recon_config>& schemes,
                                            const std::vector<int>& resolutions, dt_law law,
                                            flux_kind fk = flux_kind::hllc,
                                            exec_mode em = exec_mode::openmp);

// Binary field snapshot ("WFVSNAP1": header with problem name, scheme tag,
// grid geometry, and time, then row-major interior conserved data as
// little-endian 64-bit floats).
void save_snapshot(const std::filesystem::path& path, const conserved_field& f,
                   std::string_view problem, std::string_view scheme_tag);

struct snapshot {
  conserved_field field;
  std::string problem;
  std::string scheme_tag;
};

// Empty optional when the file is missing or malformed.
std::optional<snapshot> load_snapshot(const std::filesystem::path& path);

// Fine-grid reference: the same problem at resolution n_ref (per x axis; 2D
// y scales proportionally) advanced with characteristic-wise WENO6-Z and
// HLLC at CFL 0.4. Results are cached in cache_dir keyed by problem,
// resolution, and scheme tag; a valid cached snapshot short-circuits the run.
conserved_field reference_solution(const problem_spec& spec, int n_ref,
                                   const std::filesystem::path& cache_dir);
// Cache file that reference_solution creates or reuses.
std::filesystem::path reference_snapshot_path(const problem_spec& spec, int n_ref,
                                              const std::filesystem::path& cache_dir);

}  // namespace wenofv

#pragma once

// Finite-volume semidiscretization and time integration: ghost filling,
// OpenMP-parallel flux assembly with serial reference twins, SSP RK3, and
// the top-level advance loop.

#include <functional>
#include <vector>

#include "wenofv/field.hpp"
#include "wenofv/weno.hpp"

namespace wenofv {

enum class recon_order { weno5, weno6 };
enum class recon_vars { characteristic, component };
enum class flux_kind { hllc, llf };
enum class exec_mode { serial, openmp };

struct recon_config {
  recon_order order = recon_order::weno6;
  recon_vars vars = recon_vars::characteristic;
  weight_scheme weights{};

  bool operator==(const recon_config&) const = default;
};

// Populates all ghost layers from the interior at boundary time t. 2D corner
// ghosts are defined by applying the x passes first, then the y passes over
// the full padded x extent.
void fill_ghosts(conserved_field& f, const boundary_spec& bc, double t);

// d/dt of the interior cell averages, row-major (i fastest), resized by the
// callee. Ghosts must be current. The plain variants stage per-interface
// fluxes in shared arrays and parallelize with OpenMP; the _reference twins
// are direct textbook loops kept for testing and must agree bitwise.
void rhs_1d(const conserved_field& f, const recon_config& rc, flux_kind fk, const gas_model& gas,
            std::vector<conserved_state>& rate);
void rhs_1d_reference(const conserved_field& f, const recon_config& rc, flux_kind fk,
                      const gas_model& gas, std::vector<conserved_state>& rate);
void rhs_2d(const conserved_field& f, const recon_config& rc, flux_kind fk, const gas_model& gas,
            const source_spec& src, std::vector<conserved_state>& rate);
void rhs_2d_reference(const conserved_field& f, const recon_config& rc, flux_kind fk,
                      const gas_model& gas, const source_spec& src,
                      std::vector<conserved_state>& rate);

// Stage callback: refresh ghosts of the passed field at the given stage time
// and evaluate the rate. rk3_step owns the stage combination arithmetic.
using stage_rhs =
    std::function<void(conserved_field&, double t_stage, std::vector<conserved_state>& rate)>;

// Third-order strong-stability-preserving Runge-Kutta; advances f.time by dt.
void rk3_step(conserved_field& f, double dt, const stage_rhs& rhs);

// Step size from the configured law, clipped so time never passes t_end.
double compute_dt(const conserved_field& f, const time_controls& tc, const gas_model& gas);

struct observer {
  long every_steps = 0;      // fire every k-th step (0 disables)
  double every_time = 0.0;   // fire when time crosses multiples (0 disables)
  std::function<void(const conserved_field& f, long step)> fn;
};

struct advance_stats {
  long steps = 0;
  double wall_seconds = 0.0;
  std::array<double, 4> initial_totals{};
  std::array<double, 4> final_totals{};
};

// Integrates f to tc.t_end. Throws non_physical_state annotated with step,
// time, and cell context if the state leaves the physical region.
advance_stats advance(conserved_field& f, const time_controls& tc, const boundary_spec& bc,
                      const recon_config& rc, flux_kind fk, const gas_model& gas,
                      const source_spec& src, exec_mode em,
                      const std::vector<observer>& observers = {});

// Interior sums of (rho, mx, my, E) times cell volume, in fixed cell order.
std::array<double, 4> conserved_totals(const conserved_field& f);

// Copy with x and y swapped (grid extents, cell indices, velocity
// components); ghosts included. The y-direction flux pass runs the
// x-direction machinery on the transposed field, which makes the scheme
// exactly symmetric under coordinate exchange.
conserved_field transposed(const conserved_field& f);

}  // namespace wenofv

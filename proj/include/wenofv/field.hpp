#pragma once

// Structured grid, ghost-padded conserved field storage, and the boundary,
// source, and time-step descriptors shared by the solver and the problem
// catalog.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "wenofv/euler.hpp"

namespace wenofv {

struct grid {
  int dim = 1;
  double x0 = 0.0, x1 = 1.0;
  double y0 = 0.0, y1 = 1.0;
  int nx = 1;
  int ny = 1;
  int ghost = 3;

  double dx() const { return (x1 - x0) / nx; }
  double dy() const { return (y1 - y0) / ny; }
  double x_left(int i) const { return x0 + i * dx(); }
  double y_left(int j) const { return y0 + j * dy(); }
  double x_center(int i) const { return x0 + (i + 0.5) * dx(); }
  double y_center(int j) const { return y0 + (j + 0.5) * dy(); }
  double cell_volume() const { return dim == 2 ? dx() * dy() : dx(); }

  bool operator==(const grid&) const = default;
};

inline grid make_grid_1d(double x0, double x1, int nx, int ghost = 3) {
  grid g;
  g.dim = 1;
  g.x0 = x0;
  g.x1 = x1;
  g.nx = nx;
  g.ny = 1;
  g.ghost = ghost;
  return g;
}

inline grid make_grid_2d(double x0, double x1, double y0, double y1, int nx, int ny,
                         int ghost = 3) {
  grid g;
  g.dim = 2;
  g.x0 = x0;
  g.x1 = x1;
  g.y0 = y0;
  g.y1 = y1;
  g.nx = nx;
  g.ny = ny;
  g.ghost = ghost;
  return g;
}

// Conserved cell averages with ghost padding. Interior cells are addressed
// by i in [0, nx), j in [0, ny); ghosts by indices down to -ghost and up to
// n + ghost - 1. 1D fields have a single row (j fixed at 0).
struct conserved_field {
  grid g;
  double time = 0.0;
  std::vector<conserved_state> data;

  conserved_field() = default;
  explicit conserved_field(const grid& gr)
      : g(gr),
        stride_(gr.nx + 2 * gr.ghost),
        row0_(gr.dim == 2 ? gr.ghost : 0),
        rows_(gr.dim == 2 ? gr.ny + 2 * gr.ghost : 1) {
    data.assign(static_cast<std::size_t>(stride_) * rows_, conserved_state{});
  }

  std::size_t index(int i, int j = 0) const {
    return static_cast<std::size_t>(j + row0_) * stride_ + static_cast<std::size_t>(i + g.ghost);
  }
  conserved_state& at(int i, int j = 0) { return data[index(i, j)]; }
  const conserved_state& at(int i, int j = 0) const { return data[index(i, j)]; }

  // Full padded extent, ghosts included (useful for whole-field passes).
  int padded_nx() const { return stride_; }
  int padded_ny() const { return rows_; }

 private:
  int stride_ = 0;
  int row0_ = 0;
  int rows_ = 1;
};

enum class bc_kind {
  periodic,
  reflective,
  outflow,
  fixed_state,
  dmr_bottom,  // reflecting wall for x >= 1/6, inflow of the post-shock state before it
  dmr_top,     // follows the exact position of the moving oblique shock
};

struct bc_side {
  bc_kind kind = bc_kind::periodic;
  primitive_state state{};  // used by fixed_state only

  bool operator==(const bc_side&) const = default;
};

struct boundary_spec {
  bc_side left{};
  bc_side right{};
  bc_side bottom{};
  bc_side top{};
  gas_model gas{};  // converts prescribed primitive states to conserved ghosts

  bool operator==(const boundary_spec&) const = default;
};

enum class source_kind { none, rt_gravity };

struct source_spec {
  source_kind kind = source_kind::none;

  bool operator==(const source_spec&) const = default;
};

enum class dt_law {
  cfl,         // dt = cfl * min(dx/sx, dy/sy)
  c_dx,        // dt = dt_coef * dx
  dx_squared,  // dt = dx^2 (order studies: time error below spatial order)
};

struct time_controls {
  dt_law law = dt_law::cfl;
  double cfl = 0.5;
  double dt_coef = 0.2;
  double t_end = 1.0;

  bool operator==(const time_controls&) const = default;
};

// Fastest signal speed (|u|+c, |v|+c) over interior cells, per axis.
std::array<double, 2> max_wave_speed(const conserved_field& f, const gas_model& gas);

// States tied to the double Mach reflection boundary prescription: the
// incident shock (Mach 10 into quiescent gamma=1.4 gas) and its intersection
// with the top boundary at time t.
inline primitive_state dmr_pre_shock() { return {1.4, 0.0, 0.0, 1.0}; }
inline primitive_state dmr_post_shock() {
  return {8.0, 4.125 * std::sqrt(3.0), -4.125, 116.5};
}
inline double dmr_top_shock_x(double t) {
  return 1.0 / 6.0 + (1.0 + 20.0 * t) / std::sqrt(3.0);
}

}  // namespace wenofv

#include "wenofv/solver.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace wenofv {

namespace {

struct scheme_ctx {
  const recon_config& rc;
  flux_kind fk;
  const gas_model& gas;
};

inline conserved_state swap_uv(const conserved_state& s) {
  return {{s.q[0], s.q[2], s.q[1], s.q[3]}};
}

inline conserved_state gravity_source(const conserved_state& u) {
  // Unit downward acceleration: d(my)/dt += rho, dE/dt += rho*v = my.
  return {{0.0, 0.0, u.rho(), u.my()}};
}

// True when a state has positive, finite density and pressure. High-order end
// values can leave this region next to very strong discontinuities (blast
// pressure ratios of 1e5, Mach-10 fronts) even though every cell average is
// physical.
inline bool physical_state(const conserved_state& u, const gas_model& gas) {
  const double rho = u.rho();
  if (!(rho > 0.0) || !std::isfinite(rho)) return false;
  const double kinetic = 0.5 * (u.mx() * u.mx() + u.my() * u.my()) / rho;
  const double p = (gas.gamma - 1.0) * (u.E() - kinetic);
  return p > 0.0 && std::isfinite(p);
}

// Captures the first exception thrown inside an OpenMP loop body; rethrown
// after the parallel region (exceptions must not unwind across it).
class parallel_guard {
 public:
  template <class Fn>
  void run(const char* where, int i, int j, Fn&& body) {
    if (failed_.load(std::memory_order_relaxed)) return;
    try {
      body();
    } catch (const std::exception& e) {
      record(where, i, j, e.what());
    } catch (...) {
      record(where, i, j, "unknown error");
    }
  }
  void check() const {
    if (failed_.load()) throw non_physical_state(message_);
  }

 private:
  void record(const char* where, int i, int j, const char* what) {
#pragma omp critical(wenofv_parallel_guard)
    if (!failed_.load()) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%s (%d,%d): ", where, i, j);
      message_ = buf;
      message_ += what;
      failed_.store(true);
    }
  }

  std::atomic<bool> failed_{false};
  std::string message_;
};

// Both interface-end values from one six-cell window (interface between
// cells 2 and 3). WENO5 uses the leading five cells for the left state and
// the trailing five for the right.
inline void recon_pair(const double col[6], recon_order order, const weight_scheme& ws,
                       double& left_value, double& right_value) {
  if (order == recon_order::weno6) {
    left_value = recon6_left_value(col, ws);
    right_value = recon6_right_value(col, ws);
  } else {
    left_value = recon5_right_end_value(col, ws);
    right_value = recon5_left_end_value(col + 1, ws);
  }
}

void interface_states(const conserved_state cells[6], axis a, const scheme_ctx& cx,
                      conserved_state& ul, conserved_state& ur) {
  if (cx.rc.vars == recon_vars::characteristic) {
    const char_basis basis = compute_char_basis(cells[2], cells[3], a, cx.gas);
    std::array<double, 4> ch[6];
    for (int m = 0; m < 6; ++m) ch[m] = to_characteristic(basis, cells[m]);
    std::array<double, 4> lv{}, rv{};
    for (int c = 0; c < 4; ++c) {
      const double col[6] = {ch[0][c], ch[1][c], ch[2][c], ch[3][c], ch[4][c], ch[5][c]};
      recon_pair(col, cx.rc.order, cx.rc.weights, lv[c], rv[c]);
    }
    ul = from_characteristic(basis, lv);
    ur = from_characteristic(basis, rv);
  } else {
    for (int c = 0; c < 4; ++c) {
      const double col[6] = {cells[0].q[c], cells[1].q[c], cells[2].q[c],
                             cells[3].q[c], cells[4].q[c], cells[5].q[c]};
      recon_pair(col, cx.rc.order, cx.rc.weights, ul.q[c], ur.q[c]);
    }
  }
  // An end value outside the physical region falls back to the adjacent cell
  // average: the interface degrades to first order instead of feeding the
  // Riemann solver an invalid state. A bad cell average still aborts the run.
  if (!physical_state(ul, cx.gas)) ul = cells[2];
  if (!physical_state(ur, cx.gas)) ur = cells[3];
}

inline conserved_state numerical_flux(const primitive_state& wl, const primitive_state& wr,
                                      axis a, const scheme_ctx& cx) {
  return cx.fk == flux_kind::hllc ? hllc_flux(wl, wr, a, cx.gas) : llf_flux(wl, wr, a, cx.gas);
}

// Flux through the interface between cells i and i+1 of a 1D field.
conserved_state interface_flux_1d(const conserved_field& f, int i, const scheme_ctx& cx) {
  conserved_state cells[6];
  for (int m = 0; m < 6; ++m) cells[m] = f.at(i - 2 + m);
  conserved_state ul, ur;
  interface_states(cells, axis::x, cx, ul, ur);
  return numerical_flux(cons_to_prim(ul, cx.gas), cons_to_prim(ur, cx.gas), axis::x, cx);
}

// Evaluates one side's interface states at the two tangential Gauss points
// from its five line states (rows j-2..j+2 of one interface column).
void tangential_point_states(const conserved_state line[5], const scheme_ctx& cx,
                             conserved_state& s_minus, conserved_state& s_plus) {
  if (cx.rc.vars == recon_vars::characteristic) {
    const char_basis basis = compute_char_basis(line[2], line[2], axis::y, cx.gas);
    std::array<double, 4> ch[5];
    for (int m = 0; m < 5; ++m) ch[m] = to_characteristic(basis, line[m]);
    std::array<double, 4> cm{}, cp{};
    for (int c = 0; c < 4; ++c) {
      const double col[5] = {ch[0][c], ch[1][c], ch[2][c], ch[3][c], ch[4][c]};
      cm[c] = interp5_point_value(col, false, cx.rc.weights);
      cp[c] = interp5_point_value(col, true, cx.rc.weights);
    }
    s_minus = from_characteristic(basis, cm);
    s_plus = from_characteristic(basis, cp);
  } else {
    for (int c = 0; c < 4; ++c) {
      const double col[5] = {line[0].q[c], line[1].q[c], line[2].q[c], line[3].q[c],
                             line[4].q[c]};
      s_minus.q[c] = interp5_point_value(col, false, cx.rc.weights);
      s_plus.q[c] = interp5_point_value(col, true, cx.rc.weights);
    }
  }
  // Same near-vacuum fallback as the normal direction, anchored at this
  // segment's own line-averaged state.
  if (!physical_state(s_minus, cx.gas)) s_minus = line[2];
  if (!physical_state(s_plus, cx.gas)) s_plus = line[2];
}

// Two-point Gauss quadrature of the x-flux over one interface segment.
conserved_state gauss_interface_flux(const conserved_state* left_line,
                                     const conserved_state* right_line, const scheme_ctx& cx) {
  conserved_state lm, lp, rm, rp;
  tangential_point_states(left_line, cx, lm, lp);
  tangential_point_states(right_line, cx, rm, rp);
  const conserved_state fm =
      numerical_flux(cons_to_prim(lm, cx.gas), cons_to_prim(rm, cx.gas), axis::x, cx);
  const conserved_state fp =
      numerical_flux(cons_to_prim(lp, cx.gas), cons_to_prim(rp, cx.gas), axis::x, cx);
  return (fm + fp) * 0.5;
}

// Reference-path flux through the x-interface between cells (i,j) and
// (i+1,j): recomputes the five line states it needs on the spot.
conserved_state x_interface_flux_2d(const conserved_field& f, int i, int j,
                                    const scheme_ctx& cx) {
  conserved_state left_line[5], right_line[5];
  for (int t = 0; t < 5; ++t) {
    conserved_state cells[6];
    for (int m = 0; m < 6; ++m) cells[m] = f.at(i - 2 + m, j - 2 + t);
    interface_states(cells, axis::x, cx, left_line[t], right_line[t]);
  }
  return gauss_interface_flux(left_line, right_line, cx);
}

// Staged x-direction sweep: line states once per (interface, row), then
// quadrature fluxes, then per-cell differences. Writes (assigns) the
// x-contribution of the rate, row-major.
void x_pass(const conserved_field& f, const scheme_ctx& cx, std::vector<conserved_state>& rate) {
  const int nx = f.g.nx;
  const int ny = f.g.ny;
  const int rows = ny + 4;  // line states on rows j = -2 .. ny+1
  const double inv_dx = 1.0 / f.g.dx();
  std::vector<conserved_state> ls(static_cast<std::size_t>(nx + 1) * rows);
  std::vector<conserved_state> rs(ls.size());
  parallel_guard guard;

#pragma omp parallel for collapse(2) schedule(static)
  for (int ix = 0; ix <= nx; ++ix) {
    for (int jr = 0; jr < rows; ++jr) {
      guard.run("line state", ix - 1, jr - 2, [&] {
        conserved_state cells[6];
        for (int m = 0; m < 6; ++m) cells[m] = f.at(ix - 3 + m, jr - 2);
        const std::size_t at = static_cast<std::size_t>(ix) * rows + jr;
        interface_states(cells, axis::x, cx, ls[at], rs[at]);
      });
    }
  }
  guard.check();

  std::vector<conserved_state> flux(static_cast<std::size_t>(nx + 1) * ny);
#pragma omp parallel for collapse(2) schedule(static)
  for (int ix = 0; ix <= nx; ++ix) {
    for (int j = 0; j < ny; ++j) {
      guard.run("interface flux", ix - 1, j, [&] {
        const std::size_t at = static_cast<std::size_t>(ix) * rows + j;
        flux[static_cast<std::size_t>(ix) * ny + j] =
            gauss_interface_flux(&ls[at], &rs[at], cx);
      });
    }
  }
  guard.check();

  rate.resize(static_cast<std::size_t>(nx) * ny);
#pragma omp parallel for collapse(2) schedule(static)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      rate[static_cast<std::size_t>(j) * nx + i] =
          (flux[static_cast<std::size_t>(i) * ny + j] -
           flux[static_cast<std::size_t>(i + 1) * ny + j]) *
          inv_dx;
    }
  }
}

}  // namespace

void fill_ghosts(conserved_field& f, const boundary_spec& bc, double t) {
  const int g = f.g.ghost;
  const int nx = f.g.nx;
  const int ny = f.g.dim == 2 ? f.g.ny : 1;

  // x ghosts first, interior rows only.
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    for (int k = 1; k <= g; ++k) {
      conserved_state s;
      switch (bc.left.kind) {
        case bc_kind::periodic: s = f.at(nx - k, j); break;
        case bc_kind::reflective: s = f.at(k - 1, j); s.mx() = -s.mx(); break;
        case bc_kind::outflow: s = f.at(0, j); break;
        case bc_kind::fixed_state: s = prim_to_cons(bc.left.state, bc.gas); break;
        default: throw std::logic_error("fill_ghosts: unsupported left boundary kind");
      }
      f.at(-k, j) = s;
      switch (bc.right.kind) {
        case bc_kind::periodic: s = f.at(k - 1, j); break;
        case bc_kind::reflective: s = f.at(nx - k, j); s.mx() = -s.mx(); break;
        case bc_kind::outflow: s = f.at(nx - 1, j); break;
        case bc_kind::fixed_state: s = prim_to_cons(bc.right.state, bc.gas); break;
        default: throw std::logic_error("fill_ghosts: unsupported right boundary kind");
      }
      f.at(nx - 1 + k, j) = s;
    }
  }
  if (f.g.dim == 1) return;

  // y ghosts over the full padded x extent; corners inherit the x fill.
#pragma omp parallel for schedule(static)
  for (int i = -g; i < nx + g; ++i) {
    const double x = f.g.x_center(i);
    for (int k = 1; k <= g; ++k) {
      conserved_state s;
      switch (bc.bottom.kind) {
        case bc_kind::periodic: s = f.at(i, ny - k); break;
        case bc_kind::reflective: s = f.at(i, k - 1); s.my() = -s.my(); break;
        case bc_kind::outflow: s = f.at(i, 0); break;
        case bc_kind::fixed_state: s = prim_to_cons(bc.bottom.state, bc.gas); break;
        case bc_kind::dmr_bottom:
          if (x < 1.0 / 6.0) {
            s = prim_to_cons(dmr_post_shock(), bc.gas);
          } else {
            s = f.at(i, k - 1);
            s.my() = -s.my();
          }
          break;
        default: throw std::logic_error("fill_ghosts: unsupported bottom boundary kind");
      }
      f.at(i, -k) = s;
      switch (bc.top.kind) {
        case bc_kind::periodic: s = f.at(i, k - 1); break;
        case bc_kind::reflective: s = f.at(i, ny - k); s.my() = -s.my(); break;
        case bc_kind::outflow: s = f.at(i, ny - 1); break;
        case bc_kind::fixed_state: s = prim_to_cons(bc.top.state, bc.gas); break;
        case bc_kind::dmr_top:
          s = prim_to_cons(x < dmr_top_shock_x(t) ? dmr_post_shock() : dmr_pre_shock(), bc.gas);
          break;
        default: throw std::logic_error("fill_ghosts: unsupported top boundary kind");
      }
      f.at(i, ny - 1 + k) = s;
    }
  }
}

void rhs_1d(const conserved_field& f, const recon_config& rc, flux_kind fk, const gas_model& gas,
            std::vector<conserved_state>& rate) {
  const scheme_ctx cx{rc, fk, gas};
  const int nx = f.g.nx;
  const double inv_dx = 1.0 / f.g.dx();
  std::vector<conserved_state> flux(nx + 1);
  parallel_guard guard;
#pragma omp parallel for schedule(static)
  for (int ix = 0; ix <= nx; ++ix) {
    guard.run("interface flux", ix - 1, 0, [&] { flux[ix] = interface_flux_1d(f, ix - 1, cx); });
  }
  guard.check();
  rate.resize(nx);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i) rate[i] = (flux[i] - flux[i + 1]) * inv_dx;
}

void rhs_1d_reference(const conserved_field& f, const recon_config& rc, flux_kind fk,
                      const gas_model& gas, std::vector<conserved_state>& rate) {
  const scheme_ctx cx{rc, fk, gas};
  const int nx = f.g.nx;
  const double inv_dx = 1.0 / f.g.dx();
  rate.resize(nx);
  for (int i = 0; i < nx; ++i) {
    const conserved_state fl = interface_flux_1d(f, i - 1, cx);
    const conserved_state fr = interface_flux_1d(f, i, cx);
    rate[i] = (fl - fr) * inv_dx;
  }
}

void rhs_2d(const conserved_field& f, const recon_config& rc, flux_kind fk, const gas_model& gas,
            const source_spec& src, std::vector<conserved_state>& rate) {
  const scheme_ctx cx{rc, fk, gas};
  const int nx = f.g.nx;
  const int ny = f.g.ny;

  std::vector<conserved_state> rate_x;
  x_pass(f, cx, rate_x);
  const conserved_field ft = transposed(f);
  std::vector<conserved_state> rate_yt;
  x_pass(ft, cx, rate_yt);

  rate.resize(static_cast<std::size_t>(nx) * ny);
#pragma omp parallel for collapse(2) schedule(static)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      conserved_state r = rate_x[static_cast<std::size_t>(j) * nx + i];
      r = r + swap_uv(rate_yt[static_cast<std::size_t>(i) * ny + j]);
      if (src.kind == source_kind::rt_gravity) r = r + gravity_source(f.at(i, j));
      rate[static_cast<std::size_t>(j) * nx + i] = r;
    }
  }
}

void rhs_2d_reference(const conserved_field& f, const recon_config& rc, flux_kind fk,
                      const gas_model& gas, const source_spec& src,
                      std::vector<conserved_state>& rate) {
  const scheme_ctx cx{rc, fk, gas};
  const int nx = f.g.nx;
  const int ny = f.g.ny;
  const double inv_dx = 1.0 / f.g.dx();
  const double inv_dy = 1.0 / f.g.dy();
  const conserved_field ft = transposed(f);
  rate.resize(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const conserved_state fxl = x_interface_flux_2d(f, i - 1, j, cx);
      const conserved_state fxr = x_interface_flux_2d(f, i, j, cx);
      const conserved_state fyb = x_interface_flux_2d(ft, j - 1, i, cx);
      const conserved_state fyt = x_interface_flux_2d(ft, j, i, cx);
      conserved_state r = (fxl - fxr) * inv_dx;
      r = r + swap_uv((fyb - fyt) * inv_dy);
      if (src.kind == source_kind::rt_gravity) r = r + gravity_source(f.at(i, j));
      rate[static_cast<std::size_t>(j) * nx + i] = r;
    }
  }
}

void rk3_step(conserved_field& f, double dt, const stage_rhs& rhs) {
  const double t0 = f.time;
  const int nx = f.g.nx;
  const int ny = f.g.dim == 2 ? f.g.ny : 1;
  const conserved_field w0 = f;
  std::vector<conserved_state> k;

  rhs(f, t0, k);
#pragma omp parallel for collapse(2) schedule(static)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      f.at(i, j) = w0.at(i, j) + k[static_cast<std::size_t>(j) * nx + i] * dt;
    }
  }

  rhs(f, t0 + dt, k);
#pragma omp parallel for collapse(2) schedule(static)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      f.at(i, j) = w0.at(i, j) * 0.75 + f.at(i, j) * 0.25 +
                   k[static_cast<std::size_t>(j) * nx + i] * (0.25 * dt);
    }
  }

  rhs(f, t0 + 0.5 * dt, k);
#pragma omp parallel for collapse(2) schedule(static)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      f.at(i, j) = w0.at(i, j) * (1.0 / 3.0) + f.at(i, j) * (2.0 / 3.0) +
                   k[static_cast<std::size_t>(j) * nx + i] * (2.0 / 3.0 * dt);
    }
  }
  f.time = t0 + dt;
}

std::array<double, 2> max_wave_speed(const conserved_field& f, const gas_model& gas) {
  const int nx = f.g.nx;
  const int ny = f.g.dim == 2 ? f.g.ny : 1;
  double sx = 0.0;
  double sy = 0.0;
  parallel_guard guard;
#pragma omp parallel for collapse(2) schedule(static) reduction(max : sx, sy)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      guard.run("wave speed", i, j, [&] {
        const primitive_state w = cons_to_prim(f.at(i, j), gas);
        const double c = sound_speed(w, gas);
        sx = std::max(sx, std::abs(w.u) + c);
        sy = std::max(sy, std::abs(w.v) + c);
      });
    }
  }
  guard.check();
  return {sx, sy};
}

double compute_dt(const conserved_field& f, const time_controls& tc, const gas_model& gas) {
  double dt = 0.0;
  switch (tc.law) {
    case dt_law::cfl: {
      const std::array<double, 2> s = max_wave_speed(f, gas);
      double limit = f.g.dx() / s[0];
      if (f.g.dim == 2) limit = std::min(limit, f.g.dy() / s[1]);
      dt = tc.cfl * limit;
      break;
    }
    case dt_law::c_dx: dt = tc.dt_coef * f.g.dx(); break;
    case dt_law::dx_squared: dt = f.g.dx() * f.g.dx(); break;
  }
  return std::min(dt, tc.t_end - f.time);
}

std::array<double, 4> conserved_totals(const conserved_field& f) {
  const int nx = f.g.nx;
  const int ny = f.g.dim == 2 ? f.g.ny : 1;
  const double vol = f.g.cell_volume();
  std::array<double, 4> sum{};
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      for (int c = 0; c < 4; ++c) sum[c] += f.at(i, j).q[c];
    }
  }
  for (int c = 0; c < 4; ++c) sum[c] *= vol;
  return sum;
}

conserved_field transposed(const conserved_field& f) {
  grid gt = f.g;
  gt.x0 = f.g.y0;
  gt.x1 = f.g.y1;
  gt.y0 = f.g.x0;
  gt.y1 = f.g.x1;
  gt.nx = f.g.ny;
  gt.ny = f.g.nx;
  conserved_field ft(gt);
  ft.time = f.time;
  const int g = f.g.ghost;
#pragma omp parallel for schedule(static)
  for (int j = -g; j < f.g.ny + g; ++j) {
    for (int i = -g; i < f.g.nx + g; ++i) ft.at(j, i) = swap_uv(f.at(i, j));
  }
  return ft;
}

namespace {

void check_finite(const conserved_field& f, long step) {
  const int nx = f.g.nx;
  const int ny = f.g.dim == 2 ? f.g.ny : 1;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const conserved_state& s = f.at(i, j);
      for (int c = 0; c < 4; ++c) {
        if (!std::isfinite(s.q[c])) {
          char buf[160];
          std::snprintf(buf, sizeof buf,
                        "non-finite state component %d at cell (%d,%d) after step %ld, t=%.9g", c,
                        i, j, step, f.time);
          throw non_physical_state(buf);
        }
      }
    }
  }
}

}  // namespace

advance_stats advance(conserved_field& f, const time_controls& tc, const boundary_spec& bc,
                      const recon_config& rc, flux_kind fk, const gas_model& gas,
                      const source_spec& src, exec_mode em,
                      const std::vector<observer>& observers) {
  advance_stats st;
  const auto wall0 = std::chrono::steady_clock::now();
  st.initial_totals = conserved_totals(f);

  const stage_rhs rhs = [&](conserved_field& field, double t_stage,
                            std::vector<conserved_state>& rate) {
    fill_ghosts(field, bc, t_stage);
    if (field.g.dim == 1) {
      if (em == exec_mode::openmp) {
        rhs_1d(field, rc, fk, gas, rate);
      } else {
        rhs_1d_reference(field, rc, fk, gas, rate);
      }
    } else {
      if (em == exec_mode::openmp) {
        rhs_2d(field, rc, fk, gas, src, rate);
      } else {
        rhs_2d_reference(field, rc, fk, gas, src, rate);
      }
    }
  };

  long step = 0;
  while (tc.t_end - f.time > 0.0) {
    const double dt = compute_dt(f, tc, gas);
    const bool last = dt >= tc.t_end - f.time;
    const double t_before = f.time;
    try {
      rk3_step(f, dt, rhs);
    } catch (const non_physical_state& e) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "step %ld, t=%.9g, dt=%.3g: ", step + 1, t_before, dt);
      throw non_physical_state(buf + std::string(e.what()));
    }
    ++step;
    if (last) f.time = tc.t_end;
    check_finite(f, step);
    for (const observer& o : observers) {
      if (!o.fn) continue;
      const bool on_step = o.every_steps > 0 && step % o.every_steps == 0;
      const bool on_time = o.every_time > 0.0 && std::floor(f.time / o.every_time) >
                                                     std::floor(t_before / o.every_time);
      if (on_step || on_time) o.fn(f, step);
    }
    if (step >= 1000000000L) throw std::runtime_error("advance: step limit exceeded");
  }

  st.steps = step;
  st.final_totals = conserved_totals(f);
  st.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
  return st;
}

}  // namespace wenofv

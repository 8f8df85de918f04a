#pragma once

// Ideal-gas Euler physics: state conversions, physical and numerical fluxes,
// Roe-averaged characteristic bases, and an exact Riemann solver used as a
// test oracle. All functions are pure and thread-safe.

#include <array>
#include <stdexcept>

namespace wenofv {

struct gas_model {
  double gamma = 1.4;

  bool operator==(const gas_model&) const = default;
};

enum class axis { x, y };

// Raised when a state with nonpositive density or pressure (or a non-finite
// one) is encountered; carries human-readable context.
struct non_physical_state : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by the exact Riemann solver when the data open a vacuum.
struct vacuum_formation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cell-averaged conserved variables (rho, rho*u, rho*v, E). 1D problems
// simply carry my = 0. The same type doubles as a flux / rate 4-vector.
struct conserved_state {
  std::array<double, 4> q{};

  double& rho() { return q[0]; }
  double& mx() { return q[1]; }
  double& my() { return q[2]; }
  double& E() { return q[3]; }
  double rho() const { return q[0]; }
  double mx() const { return q[1]; }
  double my() const { return q[2]; }
  double E() const { return q[3]; }

  friend conserved_state operator+(const conserved_state& a, const conserved_state& b) {
    return {{a.q[0] + b.q[0], a.q[1] + b.q[1], a.q[2] + b.q[2], a.q[3] + b.q[3]}};
  }
  friend conserved_state operator-(const conserved_state& a, const conserved_state& b) {
    return {{a.q[0] - b.q[0], a.q[1] - b.q[1], a.q[2] - b.q[2], a.q[3] - b.q[3]}};
  }
  friend conserved_state operator*(const conserved_state& a, double s) {
    return {{a.q[0] * s, a.q[1] * s, a.q[2] * s, a.q[3] * s}};
  }
  bool operator==(const conserved_state&) const = default;
};

struct primitive_state {
  double rho = 0.0;
  double u = 0.0;
  double v = 0.0;
  double p = 0.0;

  bool operator==(const primitive_state&) const = default;
};

double sound_speed(const primitive_state& w, const gas_model& gas);

// Throws non_physical_state on rho <= 0 or p <= 0 (NaN input lands here too).
primitive_state cons_to_prim(const conserved_state& u, const gas_model& gas);
conserved_state prim_to_cons(const primitive_state& w, const gas_model& gas);

conserved_state physical_flux(const primitive_state& w, axis a, const gas_model& gas);

// HLLC with Einfeldt-type wave-speed bounds (one-sided speeds capped by the
// Roe-average acoustic speeds); restores isolated contacts exactly.
conserved_state hllc_flux(const primitive_state& wl, const primitive_state& wr, axis a,
                          const gas_model& gas);

// Local Lax-Friedrichs: robust, diffusive fallback flux.
conserved_state llf_flux(const primitive_state& wl, const primitive_state& wr, axis a,
                         const gas_model& gas);

struct riemann_star {
  double p = 0.0;
  double u = 0.0;
};

// Star-region pressure and velocity by Newton iteration on the pressure
// function (two-rarefaction initial guess, bisection fallback), converged to
// |dp|/p < 1e-12. Throws vacuum_formation when the data open a vacuum.
riemann_star exact_riemann_star(const primitive_state& wl, const primitive_state& wr,
                                const gas_model& gas);

// Self-similar exact solution sampled at xi = x/t.
primitive_state exact_riemann(const primitive_state& wl, const primitive_state& wr,
                              const gas_model& gas, double xi);

// Eigen-decomposition of the axis-flux Jacobian at the Roe average of two
// states: left * right = identity, eigenvalues (un-c, un, un, un+c) with un
// the axis-normal velocity.
struct char_basis {
  std::array<std::array<double, 4>, 4> left{};   // rows are left eigenvectors
  std::array<std::array<double, 4>, 4> right{};  // columns are right eigenvectors
  std::array<double, 4> lambda{};
};

char_basis compute_char_basis(const conserved_state& ul, const conserved_state& ur, axis a,
                              const gas_model& gas);

std::array<double, 4> to_characteristic(const char_basis& b, const conserved_state& u);
conserved_state from_characteristic(const char_basis& b, const std::array<double, 4>& c);

}  // namespace wenofv

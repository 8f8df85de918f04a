#include "wenofv/euler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace wenofv {

namespace {

std::string describe(const char* what, double rho, double p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s: rho=%.17g p=%.17g", what, rho, p);
  return buf;
}

// Splits velocity into the axis-normal and tangential components.
inline void split_velocity(const primitive_state& w, axis a, double& un, double& ut) {
  if (a == axis::x) {
    un = w.u;
    ut = w.v;
  } else {
    un = w.v;
    ut = w.u;
  }
}

// Assembles a 4-vector given in local (mass, normal momentum, tangential
// momentum, energy) order back into global component order.
inline conserved_state from_local(double m, double mn, double mt, double e, axis a) {
  if (a == axis::x) return {{m, mn, mt, e}};
  return {{m, mt, mn, e}};
}

}  // namespace

double sound_speed(const primitive_state& w, const gas_model& gas) {
  return std::sqrt(gas.gamma * w.p / w.rho);
}

primitive_state cons_to_prim(const conserved_state& u, const gas_model& gas) {
  if (!(u.rho() > 0.0) || !std::isfinite(u.rho())) {
    throw non_physical_state(describe("nonpositive or non-finite density", u.rho(), 0.0));
  }
  primitive_state w;
  w.rho = u.rho();
  w.u = u.mx() / u.rho();
  w.v = u.my() / u.rho();
  w.p = (gas.gamma - 1.0) * (u.E() - 0.5 * (u.mx() * u.mx() + u.my() * u.my()) / u.rho());
  if (!(w.p > 0.0) || !std::isfinite(w.p)) {
    throw non_physical_state(describe("nonpositive or non-finite pressure", w.rho, w.p));
  }
  return w;
}

conserved_state prim_to_cons(const primitive_state& w, const gas_model& gas) {
  conserved_state u;
  u.rho() = w.rho;
  u.mx() = w.rho * w.u;
  u.my() = w.rho * w.v;
  u.E() = w.p / (gas.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
  return u;
}

conserved_state physical_flux(const primitive_state& w, axis a, const gas_model& gas) {
  const conserved_state u = prim_to_cons(w, gas);
  const double un = (a == axis::x) ? w.u : w.v;
  conserved_state f;
  f.rho() = u.rho() * un;
  f.mx() = u.mx() * un;
  f.my() = u.my() * un;
  f.E() = (u.E() + w.p) * un;
  if (a == axis::x) {
    f.mx() += w.p;
  } else {
    f.my() += w.p;
  }
  return f;
}

conserved_state hllc_flux(const primitive_state& wl, const primitive_state& wr, axis a,
                          const gas_model& gas) {
  double unl, utl, unr, utr;
  split_velocity(wl, a, unl, utl);
  split_velocity(wr, a, unr, utr);
  const double cl = sound_speed(wl, gas);
  const double cr = sound_speed(wr, gas);
  const conserved_state ul = prim_to_cons(wl, gas);
  const conserved_state ur = prim_to_cons(wr, gas);

  // Roe averages bound the acoustic speeds from the averaged state.
  const double sql = std::sqrt(wl.rho);
  const double sqr = std::sqrt(wr.rho);
  const double hl = (ul.E() + wl.p) / wl.rho;
  const double hr = (ur.E() + wr.p) / wr.rho;
  const double un_hat = (sql * unl + sqr * unr) / (sql + sqr);
  const double ut_hat = (sql * utl + sqr * utr) / (sql + sqr);
  const double h_hat = (sql * hl + sqr * hr) / (sql + sqr);
  const double q2_hat = un_hat * un_hat + ut_hat * ut_hat;
  const double c_hat = std::sqrt((gas.gamma - 1.0) * (h_hat - 0.5 * q2_hat));

  const double s_l = std::min(unl - cl, un_hat - c_hat);
  const double s_r = std::max(unr + cr, un_hat + c_hat);
  if (s_l >= 0.0) return physical_flux(wl, a, gas);
  if (s_r <= 0.0) return physical_flux(wr, a, gas);

  const double s_star = (wr.p - wl.p + wl.rho * unl * (s_l - unl) - wr.rho * unr * (s_r - unr)) /
                        (wl.rho * (s_l - unl) - wr.rho * (s_r - unr));

  // Star state on the side the interface lies in, then F = F_K + S_K (U* - U).
  const bool left_side = s_star >= 0.0;
  const primitive_state& w = left_side ? wl : wr;
  const conserved_state& u = left_side ? ul : ur;
  const double s_k = left_side ? s_l : s_r;
  const double un = left_side ? unl : unr;
  const double ut = left_side ? utl : utr;

  const double factor = w.rho * (s_k - un) / (s_k - s_star);
  const double e_star =
      u.E() / w.rho + (s_star - un) * (s_star + w.p / (w.rho * (s_k - un)));
  const conserved_state u_star =
      from_local(factor, factor * s_star, factor * ut, factor * e_star, a);

  return physical_flux(w, a, gas) + (u_star - u) * s_k;
}

conserved_state llf_flux(const primitive_state& wl, const primitive_state& wr, axis a,
                         const gas_model& gas) {
  double unl, utl, unr, utr;
  split_velocity(wl, a, unl, utl);
  split_velocity(wr, a, unr, utr);
  const double s = std::max(std::abs(unl) + sound_speed(wl, gas),
                            std::abs(unr) + sound_speed(wr, gas));
  const conserved_state fl = physical_flux(wl, a, gas);
  const conserved_state fr = physical_flux(wr, a, gas);
  const conserved_state du = prim_to_cons(wr, gas) - prim_to_cons(wl, gas);
  return (fl + fr) * 0.5 - du * (0.5 * s);
}

namespace {

// Pressure function f_K(p) of the exact Riemann solver and its derivative.
void pressure_fn(double p, const primitive_state& w, double c, double g, double& f, double& df) {
  if (p > w.p) {  // shock branch
    const double a = 2.0 / ((g + 1.0) * w.rho);
    const double b = (g - 1.0) / (g + 1.0) * w.p;
    const double root = std::sqrt(a / (p + b));
    f = (p - w.p) * root;
    df = root * (1.0 - 0.5 * (p - w.p) / (p + b));
  } else {  // rarefaction branch
    const double pr = p / w.p;
    f = 2.0 * c / (g - 1.0) * (std::pow(pr, (g - 1.0) / (2.0 * g)) - 1.0);
    df = std::pow(pr, -(g + 1.0) / (2.0 * g)) / (w.rho * c);
  }
}

}  // namespace

riemann_star exact_riemann_star(const primitive_state& wl, const primitive_state& wr,
                                const gas_model& gas) {
  const double g = gas.gamma;
  const double cl = sound_speed(wl, gas);
  const double cr = sound_speed(wr, gas);
  const double du = wr.u - wl.u;
  if (2.0 * (cl + cr) / (g - 1.0) <= du) {
    throw vacuum_formation("pressure positivity violated: the rarefactions separate");
  }

  // Two-rarefaction approximation seeds the Newton iteration.
  const double z = (g - 1.0) / (2.0 * g);
  double p = std::pow((cl + cr - 0.5 * (g - 1.0) * du) /
                          (cl / std::pow(wl.p, z) + cr / std::pow(wr.p, z)),
                      1.0 / z);
  p = std::max(p, 1e-300);

  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  double fl = 0.0, fr = 0.0, dfl = 0.0, dfr = 0.0;
  for (int it = 0; it < 200; ++it) {
    pressure_fn(p, wl, cl, g, fl, dfl);
    pressure_fn(p, wr, cr, g, fr, dfr);
    const double f = fl + fr + du;
    if (f > 0.0) {
      hi = std::min(hi, p);
    } else {
      lo = std::max(lo, p);
    }
    const double step = f / (dfl + dfr);
    double next = p - step;
    if (!(next > lo) || !(next < hi)) {
      // Newton left the bracket: bisect (or decimate while unbounded above).
      next = std::isfinite(hi) ? 0.5 * (lo + hi) : std::max(10.0 * p, 1.0);
      if (lo > 0.0 && std::isfinite(hi)) next = 0.5 * (lo + hi);
    }
    if (std::abs(next - p) <= 1e-12 * p) {
      p = next;
      break;
    }
    p = next;
  }
  pressure_fn(p, wl, cl, g, fl, dfl);
  pressure_fn(p, wr, cr, g, fr, dfr);
  return {p, 0.5 * (wl.u + wr.u) + 0.5 * (fr - fl)};
}

primitive_state exact_riemann(const primitive_state& wl, const primitive_state& wr,
                              const gas_model& gas, double xi) {
  const double g = gas.gamma;
  const riemann_star star = exact_riemann_star(wl, wr, gas);
  const double gm = (g - 1.0) / (g + 1.0);

  if (xi <= star.u) {  // left of the contact
    const double cl = sound_speed(wl, gas);
    primitive_state w = wl;
    if (star.p > wl.p) {  // left shock
      const double sl = wl.u - cl * std::sqrt((g + 1.0) / (2.0 * g) * star.p / wl.p +
                                              (g - 1.0) / (2.0 * g));
      if (xi <= sl) return wl;
      w.rho = wl.rho * (star.p / wl.p + gm) / (gm * star.p / wl.p + 1.0);
    } else {  // left rarefaction
      const double c_star = cl * std::pow(star.p / wl.p, (g - 1.0) / (2.0 * g));
      if (xi <= wl.u - cl) return wl;
      if (xi < star.u - c_star) {  // inside the fan
        const double base = 2.0 / (g + 1.0) + gm / cl * (wl.u - xi);
        w.rho = wl.rho * std::pow(base, 2.0 / (g - 1.0));
        w.u = 2.0 / (g + 1.0) * (cl + 0.5 * (g - 1.0) * wl.u + xi);
        w.p = wl.p * std::pow(base, 2.0 * g / (g - 1.0));
        return w;
      }
      w.rho = wl.rho * std::pow(star.p / wl.p, 1.0 / g);
    }
    w.u = star.u;
    w.p = star.p;
    return w;
  }

  // right of the contact: mirror of the left logic
  const double cr = sound_speed(wr, gas);
  primitive_state w = wr;
  if (star.p > wr.p) {  // right shock
    const double sr = wr.u + cr * std::sqrt((g + 1.0) / (2.0 * g) * star.p / wr.p +
                                            (g - 1.0) / (2.0 * g));
    if (xi >= sr) return wr;
    w.rho = wr.rho * (star.p / wr.p + gm) / (gm * star.p / wr.p + 1.0);
  } else {  // right rarefaction
    const double c_star = cr * std::pow(star.p / wr.p, (g - 1.0) / (2.0 * g));
    if (xi >= wr.u + cr) return wr;
    if (xi > star.u + c_star) {  // inside the fan
      const double base = 2.0 / (g + 1.0) - gm / cr * (wr.u - xi);
      w.rho = wr.rho * std::pow(base, 2.0 / (g - 1.0));
      w.u = 2.0 / (g + 1.0) * (-cr + 0.5 * (g - 1.0) * wr.u + xi);
      w.p = wr.p * std::pow(base, 2.0 * g / (g - 1.0));
      return w;
    }
    w.rho = wr.rho * std::pow(star.p / wr.p, 1.0 / g);
  }
  w.u = star.u;
  w.p = star.p;
  return w;
}

char_basis compute_char_basis(const conserved_state& ul, const conserved_state& ur, axis a,
                              const gas_model& gas) {
  const primitive_state wl = cons_to_prim(ul, gas);
  const primitive_state wr = cons_to_prim(ur, gas);
  const double sql = std::sqrt(wl.rho);
  const double sqr = std::sqrt(wr.rho);
  const double inv = 1.0 / (sql + sqr);
  const double u = (sql * wl.u + sqr * wr.u) * inv;
  const double v = (sql * wl.v + sqr * wr.v) * inv;
  const double hl = (ul.E() + wl.p) / wl.rho;
  const double hr = (ur.E() + wr.p) / wr.rho;
  const double h = (sql * hl + sqr * hr) * inv;
  const double q2 = u * u + v * v;
  const double c2 = (gas.gamma - 1.0) * (h - 0.5 * q2);
  if (!(c2 > 0.0)) {
    throw non_physical_state(describe("Roe average lost acoustic speed", 0.5 * (wl.rho + wr.rho), c2));
  }
  const double c = std::sqrt(c2);

  double un, ut;
  if (a == axis::x) {
    un = u;
    ut = v;
  } else {
    un = v;
    ut = u;
  }
  const double b1 = (gas.gamma - 1.0) / c2;
  const double b2 = 0.5 * b1 * q2;

  // Eigenvectors in local (mass, normal momentum, tangential momentum,
  // energy) component order; rows of l pair with columns of r.
  const std::array<std::array<double, 4>, 4> r_local = {{
      {1.0, 1.0, 0.0, 1.0},
      {un - c, un, 0.0, un + c},
      {ut, ut, 1.0, ut},
      {h - un * c, 0.5 * q2, ut, h + un * c},
  }};
  const std::array<std::array<double, 4>, 4> l_local = {{
      {0.5 * (b2 + un / c), 0.5 * (-b1 * un - 1.0 / c), 0.5 * (-b1 * ut), 0.5 * b1},
      {1.0 - b2, b1 * un, b1 * ut, -b1},
      {-ut, 0.0, 1.0, 0.0},
      {0.5 * (b2 - un / c), 0.5 * (-b1 * un + 1.0 / c), 0.5 * (-b1 * ut), 0.5 * b1},
  }};

  // Local component k sits at global component perm[k].
  const std::array<int, 4> perm =
      (a == axis::x) ? std::array<int, 4>{0, 1, 2, 3} : std::array<int, 4>{0, 2, 1, 3};

  char_basis b;
  b.lambda = {un - c, un, un, un + c};
  for (int k = 0; k < 4; ++k) {
    for (int j = 0; j < 4; ++j) {
      b.right[perm[k]][j] = r_local[k][j];
      b.left[k][perm[j]] = l_local[k][j];
    }
  }
  return b;
}

std::array<double, 4> to_characteristic(const char_basis& b, const conserved_state& u) {
  std::array<double, 4> c{};
  for (int k = 0; k < 4; ++k) {
    c[k] = b.left[k][0] * u.q[0] + b.left[k][1] * u.q[1] + b.left[k][2] * u.q[2] +
           b.left[k][3] * u.q[3];
  }
  return c;
}

conserved_state from_characteristic(const char_basis& b, const std::array<double, 4>& c) {
  conserved_state u;
  for (int k = 0; k < 4; ++k) {
    u.q[k] = b.right[k][0] * c[0] + b.right[k][1] * c[1] + b.right[k][2] * c[2] +
             b.right[k][3] * c[3];
  }
  return u;
}

}  // namespace wenofv

#include "wenofv/weno.hpp"

namespace wenofv {

namespace {

std::array<double, 6> reversed6(const std::array<double, 6>& w) {
  return {w[5], w[4], w[3], w[2], w[1], w[0]};
}

std::array<double, 5> reversed5(const std::array<double, 5>& v) {
  return {v[4], v[3], v[2], v[1], v[0]};
}

}  // namespace

candidate_set6 candidates6(const stencil_window& win, stencil_side side) {
  candidate_set6 set;
  set.side = side;
  set.d = linear_weights6;
  if (side == stencil_side::left) {
    set.w = candidates6_left(win.values.data());
  } else {
    set.w = candidates6_left(reversed6(win.values).data());
  }
  return set;
}

double optimal6(const stencil_window& win) { return optimal6_value(win.values.data()); }

std::array<double, 4> smoothness6(const stencil_window& win, stencil_side side) {
  if (side == stencil_side::left) return smoothness6_left(win.values.data());
  return smoothness6_left(reversed6(win.values).data());
}

double tau6(const std::array<double, 4>& beta) { return tau6_value(beta); }

reconstruction_pair reconstruct6(const stencil_window& win, const weight_scheme& s) {
  return {recon6_left_value(win.values.data(), s),
          recon6_right_value(win.values.data(), s)};
}

candidate_set5 candidates5(const window5& win, stencil_side side) {
  candidate_set5 set;
  set.side = side;
  if (side == stencil_side::right) {
    set.d = end_linear_weights5;
    set.w = candidates5_right_end(win.values.data());
  } else {
    set.d = {end_linear_weights5[2], end_linear_weights5[1], end_linear_weights5[0]};
    const auto r = reversed5(win.values);
    const auto c = candidates5_right_end(r.data());
    set.w = {c[2], c[1], c[0]};  // back to leftmost-sub-stencil-first order
  }
  return set;
}

std::array<double, 3> smoothness5(const window5& win) {
  return smoothness5(win.values.data());
}

reconstruction_pair reconstruct5(const window5& win, const weight_scheme& s) {
  return {recon5_left_end_value(win.values.data(), s),
          recon5_right_end_value(win.values.data(), s)};
}

}  // namespace wenofv

#pragma once

// Stencil-level reconstruction kernels: candidate interface values, smoothness
// indicators, and the linear/nonlinear weight machinery for the fifth- and
// sixth-order WENO finite-volume schemes. Everything here is a pure function
// of its arguments and safe to call from any number of threads.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>

namespace wenofv {

enum class stencil_side { left, right };
enum class weight_kind { linear, js, z };

// Reconstruction-weight configuration. epsilon regularizes the smoothness
// ratios; p and q are the JS and Z sharpening exponents.
struct weight_scheme {
  weight_kind kind = weight_kind::z;
  int p = 2;
  int q = 2;
  double epsilon = 1.0e-6;

  bool operator==(const weight_scheme&) const = default;
};

// Six consecutive cell averages W_{i-2}..W_{i+3} feeding the reconstruction
// at the interface x_{i+1/2}. The closed forms below are spacing-free;
// spacing is carried only so callers can reason about physical scales.
struct stencil_window {
  std::array<double, 6> values{};
  double spacing = 1.0;
};

// Five consecutive cell averages W_{i-2}..W_{i+2} for the classical
// fifth-order scheme, centered on cell i.
struct window5 {
  std::array<double, 5> values{};
};

struct candidate_set6 {
  std::array<double, 4> w{};     // candidate interface values, sub-stencil k=0..3
  std::array<double, 4> beta{};  // smoothness indicators (filled by smoothness6)
  std::array<double, 4> d{};     // linear weights (1/20, 3/20, 3/5, 1/5)
  stencil_side side = stencil_side::left;
};

struct candidate_set5 {
  std::array<double, 3> w{};
  std::array<double, 3> beta{};
  std::array<double, 3> d{};  // (1/10, 3/5, 3/10) at the right cell end, mirrored at the left
  stencil_side side = stencil_side::left;
};

struct reconstruction_pair {
  double left = 0.0;
  double right = 0.0;
};

inline constexpr std::array<double, 4> linear_weights6{1.0 / 20.0, 3.0 / 20.0, 3.0 / 5.0,
                                                       1.0 / 5.0};
inline constexpr std::array<double, 3> end_linear_weights5{1.0 / 10.0, 3.0 / 5.0, 3.0 / 10.0};

// ---------------------------------------------------------------------------
// Raw-array kernels (hot path). Array arguments are the window values ordered
// left to right; "left" means the value seen from the left of the interface.
// Right-side quantities are obtained by evaluating the left forms on the
// reversed window, which makes the mirror symmetry exact by construction.
// ---------------------------------------------------------------------------

inline std::array<double, 4> candidates6_left(const double* w) {
  return {(2.0 * w[0] - 7.0 * w[1] + 11.0 * w[2]) / 6.0,
          (-w[1] + 5.0 * w[2] + 2.0 * w[3]) / 6.0,
          (-w[1] + 7.0 * w[2] + 7.0 * w[3] - w[4]) / 12.0,
          (3.0 * w[2] + 13.0 * w[3] - 5.0 * w[4] + w[5]) / 12.0};
}

inline double optimal6_value(const double* w) {
  return (w[0] - 8.0 * w[1] + 37.0 * w[2] + 37.0 * w[3] - 8.0 * w[4] + w[5]) / 60.0;
}

// Smoothness indicators of the four sub-stencil polynomials, measured on the
// cell left of the interface. k=0 is the quadratic on {i-2..i}; k=1..3 are
// cubics on {i-2..i+1}, {i-1..i+2}, {i..i+3}. The cubic indicators carry a
// first-times-third-derivative cross term on top of the plain squared-
// derivative integrals; that term makes the k-dependence of the leading
// truncation error cancel in tau6, which is what drives the Z weights.
// Each indicator is a sum of squares, hence nonnegative.
inline std::array<double, 4> smoothness6_left(const double* w) {
  const double a0 = w[0] - 2.0 * w[1] + w[2];
  const double b0 = w[0] - 4.0 * w[1] + 3.0 * w[2];
  const double beta0 = (13.0 / 12.0) * a0 * a0 + 0.25 * b0 * b0;

  const double a1 = w[0] - 7.0 * w[1] + 3.0 * w[2] + 3.0 * w[3];
  const double s1 = w[1] - 2.0 * w[2] + w[3];
  const double t1 = -w[0] + 3.0 * w[1] - 3.0 * w[2] + w[3];
  const double beta1 =
      a1 * a1 / 64.0 + (13.0 / 12.0) * s1 * s1 + (3109.0 / 2880.0) * t1 * t1;

  const double a2 = -3.0 * w[1] - 3.0 * w[2] + 7.0 * w[3] - w[4];
  const double t2 = -w[1] + 3.0 * w[2] - 3.0 * w[3] + w[4];
  const double beta2 =
      a2 * a2 / 64.0 + (13.0 / 12.0) * s1 * s1 + (3109.0 / 2880.0) * t2 * t2;

  const double a3 = -15.0 * w[2] + 25.0 * w[3] - 13.0 * w[4] + 3.0 * w[5];
  const double s3 = 2.0 * w[2] - 5.0 * w[3] + 4.0 * w[4] - w[5];
  const double t3 = -w[2] + 3.0 * w[3] - 3.0 * w[4] + w[5];
  const double beta3 =
      a3 * a3 / 64.0 + (13.0 / 12.0) * s3 * s3 + (3109.0 / 2880.0) * t3 * t3;

  return {beta0, beta1, beta2, beta3};
}

inline double tau6_value(const std::array<double, 4>& beta) {
  return (-3.0 * beta[1] + 2.0 * beta[2] + beta[3]) / 6.0;
}

inline double ipow(double x, int n) {
  double r = 1.0;
  for (; n > 0; --n) r *= x;
  return r;
}

// JS/Z weight evaluation with normalization. The normalizing sum is bounded
// below by min(d) / (beta_max + epsilon)^p > 0, so no extra guard is needed.
template <std::size_t N>
inline std::array<double, N> normalized_weights(const std::array<double, N>& d,
                                                const std::array<double, N>& beta, double tau,
                                                const weight_scheme& s) {
  if (s.kind == weight_kind::linear) return d;
  std::array<double, N> a{};
  if (s.kind == weight_kind::js) {
    for (std::size_t k = 0; k < N; ++k) a[k] = d[k] / ipow(beta[k] + s.epsilon, s.p);
  } else {
    const double at = std::abs(tau);
    for (std::size_t k = 0; k < N; ++k)
      a[k] = d[k] * (1.0 + ipow(at / (beta[k] + s.epsilon), s.q));
  }
  double sum = 0.0;
  for (double v : a) sum += v;
  for (double& v : a) v /= sum;
  return a;
}

inline double recon6_left_value(const double* w, const weight_scheme& s) {
  if (s.kind == weight_kind::linear) return optimal6_value(w);
  const auto cand = candidates6_left(w);
  const auto beta = smoothness6_left(w);
  const double tau = (s.kind == weight_kind::z) ? tau6_value(beta) : 0.0;
  const auto del = normalized_weights(linear_weights6, beta, tau, s);
  return del[0] * cand[0] + del[1] * cand[1] + del[2] * cand[2] + del[3] * cand[3];
}

inline double recon6_right_value(const double* w, const weight_scheme& s) {
  const double r[6] = {w[5], w[4], w[3], w[2], w[1], w[0]};
  return recon6_left_value(r, s);
}

// --- classical fifth-order kernels (cell-end convention) -------------------

// Candidate values at the right end x_{i+1/2} of the center cell; sub-stencils
// ordered leftmost first: {i-2..i}, {i-1..i+1}, {i..i+2}.
inline std::array<double, 3> candidates5_right_end(const double* v) {
  return {(2.0 * v[0] - 7.0 * v[1] + 11.0 * v[2]) / 6.0,
          (-v[1] + 5.0 * v[2] + 2.0 * v[3]) / 6.0,
          (2.0 * v[2] + 5.0 * v[3] - v[4]) / 6.0};
}

// Per-sub-stencil smoothness; independent of which cell end is evaluated.
inline std::array<double, 3> smoothness5(const double* v) {
  const double a0 = v[0] - 2.0 * v[1] + v[2], b0 = v[0] - 4.0 * v[1] + 3.0 * v[2];
  const double a1 = v[1] - 2.0 * v[2] + v[3], b1 = v[1] - v[3];
  const double a2 = v[2] - 2.0 * v[3] + v[4], b2 = 3.0 * v[2] - 4.0 * v[3] + v[4];
  return {(13.0 / 12.0) * a0 * a0 + 0.25 * b0 * b0,
          (13.0 / 12.0) * a1 * a1 + 0.25 * b1 * b1,
          (13.0 / 12.0) * a2 * a2 + 0.25 * b2 * b2};
}

inline double tau5_value(const std::array<double, 3>& beta) {
  return std::abs(beta[0] - beta[2]);
}

inline double recon5_right_end_value(const double* v, const weight_scheme& s) {
  if (s.kind == weight_kind::linear)
    return (2.0 * v[0] - 13.0 * v[1] + 47.0 * v[2] + 27.0 * v[3] - 3.0 * v[4]) / 60.0;
  const auto cand = candidates5_right_end(v);
  const auto beta = smoothness5(v);
  const double tau = (s.kind == weight_kind::z) ? tau5_value(beta) : 0.0;
  const auto del = normalized_weights(end_linear_weights5, beta, tau, s);
  return del[0] * cand[0] + del[1] * cand[1] + del[2] * cand[2];
}

inline double recon5_left_end_value(const double* v, const weight_scheme& s) {
  const double r[5] = {v[4], v[3], v[2], v[1], v[0]};
  return recon5_right_end_value(r, s);
}

// --- fifth-order point-value interpolation inside the center cell ----------
//
// Used for tangential interface quadrature in 2D. xi is the offset from the
// center-cell midpoint in units of the spacing, xi in (-1/2, 1/2). The
// optimal weights are point-dependent; they are positive at the two-point
// Gauss nodes xi = +-1/(2*sqrt(3)) used by the solver (they are not positive
// everywhere, e.g. at xi = 0).

inline const double gauss2_offset = 0.5 / std::sqrt(3.0);

// Point values at offset xi of the three sub-stencil quadratics.
inline std::array<double, 3> candidates5_point(const double* v, double xi) {
  const double h0 = 0.5 * (v[0] - 2.0 * v[1] + v[2]);
  const double g0 = 0.5 * v[0] - 2.0 * v[1] + 1.5 * v[2];
  const double h1 = 0.5 * (v[1] - 2.0 * v[2] + v[3]);
  const double g1 = 0.5 * (v[3] - v[1]);
  const double h2 = 0.5 * (v[2] - 2.0 * v[3] + v[4]);
  const double g2 = -1.5 * v[2] + 2.0 * v[3] - 0.5 * v[4];
  return {v[2] - h0 / 12.0 + xi * (g0 + xi * h0), v[2] - h1 / 12.0 + xi * (g1 + xi * h1),
          v[2] - h2 / 12.0 + xi * (g2 + xi * h2)};
}

// Optimal point-value weights at the Gauss nodes: the convex combination of
// the three quadratics that reproduces the full 5-cell quartic at the node.
inline const std::array<double, 3>& point_linear_weights5(bool plus_node) {
  static const double s = std::sqrt(3.0) / 1080.0;
  static const std::array<double, 3> dp{7.0 / 36.0 - s, 11.0 / 18.0, 7.0 / 36.0 + s};
  static const std::array<double, 3> dm{dp[2], dp[1], dp[0]};
  return plus_node ? dp : dm;
}

inline double interp5_point_value(const double* v, bool plus_node, const weight_scheme& s) {
  const double xi = plus_node ? gauss2_offset : -gauss2_offset;
  const auto& d = point_linear_weights5(plus_node);
  const auto cand = candidates5_point(v, xi);
  if (s.kind == weight_kind::linear)
    return d[0] * cand[0] + d[1] * cand[1] + d[2] * cand[2];
  const auto beta = smoothness5(v);
  const double tau = (s.kind == weight_kind::z) ? tau5_value(beta) : 0.0;
  const auto del = normalized_weights(d, beta, tau, s);
  return del[0] * cand[0] + del[1] * cand[1] + del[2] * cand[2];
}

// ---------------------------------------------------------------------------
// Struct-level API
// ---------------------------------------------------------------------------

candidate_set6 candidates6(const stencil_window& win, stencil_side side);
double optimal6(const stencil_window& win);
std::array<double, 4> smoothness6(const stencil_window& win, stencil_side side);
double tau6(const std::array<double, 4>& beta);
reconstruction_pair reconstruct6(const stencil_window& win, const weight_scheme& s);

candidate_set5 candidates5(const window5& win, stencil_side side);
std::array<double, 3> smoothness5(const window5& win);
reconstruction_pair reconstruct5(const window5& win, const weight_scheme& s);

// Normalized nonlinear weights; tau is required exactly when s.kind == z.
template <std::size_t N>
std::array<double, N> nonlinear_weights(const std::array<double, N>& d,
                                        const std::array<double, N>& beta,
                                        std::optional<double> tau, const weight_scheme& s) {
  if (s.kind == weight_kind::z && !tau)
    throw std::invalid_argument("nonlinear_weights: z weights require tau");
  return normalized_weights(d, beta, tau.value_or(0.0), s);
}

}  // namespace wenofv

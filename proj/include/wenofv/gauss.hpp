#pragma once

#include <array>
#include <cmath>
#include <utility>

namespace wenofv {

// 5-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 9.
struct gauss5_rule {
  std::array<double, 5> x;
  std::array<double, 5> w;
};

inline const gauss5_rule& gauss5() {
  static const gauss5_rule rule = [] {
    gauss5_rule r;
    const double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    const double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
    const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
    r.x = {-b, -a, 0.0, a, b};
    r.w = {wb, wa, 128.0 / 225.0, wa, wb};
    return r;
  }();
  return rule;
}

// Mean value of f over [a, b]; f may return any type closed under
// operator+(T, T) and operator*(T, double).
template <class F>
auto quad_average(F&& f, double a, double b) {
  const auto& g = gauss5();
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  auto acc = f(c + h * g.x[0]) * (0.5 * g.w[0]);
  for (int k = 1; k < 5; ++k) acc = acc + f(c + h * g.x[k]) * (0.5 * g.w[k]);
  return acc;
}

// Mean value of f(x, y) over the rectangle [a, b] x [c, d] (tensor rule).
template <class F>
auto quad_average_2d(F&& f, double a, double b, double c, double d) {
  return quad_average(
      [&](double x) { return quad_average([&](double y) { return f(x, y); }, c, d); }, a, b);
}

}  // namespace wenofv

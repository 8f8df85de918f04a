#include "wenofv/oracle.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace wenofv::oracle {

namespace {

// Solve the dense system M c = b in place by Gaussian elimination with
// partial pivoting. n <= 6 here, so nothing fancier is warranted.
void solve_dense(std::vector<std::vector<double>>& m, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (m[piv][col] == 0.0) throw std::runtime_error("oracle: singular interpolation system");
    std::swap(m[piv], m[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t row = n; row-- > 0;) {
    double s = b[row];
    for (std::size_t c = row + 1; c < n; ++c) s -= m[row][c] * b[c];
    b[row] = s / m[row][row];
  }
}

}  // namespace

std::vector<double> fit_cell_average_poly(std::span<const double> cell_averages, int degree,
                                          int target_offset) {
  const int n = degree + 1;
  if (static_cast<int>(cell_averages.size()) != n)
    throw std::invalid_argument("oracle: cell count must equal degree + 1");
  if (target_offset < 0 || target_offset >= n)
    throw std::invalid_argument("oracle: target_offset outside the stencil");

  // Row m: average of p over cell m, i.e. integral of x^k over
  // [o - 1/2, o + 1/2] with o the cell offset from the target cell.
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  std::vector<double> b(cell_averages.begin(), cell_averages.end());
  for (int row = 0; row < n; ++row) {
    const double o = static_cast<double>(row - target_offset);
    for (int k = 0; k < n; ++k)
      m[row][k] =
          (std::pow(o + 0.5, k + 1) - std::pow(o - 0.5, k + 1)) / static_cast<double>(k + 1);
  }
  solve_dense(m, b);
  return b;
}

double smoothness_oracle(std::span<const double> cell_averages, int degree, int target_offset) {
  const auto c = fit_cell_average_poly(cell_averages, degree, target_offset);

  // Precomputed factorial ratios k!/(k-d)! for the derivative coefficients.
  auto deriv_coeff = [&](int k, int d) {
    double f = 1.0;
    for (int j = 0; j < d; ++j) f *= static_cast<double>(k - j);
    return f * c[static_cast<std::size_t>(k)];
  };

  double total = 0.0;
  for (int d = 1; d <= degree; ++d) {
    // integral over [-1/2, 1/2] of (p^(d))^2; odd powers vanish.
    for (int k = d; k <= degree; ++k) {
      for (int l = d; l <= degree; ++l) {
        const int pw = (k - d) + (l - d);
        if (pw % 2 != 0) continue;
        total += deriv_coeff(k, d) * deriv_coeff(l, d) * std::pow(0.5, pw) /
                 static_cast<double>(pw + 1);
      }
    }
  }
  return total;
}

double point_value_oracle(std::span<const double> cell_averages, int degree, int target_offset,
                          double x) {
  const auto c = fit_cell_average_poly(cell_averages, degree, target_offset);
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

}  // namespace wenofv::oracle

#pragma once

// Integral-definition oracles used by the test suite to validate the closed
// forms in weno.hpp. These reconstruct the interpolating polynomial from
// cell averages by a direct linear solve, so they are slow and simple on
// purpose; nothing here is called by the solver.

#include <span>
#include <vector>

namespace wenofv::oracle {

// Coefficients c[0..degree] of the polynomial p(x) = sum_k c[k] x^k whose
// averages over the unit-spaced cells of the stencil match cell_averages.
// x is measured from the center of the cell at target_offset (0-based index
// into the stencil). Requires cell_averages.size() == degree + 1.
std::vector<double> fit_cell_average_poly(std::span<const double> cell_averages, int degree,
                                          int target_offset);

// Smoothness indicator by its defining integral: the sum over derivative
// orders of the squared-derivative integrals of the fitted polynomial over
// the target cell (unit spacing, so every scaling prefactor is 1).
double smoothness_oracle(std::span<const double> cell_averages, int degree, int target_offset);

// Point value of the fitted polynomial at x (target-cell-centered units).
double point_value_oracle(std::span<const double> cell_averages, int degree, int target_offset,
                          double x);

}  // namespace wenofv::oracle

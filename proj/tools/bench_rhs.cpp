// Times the OpenMP right-hand-side drivers against the serial reference
// loops on smooth 1D and 2D fields and verifies that the two paths agree
// bitwise, which is what makes the reference usable as a test oracle.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wenofv/problems.hpp"
#include "wenofv/solver.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace wenofv;

namespace {

using clock_type = std::chrono::steady_clock;

template <class F>
double time_loop(int iters, F&& body) {
  body();  // warm-up, also sizes the rate buffer
  const auto start = clock_type::now();
  for (int k = 0; k < iters; ++k) body();
  return std::chrono::duration<double>(clock_type::now() - start).count() / iters;
}

bool bitwise_equal(const std::vector<conserved_state>& a, const std::vector<conserved_state>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (int c = 0; c < 4; ++c) {
      if (a[k].q[c] != b[k].q[c]) return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  int nx1 = 6400;
  int nx2 = 160;
  int ny2 = 160;
  int iters = 20;
  CLI::App app{"RHS benchmark: OpenMP drivers vs the serial reference loops"};
  app.add_option("--nx1", nx1, "1D cell count");
  app.add_option("--nx2", nx2, "2D x cell count");
  app.add_option("--ny2", ny2, "2D y cell count");
  app.add_option("--iters", iters, "timed repetitions per case");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled at build time\n");
#endif

  const recon_config rc;  // characteristic-wise WENO6-Z
  const gas_model gas{};
  int failures = 0;

  {
    problem_spec ps = make_problem(problem_id::advect_sine, nx1, 1);
    conserved_field f = init_problem(ps);
    fill_ghosts(f, ps.bc, 0.0);
    std::vector<conserved_state> rate_omp, rate_ref;
    const double t_omp =
        time_loop(iters, [&] { rhs_1d(f, rc, flux_kind::hllc, gas, rate_omp); });
    const double t_ref =
        time_loop(iters, [&] { rhs_1d_reference(f, rc, flux_kind::hllc, gas, rate_ref); });
    const bool same = bitwise_equal(rate_omp, rate_ref);
    if (!same) ++failures;
    std::printf("1D nx=%d: openmp %.3f ms, reference %.3f ms, speedup %.2fx, bitwise %s\n", nx1,
                1e3 * t_omp, 1e3 * t_ref, t_ref / t_omp, same ? "equal" : "DIFFERENT");
  }

  {
    problem_spec ps = make_problem(problem_id::riemann2d_contacts, nx2, ny2);
    conserved_field f = init_problem(ps);
    fill_ghosts(f, ps.bc, 0.0);
    std::vector<conserved_state> rate_omp, rate_ref;
    const double t_omp =
        time_loop(iters, [&] { rhs_2d(f, rc, flux_kind::hllc, gas, ps.source, rate_omp); });
    const double t_ref = time_loop(
        iters, [&] { rhs_2d_reference(f, rc, flux_kind::hllc, gas, ps.source, rate_ref); });
    const bool same = bitwise_equal(rate_omp, rate_ref);
    if (!same) ++failures;
    std::printf("2D %dx%d: openmp %.3f ms, reference %.3f ms, speedup %.2fx, bitwise %s\n", nx2,
                ny2, 1e3 * t_omp, 1e3 * t_ref, t_ref / t_omp, same ? "equal" : "DIFFERENT");
  }

  return failures;
}

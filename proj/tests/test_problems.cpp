#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "wenofv/gauss.hpp"
#include "wenofv/problems.hpp"

using namespace wenofv;
namespace fs = std::filesystem;

namespace {

constexpr double pi = 3.14159265358979323846;

// Independent quadrature for cross-checking the Gauss-averaged initial data.
template <class F>
double simpson_1d(F&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

template <class F>
double simpson_mean_2d(F&& f, double xa, double xb, double ya, double yb, int n = 40) {
  auto inner = [&](double x) {
    return simpson_1d([&](double y) { return f(x, y); }, ya, yb, n);
  };
  return simpson_1d(inner, xa, xb, n) / ((xb - xa) * (yb - ya));
}

bool states_equal(const conserved_state& a, const conserved_state& b) { return a.q == b.q; }

fs::path fresh_dir(const char* name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("problem names round-trip") {
  for (problem_id id :
       {problem_id::advect_sine, problem_id::blast_wave, problem_id::shu_osher,
        problem_id::titarev_toro, problem_id::double_mach, problem_id::riemann2d_shocks,
        problem_id::riemann2d_contacts, problem_id::rayleigh_taylor}) {
    auto back = problem_from_name(problem_name(id));
    REQUIRE(back.has_value());
    CHECK(*back == id);
  }
  CHECK(!problem_from_name("weno7_magic").has_value());
  CHECK(!problem_from_name("").has_value());
}

TEST_CASE("catalog defaults match the benchmark definitions") {
  auto advect = make_problem(problem_id::advect_sine);
  CHECK(advect.g.dim == 1);
  CHECK(advect.g.x0 == 0.0);
  CHECK(advect.g.x1 == 2.0);
  CHECK(advect.bc.left.kind == bc_kind::periodic);
  CHECK(advect.time.t_end == 2.0);
  CHECK(advect.gas.gamma == 1.4);

  auto blast = make_problem(problem_id::blast_wave);
  CHECK(blast.g.nx == 400);
  CHECK(blast.g.x1 == 100.0);
  CHECK(blast.bc.left.kind == bc_kind::reflective);
  CHECK(blast.bc.right.kind == bc_kind::reflective);
  CHECK(blast.time.t_end == 3.8);

  auto shu = make_problem(problem_id::shu_osher);
  CHECK(shu.g.nx == 400);
  CHECK(shu.g.x0 == -5.0);
  CHECK(shu.bc.left.kind == bc_kind::fixed_state);
  CHECK(shu.bc.left.state.rho == 3.857134);
  CHECK(shu.bc.left.state.u == 2.629369);
  CHECK(shu.bc.left.state.p == 10.33333);
  CHECK(shu.bc.right.kind == bc_kind::outflow);
  CHECK(shu.time.t_end == 1.8);

  auto tita = make_problem(problem_id::titarev_toro);
  CHECK(tita.g.nx == 1000);
  CHECK(tita.bc.left.state.rho == 1.515695);
  CHECK(tita.time.t_end == 5.0);

  auto dmr = make_problem(problem_id::double_mach);
  CHECK(dmr.g.dim == 2);
  CHECK(dmr.g.nx == 480);
  CHECK(dmr.g.ny == 120);
  CHECK(dmr.g.x1 == 4.0);
  CHECK(dmr.g.y1 == 1.0);
  CHECK(dmr.bc.left.kind == bc_kind::fixed_state);
  CHECK(dmr.bc.left.state.p == 116.5);
  CHECK(dmr.bc.bottom.kind == bc_kind::dmr_bottom);
  CHECK(dmr.bc.top.kind == bc_kind::dmr_top);
  CHECK(dmr.time.t_end == 0.2);

  auto shocks = make_problem(problem_id::riemann2d_shocks);
  CHECK(shocks.g.nx == 250);
  CHECK(shocks.g.ny == 250);
  CHECK(shocks.bc.top.kind == bc_kind::outflow);
  CHECK(shocks.time.t_end == 0.6);

  CHECK(make_problem(problem_id::riemann2d_contacts).time.t_end == 0.35);

  auto rt = make_problem(problem_id::rayleigh_taylor);
  CHECK(rt.gas.gamma == 5.0 / 3.0);
  CHECK(rt.bc.gas.gamma == 5.0 / 3.0);
  CHECK(rt.g.nx == 25);
  CHECK(rt.g.ny == 100);
  CHECK(rt.g.x1 == 0.25);
  CHECK(rt.source.kind == source_kind::rt_gravity);
  CHECK(rt.bc.left.kind == bc_kind::reflective);
  CHECK(rt.bc.bottom.kind == bc_kind::fixed_state);
  CHECK(rt.bc.bottom.state.rho == 2.0);
  CHECK(rt.bc.top.state.p == 2.5);
  CHECK(rt.time.t_end == 2.25);

  auto resized = make_problem(problem_id::blast_wave, 50, 9);
  CHECK(resized.g.nx == 50);
  CHECK(resized.g.ny == 1);
  CHECK(resized.g.x1 == 100.0);
  auto resized2 = make_problem(problem_id::double_mach, 96, 24);
  CHECK(resized2.g.nx == 96);
  CHECK(resized2.g.ny == 24);
  CHECK(resized2.g.y1 == 1.0);
}

TEST_CASE("advected sine solution examples") {
  CHECK(exact_advect_sine(0.5, 0.5).rho == 1.0);
  for (double x : {0.0, 0.13, 0.5, 1.2, 1.97}) {
    CHECK(exact_advect_sine(x, 2.0).rho ==
          doctest::Approx(exact_advect_sine(x, 0.0).rho).epsilon(5e-15));
    CHECK(exact_advect_sine(x, 0.7).u == 1.0);
    CHECK(exact_advect_sine(x, 0.7).p == 1.0);
    CHECK(exact_advect_sine(x, 0.7).v == 0.0);
  }
  CHECK(exact_advect_sine(0.5, 0.0).rho == doctest::Approx(1.2).epsilon(1e-15));
}

TEST_CASE("smooth initial averages match analytic cell means") {
  auto spec = make_problem(problem_id::advect_sine, 20, 1);
  auto f = init_problem(spec);
  auto exact = exact_advect_density_averages(spec.g, 0.0);
  for (int i = 0; i < 20; ++i) {
    CHECK(std::abs(f.at(i).rho() - exact[i]) <= 1e-13);
    CHECK(f.at(i).mx() == f.at(i).rho());  // unit velocity, same quadrature sums
    CHECK(f.at(i).E() == doctest::Approx(1.0 / 0.4 + 0.5 * exact[i]).epsilon(1e-14));
    CHECK(f.at(i).my() == 0.0);
  }

  auto shu = make_problem(problem_id::shu_osher);
  auto fs_ = init_problem(shu);
  const double h = shu.g.dx();
  for (int i : {40, 41, 120, 399}) {
    const double a = shu.g.x_left(i);
    const double b = shu.g.x_left(i + 1);
    const double mean = 1.0 + 0.2 * (std::cos(5.0 * a) - std::cos(5.0 * b)) / (5.0 * h);
    CHECK(fs_.at(i).rho() == doctest::Approx(mean).epsilon(1e-13));
    CHECK(fs_.at(i).mx() == 0.0);
  }
  for (int i : {0, 17, 39}) {
    CHECK(fs_.at(i).rho() == 3.857134);
    CHECK(fs_.at(i).mx() == doctest::Approx(3.857134 * 2.629369).epsilon(1e-15));
  }

  auto tita = make_problem(problem_id::titarev_toro);
  auto ft = init_problem(tita);
  const double ht = tita.g.dx();
  for (int i : {50, 51, 500, 999}) {
    const double a = tita.g.x_left(i);
    const double b = tita.g.x_left(i + 1);
    const double mean =
        1.0 + 0.1 * (std::cos(20.0 * pi * a) - std::cos(20.0 * pi * b)) / (20.0 * pi * ht);
    CHECK(ft.at(i).rho() == doctest::Approx(mean).epsilon(1e-12));
  }
  for (int i : {0, 20, 49}) CHECK(ft.at(i).rho() == 1.515695);

  auto blast = make_problem(problem_id::blast_wave);
  auto fb = init_problem(blast);
  const double gm1 = blast.gas.gamma - 1.0;
  for (int i : {0, 20, 39}) CHECK(fb.at(i).E() == 1000.0 / gm1);
  for (int i : {40, 200, 359}) CHECK(fb.at(i).E() == 0.01 / gm1);
  for (int i : {360, 380, 399}) CHECK(fb.at(i).E() == 100.0 / gm1);
  for (int i = 0; i < 400; ++i) {
    CHECK(fb.at(i).rho() == 1.0);
    CHECK(fb.at(i).mx() == 0.0);
  }
}

TEST_CASE("interface-straddling cells split by exact volume fractions") {
  // 7 cells over [0, 100]: the jumps at 10 and 90 fall inside cells 0 and 6.
  auto blast = make_problem(problem_id::blast_wave, 7, 1);
  auto f = init_problem(blast);
  const double h = blast.g.dx();
  const double gm1 = blast.gas.gamma - 1.0;
  const double e_left = 1000.0 / gm1;
  const double e_mid = 0.01 / gm1;
  const double e_right = 100.0 / gm1;
  CHECK(f.at(0).E() ==
        doctest::Approx(e_left * (10.0 / h) + e_mid * ((h - 10.0) / h)).epsilon(1e-13));
  const double a6 = blast.g.x_left(6);
  CHECK(f.at(6).E() ==
        doctest::Approx(e_mid * ((90.0 - a6) / h) + e_right * ((100.0 - 90.0) / h))
            .epsilon(1e-13));
  for (int i = 0; i < 7; ++i) CHECK(f.at(i).rho() == doctest::Approx(1.0).epsilon(1e-14));

  // 7 cells over [-5, 5]: the inflow/sine interface at -4 splits cell 0.
  auto shu = make_problem(problem_id::shu_osher, 7, 1);
  auto fsh = init_problem(shu);
  const double hs = shu.g.dx();
  const double b0 = shu.g.x_left(1);
  const double left_rho = 3.857134;
  const double smooth_mass =
      simpson_1d([](double x) { return 1.0 + 0.2 * std::sin(5.0 * x); }, -4.0, b0, 4000);
  CHECK(fsh.at(0).rho() ==
        doctest::Approx((left_rho * 1.0 + smooth_mass) / hs).epsilon(1e-12));
}

TEST_CASE("shock-configuration quadrant data are exactly symmetric") {
  for (int n : {250, 63}) {
    auto spec = make_problem(problem_id::riemann2d_shocks, n, n);
    auto f = init_problem(spec);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i <= j; ++i) {
        const conserved_state& a = f.at(i, j);
        const conserved_state& b = f.at(j, i);
        CHECK(a.q[0] == b.q[0]);
        CHECK(a.q[1] == b.q[2]);
        CHECK(a.q[2] == b.q[1]);
        CHECK(a.q[3] == b.q[3]);
      }
    }
    // total mass equals the exact quadrant decomposition
    const double mass = conserved_totals(f)[0];
    const double exact = 1.5 * 0.09 + 0.5323 * 0.21 * 2.0 + 0.138 * 0.49;
    CHECK(mass == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("oblique shock initial data use exact half-plane fractions") {
  const double m = 1.0 / std::sqrt(3.0);
  const double c = 1.0 / 6.0;

  auto spec = make_problem(problem_id::double_mach);
  auto f = init_problem(spec);
  const conserved_state post = prim_to_cons(dmr_post_shock(), spec.gas);
  const conserved_state pre = prim_to_cons(dmr_pre_shock(), spec.gas);
  const double dx = spec.g.dx();
  int n_pre = 0, n_post = 0, n_mixed = 0;
  for (int j = 0; j < spec.g.ny; ++j) {
    for (int i = 0; i < spec.g.nx; ++i) {
      const double xa = spec.g.x_left(i);
      const double xb = spec.g.x_left(i + 1);
      const double ya = spec.g.y_left(j);
      const double yb = spec.g.y_left(j + 1);
      if (xa > c + m * yb + 0.5 * dx) {
        CHECK(states_equal(f.at(i, j), pre));
        ++n_pre;
      } else if (xb < c + m * ya - 0.5 * dx) {
        CHECK(states_equal(f.at(i, j), post));
        ++n_post;
      } else {
        const double rho = f.at(i, j).rho();
        CHECK(rho >= 1.4);
        CHECK(rho <= 8.0);
        ++n_mixed;
      }
    }
  }
  CHECK(n_pre > 0);
  CHECK(n_post > 0);
  CHECK(n_mixed > 0);

  // total mass agrees with the closed-form area left of the shock trace
  const double area_left = c * 1.0 + 0.5 * m;  // integral of (c + m y) over y in [0,1]
  const double exact_mass = 8.0 * area_left + 1.4 * (4.0 - area_left);
  CHECK(conserved_totals(f)[0] == doctest::Approx(exact_mass).epsilon(1e-9));

  // single whole-domain cell: the average is the trapezoid of the line
  auto tiny = make_problem(problem_id::double_mach, 4, 1);
  auto ftiny = init_problem(tiny);
  const double frac0 = c + 0.5 * m;  // mean of (c + m y) over y in [0,1], all inside cell 0
  CHECK(ftiny.at(0, 0).rho() == doctest::Approx(8.0 * frac0 + 1.4 * (1.0 - frac0)).epsilon(1e-13));
  CHECK(states_equal(ftiny.at(1, 0), pre));
  CHECK(states_equal(ftiny.at(3, 0), pre));

  // partial crossing that exits through the cell's top face
  auto small = make_problem(problem_id::double_mach, 8, 2);
  auto fsml = init_problem(small);
  {
    const double ya = 0.5, yb = 1.0, xa = 0.0;
    const double y_exit = (0.5 - c) / m;  // line reaches x = 0.5 here
    const double w_lo = c + m * ya - xa;
    const double w_hi = 0.5 - xa;
    const double area = 0.5 * (w_lo + w_hi) * (y_exit - ya) + (yb - y_exit) * 0.5;
    const double frac = area / (0.5 * 0.5);
    CHECK(fsml.at(0, 1).rho() == doctest::Approx(8.0 * frac + 1.4 * (1.0 - frac)).epsilon(1e-13));
  }
}

TEST_CASE("stratified layers average to hydrostatic balance") {
  auto spec = make_problem(problem_id::rayleigh_taylor);
  auto f = init_problem(spec);
  const double g = spec.gas.gamma;
  REQUIRE(g == 5.0 / 3.0);

  for (int j : {0, 12, 49}) {
    for (int i = 0; i < spec.g.nx; ++i) CHECK(f.at(i, j).rho() == doctest::Approx(2.0).epsilon(1e-14));
  }
  for (int j : {50, 70, 99}) {
    for (int i = 0; i < spec.g.nx; ++i) CHECK(f.at(i, j).rho() == doctest::Approx(1.0).epsilon(1e-14));
  }

  auto heavy_energy = [g](double x, double y) {
    const double p = 2.0 * y + 1.0;
    const double v = -0.025 * std::sqrt(g * p / 2.0) * std::cos(8.0 * pi * x);
    return p / (g - 1.0) + 0.5 * 2.0 * v * v;
  };
  auto light_energy = [g](double x, double y) {
    const double p = y + 1.5;
    const double v = -0.025 * std::sqrt(g * p) * std::cos(8.0 * pi * x);
    return p / (g - 1.0) + 0.5 * v * v;
  };
  {
    const int i = 3, j = 10;
    const double e = simpson_mean_2d(heavy_energy, spec.g.x_left(i), spec.g.x_left(i + 1),
                                     spec.g.y_left(j), spec.g.y_left(j + 1));
    CHECK(f.at(i, j).E() == doctest::Approx(e).epsilon(1e-12));
  }
  {
    const int i = 17, j = 80;
    const double e = simpson_mean_2d(light_energy, spec.g.x_left(i), spec.g.x_left(i + 1),
                                     spec.g.y_left(j), spec.g.y_left(j + 1));
    CHECK(f.at(i, j).E() == doctest::Approx(e).epsilon(1e-12));
  }

  // a cell straddling the interface splits at y = 0.5 exactly
  auto odd = make_problem(problem_id::rayleigh_taylor, 5, 7);
  auto fo = init_problem(odd);
  {
    const int i = 2, j = 3;  // y range [3/7, 4/7] contains 0.5
    const double xa = odd.g.x_left(i), xb = odd.g.x_left(i + 1);
    const double ya = odd.g.y_left(j), yb = odd.g.y_left(j + 1);
    REQUIRE(ya < 0.5);
    REQUIRE(yb > 0.5);
    const double w_lo = (0.5 - ya) / (yb - ya);
    const double rho = 2.0 * w_lo + 1.0 * (1.0 - w_lo);
    CHECK(fo.at(i, j).rho() == doctest::Approx(rho).epsilon(1e-13));
    const double e = simpson_mean_2d(heavy_energy, xa, xb, ya, 0.5, 200) * w_lo +
                     simpson_mean_2d(light_energy, xa, xb, 0.5, yb, 200) * (1.0 - w_lo);
    CHECK(fo.at(i, j).E() == doctest::Approx(e).epsilon(1e-12));
  }

  // frozen sound speed mode: v = -0.025 sqrt(2 gamma) cos(8 pi x)
  auto uni = make_problem(problem_id::rayleigh_taylor);
  uni.rt_c = rt_speed_mode::uniform;
  auto fu = init_problem(uni);
  {
    const int i = 4, j = 20;
    const double xa = uni.g.x_left(i), xb = uni.g.x_left(i + 1);
    const double mean_cos = (std::sin(8.0 * pi * xb) - std::sin(8.0 * pi * xa)) / (8.0 * pi * (xb - xa));
    const double expect = 2.0 * (-0.025 * std::sqrt(2.0 * g)) * mean_cos;
    CHECK(fu.at(i, j).my() == doctest::Approx(expect).epsilon(1e-12));
  }
  // perturbation points down where the cosine is positive
  CHECK(f.at(0, 10).my() < 0.0);
  CHECK(fu.at(0, 10).my() < 0.0);
}

TEST_CASE("density error norms") {
  auto spec = make_problem(problem_id::advect_sine, 30, 1);
  auto f = init_problem(spec);
  std::vector<double> ref(30);
  for (int i = 0; i < 30; ++i) ref[static_cast<std::size_t>(i)] = f.at(i).rho();

  auto zero = error_norms(f, ref);
  CHECK(zero.l1 == 0.0);
  CHECK(zero.linf == 0.0);

  for (double& r : ref) r += 1e-3;
  auto off = error_norms(f, ref);
  CHECK(off.l1 == doctest::Approx(1e-3 * 2.0).epsilon(1e-13));  // domain length 2
  CHECK(off.linf == doctest::Approx(1e-3).epsilon(1e-13));

  std::vector<double> wrong(29, 1.0);
  CHECK_THROWS_AS((void)error_norms(f, wrong), std::invalid_argument);
}

TEST_CASE("fine snapshots block-average onto the coarse grid") {
  conserved_field fine{make_grid_1d(0.0, 2.0, 40)};
  for (int i = 0; i < 40; ++i) fine.at(i) = {{static_cast<double>(i), 0.0, 0.0, 1.0}};
  conserved_field coarse{make_grid_1d(0.0, 2.0, 10)};
  for (int i = 0; i < 10; ++i) {
    const double mean = (4.0 * i + (4.0 * i + 1) + (4.0 * i + 2) + (4.0 * i + 3)) * 0.25;
    coarse.at(i) = {{mean, 0.0, 0.0, 1.0}};
  }
  auto n = error_norms(coarse, fine);
  CHECK(n.l1 == 0.0);
  CHECK(n.linf == 0.0);

  conserved_field fine2{make_grid_2d(0.0, 1.0, 0.0, 1.0, 12, 8)};
  for (int j = 0; j < 8; ++j) {
    for (int i = 0; i < 12; ++i) fine2.at(i, j) = {{i + 10.0 * j, 0.0, 0.0, 1.0}};
  }
  conserved_field coarse2{make_grid_2d(0.0, 1.0, 0.0, 1.0, 6, 4)};
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 6; ++i) {
      const double mean = (2.0 * i + 0.5) + 10.0 * (2.0 * j + 0.5);
      coarse2.at(i, j) = {{mean, 0.0, 0.0, 1.0}};
    }
  }
  auto n2 = error_norms(coarse2, fine2);
  CHECK(n2.l1 == 0.0);
  CHECK(n2.linf == 0.0);

  conserved_field fine_bad{make_grid_1d(0.0, 2.0, 41)};
  CHECK_THROWS_AS((void)error_norms(coarse, fine_bad), std::invalid_argument);
  conserved_field fine_bad2{make_grid_2d(0.0, 1.0, 0.0, 1.0, 12, 9)};
  CHECK_THROWS_AS((void)error_norms(coarse2, fine_bad2), std::invalid_argument);
  conserved_field other_domain{make_grid_1d(0.0, 1.0, 40)};
  CHECK_THROWS_AS((void)error_norms(coarse, other_domain), std::invalid_argument);
}

TEST_CASE("order tabulation reproduces the published columns") {
  struct column {
    std::vector<double> err;
    std::vector<double> printed;
  };
  // linear / JS / Z weights at dt = 0.2 dx
  const std::vector<column> coarse_dt = {
      {{1.3156e-4, 1.6514e-5, 2.0664e-6, 2.5836e-7, 3.2298e-8}, {2.9940, 2.9985, 2.9997, 2.9999}},
      {{2.0032e-4, 1.7924e-5, 2.0841e-6, 2.5853e-7, 3.2299e-8}, {3.4823, 3.1044, 3.0110, 3.0008}},
      {{1.3160e-4, 1.6514e-5, 2.0664e-6, 2.5836e-7, 3.2298e-8}, {2.9944, 2.9985, 2.9997, 2.9999}},
  };
  // linear / JS / Z weights at dt = dx^2
  const std::vector<column> fine_dt = {
      {{1.0840e-05, 1.7360e-07, 2.7245e-09, 4.2946e-11, 5.6930e-12},
       {5.9645, 5.9936, 5.9873, 2.9153}},
      {{7.7952e-05, 1.4662e-06, 1.8252e-08, 1.7202e-10, 5.6987e-12},
       {5.7324, 6.3279, 6.7293, 4.9158}},
      {{1.0845e-05, 1.7360e-07, 2.7245e-09, 4.2940e-11, 5.6988e-12},
       {5.9651, 5.9936, 5.9875, 2.9136}},
  };
  for (const auto& table : {coarse_dt, fine_dt}) {
    for (const auto& col : table) {
      const auto orders = convergence_orders(col.err);
      REQUIRE(orders.size() == col.printed.size());
      for (std::size_t k = 0; k < orders.size(); ++k) {
        CHECK(std::abs(orders[k] - col.printed[k]) <= 0.01);
      }
    }
  }
  CHECK(convergence_orders({1.0}).empty());
  CHECK(convergence_orders({}).empty());
}

// The published error tables label resolutions by cells per unit length
// (dx = 1/N); on the [0,2] domain that is nx = 2N cells. At nx = 40..160 the
// dt=0.2dx run reproduces all printed third-order errors and the dt=dx^2 run
// reproduces the printed linear/Z sixth-order errors to every shown digit.
// The published JS column is reproduced (again to ~5 digits) only with
// epsilon = 1e-3; at the default 1e-6 the JS indicators genuinely degrade
// the smooth-test order to ~5, which matches the scheme's own error
// analysis. Both behaviors are pinned here.
TEST_CASE("convergence study measures the expected orders") {
  auto spec = make_problem(problem_id::advect_sine);
  recon_config linear{recon_order::weno6, recon_vars::characteristic, {weight_kind::linear}};
  recon_config js{recon_order::weno6, recon_vars::characteristic, {weight_kind::js}};
  recon_config js_soft{recon_order::weno6, recon_vars::characteristic,
                       {weight_kind::js, 2, 2, 1e-3}};
  recon_config z{recon_order::weno6, recon_vars::characteristic, {weight_kind::z}};

  SUBCASE("third order with dt proportional to dx") {
    auto reps = convergence_study(spec, {linear, z}, {40, 80}, dt_law::c_dx);
    REQUIRE(reps.size() == 2);
    for (const auto& rep : reps) {
      REQUIRE(rep.l1.size() == 2);
      REQUIRE(rep.orders.size() == 1);
      CHECK(std::abs(rep.orders[0] - 3.0) <= 0.05);
      CHECK(rep.l1[0] == doctest::Approx(2.0664e-6).epsilon(0.02));
      CHECK(rep.l1[1] == doctest::Approx(2.5836e-7).epsilon(0.02));
    }
  }

  SUBCASE("sixth order with dt equal to dx squared") {
    auto reps = convergence_study(spec, {linear, js, js_soft}, {20, 40}, dt_law::dx_squared);
    REQUIRE(reps.size() == 3);
    CHECK(reps[0].orders[0] > 5.7);
    CHECK(reps[0].orders[0] < 6.2);
    CHECK(reps[0].l1[0] == doctest::Approx(1.0840e-5).epsilon(0.02));
    CHECK(reps[0].l1[1] == doctest::Approx(1.7360e-7).epsilon(0.02));
    // strict indicators: fifth-order smooth behavior at the default epsilon
    CHECK(reps[1].orders[0] > 4.7);
    CHECK(reps[1].orders[0] < 5.4);
    CHECK(reps[1].l1[1] / 1.4662e-6 < 3.0);
    // softened indicators reproduce the published sixth-order JS errors
    CHECK(reps[2].orders[0] > 5.6);
    CHECK(reps[2].orders[0] < 5.9);
    CHECK(reps[2].l1[0] == doctest::Approx(7.7952e-5).epsilon(0.01));
    CHECK(reps[2].l1[1] == doctest::Approx(1.4662e-6).epsilon(0.01));
  }

  SUBCASE("prerequisites are enforced") {
    auto blast = make_problem(problem_id::blast_wave);
    CHECK_THROWS_AS((void)convergence_study(blast, {z}, {20, 40}, dt_law::c_dx),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)convergence_study(spec, {z}, {10, 30}, dt_law::c_dx),
                    std::invalid_argument);
  }
}

TEST_CASE("snapshot files round-trip bitwise") {
  const fs::path dir = fresh_dir("wfv_snap_test");
  auto spec = make_problem(problem_id::shu_osher, 50, 1);
  auto f = init_problem(spec);
  f.time = 1.23;
  const fs::path file = dir / "probe.snap";
  save_snapshot(file, f, "shu_osher", "unit-test");

  auto s = load_snapshot(file);
  REQUIRE(s.has_value());
  CHECK(s->problem == "shu_osher");
  CHECK(s->scheme_tag == "unit-test");
  CHECK(s->field.g == f.g);
  CHECK(s->field.time == 1.23);
  for (int i = 0; i < 50; ++i) CHECK(states_equal(s->field.at(i), f.at(i)));

  SUBCASE("2D fields round-trip too") {
    auto spec2 = make_problem(problem_id::riemann2d_contacts, 12, 12);
    auto f2 = init_problem(spec2);
    f2.time = 0.25;
    const fs::path file2 = dir / "probe2.snap";
    save_snapshot(file2, f2, "riemann2d_contacts", "unit-test");
    auto s2 = load_snapshot(file2);
    REQUIRE(s2.has_value());
    CHECK(s2->field.g == f2.g);
    for (int j = 0; j < 12; ++j) {
      for (int i = 0; i < 12; ++i) CHECK(states_equal(s2->field.at(i, j), f2.at(i, j)));
    }
  }

  SUBCASE("corrupt or missing files load as empty") {
    CHECK(!load_snapshot(dir / "no_such.snap").has_value());
    fs::resize_file(file, 40);
    CHECK(!load_snapshot(file).has_value());
    std::ofstream bad(dir / "bad.snap", std::ios::binary);
    bad << "NOTASNAP and some trailing garbage";
    bad.close();
    CHECK(!load_snapshot(dir / "bad.snap").has_value());
  }
}

TEST_CASE("references are cached and reproducible") {
  const fs::path dir = fresh_dir("wfv_ref_cache_test");
  auto spec = make_problem(problem_id::advect_sine);

  auto r1 = reference_solution(spec, 40, dir);
  CHECK(r1.g.nx == 40);
  CHECK(r1.time == doctest::Approx(2.0).epsilon(1e-12));
  int files = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    ++files;
    CHECK(e.path().extension() == ".snap");
  }
  CHECK(files == 1);

  auto r2 = reference_solution(spec, 40, dir);
  for (int i = 0; i < 40; ++i) CHECK(states_equal(r2.at(i), r1.at(i)));

  // a clobbered cache entry is recomputed, and deterministically so
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ofstream junk(e.path(), std::ios::binary | std::ios::trunc);
    junk << "junk";
  }
  auto r3 = reference_solution(spec, 40, dir);
  for (int i = 0; i < 40; ++i) CHECK(states_equal(r3.at(i), r1.at(i)));
  for (const auto& e : fs::directory_iterator(dir)) {
    CHECK(load_snapshot(e.path()).has_value());
  }

  auto dmr = make_problem(problem_id::double_mach);
  CHECK_THROWS_AS((void)reference_solution(dmr, 10, dir), std::invalid_argument);
}

TEST_CASE("advection reference converges to the exact profile") {
  const fs::path dir = fresh_dir("wfv_ref_exact_test");
  auto spec = make_problem(problem_id::advect_sine);
  auto ref = reference_solution(spec, 1280, dir);
  auto n = error_norms(ref, exact_advect_density_averages(ref.g, 2.0));
  CHECK(n.l1 <= 1e-10);
}

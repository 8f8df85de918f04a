#include "wenofv/run.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <optional>

#include "wenofv/outputs.hpp"
#include "wenofv/solver.hpp"
#include "wenofv/version.hpp"

namespace wenofv {
namespace {

namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

run_manifest start_manifest(const run_config& c, const char* command) {
  run_manifest m;
  m.command = command;
  m.version = code_version;
  m.config_echo = echo_config(c);
  return m;
}

// Completes the manifest for a throw out of the execution path and maps the
// exception to the exit code: config_error after parsing still counts as a
// config error; everything else is a numerical failure.
int finish_failed(run_manifest& m, const fs::path& dir, const std::exception& e,
                  clock_type::time_point start) {
  const bool config_problem = dynamic_cast<const config_error*>(&e) != nullptr;
  m.status = config_problem ? "config_error" : "numerical_failure";
  m.failure = e.what();
  m.wall_seconds = seconds_since(start);
  write_manifest(dir / "manifest.json", m);
  std::fprintf(stderr, "%s: %s\n", config_problem ? "config error" : "numerical failure",
               e.what());
  return config_problem ? exit_config_error : exit_numerical_failure;
}

}  // namespace

fs::path output_root() {
  const char* env = std::getenv("WENOFV_OUTPUT_ROOT");
  return env && *env ? fs::path(env) : fs::path("./out");
}

fs::path output_directory(const run_config& c) {
  return c.output_dir ? fs::path(*c.output_dir) : output_root() / c.problem;
}

int run_single(const run_config& c) {
  const fs::path dir = output_directory(c);
  run_manifest m = start_manifest(c, "run");
  const auto start = clock_type::now();

  std::optional<conserved_field> f;
  long last_step = 0;
  try {
    const problem_spec ps = resolve_problem(c);
    const recon_config rc = resolve_recon(c);
    const time_controls tc = resolve_time(c, ps);

    f.emplace(init_problem(ps));
    m.initial_totals = conserved_totals(*f);

    std::vector<observer> obs;
    obs.push_back({1, 0.0, [&last_step](const conserved_field&, long step) { last_step = step; }});
    if (c.every_steps > 0 || c.every_time > 0.0) {
      obs.push_back({static_cast<long>(c.every_steps), c.every_time,
                     [&](const conserved_field& fld, long step) {
                       char stem[32];
                       std::snprintf(stem, sizeof stem, "step_%08ld", step);
                       for (const fs::path& p : emit_outputs(dir, stem, fld, ps.gas, c.formats)) {
                         m.artifacts.push_back(p.filename().string());
                       }
                     }});
    }

    const advance_stats st = advance(*f, tc, ps.bc, rc, c.flux, ps.gas, ps.source, c.exec, obs);
    for (const fs::path& p : emit_outputs(dir, "final", *f, ps.gas, c.formats)) {
      m.artifacts.push_back(p.filename().string());
    }
    m.status = "success";
    m.steps = st.steps;
    m.wall_seconds = seconds_since(start);
    m.t_final = f->time;
    m.final_totals = st.final_totals;
    write_manifest(dir / "manifest.json", m);
    return exit_success;
  } catch (const std::exception& e) {
    m.steps = last_step;
    if (f) {
      m.t_final = f->time;
      m.final_totals = conserved_totals(*f);  // possibly non-physical; recorded as-is
    }
    return finish_failed(m, dir, e, start);
  }
}

int run_study(const run_config& c) {
  const fs::path dir = output_directory(c);
  run_manifest m = start_manifest(c, "study");
  const auto start = clock_type::now();

  try {
    problem_spec ps = resolve_problem(c);
    if (ps.id != problem_id::advect_sine) {
      throw config_error(config_error_kind::unknown_value, "problem", 0,
                         "study needs the exact solution of advect_sine, not '" + c.problem + "'");
    }
    ps.time = resolve_time(c, ps);

    std::vector<recon_config> schemes;
    for (const weight_kind k : c.study_weights) {
      recon_config rc = resolve_recon(c);
      rc.weights.kind = k;
      schemes.push_back(rc);
    }

    const std::vector<error_report> reports =
        convergence_study(ps, schemes, c.study_resolutions, c.law, c.flux, c.exec);

    const fs::path csv = dir / "study.csv";
    fs::create_directories(dir);
    write_study_csv(csv, ps.g, reports);
    m.artifacts.push_back(csv.filename().string());
    m.status = "success";
    m.wall_seconds = seconds_since(start);
    m.t_final = ps.time.t_end;
    write_manifest(dir / "manifest.json", m);
    return exit_success;
  } catch (const std::exception& e) {
    return finish_failed(m, dir, e, start);
  }
}

int run_reference(const run_config& c) {
  const fs::path dir = output_directory(c);
  run_manifest m = start_manifest(c, "reference");
  const auto start = clock_type::now();

  try {
    if (!c.reference_n) {
      throw config_error(config_error_kind::missing_required, "reference.n", 0,
                         "the reference subcommand needs reference.n");
    }
    const problem_spec ps = resolve_problem(c);
    const fs::path cache =
        c.reference_dir ? fs::path(*c.reference_dir) : output_root() / "reference_cache";

    const conserved_field ref = reference_solution(ps, *c.reference_n, cache);
    m.status = "success";
    m.wall_seconds = seconds_since(start);
    m.t_final = ref.time;
    m.initial_totals = conserved_totals(init_problem(ps, ref.g));
    m.final_totals = conserved_totals(ref);
    m.artifacts.push_back(reference_snapshot_path(ps, *c.reference_n, cache).string());
    write_manifest(dir / "manifest.json", m);
    return exit_success;
  } catch (const std::exception& e) {
    return finish_failed(m, dir, e, start);
  }
}

}  // namespace wenofv

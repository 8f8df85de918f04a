#include "wenofv/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

namespace wenofv {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// One key=value assignment in flight; carries enough context to format
// "origin:line: ..." diagnostics from any depth of the value parsers.
struct assignment {
  std::string_view origin;
  int line = 0;  // 0 for overrides
  std::string_view key;
  std::string_view value;
};

[[noreturn]] void fail(const assignment& a, config_error_kind kind, const std::string& msg) {
  std::string where(a.origin);
  if (a.line > 0) where += ":" + std::to_string(a.line);
  throw config_error(kind, std::string(a.key), a.line, where + ": " + msg);
}

long long parse_integer(const assignment& a, std::string_view v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    fail(a, config_error_kind::type_mismatch,
         "key '" + std::string(a.key) + "' expects an integer, got '" + std::string(v) + "'");
  }
  return out;
}

double parse_real(const assignment& a, std::string_view v) {
  // strtod over from_chars: accepts "1e-3" and friends uniformly and lets us
  // insist on full-string consumption.
  const std::string s(v);
  char* end = nullptr;
  const double out = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty()) {
    fail(a, config_error_kind::type_mismatch,
         "key '" + std::string(a.key) + "' expects a number, got '" + std::string(v) + "'");
  }
  return out;
}

[[noreturn]] void bad_value(const assignment& a, std::string_view v, std::string_view allowed) {
  fail(a, config_error_kind::unknown_value,
       "key '" + std::string(a.key) + "': unknown value '" + std::string(v) + "' (expected " +
           std::string(allowed) + ")");
}

template <typename T, std::size_t N>
T parse_choice(const assignment& a, std::string_view v,
               const std::pair<std::string_view, T> (&table)[N], std::string_view allowed) {
  for (const auto& [name, val] : table) {
    if (v == name) return val;
  }
  bad_value(a, v, allowed);
}

constexpr std::pair<std::string_view, recon_order> order_names[] = {
    {"weno5", recon_order::weno5}, {"weno6", recon_order::weno6}};
constexpr std::pair<std::string_view, weight_kind> weight_names[] = {
    {"linear", weight_kind::linear}, {"js", weight_kind::js}, {"z", weight_kind::z}};
constexpr std::pair<std::string_view, recon_vars> vars_names[] = {
    {"characteristic", recon_vars::characteristic}, {"component", recon_vars::component}};
constexpr std::pair<std::string_view, flux_kind> flux_names[] = {{"hllc", flux_kind::hllc},
                                                                 {"llf", flux_kind::llf}};
constexpr std::pair<std::string_view, dt_law> law_names[] = {
    {"cfl", dt_law::cfl}, {"c_dx", dt_law::c_dx}, {"dx_squared", dt_law::dx_squared}};
constexpr std::pair<std::string_view, exec_mode> exec_names[] = {
    {"serial", exec_mode::serial}, {"openmp", exec_mode::openmp}};
constexpr std::pair<std::string_view, rt_speed_mode> rt_c_names[] = {
    {"local", rt_speed_mode::local}, {"uniform", rt_speed_mode::uniform}};

template <typename T, std::size_t N>
std::string_view choice_name(T val, const std::pair<std::string_view, T> (&table)[N]) {
  for (const auto& [name, v] : table) {
    if (v == val) return name;
  }
  return "?";  // unreachable for in-range enums
}

std::vector<std::string_view> split_list(const assignment& a, std::string_view v) {
  std::vector<std::string_view> items;
  std::size_t start = 0;
  while (start <= v.size()) {
    const std::size_t comma = v.find(',', start);
    const std::string_view raw =
        comma == std::string_view::npos ? v.substr(start) : v.substr(start, comma - start);
    const std::string_view item = trim(raw);
    if (item.empty()) {
      fail(a, config_error_kind::type_mismatch,
           "key '" + std::string(a.key) + "': empty item in list '" + std::string(v) + "'");
    }
    items.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

int parse_cell_count(const assignment& a, std::string_view v) {
  const long long n = parse_integer(a, v);
  if (n < 6 || n > 100'000'000) {
    fail(a, config_error_kind::unknown_value,
         "key '" + std::string(a.key) + "': cell count " + std::string(v) +
             " out of range (need 6 <= n <= 1e8)");
  }
  return static_cast<int>(n);
}

double parse_positive(const assignment& a, std::string_view v) {
  const double x = parse_real(a, v);
  if (!(x > 0.0)) {
    fail(a, config_error_kind::unknown_value,
         "key '" + std::string(a.key) + "': value must be positive, got '" + std::string(v) + "'");
  }
  return x;
}

void apply(run_config& c, const assignment& a) {
  const std::string_view k = a.key;
  const std::string_view v = a.value;

  if (k == "problem") {
    if (!problem_from_name(v)) {
      bad_value(a, v,
                "advect_sine, blast_wave, shu_osher, titarev_toro, double_mach, riemann2d_shocks, "
                "riemann2d_contacts, rayleigh_taylor");
    }
    c.problem = std::string(v);
  } else if (k == "problem.nx") {
    c.nx = parse_cell_count(a, v);
  } else if (k == "problem.ny") {
    c.ny = parse_cell_count(a, v);
  } else if (k == "problem.t_end") {
    const double t = parse_real(a, v);
    if (t < 0.0) {
      fail(a, config_error_kind::unknown_value, "key 'problem.t_end': negative time");
    }
    c.t_end = t;
  } else if (k == "problem.gamma") {
    const double g = parse_real(a, v);
    if (!(g > 1.0)) {
      fail(a, config_error_kind::unknown_value, "key 'problem.gamma': need gamma > 1");
    }
    c.gamma = g;
  } else if (k == "problem.rt_sound_speed") {
    c.rt_sound_speed = parse_choice(a, v, rt_c_names, "local, uniform");
  } else if (k == "scheme.kind") {
    c.scheme = parse_choice(a, v, order_names, "weno5, weno6");
  } else if (k == "scheme.weights") {
    c.weights.kind = parse_choice(a, v, weight_names, "linear, js, z");
  } else if (k == "scheme.p") {
    const long long p = parse_integer(a, v);
    if (p < 1 || p > 8) {
      fail(a, config_error_kind::unknown_value, "key 'scheme.p': need 1 <= p <= 8");
    }
    c.weights.p = static_cast<int>(p);
  } else if (k == "scheme.q") {
    const long long q = parse_integer(a, v);
    if (q < 1 || q > 8) {
      fail(a, config_error_kind::unknown_value, "key 'scheme.q': need 1 <= q <= 8");
    }
    c.weights.q = static_cast<int>(q);
  } else if (k == "scheme.epsilon") {
    c.weights.epsilon = parse_positive(a, v);
  } else if (k == "variables") {
    c.vars = parse_choice(a, v, vars_names, "characteristic, component");
  } else if (k == "flux") {
    c.flux = parse_choice(a, v, flux_names, "hllc, llf");
  } else if (k == "time.dt_law") {
    c.law = parse_choice(a, v, law_names, "cfl, c_dx, dx_squared");
  } else if (k == "time.cfl") {
    c.cfl = parse_positive(a, v);
  } else if (k == "time.dt_coef") {
    c.dt_coef = parse_positive(a, v);
  } else if (k == "run.exec") {
    c.exec = parse_choice(a, v, exec_names, "serial, openmp");
  } else if (k == "output.dir") {
    c.output_dir = std::string(v);
  } else if (k == "output.formats") {
    std::vector<std::string> formats;
    for (const std::string_view item : split_list(a, v)) {
      if (item != "csv" && item != "vtk") bad_value(a, item, "csv, vtk");
      formats.emplace_back(item);
    }
    c.formats = std::move(formats);
  } else if (k == "output.every_steps") {
    const long long n = parse_integer(a, v);
    if (n < 0) {
      fail(a, config_error_kind::unknown_value, "key 'output.every_steps': need n >= 0");
    }
    c.every_steps = n;
  } else if (k == "output.every_time") {
    const double t = parse_real(a, v);
    if (t < 0.0) {
      fail(a, config_error_kind::unknown_value, "key 'output.every_time': need t >= 0");
    }
    c.every_time = t;
  } else if (k == "study.resolutions") {
    std::vector<int> res;
    for (const std::string_view item : split_list(a, v)) {
      res.push_back(parse_cell_count(a, item));
    }
    for (std::size_t i = 1; i < res.size(); ++i) {
      if (res[i] != 2 * res[i - 1]) {
        fail(a, config_error_kind::unknown_value,
             "key 'study.resolutions': each resolution must double the previous one");
      }
    }
    c.study_resolutions = std::move(res);
  } else if (k == "study.weights") {
    std::vector<weight_kind> kinds;
    for (const std::string_view item : split_list(a, v)) {
      kinds.push_back(parse_choice(a, item, weight_names, "linear, js, z"));
    }
    c.study_weights = std::move(kinds);
  } else if (k == "reference.n") {
    c.reference_n = parse_cell_count(a, v);
  } else if (k == "reference.dir") {
    c.reference_dir = std::string(v);
  } else {
    fail(a, config_error_kind::unknown_key, "unknown key '" + std::string(k) + "'");
  }
}

bool valid_key_chars(std::string_view k) {
  for (const char ch : k) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                    (ch >= '0' && ch <= '9') || ch == '_' || ch == '.';
    if (!ok) return false;
  }
  return !k.empty();
}

void apply_line(run_config& c, assignment a, std::string_view content) {
  const std::size_t eq = content.find('=');
  if (eq == std::string_view::npos) {
    a.key = trim(content);
    fail(a, config_error_kind::type_mismatch, "expected 'key = value', got '" +
                                                  std::string(trim(content)) + "'");
  }
  a.key = trim(content.substr(0, eq));
  a.value = trim(content.substr(eq + 1));
  if (!valid_key_chars(a.key)) {
    fail(a, config_error_kind::unknown_key, "malformed key '" + std::string(a.key) + "'");
  }
  if (a.value.empty()) {
    fail(a, config_error_kind::type_mismatch, "key '" + std::string(a.key) + "' has no value");
  }
  apply(c, a);
}

std::string format_real(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace

run_config parse_config_text(std::string_view text, const std::vector<std::string>& overrides,
                             std::string_view origin) {
  run_config c;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      apply_line(c, assignment{origin, line_no, {}, {}}, line);
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }

  for (const std::string& ov : overrides) {
    apply_line(c, assignment{"override", 0, {}, {}}, ov);
  }

  if (c.problem.empty()) {
    throw config_error(config_error_kind::missing_required, "problem", 0,
                       std::string(origin) + ": missing required key 'problem'");
  }
  return c;
}

run_config parse_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw config_error(config_error_kind::io_error, path, 0,
                       "cannot read config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), overrides, path);
}

std::string echo_config(const run_config& c) {
  std::string out;
  const auto kv = [&out](std::string_view key, std::string_view value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };

  kv("problem", c.problem);
  if (c.nx) kv("problem.nx", std::to_string(*c.nx));
  if (c.ny) kv("problem.ny", std::to_string(*c.ny));
  if (c.t_end) kv("problem.t_end", format_real(*c.t_end));
  if (c.gamma) kv("problem.gamma", format_real(*c.gamma));
  if (c.rt_sound_speed) kv("problem.rt_sound_speed", choice_name(*c.rt_sound_speed, rt_c_names));

  kv("scheme.kind", choice_name(c.scheme, order_names));
  kv("scheme.weights", choice_name(c.weights.kind, weight_names));
  kv("scheme.p", std::to_string(c.weights.p));
  kv("scheme.q", std::to_string(c.weights.q));
  kv("scheme.epsilon", format_real(c.weights.epsilon));
  kv("variables", choice_name(c.vars, vars_names));
  kv("flux", choice_name(c.flux, flux_names));
  kv("time.dt_law", choice_name(c.law, law_names));
  kv("time.cfl", format_real(c.cfl));
  kv("time.dt_coef", format_real(c.dt_coef));
  kv("run.exec", choice_name(c.exec, exec_names));

  if (c.output_dir) kv("output.dir", *c.output_dir);
  if (!c.formats.empty()) {
    std::string joined;
    for (const std::string& f : c.formats) {
      if (!joined.empty()) joined += ", ";
      joined += f;
    }
    kv("output.formats", joined);
  }
  kv("output.every_steps", std::to_string(c.every_steps));
  kv("output.every_time", format_real(c.every_time));

  {
    std::string joined;
    for (const int n : c.study_resolutions) {
      if (!joined.empty()) joined += ", ";
      joined += std::to_string(n);
    }
    kv("study.resolutions", joined);
  }
  {
    std::string joined;
    for (const weight_kind w : c.study_weights) {
      if (!joined.empty()) joined += ", ";
      joined += choice_name(w, weight_names);
    }
    kv("study.weights", joined);
  }

  if (c.reference_n) kv("reference.n", std::to_string(*c.reference_n));
  if (c.reference_dir) kv("reference.dir", *c.reference_dir);
  return out;
}

problem_spec resolve_problem(const run_config& c) {
  const std::optional<problem_id> id = problem_from_name(c.problem);
  if (!id) {
    throw config_error(config_error_kind::unknown_value, "problem", 0,
                       "unknown problem '" + c.problem + "'");
  }
  problem_spec ps = make_problem(*id);
  if (c.nx || c.ny) {
    ps = make_problem(*id, c.nx.value_or(ps.g.nx), c.ny.value_or(ps.g.ny));
  }
  if (c.t_end) ps.time.t_end = *c.t_end;
  if (c.gamma) {
    ps.gas.gamma = *c.gamma;
    ps.bc.gas = ps.gas;
  }
  if (c.rt_sound_speed) ps.rt_c = *c.rt_sound_speed;
  return ps;
}

recon_config resolve_recon(const run_config& c) {
  recon_config rc;
  rc.order = c.scheme;
  rc.vars = c.vars;
  rc.weights = c.weights;
  return rc;
}

time_controls resolve_time(const run_config& c, const problem_spec& ps) {
  time_controls tc;
  tc.law = c.law;
  tc.cfl = c.cfl;
  tc.dt_coef = c.dt_coef;
  tc.t_end = c.t_end.value_or(ps.time.t_end);
  return tc;
}

}  // namespace wenofv

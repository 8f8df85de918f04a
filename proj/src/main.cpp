#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wenofv/run.hpp"
#include "wenofv/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume Euler solver with fifth/sixth-order WENO reconstruction"};
  app.set_version_flag("--version", wenofv::code_version);
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;

  const auto add_command = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("config", config_path, "configuration file")->required();
    sub->add_option("overrides", overrides, "key=value settings applied after the file");
    return sub;
  };
  CLI::App* cmd_run = add_command("run", "advance one problem to t_end and write snapshots");
  CLI::App* cmd_study = add_command("study", "advection convergence table over study.resolutions");
  add_command("reference", "compute and cache a fine-grid reference solution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints message or help text
    return rc == 0 ? wenofv::exit_success : wenofv::exit_config_error;
  }

  try {
    const wenofv::run_config c = wenofv::parse_config(config_path, overrides);
    if (cmd_run->parsed()) return wenofv::run_single(c);
    if (cmd_study->parsed()) return wenofv::run_study(c);
    return wenofv::run_reference(c);
  } catch (const wenofv::config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return wenofv::exit_config_error;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return wenofv::exit_numerical_failure;
  }
}

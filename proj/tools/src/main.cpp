#include <cstdio>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "mmsim/cli/runners.hpp"
#include "mmsim/errors.hpp"

namespace {

using Runner = mmsim::cli::RunOutcome (*)(const mmsim::cli::RunConfig&, const mmsim::cli::RunOptions&);

void print_checks(const mmsim::cli::RunOutcome& outcome) {
  for (const auto& c : outcome.checks) {
    const char* status = c.passed ? "PASS" : (c.enforced ? "FAIL" : "NOTE");
    std::printf("%-4s %-60s %s  (%s)\n", status, c.name.c_str(), mmsim::cli::format_number(c.value).c_str(),
                c.detail.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Micro-macro entanglement model runner"};
  app.set_version_flag("--version", mmsim::cli::version());
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  bool svg = false;
  int jobs = 1;
  bool print_schema = false;

  app.add_option("--config", config_path, "configuration file (section.key = value)")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "master seed");
  app.add_flag("--svg", svg, "also write SVG charts");
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 1024));
  app.add_flag("--print-config", print_schema, "print the effective configuration and exit");

  const std::map<std::string, std::pair<Runner, const char*>> commands = {
      {"curves", {mmsim::cli::run_curves, "witness curves against |alpha|^2 with parameter bands"}},
      {"size", {mmsim::cli::run_size, "macroscopicity: guessing probability and effective size"}},
      {"hom", {mmsim::cli::run_hom, "two-photon interference visibility and temporal overlap"}},
      {"detailed", {mmsim::cli::run_detailed, "detailed SPDC model against the Monte-Carlo oracle"}},
      {"tomo", {mmsim::cli::run_tomo, "simulated tomography and maximum-likelihood reconstruction"}},
      {"validate", {mmsim::cli::run_validate, "invariant and anchor suite; exit 1 on any failure"}},
  };
  for (const auto& [name, entry] : commands) app.add_subcommand(name, entry.second);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  mmsim::cli::RunConfig config;
  try {
    config = config_path.empty() ? mmsim::cli::RunConfig::defaults() : mmsim::cli::RunConfig::load(config_path);
  } catch (const mmsim::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  if (print_schema) {
    std::cout << config.canonical();
    return 0;
  }

  const mmsim::cli::RunOptions options{out_dir, seed, svg, jobs};
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    const mmsim::cli::RunOutcome outcome = commands.at(name).first(config, options);
    mmsim::cli::write_tables(outcome, config, options);
    print_checks(outcome);
    return name == "validate" && !outcome.passed() ? 1 : 0;
  } catch (const mmsim::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const mmsim::Error& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

#include <chrono>
#include <cstdio>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dnls/harness.hpp"

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  std::string format;
  bool timing = false;
};

void print_summary(const dnls::ExperimentReport& r) {
  std::printf("%s: %s\n", r.kind.c_str(), r.status().c_str());
  for (const auto& c : r.channels) {
    if (!c.fit) continue;
    std::printf("  %-24s slope %8.4f", c.name.c_str(), c.fit->slope);
    if (c.asserted()) std::printf("  target %.3f +- %.2f  %s", c.target, c.tolerance, c.passed() ? "ok" : "FAIL");
    std::printf("\n");
  }
  for (const auto& c : r.checks)
    std::printf("  %-24s %.6g (limit %.6g)  %s\n", c.name.c_str(), c.value, c.limit, c.passed() ? "ok" : "FAIL");
}

int run(const std::string& subcommand, const Flags& f) {
  auto config = dnls::load_config(f.config);
  if (dnls::to_string(config.kind) != subcommand)
    throw dnls::ConfigError("config kind '" + dnls::to_string(config.kind) + "' does not match subcommand '" +
                            subcommand + "'");
  if (f.seed) config.seed = *f.seed;
  if (!f.format.empty()) config.format = f.format;
  if (!f.out.empty()) config.output_dir = f.out;
  config.validate();

  dnls::RunOptions options;
  options.jobs = f.jobs;
  options.out_dir = config.output_dir;
  const auto start = std::chrono::steady_clock::now();
  auto report = dnls::run_experiment(config, options);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (f.timing) report.runtime_s = elapsed;
  dnls::write_report(report, config.output_dir, config.format);
  print_summary(report);
  std::fprintf(stderr, "wall time %.2f s\n", elapsed);
  return report.pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuum-limit experiments for the discrete nonlinear Schroedinger equation"};
  app.require_subcommand(1);
  Flags flags;
  const char* kinds[] = {"simulate", "converge", "linear-flow", "interp-test", "aliasing", "growth", "functional-check"};
  for (const char* kind : kinds) {
    auto* sub = app.add_subcommand(kind);
    sub->add_option("--config", flags.config, "experiment INI file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out, "output directory (overrides output.dir)");
    sub->add_option("--seed", flags.seed, "random seed (overrides experiment.seed)");
    sub->add_option("--jobs", flags.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--timing", flags.timing, "record wall time in report.json");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 1;
  }

  const std::string subcommand = app.get_subcommands().front()->get_name();
  try {
    return run(subcommand, flags);
  } catch (const dnls::BlowUpError& e) {
    std::cerr << "error: " << e.what() << " (last healthy t = " << e.last_healthy_time() << ")\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 1;
}

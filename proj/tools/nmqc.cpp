#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "nmqc/cli.hpp"
#include "nmqc/config.hpp"

// Command-line front end: loads a JSON job description, applies flag
// overrides and dispatches to the library. Exit codes: 0 success,
// 2 config error, 3 numerical non-convergence.
int main(int argc, char** argv) {
  CLI::App app{"Bounds and simulations for computing Boolean functions by "
               "non-adaptive measurements on GHZ states with XOR side-processing"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string format_name = "text";
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  int starts = 0;
  int workers = 0;
  double tolerance = 0.0;

  app.add_option("--config", config_path, "path to the JSON job description")->required();
  app.add_option("--format", format_name, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed override");
  auto* trials_opt = app.add_option("--trials", trials, "Monte Carlo trials override");
  auto* starts_opt = app.add_option("--starts", starts, "optimizer multi-start count override");
  auto* workers_opt = app.add_option("--workers", workers, "simulation worker count override");
  auto* tol_opt = app.add_option("--tolerance", tolerance,
                                 "optimizer gradient-norm convergence override");

  for (const char* task : {"classical-bound", "quantum-bound", "tripartite-bound", "simulate",
                           "report"})
    app.add_subcommand(task);

  CLI11_PARSE(app, argc, argv);

  try {
    nmqc::config::JobConfig job = nmqc::config::load_config(config_path);
    if (!app.get_subcommands().empty()) job.task = app.get_subcommands().front()->get_name();
    if (seed_opt->count() > 0) job.options.seed = seed;
    if (trials_opt->count() > 0) job.options.trials = trials;
    if (starts_opt->count() > 0) job.options.starts = starts;
    if (workers_opt->count() > 0) job.options.workers = workers;
    if (tol_opt->count() > 0) job.options.tolerance = tolerance;

    const nmqc::cli::Format format =
        format_name == "json" ? nmqc::cli::Format::json : nmqc::cli::Format::text;
    const nmqc::cli::RunOutcome outcome = nmqc::cli::run_job(job, format);
    if (outcome.exit_code == nmqc::cli::kExitConfig) {
      std::fprintf(stderr, "error: %s\n", outcome.output.c_str());
    } else {
      std::fprintf(stdout, "%s\n", outcome.output.c_str());
    }
    return outcome.exit_code;
  } catch (const nmqc::config::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return nmqc::cli::kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

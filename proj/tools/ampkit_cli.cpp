// Command-line driver for the toolkit's experiment families. Every
// subcommand reads a JSON config (schema ampkit-config/1), runs the
// corresponding experiment, and writes CSV/JSON outputs into --out.
//
// Exit codes: 0 success, 1 configuration error, 2 numeric divergence.
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ampkit/errors.hpp"
#include "ampkit/experiments.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string out_dir;
  std::string scale;
  std::uint64_t seed = 0;
  bool seed_set = false;
  unsigned threads = 0;
  bool threads_set = false;
};

int run(const std::string& experiment, const CliOptions& options) {
  ampkit::ExperimentConfig config =
      ampkit::ExperimentConfig::from_file(options.config_path);
  if (config.experiment !=
      ampkit::experiment_kind_from_string(experiment)) {
    throw ampkit::ConfigError("config is for \"" +
                              std::string(to_string(config.experiment)) +
                              "\" but the subcommand is \"" + experiment +
                              "\"");
  }
  if (!options.out_dir.empty()) config.out_dir = options.out_dir;
  if (options.seed_set) config.seeds = {options.seed};
  if (options.threads_set) config.threads = options.threads;
  if (!options.scale.empty() && options.scale != config.scale) {
    // Scale changes the defaults, so reparse with the override applied.
    throw ampkit::ConfigError(
        "--scale must match the config's \"scale\" field (" + config.scale +
        "); set it in the config file");
  }

  const ampkit::CommandResult result = ampkit::run_experiment(config);
  for (const std::string& file : result.files) {
    std::cout << "wrote " << file << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse estimation with fast structured operators: AMP solver, "
               "state evolution, and superposition codes"};
  app.require_subcommand(1);

  CliOptions options;
  const std::vector<std::string> experiments = {"cs-run",   "cs-phase",
                                                "se-phase", "bench",
                                                "code-run", "code-sweep"};
  for (const std::string& name : experiments) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", options.config_path, "JSON config file")
        ->required();
    sub->add_option("--out", options.out_dir, "output directory override");
    sub->add_option("--seed", options.seed, "replace the config's seed list")
        ->trigger_on_parse()
        ->each([&options](const std::string&) { options.seed_set = true; });
    sub->add_option("--threads", options.threads, "worker thread count")
        ->trigger_on_parse()
        ->each([&options](const std::string&) { options.threads_set = true; });
    sub->add_option("--scale", options.scale, "desk or paper (must match config)");
  }

  CLI11_PARSE(app, argc, argv);

  const std::string experiment = app.get_subcommands().front()->get_name();
  try {
    return run(experiment, options);
  } catch (const ampkit::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const ampkit::DivergenceError& e) {
    std::cerr << "numeric divergence at iteration " << e.iteration() << ": "
              << e.what() << "\n";
    return 2;
  } catch (const ampkit::ConstructionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "shellkit/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"shell model toolbox: geometry, strains, energies, coercivity, invariance, "
               "minimization"};
  std::string command, config_path, out_path;
  std::uint64_t seed = 0;
  app.add_option("command", command,
                 "one of: geometry, identities, strains, energy, coercivity, invariance, minimize")
      ->required();
  app.add_option("--config", config_path, "path to the JSON run configuration")->required();
  app.add_option("--out", out_path, "output path (overrides output.path in the config)");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (overrides seed in the config)");
  CLI11_PARSE(app, argc, argv);

  std::ifstream is(config_path);
  if (!is) {
    std::cerr << "error: config: cannot open " << config_path << "\n";
    return 1;
  }
  nlohmann::json cfg;
  try {
    is >> cfg;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 1;
  }
  cfg["command"] = command;  // the positional argument selects the command
  std::optional<std::uint64_t> seed_override;
  if (seed_opt->count() > 0) seed_override = seed;
  return shellkit::cli::run(cfg, std::cerr, out_path, seed_override);
}

// spinring command-line front end.
//
//   spinring run --config FILE [--set key=value]... [--out DIR]
//   spinring figure fig1..fig8 [--out DIR]
//   spinring sweep --config FILE --axis NAME --values LIST [--set key=value]... [--out DIR]
//   spinring validate --config FILE [--set key=value]... [--json]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.
// Relative output paths are resolved against $SPINRING_OUTPUT_ROOT when set.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spinring/errors.hpp"
#include "spinring/experiment.hpp"

namespace fs = std::filesystem;
using namespace spinring;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

fs::path resolve(const fs::path& p) {
  const char* root = std::getenv("SPINRING_OUTPUT_ROOT");
  if (p.is_absolute() || !root || !*root) return p;
  return fs::path(root) / p;
}

ExperimentConfig load(const std::string& file, const std::vector<std::string>& overrides) {
  std::ifstream is(file);
  if (!is) throw DomainError("cannot read config file " + file);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(file + ": " + e.what());
  }
  for (const auto& o : overrides) apply_override(doc, o);
  return config_from_json(doc);
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> values;
  std::string item;
  std::istringstream is(list);
  while (std::getline(is, item, ',')) values.push_back(parse_scalar(item));
  if (values.empty()) throw DomainError("--values: empty list");
  return values;
}

void report(const fs::path& dir, const std::vector<fs::path>& files) {
  std::cout << "bundle " << dir.string() << '\n';
  for (const auto& f : files) std::cout << "  " << f.filename().string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinring: phase-modulated XY spin-ring simulator"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  std::string config_file;
  std::vector<std::string> overrides;
  std::string out_dir;

  auto* run_cmd = app.add_subcommand("run", "Evolve one configuration and write an output bundle");
  run_cmd->add_option("--config", config_file, "JSON configuration file")->required();
  run_cmd->add_option("--set", overrides, "Override a config value, key.path=value");
  run_cmd->add_option("--out", out_dir, "Output directory (default: outputs.dir from the config)");

  std::string figure;
  auto* fig_cmd = app.add_subcommand("figure", "Run a figure preset");
  fig_cmd->add_option("name", figure, "fig1 ... fig8")->required()->check(CLI::IsMember(figure_names()));
  fig_cmd->add_option("--out", out_dir, "Output directory (default: <figure name>)");

  std::string axis, values;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run one bundle per value of a scalar parameter");
  sweep_cmd->add_option("--config", config_file, "JSON configuration file")->required();
  sweep_cmd->add_option("--axis", axis, "harmonics | sigma_eta | sigma_delta | B_over_lambda | theta0")->required();
  sweep_cmd->add_option("--values", values, "Comma-separated values; pi expressions allowed")->required();
  sweep_cmd->add_option("--set", overrides, "Override a config value, key.path=value");
  sweep_cmd->add_option("--out", out_dir, "Sweep root (default: <name>-<axis>)");

  bool as_json = false;
  auto* validate_cmd = app.add_subcommand("validate", "Report sector sizes, memory, and control-law diagnostics");
  validate_cmd->add_option("--config", config_file, "JSON configuration file")->required();
  validate_cmd->add_option("--set", overrides, "Override a config value, key.path=value");
  validate_cmd->add_flag("--json", as_json, "Print diagnostics as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (run_cmd->parsed()) {
      const ExperimentConfig config = load(config_file, overrides);
      const fs::path dir = resolve(out_dir.empty() ? fs::path(config.outputs.dir) : fs::path(out_dir));
      const RunResult result = run(config, dir);
      report(result.dir, result.files);
    } else if (fig_cmd->parsed()) {
      const fs::path root = resolve(out_dir.empty() ? fs::path(figure) : fs::path(out_dir));
      for (const auto& dir : run_figure(figure, root)) std::cout << "bundle " << dir.string() << '\n';
    } else if (sweep_cmd->parsed()) {
      const ExperimentConfig config = load(config_file, overrides);
      const fs::path root = resolve(out_dir.empty() ? fs::path(config.name + "-" + axis) : fs::path(out_dir));
      for (const auto& dir : sweep(config, axis, parse_values(values), root)) {
        std::cout << "bundle " << dir.string() << '\n';
      }
      std::cout << "index " << (root / "index.json").string() << '\n';
    } else if (validate_cmd->parsed()) {
      const Diagnostics d = diagnose(load(config_file, overrides));
      if (as_json) {
        std::cout << d.data.dump(2) << '\n';
      } else {
        for (const auto& line : d.lines) std::cout << line << '\n';
        for (const auto& p : d.problems) std::cout << "problem: " << p << '\n';
      }
      return d.problems.empty() ? 0 : kExitConfig;
    }
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::bad_alloc&) {
    std::cerr << "numeric failure: out of memory\n";
    return kExitNumeric;
  }
  return 0;
}

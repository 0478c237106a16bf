#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spinring/disorder.hpp"
#include "spinring/observables.hpp"
#include "spinring/phase_schedule.hpp"
#include "spinring/propagator.hpp"
#include "spinring/sector_basis.hpp"

namespace spinring {

enum class PropagatorChoice {
  Auto,        // piecewise for constant/step schedules, integrator otherwise
  Piecewise,
  Integrator,
};

struct PlanSpec {
  double t_final = 20.0;
  /// Uniform sampling: intervals + 1 snapshots on [0, t_final].
  int intervals = 600;
  /// 0 = automatic.
  double integrator_step = 0.0;
  PropagatorChoice propagator = PropagatorChoice::Auto;
  bool operator==(const PlanSpec&) const = default;
};

struct OutputSpec {
  std::string dir = "out";
  /// Any of "overlap_map", "fidelity", "revivals".
  std::vector<std::string> observables = {"fidelity"};
  ProbeFamily probe = ProbeFamily::SiteBasis;
  /// Fidelity reference; empty means the initial state.
  StateSpec reference;
  bool operator==(const OutputSpec&) const = default;
};

struct ExperimentConfig {
  std::string name = "run";
  RingSpec ring;
  DisorderSpec disorder;
  PhaseSchedule schedule = ConstantPhase{};
  StateSpec initial;
  PlanSpec plan;
  OutputSpec outputs;
  bool operator==(const ExperimentConfig&) const = default;
};

nlohmann::json config_to_json(const ExperimentConfig& config);

/// Accepts nested objects or flat dotted keys ("ring.n_sites": 201).
/// Unknown keys are rejected with their path.
ExperimentConfig config_from_json(const nlohmann::json& j);

ExperimentConfig load_config(const std::filesystem::path& file);

/// Applies "key.path=value" overrides to a config document. Values are read
/// as JSON, then as a pi expression, then as a bare string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Parses "pi", "pi/2", "-3pi/4", "2*pi", "0.5" and similar.
double parse_scalar(const std::string& text);

/// Throws DomainError naming the offending field.
void validate(const ExperimentConfig& config);

struct RunResult {
  std::filesystem::path dir;
  std::vector<std::filesystem::path> files;
  Trajectory trajectory;
  FidelitySeries fidelity;
};

/// Evolves the configured state and writes the bundle
///   overlap_map.csv  t,d,value
///   fidelity.csv     t,value
///   revivals.csv     m,t,fidelity
///   disorder.csv     site,eta,delta
///   metadata.json    config, realized disorder, version, wall clock
/// into `dir` (config.outputs.dir when empty). CSV content is a pure
/// function of the config.
RunResult run(const ExperimentConfig& config, const std::filesystem::path& dir = {});

/// Trajectory only; nothing is written.
Trajectory simulate(const ExperimentConfig& config);

const std::vector<std::string>& sweep_axes();

/// Copy of `base` with one scalar replaced.
ExperimentConfig with_axis_value(const ExperimentConfig& base, const std::string& axis, double value);

/// One bundle per value in `<root>/<axis>-<index>`, plus `<root>/index.json`.
std::vector<std::filesystem::path> sweep(const ExperimentConfig& base, const std::string& axis,
                                         const std::vector<double>& values, const std::filesystem::path& root);

struct Diagnostics {
  std::vector<std::string> lines;
  std::vector<std::string> problems;
  nlohmann::json data;
};

/// Never throws for semantic problems; they are listed in `problems`.
Diagnostics diagnose(const ExperimentConfig& config);

/// "BT = 4π: cross-sector storage exact" style summary, or empty for a
/// constant phase.
std::string cross_sector_message(const RingSpec& ring, const PhaseSchedule& schedule);

// Figure presets.
struct PresetBundle {
  /// Relative subdirectory ("" for single-bundle figures).
  std::string subdir;
  ExperimentConfig config;
};

const std::vector<std::string>& figure_names();
std::vector<PresetBundle> figure_preset(const std::string& name);

/// Runs every bundle of a preset: a single bundle is written to `root`
/// itself, several go to `root/<subdir>` with an index.json in `root`.
std::vector<std::filesystem::path> run_figure(const std::string& name, const std::filesystem::path& root);

std::string version();

}  // namespace spinring

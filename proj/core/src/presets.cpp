#include <cmath>
#include <fstream>
#include <numbers>

#include <nlohmann/json.hpp>

#include "spinring/errors.hpp"
#include "spinring/experiment.hpp"
#include "spinring/serialization.hpp"

namespace spinring {
namespace {

constexpr double kPi = std::numbers::pi;

// Figs. 1-5: N = 201 keeps the 2 lambda t light cone clear of the far side of
// the ring over lambda t <= 20. Figs. 6-8 run 50 periods of lambda T = 2 pi,
// sampled 12 times per period so every m T is a grid point.
constexpr int kRingSites = 201;
constexpr double kWindow = 20.0;
constexpr int kWindowIntervals = 600;
constexpr double kPeriod = 2.0 * kPi;
constexpr int kPeriods = 50;
constexpr int kPeriodIntervals = 600;

StateSpec localized(int site) { return {{{cplx(1.0), {site}}}}; }

StateSpec pair_superposition(int a, int b) {
  const double w = 1.0 / std::sqrt(2.0);
  return {{{cplx(w), {a}}, {cplx(w), {b}}}};
}

// -(sqrt2/3)|Psi_20> + (1/3)|Psi_72> + sqrt(2/3)|Psi_{0,5}>
StateSpec mixed_sector_state() {
  return {{{cplx(-std::sqrt(2.0) / 3.0), {20}},
           {cplx(1.0 / 3.0), {72}},
           {cplx(std::sqrt(2.0 / 3.0)), {0, 5}}}};
}

ExperimentConfig window_config(const std::string& name, PhaseSchedule schedule, StateSpec initial,
                               std::vector<std::string> observables) {
  ExperimentConfig c;
  c.name = name;
  c.ring = {kRingSites, 100.0, 1.0, 1.0};
  c.schedule = schedule;
  c.initial = std::move(initial);
  c.plan.t_final = kWindow;
  c.plan.intervals = kWindowIntervals;
  c.outputs.observables = std::move(observables);
  c.outputs.probe = ProbeFamily::SiteBasis;
  return c;
}

ExperimentConfig periods_config(const std::string& name, RingSpec ring, PhaseSchedule schedule, StateSpec initial) {
  ExperimentConfig c;
  c.name = name;
  c.ring = ring;
  c.schedule = schedule;
  c.initial = std::move(initial);
  c.plan.t_final = kPeriods * kPeriod;
  c.plan.intervals = kPeriodIntervals;
  c.outputs.observables = {"fidelity", "revivals"};
  return c;
}

FourierTruncatedPhase fourier(int harmonics) { return {kPi / 2, kPeriod, harmonics, HarmonicCounting::OddTerms}; }

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
  return names;
}

std::vector<PresetBundle> figure_preset(const std::string& name) {
  const StateSpec psi0 = localized(0);
  const StateSpec pm = pair_superposition(1, -1);
  const PhaseSchedule unmodulated = ConstantPhase{kPi / 2};
  const std::vector<std::string> map_and_fidelity = {"overlap_map", "fidelity"};

  if (name == "fig1") return {{"", window_config(name, unmodulated, psi0, map_and_fidelity)}};
  if (name == "fig2") return {{"", window_config(name, unmodulated, pm, map_and_fidelity)}};
  if (name == "fig3") {
    return {
        {"unmodulated-psi0", window_config(name + "/unmodulated-psi0", unmodulated, psi0, {"fidelity"})},
        {"unmodulated-superposition",
         window_config(name + "/unmodulated-superposition", unmodulated, pm, {"fidelity"})},
        {"step-psi0-theta0-pi2",
         window_config(name + "/step-psi0-theta0-pi2", StepPeriodicPhase{kPi / 2, kPeriod}, psi0, {"fidelity"})},
        {"step-superposition-theta0-0",
         window_config(name + "/step-superposition-theta0-0", StepPeriodicPhase{0.0, kPeriod}, pm, {"fidelity"})},
        {"step-superposition-theta0-pi2", window_config(name + "/step-superposition-theta0-pi2",
                                                        StepPeriodicPhase{kPi / 2, kPeriod}, pm, {"fidelity"})},
    };
  }
  if (name == "fig4") {
    return {{"", window_config(name, StepPeriodicPhase{kPi / 2, kPeriod}, psi0, map_and_fidelity)}};
  }
  if (name == "fig5") {
    return {
        {"a", window_config(name + "/a", StepPeriodicPhase{-kPi / 2, kPeriod}, pm, map_and_fidelity)},
        {"b", window_config(name + "/b", StepPeriodicPhase{0.0, kPeriod}, pm, map_and_fidelity)},
    };
  }
  if (name == "fig6") {
    const PhaseSchedule step = StepPeriodicPhase{kPi / 2, kPeriod};
    return {
        {"a", periods_config(name + "/a", {90, 2.0, 1.0, 1.0}, step, mixed_sector_state())},
        {"b", periods_config(name + "/b", {90, 1.9, 1.0, 1.0}, step, mixed_sector_state())},
    };
  }
  const RingSpec ring{kRingSites, 100.0, 1.0, 1.0};
  if (name == "fig7") {
    std::vector<PresetBundle> out;
    for (int m : {5, 13, 25, 50, 100}) {
      const std::string sub = "harmonics-" + std::to_string(m);
      out.push_back({sub, periods_config(name + "/" + sub, ring, fourier(m), psi0)});
    }
    return out;
  }
  if (name == "fig8") {
    std::vector<PresetBundle> out;
    for (int m : {5, 25, 100}) {
      const std::string a = "psi0-harmonics-" + std::to_string(m);
      const std::string b = "superposition-harmonics-" + std::to_string(m);
      out.push_back({a, periods_config(name + "/" + a, ring, fourier(m), psi0)});
      out.push_back({b, periods_config(name + "/" + b, ring, fourier(m), pair_superposition(1, 0))});
    }
    return out;
  }
  std::string list;
  for (const auto& n : figure_names()) list += (list.empty() ? "" : ", ") + n;
  throw DomainError("unknown figure '" + name + "' (expected one of " + list + ")");
}

std::vector<std::filesystem::path> run_figure(const std::string& name, const std::filesystem::path& root) {
  const auto bundles = figure_preset(name);
  std::vector<std::filesystem::path> dirs;
  if (bundles.size() == 1 && bundles.front().subdir.empty()) {
    auto c = bundles.front().config;
    c.outputs.dir = root.string();
    dirs.push_back(run(c, root).dir);
    return dirs;
  }
  nlohmann::json list = nlohmann::json::array();
  for (const auto& b : bundles) {
    auto c = b.config;
    c.outputs.dir = (root / b.subdir).string();
    dirs.push_back(run(c, root / b.subdir).dir);
    list.push_back({{"dir", b.subdir}, {"name", c.name}});
  }
  const nlohmann::json index = {{"figure", name}, {"bundles", list}};
  std::ofstream os(root / "index.json", std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write " + (root / "index.json").string());
  os << index.dump(2) << '\n';
  if (!os) throw IoError("write failed: " + (root / "index.json").string());
  return dirs;
}

}  // namespace spinring

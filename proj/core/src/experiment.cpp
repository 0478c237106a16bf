#include "spinring/experiment.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include "spinring/errors.hpp"
#include "spinring/serialization.hpp"

namespace spinring {

std::string version() { return SPINRING_VERSION; }

namespace {

using nlohmann::json;

const char* to_string(PropagatorChoice c) {
  switch (c) {
    case PropagatorChoice::Piecewise: return "piecewise";
    case PropagatorChoice::Integrator: return "integrator";
    default: return "auto";
  }
}

PropagatorChoice propagator_from_string(const std::string& s) {
  if (s == "auto") return PropagatorChoice::Auto;
  if (s == "piecewise") return PropagatorChoice::Piecewise;
  if (s == "integrator") return PropagatorChoice::Integrator;
  throw DomainError("plan.propagator: expected auto, piecewise or integrator, got '" + s + "'");
}

const std::set<std::string> kObservables = {"overlap_map", "fidelity", "revivals"};

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw DomainError(path + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw DomainError((path.empty() ? key : path + "." + key) + ": unknown key (expected one of " + list + ")");
    }
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

json& walk(json& doc, const std::vector<std::string>& path, const std::string& full) {
  json* node = &doc;
  for (const auto& seg : path) {
    if (seg.empty()) throw DomainError("--set " + full + ": empty path segment");
    if (node->is_array()) {
      std::size_t pos = 0;
      std::size_t idx = 0;
      try {
        idx = std::stoul(seg, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != seg.size()) throw DomainError("--set " + full + ": '" + seg + "' is not an array index");
      if (idx >= node->size()) throw DomainError("--set " + full + ": index " + seg + " out of range");
      node = &(*node)[idx];
    } else {
      if (node->is_null()) *node = json::object();
      if (!node->is_object()) throw DomainError("--set " + full + ": '" + seg + "' addresses into a scalar");
      node = &(*node)[seg];
    }
  }
  return *node;
}

// Moves top-level "a.b.c" keys into nested objects.
json unflatten(const json& doc) {
  if (!doc.is_object()) throw DomainError("config: expected a JSON object at top level");
  json out = json::object();
  for (const auto& [key, value] : doc.items()) {
    if (key.find('.') == std::string::npos) {
      if (out.contains(key) && out[key].is_object() && value.is_object()) {
        out[key].update(value);
      } else {
        out[key] = value;
      }
    }
  }
  for (const auto& [key, value] : doc.items()) {
    if (key.find('.') != std::string::npos) walk(out, split(key, '.'), key) = value;
  }
  return out;
}

std::string utc_timestamp(std::chrono::system_clock::time_point tp) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ofstream open_output(const std::filesystem::path& file) {
  std::ofstream os(file, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write " + file.string());
  return os;
}

void finish(std::ofstream& os, const std::filesystem::path& file) {
  os.flush();
  if (!os) throw IoError("write failed: " + file.string());
}

bool wants(const OutputSpec& out, const std::string& what) {
  return std::find(out.observables.begin(), out.observables.end(), what) != out.observables.end();
}

template <class F>
void rethrow_with_prefix(const std::string& prefix, F&& f) {
  try {
    f();
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    if (msg.rfind(prefix, 0) == 0) throw;
    throw DomainError(prefix + ": " + msg);
  }
}

struct Prepared {
  DisorderRealization disorder;
  RealizedState initial;
  EvolutionPlan plan;
  bool piecewise = true;
};

Prepared prepare(const ExperimentConfig& config) {
  validate(config);
  Prepared p;
  p.disorder = sample_disorder(config.disorder, config.ring.n_sites);
  p.initial = realize_state(config.initial, config.ring.n_sites);
  p.plan = uniform_plan(config.schedule, config.plan.t_final, config.plan.intervals, config.plan.integrator_step);
  const bool smooth = std::holds_alternative<FourierTruncatedPhase>(config.schedule);
  switch (config.plan.propagator) {
    case PropagatorChoice::Auto: p.piecewise = !smooth; break;
    case PropagatorChoice::Piecewise: p.piecewise = true; break;
    case PropagatorChoice::Integrator: p.piecewise = false; break;
  }
  return p;
}

Trajectory evolve(const ExperimentConfig& config, const Prepared& p) {
  Trajectory traj = p.piecewise ? evolve_piecewise(p.initial.state, config.ring, p.disorder, p.plan)
                                : evolve_continuous(p.initial.state, config.ring, p.disorder, p.plan);
  traj.metadata["initial_renormalized"] = p.initial.renormalized;
  return traj;
}

std::string format_pi_multiple(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  std::string s = os.str();
  if (s == "1") return "π";
  if (s == "-1") return "-π";
  return s + "π";
}

}  // namespace

double parse_scalar(const std::string& text) {
  static const std::regex re(
      R"(^\s*([+-]?)\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(\*?\s*(?:pi|π))?\s*(?:/\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re) || (!m[2].matched && !m[3].matched)) {
    throw DomainError("cannot parse '" + text + "' as a number or pi expression");
  }
  double v = m[2].matched ? std::stod(m[2].str()) : 1.0;
  if (m[3].matched) v *= std::numbers::pi;
  if (m[4].matched) {
    const double den = std::stod(m[4].str());
    if (den == 0.0) throw DomainError("division by zero in '" + text + "'");
    v /= den;
  }
  return m[1].str() == "-" ? -v : v;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["ring"] = c.ring;
  j["disorder"] = c.disorder;
  j["schedule"] = schedule_to_json(c.schedule);
  j["initial"] = c.initial;
  j["plan"] = {{"t_final", c.plan.t_final},
               {"intervals", c.plan.intervals},
               {"integrator_step", c.plan.integrator_step},
               {"propagator", to_string(c.plan.propagator)}};
  j["outputs"] = {{"dir", c.outputs.dir}, {"observables", c.outputs.observables},
                  {"probe", to_string(c.outputs.probe)}};
  if (!c.outputs.reference.terms.empty()) j["outputs"]["reference"] = c.outputs.reference;
  return j;
}

ExperimentConfig config_from_json(const json& raw) {
  const json j = unflatten(raw);
  check_keys(j, "", {"name", "ring", "disorder", "schedule", "initial", "plan", "outputs"});
  ExperimentConfig c;
  c.name = detail::optional<std::string>(j, "name", "config", "run");
  if (!j.contains("ring")) throw DomainError("ring: missing required section");
  check_keys(j["ring"], "ring", {"n_sites", "b_field", "coupling", "hop_scale"});
  c.ring = ring_from_json(j["ring"]);
  if (j.contains("disorder")) {
    check_keys(j["disorder"], "disorder", {"eta", "delta", "seed", "gaussian_width"});
    c.disorder = disorder_from_json(j["disorder"]);
  }
  if (!j.contains("schedule")) throw DomainError("schedule: missing required section");
  check_keys(j["schedule"], "schedule", {"type", "theta0", "period", "harmonics", "harmonic_counting"});
  c.schedule = schedule_from_json(j["schedule"]);
  if (!j.contains("initial")) throw DomainError("initial: missing required section");
  c.initial = state_spec_from_json(j["initial"]);
  if (j.contains("plan")) {
    const auto& p = j["plan"];
    check_keys(p, "plan", {"t_final", "intervals", "integrator_step", "propagator"});
    c.plan.t_final = detail::optional<double>(p, "t_final", "plan", c.plan.t_final);
    c.plan.intervals = detail::optional<int>(p, "intervals", "plan", c.plan.intervals);
    c.plan.integrator_step = detail::optional<double>(p, "integrator_step", "plan", c.plan.integrator_step);
    c.plan.propagator = propagator_from_string(detail::optional<std::string>(p, "propagator", "plan", "auto"));
  }
  if (j.contains("outputs")) {
    const auto& o = j["outputs"];
    check_keys(o, "outputs", {"dir", "observables", "probe", "reference"});
    c.outputs.dir = detail::optional<std::string>(o, "dir", "outputs", c.outputs.dir);
    if (o.contains("observables")) {
      const auto& list = o["observables"];
      if (!list.is_array()) throw DomainError("outputs.observables: expected an array of names");
      c.outputs.observables.clear();
      for (const auto& v : list) {
        if (!v.is_string()) throw DomainError("outputs.observables: expected strings");
        c.outputs.observables.push_back(v.get<std::string>());
      }
    }
    try {
      c.outputs.probe = probe_from_string(detail::optional<std::string>(o, "probe", "outputs", "site_basis"));
    } catch (const DomainError& e) {
      throw DomainError(std::string("outputs.probe: ") + e.what());
    }
    if (o.contains("reference")) c.outputs.reference = state_spec_from_json(o["reference"], "outputs.reference");
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw DomainError("cannot read config file " + file.string());
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw DomainError(file.string() + ": " + e.what());
  }
  return config_from_json(j);
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw DomainError("--set expects key=value, got '" + assignment + "'");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    try {
      value = parse_scalar(text);
    } catch (const DomainError&) {
      value = text;
    }
  }
  doc = unflatten(doc);
  walk(doc, split(key, '.'), key) = value;
}

void validate(const ExperimentConfig& c) {
  rethrow_with_prefix("ring", [&] { validate(c.ring); });
  rethrow_with_prefix("disorder", [&] { validate(c.disorder); });
  rethrow_with_prefix("schedule", [&] { validate(c.schedule); });
  if (!(c.plan.t_final > 0.0) || !std::isfinite(c.plan.t_final)) throw DomainError("plan.t_final: must be > 0");
  if (c.plan.intervals < 1) throw DomainError("plan.intervals: must be >= 1");
  if (!(c.plan.integrator_step >= 0.0) || !std::isfinite(c.plan.integrator_step)) {
    throw DomainError("plan.integrator_step: must be >= 0 (0 = automatic)");
  }
  if (c.plan.propagator == PropagatorChoice::Piecewise && std::holds_alternative<FourierTruncatedPhase>(c.schedule)) {
    throw DomainError("plan.propagator: piecewise propagation needs a constant or step schedule");
  }
  RealizedState initial;
  rethrow_with_prefix("initial", [&] { initial = realize_state(c.initial, c.ring.n_sites); });
  if (!c.outputs.reference.terms.empty()) {
    rethrow_with_prefix("outputs.reference", [&] { realize_state(c.outputs.reference, c.ring.n_sites); });
  }
  if (c.outputs.observables.empty()) throw DomainError("outputs.observables: nothing to emit");
  for (const auto& o : c.outputs.observables) {
    if (!kObservables.count(o)) {
      throw DomainError("outputs.observables: unknown observable '" + o + "' (expected overlap_map, fidelity, revivals)");
    }
  }
  if (wants(c.outputs, "revivals") && schedule_period(c.schedule) <= 0.0) {
    throw DomainError("outputs.observables: revivals need a periodic schedule");
  }
  if (wants(c.outputs, "overlap_map") && c.outputs.probe == ProbeFamily::SiteBasis &&
      !initial.state.has_sector(1)) {
    throw DomainError("outputs.probe: site_basis overlap maps need a one-magnon component in the initial state");
  }
}

Trajectory simulate(const ExperimentConfig& config) {
  const Prepared p = prepare(config);
  return evolve(config, p);
}

RunResult run(const ExperimentConfig& config, const std::filesystem::path& dir_arg) {
  const auto started = std::chrono::system_clock::now();
  const auto t0 = std::chrono::steady_clock::now();
  const Prepared p = prepare(config);

  RunResult result;
  result.dir = dir_arg.empty() ? std::filesystem::path(config.outputs.dir) : dir_arg;
  std::error_code ec;
  std::filesystem::create_directories(result.dir, ec);
  if (ec || !std::filesystem::is_directory(result.dir)) {
    throw IoError("cannot create output directory " + result.dir.string() + (ec ? ": " + ec.message() : ""));
  }

  result.trajectory = evolve(config, p);
  const Trajectory& traj = result.trajectory;

  const MultiSectorState reference = config.outputs.reference.terms.empty()
                                         ? traj.initial
                                         : realize_state(config.outputs.reference, config.ring.n_sites).state;
  result.fidelity = return_fidelity(traj, reference, config.outputs.reference.terms.empty() ? "initial" : "reference");

  json summary = json::object();
  auto write = [&](const std::string& name, auto&& body) {
    const auto file = result.dir / name;
    auto os = open_output(file);
    body(os);
    finish(os, file);
    result.files.push_back(file);
  };

  if (wants(config.outputs, "overlap_map")) {
    const OverlapMap map = overlap_map(traj, config.outputs.probe);
    write("overlap_map.csv", [&](std::ostream& os) { write_overlap_csv(os, map); });
    summary["overlap_map"] = {{"probe", to_string(map.probe)}, {"max", map.values.maxCoeff()},
                              {"min", map.values.minCoeff()}};
  }
  if (wants(config.outputs, "fidelity")) {
    write("fidelity.csv", [&](std::ostream& os) { write_fidelity_csv(os, result.fidelity); });
    summary["fidelity"] = {{"reference", result.fidelity.probe}, {"time_average", time_average(result.fidelity)}};
  }
  if (wants(config.outputs, "revivals")) {
    const RevivalReport report = revival_report(result.fidelity, schedule_period(config.schedule));
    write("revivals.csv", [&](std::ostream& os) { write_revival_csv(os, report); });
    summary["revivals"] = {{"period", report.period}, {"count", report.entries.size()}, {"min", report.min},
                           {"max", report.max}, {"slope", report.slope}, {"average", revival_average(report)}};
  }
  write("disorder.csv", [&](std::ostream& os) { write_disorder_csv(os, p.disorder); });

  json meta;
  meta["spinring_version"] = version();
  meta["config"] = config_to_json(config);
  meta["disorder_realization"] = {{"seed", p.disorder.seed_used},
                                  {"translation_invariant", p.disorder.translation_invariant()},
                                  {"eta", p.disorder.eta},
                                  {"delta", p.disorder.delta}};
  meta["evolution"] = traj.metadata;
  meta["summary"] = summary;
  json files = json::array();
  for (const auto& f : result.files) files.push_back(f.filename().string());
  meta["files"] = files;
  meta["wall_clock"] = {
      {"started_utc", utc_timestamp(started)},
      {"elapsed_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  write("metadata.json", [&](std::ostream& os) { os << meta.dump(2) << '\n'; });
  return result;
}

const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes = {"harmonics", "sigma_eta", "sigma_delta", "B_over_lambda", "theta0"};
  return axes;
}

namespace {

Distribution rescaled(const Distribution& d, double value) {
  if (value == 0.0) return NoDisorder{};
  if (std::holds_alternative<UniformDisorder>(d)) return UniformDisorder{value};
  return GaussianDisorder{value};
}

}  // namespace

ExperimentConfig with_axis_value(const ExperimentConfig& base, const std::string& axis, double value) {
  ExperimentConfig c = base;
  if (!std::isfinite(value)) throw DomainError("sweep value must be finite");
  if (axis == "harmonics") {
    auto* f = std::get_if<FourierTruncatedPhase>(&c.schedule);
    if (!f) throw DomainError("axis harmonics needs a fourier schedule");
    if (value < 1.0 || value != std::floor(value) || value > 1e6) {
      throw DomainError("axis harmonics takes positive integers");
    }
    f->harmonics = static_cast<int>(value);
  } else if (axis == "sigma_eta") {
    c.disorder.eta = rescaled(c.disorder.eta, value);
  } else if (axis == "sigma_delta") {
    c.disorder.delta = rescaled(c.disorder.delta, value);
  } else if (axis == "B_over_lambda") {
    c.ring.b_field = value * c.ring.coupling;
  } else if (axis == "theta0") {
    std::visit([&](auto& s) { s.theta0 = value; }, c.schedule);
  } else {
    std::string list;
    for (const auto& a : sweep_axes()) list += (list.empty() ? "" : ", ") + a;
    throw DomainError("unknown sweep axis '" + axis + "' (valid axes: " + list + ")");
  }
  return c;
}

std::vector<std::filesystem::path> sweep(const ExperimentConfig& base, const std::string& axis,
                                         const std::vector<double>& values, const std::filesystem::path& root) {
  if (values.empty()) throw DomainError("sweep needs at least one value");
  std::vector<ExperimentConfig> configs;
  for (double v : values) configs.push_back(with_axis_value(base, axis, v));
  for (const auto& c : configs) validate(c);

  std::vector<std::filesystem::path> dirs;
  json bundles = json::array();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const std::string sub = axis + "-" + std::to_string(i);
    configs[i].name = base.name + "/" + sub;
    configs[i].outputs.dir = (root / sub).string();
    dirs.push_back(run(configs[i], root / sub).dir);
    bundles.push_back({{"index", i}, {"value", values[i]}, {"dir", sub}});
  }
  json index = {{"axis", axis}, {"values", values}, {"base", config_to_json(base)}, {"bundles", bundles}};
  const auto file = root / "index.json";
  auto os = open_output(file);
  os << index.dump(2) << '\n';
  finish(os, file);
  return dirs;
}

std::string cross_sector_message(const RingSpec& ring, const PhaseSchedule& schedule) {
  const double period = schedule_period(schedule);
  if (period <= 0.0) return "constant phase: no modulation period";
  const double bt_over_pi = ring.b_field * period / std::numbers::pi;
  const double half = 0.5 * bt_over_pi;
  const bool integral = std::abs(half - std::round(half)) < 1e-9 * std::max(1.0, std::abs(half));
  return "BT = " + format_pi_multiple(bt_over_pi) +
         (integral ? ": cross-sector storage exact" : ": cross-sector revivals approximate");
}

Diagnostics diagnose(const ExperimentConfig& c) {
  Diagnostics d;
  auto problem = [&](auto&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      d.problems.push_back(e.what());
    }
  };
  problem([&] { validate(c); });

  std::ostringstream ring;
  ring << "ring: N = " << c.ring.n_sites << ", B = " << c.ring.b_field << ", lambda = " << c.ring.coupling;
  if (c.ring.hop_scale != 1.0) ring << ", hop_scale = " << c.ring.hop_scale;
  d.lines.push_back(ring.str());
  d.data["n_sites"] = c.ring.n_sites;

  // Sector sizes from the term lists alone, so a malformed state still reports.
  std::set<int> sectors;
  for (const auto& t : c.initial.terms) sectors.insert(static_cast<int>(t.sites.size()));
  const bool translation_invariant =
      std::holds_alternative<NoDisorder>(c.disorder.eta) && std::holds_alternative<NoDisorder>(c.disorder.delta);
  const bool two_solves = std::holds_alternative<StepPeriodicPhase>(c.schedule) &&
                          !std::holds_alternative<NoDisorder>(c.disorder.delta);
  const bool smooth = std::holds_alternative<FourierTruncatedPhase>(c.schedule) ||
                      c.plan.propagator == PropagatorChoice::Integrator;
  double bytes = 0.0;
  json dims = json::object();
  for (int n : sectors) {
    if (c.ring.n_sites < 3 || n < 0 || n > c.ring.n_sites) continue;
    // C(N, n) in floating point; avoids overflow for absurd inputs.
    const double dim = std::exp(std::lgamma(c.ring.n_sites + 1.0) - std::lgamma(n + 1.0) -
                                std::lgamma(c.ring.n_sites - n + 1.0));
    const double rdim = std::round(dim);
    std::ostringstream line;
    line << "sector n = " << n << ": dimension " << static_cast<long long>(rdim) << ", magnetization "
         << 2 * n - c.ring.n_sites;
    d.lines.push_back(line.str());
    dims[std::to_string(n)] = rdim;
    double sector_bytes = rdim * (n * 4.0 + c.ring.n_sites) + rdim * 2.0 * n * 24.0;
    if (smooth) {
      sector_bytes += 8.0 * rdim * 16.0;
    } else if (translation_invariant) {
      sector_bytes += 2.0 * rdim * rdim / c.ring.n_sites * 16.0;
    } else {
      sector_bytes += (two_solves ? 2.0 : 1.0) * 3.0 * rdim * rdim * 16.0;
    }
    sector_bytes += (c.plan.intervals + 1.0) * rdim * 16.0;
    bytes += sector_bytes;
  }
  if (std::find(c.outputs.observables.begin(), c.outputs.observables.end(), "overlap_map") !=
      c.outputs.observables.end()) {
    bytes += (c.plan.intervals + 1.0) * c.ring.n_sites * 8.0;
  }
  std::ostringstream mem;
  mem.precision(3);
  mem << "memory estimate: " << bytes / (1024.0 * 1024.0) << " MiB";
  d.lines.push_back(mem.str());
  d.data["sector_dimensions"] = dims;
  d.data["memory_bytes"] = bytes;

  const std::string bt = cross_sector_message(c.ring, c.schedule);
  d.lines.push_back(bt);
  d.data["cross_sector"] = bt;
  const double period = schedule_period(c.schedule);
  if (period > 0.0) {
    const double bt_over_pi = c.ring.b_field * period / std::numbers::pi;
    const double half = 0.5 * bt_over_pi;
    const bool even = std::abs(half - std::round(half)) < 1e-9 * std::max(1.0, std::abs(half));
    const bool whole = std::abs(bt_over_pi - std::round(bt_over_pi)) < 1e-9 * std::max(1.0, std::abs(bt_over_pi));
    if (whole && !even) {
      d.lines.push_back("note: BT is an odd multiple of π; sector phases 2BT·Δn still realign every period");
    }
    if (sectors.size() <= 1) d.lines.push_back("note: single-sector state; revivals at mT do not depend on BT");
  }
  const std::string cls = commutativity_class(c.schedule);
  d.lines.push_back("schedule: " + cls);
  d.data["commutativity_class"] = cls;

  const bool piecewise = c.plan.propagator == PropagatorChoice::Piecewise ||
                         (c.plan.propagator == PropagatorChoice::Auto && !smooth);
  d.lines.push_back(std::string("propagator: ") +
                    (piecewise ? "piecewise spectral (exact)" : "midpoint exponential integrator"));
  d.data["propagator"] = piecewise ? "piecewise" : "integrator";
  d.data["problems"] = d.problems;
  return d;
}

}  // namespace spinring

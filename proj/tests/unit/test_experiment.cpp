#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "spinring/errors.hpp"
#include "spinring/experiment.hpp"
#include "spinring/serialization.hpp"

using namespace spinring;
namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.name = "small";
  c.ring = {15, 2.0, 1.0, 1.0};
  c.disorder.eta = GaussianDisorder{0.1};
  c.disorder.seed = 5;
  c.schedule = StepPeriodicPhase{kPi / 2, 2 * kPi};
  c.initial = {{{cplx(1.0 / std::sqrt(2.0)), {0}}, {cplx(0.0, 1.0 / std::sqrt(2.0)), {1, 4}}}};
  c.plan.t_final = 4 * kPi;
  c.plan.intervals = 24;
  c.outputs.observables = {"overlap_map", "fidelity", "revivals"};
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("spinring_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Config, RoundTripIsBitExact) {
  auto c = small_config();
  c.schedule = FourierTruncatedPhase{0.1 + 1e-17, 2 * kPi / 3, 7, HarmonicCounting::IndexBound};
  c.disorder.delta = UniformDisorder{0.123456789012345678};
  c.disorder.width = GaussianWidth::HalfWidthHalfMax;
  c.disorder.seed = 0xfedcba9876543210ull;
  c.outputs.reference = {{{cplx(1.0), {2}}}};
  c.plan.propagator = PropagatorChoice::Integrator;
  const std::string text = config_to_json(c).dump();
  const auto back = config_from_json(nlohmann::json::parse(text));
  EXPECT_TRUE(back == c);
  EXPECT_EQ(config_to_json(back).dump(), text);
}

TEST(Config, FlatKeysAndOverrides) {
  nlohmann::json doc = config_to_json(small_config());
  doc.erase("ring");
  doc["ring.n_sites"] = 21;
  doc["ring.b_field"] = 1.9;
  apply_override(doc, "schedule.theta0=pi/4");
  apply_override(doc, "plan.intervals=12");
  apply_override(doc, "outputs.probe=translated_initial");
  const auto c = config_from_json(doc);
  EXPECT_EQ(c.ring.n_sites, 21);
  EXPECT_EQ(c.ring.b_field, 1.9);
  EXPECT_DOUBLE_EQ(std::get<StepPeriodicPhase>(c.schedule).theta0, kPi / 4);
  EXPECT_EQ(c.plan.intervals, 12);
  EXPECT_EQ(c.outputs.probe, ProbeFamily::TranslatedInitial);
  EXPECT_THROW(apply_override(doc, "novalue"), DomainError);
}

TEST(Config, FieldLevelErrors) {
  auto expect_message = [](nlohmann::json doc, const std::string& fragment) {
    try {
      validate(config_from_json(doc));
      ADD_FAILURE() << "no error for " << fragment;
    } catch (const DomainError& e) {
      EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
  };
  const nlohmann::json base = config_to_json(small_config());
  auto doc = base;
  doc["ring"]["n_sites"] = "many";
  expect_message(doc, "ring.n_sites");
  doc = base;
  doc["ring"]["typo"] = 1;
  expect_message(doc, "ring.typo");
  doc = base;
  doc["schedule"]["type"] = "sawtooth";
  expect_message(doc, "schedule.type");
  doc = base;
  doc["plan"]["t_final"] = -1.0;
  expect_message(doc, "plan.t_final");
  doc = base;
  doc["initial"][0]["sites"] = {99};
  expect_message(doc, "initial");
  doc = base;
  doc["outputs"]["observables"] = {"entropy"};
  expect_message(doc, "outputs.observables");
  doc = base;
  doc["disorder"]["eta"] = {{"type", "gaussian"}, {"sigma", -1.0}};
  expect_message(doc, "disorder");
}

TEST(Config, ParseScalar) {
  EXPECT_DOUBLE_EQ(parse_scalar("pi"), kPi);
  EXPECT_DOUBLE_EQ(parse_scalar("pi/2"), kPi / 2);
  EXPECT_DOUBLE_EQ(parse_scalar("-3pi/4"), -3 * kPi / 4);
  EXPECT_DOUBLE_EQ(parse_scalar("2*pi"), 2 * kPi);
  EXPECT_DOUBLE_EQ(parse_scalar(" 0.25 "), 0.25);
  EXPECT_DOUBLE_EQ(parse_scalar("1e-3"), 1e-3);
  EXPECT_THROW(parse_scalar("abc"), DomainError);
  EXPECT_THROW(parse_scalar(""), DomainError);
}

TEST(Run, WritesBundleAndIsDeterministic) {
  const auto c = small_config();
  const fs::path a = scratch("run_a"), b = scratch("run_b");
  run(c, a);
  run(c, b);
  for (const char* f : {"overlap_map.csv", "fidelity.csv", "revivals.csv", "disorder.csv"}) {
    ASSERT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  const auto meta = nlohmann::json::parse(slurp(a / "metadata.json"));
  EXPECT_EQ(config_from_json(meta["config"]), c);
  EXPECT_EQ(meta["spinring_version"], version());
  EXPECT_TRUE(meta["wall_clock"].contains("elapsed_seconds"));
  EXPECT_EQ(slurp(a / "fidelity.csv").substr(0, 8), "t,value\n");
  EXPECT_EQ(slurp(a / "revivals.csv").substr(0, 13), "m,t,fidelity\n");
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Run, UnwritableOutput) {
  const fs::path file = scratch("blocker");
  std::ofstream(file) << "x";
  EXPECT_THROW(run(small_config(), file / "sub"), IoError);
  fs::remove_all(file);
}

TEST(Sweep, ZeroDisorderMatchesCleanBase) {
  auto base = small_config();
  base.disorder = DisorderSpec{};
  const fs::path root = scratch("sweep"), clean = scratch("sweep_base");
  const auto dirs = sweep(base, "sigma_eta", {0.0}, root);
  run(base, clean);
  ASSERT_EQ(dirs.size(), 1u);
  for (const char* f : {"overlap_map.csv", "fidelity.csv", "revivals.csv", "disorder.csv"}) {
    EXPECT_EQ(slurp(dirs[0] / f), slurp(clean / f)) << f;
  }
  const auto index = nlohmann::json::parse(slurp(root / "index.json"));
  EXPECT_EQ(index["axis"], "sigma_eta");
  EXPECT_EQ(index["bundles"][0]["dir"], "sigma_eta-0");
  fs::remove_all(root);
  fs::remove_all(clean);
}

TEST(Sweep, AxisValues) {
  auto base = small_config();
  EXPECT_EQ(with_axis_value(base, "B_over_lambda", 1.9).ring.b_field, 1.9);
  EXPECT_EQ(std::get<StepPeriodicPhase>(with_axis_value(base, "theta0", 0.0).schedule).theta0, 0.0);
  EXPECT_THROW(with_axis_value(base, "harmonics", 5), DomainError);
  base.schedule = FourierTruncatedPhase{0.0, 1.0, 3};
  EXPECT_EQ(std::get<FourierTruncatedPhase>(with_axis_value(base, "harmonics", 13).schedule).harmonics, 13);
  EXPECT_THROW(with_axis_value(base, "harmonics", 2.5), DomainError);
  try {
    with_axis_value(base, "temperature", 1.0);
    ADD_FAILURE();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("B_over_lambda"), std::string::npos);
  }
}

TEST(Diagnose, CrossSectorMessages) {
  EXPECT_EQ(cross_sector_message({90, 2.0, 1.0, 1.0}, StepPeriodicPhase{0.0, 2 * kPi}),
            "BT = 4π: cross-sector storage exact");
  EXPECT_EQ(cross_sector_message({90, 1.9, 1.0, 1.0}, StepPeriodicPhase{0.0, 2 * kPi}),
            "BT = 3.8π: cross-sector revivals approximate");
}

TEST(Diagnose, ReportsSectorsAndClass) {
  auto c = small_config();
  const auto d = diagnose(c);
  EXPECT_TRUE(d.problems.empty());
  auto has = [&](const std::string& s) {
    for (const auto& l : d.lines) {
      if (l.find(s) != std::string::npos) return true;
    }
    return false;
  };
  EXPECT_TRUE(has("sector n = 1: dimension 15"));
  EXPECT_TRUE(has("sector n = 2: dimension 105"));
  EXPECT_TRUE(has("memory estimate"));
  EXPECT_TRUE(has("commuting family (Δθ = π)"));
  c.ring.n_sites = 2;
  EXPECT_FALSE(diagnose(c).problems.empty());
}

TEST(Presets, AllFiguresValidate) {
  for (const auto& name : figure_names()) {
    for (const auto& b : figure_preset(name)) EXPECT_NO_THROW(validate(b.config)) << name << "/" << b.subdir;
  }
  EXPECT_THROW(figure_preset("fig9"), DomainError);
  const auto fig6 = figure_preset("fig6");
  ASSERT_EQ(fig6.size(), 2u);
  EXPECT_EQ(fig6[0].config.ring.n_sites, 90);
  EXPECT_EQ(figure_preset("fig7").size(), 5u);
}

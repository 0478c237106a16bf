#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spinring/experiment.hpp"

#ifdef SPINRING_CLI_PATH

namespace fs = std::filesystem;

namespace {

fs::path workdir() {
  const fs::path p = fs::temp_directory_path() / "spinring_cli_test";
  fs::create_directories(p);
  return p;
}

int run_cli(const std::string& args, std::string* out = nullptr) {
  const fs::path log = workdir() / "stdout.txt";
  const std::string cmd = std::string("\"") + SPINRING_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  if (out) {
    std::ifstream is(log);
    std::stringstream ss;
    ss << is.rdbuf();
    *out = ss.str();
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const std::string& name, const nlohmann::json& j) {
  const fs::path p = workdir() / name;
  std::ofstream(p) << j.dump(2);
  return p;
}

nlohmann::json good_config() {
  return nlohmann::json::parse(R"({
    "name": "cli",
    "ring": {"n_sites": 11, "b_field": 2.0},
    "schedule": {"type": "step", "theta0": 1.5707963267948966, "period": 6.283185307179586},
    "initial": [{"coeff": [1, 0], "sites": [0]}],
    "plan": {"t_final": 12.566370614359172, "intervals": 8},
    "outputs": {"observables": ["fidelity", "revivals"]}
  })");
}

}  // namespace

TEST(Cli, RunSucceeds) {
  const auto cfg = write_config("good.json", good_config());
  const fs::path out = workdir() / "bundle";
  fs::remove_all(out);
  EXPECT_EQ(run_cli("run --config " + cfg.string() + " --out " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out / "fidelity.csv"));
  EXPECT_TRUE(fs::exists(out / "metadata.json"));
}

TEST(Cli, ConfigErrorsExitTwo) {
  auto bad = good_config();
  bad["ring"]["n_sites"] = 2;
  const auto cfg = write_config("bad.json", bad);
  std::string out;
  EXPECT_EQ(run_cli("run --config " + cfg.string() + " --out " + (workdir() / "x").string(), &out), 2);
  EXPECT_NE(out.find("ring"), std::string::npos);
  EXPECT_EQ(run_cli("run --config /nonexistent.json"), 2);
  EXPECT_EQ(run_cli("figure fig9 --out " + (workdir() / "y").string()), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  const auto good = write_config("good.json", good_config());
  EXPECT_EQ(run_cli("run --config " + good.string() + " --set ring.b_field=oops --out " + (workdir() / "z").string()), 2);
  EXPECT_EQ(run_cli("sweep --config " + good.string() + " --axis bogus --values 1 --out " + (workdir() / "w").string(), &out), 2);
  EXPECT_NE(out.find("harmonics"), std::string::npos);
}

TEST(Cli, ValidateReportsDiagnostics) {
  const auto cfg = write_config("good.json", good_config());
  std::string out;
  EXPECT_EQ(run_cli("validate --config " + cfg.string() + " --set ring.b_field=1.9", &out), 0);
  EXPECT_NE(out.find("BT = 3.8π: cross-sector revivals approximate"), std::string::npos) << out;
  EXPECT_NE(out.find("commuting family"), std::string::npos);
  EXPECT_EQ(run_cli("validate --config " + cfg.string() + " --set plan.intervals=0", &out), 2);
}

TEST(Cli, SweepWritesIndex) {
  const auto cfg = write_config("good.json", good_config());
  const fs::path root = workdir() / "sweep";
  fs::remove_all(root);
  EXPECT_EQ(run_cli("sweep --config " + cfg.string() + " --axis theta0 --values 0,pi/2 --out " + root.string()), 0);
  EXPECT_TRUE(fs::exists(root / "index.json"));
  EXPECT_TRUE(fs::exists(root / "theta0-1" / "fidelity.csv"));
}

TEST(Cli, OutputRootFromEnvironment) {
  const auto cfg = write_config("good.json", good_config());
  const fs::path root = workdir() / "envroot";
  fs::remove_all(root);
  const std::string env = "SPINRING_OUTPUT_ROOT=\"" + root.string() + "\" ";
  const std::string cmd = env + "\"" + SPINRING_CLI_PATH + "\" run --config " + cfg.string() + " --out rel > /dev/null 2>&1";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(fs::exists(root / "rel" / "fidelity.csv"));
}

#endif

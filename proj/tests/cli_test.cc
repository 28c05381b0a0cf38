// Copyright 2026 The qflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qflow_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(QFLOW_BIN) + " " + args + " > " + (dir_ / "stdout.txt").string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }
  static std::string read(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  static json read_json(const std::string& p) { return json::parse(read(p)); }

  fs::path dir_;
};

constexpr const char* kOneShot =
    "n_grid = 6\nreynolds = 10\ndpdx = -2\ndt = 0.05\nsteps = 3\nscheme = be2\nq_pe = 6\n";

TEST_F(Cli, ClassicalSolveHasNoQuantumError) {
  const auto cfg = write("c.cfg", kOneShot);
  ASSERT_EQ(run("solve --config " + cfg + " --method classical --out " + path("o")), 0);
  const json m = read_json(path("o/metrics.json"));
  EXPECT_EQ(m["epsilon_rms_classical"].get<double>(), 0.0);
  const json manifest = read_json(path("o/manifest.json"));
  EXPECT_EQ(manifest["command"], "solve");
  EXPECT_EQ(manifest["outputs"].size(), 2u);
  for (const auto& f : manifest["outputs"]) EXPECT_TRUE(fs::exists(path("o/" + f.get<std::string>())));
}

TEST_F(Cli, RepeatedRunsAreByteIdentical) {
  const auto cfg = write("c.cfg", kOneShot);
  ASSERT_EQ(run("solve --config " + cfg + " --seed 7 --out " + path("a")), 0);
  ASSERT_EQ(run("solve --config " + cfg + " --seed 7 --threads 1 --out " + path("b")), 0);
  EXPECT_EQ(read(path("a/profiles.csv")), read(path("b/profiles.csv")));
  EXPECT_EQ(read(path("a/metrics.json")), read(path("b/metrics.json")));
}

TEST_F(Cli, SingleCellScanMatchesSolve) {
  const auto cfg = write("c.cfg", kOneShot);
  ASSERT_EQ(run("scan-tq --config " + cfg + " --q-min 6 --q-max 6 --t0-points 1 --t0-min 0.4 --t0-max 0.4 --out " +
                path("s")),
            0);
  const std::string csv = read(path("s/scan.csv"));
  std::istringstream in(csv);
  std::string header, row, extra;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "t0,q_pe,epsilon");
  EXPECT_FALSE(std::getline(in, extra) && !extra.empty());
  const double eps_scan = std::stod(row.substr(row.rfind(',') + 1));
  ASSERT_EQ(run("solve --config " + cfg + " --t0 0.4 --out " + path("o")), 0);
  const json m = read_json(path("o/metrics.json"));
  EXPECT_NEAR(m["epsilon_qlsa"].get<double>(), eps_scan, 1e-9);
  EXPECT_TRUE(read_json(path("s/tstar.json")).contains("t0_star"));
}

TEST_F(Cli, FitsRecoverSyntheticExponent) {
  std::ostringstream csv;
  csv.precision(17);
  csv << "t0,q_pe,epsilon\n";
  for (int q = 3; q <= 10; ++q) {
    csv << "0.5," << q << "," << 4.5 * std::pow(q, -4.0) << "\n";
    csv << "0.7," << q << "," << 3.0 * std::pow(q, -4.0) << "\n";
  }
  const auto scan = write("scan.csv", csv.str());
  ASSERT_EQ(run("fits --scan " + scan + " --out " + path("f")), 0);
  const json f = read_json(path("f/fits.json"));
  EXPECT_NEAR(f["error_power_law"]["params"][0].get<double>(), -4.0, 1e-10);
}

TEST_F(Cli, DissipationSweepTable) {
  const auto cfg = write("c.cfg", "n_grid = 6\ndpdx = -2\n");
  ASSERT_EQ(run("dissipation --config " + cfg + " --re 10,100,1000 --r 5 --q-pe 6 --out " + path("d")), 0);
  std::istringstream in(read(path("d/sweep.csv")));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("reynolds,epsilon_quantum,epsilon_classical,epsilon_analytic", 0), 0u);
  int rows = 0;
  while (std::getline(in, line)) rows += line.empty() ? 0 : 1;
  EXPECT_EQ(rows, 3);
}

TEST_F(Cli, QspDemoReportsReduction) {
  const auto v = write("v.csv", "index,value\n13,0.5\n8,0.7071067811865476\n1,0.3535533905681025\n3,0.3535533905681025\n");
  ASSERT_EQ(run("qsp-demo --vector " + v + " --out " + path("q")), 0);
  const json r = read_json(path("q/cnot_report.json"));
  EXPECT_EQ(r["qubits"], 4);
  EXPECT_GT(r["cnot_reduction_percent"].get<double>(), 0.0);
  EXPECT_LT(r["cnot_qsp2"].get<int>(), r["cnot_qsp1"].get<int>());
  EXPECT_TRUE(fs::exists(path("q/circuit_qsp1.txt")));
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("solve --config " + path("missing.cfg")), 3);
  EXPECT_EQ(run("solve --config " + write("bad.cfg", "n_grid = 2\n") + " --out " + path("x")), 3);
  EXPECT_EQ(run("solve --config " + write("fe.cfg", "n_grid = 10\ndt = 0.1\nsteps = 3\n") + " --scheme fe --out " + path("x")), 2);
  EXPECT_EQ(run("solve --config " + write("m.cfg", kOneShot) + " --method quantum --out " + path("x")), 3);
  EXPECT_EQ(run("frobnicate"), 3);
  EXPECT_EQ(run("--help"), 0);
}

}  // namespace

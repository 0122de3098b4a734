// Copyright 2026 The paulipath Authors
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

// Drives the paulipath-cli binary end to end.

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("paulipath_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    write("c.json", R"({"n": 2, "layers": [
      {"gates": [{"kind": "rot", "pauli": "ZI", "param": "z1"}, {"kind": "rot", "pauli": "IZ", "param": "z2"}]},
      {"gates": [{"kind": "rot", "pauli": "XI", "param": "x1"}, {"kind": "rot", "pauli": "IX", "param": "x2"}]},
      {"gates": [{"kind": "rot", "pauli": "XI", "param": "r3"}]},
      {"gates": [{"kind": "rot", "pauli": "XI", "param": "r4"}]}]})");
    write("h.json", R"({"n": 2, "terms": [{"pauli": "ZI", "coeff": 1}, {"pauli": "YI", "coeff": 1}]})");
    write("p.json", R"({"z1": 0.1, "z2": 0.2, "x1": 0.3, "x2": 0.4, "r3": 0.5, "r4": 0.6})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }
  std::string read(const std::string& name) {
    std::ifstream in(dir_ / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  int cli(const std::string& args) {
    const std::string cmd = "cd '" + dir_.string() + "' && '" PAULIPATH_CLI "' " + args + " >stdout.txt 2>stderr.txt";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

TEST_F(Cli, EstimateWritesReportAndSummary) {
  ASSERT_EQ(cli("--mode estimate --circuit c.json --hamiltonian h.json --params p.json --lambda 0 --trunc-m full "
                "--out r.json"),
            0)
      << read("stderr.txt");
  const Json r = Json::parse(read("r.json"));
  const double alpha = (0.3 + 0.5 + 0.6) / 2;
  EXPECT_NEAR(r["result"]["value"].get<double>(), std::cos(2 * alpha) - std::sin(2 * alpha), 1e-12);
  EXPECT_EQ(r["config"]["files"]["params"], "p.json");
  EXPECT_NE(read("stderr.txt").find("M = 10, certified MSE <= "), std::string::npos);
}

TEST_F(Cli, ChooseMPrintsM) {
  ASSERT_EQ(cli("--mode choose-m --circuit c.json --hamiltonian h.json --lambda 0.1 --target-mse 0.01"), 0);
  EXPECT_EQ(Json::parse(read("stdout.txt"))["result"]["M"], 27);
}

TEST_F(Cli, ExitCodesFollowErrorClass) {
  EXPECT_EQ(cli("--mode estimate --circuit c.json --hamiltonian h.json --lambda 0.1 --trunc-m 3 --target-mse 0.1 --seed 1"), 2);
  EXPECT_EQ(cli("--mode estimate --circuit missing.json --hamiltonian h.json --lambda 0.1 --trunc-m 3 --seed 1"), 2);
  EXPECT_EQ(cli("--mode bogus"), 2);
  EXPECT_EQ(cli("--mode estimate --circuit c.json --hamiltonian h.json --lambda 0.1 --trunc-m 10 --seed 1 --max-paths 2"), 3);
  write("big.json", R"({"n": 11, "layers": [{"gates": [{"kind": "rot", "pauli": "XIIIIIIIIII", "param": "a"}]}]})");
  write("bigh.json", R"({"n": 11, "terms": [{"pauli": "ZIIIIIIIIII", "coeff": 1}]})");
  EXPECT_EQ(cli("--mode oracle-check --circuit big.json --hamiltonian bigh.json --lambda 0.1 --seed 1"), 4);
  write("bad.json", R"({"n": 2, "layers": [{"gates": [{"kind": "H", "qubit": 3}]}]})");
  EXPECT_EQ(cli("--mode estimate --circuit bad.json --hamiltonian h.json --lambda 0.1 --trunc-m 3"), 2);
  EXPECT_NE(read("stderr.txt").find("layer 1, gate 1: qubit index 3 outside 1..2"), std::string::npos);
}

TEST_F(Cli, ReplayReproducesSeededRuns) {
  ASSERT_EQ(cli("--mode estimate --circuit c.json --hamiltonian h.json --lambda 0.2 --target-mse 0.01 --seed 17 "
                "--workers 3 --deterministic-sum --out r.json"),
            0);
  EXPECT_EQ(cli("--replay r.json"), 0) << read("stderr.txt");
  EXPECT_NE(read("stderr.txt").find("reproduced"), std::string::npos);
  ASSERT_EQ(cli("--mode mse-benchmark --circuit c.json --hamiltonian h.json --lambda 0.1 --trunc-m 5 --samples 100 "
                "--seed 4 --workers 2 --out m.json"),
            0);
  EXPECT_EQ(cli("--replay m.json"), 0) << read("stderr.txt");
  // A tampered result is detected.
  Json r = Json::parse(read("r.json"));
  r["result"]["value"] = r["result"]["value"].get<double>() + 1e-6;
  write("t.json", r.dump());
  EXPECT_EQ(cli("--replay t.json"), 1);
}

TEST_F(Cli, PathDumpNoisyIsDampedNoiseless) {
  ASSERT_EQ(cli("--mode path-dump --circuit c.json --hamiltonian h.json --params p.json --lambda 0 --trunc-m full "
                "--out a.csv"),
            0);
  ASSERT_EQ(cli("--mode path-dump --circuit c.json --hamiltonian h.json --params p.json --lambda 0.1 --trunc-m full "
                "--out b.csv --report b.json"),
            0);
  std::istringstream a(read("a.csv")), b(read("b.csv"));
  std::string la, lb;
  std::getline(a, la);
  std::getline(b, lb);
  int rows = 0;
  while (std::getline(a, la) && std::getline(b, lb)) {
    const auto ca = la.rfind(','), cb = lb.rfind(',');
    ASSERT_EQ(la.substr(0, ca), lb.substr(0, cb));
    EXPECT_EQ(std::stod(lb.substr(cb + 1)), std::pow(0.9, std::stoi(la)) * std::stod(la.substr(ca + 1)));
    ++rows;
  }
  EXPECT_EQ(rows, 8);
  EXPECT_EQ(Json::parse(read("b.json"))["mode"], "path-dump");
}

TEST_F(Cli, OracleCheckAndSweep) {
  EXPECT_EQ(cli("--mode oracle-check --circuit c.json --hamiltonian h.json --lambda 0.05 --seed 2"), 0);
  EXPECT_EQ(Json::parse(read("stdout.txt"))["result"]["agree"], true);
  ASSERT_EQ(cli("--mode scaling-sweep --sweep-lmin 4 --sweep-lmax 6 --out s.csv --report s.json"), 0);
  EXPECT_EQ(read("s.csv").rfind("family,L,lambda,M,nodes,paths,seconds", 0), 0u);
  EXPECT_EQ(cli("--replay s.json"), 0);
}

}  // namespace

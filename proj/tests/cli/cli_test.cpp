// Copyright 2026 The hamnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the hamnet executable end to end and checks exit codes and files.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "hamnet/sampler.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout.txt";
  const std::string cmd = std::string(HAMNET_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + (dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::ostringstream s;
  s << in.rdbuf();
  r.out = s.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hamnet_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  fs::path dir_;
};

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("", dir_).code, 2);
  EXPECT_EQ(run("no-such-command", dir_).code, 2);
  EXPECT_EQ(run("haar-gen --modes 4", dir_).code, 2);          // seed missing
  EXPECT_EQ(run("haar-gen --modes 0 --seed 1", dir_).code, 2);
  EXPECT_EQ(run("pipeline fig3", dir_).code, 2);               // seed missing
  EXPECT_EQ(run("pipeline fig99 --seed 1", dir_).code, 2);
  EXPECT_EQ(run("sample --photons 2 --regime uniform --seed 1", dir_).code, 2);
}

TEST_F(Cli, HaarGenIsReproducible) {
  const fs::path a = dir_ / "a";
  const fs::path b = dir_ / "b";
  ASSERT_EQ(run("haar-gen --modes 5 --count 3 --seed 42 --out " + a.string(), dir_).code, 0);
  ASSERT_EQ(run("haar-gen --modes 5 --count 3 --seed 42 --out " + b.string(), dir_).code, 0);
  for (int i = 0; i < 3; ++i) {
    const std::string name = "U_42_" + std::to_string(i) + ".json";
    ASSERT_TRUE(fs::exists(a / name)) << name;
    EXPECT_EQ(slurp(a / name), slurp(b / name));
  }
}

TEST_F(Cli, SampleDomainAndResourceErrors) {
  // C(16, 4) = 1820 < 2000.
  EXPECT_EQ(run("sample --modes 16 --photons 4 --regime uniform --num-unique 2000 --seed 1",
                dir_).code,
            3);
  EXPECT_EQ(run("sample --modes 16 --photons 4 --regime uniform --num-unique 10 "
                "--seed 1 --budget 100",
                dir_).code,
            4);
  EXPECT_EQ(run("sample --matrix " + (dir_ / "missing.json").string() +
                    " --photons 2 --regime indistinguishable --num-unique 2 --seed 1",
                dir_).code,
            6);
}

TEST_F(Cli, SampleWritesJsonLinesToStdout) {
  const CliResult r = run("sample --modes 9 --photons 3 --regime uniform --num-unique 20 "
                    "--seed 3 --sets 2",
                    dir_);
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  const auto sets = hamnet::read_sample_sets(in);
  ASSERT_EQ(sets.size(), 2u);
  EXPECT_EQ(sets[0].size(), 20u);
  EXPECT_NE(slurp(dir_ / "stderr.txt").find("N_meas"), std::string::npos);
}

TEST_F(Cli, SamplePipelineCertifyFlow) {
  ASSERT_EQ(run("haar-gen --modes 9 --count 1 --seed 5 --out " + dir_.string(), dir_).code, 0);
  const fs::path samples = dir_ / "samples.jsonl";
  ASSERT_EQ(run("sample --matrix " + (dir_ / "U_5_0.json").string() +
                    " --photons 3 --regime indistinguishable --num-unique 40 --seed 2 --out " +
                    samples.string(),
                dir_).code,
            0);
  ASSERT_EQ(hamnet::read_sample_sets(samples).size(), 1u);

  const fs::path out = dir_ / "run";
  const CliResult p = run("pipeline fig6-ml --seed 9 --photons 3 --ml-photon-list 3 "
                    "--num-unique 40 --train-matrices 4 --test-matrices 2 "
                    "--samples-per-matrix 5 --out " + out.string(),
                    dir_);
  ASSERT_EQ(p.code, 0) << slurp(dir_ / "stderr.txt");
  const auto summary = nlohmann::json::parse(p.out);
  EXPECT_TRUE(summary.contains("config_hash"));
  const fs::path model = out / "model_n3_N40.json";
  ASSERT_TRUE(fs::exists(model));
  ASSERT_TRUE(fs::exists(out / "fig6_accuracy.csv"));

  const fs::path verdict = dir_ / "verdict.json";
  ASSERT_EQ(run("certify --samples " + samples.string() + " --model " + model.string() +
                    " --seed 4 --out " + verdict.string(),
                dir_).code,
            0);
  const auto v = nlohmann::json::parse(slurp(verdict));
  EXPECT_TRUE(v.contains("verdict"));
  EXPECT_EQ(v["matrix_id"], "U_5_0");

  // A sample of the wrong size is a domain error.
  const fs::path small = dir_ / "small.jsonl";
  ASSERT_EQ(run("sample --modes 9 --photons 3 --regime uniform --num-unique 10 --seed 2 --out " +
                    small.string(),
                dir_).code,
            0);
  EXPECT_EQ(run("certify --samples " + small.string() + " --model " + model.string(), dir_).code,
            3);
}

TEST_F(Cli, PipelineIsByteReproducible) {
  const std::string common =
      "pipeline table-repetitions --seed 3 --photons 3 --ml-photon-list 3 "
      "--num-unique 30 --sample-sizes 30 --matrices 4 --out ";
  ASSERT_EQ(run(common + (dir_ / "a").string(), dir_).code, 0);
  ASSERT_EQ(run(common + (dir_ / "b").string(), dir_).code, 0);
  EXPECT_EQ(slurp(dir_ / "a" / "table_repetitions.csv"),
            slurp(dir_ / "b" / "table_repetitions.csv"));
  EXPECT_EQ(run("--threads 1 " + common + (dir_ / "c").string(), dir_).code, 0);
  EXPECT_EQ(slurp(dir_ / "a" / "table_repetitions.csv"),
            slurp(dir_ / "c" / "table_repetitions.csv"));
}

}  // namespace

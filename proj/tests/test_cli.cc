// Copyright 2026 The qwalk Authors
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <sys/wait.h>
#include <string>
#include <vector>

#include "commands.h"

namespace qwalk::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("qwalk_cli_" + std::string(info->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int invoke(std::vector<std::string> args, const std::string &sub = "") {
        const fs::path out = sub.empty() ? dir_ : dir_ / sub;
        args.push_back("-o");
        args.push_back(out.string());
        std::ostringstream o, e;
        const int code = run(args, o, e);
        stderr_ = e.str();
        return code;
    }

    json read_json(const std::string &file, const std::string &sub = "") const {
        std::ifstream in(sub.empty() ? dir_ / file : dir_ / sub / file);
        return json::parse(in);
    }

    static std::string slurp(const fs::path &p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
    std::string stderr_;
};

TEST(ParseComplex, Forms) {
    EXPECT_EQ(parse_complex("0.5"), std::complex<double>(0.5, 0.0));
    EXPECT_EQ(parse_complex("0.5,-2"), std::complex<double>(0.5, -2.0));
    EXPECT_THROW(parse_complex("x"), std::invalid_argument);
    EXPECT_THROW(parse_complex("1,2,3"), std::invalid_argument);
}

TEST_F(CliTest, WalkWritesHeaderedCsv) {
    ASSERT_EQ(invoke({"walk", "--coin", "hadamard", "--steps", "20"}), kExitOk);
    std::ifstream in(dir_ / "walk_stddev.csv");
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "# format_version: 1");
    std::getline(in, line);
    EXPECT_EQ(line.rfind("# artifact_version: ", 0), 0u);
    std::getline(in, line);
    EXPECT_EQ(line, "# command: walk");
    std::getline(in, line);
    EXPECT_EQ(line.rfind("# config: {", 0), 0u);
    std::getline(in, line);
    EXPECT_EQ(line, "t,mean,stddev,classical_stddev");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 21);
    EXPECT_TRUE(fs::exists(dir_ / "walk_distribution.csv"));
}

TEST_F(CliTest, JsonFormat) {
    ASSERT_EQ(invoke({"walk", "--coin", "periodic", "--k", "4", "--steps", "8", "--format", "json"}), kExitOk);
    const json doc = read_json("walk_distribution.json");
    EXPECT_EQ(doc["format_version"], 1);
    EXPECT_EQ(doc["command"], "walk");
    EXPECT_EQ(doc["columns"][0], "n");
    EXPECT_FALSE(doc["rows"].empty());
}

TEST_F(CliTest, ConfigErrors) {
    EXPECT_EQ(invoke({"walk", "--coin", "nonsense"}), kExitConfig);
    EXPECT_EQ(invoke({"bounded"}), kExitConfig);
    EXPECT_EQ(invoke({"polya", "--r0", "0"}), kExitConfig);
    EXPECT_EQ(invoke({"walk", "--coin", "periodic"}), kExitConfig);
    EXPECT_EQ(invoke({"spectral", "--grid", "0"}), kExitConfig);
    EXPECT_EQ(invoke({"frobnicate"}), kExitConfig);
    EXPECT_EQ(invoke({"walk", "--left", "0", "--right", "0"}), kExitConfig);
}

TEST_F(CliTest, BoundedEvenK) {
    ASSERT_EQ(invoke({"bounded", "--k", "4", "--steps", "400"}), kExitOk);
    const json r = read_json("bounded_report.json")["report"];
    EXPECT_EQ(r["verdict"], "bounded");
    EXPECT_EQ(r["lower"], -2);
    EXPECT_EQ(r["upper"], 2);
    EXPECT_EQ(r["support_check"]["verified"], true);
}

TEST_F(CliTest, BoundedOddKEscapes) {
    for (const char *k : {"3", "7"}) {
        ASSERT_EQ(invoke({"bounded", "--k", k, "--radius", "10"}, k), kExitOk);
        const json r = read_json("bounded_report.json", k)["report"];
        EXPECT_EQ(r["verdict"], "unbounded");
        EXPECT_EQ(r["escape_check"]["escaped"], true);
    }
}

TEST_F(CliTest, AssumedBoundsThatFail) {
    EXPECT_EQ(invoke({"bounded", "--k", "3", "--assume-bounds", "-2", "2", "--steps", "50"}), kExitVerdictMismatch);
    const json r = read_json("bounded_report.json")["report"];
    EXPECT_EQ(r["support_check"]["verified"], false);
}

TEST_F(CliTest, SpectralIdentityCoin) {
    ASSERT_EQ(invoke({"spectral", "--coin", "identity", "--delta", "3", "--grid", "64"}), kExitOk);
    const json r = read_json("spectral_report.json")["report"];
    EXPECT_NEAR(r["var_coeff"].get<double>(), 1.0, 1e-10);
    EXPECT_NEAR(r["drift"].get<double>(), 0.0, 1e-10);
}

TEST_F(CliTest, SpectralFlatBandsForEvenK) {
    ASSERT_EQ(invoke({"spectral", "--coin", "periodic", "--k", "4", "--grid", "128"}), kExitOk);
    const json r = read_json("spectral_report.json")["report"];
    EXPECT_TRUE(r["flat_bands"].get<bool>());
    EXPECT_LE(r["var_coeff"].get<double>(), 1e-12);
}

TEST_F(CliTest, StrictSpectralHasNoFalsePositive) {
    EXPECT_EQ(invoke({"spectral", "--coin", "periodic", "--k", "3", "--grid", "256", "--strict"}), kExitOk);
    const json r = read_json("spectral_report.json")["report"];
    EXPECT_FALSE(r["degenerate_crossing"].get<bool>());
}

TEST_F(CliTest, DrCommand) {
    ASSERT_EQ(invoke({"dr", "--specs", "5", "--states", "5", "--realness-trials", "20"}), kExitOk);
    const json r = read_json("dr_report.json")["report"];
    EXPECT_TRUE(r["embedding"]["pass"].get<bool>());
    EXPECT_TRUE(r["realness"]["pass"].get<bool>());
    EXPECT_TRUE(r["separation"]["pass"].get<bool>());
    EXPECT_GT(r["separation"]["abs_imag"].get<double>(), 0.1);
}

TEST_F(CliTest, DrZeroToleranceFails) {
    EXPECT_EQ(invoke({"dr", "--specs", "3", "--states", "3", "--realness-trials", "5", "--tolerance", "0"}),
              kExitDRAgreement);
}

TEST_F(CliTest, PolyaCommand) {
    ASSERT_EQ(invoke({"polya", "--steps", "40", "--series-steps", "60", "--samples", "200", "--classical-steps", "200"}),
              kExitOk);
    const json r = read_json("polya_report.json")["report"];
    EXPECT_EQ(r["quantum"]["guard_hits"], 0);
    EXPECT_LE(r["quantum"]["norm_error"].get<double>(), 1e-12);
    for (const char *f : {"polya_distribution.csv", "polya_classical.csv", "polya_stddev.csv"}) {
        EXPECT_TRUE(fs::exists(dir_ / f)) << f;
    }
}

TEST_F(CliTest, RerunsAreByteIdentical) {
    const std::vector<std::vector<std::string>> commands = {
        {"walk", "--coin", "periodic", "--k", "5", "--steps", "30"},
        {"bounded", "--k", "6"},
        {"spectral", "--coin", "periodic", "--k", "3", "--grid", "64"},
        {"dr", "--specs", "3", "--states", "3", "--realness-trials", "5"},
        {"polya", "--steps", "20", "--series-steps", "20", "--samples", "50", "--classical-steps", "50"},
    };
    for (const auto &cmd : commands) {
        ASSERT_EQ(invoke(cmd, "a"), kExitOk);
        ASSERT_EQ(invoke(cmd, "b"), kExitOk);
    }
    int files = 0;
    for (const auto &entry : fs::directory_iterator(dir_ / "a")) {
        const fs::path other = dir_ / "b" / entry.path().filename();
        ASSERT_TRUE(fs::exists(other));
        EXPECT_EQ(slurp(entry.path()), slurp(other)) << entry.path().filename();
        ++files;
    }
    EXPECT_EQ(files, 10);
}

TEST_F(CliTest, PolyaIndependentOfThreads) {
    const std::vector<std::string> cmd = {"polya", "--steps", "10", "--series-steps", "10", "--samples", "300",
                                          "--classical-steps", "100"};
    setenv("QWALK_THREADS", "1", 1);
    ASSERT_EQ(invoke(cmd, "one"), kExitOk);
    setenv("QWALK_THREADS", "3", 1);
    ASSERT_EQ(invoke(cmd, "three"), kExitOk);
    unsetenv("QWALK_THREADS");
    EXPECT_EQ(slurp(dir_ / "one" / "polya_classical.csv"), slurp(dir_ / "three" / "polya_classical.csv"));
}

TEST_F(CliTest, StandaloneBinary) {
    const std::string cmd = std::string(QWALK_CLI_PATH) + " bounded --k 2 -o " + dir_.string() + " > /dev/null";
    EXPECT_EQ(std::system(cmd.c_str()), 0);
    EXPECT_TRUE(fs::exists(dir_ / "bounded_report.json"));
    const std::string bad = std::string(QWALK_CLI_PATH) + " polya --r0 0 -o " + dir_.string() + " 2> /dev/null";
    const int status = std::system(bad.c_str());
    EXPECT_EQ(WEXITSTATUS(status), kExitConfig);
}

}  // namespace
}  // namespace qwalk::cli

// Copyright 2026 The photonmux Authors
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

#include "cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace photonmux::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("photonmux_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }

    std::string config(const std::string &name, const std::string &text) {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

    int run(const std::string &sub, const std::string &cfg, const std::string &out_name = "out") {
        std::vector<std::string> args{"photonmux", sub, "-q", "-o", (dir_ / out_name).string()};
        if (!cfg.empty()) {
            args.push_back("-c");
            args.push_back(cfg);
        }
        std::vector<const char *> argv;
        for (const auto &a : args) {
            argv.push_back(a.c_str());
        }
        out_.str("");
        err_.str("");
        return run_cli(static_cast<int>(argv.size()), argv.data(), out_, err_);
    }

    std::string read(const std::string &rel) {
        std::ifstream in(dir_ / rel);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }

    fs::path dir_;
    std::ostringstream out_, err_;
};

TEST_F(CliTest, BuildStateDefaults) {
    ASSERT_EQ(run("build-state", ""), kOk) << err_.str();
    const std::string summary = read("out/summary.txt");
    EXPECT_NE(summary.find("success_probability=0.5"), std::string::npos);
    EXPECT_NE(summary.find("terms=2"), std::string::npos);
    const std::string state = read("out/state.csv");
    EXPECT_NE(state.find("hhhh,"), std::string::npos);
    EXPECT_NE(state.find("0.7071"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir_ / "out/effective_config.json"));
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
    EXPECT_EQ(run("build-state", config("a.json", R"({"chain": {"n_pairz": 2}})")), kConfigError);
    EXPECT_NE(err_.str().find("n_pairz"), std::string::npos);
    EXPECT_EQ(run("build-state", config("b.json", R"({"chain": {"n_pairs": 1}})")), kConfigError);
    EXPECT_EQ(run("build-state", config("c.json", R"({"chain": {"n_pairs": "two"}})")), kConfigError);
    EXPECT_EQ(run("scan-delay", config("d.json", R"({"analysis": {"delays": [0, 1]}})")), kConfigError);
    EXPECT_EQ(run("scan-delay", config("e.json", R"({"analysis": {"delays": [], "sigma": 1}})")), kConfigError);
    EXPECT_EQ(run("rates", config("f.json", R"({"experiment": {"duration": 0}})")), kConfigError);
    EXPECT_EQ(run("rates", config("g.json", "{not json")), kConfigError);
    EXPECT_EQ(run("rates", (dir_ / "missing.json").string()), kConfigError);
    EXPECT_EQ(run("teleport", ""), kConfigError);
}

TEST_F(CliTest, VerifyGraphFoundAndNotFound) {
    const std::string h = config("h.json", R"({"chain": {"n_pairs": 3, "pair_kind": "phi_i", "hwp_before_pbs": true}})");
    ASSERT_EQ(run("verify-graph", h), kOk) << err_.str();
    EXPECT_NE(read("out/certificate.txt").find("found=true"), std::string::npos);
    const std::string path = config("p.json",
                                    R"({"chain": {"n_pairs": 2, "pair_kind": "phi_i", "hwp_before_pbs": true},
                                        "graph": {"kind": "path"}})");
    ASSERT_EQ(run("verify-graph", path), kOk) << err_.str();
    EXPECT_NE(read("out/certificate.txt").find("found=false"), std::string::npos);
}

TEST_F(CliTest, OversizeSearchIsRuntimeError) {
    const std::string big = config("big.json", R"({"chain": {"n_pairs": 4}})");
    EXPECT_EQ(run("verify-graph", big), kRuntimeError);
    EXPECT_NE(err_.str().find("search too large"), std::string::npos);
}

TEST_F(CliTest, EchoedConfigReproducesOutputs) {
    const std::string cfg = config("mc.json", R"({"experiment": {"duration": 0.0005, "pair_prob": 0.1, "det_efficiency": 0.5, "threads": 1}})");
    ASSERT_EQ(run("montecarlo", cfg, "first"), kOk) << err_.str();
    const std::string echoed = (dir_ / "first/effective_config.json").string();
    ASSERT_EQ(run("montecarlo", echoed, "second"), kOk) << err_.str();
    EXPECT_EQ(read("first/count_summary.txt"), read("second/count_summary.txt"));
    EXPECT_EQ(read("first/effective_config.json"), read("second/effective_config.json"));
}

TEST_F(CliTest, AnalyzeAndRatesRun) {
    const std::string cfg = config("an.json", R"({"chain": {"pair_kind": "phi_i", "hwp_before_pbs": true},
                                                 "analysis": {"target_visibility": 0.695, "visibility_uncertainty": 0.008}})");
    ASSERT_EQ(run("analyze", cfg), kOk) << err_.str();
    EXPECT_NE(read("out/analysis_summary.txt").find("source_quality"), std::string::npos);
    ASSERT_EQ(run("rates", ""), kOk) << err_.str();
    EXPECT_TRUE(fs::exists(dir_ / "out/dead_time.csv"));
}

}  // namespace
}  // namespace photonmux::cli

// Copyright 2026 The Noumenal Authors
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


#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "gtest/gtest.h"

#include "noumenal/serialize.hpp"

namespace {

struct CliRun {
    int exit_code = -1;
    std::string out;
};

CliRun run(const std::string &args) {
    const std::string cmd = std::string(NOUMENAL_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string &name) { return std::string(NOUMENAL_TEST_DATA) + "/" + name; }

}  // namespace

TEST(cli, verify_passes_with_json) {
    const CliRun r = run("verify --atoms 2x2 --trials 3 --seed 5 --format json");
    ASSERT_EQ(r.exit_code, 0);
    const auto j = noumenal::json::parse(r.out);
    EXPECT_EQ(j.at("command"), "verify");
    EXPECT_EQ(j.at("passed"), true);
    EXPECT_EQ(j.at("seed"), 5);
    EXPECT_EQ(j.at("trials"), 3);
}

TEST(cli, verify_is_deterministic) {
    const CliRun a = run("verify --atoms 2x3 --trials 3 --seed 11 --format json");
    const CliRun b = run("verify --atoms 2x3 --trials 3 --seed 11 --format json");
    ASSERT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
    const CliRun c = run("verify --atoms 2x3 --trials 3 --seed 12 --format json");
    EXPECT_NE(a.out, c.out);
}

TEST(cli, self_test_bug_fails) {
    const CliRun r = run("verify --atoms 2x2 --trials 2 --self-test-bug --format json");
    EXPECT_EQ(r.exit_code, 1);
    const auto j = noumenal::json::parse(r.out);
    EXPECT_EQ(j.at("passed"), false);
    EXPECT_EQ(j.at("fault_injected"), true);
}

TEST(cli, input_errors_exit_with_two) {
    EXPECT_EQ(run("verify --atoms 2xq").exit_code, 2);
    EXPECT_EQ(run("verify --atoms 2x2x2x2x2x2 --trials 1").exit_code, 2);
    EXPECT_EQ(run("demo nonsense").exit_code, 2);
    EXPECT_EQ(run("demo bell-incompleteness --atoms 2x3").exit_code, 2);
    EXPECT_EQ(run("simulate --file /nonexistent.json").exit_code, 2);
    EXPECT_EQ(run("verify --format yaml").exit_code, 2);
    EXPECT_EQ(run("").exit_code, 2);
}

TEST(cli, bell_demo) {
    const CliRun r = run("demo bell-incompleteness --hadamard --format json");
    ASSERT_EQ(r.exit_code, 0);
    const auto j = noumenal::json::parse(r.out);
    for (const auto &f : j.at("findings")) EXPECT_TRUE(f.at("verdict").get<bool>()) << f.at("id");
    const CliRun text = run("demo bell-incompleteness --swap-roles --format text");
    EXPECT_EQ(text.exit_code, 0);
    EXPECT_NE(text.out.find("A = atom 1"), std::string::npos);
}

TEST(cli, no_signalling_demo) {
    const CliRun r = run("demo no-signalling --atoms 2x2x2 --bipartition \"0;2\" --trials 5 --format json");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(noumenal::json::parse(r.out).at("findings").size(), 2u);
    EXPECT_EQ(run("demo no-signalling --atoms 2x2 --bipartition \"0;0\"").exit_code, 2);
}

TEST(cli, simulate_bell_file) {
    const CliRun r = run("simulate --file " + data("bell.json") + " --format json");
    ASSERT_EQ(r.exit_code, 0);
    const auto j = noumenal::json::parse(r.out);
    EXPECT_EQ(j.at("command"), "simulate");
    EXPECT_EQ(j.at("steps").size(), 3u);
    const CliRun tracked = run("simulate --file " + data("bell.json") + " --track \"1\" --format json");
    ASSERT_EQ(tracked.exit_code, 0);
    const auto steps = noumenal::json::parse(tracked.out).at("steps");
    EXPECT_EQ(steps.at(0).at("tracked").size(), 1u);
    EXPECT_EQ(steps.at(0).at("tracked").at(0).at("system"), noumenal::json::array({1}));
}

TEST(cli, simulate_rejects_bad_file) {
    const auto path = std::filesystem::temp_directory_path() / "noumenal_cli_bad.json";
    {
        std::ofstream out(path);
        out << R"({"atoms": [{"id": 0, "dim": 2}], "gates": [{"name": "CNOT", "targets": [0]}]})";
    }
    EXPECT_EQ(run("simulate --file " + path.string()).exit_code, 2);
    {
        std::ofstream out(path);
        out << "{not json";
    }
    EXPECT_EQ(run("simulate --file " + path.string()).exit_code, 2);
    std::filesystem::remove(path);
}

TEST(cli, max_dim_environment_override) {
    EXPECT_EQ(run("verify --atoms 2x2x2 --trials 1").exit_code, 0);
    const std::string cmd = "env NOUMENAL_MAX_DIM=4 " + std::string(NOUMENAL_CLI_PATH) +
                            " verify --atoms 2x2x2 --trials 1 >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    EXPECT_EQ(WEXITSTATUS(status), 2);
}

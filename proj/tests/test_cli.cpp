/* 
* Copyright (C) 2026 The idesecir authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/

#include "idesecir/cli.h"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace idesecir;

namespace
{

namespace fs = std::filesystem;

fs::path config_path(const std::string& name)
{
    return fs::path(IDESECIR_SOURCE_DIR) / "configs" / name;
}

fs::path scratch_dir(const std::string& name)
{
    auto p = fs::temp_directory_path() / ("idesecir_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

nlohmann::json load(const fs::path& p)
{
    std::ifstream in(p);
    return nlohmann::json::parse(in);
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_config(const fs::path& dir, const nlohmann::json& j)
{
    auto p = dir / "config.json";
    std::ofstream(p) << j.dump(2);
    return p;
}

} // namespace

TEST(TestCli, scenarioMissingCsvFails)
{
    auto dir = scratch_dir("missing");
    auto j   = load(config_path("scenario.json"));
    j["cases_csv"] = (dir / "no_such_cases.csv").string();
    j.erase("icu_csv");
    Overrides o;
    o.out_dir = (dir / "out").string();
    std::ostringstream log, err;
    EXPECT_EQ(run("scenario", write_config(dir, j).string(), o, log, err), 1);
    EXPECT_NE(err.str().find("input file not found"), std::string::npos) << err.str();
}

TEST(TestCli, zeroHorizonWritesInitialRow)
{
    auto dir = scratch_dir("zero");
    Overrides o;
    o.t_end   = 0.0;
    o.out_dir = dir.string();
    std::ostringstream log, err;
    ASSERT_EQ(run("simulate-ide", config_path("simulate_ide_equilibrium.json").string(), o, log, err), 0) << err.str();
    std::istringstream csv(slurp(dir / "ide_result.csv"));
    std::string line;
    int lines = 0;
    while (std::getline(csv, line)) {
        ++lines;
    }
    EXPECT_EQ(lines, 2);
}

TEST(TestCli, outputIsReproducible)
{
    auto first  = scratch_dir("repro_a");
    auto second = scratch_dir("repro_b");
    Overrides o;
    o.t_end = 2.0;
    std::ostringstream log, err;
    o.out_dir = first.string();
    ASSERT_EQ(run("simulate-ide", config_path("simulate_ide_equilibrium.json").string(), o, log, err), 0) << err.str();
    o.out_dir = second.string();
    ASSERT_EQ(run("simulate-ide", config_path("simulate_ide_equilibrium.json").string(), o, log, err), 0) << err.str();
    auto a = slurp(first / "ide_result.csv");
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(second / "ide_result.csv"));
}

TEST(TestCli, convergenceReport)
{
    auto dir = scratch_dir("convergence");
    auto j   = load(config_path("convergence.json"));
    j["dts"]          = {0.1, 0.05};
    j["reference_dt"] = 1e-3;
    Overrides o;
    o.out_dir = (dir / "out").string();
    std::ostringstream log, err;
    ASSERT_EQ(run("convergence", write_config(dir, j).string(), o, log, err), 0) << err.str();
    auto report = load(dir / "out" / "error_report.json");
    EXPECT_EQ(report.at("quantities").size(), 18u);
    EXPECT_EQ(report.at("dts").size(), 2u);
}

TEST(TestCli, unknownExperiment)
{
    Overrides o;
    o.out_dir = scratch_dir("unknown").string();
    std::ostringstream log, err;
    EXPECT_NE(run("simulate-sir", config_path("simulate_ode.json").string(), o, log, err), 0);
    EXPECT_FALSE(err.str().empty());
}

TEST(TestCli, dtOverrideRejectedForConvergence)
{
    Overrides o;
    o.dt      = 0.1;
    o.out_dir = scratch_dir("dt").string();
    std::ostringstream log, err;
    EXPECT_NE(run("convergence", config_path("convergence.json").string(), o, log, err), 0);
    EXPECT_NE(err.str().find("--dt"), std::string::npos);
}

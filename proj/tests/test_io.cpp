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
#include "idesecir/io.h"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace idesecir;

namespace
{

std::filesystem::path scratch_dir(const std::string& name)
{
    auto p = std::filesystem::temp_directory_path() / ("idesecir_io_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(TestIo, formatDoubleRoundTrips)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1e9, 1e9);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng);
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
    EXPECT_EQ(format_double(0.0), "0");
}

TEST(TestIo, dates)
{
    auto d = parse_date("2020-10-01");
    EXPECT_EQ(format_date(d), "2020-10-01");
    EXPECT_EQ(format_date(d + std::chrono::days{31}), "2020-11-01");
    EXPECT_THROW(parse_date("2020-13-01"), Error);
    EXPECT_THROW(parse_date("01.10.2020"), Error);
}

TEST(TestIo, caseCsvRoundTrip)
{
    ReportedData data;
    const Date first = parse_date("2020-09-01");
    for (int i = 0; i < 10; ++i) {
        data.dates.push_back(first + std::chrono::days{i});
        data.cumulative_confirmed.push_back(100.0 + 12.345678901234567 * i);
        data.cumulative_deaths.push_back(1.0 / 3.0 * i);
    }
    data.icu_occupancy = std::vector<double>(10, 7.25);
    auto dir = scratch_dir("cases");
    write_case_csv(data, (dir / "cases.csv").string());
    write_icu_csv(data, (dir / "icu.csv").string());
    EXPECT_EQ(slurp(dir / "cases.csv").substr(0, 45), "date,cumulative_confirmed,cumulative_deaths\n2");

    auto back = read_case_csv((dir / "cases.csv").string());
    read_icu_csv((dir / "icu.csv").string(), back);
    EXPECT_EQ(back.dates, data.dates);
    EXPECT_EQ(back.cumulative_confirmed, data.cumulative_confirmed);
    EXPECT_EQ(back.cumulative_deaths, data.cumulative_deaths);
    EXPECT_EQ(*back.icu_occupancy, *data.icu_occupancy);
}

TEST(TestIo, caseCsvErrors)
{
    try {
        read_case_csv("/nonexistent/cases.csv");
        FAIL() << "expected an error";
    }
    catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("input file not found"), std::string::npos);
    }
    auto dir = scratch_dir("bad");
    std::ofstream(dir / "gap.csv") << "date,cumulative_confirmed,cumulative_deaths\n"
                                      "2020-10-01,1,0\n2020-10-03,2,0\n";
    EXPECT_THROW(read_case_csv((dir / "gap.csv").string()), Error);
    std::ofstream(dir / "header.csv") << "day,cases,deaths\n2020-10-01,1,0\n";
    EXPECT_THROW(read_case_csv((dir / "header.csv").string()), Error);
}

TEST(TestIo, resultCsvLayout)
{
    SimulationResult r;
    r.grid = TimeGrid(0.5, 0, 1);
    r.compartments.emplace_back(StateArray{10, 0, 0, 0, 0, 0, 0, 0});
    r.compartments.emplace_back(StateArray{9, 1, 0, 0, 0, 0, 0, 0});
    r.force_of_infection = {0.2, 0.1};
    r.flows.emplace(0.5, 0);
    r.flows->append_zero();
    FlowArray f{};
    f[0] = 2.0;
    r.flows->append(f);
    auto dir = scratch_dir("result");
    write_result_csv(r, (dir / "r.csv").string());
    std::istringstream in(slurp(dir / "r.csv"));
    std::string header, row0, row1, extra;
    std::getline(in, header);
    std::getline(in, row0);
    std::getline(in, row1);
    EXPECT_EQ(header, "t,S,E,C,I,H,U,R,D,lambda,sigma_SE,sigma_EC,sigma_CI,sigma_CR,sigma_IH,sigma_IR,sigma_HU,"
                      "sigma_HR,sigma_UD,sigma_UR");
    EXPECT_EQ(row0.substr(0, 5), "0,10,");
    EXPECT_EQ(row1.substr(0, 8), "0.5,9,1,");
    EXPECT_FALSE(std::getline(in, extra) && !extra.empty());
}

TEST(TestIo, errorReportJson)
{
    ErrorReport report;
    report.dts          = {0.1, 0.05};
    report.window_start = 35.0;
    report.window_end   = 70.0;
    report.reference_dt = 1e-5;
    report.quantities.push_back({"S", {0.2, 0.1}, 1.0});
    auto j = nlohmann::json::parse(error_report_json(report));
    EXPECT_EQ(j.at("dts").size(), 2u);
    EXPECT_EQ(j.at("window").at(1), 70.0);
    EXPECT_EQ(j.at("quantities").at("S").at("errors").at(1), 0.1);
    EXPECT_EQ(j.at("quantities").at("S").at("slope"), 1.0);
}

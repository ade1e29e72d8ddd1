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

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace idesecir
{

namespace
{

std::ofstream open_output(const std::string& path)
{
    auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
        std::filesystem::create_directories(parent);
    }
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open output file " + path);
    }
    return out;
}

std::ifstream open_input(const std::string& path)
{
    if (!std::filesystem::exists(path)) {
        throw Error("input file not found: " + path);
    }
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open input file " + path);
    }
    return in;
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

std::string trim(std::string s)
{
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) {
        s.pop_back();
    }
    while (!s.empty() && s.front() == ' ') {
        s.erase(s.begin());
    }
    return s;
}

double parse_number(const std::string& text, const std::string& path, std::size_t line)
{
    double v       = 0.0;
    auto s         = trim(text);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw Error(path + ":" + std::to_string(line) + ": invalid number '" + s + "'");
    }
    return v;
}

/// Rows of a CSV file with the given header, header checked exactly.
std::vector<std::vector<std::string>> read_rows(const std::string& path, const std::vector<std::string>& header)
{
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(path + ": missing header");
    }
    auto cells = split(trim(line));
    for (auto& c : cells) {
        c = trim(c);
    }
    if (cells != header) {
        std::string expected;
        for (const auto& h : header) {
            expected += (expected.empty() ? "" : ",") + h;
        }
        throw Error(path + ": header must be '" + expected + "'");
    }
    std::vector<std::vector<std::string>> rows;
    std::size_t n = 1;
    while (std::getline(in, line)) {
        ++n;
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto row = split(line);
        if (row.size() != header.size()) {
            throw Error(path + ":" + std::to_string(n) + ": expected " + std::to_string(header.size()) + " columns");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (ec != std::errc()) {
        throw Error("number formatting failed");
    }
    return std::string(buf, ptr);
}

Date parse_date(const std::string& text)
{
    auto s = trim(text);
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = 0;
    if (s.size() != 10 || std::sscanf(s.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3) {
        throw Error("invalid date '" + s + "', expected YYYY-MM-DD");
    }
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok()) {
        throw Error("invalid date '" + s + "'");
    }
    return Date(ymd);
}

std::string format_date(Date d)
{
    std::chrono::year_month_day ymd(d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

void write_result_csv(const SimulationResult& result, const std::string& path)
{
    if (!result.flows || result.force_of_infection.size() != result.compartments.size()) {
        throw Error("result has no flows to write");
    }
    auto out = open_output(path);
    out << "t";
    for (auto s : all_states) {
        out << ',' << state_label(s);
    }
    out << ",lambda";
    for (auto t : all_transitions) {
        out << ',' << transition_label(t);
    }
    out << '\n';
    for (std::size_t k = 0; k < result.compartments.size(); ++k) {
        const auto kk = static_cast<Index>(k);
        out << format_double(result.time(kk));
        for (auto s : all_states) {
            out << ',' << format_double(result.compartments[k][s]);
        }
        out << ',' << format_double(result.force_of_infection[k]);
        for (auto t : all_transitions) {
            out << ',' << format_double(result.flows->value(t, kk));
        }
        out << '\n';
    }
}

ReportedData read_case_csv(const std::string& path)
{
    auto rows = read_rows(path, {"date", "cumulative_confirmed", "cumulative_deaths"});
    ReportedData data;
    std::size_t line = 1;
    for (const auto& r : rows) {
        ++line;
        data.dates.push_back(parse_date(r[0]));
        data.cumulative_confirmed.push_back(parse_number(r[1], path, line));
        data.cumulative_deaths.push_back(parse_number(r[2], path, line));
    }
    validate_reported_data(data);
    return data;
}

void read_icu_csv(const std::string& path, ReportedData& data)
{
    auto rows = read_rows(path, {"date", "icu_occupancy"});
    std::vector<double> icu(data.dates.size(), 0.0);
    std::vector<bool> seen(data.dates.size(), false);
    std::size_t line = 1;
    for (const auto& r : rows) {
        ++line;
        auto d = parse_date(r[0]);
        auto it = std::find(data.dates.begin(), data.dates.end(), d);
        if (it == data.dates.end()) {
            continue;
        }
        auto i  = static_cast<std::size_t>(it - data.dates.begin());
        icu[i]  = parse_number(r[1], path, line);
        seen[i] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw Error(path + ": icu data does not cover all case data dates");
    }
    data.icu_occupancy = std::move(icu);
    validate_reported_data(data);
}

void write_case_csv(const ReportedData& data, const std::string& path)
{
    auto out = open_output(path);
    out << "date,cumulative_confirmed,cumulative_deaths\n";
    for (std::size_t i = 0; i < data.dates.size(); ++i) {
        out << format_date(data.dates[i]) << ',' << format_double(data.cumulative_confirmed[i]) << ','
            << format_double(data.cumulative_deaths[i]) << '\n';
    }
}

void write_icu_csv(const ReportedData& data, const std::string& path)
{
    if (!data.icu_occupancy) {
        throw Error("no icu data to write");
    }
    auto out = open_output(path);
    out << "date,icu_occupancy\n";
    for (std::size_t i = 0; i < data.dates.size(); ++i) {
        out << format_date(data.dates[i]) << ',' << format_double((*data.icu_occupancy)[i]) << '\n';
    }
}

void write_comparison_csv(const ComparisonSeries& series, Date start, const std::string& path)
{
    auto out = open_output(path);
    out << "t,date,new_transmissions_rep,infected_rep,deaths_rep";
    if (series.icu) {
        out << ",icu_rep";
    }
    out << '\n';
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        const double t = series.times[i];
        out << format_double(t) << ',' << format_date(start + std::chrono::days{static_cast<int>(std::floor(t))})
            << ',' << format_double(series.new_transmissions[i]) << ',' << format_double(series.infected[i]) << ','
            << format_double(series.deaths[i]);
        if (series.icu) {
            out << ',' << format_double((*series.icu)[i]);
        }
        out << '\n';
    }
}

void write_changepoint_csv(const ChangepointResult& result, const std::string& path)
{
    auto out = open_output(path);
    out << "t,ide_sigma_SE,ode_sigma_SE\n";
    const auto se = TransitionId::SusceptibleToExposed;
    for (Index k = 0; k <= result.ide.grid.final_index(); ++k) {
        out << format_double(result.ide.time(k)) << ',' << format_double(result.ide.flows->value(se, k)) << ','
            << format_double(result.ode.flows->value(se, k)) << '\n';
    }
}

std::string error_report_json(const ErrorReport& report)
{
    nlohmann::ordered_json j;
    j["reference_dt"] = report.reference_dt;
    j["window"]       = {report.window_start, report.window_end};
    j["dts"]          = report.dts;
    auto& q           = j["quantities"];
    q                 = nlohmann::ordered_json::object();
    for (const auto& e : report.quantities) {
        q[e.name] = {{"errors", e.errors}, {"slope", e.slope}};
    }
    return j.dump(2);
}

void write_error_report(const ErrorReport& report, const std::string& path)
{
    auto out = open_output(path);
    out << error_report_json(report) << '\n';
}

} // namespace idesecir

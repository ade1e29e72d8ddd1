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

#ifndef IDESECIR_IO_H
#define IDESECIR_IO_H

#include "idesecir/core_types.h"
#include "idesecir/data_init.h"
#include "idesecir/experiments.h"

#include <string>

namespace idesecir
{

/// Shortest round-trip text of a double with at most 17 significant digits, '.' as separator.
std::string format_double(double v);

Date parse_date(const std::string& text);
std::string format_date(Date d);

/// Header: t,S,E,C,I,H,U,R,D,lambda,sigma_SE,...,sigma_UR.
void write_result_csv(const SimulationResult& result, const std::string& path);

/// Reads date,cumulative_confirmed,cumulative_deaths.
ReportedData read_case_csv(const std::string& path);
/// Reads date,icu_occupancy and attaches it; dates must match the case data.
void read_icu_csv(const std::string& path, ReportedData& data);
void write_case_csv(const ReportedData& data, const std::string& path);
void write_icu_csv(const ReportedData& data, const std::string& path);

void write_comparison_csv(const ComparisonSeries& series, Date start, const std::string& path);
/// Per-step sigma_SE of both models of a change-point run.
void write_changepoint_csv(const ChangepointResult& result, const std::string& path);

std::string error_report_json(const ErrorReport& report);
void write_error_report(const ErrorReport& report, const std::string& path);

} // namespace idesecir

#endif // IDESECIR_IO_H

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

#ifndef IDESECIR_DATA_INIT_H
#define IDESECIR_DATA_INIT_H

#include "idesecir/core_types.h"
#include "idesecir/parameters.h"

#include <chrono>
#include <optional>
#include <span>
#include <vector>

namespace idesecir
{

using Date = std::chrono::sys_days;

/**
 * @brief Daily cumulative confirmed cases and deaths, optionally with ICU occupancy.
 */
struct ReportedData {
    std::vector<Date> dates;
    std::vector<double> cumulative_confirmed;
    std::vector<double> cumulative_deaths;
    std::optional<std::vector<double>> icu_occupancy;
};

/// Throws unless dates are contiguous and the cumulative series are nonnegative and nondecreasing.
void validate_reported_data(const ReportedData& data);

/// First differences of a nondecreasing cumulative series.
std::vector<double> daily_flow_from_cumulative(std::span<const double> cumulative);

/**
 * @brief Spreads daily totals onto a grid of step dt by linear interpolation of the daily rates,
 * renormalized so that every day keeps its total.
 *
 * Entry d * (1/dt) + j covers the j-th sub-interval of day d; the rate of day d is placed at its right end.
 */
std::vector<double> interpolate_subdaily(std::span<const double> daily, double dt);

/// Number of grid steps nearest to duration t; ties round up.
Index round_to_grid_steps(double t, double dt);

struct BackshiftedFlows {
    Index shift_exposed_to_carrier;
    Index shift_susceptible_to_exposed;
    /// Entry i is sigma_CI at i + shift_exposed_to_carrier divided by mu_CI.
    std::vector<double> exposed_to_carrier;
    /// Entry i is sigma_CI at i + shift_susceptible_to_exposed divided by mu_CI.
    std::vector<double> susceptible_to_exposed;
};

/**
 * @brief Derives E -> C and S -> E flows from C -> I by shifting back by the rounded mean stay times.
 *
 * Both outputs have length sigma_CI.size() - shift_susceptible_to_exposed.
 */
BackshiftedFlows backshift_flows(std::span<const double> sigma_CI, const ParameterSet& params, double dt);

struct DataInitOptions {
    /// Multiplier on reported cases, 1 means no undetected infections.
    double case_scale = 1.0;
};

struct InitialState {
    FlowHistory history;
    CompartmentState compartments;
};

/// Number of pre-history steps used by build_initial_history: the longest kernel support.
Index history_steps(const ParameterSet& params, double dt);

/**
 * @brief Pre-history flows and compartments at t0 from reported data.
 */
InitialState build_initial_history(const ReportedData& data, const ParameterSet& params, double dt, Date t0,
                                   const DataInitOptions& options = {});

/// Reported cumulative value at a fractional day offset from t0, linearly interpolated.
double interpolate_reported(const ReportedData& data, std::span<const double> series, Date t0, double offset);

struct ComparisonSeries {
    std::vector<double> times;
    std::vector<double> new_transmissions;
    std::vector<double> infected;
    std::vector<double> deaths;
    std::optional<std::vector<double>> icu;
};

/**
 * @brief Reported-data counterparts of new transmissions, I and D at the given offsets (days) from t0.
 */
ComparisonSeries extrapolate_comparison_series(const ReportedData& data, const ParameterSet& params, Date t0,
                                               std::span<const double> times);

} // namespace idesecir

#endif // IDESECIR_DATA_INIT_H

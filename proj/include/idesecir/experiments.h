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

#ifndef IDESECIR_EXPERIMENTS_H
#define IDESECIR_EXPERIMENTS_H

#include "idesecir/core_types.h"
#include "idesecir/data_init.h"
#include "idesecir/ide_solver.h"
#include "idesecir/ode_reference.h"
#include "idesecir/parameters.h"

#include <span>
#include <string>
#include <vector>

namespace idesecir
{

/**
 * @brief Relative discrete L2 error ||approx - reference|| / ||reference|| of two equally sampled series.
 * @throws Error if the reference has zero norm or the lengths differ.
 */
double discrete_l2_error(std::span<const double> approx, std::span<const double> reference, double dt);

/// Least-squares slope of log(error) against log(dt).
double fit_log_slope(std::span<const double> dts, std::span<const double> errors);

struct QuantityError {
    std::string name;
    std::vector<double> errors;
    double slope = 0.0;
};

struct ErrorReport {
    std::vector<double> dts;
    double window_start   = 0.0;
    double window_end     = 0.0;
    double reference_dt   = 0.0;
    /// S .. D followed by sigma_SE .. sigma_UR.
    std::vector<QuantityError> quantities;
};

/// Schedule seen from a clock that starts at offset; segments before offset collapse onto time 0.
ContactSchedule shift_schedule(const ContactSchedule& contact, double offset);

/// IDE parameters with exponential stay times equal to the ODE stay times.
ParameterSet ide_parameters_from_ode(const OdeParameterSet& ode, double epsilon = default_epsilon);

struct ConvergenceConfig {
    OdeParameters ode;
    StateArray initial{};
    double t_history    = 35.0;
    double t_end        = 70.0;
    double reference_dt = 1e-5;
    double epsilon      = default_epsilon;
};

/**
 * @brief Errors of IDE runs at several step sizes against a fine ODE solution.
 *
 * The ODE runs on [0, t_end]; its flows on [0, t_history] seed the IDE, which runs on [t_history, t_end].
 * Step sizes are processed concurrently; the report is ordered as dts.
 */
ErrorReport convergence_study(std::span<const double> dts, const ConvergenceConfig& config);

/**
 * @brief Pre-history with constant flows such that new transmissions are stationary at t_0.
 *
 * All flows are constant with sigma_SE = new_transmissions; S solves S * lambda / (1 + dt * lambda) = new_transmissions,
 * R is the remainder.
 */
InitialState equilibrium_initial_state(const ParameterSet& params, double dt, double new_transmissions, double deaths);

/// ODE state with constant flows and new transmissions at the given rate.
CompartmentState ode_equilibrium_state(const OdeParameterSet& params, double new_transmissions, double deaths);

struct ChangepointConfig {
    ModelParameters ide;
    OdeStayTimes ode_stay_times{};
    double new_transmissions = 4000.0;
    double deaths            = 0.0;
    double change_time       = 2.0;
    double t_end             = 12.0;
    double dt                = 0.01;
};

struct ChangepointResult {
    double factor = 1.0;
    SimulationResult ide;
    SimulationResult ode;
    double ide_jump      = 0.0;
    double ode_jump      = 0.0;
    /// Largest relative deviation from the post-jump value over the half day after the change.
    double ide_lag_drift = 0.0;
    double ode_lag_drift = 0.0;
};

/// Multiplies the contact rate by factor at change_time in both models.
ChangepointResult changepoint_experiment(double factor, const ChangepointConfig& config);

struct ScenarioConfig {
    ModelParameters ide;
    /// Stay times of the ODE; derived by weighted means if absent.
    std::optional<OdeStayTimes> ode_stay_times;
    Date start;
    double t_end = 45.0;
    double dt    = 0.01;
    DataInitOptions data_options;
};

struct ScenarioResult {
    SimulationResult ide;
    SimulationResult ode;
    ComparisonSeries comparison;
};

ScenarioResult scenario_run(const ReportedData& data, const ScenarioConfig& config);

struct SyntheticDataConfig {
    /// Parameters of the generating run; contact times are relative to the generator start.
    ModelParameters ide;
    /// Persons exposed during the day before the generator start.
    double seed_infections = 100.0;
    double dt              = 0.01;
    /// Days the generator runs before the start date.
    Index days_before = 200;
    /// Days of data from the start date on.
    Index days_after = 60;
    Date start;
};

struct SyntheticData {
    ReportedData data;
    SimulationResult generator;
    /// Grid index of the start date in the generator run.
    Index start_index = 0;
};

/**
 * @brief Forward IDE run from a seeded, otherwise infection-free population turned into reported data.
 *
 * Confirmed cases are the cumulative C -> I flow; deaths of day d are the generator's D at d plus the
 * mean delay from I to D. Rows before the generator start are zero and are added so that the data covers
 * the full initialization window of the start date.
 */
SyntheticData synthesize_reported_data(const SyntheticDataConfig& config);

} // namespace idesecir

#endif // IDESECIR_EXPERIMENTS_H

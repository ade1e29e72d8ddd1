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

#ifndef IDESECIR_ODE_REFERENCE_H
#define IDESECIR_ODE_REFERENCE_H

#include "idesecir/core_types.h"
#include "idesecir/parameters.h"

namespace idesecir
{

/// Mean stay times of the ODE compartments E .. U in days.
struct OdeStayTimes {
    double exposed;
    double carrier;
    double infected;
    double hospitalized;
    double icu;
};

struct OdeParameters {
    double total_population = 0.0;
    OdeStayTimes stay_times{1.0, 1.0, 1.0, 1.0, 1.0};
    double mu_CI = 0.5;
    double mu_IH = 0.5;
    double mu_HU = 0.5;
    double mu_UD = 0.5;
    ContactSchedule contact{1.0};
    double rho  = 1.0;
    double xi_C = 1.0;
    double xi_I = 1.0;
};

/**
 * @brief Validated parameters of the ODE-SECIR model.
 */
class OdeParameterSet
{
public:
    const OdeParameters& values() const
    {
        return m_values;
    }
    double total_population() const
    {
        return m_values.total_population;
    }

private:
    explicit OdeParameterSet(OdeParameters v)
        : m_values(std::move(v))
    {
    }
    friend OdeParameterSet validate_ode_parameters(OdeParameters p);

    OdeParameters m_values;
};

OdeParameterSet validate_ode_parameters(OdeParameters p);

/// Right-hand side with a given contact rate.
StateArray ode_rhs(const StateArray& y, double phi, const OdeParameterSet& p);
/// Right-hand side with the contact rate of the schedule at time t.
StateArray ode_rhs(const CompartmentState& y, double t, const OdeParameterSet& p);

/// Pointwise flows of the ODE state; sigma_SE uses the given contact rate.
FlowArray ode_flows(const StateArray& y, double phi, const OdeParameterSet& p);
double ode_force_of_infection(const StateArray& y, double phi, const OdeParameterSet& p);

/**
 * @brief Fixed-step Dormand-Prince order-5 integration on [t0, t1].
 *
 * The contact rate is held at its value at the start of each step, so grid-aligned changes are exact.
 * @param output_stride Store every output_stride-th step; must divide the step count.
 */
SimulationResult rk_integrate(const OdeParameterSet& p, const CompartmentState& y0, double t0, double t1, double dt,
                              Index output_stride = 1);

/// Fills flows (indices 0 .. n_max) and force of infection of an ODE result from its compartments.
void attach_ode_flows(SimulationResult& ode, const OdeParameterSet& p);

/**
 * @brief Pre-history for the IDE from ODE compartments.
 *
 * Index 0 is the row at time t_origin; all earlier rows become indices -1, -2, .. and a is one below the first row.
 */
FlowHistory extract_ide_flows_from_ode(const SimulationResult& ode, const OdeParameterSet& p, double t_origin);

/// Reduction of an IDE parameter set with exponential stay times to the ODE model.
OdeParameterSet reduce_ide_to_ode(const ParameterSet& ide);

/// Stay times as probability-weighted means of the two branch distributions of each compartment.
OdeStayTimes weighted_ode_mean_stay_times(const ParameterSet& ide);
/**
 * @param means Mean stay time per transition (entry for S -> E ignored).
 * @param mu mu_CI, mu_IH, mu_HU, mu_UD.
 */
OdeStayTimes weighted_ode_mean_stay_times(const FlowArray& means, const std::array<double, 4>& mu);

} // namespace idesecir

#endif // IDESECIR_ODE_REFERENCE_H

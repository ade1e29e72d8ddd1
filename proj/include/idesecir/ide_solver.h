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

#ifndef IDESECIR_IDE_SOLVER_H
#define IDESECIR_IDE_SOLVER_H

#include "idesecir/convolution.h"
#include "idesecir/core_types.h"
#include "idesecir/parameters.h"

#include <optional>
#include <vector>

namespace idesecir
{

/// Relative tolerance for the total population check.
inline constexpr double mass_tolerance = 1e-9;

struct SolverOptions {
    kernels::Backend backend = kernels::Backend::Parallel;
    /// Check positivity, monotonicity and mass conservation after every step.
    bool check_invariants = true;
};

/**
 * @brief Convolution weights of one parameter set on one step size.
 *
 * Index k of every array corresponds to lag k + 1, i.e. it multiplies the flow k steps before the newest one.
 */
struct KernelSet {
    double dt = 0.0;
    /// mu * (gamma(t_k) - gamma(t_{k+1})), the negated and dt-scaled backwards differences; empty for S -> E.
    std::array<std::vector<double>, num_transitions> flow_weights;
    /// mu * gamma_1(t_{k+1}) + (1 - mu) * gamma_2(t_{k+1}) for E .. U; empty otherwise.
    std::array<std::vector<double>, num_states> survival_weights;
    /// xi_C * rho_C times the C survival weights.
    std::vector<double> foi_carrier;
    /// xi_I * rho_I times the I survival weights.
    std::vector<double> foi_infected;
};

KernelSet build_kernels(const ParameterSet& params, double dt);

/**
 * @brief Parameters, pre-history and initial compartments of one IDE simulation.
 */
class IdeModel
{
public:
    /**
     * @param history Flows for indices a+1 .. 0.
     * @param initial Compartments at t_0; must sum to N with D < N.
     */
    IdeModel(ParameterSet params, FlowHistory history, CompartmentState initial, SolverOptions options = {});

    const ParameterSet& parameters() const
    {
        return m_params;
    }
    double dt() const
    {
        return m_history.dt();
    }
    const FlowHistory& history() const
    {
        return m_history;
    }
    const CompartmentState& initial_compartments() const
    {
        return m_initial;
    }
    const SolverOptions& options() const
    {
        return m_options;
    }
    const KernelSet& kernels() const
    {
        return m_kernels;
    }

private:
    ParameterSet m_params;
    FlowHistory m_history;
    CompartmentState m_initial;
    SolverOptions m_options;
    KernelSet m_kernels;
};

/**
 * @brief Force of infection lambda(t_{n+1}) from flows up to index n+1 and deaths D(t_n).
 *
 * n = -1 yields lambda(t_0) from the pre-history alone.
 */
double force_of_infection(const IdeModel& model, const FlowHistory& history, Index n, double deaths);

struct SusceptibleStep {
    double susceptible;
    double new_transmissions;
};

/// S_{n+1} = S_n / (1 + dt * lambda_n) and sigma_SE(t_{n+1}) = S_{n+1} * lambda_n.
SusceptibleStep step_susceptible(double susceptible, double lambda, double dt);

/**
 * @brief Appends index n+1 to the history: sigma_SE as given, the other nine flows in dependency order.
 * @return All ten flows at t_{n+1}.
 */
FlowArray step_flows(const IdeModel& model, FlowHistory& history, Index n, double sigma_SE);

/**
 * @brief Compartments at t_{n+1} from convolution sums over the history.
 *
 * Transient compartments use survival weights; R and D add dt times their inflows at 1 .. n+1
 * to their values at t_0.
 */
CompartmentState compartments_sum_discretization(const IdeModel& model, const FlowHistory& history, Index n,
                                                 double susceptible);

/// Compartments at t_{n+1} = previous + dt * (inflows - outflows).
CompartmentState compartments_update_discretization(const CompartmentState& previous, const FlowArray& flows,
                                                    double dt);

SimulationResult simulate(const IdeModel& model, double t_end, DiscretizationMode mode = DiscretizationMode::Update);

/**
 * @brief Compartments at the last history index from the history by sum discretization.
 *
 * E .. U come from survival-weighted sums. D is given. If susceptible is given, R is the remainder
 * N - (all others); otherwise R is dt times the sum of all stored recovery flows and S is the remainder.
 * @throws Error if a remainder is negative.
 */
CompartmentState compartments_from_history(const ParameterSet& params, const FlowHistory& history, double deaths,
                                           std::optional<double> susceptible = std::nullopt);

} // namespace idesecir

#endif // IDESECIR_IDE_SOLVER_H

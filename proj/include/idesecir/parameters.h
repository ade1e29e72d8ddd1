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

#ifndef IDESECIR_PARAMETERS_H
#define IDESECIR_PARAMETERS_H

#include "idesecir/core_types.h"
#include "idesecir/distributions.h"

#include <map>

namespace idesecir
{

/**
 * @brief Unvalidated model parameters; turned into a ParameterSet by validate_parameters().
 */
struct ModelParameters {
    double total_population = 0.0;
    double mu_CI            = 0.5;
    double mu_IH            = 0.5;
    double mu_HU            = 0.5;
    double mu_UD            = 0.5;
    ContactSchedule contact{1.0};
    AgeDependentFactor rho_C{1.0};
    AgeDependentFactor rho_I{1.0};
    AgeDependentFactor xi_C{1.0};
    AgeDependentFactor xi_I{1.0};
    /// One distribution per transition except S -> E.
    std::map<TransitionId, TransitionDistribution> gamma;
};

/**
 * @brief Validated, immutable IDE model parameters.
 */
class ParameterSet
{
public:
    double total_population() const
    {
        return m_raw.total_population;
    }
    /// Branching probability mu or 1 - mu of a transition; 1 for S -> E and E -> C.
    double probability(TransitionId t) const;
    const TransitionDistribution& distribution(TransitionId t) const;
    const ContactSchedule& contact() const
    {
        return m_raw.contact;
    }
    const AgeDependentFactor& rho_C() const
    {
        return m_raw.rho_C;
    }
    const AgeDependentFactor& rho_I() const
    {
        return m_raw.rho_I;
    }
    const AgeDependentFactor& xi_C() const
    {
        return m_raw.xi_C;
    }
    const AgeDependentFactor& xi_I() const
    {
        return m_raw.xi_I;
    }
    const ModelParameters& raw() const
    {
        return m_raw;
    }

private:
    explicit ParameterSet(ModelParameters raw)
        : m_raw(std::move(raw))
    {
    }
    friend ParameterSet validate_parameters(ModelParameters p);

    ModelParameters m_raw;
};

/**
 * @brief Checks all parameter invariants and returns the validated set.
 * @throws Error naming the first violated invariant.
 */
ParameterSet validate_parameters(ModelParameters p);

/// The downstream transition leaving compartment s in the "first branch", e.g. C -> I for C.
TransitionId first_branch(InfectionState s);
/// The second transition leaving s, e.g. C -> R for C; E has none.
std::optional<TransitionId> second_branch(InfectionState s);
/// Inflow transition of a compartment other than S.
TransitionId inflow_transition(InfectionState s);

} // namespace idesecir

#endif // IDESECIR_PARAMETERS_H

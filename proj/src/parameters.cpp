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

#include "idesecir/parameters.h"

#include <cmath>

namespace idesecir
{

namespace
{

void check_probability(double mu, const char* name)
{
    if (!(mu >= 0.0 && mu <= 1.0)) {
        throw Error(std::string(name) + " outside [0, 1]");
    }
}

} // namespace

double ParameterSet::probability(TransitionId t) const
{
    switch (t) {
    case TransitionId::SusceptibleToExposed:
    case TransitionId::ExposedToCarrier:
        return 1.0;
    case TransitionId::CarrierToInfected:
        return m_raw.mu_CI;
    case TransitionId::CarrierToRecovered:
        return 1.0 - m_raw.mu_CI;
    case TransitionId::InfectedToHospitalized:
        return m_raw.mu_IH;
    case TransitionId::InfectedToRecovered:
        return 1.0 - m_raw.mu_IH;
    case TransitionId::HospitalizedToIntensiveCare:
        return m_raw.mu_HU;
    case TransitionId::HospitalizedToRecovered:
        return 1.0 - m_raw.mu_HU;
    case TransitionId::IntensiveCareToDead:
        return m_raw.mu_UD;
    case TransitionId::IntensiveCareToRecovered:
        return 1.0 - m_raw.mu_UD;
    case TransitionId::Count:
        break;
    }
    throw Error("invalid transition");
}

const TransitionDistribution& ParameterSet::distribution(TransitionId t) const
{
    auto it = m_raw.gamma.find(t);
    if (it == m_raw.gamma.end()) {
        throw Error("no distribution for " + std::string(transition_label(t)));
    }
    return it->second;
}

ParameterSet validate_parameters(ModelParameters p)
{
    if (!(p.total_population > 0.0) || !std::isfinite(p.total_population)) {
        throw Error("total_population must be positive");
    }
    check_probability(p.mu_CI, "mu_CI");
    check_probability(p.mu_IH, "mu_IH");
    check_probability(p.mu_HU, "mu_HU");
    check_probability(p.mu_UD, "mu_UD");
    if (!(p.mu_CI * p.mu_IH * p.mu_HU * p.mu_UD < 1.0)) {
        throw Error("mu product not < 1");
    }
    for (auto t : all_transitions) {
        bool present = p.gamma.count(t) > 0;
        if (t == TransitionId::SusceptibleToExposed && present) {
            throw Error("distribution given for sigma_SE, which has none");
        }
        if (t != TransitionId::SusceptibleToExposed && !present) {
            throw Error("missing distribution for " + std::string(transition_label(t)));
        }
    }
    return ParameterSet(std::move(p));
}

TransitionId first_branch(InfectionState s)
{
    switch (s) {
    case InfectionState::Susceptible:
        return TransitionId::SusceptibleToExposed;
    case InfectionState::Exposed:
        return TransitionId::ExposedToCarrier;
    case InfectionState::Carrier:
        return TransitionId::CarrierToInfected;
    case InfectionState::Infected:
        return TransitionId::InfectedToHospitalized;
    case InfectionState::Hospitalized:
        return TransitionId::HospitalizedToIntensiveCare;
    case InfectionState::IntensiveCare:
        return TransitionId::IntensiveCareToDead;
    default:
        throw Error("compartment " + std::string(state_label(s)) + " has no outflow");
    }
}

std::optional<TransitionId> second_branch(InfectionState s)
{
    switch (s) {
    case InfectionState::Carrier:
        return TransitionId::CarrierToRecovered;
    case InfectionState::Infected:
        return TransitionId::InfectedToRecovered;
    case InfectionState::Hospitalized:
        return TransitionId::HospitalizedToRecovered;
    case InfectionState::IntensiveCare:
        return TransitionId::IntensiveCareToRecovered;
    default:
        return std::nullopt;
    }
}

TransitionId inflow_transition(InfectionState s)
{
    switch (s) {
    case InfectionState::Exposed:
        return TransitionId::SusceptibleToExposed;
    case InfectionState::Carrier:
        return TransitionId::ExposedToCarrier;
    case InfectionState::Infected:
        return TransitionId::CarrierToInfected;
    case InfectionState::Hospitalized:
        return TransitionId::InfectedToHospitalized;
    case InfectionState::IntensiveCare:
        return TransitionId::HospitalizedToIntensiveCare;
    case InfectionState::Dead:
        return TransitionId::IntensiveCareToDead;
    default:
        throw Error("compartment " + std::string(state_label(s)) + " has no single inflow");
    }
}

} // namespace idesecir

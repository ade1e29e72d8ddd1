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

#include "idesecir/ode_reference.h"

#include <cmath>
#include <string>

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

void check_stay_time(double t, const char* name)
{
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw Error(std::string(name) + " must be positive");
    }
}

} // namespace

OdeParameterSet validate_ode_parameters(OdeParameters p)
{
    if (!(p.total_population > 0.0) || !std::isfinite(p.total_population)) {
        throw Error("total_population must be positive");
    }
    check_stay_time(p.stay_times.exposed, "T_E");
    check_stay_time(p.stay_times.carrier, "T_C");
    check_stay_time(p.stay_times.infected, "T_I");
    check_stay_time(p.stay_times.hospitalized, "T_H");
    check_stay_time(p.stay_times.icu, "T_U");
    check_probability(p.mu_CI, "mu_CI");
    check_probability(p.mu_IH, "mu_IH");
    check_probability(p.mu_HU, "mu_HU");
    check_probability(p.mu_UD, "mu_UD");
    check_probability(p.rho, "rho");
    check_probability(p.xi_C, "xi_C");
    check_probability(p.xi_I, "xi_I");
    if (!(p.mu_CI * p.mu_IH * p.mu_HU * p.mu_UD < 1.0)) {
        throw Error("mu product not < 1");
    }
    return OdeParameterSet(std::move(p));
}

double ode_force_of_infection(const StateArray& y, double phi, const OdeParameterSet& p)
{
    const auto& v  = p.values();
    const double N = v.total_population;
    const double D = y[idx(InfectionState::Dead)];
    if (!(D < N)) {
        throw Error("ode: D >= N");
    }
    return phi * v.rho * (v.xi_C * y[idx(InfectionState::Carrier)] + v.xi_I * y[idx(InfectionState::Infected)]) /
           (N - D);
}

FlowArray ode_flows(const StateArray& y, double phi, const OdeParameterSet& p)
{
    using T       = TransitionId;
    using Z       = InfectionState;
    const auto& v = p.values();
    const auto& T_ = v.stay_times;
    FlowArray f{};
    f[idx(T::SusceptibleToExposed)]        = y[idx(Z::Susceptible)] * ode_force_of_infection(y, phi, p);
    f[idx(T::ExposedToCarrier)]            = y[idx(Z::Exposed)] / T_.exposed;
    f[idx(T::CarrierToInfected)]           = v.mu_CI * y[idx(Z::Carrier)] / T_.carrier;
    f[idx(T::CarrierToRecovered)]          = (1.0 - v.mu_CI) * y[idx(Z::Carrier)] / T_.carrier;
    f[idx(T::InfectedToHospitalized)]      = v.mu_IH * y[idx(Z::Infected)] / T_.infected;
    f[idx(T::InfectedToRecovered)]         = (1.0 - v.mu_IH) * y[idx(Z::Infected)] / T_.infected;
    f[idx(T::HospitalizedToIntensiveCare)] = v.mu_HU * y[idx(Z::Hospitalized)] / T_.hospitalized;
    f[idx(T::HospitalizedToRecovered)]     = (1.0 - v.mu_HU) * y[idx(Z::Hospitalized)] / T_.hospitalized;
    f[idx(T::IntensiveCareToDead)]         = v.mu_UD * y[idx(Z::IntensiveCare)] / T_.icu;
    f[idx(T::IntensiveCareToRecovered)]    = (1.0 - v.mu_UD) * y[idx(Z::IntensiveCare)] / T_.icu;
    return f;
}

StateArray ode_rhs(const StateArray& y, double phi, const OdeParameterSet& p)
{
    const auto f = ode_flows(y, phi, p);
    StateArray d{};
    for (auto t : all_transitions) {
        d[idx(transition_source(t))] -= f[idx(t)];
        d[idx(transition_target(t))] += f[idx(t)];
    }
    return d;
}

StateArray ode_rhs(const CompartmentState& y, double t, const OdeParameterSet& p)
{
    return ode_rhs(y.values(), p.values().contact.rate_at(t), p);
}

SimulationResult rk_integrate(const OdeParameterSet& p, const CompartmentState& y0, double t0, double t1, double dt,
                              Index output_stride)
{
    if (output_stride < 1) {
        throw Error("rk_integrate: output stride must be >= 1");
    }
    const Index steps  = steps_for_duration(t1 - t0, dt, "integration span");
    const Index origin = steps_for_duration(t0, dt, "integration start");
    if (steps < 0 || steps % output_stride != 0) {
        throw Error("rk_integrate: output stride must divide the step count");
    }
    const auto& contact = p.values().contact;
    contact.check_grid_aligned(dt);

    // Dormand-Prince 5(4), fifth-order weights
    constexpr double a21 = 1.0 / 5.0;
    constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                     a54 = -212.0 / 729.0;
    constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                     a65 = -5103.0 / 18656.0;
    constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                     b6 = 11.0 / 84.0;

    SimulationResult result;
    result.grid = TimeGrid(dt * static_cast<double>(output_stride), 0, steps / output_stride);
    result.time_offset = t0;
    result.compartments.reserve(static_cast<std::size_t>(steps / output_stride) + 1);
    result.compartments.push_back(y0);

    StateArray y = y0.values();
    StateArray tmp;
    auto combine = [&](std::initializer_list<std::pair<double, const StateArray*>> terms) {
        for (std::size_t i = 0; i < num_states; ++i) {
            double s = y[i];
            for (const auto& [c, k] : terms) {
                s += dt * c * (*k)[i];
            }
            tmp[i] = s;
        }
        return tmp;
    };
    for (Index k = 0; k < steps; ++k) {
        const double phi = contact.rate_at_step(origin + k, dt);
        const auto k1    = ode_rhs(y, phi, p);
        const auto k2    = ode_rhs(combine({{a21, &k1}}), phi, p);
        const auto k3    = ode_rhs(combine({{a31, &k1}, {a32, &k2}}), phi, p);
        const auto k4    = ode_rhs(combine({{a41, &k1}, {a42, &k2}, {a43, &k3}}), phi, p);
        const auto k5    = ode_rhs(combine({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), phi, p);
        const auto k6    = ode_rhs(combine({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}), phi, p);
        y                = combine({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        if ((k + 1) % output_stride == 0) {
            result.compartments.emplace_back(y);
        }
    }
    return result;
}

void attach_ode_flows(SimulationResult& ode, const OdeParameterSet& p)
{
    const double dt     = ode.grid.dt();
    const Index origin  = steps_for_duration(ode.time_offset, dt, "ode result start");
    const auto& contact = p.values().contact;
    FlowHistory flows(dt, -1);
    flows.reserve(ode.compartments.size());
    ode.force_of_infection.clear();
    for (std::size_t k = 0; k < ode.compartments.size(); ++k) {
        const double phi = contact.rate_at_step(origin + static_cast<Index>(k), dt);
        const auto& y    = ode.compartments[k].values();
        flows.append(ode_flows(y, phi, p));
        ode.force_of_infection.push_back(ode_force_of_infection(y, phi, p));
    }
    ode.flows = std::move(flows);
}

FlowHistory extract_ide_flows_from_ode(const SimulationResult& ode, const OdeParameterSet& p, double t_origin)
{
    const double dt    = ode.grid.dt();
    const Index k0     = steps_for_duration(t_origin - ode.time_offset, dt, "history origin");
    const Index start  = steps_for_duration(ode.time_offset, dt, "ode result start");
    if (k0 < 0 || k0 > ode.grid.final_index()) {
        throw Error("history origin outside the ODE result");
    }
    const auto& contact = p.values().contact;
    FlowHistory history(dt, -k0 - 1);
    history.reserve(static_cast<std::size_t>(k0) + 1);
    for (Index k = 0; k <= k0; ++k) {
        const double phi = contact.rate_at_step(start + k, dt);
        history.append(ode_flows(ode.compartments[static_cast<std::size_t>(k)].values(), phi, p));
    }
    return history;
}

OdeParameterSet reduce_ide_to_ode(const ParameterSet& ide)
{
    auto mean_of = [&](TransitionId t) {
        const auto& d = ide.distribution(t);
        if (d.family() != DistributionFamily::Exponential) {
            throw Error("non-exponential distribution for " + std::string(transition_label(t)));
        }
        return d.mean_stay_time();
    };
    auto pair_mean = [&](TransitionId a, TransitionId b) {
        double ma = mean_of(a), mb = mean_of(b);
        if (std::abs(ma - mb) > 1e-12 * std::max(ma, mb)) {
            throw Error("pair mismatch: " + std::string(transition_label(a)) + " and " +
                        std::string(transition_label(b)) + " have different means");
        }
        return ma;
    };
    auto constant_of = [](const AgeDependentFactor& f, const char* name) {
        if (!f.is_constant()) {
            throw Error(std::string(name) + " is not constant");
        }
        return f.constant_value();
    };
    using T = TransitionId;
    OdeParameters p;
    p.total_population = ide.total_population();
    p.stay_times       = {mean_of(T::ExposedToCarrier), pair_mean(T::CarrierToInfected, T::CarrierToRecovered),
                    pair_mean(T::InfectedToHospitalized, T::InfectedToRecovered),
                    pair_mean(T::HospitalizedToIntensiveCare, T::HospitalizedToRecovered),
                    pair_mean(T::IntensiveCareToDead, T::IntensiveCareToRecovered)};
    const auto& raw = ide.raw();
    p.mu_CI         = raw.mu_CI;
    p.mu_IH         = raw.mu_IH;
    p.mu_HU         = raw.mu_HU;
    p.mu_UD         = raw.mu_UD;
    p.contact       = raw.contact;
    double rho_C    = constant_of(raw.rho_C, "rho_C");
    double rho_I    = constant_of(raw.rho_I, "rho_I");
    if (rho_C != rho_I) {
        throw Error("rho_C and rho_I differ");
    }
    p.rho  = rho_C;
    p.xi_C = constant_of(raw.xi_C, "xi_C");
    p.xi_I = constant_of(raw.xi_I, "xi_I");
    return validate_ode_parameters(std::move(p));
}

OdeStayTimes weighted_ode_mean_stay_times(const FlowArray& means, const std::array<double, 4>& mu)
{
    for (double m : mu) {
        check_probability(m, "mu");
    }
    using T     = TransitionId;
    auto mean   = [&](T t) {
        return means[idx(t)];
    };
    auto weight = [](double m, double a, double b) {
        return m * a + (1.0 - m) * b;
    };
    return {mean(T::ExposedToCarrier),
            weight(mu[0], mean(T::CarrierToInfected), mean(T::CarrierToRecovered)),
            weight(mu[1], mean(T::InfectedToHospitalized), mean(T::InfectedToRecovered)),
            weight(mu[2], mean(T::HospitalizedToIntensiveCare), mean(T::HospitalizedToRecovered)),
            weight(mu[3], mean(T::IntensiveCareToDead), mean(T::IntensiveCareToRecovered))};
}

OdeStayTimes weighted_ode_mean_stay_times(const ParameterSet& ide)
{
    FlowArray means{};
    for (auto t : all_transitions) {
        if (t != TransitionId::SusceptibleToExposed) {
            means[idx(t)] = ide.distribution(t).mean_stay_time();
        }
    }
    const auto& raw = ide.raw();
    return weighted_ode_mean_stay_times(means, {raw.mu_CI, raw.mu_IH, raw.mu_HU, raw.mu_UD});
}

} // namespace idesecir

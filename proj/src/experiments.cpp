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

#include "idesecir/experiments.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

namespace idesecir
{

namespace
{

double constant_factor(const AgeDependentFactor& f, const char* name)
{
    if (!f.is_constant()) {
        throw Error(std::string(name) + " must be constant for the ODE model");
    }
    return f.constant_value();
}

OdeParameterSet ode_parameters_from_ide(const ParameterSet& ide, const OdeStayTimes& times)
{
    const auto& raw = ide.raw();
    OdeParameters p;
    p.total_population = raw.total_population;
    p.stay_times       = times;
    p.mu_CI            = raw.mu_CI;
    p.mu_IH            = raw.mu_IH;
    p.mu_HU            = raw.mu_HU;
    p.mu_UD            = raw.mu_UD;
    p.contact          = raw.contact;
    p.rho              = constant_factor(raw.rho_C, "rho_C");
    if (constant_factor(raw.rho_I, "rho_I") != p.rho) {
        throw Error("rho_C and rho_I must agree for the ODE model");
    }
    p.xi_C = constant_factor(raw.xi_C, "xi_C");
    p.xi_I = constant_factor(raw.xi_I, "xi_I");
    return validate_ode_parameters(std::move(p));
}

/// Constant flows of all transitions for new transmissions c.
FlowArray equilibrium_flows(const ParameterSet& params, double c)
{
    FlowArray f{};
    f[idx(TransitionId::SusceptibleToExposed)] = c;
    for (auto t : all_transitions) {
        if (t == TransitionId::SusceptibleToExposed) {
            continue;
        }
        auto in     = inflow_transition(transition_source(t));
        f[idx(t)] = f[idx(in)] * params.probability(t);
    }
    return f;
}

SimulationResult subsample(const SimulationResult& fine, Index ratio)
{
    const Index n = fine.grid.final_index() / ratio;
    SimulationResult out;
    out.grid = TimeGrid(fine.grid.dt() * static_cast<double>(ratio), 0, n);
    out.time_offset = fine.time_offset;
    out.compartments.reserve(static_cast<std::size_t>(n) + 1);
    for (Index k = 0; k <= n; ++k) {
        out.compartments.push_back(fine.compartments[static_cast<std::size_t>(k * ratio)]);
    }
    return out;
}

Index integer_ratio(double a, double b, const char* what)
{
    double r = a / b;
    if (!(r >= 1.0 - 1e-9) || std::abs(r - std::round(r)) > 1e-9 * r) {
        throw Error(std::string(what) + " is not an integer multiple");
    }
    return static_cast<Index>(std::llround(r));
}

} // namespace

double discrete_l2_error(std::span<const double> approx, std::span<const double> reference, double dt)
{
    if (approx.size() != reference.size()) {
        throw Error("l2 error: series lengths differ");
    }
    double diff = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < approx.size(); ++i) {
        diff += (approx[i] - reference[i]) * (approx[i] - reference[i]);
        ref += reference[i] * reference[i];
    }
    if (!(ref > 0.0)) {
        throw Error("l2 error: reference has zero norm");
    }
    return std::sqrt(dt * diff) / std::sqrt(dt * ref);
}

double fit_log_slope(std::span<const double> dts, std::span<const double> errors)
{
    if (dts.size() != errors.size() || dts.size() < 2) {
        throw Error("slope fit: need at least two matching points");
    }
    const auto n = static_cast<double>(dts.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < dts.size(); ++i) {
        if (!(dts[i] > 0.0) || !(errors[i] > 0.0)) {
            throw Error("slope fit: step sizes and errors must be positive");
        }
        double x = std::log(dts[i]), y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ContactSchedule shift_schedule(const ContactSchedule& contact, double offset)
{
    std::vector<ContactSchedule::Segment> out{{0.0, contact.rate_at(offset)}};
    for (const auto& s : contact.segments()) {
        if (s.start > offset) {
            out.push_back({s.start - offset, s.rate});
        }
    }
    return ContactSchedule(std::move(out));
}

ParameterSet ide_parameters_from_ode(const OdeParameterSet& ode, double epsilon)
{
    const auto& v = ode.values();
    using T       = TransitionId;
    ModelParameters p;
    p.total_population = v.total_population;
    p.mu_CI            = v.mu_CI;
    p.mu_IH            = v.mu_IH;
    p.mu_HU            = v.mu_HU;
    p.mu_UD            = v.mu_UD;
    p.contact          = v.contact;
    p.rho_C            = AgeDependentFactor(v.rho);
    p.rho_I            = AgeDependentFactor(v.rho);
    p.xi_C             = AgeDependentFactor(v.xi_C);
    p.xi_I             = AgeDependentFactor(v.xi_I);
    auto exp           = [&](double mean) {
        return TransitionDistribution::exponential(mean, epsilon);
    };
    const auto& st = v.stay_times;
    p.gamma.emplace(T::ExposedToCarrier, exp(st.exposed));
    p.gamma.emplace(T::CarrierToInfected, exp(st.carrier));
    p.gamma.emplace(T::CarrierToRecovered, exp(st.carrier));
    p.gamma.emplace(T::InfectedToHospitalized, exp(st.infected));
    p.gamma.emplace(T::InfectedToRecovered, exp(st.infected));
    p.gamma.emplace(T::HospitalizedToIntensiveCare, exp(st.hospitalized));
    p.gamma.emplace(T::HospitalizedToRecovered, exp(st.hospitalized));
    p.gamma.emplace(T::IntensiveCareToDead, exp(st.icu));
    p.gamma.emplace(T::IntensiveCareToRecovered, exp(st.icu));
    return validate_parameters(std::move(p));
}

ErrorReport convergence_study(std::span<const double> dts, const ConvergenceConfig& config)
{
    if (dts.empty()) {
        throw Error("convergence: no step sizes");
    }
    for (std::size_t i = 1; i < dts.size(); ++i) {
        if (!(dts[i] < dts[i - 1])) {
            throw Error("convergence: step sizes must be decreasing");
        }
    }
    const auto ode_p  = validate_ode_parameters(config.ode);
    const double h    = dts.back();
    const Index every = integer_ratio(h, config.reference_dt, "smallest dt / reference_dt");
    auto reference    = rk_integrate(ode_p, CompartmentState(config.initial), 0.0, config.t_end, config.reference_dt, every);
    attach_ode_flows(reference, ode_p);

    OdeParameters shifted = config.ode;
    shifted.contact       = shift_schedule(config.ode.contact, config.t_history);
    const auto ide_p      = ide_parameters_from_ode(validate_ode_parameters(shifted), config.epsilon);

    ErrorReport report;
    report.dts.assign(dts.begin(), dts.end());
    report.window_start = config.t_history;
    report.window_end   = config.t_end;
    report.reference_dt = config.reference_dt;
    for (auto s : all_states) {
        report.quantities.push_back({std::string(state_label(s)), std::vector<double>(dts.size()), 0.0});
    }
    for (auto t : all_transitions) {
        report.quantities.push_back({std::string(transition_label(t)), std::vector<double>(dts.size()), 0.0});
    }

    std::vector<std::exception_ptr> failures(dts.size());
    const auto count = static_cast<std::ptrdiff_t>(dts.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t j = 0; j < count; ++j) {
        try {
            const double dt = dts[static_cast<std::size_t>(j)];
            const Index r   = integer_ratio(dt, h, "dt / smallest dt");
            const auto ode  = subsample(reference, r);
            const auto hist = extract_ide_flows_from_ode(ode, ode_p, config.t_history);
            const Index k0  = steps_for_duration(config.t_history, dt, "t_history");
            const auto& y0  = ode.compartments[static_cast<std::size_t>(k0)];
            auto init       = compartments_from_history(ide_p, hist, y0[InfectionState::Dead],
                                                        y0[InfectionState::Susceptible]);
            IdeModel model(ide_p, hist, init);
            const auto res = simulate(model, config.t_end - config.t_history);
            const Index n  = res.grid.final_index();

            std::vector<double> a(static_cast<std::size_t>(n) + 1), b(a.size());
            std::size_t q = 0;
            for (auto s : all_states) {
                for (Index k = 0; k <= n; ++k) {
                    a[static_cast<std::size_t>(k)] = res.compartments[static_cast<std::size_t>(k)][s];
                    b[static_cast<std::size_t>(k)] = reference.compartments[static_cast<std::size_t>((k0 + k) * r)][s];
                }
                report.quantities[q++].errors[static_cast<std::size_t>(j)] = discrete_l2_error(a, b, dt);
            }
            for (auto t : all_transitions) {
                for (Index k = 0; k <= n; ++k) {
                    a[static_cast<std::size_t>(k)] = res.flows->value(t, k);
                    b[static_cast<std::size_t>(k)] = reference.flows->value(t, (k0 + k) * r);
                }
                report.quantities[q++].errors[static_cast<std::size_t>(j)] = discrete_l2_error(a, b, dt);
            }
        }
        catch (...) {
            failures[static_cast<std::size_t>(j)] = std::current_exception();
        }
    }
    for (auto& f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }
    if (dts.size() >= 2) {
        for (auto& q : report.quantities) {
            q.slope = fit_log_slope(report.dts, q.errors);
        }
    }
    return report;
}

InitialState equilibrium_initial_state(const ParameterSet& params, double dt, double new_transmissions, double deaths)
{
    if (!(new_transmissions > 0.0)) {
        throw Error("equilibrium: new_transmissions must be positive");
    }
    const double N = params.total_population();
    if (!(deaths >= 0.0 && deaths < N)) {
        throw Error("equilibrium: deaths must lie in [0, total_population)");
    }
    const Index K    = std::max<Index>(history_steps(params, dt), 1);
    const auto flows = equilibrium_flows(params, new_transmissions);
    FlowHistory history(dt, -K);
    history.reserve(static_cast<std::size_t>(K));
    for (Index k = 0; k < K; ++k) {
        history.append(flows);
    }
    const auto ks = build_kernels(params, dt);
    const double sum_c = std::accumulate(ks.foi_carrier.begin(), ks.foi_carrier.end(), 0.0);
    const double sum_i = std::accumulate(ks.foi_infected.begin(), ks.foi_infected.end(), 0.0);
    const double phi   = params.contact().rate_at_step(0, dt);
    const double lambda =
        phi / (N - deaths) * dt *
        (sum_c * flows[idx(TransitionId::ExposedToCarrier)] + sum_i * flows[idx(TransitionId::CarrierToInfected)]);
    if (!(lambda > 0.0)) {
        throw Error("equilibrium: force of infection is zero, no stationary state exists");
    }
    const double S = new_transmissions * (1.0 + dt * lambda) / lambda;
    auto comps     = compartments_from_history(params, history, deaths, S);
    return {std::move(history), comps};
}

CompartmentState ode_equilibrium_state(const OdeParameterSet& params, double new_transmissions, double deaths)
{
    const auto& v  = params.values();
    const double N = v.total_population;
    const double c = new_transmissions;
    const auto& T  = v.stay_times;
    StateArray y{};
    using Z                     = InfectionState;
    y[idx(Z::Exposed)]          = c * T.exposed;
    y[idx(Z::Carrier)]          = c * T.carrier;
    y[idx(Z::Infected)]         = c * v.mu_CI * T.infected;
    y[idx(Z::Hospitalized)]     = c * v.mu_CI * v.mu_IH * T.hospitalized;
    y[idx(Z::IntensiveCare)]    = c * v.mu_CI * v.mu_IH * v.mu_HU * T.icu;
    y[idx(Z::Dead)]             = deaths;
    const double pressure = v.contact.rate_at(0.0) * v.rho *
                            (v.xi_C * y[idx(Z::Carrier)] + v.xi_I * y[idx(Z::Infected)]) / (N - deaths);
    if (!(pressure > 0.0)) {
        throw Error("equilibrium: force of infection is zero, no stationary state exists");
    }
    y[idx(Z::Susceptible)] = c / pressure;
    double rest            = 0.0;
    for (auto s : all_states) {
        rest += y[idx(s)];
    }
    y[idx(Z::Recovered)] = N - rest;
    if (y[idx(Z::Recovered)] < 0.0) {
        throw Error("equilibrium: recovered remainder is negative");
    }
    return CompartmentState(y);
}

ChangepointResult changepoint_experiment(double factor, const ChangepointConfig& config)
{
    if (!(factor >= 0.0)) {
        throw Error("changepoint: factor must be nonnegative");
    }
    const double phi = config.ide.contact.rate_at(0.0);
    ModelParameters raw = config.ide;
    raw.contact = ContactSchedule({{0.0, phi}, {config.change_time, phi * factor}});
    const auto ide_p    = validate_parameters(std::move(raw));

    ChangepointResult out;
    out.factor = factor;
    auto init  = equilibrium_initial_state(ide_p, config.dt, config.new_transmissions, config.deaths);
    IdeModel model(ide_p, std::move(init.history), init.compartments);
    out.ide = simulate(model, config.t_end);

    const auto ode_p = ode_parameters_from_ide(ide_p, config.ode_stay_times);
    out.ode = rk_integrate(ode_p, ode_equilibrium_state(ode_p, config.new_transmissions, config.deaths), 0.0,
                           config.t_end, config.dt);
    attach_ode_flows(out.ode, ode_p);

    const Index kc   = steps_for_duration(config.change_time, config.dt, "change_time");
    const Index half = steps_for_duration(0.5, config.dt, "half day");
    if (kc < 1 || kc + half > out.ide.grid.final_index()) {
        throw Error("changepoint: change_time must leave half a day before t_end");
    }
    const auto se  = TransitionId::SusceptibleToExposed;
    auto ide_flow  = [&](Index k) {
        return out.ide.flows->value(se, k);
    };
    auto ode_flow = [&](Index k) {
        return out.ode.flows->value(se, k);
    };
    out.ide_jump = ide_flow(kc + 1) / ide_flow(kc);
    out.ode_jump = ode_flow(kc) / ode_flow(kc - 1);
    const double ide_v0 = ide_flow(kc + 1), ode_v0 = ode_flow(kc);
    for (Index k = kc + 1; k <= kc + half; ++k) {
        out.ide_lag_drift = std::max(out.ide_lag_drift, std::abs(ide_flow(k) / ide_v0 - 1.0));
        out.ode_lag_drift = std::max(out.ode_lag_drift, std::abs(ode_flow(k) / ode_v0 - 1.0));
    }
    return out;
}

ScenarioResult scenario_run(const ReportedData& data, const ScenarioConfig& config)
{
    const auto ide_p = validate_parameters(config.ide);
    auto init        = build_initial_history(data, ide_p, config.dt, config.start, config.data_options);
    IdeModel model(ide_p, std::move(init.history), init.compartments);

    ScenarioResult out;
    out.ide = simulate(model, config.t_end);

    const auto times = config.ode_stay_times ? *config.ode_stay_times : weighted_ode_mean_stay_times(ide_p);
    const auto ode_p = ode_parameters_from_ide(ide_p, times);
    out.ode          = rk_integrate(ode_p, out.ide.compartments.front(), 0.0, config.t_end, config.dt);
    attach_ode_flows(out.ode, ode_p);

    std::vector<double> days;
    for (Index d = 0; static_cast<double>(d) <= config.t_end + 1e-9; ++d) {
        days.push_back(static_cast<double>(d));
    }
    out.comparison = extrapolate_comparison_series(data, ide_p, config.start, days);
    return out;
}

SyntheticData synthesize_reported_data(const SyntheticDataConfig& config)
{
    const auto ide_p = validate_parameters(config.ide);
    const double dt  = config.dt;
    const Index s    = steps_for_duration(1.0, dt, "one day");
    using T          = TransitionId;
    if (!(config.seed_infections > 0.0) || config.days_before < 0 || config.days_after < 0) {
        throw Error("synthetic data: seed_infections must be positive and day counts nonnegative");
    }
    const double delay = ide_p.distribution(T::InfectedToHospitalized).mean_stay_time() +
                         ide_p.distribution(T::HospitalizedToIntensiveCare).mean_stay_time() +
                         ide_p.distribution(T::IntensiveCareToDead).mean_stay_time();
    // rows needed before the start date by build_initial_history
    const Index window_days = (history_steps(ide_p, dt) + s - 1) / s + 2;
    const Index lead        = std::max<Index>(0, window_days - config.days_before);
    const Index rows        = lead + config.days_before + config.days_after + 1;
    const auto total_days   = static_cast<double>(config.days_before + config.days_after) + std::ceil(delay) + 1.0;

    FlowHistory seed(dt, -s);
    for (Index k = 0; k < s; ++k) {
        FlowArray f{};
        f[idx(T::SusceptibleToExposed)] = config.seed_infections;
        seed.append(f);
    }
    auto init = compartments_from_history(ide_p, seed, 0.0);
    IdeModel model(ide_p, std::move(seed), init);

    SyntheticData out;
    out.generator   = simulate(model, total_days);
    out.start_index = config.days_before * s;
    const auto& gen = out.generator;

    auto deaths_at = [&](double t) {
        if (t <= 0.0) {
            return 0.0;
        }
        const double x = t / dt;
        const auto i   = static_cast<std::size_t>(std::floor(x));
        const double w = x - static_cast<double>(i);
        const double a = gen.compartments[i][InfectionState::Dead];
        return w > 0.0 ? (1.0 - w) * a + w * gen.compartments[i + 1][InfectionState::Dead] : a;
    };

    auto& data = out.data;
    data.icu_occupancy.emplace();
    double cumulative = 0.0;
    const Date first  = config.start - std::chrono::days{config.days_before + lead};
    for (Index r = 0; r < rows; ++r) {
        const Index g = r - lead; // day relative to the generator start
        if (g > 0) {
            for (Index k = (g - 1) * s + 1; k <= g * s; ++k) {
                cumulative += dt * gen.flows->value(T::CarrierToInfected, k);
            }
        }
        data.dates.push_back(first + std::chrono::days{r});
        data.cumulative_confirmed.push_back(cumulative);
        data.cumulative_deaths.push_back(deaths_at(static_cast<double>(g) + delay));
        data.icu_occupancy->push_back(
            g < 0 ? 0.0 : gen.compartments[static_cast<std::size_t>(g * s)][InfectionState::IntensiveCare]);
    }
    return out;
}

} // namespace idesecir

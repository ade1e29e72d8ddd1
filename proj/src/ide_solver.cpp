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

#include "idesecir/ide_solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace idesecir
{

namespace
{

constexpr std::array<InfectionState, 5> transient_states = {InfectionState::Exposed, InfectionState::Carrier,
                                                            InfectionState::Infected, InfectionState::Hospitalized,
                                                            InfectionState::IntensiveCare};

constexpr std::array<TransitionId, 4> recovery_flows = {
    TransitionId::CarrierToRecovered, TransitionId::InfectedToRecovered, TransitionId::HospitalizedToRecovered,
    TransitionId::IntensiveCareToRecovered};

std::vector<double> survival_mix(const ParameterSet& params, InfectionState s, double dt)
{
    auto t1  = first_branch(s);
    auto g1  = survival_on_grid(params.distribution(t1), dt);
    auto mu1 = params.probability(t1);
    std::vector<double> g2;
    double mu2 = 0.0;
    if (auto t2 = second_branch(s)) {
        g2  = survival_on_grid(params.distribution(*t2), dt);
        mu2 = params.probability(*t2);
    }
    const std::size_t len = std::max(g1.size(), g2.size()) - 1;
    std::vector<double> w(len, 0.0);
    for (std::size_t k = 0; k < len; ++k) {
        double a = k + 1 < g1.size() ? g1[k + 1] : 0.0;
        double b = k + 1 < g2.size() ? g2[k + 1] : 0.0;
        w[k]     = mu1 * a + mu2 * b;
    }
    return w;
}

/// E .. U at history index m by survival-weighted sums.
StateArray transient_sums(const KernelSet& kernels, const FlowHistory& history, Index m, kernels::Backend backend)
{
    StateArray out{};
    if (m < history.first_index()) {
        return out;
    }
    const auto pos = history.position(m);
    for (auto s : transient_states) {
        out[idx(s)] = kernels.dt * kernels::convolve(backend, kernels.survival_weights[idx(s)],
                                                     history.series(inflow_transition(s)), pos);
    }
    return out;
}

std::string at_step(Index k)
{
    return " at step " + std::to_string(k);
}

void check_step(const ParameterSet& params, const CompartmentState& prev, const CompartmentState& next,
                const FlowArray& flows, double lambda, Index k)
{
    const double N = params.total_population();
    for (auto t : all_transitions) {
        if (!(flows[idx(t)] >= 0.0)) {
            throw Error("invariant violated: negative " + std::string(transition_label(t)) + at_step(k));
        }
    }
    if (!(lambda >= 0.0)) {
        throw Error("invariant violated: negative force of infection" + at_step(k));
    }
    for (auto s : all_states) {
        if (next[s] > N * (1.0 + mass_tolerance)) {
            throw Error("invariant violated: compartment " + std::string(state_label(s)) + " exceeds N" + at_step(k));
        }
    }
    if (std::abs(next.total() - N) > mass_tolerance * N) {
        throw Error("invariant violated: total population drift" + at_step(k));
    }
    if (!(next[InfectionState::Dead] < N)) {
        throw Error("invariant violated: D >= N" + at_step(k));
    }
    if (next[InfectionState::Susceptible] > prev[InfectionState::Susceptible] ||
        next[InfectionState::Recovered] < prev[InfectionState::Recovered] ||
        next[InfectionState::Dead] < prev[InfectionState::Dead]) {
        throw Error("invariant violated: monotonicity of S, R or D" + at_step(k));
    }
}

} // namespace

KernelSet build_kernels(const ParameterSet& params, double dt)
{
    KernelSet ks;
    ks.dt = dt;
    for (auto t : all_transitions) {
        if (t == TransitionId::SusceptibleToExposed) {
            continue;
        }
        auto g     = survival_on_grid(params.distribution(t), dt);
        double mu  = params.probability(t);
        auto& w    = ks.flow_weights[idx(t)];
        w.resize(g.size() - 1);
        for (std::size_t k = 0; k < w.size(); ++k) {
            w[k] = mu * (g[k] - g[k + 1]);
        }
    }
    for (auto s : transient_states) {
        ks.survival_weights[idx(s)] = survival_mix(params, s, dt);
    }
    const auto& wc = ks.survival_weights[idx(InfectionState::Carrier)];
    const auto& wi = ks.survival_weights[idx(InfectionState::Infected)];
    ks.foi_carrier.resize(wc.size());
    ks.foi_infected.resize(wi.size());
    for (std::size_t k = 0; k < wc.size(); ++k) {
        double tau        = static_cast<double>(k + 1) * dt;
        ks.foi_carrier[k] = params.xi_C()(tau) * params.rho_C()(tau) * wc[k];
    }
    for (std::size_t k = 0; k < wi.size(); ++k) {
        double tau         = static_cast<double>(k + 1) * dt;
        ks.foi_infected[k] = params.xi_I()(tau) * params.rho_I()(tau) * wi[k];
    }
    return ks;
}

IdeModel::IdeModel(ParameterSet params, FlowHistory history, CompartmentState initial, SolverOptions options)
    : m_params(std::move(params))
    , m_history(std::move(history))
    , m_initial(initial)
    , m_options(options)
{
    const double N = m_params.total_population();
    if (m_history.last_index() != 0) {
        throw Error("initial history must end at index 0");
    }
    for (auto t : all_transitions) {
        for (double v : m_history.series(t)) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw Error("initial history: " + std::string(transition_label(t)) + " is negative or not finite");
            }
        }
    }
    if (std::abs(m_initial.total() - N) > mass_tolerance * N) {
        throw Error("initial compartments do not sum to total_population");
    }
    if (!(m_initial[InfectionState::Dead] < N)) {
        throw Error("initial deaths must be below total_population");
    }
    m_params.contact().check_grid_aligned(m_history.dt());
    m_kernels = build_kernels(m_params, m_history.dt());
}

double force_of_infection(const IdeModel& model, const FlowHistory& history, Index n, double deaths)
{
    const double N = model.parameters().total_population();
    if (!(deaths < N)) {
        throw Error("force of infection: D >= N");
    }
    const Index m = n + 1;
    if (m > history.last_index()) {
        throw Error("force of infection: flows not available at step " + std::to_string(m));
    }
    if (m < history.first_index()) {
        return 0.0;
    }
    const auto& ks      = model.kernels();
    const auto backend  = model.options().backend;
    const auto pos      = history.position(m);
    double sum          = kernels::convolve(backend, ks.foi_carrier, history.series(TransitionId::ExposedToCarrier), pos) +
                 kernels::convolve(backend, ks.foi_infected, history.series(TransitionId::CarrierToInfected), pos);
    double phi = model.parameters().contact().rate_at_step(m, history.dt());
    return phi / (N - deaths) * history.dt() * sum;
}

SusceptibleStep step_susceptible(double susceptible, double lambda, double dt)
{
    double s_next = susceptible / (1.0 + dt * lambda);
    return {s_next, s_next * lambda};
}

FlowArray step_flows(const IdeModel& model, FlowHistory& history, Index n, double sigma_SE)
{
    if (history.last_index() != n) {
        throw Error("step_flows: history must end at step " + std::to_string(n));
    }
    const Index m = n + 1;
    history.append_zero();
    history.set(TransitionId::SusceptibleToExposed, m, sigma_SE);
    const auto pos     = history.position(m);
    const auto backend = model.options().backend;
    const auto& ks     = model.kernels();
    FlowArray out{};
    out[idx(TransitionId::SusceptibleToExposed)] = sigma_SE;
    for (auto t : all_transitions) {
        if (t == TransitionId::SusceptibleToExposed) {
            continue;
        }
        auto in    = inflow_transition(transition_source(t));
        double v   = kernels::convolve(backend, ks.flow_weights[idx(t)], history.series(in), pos);
        out[idx(t)] = v;
        history.set(t, m, v);
    }
    return out;
}

CompartmentState compartments_sum_discretization(const IdeModel& model, const FlowHistory& history, Index n,
                                                 double susceptible)
{
    const Index m = n + 1;
    auto values   = transient_sums(model.kernels(), history, m, model.options().backend);
    values[idx(InfectionState::Susceptible)] = susceptible;
    const auto& init = model.initial_compartments();
    double rec = 0.0, dead = 0.0;
    for (Index k = 1; k <= m; ++k) {
        for (auto t : recovery_flows) {
            rec += history.value(t, k);
        }
        dead += history.value(TransitionId::IntensiveCareToDead, k);
    }
    values[idx(InfectionState::Recovered)] = init[InfectionState::Recovered] + history.dt() * rec;
    values[idx(InfectionState::Dead)]      = init[InfectionState::Dead] + history.dt() * dead;
    return CompartmentState(values);
}

CompartmentState compartments_update_discretization(const CompartmentState& previous, const FlowArray& f,
                                                    double dt)
{
    auto flow = [&](TransitionId t) {
        return f[idx(t)];
    };
    using T  = TransitionId;
    using Z  = InfectionState;
    StateArray v = previous.values();
    v[idx(Z::Susceptible)] -= dt * flow(T::SusceptibleToExposed);
    v[idx(Z::Exposed)] += dt * (flow(T::SusceptibleToExposed) - flow(T::ExposedToCarrier));
    v[idx(Z::Carrier)] += dt * (flow(T::ExposedToCarrier) - flow(T::CarrierToInfected) - flow(T::CarrierToRecovered));
    v[idx(Z::Infected)] +=
        dt * (flow(T::CarrierToInfected) - flow(T::InfectedToHospitalized) - flow(T::InfectedToRecovered));
    v[idx(Z::Hospitalized)] += dt * (flow(T::InfectedToHospitalized) - flow(T::HospitalizedToIntensiveCare) -
                                     flow(T::HospitalizedToRecovered));
    v[idx(Z::IntensiveCare)] += dt * (flow(T::HospitalizedToIntensiveCare) - flow(T::IntensiveCareToDead) -
                                      flow(T::IntensiveCareToRecovered));
    v[idx(Z::Recovered)] += dt * (flow(T::CarrierToRecovered) + flow(T::InfectedToRecovered) +
                                  flow(T::HospitalizedToRecovered) + flow(T::IntensiveCareToRecovered));
    v[idx(Z::Dead)] += dt * flow(T::IntensiveCareToDead);
    // a drained compartment can land a few ulps of N below zero; the sum discretization is exactly >= 0 there
    const double round_off = 64.0 * std::numeric_limits<double>::epsilon() * previous.total();
    for (auto& x : v) {
        if (x < 0.0 && x >= -round_off) {
            x = 0.0;
        }
    }
    return CompartmentState(v);
}

SimulationResult simulate(const IdeModel& model, double t_end, DiscretizationMode mode)
{
    const double dt = model.dt();
    if (t_end < 0.0) {
        throw Error("t_end must be >= 0");
    }
    const Index n_max = steps_for_duration(t_end, dt, "t_end");
    const auto& params = model.parameters();
    const bool check   = model.options().check_invariants;
    const auto backend = model.options().backend;

    SimulationResult result;
    result.grid = TimeGrid(dt, model.history().start_index(), n_max);
    FlowHistory history = model.history();
    history.reserve(history.size() + static_cast<std::size_t>(n_max));
    result.compartments.reserve(static_cast<std::size_t>(n_max) + 1);
    result.force_of_infection.reserve(static_cast<std::size_t>(n_max) + 1);

    const bool want_sum    = mode != DiscretizationMode::Update;
    const bool want_update = mode != DiscretizationMode::Sum;

    CompartmentState current = model.initial_compartments();
    result.compartments.push_back(current);
    if (mode == DiscretizationMode::Both) {
        result.sum_compartments.push_back(current);
    }
    double lambda = force_of_infection(model, history, -1, current[InfectionState::Dead]);
    result.force_of_infection.push_back(lambda);

    double rec_sum = 0.0, dead_sum = 0.0;
    for (Index n = 0; n < n_max; ++n) {
        const auto s_step = step_susceptible(current[InfectionState::Susceptible], lambda, dt);
        const auto flows  = step_flows(model, history, n, s_step.new_transmissions);

        std::optional<CompartmentState> by_sum, by_update;
        if (want_sum) {
            auto v = transient_sums(model.kernels(), history, n + 1, backend);
            for (auto t : recovery_flows) {
                rec_sum += flows[idx(t)];
            }
            dead_sum += flows[idx(TransitionId::IntensiveCareToDead)];
            const auto& init                  = model.initial_compartments();
            v[idx(InfectionState::Susceptible)] = s_step.susceptible;
            v[idx(InfectionState::Recovered)]   = init[InfectionState::Recovered] + dt * rec_sum;
            v[idx(InfectionState::Dead)]        = init[InfectionState::Dead] + dt * dead_sum;
            by_sum                              = CompartmentState(v);
        }
        if (want_update) {
            auto v = compartments_update_discretization(current, flows, dt).values();
            v[idx(InfectionState::Susceptible)] = s_step.susceptible;
            by_update                           = CompartmentState(v);
        }
        const CompartmentState next = want_update ? *by_update : *by_sum;
        if (mode == DiscretizationMode::Both) {
            result.sum_compartments.push_back(*by_sum);
            for (auto s : all_states) {
                result.max_discretization_gap =
                    std::max(result.max_discretization_gap, std::abs((*by_sum)[s] - (*by_update)[s]));
            }
        }

        // lambda(t_{n+1}) uses D(t_n)
        const double next_lambda = force_of_infection(model, history, n, current[InfectionState::Dead]);
        if (check) {
            check_step(params, current, next, flows, next_lambda, n + 1);
        }
        current = next;
        lambda  = next_lambda;
        result.compartments.push_back(current);
        result.force_of_infection.push_back(lambda);
    }
    result.flows = std::move(history);
    return result;
}

CompartmentState compartments_from_history(const ParameterSet& params, const FlowHistory& history, double deaths,
                                           std::optional<double> susceptible)
{
    const double N = params.total_population();
    const auto ks  = build_kernels(params, history.dt());
    const Index m  = history.last_index();
    auto v         = transient_sums(ks, history, m, kernels::Backend::Parallel);
    v[idx(InfectionState::Dead)] = deaths;
    double transient = 0.0;
    for (auto s : transient_states) {
        transient += v[idx(s)];
    }
    if (susceptible) {
        v[idx(InfectionState::Susceptible)] = *susceptible;
        v[idx(InfectionState::Recovered)]   = N - *susceptible - deaths - transient;
        if (v[idx(InfectionState::Recovered)] < 0.0) {
            throw Error("initialization: recovered remainder is negative");
        }
    }
    else {
        double rec = 0.0;
        for (Index k = history.first_index(); k <= m; ++k) {
            for (auto t : recovery_flows) {
                rec += history.value(t, k);
            }
        }
        v[idx(InfectionState::Recovered)]   = history.dt() * rec;
        v[idx(InfectionState::Susceptible)] = N - v[idx(InfectionState::Recovered)] - deaths - transient;
        if (v[idx(InfectionState::Susceptible)] < 0.0) {
            throw Error("initialization: susceptible remainder is negative");
        }
    }
    return CompartmentState(v);
}

} // namespace idesecir

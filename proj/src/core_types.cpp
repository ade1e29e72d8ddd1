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

#include "idesecir/core_types.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace idesecir
{

namespace
{

std::string format_negative(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

struct TransitionInfo {
    InfectionState source;
    InfectionState target;
    std::string_view label;
    std::string_view key;
};

constexpr std::array<TransitionInfo, num_transitions> transition_table = {{
    {InfectionState::Susceptible, InfectionState::Exposed, "sigma_SE", "SE"},
    {InfectionState::Exposed, InfectionState::Carrier, "sigma_EC", "EC"},
    {InfectionState::Carrier, InfectionState::Infected, "sigma_CI", "CI"},
    {InfectionState::Carrier, InfectionState::Recovered, "sigma_CR", "CR"},
    {InfectionState::Infected, InfectionState::Hospitalized, "sigma_IH", "IH"},
    {InfectionState::Infected, InfectionState::Recovered, "sigma_IR", "IR"},
    {InfectionState::Hospitalized, InfectionState::IntensiveCare, "sigma_HU", "HU"},
    {InfectionState::Hospitalized, InfectionState::Recovered, "sigma_HR", "HR"},
    {InfectionState::IntensiveCare, InfectionState::Dead, "sigma_UD", "UD"},
    {InfectionState::IntensiveCare, InfectionState::Recovered, "sigma_UR", "UR"},
}};

constexpr std::array<std::string_view, num_states> state_labels = {"S", "E", "C", "I", "H", "U", "R", "D"};

bool near_integer(double x)
{
    return std::abs(x - std::round(x)) <= 1e-9 * std::max(1.0, std::abs(x));
}

} // namespace

InfectionState transition_source(TransitionId t)
{
    return transition_table.at(idx(t)).source;
}

InfectionState transition_target(TransitionId t)
{
    return transition_table.at(idx(t)).target;
}

std::string_view state_label(InfectionState s)
{
    return state_labels.at(idx(s));
}

std::string_view transition_label(TransitionId t)
{
    return transition_table.at(idx(t)).label;
}

std::string_view transition_key(TransitionId t)
{
    return transition_table.at(idx(t)).key;
}

std::optional<TransitionId> transition_from_key(std::string_view key)
{
    for (auto t : all_transitions) {
        if (transition_key(t) == key) {
            return t;
        }
    }
    return std::nullopt;
}

TimeGrid::TimeGrid(double dt, Index a, Index n_max)
    : m_dt(dt)
    , m_a(a)
    , m_n_max(n_max)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw Error("time grid: dt must be positive");
    }
    if (a > 0) {
        throw Error("time grid: start index a must be <= 0");
    }
    if (n_max < 0) {
        throw Error("time grid: final index must be >= 0");
    }
}

Index steps_for_duration(double t, double dt, std::string_view what)
{
    if (!(dt > 0.0)) {
        throw Error("dt must be positive");
    }
    double ratio = t / dt;
    if (!std::isfinite(ratio) || !near_integer(ratio)) {
        throw Error(std::string(what) + " is not a multiple of dt");
    }
    return static_cast<Index>(std::llround(ratio));
}

ContactSchedule::ContactSchedule(double constant_rate)
    : ContactSchedule(std::vector<Segment>{{0.0, constant_rate}})
{
}

ContactSchedule::ContactSchedule(std::vector<Segment> segments)
    : m_segments(std::move(segments))
{
    if (m_segments.empty()) {
        throw Error("contact schedule: no segments");
    }
    for (std::size_t i = 0; i < m_segments.size(); ++i) {
        const auto& s = m_segments[i];
        if (!std::isfinite(s.rate) || !std::isfinite(s.start)) {
            throw Error("contact schedule: non-finite value");
        }
        if (s.rate < 0.0) {
            throw Error("negative contact rate");
        }
        if (i > 0 && !(s.start > m_segments[i - 1].start)) {
            throw Error("contact schedule: segments not strictly sorted by start");
        }
    }
}

double ContactSchedule::rate_at(double t) const
{
    double rate = m_segments.front().rate;
    for (const auto& s : m_segments) {
        if (s.start <= t) {
            rate = s.rate;
        }
    }
    return rate;
}

double ContactSchedule::rate_at_step(Index k, double dt) const
{
    double rate = m_segments.front().rate;
    for (const auto& s : m_segments) {
        if (std::llround(s.start / dt) <= k) {
            rate = s.rate;
        }
    }
    return rate;
}

void ContactSchedule::check_grid_aligned(double dt) const
{
    for (const auto& s : m_segments) {
        if (!near_integer(s.start / dt)) {
            throw Error("contact schedule: change time " + std::to_string(s.start) + " is not on the time grid");
        }
    }
}

AgeDependentFactor::AgeDependentFactor(double constant_value)
    : m_constant(constant_value)
{
    if (!(constant_value >= 0.0 && constant_value <= 1.0)) {
        throw Error("age dependent factor: value outside [0, 1]");
    }
}

AgeDependentFactor::AgeDependentFactor(std::vector<double> ages, std::vector<double> values)
    : m_constant(0.0)
    , m_ages(std::move(ages))
    , m_values(std::move(values))
{
    if (m_ages.empty() || m_ages.size() != m_values.size()) {
        throw Error("age dependent factor: ages and values must be nonempty and of equal length");
    }
    for (std::size_t i = 0; i < m_ages.size(); ++i) {
        if (!(m_values[i] >= 0.0 && m_values[i] <= 1.0)) {
            throw Error("age dependent factor: value outside [0, 1]");
        }
        if (!std::isfinite(m_ages[i]) || (i > 0 && !(m_ages[i] > m_ages[i - 1]))) {
            throw Error("age dependent factor: ages not strictly increasing");
        }
    }
    if (m_ages.front() < 0.0) {
        throw Error("age dependent factor: negative age");
    }
}

double AgeDependentFactor::operator()(double tau) const
{
    if (is_constant()) {
        return m_constant;
    }
    tau = std::max(tau, 0.0);
    if (tau <= m_ages.front()) {
        return m_values.front();
    }
    if (tau >= m_ages.back()) {
        return m_values.back();
    }
    auto it      = std::upper_bound(m_ages.begin(), m_ages.end(), tau);
    auto i       = static_cast<std::size_t>(it - m_ages.begin());
    double w     = (tau - m_ages[i - 1]) / (m_ages[i] - m_ages[i - 1]);
    return (1.0 - w) * m_values[i - 1] + w * m_values[i];
}

CompartmentState::CompartmentState(const StateArray& values)
    : m_values(values)
{
    for (auto s : all_states) {
        double v = m_values[idx(s)];
        if (!std::isfinite(v)) {
            throw Error("compartment " + std::string(state_label(s)) + " is not finite");
        }
        if (v < 0.0) {
            throw Error("compartment " + std::string(state_label(s)) + " is negative (" + format_negative(v) + ")");
        }
    }
}

double CompartmentState::total() const
{
    return std::accumulate(m_values.begin(), m_values.end(), 0.0);
}

FlowHistory::FlowHistory(double dt, Index a)
    : m_dt(dt)
    , m_a(a)
{
    if (!(dt > 0.0)) {
        throw Error("flow history: dt must be positive");
    }
    if (a > 0) {
        throw Error("flow history: start index a must be <= 0");
    }
}

double FlowHistory::value(TransitionId t, Index k) const
{
    if (k <= m_a) {
        return 0.0;
    }
    if (k > last_index()) {
        throw Error("flow history: index beyond last stored step");
    }
    return m_series[idx(t)][position(k)];
}

FlowArray FlowHistory::values_at(Index k) const
{
    FlowArray out{};
    for (auto t : all_transitions) {
        out[idx(t)] = value(t, k);
    }
    return out;
}

void FlowHistory::append(const FlowArray& flows)
{
    for (auto t : all_transitions) {
        double v = flows[idx(t)];
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw Error("flow history: " + std::string(transition_label(t)) + " is negative or not finite");
        }
    }
    for (auto t : all_transitions) {
        m_series[idx(t)].push_back(flows[idx(t)]);
    }
}

void FlowHistory::append_zero()
{
    for (auto& s : m_series) {
        s.push_back(0.0);
    }
}

void FlowHistory::set(TransitionId t, Index k, double v)
{
    if (k <= m_a || k > last_index()) {
        throw Error("flow history: index out of range");
    }
    m_series[idx(t)][position(k)] = v;
}

void FlowHistory::reserve(std::size_t n)
{
    for (auto& s : m_series) {
        s.reserve(n);
    }
}

double SimulationResult::max_mass_residual(double total_population) const
{
    double r = 0.0;
    for (const auto& c : compartments) {
        r = std::max(r, std::abs(c.total() - total_population));
    }
    return r;
}

std::vector<double> daily_new_transmissions(const SimulationResult& result, double interval)
{
    std::vector<double> out;
    if (!result.flows) {
        return out;
    }
    const double dt    = result.grid.dt();
    const Index per    = steps_for_duration(interval, dt, "aggregation interval");
    const Index n_max  = result.grid.final_index();
    const auto& flows  = *result.flows;
    for (Index start = 0; start + per <= n_max; start += per) {
        double sum = 0.0;
        for (Index k = start + 1; k <= start + per; ++k) {
            sum += dt * flows.value(TransitionId::SusceptibleToExposed, k);
        }
        out.push_back(sum);
    }
    return out;
}

} // namespace idesecir

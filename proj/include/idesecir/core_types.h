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
#ifndef IDESECIR_CORE_TYPES_H
#define IDESECIR_CORE_TYPES_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace idesecir
{

/**
 * @brief Error raised for invalid input, violated invariants and I/O failures.
 */
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

using Index = std::int64_t;

enum class InfectionState
{
    Susceptible,
    Exposed,
    Carrier,
    Infected,
    Hospitalized,
    IntensiveCare,
    Recovered,
    Dead,
    Count
};

enum class TransitionId
{
    SusceptibleToExposed,
    ExposedToCarrier,
    CarrierToInfected,
    CarrierToRecovered,
    InfectedToHospitalized,
    InfectedToRecovered,
    HospitalizedToIntensiveCare,
    HospitalizedToRecovered,
    IntensiveCareToDead,
    IntensiveCareToRecovered,
    Count
};

inline constexpr std::size_t num_states      = static_cast<std::size_t>(InfectionState::Count);
inline constexpr std::size_t num_transitions = static_cast<std::size_t>(TransitionId::Count);

constexpr std::size_t idx(InfectionState s)
{
    return static_cast<std::size_t>(s);
}

constexpr std::size_t idx(TransitionId t)
{
    return static_cast<std::size_t>(t);
}

inline constexpr std::array<InfectionState, num_states> all_states = {
    InfectionState::Susceptible,  InfectionState::Exposed,       InfectionState::Carrier,
    InfectionState::Infected,     InfectionState::Hospitalized,  InfectionState::IntensiveCare,
    InfectionState::Recovered,    InfectionState::Dead};

/// Transitions in the order in which flows must be evaluated within one step.
inline constexpr std::array<TransitionId, num_transitions> all_transitions = {
    TransitionId::SusceptibleToExposed,        TransitionId::ExposedToCarrier,
    TransitionId::CarrierToInfected,           TransitionId::CarrierToRecovered,
    TransitionId::InfectedToHospitalized,      TransitionId::InfectedToRecovered,
    TransitionId::HospitalizedToIntensiveCare, TransitionId::HospitalizedToRecovered,
    TransitionId::IntensiveCareToDead,         TransitionId::IntensiveCareToRecovered};

InfectionState transition_source(TransitionId t);
InfectionState transition_target(TransitionId t);

/// Short label such as "S" or "U".
std::string_view state_label(InfectionState s);
/// Short label such as "sigma_SE".
std::string_view transition_label(TransitionId t);
/// Two-letter key such as "SE" or "UR", used in config files.
std::string_view transition_key(TransitionId t);
std::optional<TransitionId> transition_from_key(std::string_view key);

using StateArray = std::array<double, num_states>;
using FlowArray  = std::array<double, num_transitions>;

/**
 * @brief Uniform time mesh t_k = k * dt with pre-history start index a and final index n_max.
 */
class TimeGrid
{
public:
    TimeGrid(double dt, Index a, Index n_max);

    double dt() const
    {
        return m_dt;
    }
    Index start_index() const
    {
        return m_a;
    }
    Index final_index() const
    {
        return m_n_max;
    }
    double time(Index k) const
    {
        return static_cast<double>(k) * m_dt;
    }

private:
    double m_dt;
    Index m_a;
    Index m_n_max;
};

/// Number of grid steps corresponding to duration t; throws if t is not a multiple of dt.
Index steps_for_duration(double t, double dt, std::string_view what);

/**
 * @brief Piecewise constant contact rate phi(t).
 */
class ContactSchedule
{
public:
    struct Segment {
        double start;
        double rate;
    };

    explicit ContactSchedule(double constant_rate);
    explicit ContactSchedule(std::vector<Segment> segments);

    /// Rate of the last segment starting at or before t.
    double rate_at(double t) const;
    /// Rate at grid point k * dt, decided by index so that grid-aligned changes apply exactly.
    double rate_at_step(Index k, double dt) const;
    /// Throws unless every change time lies on the grid of step dt.
    void check_grid_aligned(double dt) const;

    const std::vector<Segment>& segments() const
    {
        return m_segments;
    }

private:
    std::vector<Segment> m_segments;
};

/**
 * @brief Proportion depending on infection age, either constant or tabulated with linear interpolation.
 */
class AgeDependentFactor
{
public:
    explicit AgeDependentFactor(double constant_value = 1.0);
    AgeDependentFactor(std::vector<double> ages, std::vector<double> values);

    double operator()(double tau) const;

    bool is_constant() const
    {
        return m_ages.empty();
    }
    double constant_value() const
    {
        return m_constant;
    }
    const std::vector<double>& ages() const
    {
        return m_ages;
    }
    const std::vector<double>& values() const
    {
        return m_values;
    }

private:
    double m_constant;
    std::vector<double> m_ages;
    std::vector<double> m_values;
};

/**
 * @brief Population counts of the eight compartments at one time point.
 */
class CompartmentState
{
public:
    CompartmentState() = default;
    explicit CompartmentState(const StateArray& values);

    double operator[](InfectionState s) const
    {
        return m_values[idx(s)];
    }
    const StateArray& values() const
    {
        return m_values;
    }
    double total() const;

private:
    StateArray m_values{};
};

/**
 * @brief Dense record of all ten flows for indices a+1 .. last_index().
 */
class FlowHistory
{
public:
    FlowHistory(double dt, Index a);

    double dt() const
    {
        return m_dt;
    }
    Index start_index() const
    {
        return m_a;
    }
    Index first_index() const
    {
        return m_a + 1;
    }
    /// Last stored index; equals a when empty.
    Index last_index() const
    {
        return m_a + static_cast<Index>(size());
    }
    std::size_t size() const
    {
        return m_series[0].size();
    }

    /// Flow at index k; indices at or below a read as zero.
    double value(TransitionId t, Index k) const;
    FlowArray values_at(Index k) const;
    std::span<const double> series(TransitionId t) const
    {
        return m_series[idx(t)];
    }
    /// Storage offset of index k in series().
    std::size_t position(Index k) const
    {
        return static_cast<std::size_t>(k - first_index());
    }

    void append(const FlowArray& flows);
    /// Extends all series by one zero entry, to be filled with set().
    void append_zero();
    void set(TransitionId t, Index k, double v);
    void reserve(std::size_t n);

private:
    double m_dt;
    Index m_a;
    std::array<std::vector<double>, num_transitions> m_series;
};

enum class DiscretizationMode
{
    Sum,
    Update,
    Both
};

/**
 * @brief Time series of compartments, flows and force of infection on a uniform grid.
 *
 * Row k corresponds to time time_offset + k * grid.dt(), k = 0 .. grid.final_index().
 */
struct SimulationResult {
    TimeGrid grid{1.0, 0, 0};
    double time_offset = 0.0;
    std::vector<CompartmentState> compartments;
    std::optional<FlowHistory> flows;
    std::vector<double> force_of_infection;
    /// Compartments of the second discretization path in mode Both.
    std::vector<CompartmentState> sum_compartments;
    double max_discretization_gap = 0.0;

    double time(Index k) const
    {
        return time_offset + grid.time(k);
    }
    /// Largest |sum of compartments - N| over all rows.
    double max_mass_residual(double total_population) const;
};

/// New transmissions dt * sigma_SE summed over consecutive intervals of the given length.
std::vector<double> daily_new_transmissions(const SimulationResult& result, double interval = 1.0);

} // namespace idesecir

#endif // IDESECIR_CORE_TYPES_H

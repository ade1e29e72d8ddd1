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

#include "idesecir/data_init.h"
#include "idesecir/distributions.h"
#include "idesecir/ide_solver.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace idesecir
{

namespace
{

Index steps_per_day(double dt)
{
    if (!(dt > 0.0) || dt > 1.0) {
        throw Error("dt does not divide a day");
    }
    double s = 1.0 / dt;
    if (std::abs(s - std::round(s)) > 1e-9 * s) {
        throw Error("dt does not divide a day");
    }
    return static_cast<Index>(std::llround(s));
}

Index ceil_div(Index a, Index b)
{
    // b > 0
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

Index day_offset(const ReportedData& data, Date t0)
{
    return (t0 - data.dates.front()).count();
}

} // namespace

void validate_reported_data(const ReportedData& data)
{
    const auto n = data.dates.size();
    if (n == 0) {
        throw Error("reported data: no rows");
    }
    if (data.cumulative_confirmed.size() != n || data.cumulative_deaths.size() != n) {
        throw Error("reported data: column lengths differ");
    }
    if (data.icu_occupancy && data.icu_occupancy->size() != n) {
        throw Error("reported data: icu_occupancy length differs");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && data.dates[i] != data.dates[i - 1] + std::chrono::days{1}) {
            throw Error("reported data: dates are not contiguous and increasing at row " + std::to_string(i + 1));
        }
        auto check = [&](const std::vector<double>& v, const char* name, bool monotone) {
            if (!(v[i] >= 0.0) || !std::isfinite(v[i])) {
                throw Error(std::string("reported data: ") + name + " negative at row " + std::to_string(i + 1));
            }
            if (monotone && i > 0 && v[i] < v[i - 1]) {
                throw Error(std::string("reported data: ") + name + " decreasing at row " + std::to_string(i + 1));
            }
        };
        check(data.cumulative_confirmed, "cumulative_confirmed", true);
        check(data.cumulative_deaths, "cumulative_deaths", true);
        if (data.icu_occupancy) {
            check(*data.icu_occupancy, "icu_occupancy", false);
        }
    }
}

std::vector<double> daily_flow_from_cumulative(std::span<const double> cumulative)
{
    std::vector<double> out;
    if (cumulative.size() < 2) {
        return out;
    }
    out.reserve(cumulative.size() - 1);
    for (std::size_t i = 1; i < cumulative.size(); ++i) {
        double d = cumulative[i] - cumulative[i - 1];
        if (d < 0.0) {
            throw Error("cumulative series decreasing at position " + std::to_string(i));
        }
        out.push_back(d);
    }
    return out;
}

std::vector<double> interpolate_subdaily(std::span<const double> daily, double dt)
{
    const Index s = steps_per_day(dt);
    std::vector<double> out(daily.size() * static_cast<std::size_t>(s), 0.0);
    for (std::size_t d = 0; d < daily.size(); ++d) {
        if (daily[d] < 0.0) {
            throw Error("negative daily value");
        }
        const double left  = d == 0 ? daily[0] : daily[d - 1];
        const double right = daily[d];
        double raw_total   = 0.0;
        const std::size_t base = d * static_cast<std::size_t>(s);
        for (Index j = 0; j < s; ++j) {
            double w       = static_cast<double>(j + 1) / static_cast<double>(s);
            double v       = dt * ((1.0 - w) * left + w * right);
            out[base + j]  = v;
            raw_total += v;
        }
        const double scale = raw_total > 0.0 ? daily[d] / raw_total : 0.0;
        for (Index j = 0; j < s; ++j) {
            out[base + j] *= scale;
        }
    }
    return out;
}

Index round_to_grid_steps(double t, double dt)
{
    if (!(dt > 0.0) || !(t >= 0.0)) {
        throw Error("round_to_grid_steps: invalid arguments");
    }
    return static_cast<Index>(std::floor(t / dt + 0.5 + 1e-9));
}

BackshiftedFlows backshift_flows(std::span<const double> sigma_CI, const ParameterSet& params, double dt)
{
    const double mu = params.raw().mu_CI;
    if (!(mu > 0.0)) {
        throw Error("backshift: mu_CI must be positive");
    }
    const double T_CI = params.distribution(TransitionId::CarrierToInfected).mean_stay_time();
    const double T_EC = params.distribution(TransitionId::ExposedToCarrier).mean_stay_time();
    BackshiftedFlows out;
    out.shift_exposed_to_carrier     = round_to_grid_steps(T_CI, dt);
    out.shift_susceptible_to_exposed = round_to_grid_steps(T_EC + T_CI, dt);
    const auto shift                 = static_cast<std::size_t>(out.shift_susceptible_to_exposed);
    if (sigma_CI.size() <= shift) {
        throw Error("coverage: case data too short for the backshift window");
    }
    const std::size_t len = sigma_CI.size() - shift;
    out.exposed_to_carrier.resize(len);
    out.susceptible_to_exposed.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        out.exposed_to_carrier[i]     = sigma_CI[i + static_cast<std::size_t>(out.shift_exposed_to_carrier)] / mu;
        out.susceptible_to_exposed[i] = sigma_CI[i + shift] / mu;
    }
    return out;
}

Index history_steps(const ParameterSet& params, double dt)
{
    std::size_t k = 0;
    for (auto t : all_transitions) {
        if (t != TransitionId::SusceptibleToExposed) {
            k = std::max(k, support_steps(params.distribution(t), dt));
        }
    }
    return static_cast<Index>(k);
}

double interpolate_reported(const ReportedData& data, std::span<const double> series, Date t0, double offset)
{
    const double x = static_cast<double>(day_offset(data, t0)) + offset;
    const double last = static_cast<double>(series.size() - 1);
    if (x < -1e-9 || x > last + 1e-9) {
        throw Error("coverage: reported data does not cover day offset " + std::to_string(offset));
    }
    const double xc = std::clamp(x, 0.0, last);
    const auto i    = static_cast<std::size_t>(std::min(std::floor(xc), std::max(last - 1.0, 0.0)));
    if (series.size() == 1) {
        return series[0];
    }
    const double w = xc - static_cast<double>(i);
    return (1.0 - w) * series[i] + w * series[i + 1];
}

InitialState build_initial_history(const ReportedData& data, const ParameterSet& params, double dt, Date t0,
                                   const DataInitOptions& options)
{
    validate_reported_data(data);
    if (!(options.case_scale > 0.0)) {
        throw Error("case_scale must be positive");
    }
    const Index s     = steps_per_day(dt);
    const Index K     = history_steps(params, dt);
    const Index a     = -K;
    const double T_EC = params.distribution(TransitionId::ExposedToCarrier).mean_stay_time();
    const double T_CI = params.distribution(TransitionId::CarrierToInfected).mean_stay_time();
    const Index n_lo  = a + 1;
    const Index n_hi  = round_to_grid_steps(T_EC + T_CI, dt);

    // day e covers (e - 1, e] relative to t0, i.e. grid indices (e - 1) * s + 1 .. e * s
    const Index e_lo     = ceil_div(n_lo, s);
    const Index e_hi     = ceil_div(n_hi, s);
    const Index first    = day_offset(data, t0) + e_lo - 2; // row of cumulative value at end of day e_lo - 2
    const Index last     = day_offset(data, t0) + e_hi;
    if (first < 0 || last >= static_cast<Index>(data.dates.size())) {
        throw Error("coverage: case data must span " + std::to_string(-(e_lo - 2)) + " days before and " +
                    std::to_string(e_hi) + " days after the start date");
    }
    std::span<const double> cum(data.cumulative_confirmed.data() + first, static_cast<std::size_t>(last - first + 1));
    const auto daily = daily_flow_from_cumulative(cum); // days e_lo - 1 .. e_hi
    const auto sub   = interpolate_subdaily(daily, dt);
    const Index sub_first = (e_lo - 2) * s + 1; // grid index of sub[0]

    std::vector<double> sigma_CI(static_cast<std::size_t>(n_hi - n_lo + 1));
    for (Index n = n_lo; n <= n_hi; ++n) {
        sigma_CI[static_cast<std::size_t>(n - n_lo)] = options.case_scale * sub[static_cast<std::size_t>(n - sub_first)] / dt;
    }
    const auto shifted = backshift_flows(sigma_CI, params, dt);

    FlowHistory history(dt, a);
    history.reserve(static_cast<std::size_t>(K));
    for (Index n = n_lo; n <= 0; ++n) {
        history.append_zero();
        const auto i = static_cast<std::size_t>(n - n_lo);
        history.set(TransitionId::SusceptibleToExposed, n, shifted.susceptible_to_exposed[i]);
        history.set(TransitionId::ExposedToCarrier, n, shifted.exposed_to_carrier[i]);
        history.set(TransitionId::CarrierToInfected, n, sigma_CI[i]);
    }

    const auto ks = build_kernels(params, dt);
    using T       = TransitionId;
    for (auto t : {T::CarrierToRecovered, T::InfectedToHospitalized, T::InfectedToRecovered,
                   T::HospitalizedToIntensiveCare, T::HospitalizedToRecovered, T::IntensiveCareToDead,
                   T::IntensiveCareToRecovered}) {
        const auto input   = history.series(inflow_transition(transition_source(t)));
        const auto& w      = ks.flow_weights[idx(t)];
        std::vector<double> values(history.size());
        const auto count = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            values[static_cast<std::size_t>(i)] = kernels::convolve_parallel(w, input, static_cast<std::size_t>(i));
        }
        for (std::size_t i = 0; i < values.size(); ++i) {
            history.set(t, n_lo + static_cast<Index>(i), values[i]);
        }
    }

    const double delay = params.distribution(T::InfectedToHospitalized).mean_stay_time() +
                         params.distribution(T::HospitalizedToIntensiveCare).mean_stay_time() +
                         params.distribution(T::IntensiveCareToDead).mean_stay_time();
    const double deaths = interpolate_reported(data, data.cumulative_deaths, t0, -delay);
    if (!(deaths < params.total_population())) {
        throw Error("initialization: reported deaths reach total_population");
    }
    auto compartments = compartments_from_history(params, history, deaths);
    return {std::move(history), compartments};
}

ComparisonSeries extrapolate_comparison_series(const ReportedData& data, const ParameterSet& params, Date t0,
                                               std::span<const double> times)
{
    validate_reported_data(data);
    using T            = TransitionId;
    const double mu_CI = params.raw().mu_CI;
    const double mu_IH = params.raw().mu_IH;
    if (!(mu_CI > 0.0)) {
        throw Error("comparison series: mu_CI must be positive");
    }
    auto mean          = [&](T t) {
        return params.distribution(t).mean_stay_time();
    };
    const double shift_SE = mean(T::ExposedToCarrier) + mean(T::CarrierToInfected);
    const double T_IH     = mean(T::InfectedToHospitalized);
    const double T_IR     = mean(T::InfectedToRecovered);
    const double delay_D  = T_IH + mean(T::HospitalizedToIntensiveCare) + mean(T::IntensiveCareToDead);
    const auto& sigma     = data.cumulative_confirmed;
    auto cum              = [&](double offset) {
        return interpolate_reported(data, sigma, t0, offset);
    };

    ComparisonSeries out;
    out.times.assign(times.begin(), times.end());
    if (data.icu_occupancy) {
        out.icu.emplace();
    }
    for (double t : times) {
        out.new_transmissions.push_back((cum(t + shift_SE) - cum(t + shift_SE - 1.0)) / mu_CI);
        out.infected.push_back(mu_IH * (cum(t) - cum(t - T_IH)) + (1.0 - mu_IH) * (cum(t) - cum(t - T_IR)));
        out.deaths.push_back(interpolate_reported(data, data.cumulative_deaths, t0, t - delay_D));
        if (out.icu) {
            out.icu->push_back(interpolate_reported(data, *data.icu_occupancy, t0, t));
        }
    }
    return out;
}

} // namespace idesecir

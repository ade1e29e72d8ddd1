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

#include "idesecir/config.h"
#include "idesecir/data_init.h"
#include "idesecir/experiments.h"
#include "idesecir/io.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace idesecir;
using T = TransitionId;
using Z = InfectionState;

namespace
{

ModelParameters scenario_parameters()
{
    auto cfg = load_run_config(std::string(IDESECIR_SOURCE_DIR) + "/configs/changepoint.json");
    return parse_model_parameters(cfg.document.at("parameters"));
}

ParameterSet exponential_parameters(double mu_CI, double T_EC, double T_CI)
{
    ModelParameters mp;
    mp.total_population = 1e6;
    mp.mu_CI            = mu_CI;
    for (auto t : all_transitions) {
        if (t != T::SusceptibleToExposed) {
            mp.gamma.emplace(t, TransitionDistribution::exponential(2.0));
        }
    }
    mp.gamma.at(T::ExposedToCarrier)  = TransitionDistribution::exponential(T_EC);
    mp.gamma.at(T::CarrierToInfected) = TransitionDistribution::exponential(T_CI);
    return validate_parameters(mp);
}

ReportedData linear_data(Date first, int days, double per_day, double deaths_per_day)
{
    ReportedData d;
    for (int i = 0; i < days; ++i) {
        d.dates.push_back(first + std::chrono::days{i});
        d.cumulative_confirmed.push_back(1000.0 + per_day * i);
        d.cumulative_deaths.push_back(deaths_per_day * i);
    }
    return d;
}

} // namespace

TEST(TestDataInit, dailyFlowFromCumulative)
{
    std::vector<double> cum{100, 110, 125};
    EXPECT_EQ(daily_flow_from_cumulative(cum), (std::vector<double>{10, 15}));
    std::vector<double> flat{7, 7, 7, 7};
    EXPECT_EQ(daily_flow_from_cumulative(flat), (std::vector<double>{0, 0, 0}));
    std::vector<double> bad{5, 4};
    EXPECT_THROW(daily_flow_from_cumulative(bad), Error);

    std::vector<double> c{3.0, 4.5, 9.0, 9.0, 20.25};
    auto daily = daily_flow_from_cumulative(c);
    double acc = c[0];
    for (std::size_t i = 0; i < daily.size(); ++i) {
        acc += daily[i];
        EXPECT_EQ(acc, c[i + 1]);
    }
}

TEST(TestDataInit, interpolateSubdaily)
{
    std::vector<double> daily{3.0, 5.0, 2.0};
    EXPECT_EQ(interpolate_subdaily(daily, 1.0), daily);

    std::vector<double> constant{4.0, 4.0};
    for (double v : interpolate_subdaily(constant, 0.5)) {
        EXPECT_DOUBLE_EQ(v, 2.0);
    }

    std::vector<double> ramp{0.0, 10.0};
    auto sub = interpolate_subdaily(ramp, 0.5);
    ASSERT_EQ(sub.size(), 4u);
    EXPECT_EQ(sub[0] + sub[1], 0.0);
    EXPECT_NEAR(sub[2] + sub[3], 10.0, 1e-14);
    EXPECT_NEAR(sub[2], 10.0 / 3.0, 1e-14);
    EXPECT_THROW(interpolate_subdaily(ramp, 0.3), Error);
}

TEST(TestDataInit, interpolationConservesDailyTotals)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 5000.0);
    std::vector<double> daily(60);
    for (auto& v : daily) {
        v = u(rng);
    }
    for (double dt : {0.5, 0.1, 0.01}) {
        auto sub      = interpolate_subdaily(daily, dt);
        const auto s  = static_cast<std::size_t>(std::llround(1.0 / dt));
        for (std::size_t d = 0; d < daily.size(); ++d) {
            double sum = 0.0;
            for (std::size_t j = 0; j < s; ++j) {
                EXPECT_GE(sub[d * s + j], 0.0);
                sum += sub[d * s + j];
            }
            EXPECT_NEAR(sum, daily[d], 1e-12 * daily[d]);
        }
    }
}

TEST(TestDataInit, roundToGridSteps)
{
    EXPECT_EQ(round_to_grid_steps(1.1, 0.5), 2);
    EXPECT_EQ(round_to_grid_steps(0.75, 0.5), 2);
    EXPECT_EQ(round_to_grid_steps(1.0, 0.1), 10);
    EXPECT_EQ(round_to_grid_steps(0.0, 0.1), 0);
}

TEST(TestDataInit, backshiftFlows)
{
    std::vector<double> ci{1, 2, 3, 4, 5, 6, 7, 8};
    auto pure = backshift_flows(ci, exponential_parameters(1.0, 1.5, 1.0), 0.5);
    EXPECT_EQ(pure.shift_exposed_to_carrier, 2);
    EXPECT_EQ(pure.shift_susceptible_to_exposed, 5);
    ASSERT_EQ(pure.exposed_to_carrier.size(), 3u);
    EXPECT_EQ(pure.exposed_to_carrier, (std::vector<double>{3, 4, 5}));
    EXPECT_EQ(pure.susceptible_to_exposed, (std::vector<double>{6, 7, 8}));

    auto half = backshift_flows(ci, exponential_parameters(0.5, 1.5, 1.0), 0.5);
    EXPECT_EQ(half.exposed_to_carrier, (std::vector<double>{6, 8, 10}));

    std::vector<double> short_ci{1, 2, 3};
    EXPECT_THROW(backshift_flows(short_ci, exponential_parameters(1.0, 1.5, 1.0), 0.5), Error);
}

TEST(TestDataInit, zeroCasesGiveEmptyEpidemic)
{
    auto p      = validate_parameters(scenario_parameters());
    const Date t0 = parse_date("2020-10-01");
    auto data   = linear_data(t0 - std::chrono::days{600}, 700, 0.0, 0.0);
    for (auto& d : data.cumulative_deaths) {
        d = 250.0;
    }
    auto init = build_initial_history(data, p, 0.1, t0);
    EXPECT_EQ(init.history.first_index(), -history_steps(p, 0.1) + 1);
    EXPECT_EQ(init.history.last_index(), 0);
    for (Index k = init.history.first_index(); k <= 0; ++k) {
        for (auto t : all_transitions) {
            EXPECT_EQ(init.history.value(t, k), 0.0);
        }
    }
    EXPECT_EQ(init.compartments[Z::Dead], 250.0);
    EXPECT_EQ(init.compartments[Z::Susceptible], p.total_population() - 250.0);
}

TEST(TestDataInit, coverageErrors)
{
    auto p        = validate_parameters(scenario_parameters());
    const Date t0 = parse_date("2020-10-01");
    auto data     = linear_data(t0 - std::chrono::days{30}, 40, 100.0, 1.0);
    EXPECT_THROW(build_initial_history(data, p, 0.1, t0), Error);

    data.dates[5] = data.dates[4];
    EXPECT_THROW(validate_reported_data(data), Error);
}

TEST(TestDataInit, reconstructedCasesMatchGeneratorDaily)
{
    SyntheticDataConfig c;
    c.ide         = scenario_parameters();
    c.ide.contact = ContactSchedule(3.3);
    c.dt          = 0.1;
    c.days_before = 100;
    c.days_after  = 20;
    c.start       = parse_date("2020-10-01");
    auto synth    = synthesize_reported_data(c);
    auto p        = validate_parameters(c.ide);
    auto init     = build_initial_history(synth.data, p, c.dt, c.start);

    // days ending at t0 - d, for days fully inside both runs
    for (Index d = 0; d < 90; ++d) {
        double rebuilt = 0.0, generated = 0.0;
        for (Index j = 0; j < 10; ++j) {
            const Index k = -10 * d - j;
            rebuilt += c.dt * init.history.value(T::CarrierToInfected, k);
            generated += c.dt * synth.generator.flows->value(T::CarrierToInfected, synth.start_index + k);
        }
        EXPECT_NEAR(rebuilt, generated, 1e-9 * (1.0 + generated)) << "day " << d;
    }
    EXPECT_EQ(init.compartments[Z::Dead],
              interpolate_reported(synth.data, synth.data.cumulative_deaths, c.start,
                                   -(p.distribution(T::InfectedToHospitalized).mean_stay_time() +
                                     p.distribution(T::HospitalizedToIntensiveCare).mean_stay_time() +
                                     p.distribution(T::IntensiveCareToDead).mean_stay_time())));
    EXPECT_NEAR(init.compartments.total(), p.total_population(), 1e-9 * p.total_population());
}

TEST(TestDataInit, comparisonSeries)
{
    auto mp       = scenario_parameters();
    const Date t0 = parse_date("2020-10-01");
    std::vector<double> times{0.0, 1.0, 10.0};

    auto flat = linear_data(t0 - std::chrono::days{60}, 120, 0.0, 0.0);
    auto s    = extrapolate_comparison_series(flat, validate_parameters(mp), t0, times);
    for (double v : s.infected) {
        EXPECT_EQ(v, 0.0);
    }
    EXPECT_FALSE(s.icu.has_value());

    auto linear = linear_data(t0 - std::chrono::days{60}, 120, 250.0, 2.0);
    auto lin    = extrapolate_comparison_series(linear, validate_parameters(mp), t0, times);
    for (double v : lin.new_transmissions) {
        EXPECT_NEAR(v, 250.0 / mp.mu_CI, 1e-9);
    }

    mp.mu_IH         = 0.0;
    auto p           = validate_parameters(mp);
    const double T_IR = p.distribution(T::InfectedToRecovered).mean_stay_time();
    auto single      = extrapolate_comparison_series(linear, p, t0, times);
    for (double v : single.infected) {
        EXPECT_NEAR(v, 250.0 * T_IR, 1e-9);
    }
}

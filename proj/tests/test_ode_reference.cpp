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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace idesecir;
using T = TransitionId;
using Z = InfectionState;

namespace
{

OdeParameterSet baseline_parameters()
{
    OdeParameters p;
    p.total_population = 10000.0;
    p.stay_times       = {1.4, 1.2, 0.3, 0.3, 0.3};
    return validate_ode_parameters(p);
}

const StateArray baseline_initial{9945, 20, 20, 3, 1, 1, 10, 0};

ParameterSet exponential_ide(double T_E, double T_C, double T_rest)
{
    ModelParameters mp;
    mp.total_population = 10000.0;
    for (auto t : all_transitions) {
        if (t != T::SusceptibleToExposed) {
            mp.gamma.emplace(t, TransitionDistribution::exponential(T_rest));
        }
    }
    mp.gamma.at(T::ExposedToCarrier)   = TransitionDistribution::exponential(T_E);
    mp.gamma.at(T::CarrierToInfected)  = TransitionDistribution::exponential(T_C);
    mp.gamma.at(T::CarrierToRecovered) = TransitionDistribution::exponential(T_C);
    return validate_parameters(mp);
}

} // namespace

TEST(TestOdeReference, rhsWithoutInfectious)
{
    auto p = baseline_parameters();
    StateArray y{9000, 50, 0, 0, 10, 5, 900, 35};
    auto d = ode_rhs(y, 1.0, p);
    EXPECT_EQ(d[idx(Z::Susceptible)], 0.0);
    EXPECT_DOUBLE_EQ(d[idx(Z::Exposed)], -50.0 / 1.4);
}

TEST(TestOdeReference, rhsInitialSusceptibleDerivative)
{
    auto d = ode_rhs(baseline_initial, 1.0, baseline_parameters());
    EXPECT_NEAR(d[idx(Z::Susceptible)], -22.8735, 1e-10);
}

TEST(TestOdeReference, rhsSumsToZero)
{
    auto p = baseline_parameters();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 2000.0);
    for (int i = 0; i < 500; ++i) {
        StateArray y;
        double total = 0.0;
        for (auto& v : y) {
            v = u(rng);
            total += v;
        }
        auto d     = ode_rhs(y, 1.0 + u(rng) / 1000.0, p);
        double sum = 0.0, scale = 0.0;
        for (double v : d) {
            sum += v;
            scale += std::abs(v);
        }
        EXPECT_LE(std::abs(sum), 1e-13 * scale);
    }
}

TEST(TestOdeReference, constantStateWithoutFlows)
{
    auto r = rk_integrate(baseline_parameters(), CompartmentState(StateArray{9000, 0, 0, 0, 0, 0, 900, 100}), 0.0, 5.0, 0.1);
    for (const auto& z : r.compartments) {
        EXPECT_EQ(z.values(), (StateArray{9000, 0, 0, 0, 0, 0, 900, 100}));
    }
}

TEST(TestOdeReference, massConservation)
{
    auto r = rk_integrate(baseline_parameters(), CompartmentState(baseline_initial), 0.0, 70.0, 0.01);
    EXPECT_LE(r.max_mass_residual(10000.0), 1e-10 * 10000.0);
}

TEST(TestOdeReference, selfConvergenceOrderAtLeastFour)
{
    auto p      = baseline_parameters();
    auto y0     = CompartmentState(baseline_initial);
    auto finest = rk_integrate(p, y0, 0.0, 10.0, 0.0025).compartments.back();
    auto error  = [&](double dt) {
        auto y   = rk_integrate(p, y0, 0.0, 10.0, dt).compartments.back();
        double e = 0.0;
        for (auto s : all_states) {
            e = std::max(e, std::abs(y[s] - finest[s]));
        }
        return e;
    };
    // below dt = 0.1 the error reaches the rounding floor of ~1e-11
    EXPECT_GE(error(0.2) / error(0.1), 16.0);
}

TEST(TestOdeReference, outputStrideAndOffset)
{
    auto r = rk_integrate(baseline_parameters(), CompartmentState(baseline_initial), 1.0, 3.0, 0.01, 10);
    EXPECT_EQ(r.compartments.size(), 21u);
    EXPECT_DOUBLE_EQ(r.grid.dt(), 0.1);
    EXPECT_EQ(r.time_offset, 1.0);
    EXPECT_THROW(rk_integrate(baseline_parameters(), CompartmentState(baseline_initial), 0.0, 1.0, 0.01, 3), Error);
}

TEST(TestOdeReference, reduceExponentialModel)
{
    auto ode = reduce_ide_to_ode(exponential_ide(1.4, 1.2, 0.3));
    EXPECT_EQ(ode.values().stay_times.exposed, 1.4);
    EXPECT_EQ(ode.values().stay_times.carrier, 1.2);
    EXPECT_EQ(ode.values().stay_times.infected, 0.3);
    EXPECT_EQ(ode.values().stay_times.hospitalized, 0.3);
    EXPECT_EQ(ode.values().stay_times.icu, 0.3);
}

TEST(TestOdeReference, reduceRejectsIncompatibleModels)
{
    ModelParameters mp = exponential_ide(1.4, 1.2, 0.3).raw();
    mp.gamma.at(T::InfectedToRecovered) = TransitionDistribution::lognormal(8.0, 2.0);
    try {
        reduce_ide_to_ode(validate_parameters(mp));
        FAIL() << "expected an error";
    }
    catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("non-exponential"), std::string::npos);
    }
    mp = exponential_ide(1.4, 1.2, 0.3).raw();
    mp.gamma.at(T::CarrierToRecovered) = TransitionDistribution::exponential(2.0);
    try {
        reduce_ide_to_ode(validate_parameters(mp));
        FAIL() << "expected an error";
    }
    catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("pair mismatch"), std::string::npos);
    }
}

TEST(TestOdeReference, weightedMeanStayTimes)
{
    FlowArray means{};
    means[idx(T::ExposedToCarrier)]            = 4.5;
    means[idx(T::CarrierToInfected)]           = 1.1;
    means[idx(T::CarrierToRecovered)]          = 8.0;
    means[idx(T::InfectedToHospitalized)]      = 6.6;
    means[idx(T::InfectedToRecovered)]         = 8.0;
    means[idx(T::HospitalizedToIntensiveCare)] = 1.5;
    means[idx(T::HospitalizedToRecovered)]     = 18.1;
    means[idx(T::IntensiveCareToDead)]         = 10.7;
    means[idx(T::IntensiveCareToRecovered)]    = 18.1;
    auto w = weighted_ode_mean_stay_times(means, {0.793099, 0.078643, 0.173176, 0.387803});
    EXPECT_EQ(w.exposed, 4.5);
    EXPECT_NEAR(w.carrier, 2.527617, 5e-7);
    EXPECT_NEAR(w.infected, 7.889900, 5e-7);
    EXPECT_NEAR(w.hospitalized, 15.225278, 5e-7);
    EXPECT_NEAR(w.icu, 15.230258, 5e-7);

    auto first = weighted_ode_mean_stay_times(means, {1.0, 1.0, 1.0, 0.5});
    EXPECT_EQ(first.carrier, 1.1);
    EXPECT_EQ(first.infected, 6.6);
    EXPECT_EQ(first.hospitalized, 1.5);
}

TEST(TestOdeReference, extractedFlows)
{
    auto p   = baseline_parameters();
    auto ode = rk_integrate(p, CompartmentState(baseline_initial), 0.0, 10.0, 0.01);
    attach_ode_flows(ode, p);
    for (std::size_t k = 0; k < ode.compartments.size(); ++k) {
        const auto& y    = ode.compartments[k];
        const auto i     = static_cast<Index>(k);
        const double out = ode.flows->value(T::CarrierToInfected, i) + ode.flows->value(T::CarrierToRecovered, i);
        EXPECT_NEAR(out, y[Z::Carrier] / 1.2, 1e-12 * (1.0 + y[Z::Carrier]));
    }
    auto no_exposed = ode_flows(StateArray{9000, 0, 10, 0, 0, 0, 990, 0}, 1.0, p);
    EXPECT_EQ(no_exposed[idx(T::ExposedToCarrier)], 0.0);

    // dt * sum of sigma_UD over (0, t] approximates D(t) - D(0) to O(dt)
    auto h = extract_ide_flows_from_ode(ode, p, 10.0);
    EXPECT_EQ(h.last_index(), 0);
    EXPECT_EQ(h.first_index(), -1000);
    double sum = 0.0;
    for (Index k = -999; k <= 0; ++k) {
        sum += 0.01 * h.value(T::IntensiveCareToDead, k);
    }
    const double dD = ode.compartments.back()[Z::Dead] - ode.compartments.front()[Z::Dead];
    EXPECT_NEAR(sum, dD, 0.01 * 0.01 * 1000.0);
}

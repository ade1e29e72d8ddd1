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
#include "idesecir/distributions.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace idesecir;

namespace
{

std::vector<TransitionDistribution> sample_distributions()
{
    return {TransitionDistribution::exponential(1.4),         TransitionDistribution::exponential(0.3),
            TransitionDistribution::lognormal(4.5, 1.5),      TransitionDistribution::lognormal(1.1, 0.9),
            TransitionDistribution::lognormal(1.5, 2.0),      TransitionDistribution::lognormal(18.1, 6.3),
            TransitionDistribution::smoother_cosine(2.0),     TransitionDistribution::smoother_cosine(13.0)};
}

} // namespace

TEST(TestDistributions, exponentialSurvival)
{
    auto d = TransitionDistribution::exponential(2.0);
    EXPECT_EQ(d.survival(0.0), 1.0);
    EXPECT_NEAR(d.survival(2.0), 0.3678794, 1e-7);
    EXPECT_EQ(survival(d, -3.0), 1.0);
}

TEST(TestDistributions, lognormalSurvivalBeforeZero)
{
    auto d = TransitionDistribution::lognormal(4.5, 1.5);
    EXPECT_EQ(d.survival(-1.0), 1.0);
    EXPECT_EQ(d.survival(0.0), 1.0);
}

TEST(TestDistributions, lognormalUnderlyingParams)
{
    auto p = lognormal_underlying_params(4.5, 1.5);
    EXPECT_NEAR(p.mu_log, 1.4513971, 1e-7);
    EXPECT_NEAR(p.sigma_log, 0.3245928, 1e-7);

    // first two moments of the resulting density by Simpson's rule in log space
    const int n  = 20000;
    const double lo = p.mu_log - 12.0 * p.sigma_log, hi = p.mu_log + 12.0 * p.sigma_log;
    const double h  = (hi - lo) / n;
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double y = lo + i * h;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        const double z = (y - p.mu_log) / p.sigma_log;
        const double f = std::exp(-0.5 * z * z) / (p.sigma_log * std::sqrt(2.0 * M_PI));
        m1 += w * f * std::exp(y);
        m2 += w * f * std::exp(2.0 * y);
    }
    m1 *= h / 3.0;
    m2 *= h / 3.0;
    EXPECT_NEAR(m1, 4.5, 1e-9);
    EXPECT_NEAR(std::sqrt(m2 - m1 * m1), 1.5, 1e-8);

    auto q = lognormal_underlying_params(1.1, 0.9);
    EXPECT_NEAR(q.mu_log, std::log(1.21 / std::sqrt(1.21 + 0.81)), 1e-14);
    EXPECT_NEAR(q.sigma_log, std::sqrt(std::log(1.0 + 0.81 / 1.21)), 1e-14);

    auto narrow = lognormal_underlying_params(3.0, 1e-6);
    EXPECT_NEAR(narrow.mu_log, std::log(3.0), 1e-12);
    EXPECT_LT(narrow.sigma_log, 1e-6);
    EXPECT_THROW(lognormal_underlying_params(-1.0, 1.0), Error);
}

TEST(TestDistributions, meanStayTime)
{
    EXPECT_EQ(TransitionDistribution::exponential(1.4).mean_stay_time(), 1.4);
    EXPECT_EQ(mean_stay_time(TransitionDistribution::lognormal(4.5, 1.5)), 4.5);
    EXPECT_NEAR(TransitionDistribution::smoother_cosine(3.0).mean_stay_time(), 1.5, 1e-9);

    // trapezoid over the truncated support of exp(T=2)
    auto d         = TransitionDistribution::exponential(2.0);
    const double q = d.support();
    const int n    = 400000;
    double sum     = 0.5 * (d.survival(0.0) + d.survival(q));
    for (int i = 1; i < n; ++i) {
        sum += d.survival(q * i / n);
    }
    EXPECT_NEAR(sum * q / n, 2.0, d.epsilon() * q + 1e-9);
}

TEST(TestDistributions, truncatedSupport)
{
    auto d = TransitionDistribution::exponential(1.0, std::exp(-10.0));
    EXPECT_NEAR(truncated_support(d, std::exp(-10.0)), 10.0, 1e-12);
    EXPECT_EQ(truncated_support(d, std::exp(-10.0), 0.5), 10.0);
    EXPECT_EQ(support_steps(d, 0.5), 20u);

    auto ln     = TransitionDistribution::lognormal(4.5, 1.5);
    const double dt = 0.01;
    const double q  = truncated_support(ln, 1e-10, dt);
    EXPECT_LE(ln.untruncated_survival(q), 1e-10);
    EXPECT_GT(ln.untruncated_survival(q - dt), 1e-10);

    auto wide = TransitionDistribution::lognormal(4.5, 1.5);
    const double q999 = truncated_support(wide, 0.999, 0.1);
    EXPECT_LE(wide.untruncated_survival(q999), 0.999);
    EXPECT_GT(wide.untruncated_survival(q999 - 0.1), 0.999);
}

TEST(TestDistributions, truncationCutsBelowEpsilon)
{
    auto d = TransitionDistribution::exponential(1.0, 1e-4);
    EXPECT_GT(d.survival(9.0), 0.0);
    EXPECT_EQ(d.survival(9.3), 0.0);
    EXPECT_EQ(d.survival(50.0), 0.0);
}

TEST(TestDistributions, backwardsDifferenceKernel)
{
    auto k = backwards_difference_kernel(TransitionDistribution::exponential(1.0), 0.5);
    EXPECT_NEAR(k[0], -0.7869387, 1e-7);
    auto g = survival_on_grid(TransitionDistribution::exponential(1.0), 0.5);
    EXPECT_EQ(g.size(), k.size() + 1);
    EXPECT_EQ(g.back(), 0.0);
}

TEST(TestDistributions, survivalIsNonincreasing)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 80.0);
    for (const auto& d : sample_distributions()) {
        for (int i = 0; i < 2000; ++i) {
            double a = u(rng), b = u(rng);
            if (a > b) {
                std::swap(a, b);
            }
            EXPECT_LE(d.survival(b), d.survival(a));
        }
    }
}

TEST(TestDistributions, kernelIsNonpositiveAndTelescopes)
{
    for (const auto& d : sample_distributions()) {
        for (double dt : {1.0, 0.1, 0.01}) {
            auto k     = backwards_difference_kernel(d, dt);
            double sum = 0.0;
            for (double v : k) {
                EXPECT_LE(v, 0.0);
                sum += v;
            }
            EXPECT_GE(-dt * sum, 1.0 - d.epsilon() - 1e-12);
            EXPECT_LE(-dt * sum, 1.0 + 1e-12);
        }
    }
}

TEST(TestDistributions, exponentialKernelConvergesToDerivative)
{
    auto d        = TransitionDistribution::exponential(1.4);
    auto error_at = [&](double dt) {
        auto k        = backwards_difference_kernel(d, dt);
        const auto i  = static_cast<std::size_t>(std::llround(1.0 / dt)) - 1; // entry for t = 1
        return std::abs(k[i] + std::exp(-1.0 / 1.4) / 1.4);
    };
    const double ratio = error_at(0.02) / error_at(0.01);
    EXPECT_NEAR(ratio, 2.0, 0.05);
}

TEST(TestDistributions, invalidParametersRejected)
{
    EXPECT_THROW(TransitionDistribution::exponential(0.0), Error);
    EXPECT_THROW(TransitionDistribution::lognormal(1.0, 0.0), Error);
    EXPECT_THROW(TransitionDistribution::smoother_cosine(-1.0), Error);
    EXPECT_THROW(TransitionDistribution::exponential(1.0, 1.0), Error);
}

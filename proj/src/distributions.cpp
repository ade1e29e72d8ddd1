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

#include "idesecir/distributions.h"
#include "idesecir/core_types.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace idesecir
{

LognormalParams lognormal_underlying_params(double mean, double std)
{
    if (!(mean > 0.0) || !(std > 0.0) || !std::isfinite(mean) || !std::isfinite(std)) {
        throw Error("lognormal: mean and std must be positive");
    }
    double m2 = mean * mean;
    return {std::log(m2 / std::sqrt(m2 + std * std)), std::sqrt(std::log1p(std * std / m2))};
}

TransitionDistribution::TransitionDistribution(DistributionFamily family, double p1, double p2, double epsilon)
    : m_family(family)
    , m_p1(p1)
    , m_p2(p2)
    , m_epsilon(epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error("distribution: epsilon must lie in (0, 1)");
    }
    if (!(p1 > 0.0) || !std::isfinite(p1)) {
        throw Error("distribution: mean (or support) must be positive");
    }
    if (family == DistributionFamily::Lognormal) {
        m_log = lognormal_underlying_params(p1, p2);
    }
    m_support = truncated_support(*this, epsilon);
}

TransitionDistribution TransitionDistribution::exponential(double mean, double epsilon)
{
    return TransitionDistribution(DistributionFamily::Exponential, mean, 0.0, epsilon);
}

TransitionDistribution TransitionDistribution::lognormal(double mean, double std, double epsilon)
{
    return TransitionDistribution(DistributionFamily::Lognormal, mean, std, epsilon);
}

TransitionDistribution TransitionDistribution::smoother_cosine(double support, double epsilon)
{
    return TransitionDistribution(DistributionFamily::SmootherCosine, support, 0.0, epsilon);
}

double TransitionDistribution::untruncated_survival(double tau) const
{
    if (tau <= 0.0) {
        return 1.0;
    }
    switch (m_family) {
    case DistributionFamily::Exponential:
        return std::exp(-tau / m_p1);
    case DistributionFamily::Lognormal:
        return 0.5 * std::erfc((std::log(tau) - m_log.mu_log) / (m_log.sigma_log * std::numbers::sqrt2));
    case DistributionFamily::SmootherCosine:
        if (tau >= m_p1) {
            return 0.0;
        }
        return 0.5 * std::cos(std::numbers::pi * tau / m_p1) + 0.5;
    }
    return 0.0;
}

double TransitionDistribution::survival(double tau) const
{
    double g = untruncated_survival(tau);
    return g > m_epsilon ? g : 0.0;
}

double TransitionDistribution::mean_stay_time() const
{
    switch (m_family) {
    case DistributionFamily::Exponential:
    case DistributionFamily::Lognormal:
        return m_p1;
    case DistributionFamily::SmootherCosine:
        break;
    }
    // trapezoid rule on the truncated support
    const int panels = 200000;
    const double h   = m_support / panels;
    double sum       = 0.5 * (survival(0.0) + survival(m_support));
    for (int i = 1; i < panels; ++i) {
        sum += survival(i * h);
    }
    return sum * h;
}

double survival(const TransitionDistribution& d, double tau)
{
    return d.survival(tau);
}

double mean_stay_time(const TransitionDistribution& d)
{
    return d.mean_stay_time();
}

double truncated_support(const TransitionDistribution& d, double epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error("truncated support: epsilon must lie in (0, 1)");
    }
    double hi = d.first_parameter();
    while (d.untruncated_survival(hi) > epsilon) {
        hi *= 2.0;
    }
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (d.untruncated_survival(mid) > epsilon) {
            lo = mid;
        }
        else {
            hi = mid;
        }
    }
    return hi;
}

namespace
{

Index grid_support_steps(const TransitionDistribution& d, double epsilon, double dt)
{
    if (!(dt > 0.0)) {
        throw Error("truncated support: dt must be positive");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error("truncated support: epsilon must lie in (0, 1)");
    }
    auto above = [&](Index k) {
        return d.untruncated_survival(static_cast<double>(k) * dt) > epsilon;
    };
    Index hi = 1;
    while (above(hi)) {
        hi *= 2;
    }
    Index lo = hi / 2; // survival above epsilon at lo (lo = 0 gives 1)
    while (hi - lo > 1) {
        Index mid = lo + (hi - lo) / 2;
        if (above(mid)) {
            lo = mid;
        }
        else {
            hi = mid;
        }
    }
    return hi;
}

} // namespace

double truncated_support(const TransitionDistribution& d, double epsilon, double dt)
{
    return static_cast<double>(grid_support_steps(d, epsilon, dt)) * dt;
}

std::size_t support_steps(const TransitionDistribution& d, double dt)
{
    return static_cast<std::size_t>(grid_support_steps(d, d.epsilon(), dt));
}

std::vector<double> survival_on_grid(const TransitionDistribution& d, double dt)
{
    const std::size_t K = support_steps(d, dt);
    std::vector<double> g(K + 1);
    g[0] = 1.0;
    for (std::size_t k = 1; k < K; ++k) {
        g[k] = std::min(g[k - 1], d.survival(static_cast<double>(k) * dt));
    }
    g[K] = 0.0;
    return g;
}

std::vector<double> backwards_difference_kernel(const TransitionDistribution& d, double dt)
{
    auto g = survival_on_grid(d, dt);
    std::vector<double> kernel(g.size() - 1);
    for (std::size_t i = 0; i < kernel.size(); ++i) {
        kernel[i] = (g[i + 1] - g[i]) / dt;
    }
    return kernel;
}

} // namespace idesecir

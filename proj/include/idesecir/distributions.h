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

#ifndef IDESECIR_DISTRIBUTIONS_H
#define IDESECIR_DISTRIBUTIONS_H

#include <cstddef>
#include <vector>

namespace idesecir
{

inline constexpr double default_epsilon = 1e-10;

enum class DistributionFamily
{
    Exponential,
    Lognormal,
    SmootherCosine
};

struct LognormalParams {
    double mu_log;
    double sigma_log;
};

/**
 * @brief Underlying normal parameters of a lognormal variable with the given mean and standard deviation.
 */
LognormalParams lognormal_underlying_params(double mean, double std);

/**
 * @brief Survival function gamma(tau) of the stay time in a compartment, truncated to zero
 * once it drops to epsilon or below.
 */
class TransitionDistribution
{
public:
    static TransitionDistribution exponential(double mean, double epsilon = default_epsilon);
    static TransitionDistribution lognormal(double mean, double std, double epsilon = default_epsilon);
    /// 0.5 * cos(pi * tau / support) + 0.5 on [0, support]; finite support, intended for tests.
    static TransitionDistribution smoother_cosine(double support, double epsilon = default_epsilon);

    DistributionFamily family() const
    {
        return m_family;
    }
    /// Mean (exponential, lognormal) or support length (smoother cosine).
    double first_parameter() const
    {
        return m_p1;
    }
    /// Standard deviation (lognormal), otherwise 0.
    double second_parameter() const
    {
        return m_p2;
    }
    double epsilon() const
    {
        return m_epsilon;
    }

    double survival(double tau) const;
    double untruncated_survival(double tau) const;
    /// Continuous truncation point: smallest tau with untruncated survival <= epsilon.
    double support() const
    {
        return m_support;
    }
    double mean_stay_time() const;

private:
    TransitionDistribution(DistributionFamily family, double p1, double p2, double epsilon);

    DistributionFamily m_family;
    double m_p1;
    double m_p2;
    double m_epsilon;
    LognormalParams m_log{0.0, 0.0};
    double m_support = 0.0;
};

double survival(const TransitionDistribution& d, double tau);
double mean_stay_time(const TransitionDistribution& d);

/// Smallest tau with survival <= epsilon, by doubling and bisection.
double truncated_support(const TransitionDistribution& d, double epsilon);
/// Smallest multiple of dt with survival <= epsilon.
double truncated_support(const TransitionDistribution& d, double epsilon, double dt);
/// Number of steps K with gamma(t_K) <= epsilon < gamma(t_{K-1}), using d.epsilon().
std::size_t support_steps(const TransitionDistribution& d, double dt);

/**
 * @brief Truncated survival at t_0 .. t_K, K = support_steps(d, dt); the last entry is 0.
 *
 * Monotonicity is enforced at the level of rounding.
 */
std::vector<double> survival_on_grid(const TransitionDistribution& d, double dt);

/**
 * @brief Backwards differences (gamma(t_{i+1}) - gamma(t_i)) / dt for i = 0 .. K-1.
 */
std::vector<double> backwards_difference_kernel(const TransitionDistribution& d, double dt);

} // namespace idesecir

#endif // IDESECIR_DISTRIBUTIONS_H

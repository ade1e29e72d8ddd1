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

#include "idesecir/convolution.h"

#include <gtest/gtest.h>
#include <omp.h>

#include <random>
#include <vector>

using namespace idesecir;
using namespace idesecir::kernels;

namespace
{

std::vector<double> random_vector(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) {
        x = u(rng);
    }
    return v;
}

} // namespace

TEST(TestConvolution, referenceMatchesHandSum)
{
    std::vector<double> w{1.0, 2.0, 3.0};
    std::vector<double> s{10.0, 20.0, 30.0, 40.0};
    // newest = 3: w0*s3 + w1*s2 + w2*s1
    EXPECT_EQ(convolve_reference(w, s, 3), 40.0 + 60.0 + 60.0);
    // window shorter than the kernel
    EXPECT_EQ(convolve_reference(w, s, 0), 10.0);
}

TEST(TestConvolution, parallelMatchesReference)
{
    for (std::size_t n : {1u, 100u, 5000u, 20000u, 70000u}) {
        auto w = random_vector(n, n);
        auto s = random_vector(n + 17, n + 1);
        for (std::size_t newest : {std::size_t{0}, n / 2, n + 16}) {
            const double ref = convolve_reference(w, s, newest);
            const double par = convolve_parallel(w, s, newest);
            EXPECT_NEAR(par, ref, 1e-12 * std::abs(ref) + 1e-300) << "n=" << n << " newest=" << newest;
        }
    }
}

TEST(TestConvolution, parallelIsIndependentOfThreadCount)
{
    auto w          = random_vector(100000, 3);
    auto s          = random_vector(100000, 4);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const double one = convolve_parallel(w, s, s.size() - 1);
    omp_set_num_threads(4);
    const double four = convolve_parallel(w, s, s.size() - 1);
    omp_set_num_threads(saved);
    EXPECT_EQ(one, four);
}

TEST(TestConvolution, backendDispatch)
{
    std::vector<double> w{0.5, 0.25};
    std::vector<double> s{4.0, 8.0};
    EXPECT_EQ(convolve(Backend::Reference, w, s, 1), convolve(Backend::Parallel, w, s, 1));
    EXPECT_GE(max_threads(), 1);
}

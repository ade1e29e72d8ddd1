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
#include "idesecir/core_types.h"

#include <algorithm>
#include <vector>

#include <omp.h>

namespace idesecir::kernels
{

namespace
{

std::size_t term_count(std::span<const double> weights, std::span<const double> series, std::size_t newest)
{
    if (series.empty()) {
        return 0;
    }
    if (newest >= series.size()) {
        throw Error("convolution: newest index beyond series");
    }
    return std::min(weights.size(), newest + 1);
}

double block_sum(const double* w, const double* x_newest, std::size_t begin, std::size_t end)
{
    double s = 0.0;
#pragma omp simd reduction(+ : s)
    for (std::size_t k = begin; k < end; ++k) {
        s += w[k] * x_newest[-static_cast<std::ptrdiff_t>(k)];
    }
    return s;
}

} // namespace

double convolve_reference(std::span<const double> weights, std::span<const double> series, std::size_t newest)
{
    const std::size_t L = term_count(weights, series, newest);
    double s            = 0.0;
    for (std::size_t k = 0; k < L; ++k) {
        s += weights[k] * series[newest - k];
    }
    return s;
}

double convolve_parallel(std::span<const double> weights, std::span<const double> series, std::size_t newest)
{
    const std::size_t L = term_count(weights, series, newest);
    if (L == 0) {
        return 0.0;
    }
    const double* w        = weights.data();
    const double* x_newest = series.data() + newest;
    const std::size_t nb   = (L + block_size - 1) / block_size;
    if (nb == 1) {
        return block_sum(w, x_newest, 0, L);
    }
    thread_local std::vector<double> partials;
    partials.assign(nb, 0.0);
    double* out = partials.data();
    const auto nblocks = static_cast<std::ptrdiff_t>(nb);
#pragma omp parallel for schedule(static) if (L >= parallel_threshold && !omp_in_parallel())
    for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
        auto begin = static_cast<std::size_t>(b) * block_size;
        out[b]     = block_sum(w, x_newest, begin, std::min(L, begin + block_size));
    }
    double s = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
        s += out[b];
    }
    return s;
}

int max_threads()
{
    return omp_get_max_threads();
}

} // namespace idesecir::kernels

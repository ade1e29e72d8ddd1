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

#ifndef IDESECIR_CONVOLUTION_H
#define IDESECIR_CONVOLUTION_H

#include <cstddef>
#include <span>

namespace idesecir::kernels
{

enum class Backend
{
    /// Plain sequential loop, summed in lag order.
    Reference,
    /// Fixed-size blocks summed in parallel and combined in block order.
    Parallel
};

/// Block length of the parallel backend; fixed so that results do not depend on the thread count.
inline constexpr std::size_t block_size = 4096;
/// Below this many terms the parallel backend stays on the calling thread.
inline constexpr std::size_t parallel_threshold = 16384;

/**
 * @brief Truncated causal convolution sum_{k=0}^{L-1} weights[k] * series[newest - k],
 * L = min(weights.size(), newest + 1).
 */
double convolve_reference(std::span<const double> weights, std::span<const double> series, std::size_t newest);
double convolve_parallel(std::span<const double> weights, std::span<const double> series, std::size_t newest);

inline double convolve(Backend backend, std::span<const double> weights, std::span<const double> series,
                       std::size_t newest)
{
    return backend == Backend::Reference ? convolve_reference(weights, series, newest)
                                         : convolve_parallel(weights, series, newest);
}

/// Number of OpenMP threads available to the parallel backend.
int max_threads();

} // namespace idesecir::kernels

#endif // IDESECIR_CONVOLUTION_H

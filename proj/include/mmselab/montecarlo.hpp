// SPDX-License-Identifier: Apache-2.0
//
// mmse-lab: achievable sum rate of MIMO linear-MMSE receivers
// Copyright (C) 2026 The mmse-lab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MMSELAB_MONTECARLO_HPP
#define MMSELAB_MONTECARLO_HPP

#include "mmselab/channels.hpp"
#include "mmselab/rate.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace mmselab
{

struct MonteCarloEstimate
{
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t nsamples = 0;
    std::uint64_t seed = 0;
};

/// gamma_i = 1/[(I + (snr/Nt) H^H H)^{-1}]_ii - 1, one entry per stream.
RealVector sinr_per_stream(const ComplexMatrix& h, double snr);

/// sum_i log2(1 + gamma_i), evaluated as -sum_i log2 of the inverse diagonal.
double sum_rate_realization(const ComplexMatrix& h, double snr);

/// log2 det(I + (snr/Nt) H H^H).
double opt_mi_realization(const ComplexMatrix& h, double snr);

enum class MetricKind
{
    mmse_rate,
    opt_mi,
    opt_mi_reduced,
    dispersion_full,
    dispersion_reduced
};

/// Quantity averaged by mc_estimate. `column` is the 0-based removed
/// transmit column for the reduced kinds.
struct Metric
{
    MetricKind kind = MetricKind::mmse_rate;
    int column = 0;

    /// Accepts mmse_rate, opt_mi, opt_mi_reduced_<i>, dispersion_full and
    /// dispersion_reduced_<i> with a 1-based column index.
    static Metric parse(std::string_view name);
    std::string name() const;
};

/// Sample mean and standard error over `nsamples` seeded draws.
///
/// Reduced metrics use the same draw with column i removed, evaluated at
/// (Nt-1)/Nt * snr with its own Nt-1 normalization. Dispersion metrics
/// return the ratio Nr E[tr T^2] / E[tr T]^2 (T = HH^H or H_i H_i^H) with a
/// delta-method standard error. Results are bit-identical for any worker
/// count. Throws DomainError for nsamples < 100, snr <= 0 or a reduced
/// metric on an Nt = 1 model.
MonteCarloEstimate mc_estimate(const ChannelModel& model, double snr, Metric metric, std::int64_t nsamples, std::uint64_t seed);

/// Mean and standard error of f(H) over draws 0..nsamples-1.
MonteCarloEstimate mc_expectation(const ChannelModel& model, std::int64_t nsamples, std::uint64_t seed,
                                  const std::function<double(const ComplexMatrix&)>& f);

/// Evaluator estimating E[log2 det(I + (snr/Nt) H H^H)] by sampling.
MiEvaluator make_mc_mi_evaluator(std::int64_t nsamples, std::uint64_t seed);

/// Worker threads used for sampling: hardware concurrency, capped by the
/// MMSE_LAB_THREADS environment variable when set.
int worker_count();

/// Draws per reduction block. Fixed so the summation tree never depends on
/// the number of threads.
inline constexpr std::int64_t mc_block_size = 4096;

} // namespace mmselab

#endif

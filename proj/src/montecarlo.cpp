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

#include "mmselab/montecarlo.hpp"
#include "mmselab/errors.hpp"
#include "mmselab/specfun.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mmselab
{

namespace
{

// Running means and co-moments of up to two variables.
struct Moments
{
    double count = 0.0;
    double mean[2] = {0.0, 0.0};
    double m2[2] = {0.0, 0.0};
    double c12 = 0.0;

    void add(const double* x, int dims)
    {
        count += 1.0;
        double delta[2] = {0.0, 0.0};
        for (int d = 0; d < dims; ++d)
        {
            delta[d] = x[d] - mean[d];
            mean[d] += delta[d] / count;
        }
        for (int d = 0; d < dims; ++d)
            m2[d] += delta[d] * (x[d] - mean[d]);
        if (dims == 2)
            c12 += delta[0] * (x[1] - mean[1]);
    }

    // Chan et al. pairwise update.
    void merge(const Moments& o, int dims)
    {
        if (o.count == 0.0)
            return;
        const double n = count + o.count;
        double delta[2] = {0.0, 0.0};
        for (int d = 0; d < dims; ++d)
            delta[d] = o.mean[d] - mean[d];
        const double w = count * o.count / n;
        for (int d = 0; d < dims; ++d)
        {
            m2[d] += o.m2[d] + delta[d] * delta[d] * w;
            mean[d] += delta[d] * o.count / n;
        }
        if (dims == 2)
            c12 += o.c12 + delta[0] * delta[1] * w;
        count = n;
    }
};

using SampleFn = std::function<void(const ComplexMatrix&, double*)>;

Moments run_blocks(const ChannelModel& model, std::int64_t nsamples, std::uint64_t seed, int dims, const SampleFn& f)
{
    const std::int64_t nblocks = (nsamples + mc_block_size - 1) / mc_block_size;
    std::vector<Moments> blocks(static_cast<std::size_t>(nblocks));
    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;

    auto work = [&]() {
        try
        {
            double x[2];
            for (std::int64_t b = next++; b < nblocks; b = next++)
            {
                Moments acc;
                const std::int64_t stop = std::min(nsamples, (b + 1) * mc_block_size);
                for (std::int64_t i = b * mc_block_size; i < stop; ++i)
                {
                    f(sample_channel(model, seed, static_cast<std::uint64_t>(i)), x);
                    acc.add(x, dims);
                }
                blocks[static_cast<std::size_t>(b)] = acc;
            }
        }
        catch (...)
        {
            std::lock_guard<std::mutex> lock(failure_lock);
            if (!failure)
                failure = std::current_exception();
            next = nblocks;
        }
    };

    const int workers = static_cast<int>(std::min<std::int64_t>(worker_count(), nblocks));
    if (workers <= 1)
        work();
    else
    {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t)
            pool.emplace_back(work);
        for (auto& th : pool)
            th.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    Moments total;
    for (const Moments& b : blocks)
        total.merge(b, dims);
    return total;
}

void check_snr(double snr)
{
    if (!(snr > 0.0) || !std::isfinite(snr))
        throw DomainError("snr must be positive and finite");
}

ComplexMatrix gram_plus_identity(const ComplexMatrix& h, double scale)
{
    ComplexMatrix z = scale * (h.adjoint() * h);
    z.diagonal().array() += 1.0;
    return z;
}

} // namespace

RealVector sinr_per_stream(const ComplexMatrix& h, double snr)
{
    check_snr(snr);
    const RealVector d = matkit::diag_of_inverse(gram_plus_identity(h, snr / static_cast<double>(h.cols())));
    return (1.0 / d.array() - 1.0).max(0.0).matrix();
}

double sum_rate_realization(const ComplexMatrix& h, double snr)
{
    check_snr(snr);
    const RealVector d = matkit::diag_of_inverse(gram_plus_identity(h, snr / static_cast<double>(h.cols())));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < d.size(); ++i)
        acc -= std::log(d(i));
    return acc * specfun::log2e;
}

double opt_mi_realization(const ComplexMatrix& h, double snr)
{
    check_snr(snr);
    return matkit::log_det_hpd(gram_plus_identity(h, snr / static_cast<double>(h.cols()))) * specfun::log2e;
}

Metric Metric::parse(std::string_view name)
{
    auto column_suffix = [&](std::string_view prefix) -> int {
        const std::string tail(name.substr(prefix.size()));
        if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
            throw DomainError("bad column index in metric '" + std::string(name) + "'");
        const int col = std::stoi(tail);
        if (col < 1)
            throw DomainError("metric column indices are 1-based");
        return col - 1;
    };
    if (name == "mmse_rate")
        return {MetricKind::mmse_rate, 0};
    if (name == "opt_mi")
        return {MetricKind::opt_mi, 0};
    if (name == "dispersion_full")
        return {MetricKind::dispersion_full, 0};
    if (name.starts_with("opt_mi_reduced_"))
        return {MetricKind::opt_mi_reduced, column_suffix("opt_mi_reduced_")};
    if (name.starts_with("dispersion_reduced_"))
        return {MetricKind::dispersion_reduced, column_suffix("dispersion_reduced_")};
    throw DomainError("unknown metric '" + std::string(name) + "'");
}

std::string Metric::name() const
{
    switch (kind)
    {
    case MetricKind::mmse_rate:
        return "mmse_rate";
    case MetricKind::opt_mi:
        return "opt_mi";
    case MetricKind::opt_mi_reduced:
        return "opt_mi_reduced_" + std::to_string(column + 1);
    case MetricKind::dispersion_full:
        return "dispersion_full";
    case MetricKind::dispersion_reduced:
        return "dispersion_reduced_" + std::to_string(column + 1);
    }
    return "unknown";
}

int worker_count()
{
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1)
        n = 1;
    if (const char* cap = std::getenv("MMSE_LAB_THREADS"))
    {
        char* end = nullptr;
        const long v = std::strtol(cap, &end, 10);
        if (end != cap && *end == '\0' && v >= 1)
            n = static_cast<int>(std::min<long>(v, 1024));
    }
    return n;
}

MonteCarloEstimate mc_expectation(const ChannelModel& model, std::int64_t nsamples, std::uint64_t seed,
                                  const std::function<double(const ComplexMatrix&)>& f)
{
    if (nsamples < 2)
        throw DomainError("mc_expectation needs at least 2 samples");
    const Moments m = run_blocks(model, nsamples, seed, 1, [&](const ComplexMatrix& h, double* x) { x[0] = f(h); });
    MonteCarloEstimate out;
    out.mean = m.mean[0];
    out.std_error = std::sqrt(m.m2[0] / (m.count - 1.0) / m.count);
    out.nsamples = nsamples;
    out.seed = seed;
    return out;
}

MonteCarloEstimate mc_estimate(const ChannelModel& model, double snr, Metric metric, std::int64_t nsamples, std::uint64_t seed)
{
    if (nsamples < 100)
        throw DomainError("mc_estimate needs at least 100 samples");
    const int nt = model.config().nt;
    const bool reduced = metric.kind == MetricKind::opt_mi_reduced || metric.kind == MetricKind::dispersion_reduced;
    if (reduced)
    {
        if (nt < 2)
            throw DomainError("reduced metrics need nt >= 2");
        if (metric.column < 0 || metric.column >= nt)
            throw DomainError("metric column out of range");
    }
    const bool dispersion = metric.kind == MetricKind::dispersion_full || metric.kind == MetricKind::dispersion_reduced;
    if (!dispersion)
        check_snr(snr);

    switch (metric.kind)
    {
    case MetricKind::mmse_rate:
        return mc_expectation(model, nsamples, seed, [snr](const ComplexMatrix& h) { return sum_rate_realization(h, snr); });
    case MetricKind::opt_mi:
        return mc_expectation(model, nsamples, seed, [snr](const ComplexMatrix& h) { return opt_mi_realization(h, snr); });
    case MetricKind::opt_mi_reduced:
    {
        const double snr_reduced = snr * (nt - 1) / nt;
        const int col = metric.column;
        return mc_expectation(model, nsamples, seed, [snr_reduced, col](const ComplexMatrix& h) {
            return opt_mi_realization(matkit::remove_column(h, col), snr_reduced);
        });
    }
    case MetricKind::dispersion_full:
    case MetricKind::dispersion_reduced:
        break;
    }

    const int col = metric.kind == MetricKind::dispersion_reduced ? metric.column : -1;
    const Moments m = run_blocks(model, nsamples, seed, 2, [col](const ComplexMatrix& h, double* x) {
        const ComplexMatrix g = col < 0 ? h : matkit::remove_column(h, col);
        const ComplexMatrix theta = g * g.adjoint();
        x[0] = theta.cwiseAbs2().sum(); // tr(T^2), T Hermitian
        x[1] = theta.trace().real();
    });
    const double nr = model.config().nr;
    const double a = m.mean[0];
    const double b = m.mean[1];
    const double n = m.count;
    const double var_a = m.m2[0] / (n - 1.0);
    const double var_b = m.m2[1] / (n - 1.0);
    const double cov = m.c12 / (n - 1.0);
    const double ga = nr / (b * b);
    const double gb = -2.0 * nr * a / (b * b * b);
    const double var = std::max(0.0, ga * ga * var_a + gb * gb * var_b + 2.0 * ga * gb * cov) / n;

    MonteCarloEstimate out;
    out.mean = nr * a / (b * b);
    out.std_error = std::sqrt(var);
    out.nsamples = nsamples;
    out.seed = seed;
    return out;
}

MiEvaluator make_mc_mi_evaluator(std::int64_t nsamples, std::uint64_t seed)
{
    return [nsamples, seed](const ChannelModel& model, double snr) {
        const MonteCarloEstimate e = mc_estimate(model, snr, Metric{MetricKind::opt_mi, 0}, nsamples, seed);
        return RateEstimate{e.mean, e.std_error};
    };
}

} // namespace mmselab

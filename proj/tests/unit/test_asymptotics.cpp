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

#include "mmselab/asymptotics.hpp"
#include "mmselab/closedform.hpp"
#include "mmselab/errors.hpp"
#include "mmselab/montecarlo.hpp"
#include "mmselab/specfun.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace mmselab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

constexpr double log2e = specfun::log2e;
constexpr double gamma_e = specfun::euler_gamma;

double harmonic_range(int lo, int hi)
{
    double s = 0.0;
    for (int l = lo; l <= hi; ++l)
        s += 1.0 / l;
    return s;
}

} // namespace

TEST_CASE("i.i.d. high-SNR offsets", "[asymptotics]")
{
    for (int n : {1, 2, 3, 4, 8})
        CHECK_THAT(iid_offset_mmse({n, n}), WithinRel(std::log2(n * std::exp(gamma_e)), 1e-13));
    for (auto [nr, nt] : {std::pair{4, 2}, {5, 3}, {8, 2}, {6, 6}})
    {
        const AntennaConfig c{nr, nt};
        CHECK_THAT(iid_offset_mmse(c), WithinRel(std::log2(nt) - log2e * (harmonic_range(1, nr - nt) - gamma_e), 1e-13));
        const double opt = std::log2(nt) +
                           log2e * (gamma_e - harmonic_range(1, nr - nt) -
                                    static_cast<double>(nr) / nt * harmonic_range(nr - nt + 1, nr) + 1.0);
        CHECK_THAT(iid_offset_opt(c), WithinAbs(opt, 1e-13));
        CHECK_THAT(iid_excess_offset(c),
                   WithinAbs(log2e * (static_cast<double>(nr) / nt * harmonic_range(nr - nt + 1, nr) - 1.0), 1e-13));
        CHECK_THAT(iid_excess_offset(c), WithinAbs(iid_offset_mmse(c) - iid_offset_opt(c), 1e-13));
    }
    CHECK_THAT(iid_excess_offset({2, 2}), WithinRel(log2e / 2.0, 1e-14));
    CHECK_THAT(iid_excess_offset({4, 4}), WithinRel(log2e * (0.5 + 1.0 / 3 + 0.25), 1e-14));
    // Optimal offset is defined for nr < nt as well, with the roles swapped.
    CHECK_THAT(iid_offset_opt({2, 4}),
               WithinAbs(std::log2(4.0) - log2e * (specfun::digamma_int(4) + specfun::digamma_int(3)) / 2.0, 1e-13));
}

TEST_CASE("high_snr_params", "[asymptotics]")
{
    const HighSnrAffine p = high_snr_params(ChannelModel::iid({4, 2}), Receiver::mmse);
    CHECK(p.slope == 2.0);
    CHECK_THAT(p.offset, WithinAbs(iid_offset_mmse({4, 2}), 1e-12));
    CHECK_THAT(p.excess, WithinAbs(iid_excess_offset({4, 2}), 1e-12));
    const HighSnrAffine o = high_snr_params(ChannelModel::iid({4, 2}), Receiver::opt);
    CHECK_THAT(o.offset, WithinAbs(iid_offset_opt({4, 2}), 1e-12));

    const HighSnrAffine under = high_snr_params(ChannelModel::iid({2, 3}), Receiver::mmse);
    CHECK(under.slope == 0.0);
    CHECK(!under.finite_offset());
    CHECK(std::isinf(under.excess));
    CHECK_THROWS_AS(affine_rate(under, 10.0), DomainError);
    CHECK(high_snr_params(ChannelModel::iid({2, 3}), Receiver::opt).slope == 2.0);

    CHECK_THAT(affine_rate(p, 1000.0), WithinRel(2.0 * (std::log2(1000.0) - p.offset), 1e-14));
}

TEST_CASE("offset decomposition for separable correlation", "[asymptotics]")
{
    const CorrelationMatrix r = build_exp_correlation(5, 0.7);
    const CorrelationMatrix s = build_exp_correlation(3, 0.5);
    const ChannelModel m = ChannelModel::separable(r, s);
    const HighSnrAffine p = high_snr_params(m, Receiver::mmse);
    CHECK_THAT(p.offset, WithinAbs(iid_offset_mmse({5, 3}) + offset_shift_tx(s) + offset_shift_rx(r, 3), 1e-11));
    CHECK_THAT(p.excess, WithinAbs(-log2e * 2.0 / 3.0 + excess_shift_tx(s) + excess_shift_rx(r, 3), 1e-11));
    CHECK_THAT(excess_shift_tx(CorrelationMatrix::identity(3)), WithinAbs(0.0, 1e-13));
    CHECK_THAT(offset_shift_tx(CorrelationMatrix::identity(3)), WithinAbs(0.0, 1e-13));
    CHECK_THAT(offset_shift_rx(CorrelationMatrix::identity(5), 3), WithinAbs(0.0, 1e-12));

    // Transmit correlation never helps: f >= 0 and g1 >= 0, growing with rho.
    double prev_f = 0.0;
    for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9})
    {
        const CorrelationMatrix c = build_exp_correlation(4, rho);
        const double f = offset_shift_tx(c);
        CHECK(f > prev_f);
        prev_f = f;
        CHECK(excess_shift_tx(c) > 0.0);
        CHECK(offset_shift_rx(c, 4) > 0.0);
    }
}

TEST_CASE("expected log-determinant matches simulation", "[asymptotics]")
{
    const std::vector<ChannelModel> models = {
        ChannelModel::iid({4, 2}),
        ChannelModel::separable(build_exp_correlation(4, 0.6), build_exp_correlation(3, 0.4)),
        ChannelModel::rician({3, 2}, 2.0, 0.4, 0.1),
        ChannelModel::rician({2, 3}, 1.0),
    };
    for (const ChannelModel& m : models)
    {
        const bool tall = m.config().nr >= m.config().nt;
        const MonteCarloEstimate e = mc_expectation(m, 100000, 21, [tall](const ComplexMatrix& h) {
            const ComplexMatrix g = tall ? ComplexMatrix(h.adjoint() * h) : ComplexMatrix(h * h.adjoint());
            return matkit::log_det_hpd(g) * log2e;
        });
        INFO(m.describe());
        CHECK(std::abs(expected_log_det(m) - e.mean) < 3.5 * e.std_error);
    }
}

TEST_CASE("Rician offset shifts", "[asymptotics]")
{
    const AntennaConfig c{2, 2};
    CHECK_THAT(rician_offset_shift(c, 0.0), WithinAbs(0.0, 1e-13));
    CHECK_THAT(rician_excess_shift(c, 0.0), WithinAbs(0.0, 1e-13));
    double h1 = 0.0;
    double h2 = 0.0;
    for (double k = 0.5; k <= 10.0; k += 0.5)
    {
        const double a = rician_offset_shift(c, k);
        const double b = rician_excess_shift(c, k);
        CHECK(a > h1);
        CHECK(b > h2);
        h1 = a;
        h2 = b;
    }
    const HighSnrAffine p = high_snr_params(ChannelModel::rician(c, 1.0, 0.7, -0.2), Receiver::mmse);
    CHECK_THAT(p.offset, WithinAbs(iid_offset_mmse(c) + rician_offset_shift(c, 1.0), 1e-11));
    CHECK_THAT(p.excess, WithinAbs(iid_excess_offset(c) + rician_excess_shift(c, 1.0), 1e-11));
    const HighSnrAffine q = high_snr_params(ChannelModel::rician(c, 1.0, 0.0, 0.0), Receiver::mmse);
    CHECK(std::abs(p.offset - q.offset) <= 1e-12);
}

TEST_CASE("large-system limits", "[asymptotics]")
{
    const LargeSystemLimits h = large_system_limits(0.5);
    CHECK_THAT(h.offset, WithinAbs(0.0, 1e-14));
    CHECK_THAT(h.excess, WithinAbs(2.0 - log2e, 1e-14));
    CHECK_THAT(h.s0_ratio, WithinRel(0.75, 1e-14));
    const LargeSystemLimits one = large_system_limits(1.0);
    CHECK(std::isinf(one.offset));
    CHECK_THAT(one.s0_ratio, WithinRel(2.0 / 3.0, 1e-14));
    CHECK_THROWS_AS(large_system_limits(0.0), DomainError);
    CHECK_THROWS_AS(large_system_limits(1.5), DomainError);
}

TEST_CASE("low-SNR parameters", "[asymptotics]")
{
    for (auto [nr, nt] : {std::pair{3, 3}, {4, 2}, {2, 4}, {5, 1}})
    {
        const ChannelModel m = ChannelModel::iid({nr, nt});
        const LowSnrParams p = low_snr_params(m);
        CHECK_THAT(p.ebno_min, WithinRel(specfun::ln2 / nr, 1e-14));
        CHECK_THAT(p.s0, WithinRel(2.0 * nr * nt / (2.0 * nt + nr - 1.0), 1e-12));
        CHECK_THAT(p.s0_opt, WithinRel(2.0 * nr * nt / (nt + nr), 1e-12));
        CHECK_THAT(p.ratio, WithinRel((nt + nr) / (2.0 * nt + nr - 1.0), 1e-12));
        CHECK(p.received_factor == nr);
        CHECK_THAT(wideband_slope_mmse_explicit(m), WithinRel(p.s0, 1e-12));
        CHECK_THAT(wideband_slope_opt_explicit(m), WithinRel(p.s0_opt, 1e-12));
        const DispersionSet d = dispersion_closed_form(m);
        CHECK_THAT(d.zeta_full, WithinRel((nr + nt) / static_cast<double>(nt), 1e-13));
        if (nt > 1)
            CHECK_THAT(d.zeta_reduced.at(0), WithinRel((nr + nt - 1.0) / (nt - 1.0), 1e-13));
    }
    for (const ChannelModel& m : {ChannelModel::separable(build_exp_correlation(4, 0.6), build_exp_correlation(3, 0.4)),
                                  ChannelModel::rician({3, 3}, 2.0, 0.2, 0.9)})
    {
        INFO(m.describe());
        const LowSnrParams p = low_snr_params(m);
        CHECK_THAT(wideband_slope_mmse_explicit(m), WithinRel(p.s0, 1e-10));
        CHECK_THAT(wideband_slope_opt_explicit(m), WithinRel(p.s0_opt, 1e-10));
        CHECK(p.s0 < low_snr_params(ChannelModel::iid(m.config())).s0);
    }
}

TEST_CASE("dispersion matches simulation", "[asymptotics]")
{
    const ChannelModel m = ChannelModel::separable(build_exp_correlation(3, 0.6), build_exp_correlation(3, 0.4));
    const DispersionSet d = dispersion_closed_form(m);
    const MonteCarloEstimate full = mc_estimate(m, 1.0, Metric{MetricKind::dispersion_full, 0}, 100000, 8);
    CHECK(std::abs(full.mean - d.zeta_full) < 3.5 * full.std_error);
    const MonteCarloEstimate red = mc_estimate(m, 1.0, Metric{MetricKind::dispersion_reduced, 1}, 100000, 8);
    CHECK(std::abs(red.mean - d.zeta_reduced.at(1)) < 3.5 * red.std_error);
}

TEST_CASE("rate approximations and Eb/N0 inversion", "[asymptotics]")
{
    const ChannelModel m = ChannelModel::iid({3, 3});
    const LowSnrParams p = low_snr_params(m);
    CHECK(wideband_rate(p, p.ebno_min) == 0.0);
    CHECK_THAT(wideband_rate(p, 2.0 * p.ebno_min), WithinRel(p.s0, 1e-14));
    CHECK_THAT(wideband_rate(p, 2.0 * p.ebno_min, Receiver::opt), WithinRel(p.s0_opt, 1e-14));
    CHECK_THROWS_AS(wideband_rate(p, 0.5 * p.ebno_min), DomainError);

    auto rate = [&](double snr) { return closed_form_sum_rate(m, snr); };
    for (double target : {1.05 * p.ebno_min, 2.0 * p.ebno_min, 10.0 * p.ebno_min})
    {
        const double snr = solve_snr_for_ebno(rate, target);
        CHECK_THAT(snr / rate(snr), WithinRel(target, 1e-8));
    }
    CHECK_THROWS_AS(solve_snr_for_ebno(rate, 0.9 * p.ebno_min), NumericalError);
}

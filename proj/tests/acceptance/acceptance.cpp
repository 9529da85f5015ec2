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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include "mmselab/asymptotics.hpp"
#include "mmselab/cli.hpp"
#include "mmselab/closedform.hpp"
#include "mmselab/montecarlo.hpp"
#include "mmselab/specfun.hpp"
#include "mmselab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace mmselab;

namespace
{

constexpr std::int64_t mc_samples = 100000;
constexpr double log2e = specfun::log2e;

struct Outcome
{
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok)
        {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double db(double x) { return std::pow(10.0, x / 10.0); }

// Offset of an i.i.d. channel written out from harmonic sums, Nr >= Nt.
double iid_offset_formula(int nr, int nt)
{
    double h = 0.0;
    for (int l = 1; l <= nr - nt; ++l)
        h += 1.0 / l;
    return std::log2(static_cast<double>(nt)) - log2e * (h - specfun::euler_gamma);
}

// Closed form against MC on a grid: worst |diff| / (3 se).
double closed_vs_mc(const ChannelModel& m, const std::vector<double>& grid_db, std::uint64_t seed)
{
    double worst = 0.0;
    for (double d : grid_db)
    {
        const double exact = closed_form_sum_rate(m, db(d));
        const MonteCarloEstimate e = mc_estimate(m, db(d), Metric{}, mc_samples, seed);
        worst = std::max(worst, std::abs(exact - e.mean) / (3.0 * e.std_error));
    }
    return worst;
}

void criterion1(Outcome& o)
{
    const std::vector<ChannelModel> models = {
        ChannelModel::iid({4, 4}),
        ChannelModel::iid({3, 5}),
        ChannelModel::separable(build_exp_correlation(4, 0.7), build_exp_correlation(3, 0.5)),
        ChannelModel::separable(build_exp_correlation(2, 0.9), build_exp_correlation(4, 0.95)),
        ChannelModel::rician({4, 3}, 2.0, 0.3, -0.7),
        ChannelModel::rician({2, 4}, 20.0, 1.1, 0.4),
    };
    constexpr int realizations = 10000;
    double worst = 0.0;
    for (int t = 0; t < realizations; ++t)
    {
        const ChannelModel& m = models[t % models.size()];
        const ComplexMatrix h = sample_channel(m, 2024, static_cast<std::uint64_t>(t));
        for (double snr : {0.1, 1.0, 10.0, 100.0})
            worst = std::max(worst, theorem1_identity_check(h, snr));
    }
    o.detail << "realizations=" << realizations << " max_residual=" << worst;
    o.require(worst < 1e-9, "max residual < 1e-9");
}

void criterion2(Outcome& o)
{
    const std::vector<double> grid = cli::parse_range("0:5:30");
    for (int n : {2, 4})
    {
        const ChannelModel m = ChannelModel::iid({n, n});
        const double z = closed_vs_mc(m, grid, 100 + n);
        const HighSnrAffine p = high_snr_params(m, Receiver::mmse);
        const double offset_ref = std::log2(n * std::exp(specfun::euler_gamma));
        const double gap = std::abs(affine_rate(p, db(30.0)) - closed_form_sum_rate(m, db(30.0)));
        o.detail << " n=" << n << ": worst|closed-mc|/3se=" << z << " affine_gap_30dB=" << gap;
        o.require(z <= 1.0, "closed vs MC within 3 stderr, n=" + std::to_string(n));
        o.require(std::abs(p.offset - offset_ref) < 1e-12, "offset equals log2(n e^gamma)");
        o.require(gap < 0.1, "affine within 0.1 bit at 30 dB, n=" + std::to_string(n));
    }
}

void criterion3(Outcome& o)
{
    const std::vector<double> grid = cli::parse_range("0:5:30");
    const ChannelModel m5 = ChannelModel::separable(CorrelationMatrix::identity(5), build_exp_correlation(3, 0.5));
    const ChannelModel m9 = ChannelModel::separable(CorrelationMatrix::identity(5), build_exp_correlation(3, 0.9));
    const double z5 = closed_vs_mc(m5, grid, 31);
    const double z9 = closed_vs_mc(m9, grid, 32);
    bool ordered = true;
    for (double d : grid)
        if (d >= 10.0)
            ordered = ordered && closed_form_sum_rate(m9, db(d)) < closed_form_sum_rate(m5, db(d));
    o.detail << " rho=0.5 worst|closed-mc|/3se=" << z5 << " rho=0.9 worst|closed-mc|/3se=" << z9
             << " rate(0.9)<rate(0.5) for snr>=10dB: " << (ordered ? "yes" : "no");
    o.require(z5 <= 1.0 && z9 <= 1.0, "closed vs MC within 3 stderr");
    o.require(ordered, "stronger correlation lowers the rate");
}

void criterion4(Outcome& o)
{
    const ChannelModel m = ChannelModel::iid({3, 3});
    const LowSnrFit mmse = fit_low_snr([&](double snr) { return closed_form_sum_rate(m, snr); });
    const LowSnrFit opt = fit_low_snr([](double snr) { return iid_opt_mi(3, 3, snr); });
    const double ebno_ref = specfun::ln2 / 3.0;
    const double e_mmse = std::abs(mmse.ebno_min / ebno_ref - 1.0);
    const double e_opt = std::abs(opt.ebno_min / ebno_ref - 1.0);
    const double e_s0 = std::abs(mmse.s0 / 2.25 - 1.0);
    const double ratio = mmse.s0 / opt.s0;
    const double e_ratio = std::abs(ratio / (6.0 / 8.0) - 1.0);
    o.detail << " ebno_min(mmse)=" << mmse.ebno_min << " ebno_min(opt)=" << opt.ebno_min << " S0=" << mmse.s0
             << " S0_opt=" << opt.s0 << " ratio=" << ratio;
    o.require(e_mmse < 0.01, "MMSE Eb/N0_min within 1%");
    o.require(e_opt < 0.01, "optimal Eb/N0_min within 1%");
    o.require(e_s0 < 0.02, "S0 within 2% of 2.25");
    o.require(e_ratio < 0.02, "S0 ratio within 2% of 6/8");
}

void criterion5(Outcome& o)
{
    for (auto [nr, nt] : {std::pair{2, 2}, {4, 2}, {4, 4}})
    {
        const ChannelModel m = ChannelModel::iid({nr, nt});
        const HighSnrFit f = fit_high_snr([&](double snr) { return closed_form_sum_rate(m, snr); });
        const double l_ref = iid_offset_formula(nr, nt);
        o.detail << " (" << nr << "," << nt << "): slope=" << f.slope << " L=" << f.offset << " ref=" << l_ref;
        o.require(std::abs(f.slope - nt) <= 0.01, "slope equals Nt");
        o.require(std::abs(f.offset - l_ref) <= 0.02, "offset within 0.02");
    }
    const ChannelModel m = ChannelModel::iid({2, 2});
    const HighSnrFit fm = fit_high_snr([&](double snr) { return closed_form_sum_rate(m, snr); });
    const HighSnrFit fo = fit_high_snr([](double snr) { return iid_opt_mi(2, 2, snr); });
    const double excess = fm.offset - fo.offset;
    o.detail << " excess(2,2)=" << excess;
    o.require(std::abs(excess - log2e / 2.0) <= 0.02, "excess offset within 0.02 of log2e/2");
}

void criterion6(Outcome& o)
{
    double prev = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    double last = 0.0;
    for (int nt : {4, 8, 16})
    {
        const double l = high_snr_params(ChannelModel::iid({2 * nt, nt}), Receiver::mmse).offset;
        o.detail << " L(" << nt << "," << 2 * nt << ")=" << l;
        decreasing = decreasing && std::abs(l) < prev;
        prev = std::abs(l);
        last = l;
    }
    const double ratio = low_snr_params(ChannelModel::iid({32, 32})).ratio;
    o.detail << " S0_ratio(n=32)=" << ratio;
    o.require(decreasing, "|L| decreasing along the ladder");
    o.require(std::abs(last) < 0.05, "final |L| < 0.05");
    o.require(std::abs(ratio - 2.0 / 3.0) <= 0.02, "S0 ratio within 0.02 of 2/3");
}

void criterion7(Outcome& o)
{
    double closed_gap = 0.0;
    double mc_z = 0.0;
    for (auto [nr, nt] : {std::pair{2, 2}, {4, 2}, {3, 3}})
    {
        const ChannelModel iid = ChannelModel::iid({nr, nt});
        const ChannelModel ric = ChannelModel::rician({nr, nt}, 0.0, 0.8, -0.3);
        for (double snr : {0.1, 1.0, 10.0, 100.0})
            closed_gap = std::max(closed_gap, std::abs(closed_form_sum_rate(ric, snr) - closed_form_sum_rate(iid, snr)));
        for (Receiver rx : {Receiver::mmse, Receiver::opt})
        {
            const HighSnrAffine a = high_snr_params(ric, rx);
            const HighSnrAffine b = high_snr_params(iid, rx);
            closed_gap = std::max({closed_gap, std::abs(a.offset - b.offset), std::abs(a.excess - b.excess)});
        }
        const LowSnrParams a = low_snr_params(ric);
        const LowSnrParams b = low_snr_params(iid);
        closed_gap = std::max({closed_gap, std::abs(a.s0 - b.s0), std::abs(a.s0_opt - b.s0_opt),
                               std::abs(a.ebno_min - b.ebno_min), std::abs(expected_log_det(ric) - expected_log_det(iid))});
        const MonteCarloEstimate e = mc_estimate(ric, 10.0, Metric{}, mc_samples, 70 + nr);
        mc_z = std::max(mc_z, std::abs(e.mean - closed_form_sum_rate(iid, 10.0)) / (3.0 * e.std_error));
    }
    o.detail << " K=0 vs iid: max_gap=" << closed_gap << " worst|mc-iid|/3se=" << mc_z;
    o.require(closed_gap <= 1e-9, "K=0 equals i.i.d. in closed and asymptotic engines");
    o.require(mc_z <= 1.0, "K=0 MC equals i.i.d. within 3 stderr");

    bool monotone = true;
    double h1 = -1.0;
    double h2 = -1.0;
    for (double k : cli::parse_range("0:0.5:10"))
    {
        const double a = rician_offset_shift({2, 2}, k);
        const double b = rician_excess_shift({2, 2}, k);
        monotone = monotone && a > h1 && b > h2;
        h1 = a;
        h2 = b;
    }
    o.detail << " h1(10)=" << h1 << " h2(10)=" << h2 << " monotone=" << (monotone ? "yes" : "no");
    o.require(monotone, "h1 and h2 increasing in K");

    double spread = 0.0;
    auto track = [&spread](double a, double b) {
        spread = std::max(spread, std::abs(a - b) / std::max(1.0, std::abs(a)));
    };
    const ChannelModel base = ChannelModel::rician({3, 2}, 2.0, 0.0, 0.0);
    for (auto [tr, tt] : {std::pair{0.4, -1.2}, {1.5, 0.7}, {-2.9, 3.0}})
    {
        const ChannelModel m = ChannelModel::rician({3, 2}, 2.0, tr, tt);
        for (Receiver rx : {Receiver::mmse, Receiver::opt})
        {
            track(high_snr_params(base, rx).offset, high_snr_params(m, rx).offset);
            track(high_snr_params(base, rx).excess, high_snr_params(m, rx).excess);
        }
        track(low_snr_params(base).s0, low_snr_params(m).s0);
        track(low_snr_params(base).s0_opt, low_snr_params(m).s0_opt);
        track(expected_log_det(base), expected_log_det(m));
        for (MetricKind k : {MetricKind::mmse_rate, MetricKind::opt_mi})
        {
            const MonteCarloEstimate a = mc_estimate(base, 10.0, Metric{k, 0}, 20000, 5);
            const MonteCarloEstimate b = mc_estimate(m, 10.0, Metric{k, 0}, 20000, 5);
            track(a.mean, b.mean);
            track(a.std_error, b.std_error);
        }
    }
    o.detail << " angle_spread=" << spread;
    o.require(spread <= 1e-12, "invariant to steering angles");
}

void criterion8(Outcome& o)
{
    const MiEvaluator exact = make_exact_mi_evaluator();
    const MiEvaluator quad = make_quadrature_mi_evaluator();
    double closed_quad = 0.0;
    double mc_z = 0.0;
    for (auto [nr, nt] : {std::pair{4, 2}, {2, 4}})
        for (bool rx_side : {true, false})
        {
            const ChannelModel m =
                rx_side ? ChannelModel::separable(build_exp_correlation(nr, 0.5), CorrelationMatrix::identity(nt))
                        : ChannelModel::separable(CorrelationMatrix::identity(nr), build_exp_correlation(nt, 0.5));
            for (double snr : {1.0, 10.0})
            {
                const double c = exact(m, snr).value;
                const double q = quad(m, snr).value;
                const MonteCarloEstimate e = mc_estimate(m, snr, Metric{MetricKind::opt_mi, 0}, mc_samples, 80);
                closed_quad = std::max(closed_quad, std::abs(c - q));
                mc_z = std::max({mc_z, std::abs(c - e.mean) / (3.0 * e.std_error), std::abs(q - e.mean) / (3.0 * e.std_error)});
            }
        }
    o.detail << " max|closed-quad|=" << closed_quad << " worst|mc-x|/3se=" << mc_z;
    o.require(closed_quad <= 1e-6, "closed vs quadrature within 1e-6");
    o.require(mc_z <= 1.0, "MC within 3 stderr of both");
}

void criterion9(Outcome& o)
{
    const cli::SuiteReport r = cli::specfun_suite();
    for (const cli::CheckCase& c : r.cases)
    {
        o.detail << " " << c.name << "=" << c.residual << "/" << c.tolerance;
        o.require(c.pass, c.name);
    }
}

} // namespace

int main()
{
    struct Criterion
    {
        int id;
        const char* title;
        double budget_s;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "per-stream rate identity", 30.0, criterion1},
        {2, "i.i.d. sweep: closed vs MC, affine at 30 dB", 120.0, criterion2},
        {3, "transmit-correlated sweep: closed vs MC, ordering", 180.0, criterion3},
        {4, "low-SNR fits", 0.0, criterion4},
        {5, "high-SNR fits", 0.0, criterion5},
        {6, "large-system trend", 0.0, criterion6},
        {7, "Rician properties", 0.0, criterion7},
        {8, "semi-correlated MI: closed, quadrature, MC", 0.0, criterion8},
        {9, "special-function suite", 5.0, criterion9},
    };

    int failures = 0;
    for (const Criterion& c : criteria)
    {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try
        {
            c.run(o);
        }
        catch (const std::exception& e)
        {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0.0)
            o.require(secs < c.budget_s, "runtime budget");
        failures += o.pass ? 0 : 1;
        std::printf("criterion %d: %s  %s (%.2fs)%s\n", c.id, o.pass ? "PASS" : "FAIL", c.title, secs,
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

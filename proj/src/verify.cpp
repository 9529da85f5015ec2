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

#include "mmselab/verify.hpp"
#include "mmselab/errors.hpp"
#include "mmselab/montecarlo.hpp"
#include "mmselab/specfun.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/laguerre.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace mmselab
{

namespace
{

constexpr double mass_tolerance = 1e-8;

// Geometric breakpoints from lo up to hi, starting at 0.
std::vector<double> breakpoints(double lo, double hi)
{
    std::vector<double> pts{0.0};
    for (double x = lo; x < hi; x *= 2.0)
        pts.push_back(x);
    pts.push_back(hi);
    return pts;
}

template <class F>
double integrate_pieces(const F& f, const std::vector<double>& pts)
{
    using boost::math::quadrature::gauss_kronrod;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    {
        double err = 0.0;
        // For q > p the density is a difference of near-equal determinants;
        // a tighter target only chases that rounding noise.
        const double v = gauss_kronrod<double, 61>::integrate(f, pts[i], pts[i + 1], 10, 1e-11, &err);
        if (!std::isfinite(v))
            throw NumericalError("quadrature produced a non-finite value");
        acc += v;
    }
    return acc;
}

// Integrates the density and the MI integrand; checks the mass.
template <class Density>
double mi_from_density(const Density& f, int n, double gain, double lo, double hi)
{
    const std::vector<double> pts = breakpoints(lo, hi);
    const double mass = integrate_pieces(f, pts);
    if (std::abs(mass - 1.0) > mass_tolerance)
        throw NumericalError("eigenvalue density integrates to " + std::to_string(mass) + ", not 1");
    const double mi = integrate_pieces([&](double x) { return std::log1p(gain * x) * f(x); }, pts);
    return n * mi * specfun::log2e;
}

void check_snr(double snr)
{
    if (!(snr > 0.0) || !std::isfinite(snr))
        throw DomainError("snr must be positive and finite");
}

} // namespace

double theorem1_identity_check(const ComplexMatrix& h, double snr)
{
    const int nt = static_cast<int>(h.cols());
    if (nt < 2)
        throw DomainError("identity check needs nt >= 2");
    const double c = snr / nt;
    ComplexMatrix z = c * (h.adjoint() * h);
    z.diagonal().array() += 1.0;

    double decomposition = nt * matkit::log_det_hpd(z);
    for (int i = 0; i < nt; ++i)
        decomposition -= matkit::log_det_hpd(matkit::principal_minor(z, i));
    decomposition *= specfun::log2e;
    return std::abs(sum_rate_realization(h, snr) - decomposition);
}

double semicorr_eigen_density(const EigsDescending& eigs, int p, double lambda)
{
    const RealVector& beta = eigs.values();
    const int q = eigs.size();
    const int n = std::min(p, q);
    if (p < 1)
        throw DomainError("p must be >= 1");
    if (lambda < 0.0)
        return 0.0;

    double log_v = 0.0;
    int sign_v = 1;
    for (int k = 0; k < q; ++k)
        for (int l = 0; l < k; ++l)
        {
            const double d = beta(k) - beta(l);
            log_v += std::log(std::abs(d));
            if (d < 0.0)
                sign_v = -sign_v;
        }

    double acc = 0.0;
    RealMatrix d(q, q);
    for (int k = q - n + 1; k <= q; ++k)
    {
        const int a = p - q + k; // Gamma argument
        for (int s = 0; s < q; ++s)
            for (int t = 1; t <= q; ++t)
            {
                if (t != k)
                    d(s, t - 1) = std::pow(beta(s), t - 1);
                else if (lambda == 0.0 && a > 1)
                    d(s, t - 1) = 0.0;
                else
                {
                    const double log_power = a > 1 ? (a - 1) * std::log(lambda) : 0.0;
                    d(s, t - 1) = std::exp(log_power - specfun::log_factorial(a) - lambda / beta(s) +
                                           (q - p - 1) * std::log(beta(s)));
                }
            }
        acc += matkit::signed_logdet(d).value();
    }
    return sign_v * acc * std::exp(-log_v) / n;
}

double mi_quadrature_oracle(const EigsDescending& eigs, int p, AntennaConfig cfg, double snr)
{
    check_snr(snr);
    if (p < 1 || p > matkit::max_dim)
        throw DomainError("p must be in [1, 64]");
    const int q = eigs.size();
    const int n = std::min(p, q);
    const double top = eigs.values()(0);
    const double bottom = eigs.values()(q - 1);
    auto f = [&](double x) { return semicorr_eigen_density(eigs, p, x); };
    return mi_from_density(f, n, snr / cfg.nt, std::min(bottom, 1.0) / 16.0, top * (2.0 * (p + q) + 80.0));
}

double iid_mi_quadrature(int nr, int nt, double snr)
{
    check_snr(snr);
    if (nr < 1 || nt < 1 || nr > matkit::max_dim || nt > matkit::max_dim)
        throw DomainError("antenna counts must be in [1, 64]");
    const int n = std::min(nr, nt);
    const int m = std::max(nr, nt);
    std::vector<double> log_weight(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        log_weight[static_cast<std::size_t>(k)] = specfun::log_factorial(k + 1) - specfun::log_factorial(k + m - n + 1);

    auto f = [&](double x) {
        if (!(x > 0.0))
            return m == n ? 1.0 : 0.0;
        double acc = 0.0;
        for (int k = 0; k < n; ++k)
        {
            const double l = boost::math::laguerre(static_cast<unsigned>(k), static_cast<unsigned>(m - n), x);
            acc += std::exp(log_weight[static_cast<std::size_t>(k)]) * l * l;
        }
        return acc * std::exp((m - n) * std::log(x) - x) / n;
    };
    return mi_from_density(f, n, snr / nt, 1.0 / 16.0, 2.0 * (m + n) + 80.0);
}

MiEvaluator make_quadrature_mi_evaluator()
{
    return [](const ChannelModel& model, double snr) -> RateEstimate {
        const AntennaConfig cfg = model.config();
        if (model.kind() == ModelKind::rician && model.k_factor() != 0.0)
            throw NoClosedForm("no quadrature oracle for Rician channels with K > 0");
        const bool rx = model.receive_correlated();
        const bool tx = model.transmit_correlated();
        if (rx && tx)
            throw NoClosedForm("no quadrature oracle for doubly-correlated channels");
        if (rx)
            return {mi_quadrature_oracle(EigsDescending::of(model.receive()), cfg.nt, cfg, snr), 0.0};
        if (tx)
            return {mi_quadrature_oracle(EigsDescending::of(model.transmit()), cfg.nr, cfg, snr), 0.0};
        return {iid_mi_quadrature(cfg.nr, cfg.nt, snr), 0.0};
    };
}

HighSnrFit fit_high_snr(const std::function<double(double)>& rate, double snr_lo_db, double snr_hi_db)
{
    if (!(snr_hi_db > snr_lo_db))
        throw DomainError("high-SNR fit needs two increasing points");
    const double lo = std::pow(10.0, snr_lo_db / 10.0);
    const double hi = std::pow(10.0, snr_hi_db / 10.0);
    const double i_lo = rate(lo);
    const double i_hi = rate(hi);
    HighSnrFit out;
    out.slope = (i_hi - i_lo) / (std::log2(hi) - std::log2(lo));
    out.offset = out.slope > 0.0 ? std::log2(hi) - i_hi / out.slope : std::numeric_limits<double>::infinity();
    return out;
}

LowSnrFit fit_low_snr(const std::function<double(double)>& rate, double h)
{
    if (!(h > 0.0))
        throw DomainError("finite-difference step must be positive");
    const double i1 = rate(h);
    const double i2 = rate(2.0 * h);
    const double i4 = rate(4.0 * h);
    const double b1 = (i2 - 2.0 * i1) / (h * h);
    const double b2 = (i4 - 2.0 * i2) / (4.0 * h * h);

    LowSnrFit out;
    out.i_dot = (4.0 * i1 - i2) / (2.0 * h);
    out.i_ddot = 2.0 * b1 - b2;
    out.ebno_min = 1.0 / out.i_dot;
    out.s0 = -2.0 * out.i_dot * out.i_dot * specfun::ln2 / out.i_ddot;
    return out;
}

} // namespace mmselab

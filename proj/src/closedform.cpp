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

#include "mmselab/closedform.hpp"
#include "mmselab/errors.hpp"
#include "mmselab/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace mmselab
{

namespace
{

constexpr int iid_max_dim = 32;

void check_snr(double snr)
{
    if (!(snr > 0.0) || !std::isfinite(snr))
        throw DomainError("snr must be positive and finite");
}

// Determinant of a matrix with strictly positive entries given as logs.
// Rows then columns are scaled to a unit maximum before factorization so
// that entries spanning hundreds of decades stay representable.
SignedLogDet det_from_logs(RealMatrix logs)
{
    double shift = 0.0;
    for (Eigen::Index r = 0; r < logs.rows(); ++r)
    {
        const double m = logs.row(r).maxCoeff();
        logs.row(r).array() -= m;
        shift += m;
    }
    for (Eigen::Index c = 0; c < logs.cols(); ++c)
    {
        const double m = logs.col(c).maxCoeff();
        logs.col(c).array() -= m;
        shift += m;
    }
    SignedLogDet d = matkit::signed_logdet(RealMatrix(logs.array().exp().matrix()));
    if (d.sign != 0)
        d.log_abs += shift;
    return d;
}

// exp(log_offset) * sum of signed terms, with a common scale.
double signed_sum(const std::vector<SignedLogDet>& terms, double log_offset)
{
    double peak = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms)
        if (t.sign != 0)
            peak = std::max(peak, t.log_abs);
    if (!std::isfinite(peak))
        return 0.0;
    double acc = 0.0;
    for (const auto& t : terms)
        if (t.sign != 0)
            acc += t.sign * std::exp(t.log_abs - peak);
    return acc * std::exp(peak + log_offset);
}

// sum_{h=1}^{count} e^x E_h(x)
double scaled_expint_sum(int count, double x)
{
    double acc = 0.0;
    for (int h = 1; h <= count; ++h)
        acc += specfun::expint_scaled(h, x);
    return acc;
}

// e^x sum_k det Psi_{n,m}(k) / (Gamma_n(m) Gamma_n(n)) in nats, x = arg.
double iid_mi_nats(int n, int m, double arg)
{
    std::vector<double> sums(static_cast<std::size_t>(n + m));
    for (int tau = m - n; tau <= n + m - 2; ++tau)
        sums[static_cast<std::size_t>(tau)] = std::log(scaled_expint_sum(tau + 1, arg));

    std::vector<SignedLogDet> terms;
    RealMatrix logs(n, n);
    for (int k = 1; k <= n; ++k)
    {
        for (int s = 1; s <= n; ++s)
            for (int t = 1; t <= n; ++t)
            {
                const int tau = n + m - s - t;
                logs(s - 1, t - 1) = specfun::log_factorial(tau + 1);
                if (t == k)
                    logs(s - 1, t - 1) += sums[static_cast<std::size_t>(tau)];
            }
        terms.push_back(det_from_logs(logs));
    }
    return signed_sum(terms, -specfun::log_multivariate_gamma(n, m) - specfun::log_multivariate_gamma(n, n));
}

// Semi-correlated MI in nats with exponential-integral arguments
// arg_scale / beta_s.
double semicorr_mi_nats(const RealVector& beta, int p, double arg_scale)
{
    const int q = static_cast<int>(beta.size());
    const int n = std::min(p, q);

    // Vandermonde prod_{l<k} (beta_k - beta_l); negative factors for descending input.
    SignedLogDet vand{1, 0.0};
    for (int k = 0; k < q; ++k)
        for (int l = 0; l < k; ++l)
        {
            const double d = beta(k) - beta(l);
            vand.log_abs += std::log(std::abs(d));
            if (d < 0.0)
                vand.sign = -vand.sign;
        }

    RealMatrix powers(q, q);
    RealMatrix special(q, q); // log of e^{x_s} sum_{h=1}^{p-q+t} E_h(x_s), t >= q-n+1
    for (int s = 0; s < q; ++s)
    {
        const double x = arg_scale / beta(s);
        for (int t = 1; t <= q; ++t)
        {
            powers(s, t - 1) = (t - 1) * std::log(beta(s));
            special(s, t - 1) = t >= q - n + 1 ? std::log(scaled_expint_sum(p - q + t, x)) : 0.0;
        }
    }

    std::vector<SignedLogDet> terms;
    for (int k = q - n + 1; k <= q; ++k)
    {
        RealMatrix logs = powers;
        logs.col(k - 1) += special.col(k - 1);
        SignedLogDet d = det_from_logs(logs);
        d.sign *= vand.sign;
        terms.push_back(d);
    }
    return signed_sum(terms, -vand.log_abs);
}

void check_iid_dims(int nr, int nt)
{
    if (nr < 1 || nt < 1)
        throw DomainError("antenna counts must be >= 1");
    if (nr > iid_max_dim || nt > iid_max_dim)
        throw DomainError("i.i.d. closed form supports dimensions up to 32");
}

void check_p(int p)
{
    if (p < 1 || p > matkit::max_dim)
        throw DomainError("p must be in [1, 64]");
}

} // namespace

EigsDescending EigsDescending::from(const RealVector& values)
{
    if (values.size() < 1)
        throw DomainError("empty eigenvalue list");
    for (Eigen::Index k = 0; k < values.size(); ++k)
        if (!(values(k) > 0.0) || !std::isfinite(values(k)))
            throw DomainError("eigenvalues must be positive and finite");
    for (Eigen::Index k = 0; k + 1 < values.size(); ++k)
    {
        if (values(k + 1) > values(k))
            throw DomainError("eigenvalues must be sorted in descending order");
        if (!((values(k) - values(k + 1)) / values(0) > min_relative_gap))
            throw RepeatedEigenvalues("eigenvalues " + std::to_string(k + 1) + " and " + std::to_string(k + 2) +
                                      " are not separated by a relative gap above 1e-9");
    }
    EigsDescending out;
    out.values_ = values;
    return out;
}

double iid_opt_mi(int nr, int nt, double snr)
{
    check_iid_dims(nr, nt);
    check_snr(snr);
    const int n = std::min(nr, nt);
    const int m = std::max(nr, nt);
    return iid_mi_nats(n, m, nt / snr) * specfun::log2e;
}

double iid_sum_rate(AntennaConfig cfg, double snr)
{
    check_iid_dims(cfg.nr, cfg.nt);
    check_snr(snr);
    if (cfg.nt < 2)
        throw DomainError("MMSE sum rate needs nt >= 2");
    const double arg = cfg.nt / snr;
    const double full = iid_mi_nats(cfg.n(), cfg.m(), arg);
    const double reduced = iid_mi_nats(cfg.n_reduced(), cfg.m_reduced(), arg);
    return cfg.nt * (full - reduced) * specfun::log2e;
}

double semicorr_opt_mi(const EigsDescending& eigs, int p, AntennaConfig cfg, double snr)
{
    check_p(p);
    check_snr(snr);
    if (cfg.nt < 1)
        throw DomainError("nt must be >= 1");
    return semicorr_mi_nats(eigs.values(), p, cfg.nt / snr) * specfun::log2e;
}

double rxcorr_sum_rate(const EigsDescending& r_eigs, AntennaConfig cfg, double snr)
{
    check_snr(snr);
    if (cfg.nt < 2)
        throw DomainError("MMSE sum rate needs nt >= 2");
    if (r_eigs.size() != cfg.nr)
        throw DomainError("receive eigenvalue count must equal nr");
    check_p(cfg.nt);
    const double arg = cfg.nt / snr;
    const double full = semicorr_mi_nats(r_eigs.values(), cfg.nt, arg);
    const double reduced = semicorr_mi_nats(r_eigs.values(), cfg.nt - 1, arg);
    return cfg.nt * (full - reduced) * specfun::log2e;
}

double txcorr_sum_rate(const CorrelationMatrix& s, AntennaConfig cfg, double snr)
{
    check_snr(snr);
    if (cfg.nt < 2)
        throw DomainError("MMSE sum rate needs nt >= 2");
    if (s.dim() != cfg.nt)
        throw DomainError("transmit correlation dimension must equal nt");
    check_p(cfg.nr);
    const double arg = cfg.nt / snr;
    double acc = cfg.nt * semicorr_mi_nats(EigsDescending::of(s).values(), cfg.nr, arg);
    for (int i = 0; i < cfg.nt; ++i)
        acc -= semicorr_mi_nats(EigsDescending::of(s.minor(i)).values(), cfg.nr, arg);
    return acc * specfun::log2e;
}

RateEstimate theorem1_compose(const ChannelModel& model, double snr, const MiEvaluator& mi)
{
    check_snr(snr);
    const int nt = model.config().nt;
    if (nt < 2)
        throw DomainError("MMSE sum rate needs nt >= 2");
    const double snr_reduced = snr * (nt - 1) / nt;
    const RateEstimate full = mi(model, snr);

    double value = nt * full.value;
    double var = nt * nt * full.std_error * full.std_error;
    if (model.columns_exchangeable())
    {
        const RateEstimate r = mi(model.without_tx_column(0), snr_reduced);
        value -= nt * r.value;
        var += nt * nt * r.std_error * r.std_error;
    }
    else
    {
        for (int i = 0; i < nt; ++i)
        {
            const RateEstimate r = mi(model.without_tx_column(i), snr_reduced);
            value -= r.value;
            var += r.std_error * r.std_error;
        }
    }
    return {value, std::sqrt(var)};
}

MiEvaluator make_exact_mi_evaluator()
{
    return [](const ChannelModel& model, double snr) -> RateEstimate {
        const AntennaConfig cfg = model.config();
        switch (model.kind())
        {
        case ModelKind::rician:
            if (model.k_factor() != 0.0)
                throw NoClosedForm("no exact ergodic MI for Rician channels with K > 0");
            [[fallthrough]];
        case ModelKind::iid:
            return {iid_opt_mi(cfg.nr, cfg.nt, snr), 0.0};
        case ModelKind::separable:
            break;
        }
        const bool rx = model.receive_correlated();
        const bool tx = model.transmit_correlated();
        if (rx && tx)
            throw NoClosedForm("no exact ergodic MI for doubly-correlated channels");
        if (rx)
            return {semicorr_opt_mi(EigsDescending::of(model.receive()), cfg.nt, cfg, snr), 0.0};
        if (tx)
            return {semicorr_opt_mi(EigsDescending::of(model.transmit()), cfg.nr, cfg, snr), 0.0};
        return {iid_opt_mi(cfg.nr, cfg.nt, snr), 0.0};
    };
}

double closed_form_sum_rate(const ChannelModel& model, double snr)
{
    const AntennaConfig cfg = model.config();
    switch (model.kind())
    {
    case ModelKind::rician:
        if (model.k_factor() != 0.0)
            throw NoClosedForm("no exact MMSE sum rate for Rician channels with K > 0");
        [[fallthrough]];
    case ModelKind::iid:
        return iid_sum_rate(cfg, snr);
    case ModelKind::separable:
        break;
    }
    const bool rx = model.receive_correlated();
    const bool tx = model.transmit_correlated();
    if (rx && tx)
        throw NoClosedForm("no exact MMSE sum rate for doubly-correlated channels");
    if (rx)
        return rxcorr_sum_rate(EigsDescending::of(model.receive()), cfg, snr);
    if (tx)
        return txcorr_sum_rate(model.transmit(), cfg, snr);
    return iid_sum_rate(cfg, snr);
}

} // namespace mmselab

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
#include "mmselab/specfun.hpp"

#include <cmath>

namespace mmselab
{

namespace
{

using specfun::digamma_int;
using specfun::harmonic;
using specfun::log2e;

double log2_det(const CorrelationMatrix& c)
{
    if (c.is_identity())
        return 0.0;
    return matkit::log_det_hpd(c.matrix()) * log2e;
}

// sum_{j=first}^{dim} det Y_j / V
double column_ratio_sum(const CorrelationMatrix& c, int first)
{
    double acc = 0.0;
    for (int j = first; j <= c.dim(); ++j)
        acc += log_eig_column_ratio(c, j);
    return acc;
}

void require_nr_ge_nt(AntennaConfig cfg, const char* what)
{
    if (cfg.nr < cfg.nt)
        throw DomainError(std::string(what) + " requires nr >= nt");
}

double reduced_log_det_mean(const ChannelModel& model)
{
    const int nt = model.config().nt;
    if (nt < 2)
        return 0.0; // H_k has no columns: log det of an empty Gram matrix
    if (model.columns_exchangeable())
        return expected_log_det(model.without_tx_column(0));
    double acc = 0.0;
    for (int k = 0; k < nt; ++k)
        acc += expected_log_det(model.without_tx_column(k));
    return acc / nt;
}

} // namespace

double log_eig_column_ratio(const CorrelationMatrix& c, int j)
{
    const int dim = c.dim();
    if (j < 1 || j > dim)
        throw DomainError("column index out of range");
    if (c.is_identity())
        return log2e * (digamma_int(j) - digamma_int(dim - j + 1));

    const RealVector r = EigsDescending::of(c).values();
    RealMatrix y(dim, dim);
    for (int s = 0; s < dim; ++s)
        for (int t = 1; t <= dim; ++t)
        {
            y(s, t - 1) = std::pow(r(s), t - 1);
            if (t == j)
                y(s, t - 1) *= std::log2(r(s));
        }
    const SignedLogDet num = matkit::signed_logdet(y);
    if (num.sign == 0)
        return 0.0;

    int sign = num.sign;
    double log_v = 0.0;
    for (int b = 0; b < dim; ++b)
        for (int a = 0; a < b; ++a)
        {
            const double d = r(b) - r(a);
            log_v += std::log(std::abs(d));
            if (d < 0.0)
                sign = -sign;
        }
    return sign * std::exp(num.log_abs - log_v);
}

double expected_log_det(const ChannelModel& model)
{
    const AntennaConfig cfg = model.config();
    const int n = cfg.n();
    const int m = cfg.m();

    double iid = 0.0;
    for (int l = 0; l < n; ++l)
        iid += digamma_int(m - l);
    iid *= log2e;

    switch (model.kind())
    {
    case ModelKind::iid:
        return iid;
    case ModelKind::rician:
    {
        const double k = model.k_factor();
        if (k == 0.0)
            return iid;
        return iid - n * std::log2(k + 1.0) + k * n * log2e * specfun::theta_2f2(m, n, k);
    }
    case ModelKind::separable:
        break;
    }

    // Small side contributes log det, large side the eigenvalue ratios.
    const bool tall = cfg.nr >= cfg.nt;
    const CorrelationMatrix& small = tall ? model.transmit() : model.receive();
    const CorrelationMatrix& large = tall ? model.receive() : model.transmit();
    double psi_sum = 0.0;
    for (int l = 1; l <= n; ++l)
        psi_sum += digamma_int(l);
    return log2_det(small) + log2e * psi_sum + column_ratio_sum(large, m - n + 1);
}

HighSnrAffine high_snr_params(const ChannelModel& model, Receiver receiver)
{
    const AntennaConfig cfg = model.config();
    const double ej = expected_log_det(model);
    const double opt_offset = std::log2(static_cast<double>(cfg.nt)) - ej / cfg.n();

    double mmse_offset = infinite_offset;
    if (cfg.nr >= cfg.nt)
        mmse_offset = std::log2(static_cast<double>(cfg.nt)) - ej + reduced_log_det_mean(model);

    HighSnrAffine out;
    out.receiver = receiver;
    out.excess = cfg.nr >= cfg.nt ? mmse_offset - opt_offset : infinite_offset;
    if (receiver == Receiver::opt)
    {
        out.slope = cfg.n();
        out.offset = opt_offset;
    }
    else
    {
        out.slope = cfg.nr >= cfg.nt ? cfg.nt : 0.0;
        out.offset = mmse_offset;
    }
    return out;
}

double iid_offset_mmse(AntennaConfig cfg)
{
    require_nr_ge_nt(cfg, "MMSE power offset");
    return std::log2(static_cast<double>(cfg.nt)) - log2e * (harmonic(cfg.nr - cfg.nt) - specfun::euler_gamma);
}

double iid_offset_opt(AntennaConfig cfg)
{
    // Written for Nr >= Nt; the Nr < Nt case follows from E[J] directly.
    if (cfg.nr < cfg.nt)
        return high_snr_params(ChannelModel::iid(cfg), Receiver::opt).offset;
    const double tail = harmonic(cfg.nr) - harmonic(cfg.nr - cfg.nt);
    return std::log2(static_cast<double>(cfg.nt)) +
           log2e * (specfun::euler_gamma - harmonic(cfg.nr - cfg.nt) -
                    static_cast<double>(cfg.nr) / cfg.nt * tail + 1.0);
}

double iid_excess_offset(AntennaConfig cfg)
{
    require_nr_ge_nt(cfg, "excess power offset");
    const double tail = harmonic(cfg.nr) - harmonic(cfg.nr - cfg.nt);
    return log2e * (static_cast<double>(cfg.nr) / cfg.nt * tail - 1.0);
}

double offset_shift_tx(const CorrelationMatrix& s)
{
    if (s.is_identity())
        return 0.0;
    const RealVector d = matkit::diag_of_inverse(s.matrix());
    return d.array().log2().sum() / s.dim();
}

double offset_shift_rx(const CorrelationMatrix& r, int nt)
{
    const int nr = r.dim();
    require_nr_ge_nt(AntennaConfig{nr, nt}, "receive-correlation offset shift");
    if (r.is_identity())
        return 0.0;
    return log2e * (harmonic(nr - nt) - harmonic(nt - 1)) - log_eig_column_ratio(r, nr - nt + 1);
}

double excess_shift_tx(const CorrelationMatrix& s)
{
    if (s.is_identity())
        return 0.0;
    return offset_shift_tx(s) + log2_det(s) / s.dim();
}

double excess_shift_rx(const CorrelationMatrix& r, int nt)
{
    const int nr = r.dim();
    require_nr_ge_nt(AntennaConfig{nr, nt}, "receive-correlation excess shift");
    const double first = log_eig_column_ratio(r, nr - nt + 1);
    return (column_ratio_sum(r, nr - nt + 2) - (nt - 1) * first) / nt;
}

double rician_offset_shift(AntennaConfig cfg, double k)
{
    require_nr_ge_nt(cfg, "Rician offset shift");
    if (cfg.nt < 2)
        throw DomainError("Rician offset shift needs nt >= 2");
    if (!(k >= 0.0))
        throw DomainError("K-factor must be >= 0");
    const double full = specfun::theta_2f2(cfg.nr, cfg.nt, k);
    const double reduced = specfun::theta_2f2(cfg.nr, cfg.nt - 1, k);
    return std::log2(k + 1.0) - k * log2e * (cfg.nt * full - (cfg.nt - 1) * reduced);
}

double rician_excess_shift(AntennaConfig cfg, double k)
{
    require_nr_ge_nt(cfg, "Rician excess shift");
    if (cfg.nt < 2)
        throw DomainError("Rician excess shift needs nt >= 2");
    if (!(k >= 0.0))
        throw DomainError("K-factor must be >= 0");
    const double full = specfun::theta_2f2(cfg.nr, cfg.nt, k);
    const double reduced = specfun::theta_2f2(cfg.nr, cfg.nt - 1, k);
    return -log2e * k * (cfg.nt - 1) * (full - reduced);
}

LargeSystemLimits large_system_limits(double beta)
{
    if (!(beta > 0.0 && beta <= 1.0))
        throw DomainError("load ratio must lie in (0, 1]");
    LargeSystemLimits out;
    out.s0_ratio = (1.0 + beta) / (1.0 + 2.0 * beta);
    if (beta == 1.0)
    {
        out.offset = infinite_offset;
        out.excess = infinite_offset;
        return out;
    }
    out.offset = std::log2(beta / (1.0 - beta));
    out.excess = std::log2(1.0 / (1.0 - beta)) / beta - log2e;
    return out;
}

DispersionSet dispersion_closed_form(const ChannelModel& model)
{
    const AntennaConfig cfg = model.config();
    const double nr = cfg.nr;
    const double nt = cfg.nt;
    DispersionSet out;
    switch (model.kind())
    {
    case ModelKind::iid:
        out.zeta_full = (nr + nt) / nt;
        if (cfg.nt >= 2)
            out.zeta_reduced.assign(static_cast<std::size_t>(cfg.nt), (nr + nt - 1.0) / (nt - 1.0));
        return out;
    case ModelKind::rician:
    {
        const double k = model.k_factor();
        const double kk = (k + 1.0) * (k + 1.0);
        out.zeta_full = (nr * k * k + (nr + nt) * (2.0 * k + 1.0) / nt) / kk;
        if (cfg.nt >= 2)
            out.zeta_reduced.assign(static_cast<std::size_t>(cfg.nt),
                                    (nr * k * k + (nr + nt - 1.0) * (2.0 * k + 1.0) / (nt - 1.0)) / kk);
        return out;
    }
    case ModelKind::separable:
        break;
    }
    out.zeta_r = model.receive().trace_of_square() / nr;
    out.zeta_s = model.transmit().trace_of_square() / nt;
    out.zeta_full = out.zeta_r + nr / nt * out.zeta_s;
    if (cfg.nt >= 2)
        for (int i = 0; i < cfg.nt; ++i)
        {
            const double zm = model.transmit().minor(i).trace_of_square() / (nt - 1.0);
            out.zeta_s_minor.push_back(zm);
            out.zeta_reduced.push_back(out.zeta_r + nr / (nt - 1.0) * zm);
        }
    return out;
}

LowSnrParams low_snr_params(const ChannelModel& model)
{
    const AntennaConfig cfg = model.config();
    const DispersionSet z = dispersion_closed_form(model);
    const double nr = cfg.nr;
    const double nt = cfg.nt;

    double reduced = 0.0;
    for (double v : z.zeta_reduced)
        reduced += v;
    const double w = (nt - 1.0) / nt;

    LowSnrParams out;
    out.ebno_min = specfun::ln2 / nr;
    out.s0_opt = 2.0 * nr / z.zeta_full;
    out.s0 = 2.0 * nr / (nt * z.zeta_full - w * w * reduced);
    out.ratio = out.s0 / out.s0_opt;
    out.received_factor = nr;
    return out;
}

double wideband_slope_mmse_explicit(const ChannelModel& model)
{
    const AntennaConfig cfg = model.config();
    const double nr = cfg.nr;
    const double nt = cfg.nt;
    switch (model.kind())
    {
    case ModelKind::iid:
        return 2.0 * nr * nt / (2.0 * nt + nr - 1.0);
    case ModelKind::rician:
    {
        const double k = model.k_factor();
        return 2.0 * nr * nt * (k + 1.0) * (k + 1.0) /
               (k * k * (2.0 * nt - 1.0) * nr + (2.0 * k + 1.0) * (2.0 * nt + nr - 1.0));
    }
    case ModelKind::separable:
        break;
    }
    const DispersionSet z = dispersion_closed_form(model);
    double minors = 0.0;
    for (double v : z.zeta_s_minor)
        minors += v;
    return 2.0 * nr * nt / ((2.0 * nt - 1.0) * z.zeta_r + nr * (nt * z.zeta_s - (nt - 1.0) / nt * minors));
}

double wideband_slope_opt_explicit(const ChannelModel& model)
{
    const AntennaConfig cfg = model.config();
    const double nr = cfg.nr;
    const double nt = cfg.nt;
    switch (model.kind())
    {
    case ModelKind::iid:
        return 2.0 * nr * nt / (nt + nr);
    case ModelKind::rician:
    {
        const double k = model.k_factor();
        return 2.0 * (k + 1.0) * (k + 1.0) / (k * k + (2.0 * k + 1.0) * (nt + nr) / (nr * nt));
    }
    case ModelKind::separable:
        break;
    }
    const DispersionSet z = dispersion_closed_form(model);
    return 2.0 * nr * nt / (nt * z.zeta_r + nr * z.zeta_s);
}

double affine_rate(const HighSnrAffine& p, double snr)
{
    if (!(snr > 0.0))
        throw DomainError("snr must be positive");
    if (!p.finite_offset())
        throw DomainError("affine expansion undefined for an infinite power offset");
    return p.slope * (std::log2(snr) - p.offset);
}

double wideband_rate(const LowSnrParams& p, double ebno, Receiver receiver)
{
    if (!(ebno >= p.ebno_min))
        throw DomainError("Eb/N0 below the minimum energy per bit");
    const double s0 = receiver == Receiver::mmse ? p.s0 : p.s0_opt;
    return s0 * std::log2(ebno / p.ebno_min);
}

double solve_snr_for_ebno(const std::function<double(double)>& rate, double ebno)
{
    if (!(ebno > 0.0) || !std::isfinite(ebno))
        throw DomainError("Eb/N0 must be positive and finite");
    auto excess = [&](double snr) { return snr / rate(snr) - ebno; };
    double lo = 1e-12;
    double hi = 1e6;
    if (excess(lo) > 0.0 || excess(hi) < 0.0)
        throw NumericalError("Eb/N0 target not bracketed by snr in [1e-12, 1e6]");
    for (int it = 0; it < 200 && hi / lo - 1.0 > 1e-10; ++it)
    {
        const double mid = std::sqrt(lo * hi);
        if (excess(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return std::sqrt(lo * hi);
}

} // namespace mmselab

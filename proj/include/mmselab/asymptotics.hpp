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

#ifndef MMSELAB_ASYMPTOTICS_HPP
#define MMSELAB_ASYMPTOTICS_HPP

#include "mmselab/channels.hpp"

#include <functional>
#include <limits>
#include <vector>

namespace mmselab
{

enum class Receiver
{
    mmse,
    opt
};

inline constexpr double infinite_offset = std::numeric_limits<double>::infinity();

/// I(snr) ~ slope * (log2 snr - offset). Offsets are in 3 dB units;
/// `offset` and `excess` are +inf when the MMSE rate saturates (Nr < Nt).
struct HighSnrAffine
{
    double slope = 0.0;
    double offset = 0.0;
    double excess = 0.0;
    Receiver receiver = Receiver::mmse;

    bool finite_offset() const { return offset != infinite_offset; }
};

/// Low-SNR parameters. Eb/N0 values are linear and refer to transmitted
/// energy; multiply by `received_factor` (= Nr) for the received-energy axis.
struct LowSnrParams
{
    double ebno_min = 0.0;
    double s0 = 0.0;
    double s0_opt = 0.0;
    double ratio = 0.0;
    double received_factor = 1.0;
};

/// zeta(T) = N E[tr T^2] / E[tr T]^2 for T = HH^H and T = H_i H_i^H, plus
/// the correlation components for separable models (1 otherwise).
struct DispersionSet
{
    double zeta_full = 0.0;
    std::vector<double> zeta_reduced;
    double zeta_r = 1.0;
    double zeta_s = 1.0;
    std::vector<double> zeta_s_minor;
};

struct LargeSystemLimits
{
    double offset = 0.0;
    double excess = 0.0;
    double s0_ratio = 0.0;
};

/// E[log2 det(H^H H)] for Nr >= Nt, E[log2 det(H H^H)] otherwise.
double expected_log_det(const ChannelModel& model);

/// High-SNR slope, power offset and excess offset (mmse minus opt).
HighSnrAffine high_snr_params(const ChannelModel& model, Receiver receiver);

/// Offset of an i.i.d. Rayleigh channel, Nr >= Nt (mmse) or any (opt).
double iid_offset_mmse(AntennaConfig cfg);
double iid_offset_opt(AntennaConfig cfg);
/// log2e (Nr/Nt sum_{l=Nr-Nt+1}^{Nr} 1/l - 1), Nr >= Nt.
double iid_excess_offset(AntennaConfig cfg);

/// det Y_j(r) / prod_{i<j}(r_j - r_i) for the eigenvalues of `c`, with
/// the identity handled by its limit log2e (psi(j) - psi(dim - j + 1)).
double log_eig_column_ratio(const CorrelationMatrix& c, int j);

/// Offset shifts from transmit correlation (f) and receive correlation (g),
/// relative to the i.i.d. offset, and the excess-offset components g1, g2.
double offset_shift_tx(const CorrelationMatrix& s);
double offset_shift_rx(const CorrelationMatrix& r, int nt);
double excess_shift_tx(const CorrelationMatrix& s);
double excess_shift_rx(const CorrelationMatrix& r, int nt);

/// Rician offset shift h1(K) and excess shift h2(K), Nr >= Nt >= 2.
double rician_offset_shift(AntennaConfig cfg, double k_factor);
double rician_excess_shift(AntennaConfig cfg, double k_factor);

/// Limits as Nt, Nr grow with Nt/Nr = beta in (0, 1].
LargeSystemLimits large_system_limits(double beta);

DispersionSet dispersion_closed_form(const ChannelModel& model);

/// Eb/N0_min = ln2/Nr and wideband slopes from the dispersions.
LowSnrParams low_snr_params(const ChannelModel& model);

/// Wideband slopes in the per-model simplified forms (i.i.d., separable,
/// Rician), for cross-checking the dispersion route.
double wideband_slope_mmse_explicit(const ChannelModel& model);
double wideband_slope_opt_explicit(const ChannelModel& model);

/// slope * (log2 snr - offset). Throws DomainError for snr <= 0 or an
/// infinite offset.
double affine_rate(const HighSnrAffine& p, double snr);

/// S0 log2(ebno / ebno_min) for the chosen receiver. Throws DomainError
/// below Eb/N0_min.
double wideband_rate(const LowSnrParams& p, double ebno, Receiver receiver = Receiver::mmse);

/// snr solving ebno = snr / I(snr), by bisection in log snr over
/// [1e-12, 1e6] (relative tolerance 1e-10, at most 200 steps). Throws
/// NumericalError when the target is not bracketed.
double solve_snr_for_ebno(const std::function<double(double)>& rate, double ebno);

} // namespace mmselab

#endif
